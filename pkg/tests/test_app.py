# coding = utf-8
"""
命令行：输出格式与退出码
"""

import json
from fractions import Fraction

import pytest

from app import EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK, run
from report_renderer import series_from_json


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_genus_ahat_cusp_text(capsys):
    code, out, _ = _run(capsys, 'genus', '--catalog', 'K3_type', '--cusp', 'ahat', '--truncate', '3')
    assert code == EXIT_OK
    assert "2·q^{-1/2}" in out
    assert "40·q^{1/2}" in out


def test_genus_json_round_trips_through_the_series_codec(capsys):
    code, out, _ = _run(capsys, 'genus', '--catalog', 'K3_type', '--cusp', 'sign',
                        '--truncate', '3', '--format', 'json')
    assert code == EXIT_OK
    payload = json.loads(out)
    series = series_from_json(payload['series'])
    assert series.coefficient(0) == -16
    assert series.coefficient(1) == -512
    assert payload['integral'] is True


def test_twisted_index(capsys):
    code, out, _ = _run(capsys, 'genus', '--catalog', 'K3_type', '--bundle', 'TM', '--format', 'json')
    assert code == EXIT_OK
    assert Fraction(json.loads(out)['value']) == -40


def test_output_is_deterministic(capsys):
    first = _run(capsys, 'local-data', '--catalog', 'S4_rotation', '--truncate', '2', '--format', 'json')
    second = _run(capsys, 'local-data', '--catalog', 'S4_rotation', '--truncate', '2', '--format', 'json')
    assert first == second


def test_rigidity_of_sphere(capsys):
    code, out, _ = _run(capsys, 'rigidity', '--catalog', 'S4_rotation', '--truncate', '3')
    assert code == EXIT_OK
    assert "constant at all orders; equals 0" in out


def test_rigidity_failure_exits_with_inconsistency(capsys):
    code, out, _ = _run(capsys, 'rigidity', '--catalog', 'S4_rotation_corrupted', '--truncate', '2')
    assert code == EXIT_INCONSISTENT
    assert "NOT constant" in out


def test_verdict_on_sphere(capsys):
    code, out, _ = _run(capsys, 'verdict', '--catalog', 'S4_rotation', '--order', '2', '--r', '0',
                        '--truncate', '3')
    assert code == EXIT_OK
    assert "[involution-codimension]" in out
    assert "fired; consistent" in out


def test_verdict_with_claimed_action_on_k3(capsys):
    code, out, err = _run(capsys, 'verdict', '--catalog', 'K3_type', '--nontrivial-action',
                          '--truncate', '2')
    assert code == EXIT_INCONSISTENT
    assert "fired; INCONSISTENT" in out
    assert "❌" in err


def test_unsupported_r_is_not_reported_as_inconsistent(capsys):
    code, out, _ = _run(capsys, 'verdict', '--catalog', 'HP2_type', '--r', '1', '--truncate', '2')
    assert code == EXIT_OK
    assert "✗ cohomology" in out
    assert "not fired" in out


def test_order_requires_an_action(capsys):
    code, _, err = _run(capsys, 'verdict', '--catalog', 'K3_type', '--order', '3')
    assert code == EXIT_INVALID
    assert "s1_action" in err


def test_m_number(capsys):
    code, out, _ = _run(capsys, 'm-number', '--catalog', 'HP2_s4_component', '--order', '3',
                        '--format', 'json')
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload['m'] == '2/3'
    assert payload['sigma_codim_bound'] == 4


def test_expand_at_torsion_point(capsys):
    code, out, _ = _run(capsys, 'expand', '--catalog', 'S4_rotation', '--order', '3', '--truncate', '2')
    assert code == EXIT_OK
    assert "S4_rotation" in out


def test_catalog_listing(capsys):
    code, out, _ = _run(capsys, 'catalog')
    assert code == EXIT_OK
    lines = out.splitlines()
    assert any(line.startswith('K3_type') for line in lines)
    assert any(line.startswith('HP2_type ') and 'S¹, 3 fixed components' in line for line in lines)


def test_missing_source(capsys):
    code, _, err = _run(capsys, 'genus')
    assert code == EXIT_INVALID
    assert "--catalog" in err


def test_unknown_catalog_entry(capsys):
    code, _, _ = _run(capsys, 'genus', '--catalog', 'nope')
    assert code == EXIT_INVALID


def test_validate_reports_bad_signature(capsys, tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps({"name": "bad", "dimension": 4, "spin": True,
                                "pontryagin_numbers": {"p1": -48}, "signature": 5}), encoding='utf-8')
    code, out, _ = _run(capsys, 'validate', '--input', str(path))
    assert code == EXIT_INVALID
    assert "bad: invalid" in out


def test_validate_catalog_entry(capsys):
    code, out, _ = _run(capsys, 'validate', '--catalog', 'HP2_type', '--truncate', '3')
    assert code == EXIT_OK
    assert "HP2_type: valid" in out


def test_malformed_input_file(capsys, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"name": "x", "dimension": 4.5}', encoding='utf-8')
    code, _, err = _run(capsys, 'genus', '--input', str(path))
    assert code == EXIT_INVALID
    assert "❌" in err


def test_truncate_must_be_positive():
    with pytest.raises(SystemExit) as info:
        run(['genus', '--catalog', 'K3_type', '--truncate', '0'])
    assert info.value.code == 2
