# coding = utf-8
"""
结果展示
把计算结果转成文本或 JSON 结构，CLI 的两种输出格式都从这里出
1. 级数：q 指数取最简分母，"2·q^{-1/2} + 40·q^{1/2} + O(q^{5/2})"
2. ℚ(μ) 系数：μ 指数全为偶数时改写成 λ = μ²
3. 刚性、局部数据、旋转数不变量、判定报告
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from coefficient_rings import (QMU_RING, QQ_RING, CyclotomicElement, cyclotomic_field,
                               monic_parts, mu_exponents, poly_terms, ratfn)
from genera import GenusExpansion, TwistedIndex
from series_core import PuiseuxSeries

MINUS = '−'


# ==================== 数与指数 ====================

def format_rational(value) -> str:
    """精确有理数，"-3/2"，不用小数"""
    return str(Fraction(value))


def format_exponent(exponent) -> str:
    """q 的幂：0 → ""，1 → "q"，其余 "q^{e}"（最简分母）"""
    exponent = Fraction(exponent)
    if exponent == 0:
        return ''
    if exponent == 1:
        return 'q'
    return f"q^{{{exponent}}}"


def format_big_o(precision) -> str:
    return f"O({format_exponent(precision) or '1'})"


def _join_signed(parts: List[Tuple[bool, str]]) -> str:
    """[(是否为负, 绝对值文本)] → "a − b + c" """
    if not parts:
        return '0'
    text = ''
    for i, (negative, body) in enumerate(parts):
        if i == 0:
            text = f"{MINUS}{body}" if negative else body
        else:
            text += f" {MINUS} {body}" if negative else f" + {body}"
    return text


# ==================== ℚ(μ) 与分圆域 ====================

def _render_poly(terms, var: str, halve: bool) -> str:
    parts = []
    for exp, coeff in sorted(terms, key=lambda t: -t[0]):
        e = exp // 2 if halve else exp
        mono = '' if e == 0 else var if e == 1 else f"{var}^{e}"
        magnitude = abs(coeff)
        if mono and magnitude == 1:
            body = mono
        elif mono:
            body = f"{format_rational(magnitude)}·{mono}"
        else:
            body = format_rational(magnitude)
        parts.append((coeff < 0, body))
    return _join_signed(parts)


def render_character(r) -> str:
    """
    ℚ(μ) 中的元素；μ 指数全为偶数时用 λ = μ² 书写

    Args:
        r: sympy FracElement

    Returns:
        str，如 "(λ^2 + 1)/(λ)"
    """
    numer, denom = monic_parts(r)
    halve = all(e % 2 == 0 for e in mu_exponents(r))
    var = 'λ' if halve else 'μ'
    num_text = _render_poly(poly_terms(numer), var, halve)
    den_terms = poly_terms(denom)
    if den_terms == [(0, Fraction(1))]:
        return num_text
    return f"({num_text})/({_render_poly(den_terms, var, halve)})"


def render_cyclotomic(value: CyclotomicElement) -> str:
    rational = value.rational_value()
    if rational is not None:
        return format_rational(rational)
    return cyclotomic_field(value.order).render(value).replace('**', '^').replace('*', '·')


def _coefficient_text(ring, coeff) -> Tuple[bool, str, bool]:
    """(是否为负, 绝对值文本, 是否为 1)"""
    if ring == QQ_RING:
        coeff = Fraction(coeff)
        return coeff < 0, format_rational(abs(coeff)), abs(coeff) == 1
    if ring == QMU_RING:
        text = render_character(coeff)
    else:
        text = render_cyclotomic(coeff)
    if any(ch in text for ch in ' +/') or text.startswith(MINUS):
        text = f"({text})"
    return False, text, text == '1'


# ==================== 级数 ====================

def render_series(series: PuiseuxSeries) -> str:
    """
    文本形式：c·q^{e} 按指数升序，末尾 "+ O(q^{precision})"
    """
    parts = []
    for exponent, coeff in series.terms():
        negative, body, unit = _coefficient_text(series.ring, coeff)
        power = format_exponent(exponent)
        if power and unit:
            body = power
        elif power:
            body = f"{body}·{power}"
        parts.append((negative, body))
    return f"{_join_signed(parts)} + {format_big_o(series.precision)}"


def _coefficient_to_json(ring, coeff):
    if ring == QQ_RING:
        return format_rational(coeff)
    if ring == QMU_RING:
        numer, denom = monic_parts(coeff)
        return {
            'numerator': [[e, format_rational(c)] for e, c in poly_terms(numer)],
            'denominator': [[e, format_rational(c)] for e, c in poly_terms(denom)],
            'text': render_character(coeff),
        }
    return {'coords': [format_rational(c) for c in coeff.coords], 'text': render_cyclotomic(coeff)}


def _coefficient_from_json(ring, obj):
    if ring == QQ_RING:
        return Fraction(obj)

    def dense(pairs):
        size = max((e for e, _ in pairs), default=0) + 1
        coeffs = [Fraction(0)] * size
        for e, c in pairs:
            coeffs[e] = Fraction(c)
        return coeffs

    if ring == QMU_RING:
        return ratfn(dense(obj['numerator']), dense(obj['denominator']))
    value = ring.zero
    zeta = ring.zeta()
    for i, c in enumerate(obj['coords']):
        value = value + zeta ** i * Fraction(c)
    return value


def _ring_from_tag(tag: str):
    if tag == QQ_RING.tag:
        return QQ_RING
    if tag == QMU_RING.tag:
        return QMU_RING
    if tag.startswith('QQ(zeta_') and tag.endswith(')'):
        return cyclotomic_field(int(tag[len('QQ(zeta_'):-1]))
    raise ValueError(f"未知的系数环: {tag}")


def series_to_json(series: PuiseuxSeries) -> Dict[str, Any]:
    return {
        'ring': series.ring.tag,
        'denominator': series.denom,
        'precision': format_rational(series.precision),
        'terms': [{'exponent': format_rational(e), 'coefficient': _coefficient_to_json(series.ring, c)}
                  for e, c in series.terms()],
        'text': render_series(series),
    }


def series_from_json(obj: Dict[str, Any]) -> PuiseuxSeries:
    """series_to_json 的逆"""
    ring = _ring_from_tag(obj['ring'])
    terms = {Fraction(t['exponent']): _coefficient_from_json(ring, t['coefficient'])
             for t in obj['terms']}
    return PuiseuxSeries.from_terms(terms, Fraction(obj['precision']), ring, obj['denominator'])


def dumps(payload: Dict[str, Any]) -> str:
    """JSON 输出：键排序，结果与输入一一对应"""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


# ==================== genus ====================

CUSP_LABELS = {'sign': 'sign(q, LM)', 'ahat': 'Φ₀(M)'}


def genus_to_dict(name: str, expansion: GenusExpansion, signature_note=None) -> Dict[str, Any]:
    payload = {
        'command': 'genus',
        'name': name,
        'cusp': expansion.cusp,
        'q_trunc': expansion.q_trunc,
        'series': series_to_json(expansion.series),
        'integral': expansion.integral,
    }
    if signature_note:
        payload['warning'] = signature_note
    return payload


def genus_text(payload: Dict[str, Any]) -> str:
    label = CUSP_LABELS.get(payload['cusp'], payload['cusp'])
    lines = [f"{payload['name']}: {label} = {payload['series']['text']}"]
    if not payload['integral']:
        lines.append("  note: non-integral coefficients")
    return "\n".join(lines)


def twisted_index_to_dict(name: str, index: TwistedIndex, q_power: int) -> Dict[str, Any]:
    return {
        'command': 'genus',
        'name': name,
        'cusp': index.cusp,
        'bundle': index.bundle,
        'q_power': q_power,
        'value': format_rational(index.value),
        'integral': index.integral,
        'expected_integer': index.expected_integer,
    }


def twisted_index_text(payload: Dict[str, Any]) -> str:
    symbol = 'Â' if payload['cusp'] == 'ahat' else 'sign'
    where = f" (coefficient of {format_exponent(payload['q_power'])})" if payload['q_power'] else ''
    text = f"{payload['name']}: {symbol}(M, {payload['bundle']}){where} = {payload['value']}"
    if payload['expected_integer'] and not payload['integral']:
        text += "  [not an integer]"
    return text


# ==================== expand / rigidity / local-data ====================

def expansion_to_dict(name: str, expansion, evaluation=None, order=None, power=1) -> Dict[str, Any]:
    payload = {
        'command': 'expand',
        'name': name,
        'series': series_to_json(expansion.series),
        'constant': expansion.is_constant,
        'flags': [{'exponent': format_rational(f.exponent), 'constant': f.constant,
                   'value': None if f.value is None else format_rational(f.value)}
                  for f in expansion.flags],
    }
    if evaluation is not None:
        payload['torsion'] = {'order': order, 'power': power, 'series': series_to_json(evaluation)}
    return payload


def expansion_text(payload: Dict[str, Any]) -> str:
    lines = [f"{payload['name']}: Φ₀,S¹(M) = {payload['series']['text']}",
             f"  μ-constant: {'yes' if payload['constant'] else 'no'}"]
    torsion = payload.get('torsion')
    if torsion:
        lines.append(f"  at λ = ζ{torsion['order']}^{torsion['power']}: {torsion['series']['text']}")
    return "\n".join(lines)


def rigidity_to_dict(report) -> Dict[str, Any]:
    payload = {
        'command': 'rigidity',
        'name': report.name,
        'asserted': report.asserted,
        'constant': report.constant,
        'matches': report.matches,
        'passed': report.passed,
        'expected': series_to_json(report.expected),
    }
    if report.constant_series is not None:
        payload['constant_series'] = series_to_json(report.constant_series)
    if report.first_failure is not None:
        exponent, _ = report.first_failure
        coeff = render_character(report.expansion.series.coefficient(exponent))
        payload['first_failure'] = {'exponent': format_rational(exponent), 'coefficient': coeff}
    return payload


def rigidity_text(payload: Dict[str, Any]) -> str:
    name = payload['name']
    if not payload['constant']:
        failure = payload['first_failure']
        return (f"{name}: NOT constant; first non-constant coefficient at "
                f"{format_exponent(Fraction(failure['exponent'])) or 'q^{0}'}: {failure['coefficient']}")
    constant = payload['constant_series']['text']
    if payload['matches']:
        return f"{name}: constant at all orders; equals {constant}"
    return (f"{name}: constant at all orders; equals {constant}\n"
            f"  but Φ₀(M) = {payload['expected']['text']} (mismatch)")


def local_data_to_dict(name: str, data: List[Tuple[Any, PuiseuxSeries]]) -> Dict[str, Any]:
    return {
        'command': 'local-data',
        'name': name,
        'components': [{
            'name': Y.name,
            'dimension': Y.dim,
            'orientation_sign': Y.orientation_sign,
            'rotation_numbers': [{'k': r.k, 'multiplicity': r.multiplicity} for r in Y.rotation],
            'series': series_to_json(series),
        } for Y, series in data],
    }


def local_data_text(payload: Dict[str, Any]) -> str:
    lines = [f"{payload['name']}: local data"]
    for component in payload['components']:
        rotation = ', '.join(f"k={r['k']}·{r['multiplicity']}" for r in component['rotation_numbers'])
        lines.append(f"  μ_{component['name']} [{rotation or 'trivial'}] = {component['series']['text']}")
    return "\n".join(lines)


# ==================== m-number ====================

def m_number_to_dict(name: str, order: int, details, m_global, codim_bound, isolated) -> Dict[str, Any]:
    return {
        'command': 'm-number',
        'name': name,
        'order': order,
        'm': format_rational(m_global),
        'sigma_codim_bound': codim_bound,
        'isolated': isolated,
        'components': [{
            'name': d.name,
            'm': format_rational(d.m_o),
            'sigma_codim': d.codim,
            'normalized': [{'k': k, 'alpha': alpha, 'k_tilde': k_tilde} for k, alpha, k_tilde in d.k_tilde],
            'factor_pole_bounds': [{'k': k, 'bound': format_rational(b)} for k, b in d.factor_bounds],
        } for d in details],
    }


def m_number_text(payload: Dict[str, Any]) -> str:
    o = payload['order']
    lines = [f"{payload['name']}: m_{o} = {payload['m']}; codim M^σ ≤ {payload['sigma_codim_bound']}"
             + ("; isolated" if payload['isolated'] else '')]
    for c in payload['components']:
        normalized = ', '.join(f"{n['k']}→{'+' if n['alpha'] > 0 else '-'}{n['k_tilde']}"
                               for n in c['normalized'])
        lines.append(f"  {c['name']}: m_{o}(Y) = {c['m']}, codim = {c['sigma_codim']}"
                     + (f", k̃: {normalized}" if normalized else ''))
    return "\n".join(lines)


# ==================== verdict ====================

def verdict_to_dict(report) -> Dict[str, Any]:
    return {
        'rule': report.rule,
        'quote': report.quote,
        'order': report.order,
        'r': report.r,
        'fired': report.fired,
        'consistent': report.consistent,
        'inconsistent': report.inconsistent,
        'resolved': report.resolved,
        'predicted_bound': None if report.predicted_bound is None else format_rational(report.predicted_bound),
        'computed': {
            'vanishes': report.computed.vanishes,
            'pole_order': None if report.computed.order is None else format_rational(report.computed.order),
            'precision': format_rational(report.computed.precision),
        },
        'hypotheses': [{'name': h.name, 'passed': h.passed, 'detail': h.detail} for h in report.hypotheses],
        'sub_verdicts': [{'tag': s.tag, 'claim': s.claim, 'applies': s.applies,
                          'holds': s.holds, 'detail': s.detail} for s in report.sub_verdicts],
        'components': [{'name': d.name, 'm': format_rational(d.m_o), 'sigma_codim': d.codim}
                       for d in report.components],
        'notes': list(report.notes),
    }


def verdicts_to_dict(name: str, reports) -> Dict[str, Any]:
    return {'command': 'verdict', 'name': name, 'verdicts': [verdict_to_dict(r) for r in reports]}


def _status(v: Dict[str, Any]) -> str:
    if not v['fired']:
        return 'not fired'
    if v['inconsistent']:
        return 'fired; INCONSISTENT'
    return 'fired; consistent'


def verdict_text(payload: Dict[str, Any]) -> str:
    lines = [f"{payload['name']}:"]
    for v in payload['verdicts']:
        head = f"[{v['rule']}]"
        if v['order'] is not None:
            head += f" o = {v['order']},"
        lines.append(f"{head} r = {v['r']}: {_status(v)}")
        lines.append(f"  \"{v['quote']}\"")
        for h in v['hypotheses']:
            lines.append(f"  {'✓' if h['passed'] else '✗'} {h['name']}: {h['detail']}")
        computed = v['computed']
        pole = (f"vanishes through {format_exponent(Fraction(computed['precision'])) or 'q^{0}'}"
                if computed['vanishes'] else computed['pole_order'])
        if v['predicted_bound'] is not None:
            lines.append(f"  predicted: pole order < {v['predicted_bound']}"
                         + ('' if v['resolved'] else ' (truncation too shallow to resolve)'))
        lines.append(f"  computed: pole order {pole}")
        for s in v['sub_verdicts']:
            if not s['applies']:
                continue
            outcome = {True: 'holds', False: 'FAILS', None: 'unresolved'}[s['holds']]
            lines.append(f"  · {s['tag']}: {s['claim']}: {outcome}"
                         + (f" ({s['detail']})" if s['detail'] else ''))
        for note in v['notes']:
            lines.append(f"  note: {note}")
    return "\n".join(lines)


# ==================== catalog / validate ====================

def catalog_to_dict(entries: Dict[str, Any]) -> Dict[str, Any]:
    rows = []
    for name, desc in entries.items():
        components = getattr(desc, 'components', None)
        rows.append({'name': name, 'dimension': desc.dim,
                     'fixed_components': None if components is None else len(components)})
    return {'command': 'catalog', 'entries': rows}


def catalog_text(payload: Dict[str, Any]) -> str:
    lines = []
    for row in payload['entries']:
        action = '' if row['fixed_components'] is None else f"  S¹, {row['fixed_components']} fixed components"
        lines.append(f"{row['name']:24s} dim {row['dimension']}{action}")
    return "\n".join(lines)


def validate_to_dict(name: str, problems: List[str]) -> Dict[str, Any]:
    return {'command': 'validate', 'name': name, 'valid': not problems, 'problems': list(problems)}


def validate_text(payload: Dict[str, Any]) -> str:
    if payload['valid']:
        return f"{payload['name']}: valid"
    return "\n".join([f"{payload['name']}: invalid"] + [f"  {p}" for p in payload['problems']])


TEXT_RENDERERS = {
    'genus': genus_text,
    'twisted': twisted_index_text,
    'expand': expansion_text,
    'rigidity': rigidity_text,
    'local-data': local_data_text,
    'm-number': m_number_text,
    'verdict': verdict_text,
    'catalog': catalog_text,
    'validate': validate_text,
}


def render(payload: Dict[str, Any], fmt: str = 'text', kind: str = None) -> str:
    """
    Args:
        payload: *_to_dict 的结果
        fmt: 'text' 或 'json'
        kind: 文本渲染器名称，缺省取 payload['command']
    """
    if fmt == 'json':
        return dumps(payload)
    return TEXT_RENDERERS[kind or payload['command']](payload)
