# coding = utf-8
"""
测试公共设置：把项目根目录加入路径，并提供内置示例
"""

import os
import sys

import pytest

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from catalog_io import catalog  # noqa: E402


@pytest.fixture(scope='session')
def entries():
    """全部内置示例 {名称: 描述}"""
    return catalog()


@pytest.fixture(scope='session')
def k3(entries):
    return entries['K3_type']


@pytest.fixture(scope='session')
def hp2(entries):
    return entries['HP2_type'].underlying
