# coding = utf-8
"""
配置模块
从环境变量读取默认值（若安装了 python-dotenv，会先加载 .env 文件）
"""

import logging
import os
from pathlib import Path

try:
    from dotenv import load_dotenv
    DOTENV_AVAILABLE = True
except ImportError:
    DOTENV_AVAILABLE = False

if DOTENV_AVAILABLE:
    load_dotenv()

BASE_DIR = Path(__file__).resolve().parent

# q 指数的公共分母：q^{1/4} 来自 f(q,x)，q^{-dim/8} 来自 Â 尖点的归一化
SERIES_DENOMINATOR = 8

DEFAULT_TRUNCATE = int(os.environ.get('ELLGENUS_TRUNCATE', '4'))
DEFAULT_FORMAT = os.environ.get('ELLGENUS_FORMAT', 'text')
LOG_LEVEL = os.environ.get('ELLGENUS_LOG_LEVEL', 'WARNING').upper()
CATALOG_DIR = Path(os.environ.get('ELLGENUS_CATALOG_DIR', str(BASE_DIR / 'catalog')))


def series_denominator(extra=1):
    """
    公共分母，需要 q^{1/N} 时传入 N

    Args:
        extra: 额外需要的分母 N

    Returns:
        int: lcm(8, N)
    """
    from math import lcm
    return lcm(SERIES_DENOMINATOR, max(1, int(extra)))


def setup_logging(level=None):
    """配置根日志（只在启动文件里调用）"""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL), logging.WARNING),
        format='%(levelname)s %(name)s: %(message)s'
    )
