"""
Cato WDS
~~~~~~~~

Exact verification toolkit for highest weight modules in the locally analytic
category O: root systems, Chevalley bases, PBW rewriting, truncated Verma and
simple modules, p-adic integrality of relation spaces, and BCH reductions.
"""

import os

from .base.suite_base import SuiteBase
from .errors import CatoError
from .suites.abcd import AbcdSuite
from .suites.bch import BchSuite
from .suites.chevalley import ChevalleySuite
from .suites.integrality import IntegralitySuite
from .suites.weyl import WeylSuite

__version__ = '0.1.0'

# 仓库根目录下的默认配置目录
DEFAULT_CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')

SUITES = {
    'abcd': AbcdSuite,
    'bch': BchSuite,
    'chevalley': ChevalleySuite,
    'integrality': IntegralitySuite,
    'weyl': WeylSuite,
}


def create_suite(name, config_path=None):
    """
    创建验证套件实例的便捷方法

    Args:
        name: 套件名 (abcd, bch, chevalley, integrality, weyl)
        config_path: 可选的配置文件路径，如果不提供且默认配置存在则使用默认配置

    Returns:
        SuiteBase 实例
    """
    if name not in SUITES:
        raise CatoError(f"Unknown suite {name!r}; expected one of {', '.join(sorted(SUITES))}")
    if config_path is None:
        default = os.path.join(DEFAULT_CONFIG_DIR, 'config.json')
        config_path = default if os.path.exists(default) else None
    return SUITES[name](config_path)


__all__ = ['SuiteBase', 'AbcdSuite', 'BchSuite', 'ChevalleySuite', 'IntegralitySuite', 'WeylSuite',
           'CatoError', 'create_suite']
