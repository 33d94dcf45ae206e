import logging
from typing import Any, Dict, Iterable, List, Optional

from ..base.suite_base import FAIL, PASS, ConfiguredSuite, guarded
from ..lie.chevalley import build_table
from ..lie.rootsys import Weight, build_root_system
from ..modules.modules_o import simple_quotient
from ..padic.integrality import (HOLDS, VACUOUS, both_conditions_verify, estimate_verify, make_instance,
                                 m0_min, relation_space)
from ..utils.rational import parse_int_vector

logger = logging.getLogger(__name__)

DEFAULT_GRID: List[Dict[str, Any]] = [
    {'type': 'A2', 'lambda': '0,1/2', 'gamma': '1,1', 'n': 1, 'p': 5},
    {'type': 'A2', 'lambda': '0,1/2', 'gamma': '1,1', 'n': 1, 'p': 5, 'm0_extra': 1},
    {'type': 'A2', 'lambda': '0,1/2', 'gamma': '0,1', 'n': 2, 'p': 7},
    {'type': 'A2', 'lambda': '1/5,0', 'gamma': '1,1', 'n': 2, 'p': 5},
    {'type': 'B2', 'lambda': '1/3,2', 'gamma': '1,0', 'n': 2, 'p': 5},
    {'type': 'B2', 'lambda': '1/3,2', 'gamma': '1,1', 'n': 2, 'p': 7, 'm0_extra': 1},
]


def _evaluate(spec: Dict[str, Any]) -> Dict[str, Any]:
    rs = build_root_system(spec['type'])
    lam = Weight.parse(str(spec['lambda']))
    gamma = parse_int_vector(str(spec['gamma']))
    n, p = int(spec['n']), int(spec['p'])
    m0 = spec.get('m0')
    if m0 is None:
        m0 = m0_min(lam, p) + int(spec.get('m0_extra', 0))
    inst = make_instance(rs, lam, gamma, n, p, m0)
    depth = int(spec.get('depth', max(n * sum(gamma), 1)))
    module = simple_quotient(lam, depth, build_table(rs))
    report = relation_space(module, inst)
    verdict = both_conditions_verify(report)
    return {
        'status': PASS if verdict in (HOLDS, VACUOUS) else FAIL,
        **report.to_json(),
        'estimate': estimate_verify(report),
        'estimate_primes_ok': inst.ctx.estimate_ok,
    }


def check_instance(spec: Dict[str, Any]) -> Dict[str, Any]:
    """单个关系实例 (模块级函数, 可在进程池中运行)"""
    label = {key: spec[key] for key in ('type', 'lambda', 'gamma', 'n', 'p') if key in spec}
    return guarded(_evaluate, label, spec)


class IntegralitySuite(ConfiguredSuite):
    """解空间中每个系数向量都有长下标 p-进单位的精确判定"""
    name = 'integrality'

    def initialize(self) -> None:
        grid = self.config_loader.load_grid() if self.config_loader else []
        self.grid = grid or DEFAULT_GRID

    def _run(self, instances: Optional[Iterable[Dict[str, Any]]] = None, **params) -> Dict[str, Any]:
        selected = list(instances) if instances else self.grid
        return self._report(self._map(check_instance, selected))
