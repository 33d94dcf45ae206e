import logging
from typing import Any, Dict, Iterable, Optional

from ..base.suite_base import FAIL, PASS, ConfiguredSuite, guarded, types_within
from ..lie.rootsys import SUPPORTED_TYPES, build_root_system
from ..padic.integrality import abcd_check

logger = logging.getLogger(__name__)


def _check_type(type_label: str, nmax: int, expect_failure: bool) -> Dict[str, Any]:
    """
    对每个正根 γ 检验 n·γ 至少需要 n 个正根; 预期失败的类型在找到反例时视为通过
    """
    rs = build_root_system(type_label)
    counterexamples = []
    for gamma in rs.positive_roots:
        verdict = abcd_check(rs, gamma, nmax)
        if not verdict['holds']:
            counterexamples.append({'gamma': list(gamma), **verdict['counterexample']})
    found = bool(counterexamples)
    return {
        'status': PASS if found == expect_failure else FAIL,
        'nmax': nmax,
        'expected_failure': expect_failure,
        'counterexamples': counterexamples,
    }


class AbcdSuite(ConfiguredSuite):
    """正根分解项数下界的穷举检验"""
    name = 'abcd'

    def initialize(self) -> None:
        self.types = types_within(self.limits, SUPPORTED_TYPES)

    def _run(self, types: Optional[Iterable[str]] = None, nmax: Optional[int] = None, **params) -> Dict[str, Any]:
        nmax = self.limits.nmax_cap if nmax is None else nmax
        selected = list(types) if types else self.types
        expected = set(self.settings.expected_abcd_failures)
        results = [guarded(_check_type, {'type': t}, t, nmax, t in expected) for t in selected]
        return self._report(results)
