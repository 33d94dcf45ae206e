import logging
from typing import Any, Dict, Iterable, Optional

from ..base.suite_base import FAIL, PASS, ConfiguredSuite, guarded, types_within
from ..lie.chevalley import build_table
from ..lie.rootsys import SUPPORTED_TYPES, build_root_system
from ..padic.integrality import hyp_gate, sublemma_table

logger = logging.getLogger(__name__)


def _check_type(type_label: str, primes: Iterable[int], jacobi: bool) -> Dict[str, Any]:
    """单个根系上的穷举检验"""
    rs = build_root_system(type_label)
    table = build_table(rs)
    failures = {
        'string_law': rs.check_string_law(),
        'lemma2_roots': rs.check_lemma2(),
        'magnitudes': table.check_magnitudes(),
        'divided_powers': table.check_divided_powers(),
    }
    if jacobi:
        failures['jacobi'] = [list(triple) for triple in table.check_jacobi()]
    units = {}
    for p in primes:
        if not hyp_gate(rs, p).hyp_ok:
            units[str(p)] = 'skipped'
            continue
        units[str(p)] = len(sublemma_table(rs, p))
    failed = {name: rows for name, rows in failures.items() if rows}
    return {
        'status': FAIL if failed else PASS,
        't': rs.t,
        'extraspecial': len(table.extraspecial),
        'failures': failed,
        'sublemma_rows': units,
    }


def roots_report(type_label: str) -> Dict[str, Any]:
    """根系, Chevalley 表统计以及字符串律检验摘要"""
    rs = build_root_system(type_label)
    table = build_table(rs)
    return {
        **rs.to_json(),
        'structure_constants': len(table.structure_constants),
        'extraspecial': len(table.extraspecial),
        'string_law': 'ok' if not rs.check_string_law() else 'violated',
        'pairing_values': sorted(rs.pairing_values),
    }


class ChevalleySuite(ConfiguredSuite):
    """根串律, 结构常数模长, Jacobi 恒等式与 ℤ-形式的穷举检验"""
    name = 'chevalley'

    def initialize(self) -> None:
        self.types = types_within(self.limits, SUPPORTED_TYPES)

    def _run(self, types: Optional[Iterable[str]] = None, jacobi: bool = True, **params) -> Dict[str, Any]:
        selected = list(types) if types else self.types
        results = [guarded(_check_type, {'type': t}, t, self.settings.primes, jacobi) for t in selected]
        return self._report(results)
