import logging
import random
from typing import Any, Dict, Iterable, List, Optional

from ..base.suite_base import FAIL, PASS, ConfiguredSuite, guarded
from ..lie.chevalley import build_table
from ..lie.nilexp import (b_sets, bch_matrix_check, choose_extremal, coefficient_valuations,
                          conjugation_identity_check, extremal_component_check, group_law_check,
                          observed_valuations, random_unipotent, reduce_fully)
from ..lie.rootsys import Weight, build_root_system
from ..modules.modules_o import build_verma

logger = logging.getLogger(__name__)

MATRIX_TYPES = ('A2', 'B2')
REDUCTION_TYPES = ('A2', 'B2', 'G2')
LEDGER_PRIME = 5
MODULE_DEPTH = 4


def _generic_weight(rank: int) -> Weight:
    """I = ∅ 的非整权"""
    return Weight(tuple(f"1/{k + 2}" for k in range(rank)))


def _check_matrices(type_label: str, samples: int, seed: int) -> Dict[str, Any]:
    rs = build_root_system(type_label)
    table = build_table(rs)
    rng = random.Random(seed)
    parabolic = rs.parabolic(())
    failures = []
    for k in range(samples):
        x = random_unipotent(table, parabolic, rng).log_coords
        y = random_unipotent(table, parabolic, rng).log_coords
        if not bch_matrix_check(x, y):
            failures.append({'sample': k, 'x': x.to_json(), 'y': y.to_json()})
    return {'status': FAIL if failures else PASS, 'samples': samples, 'failures': failures}


def _check_actions(type_label: str, samples: int, seed: int) -> Dict[str, Any]:
    """群律, 共轭恒等式, Σ 的极端分量以及赋值账本"""
    rs = build_root_system(type_label)
    table = build_table(rs)
    rng = random.Random(seed)
    parabolic = rs.parabolic(())
    module = build_verma(_generic_weight(rs.rank), MODULE_DEPTH, table)
    v = module.highest_weight_vector()
    failures: List[Dict[str, Any]] = []
    for k in range(samples):
        u1 = random_unipotent(table, parabolic, rng)
        u2 = random_unipotent(table, parabolic, rng, p=LEDGER_PRIME)
        if not group_law_check(u1, u2, v):
            failures.append({'sample': k, 'check': 'group_law'})
        if not conjugation_identity_check(u1, table.h(k % rs.rank), v):
            failures.append({'sample': k, 'check': 'conjugation'})
        support = u2.support()
        if not support:
            continue
        beta = choose_extremal(rs, support)
        if not extremal_component_check(u2, beta, module):
            failures.append({'sample': k, 'check': 'extremal_component'})
        expected = coefficient_valuations(u2, beta, module, LEDGER_PRIME)
        if observed_valuations(u2, beta, module, LEDGER_PRIME) != expected:
            failures.append({'sample': k, 'check': 'ledger', 'expected': expected})
    return {'status': FAIL if failures else PASS, 'samples': samples, 'failures': failures}


def _check_reduction(type_label: str, samples: int, seed: int, p: int) -> Dict[str, Any]:
    """约化在 ht(θ) 步内结束, 且 ht′ 严格上升"""
    rs = build_root_system(type_label)
    table = build_table(rs)
    rng = random.Random(seed)
    parabolic = rs.parabolic(())
    limit = sum(rs.highest_root)
    failures = []
    tried = 0
    while tried < samples:
        u = random_unipotent(table, parabolic, rng, p=p)
        _, plus, _ = b_sets(u, 0, p)
        if not plus:
            continue
        tried += 1
        trace = reduce_fully(u, 0, p)
        heights = [entry['ht_prime'] for entry in trace if entry['ht_prime'] is not None]
        rising = all(a < b for a, b in zip(heights, heights[1:]))
        if len(trace) - 1 > limit or not rising:
            failures.append({'u': u.to_json(), 'trace': trace})
    return {'status': FAIL if failures else PASS, 'samples': samples, 'failures': failures}


class BchSuite(ConfiguredSuite):
    """BCH 的忠实性, δ_u 的群律与 Σ 的约化"""
    name = 'bch'

    def initialize(self) -> None:
        self.matrix_types = MATRIX_TYPES
        self.reduction_types = REDUCTION_TYPES

    def _run(self, types: Optional[Iterable[str]] = None, samples: Optional[int] = None,
            **params) -> Dict[str, Any]:
        samples = self.settings.bch_samples if samples is None else samples
        seed = self.settings.seed
        selected = set(types) if types else None
        results = []
        for t in self.matrix_types:
            if selected is None or t in selected:
                results.append(guarded(_check_matrices, {'type': t, 'check': 'matrix'}, t, samples, seed))
                results.append(guarded(_check_actions, {'type': t, 'check': 'actions'}, t,
                                       max(1, samples // 2), seed))
        for t in self.reduction_types:
            if selected is None or t in selected:
                p = 5 if t == 'G2' else 3
                results.append(guarded(_check_reduction, {'type': t, 'check': 'reduction'}, t,
                                       samples + samples // 2, seed, p))
        return self._report(results)
