import logging
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..base.suite_base import FAIL, PASS, ConfiguredSuite, guarded, types_within
from ..errors import CatoError
from ..lie.chevalley import build_table
from ..lie.rootsys import SUPPORTED_TYPES, Weight, build_root_system
from ..modules.modules_o import build_verma, singular_vectors, up_ordering

logger = logging.getLogger(__name__)

WITNESS_RANK = 3

BGG_GRID = {
    'A1': ['0', '1', '2', '3', '5'],
    'A2': ['0,0', '1,0', '0,1', '1,1', '2,1', '-2,0', '0,-2', '-3,1', '1,-3', '-2,-2'],
}


def _check_witness(type_label: str) -> Dict[str, Any]:
    """对所有 I 和 w ∈ W: 存在 β ∈ Φ⁺∖Φ_I⁺ 使 w⁻¹β < 0 当且仅当 w ∉ W_I"""
    rs = build_root_system(type_label)
    mismatches = []
    checked = 0
    for size in range(rs.rank + 1):
        for indices in combinations(range(rs.rank), size):
            parabolic = rs.parabolic(indices)
            subgroup = rs.parabolic_subgroup(parabolic)
            for element, word in rs.weyl_group.items():
                checked += 1
                witness = rs.weyl_coset_witness(word, parabolic)
                if (witness is None) != (element in subgroup):
                    mismatches.append({'I': parabolic.labels(), 'word': [i + 1 for i in word]})
    return {'status': FAIL if mismatches else PASS, 'order': len(rs.weyl_group), 'checked': checked,
            'mismatches': mismatches}


def _check_bgg(type_label: str, lam_text: str, depth: int) -> Dict[str, Any]:
    """深度内每个 μ: M(λ) 在权 μ 处有奇异向量当且仅当 μ ↑ λ"""
    rs = build_root_system(type_label)
    module = build_verma(Weight.parse(lam_text), depth, build_table(rs))
    mismatches: List[Dict[str, Any]] = []
    for offset in module.offsets():
        mu = module.weight_at(offset)
        hom = len(singular_vectors(module, mu))
        up = up_ordering(rs, mu, module.lam)
        if hom > 1 or bool(hom) != up:
            mismatches.append({'mu': mu.to_json(), 'hom': hom, 'up': up})
    return {'status': FAIL if mismatches else PASS, 'depth': depth, 'offsets': len(module.offsets()),
            'mismatches': mismatches}


class WeylSuite(ConfiguredSuite):
    """Weyl 陪集见证以及 Hom(M(μ), M(λ)) 与 ↑ 序的一致性"""
    name = 'weyl'

    def initialize(self) -> None:
        self.types = [t for t in types_within(self.limits, SUPPORTED_TYPES) if int(t[1:]) <= WITNESS_RANK]

    def _run(self, types: Optional[Iterable[str]] = None, depth: Optional[int] = None,
            grid: Optional[Dict[str, Sequence[str]]] = None, **params) -> Dict[str, Any]:
        selected = list(types) if types else self.types
        depth = self.limits.default_depth if depth is None else depth
        if depth > self.limits.depth_cap:
            raise CatoError(f"depth {depth} exceeds cap {self.limits.depth_cap}")
        results = [guarded(_check_witness, {'type': t, 'check': 'witness'}, t) for t in selected]
        for type_label, weights in (grid or BGG_GRID).items():
            if types and type_label not in selected:
                continue
            for lam in weights:
                results.append(guarded(_check_bgg, {'type': type_label, 'check': 'bgg', 'lambda': lam},
                                       type_label, lam, depth))
        return self._report(results)
