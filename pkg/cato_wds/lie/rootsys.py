"""
根系的构造与组合

约定 (见 docs/conventions.md):
    - 单根按 Bourbaki 编号, Python 接口中的下标从 0 开始
    - Cartan 矩阵 a[i][j] = <α_j, α_i∨>
    - 正根按 (高度, 字典序降序) 排列, 这是 PBW 单项式唯一的固定顺序
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import Matrix

from ..errors import CatoError, UnsupportedTypeError
from ..utils.config_loader import active_limits
from ..utils.rational import format_vector, parse_vector, to_fraction

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]
WeylElement = Tuple[Root, ...]

SUPPORTED_TYPES = ('A1', 'A2', 'A3', 'A4', 'B2', 'B3', 'B4', 'C3', 'C4', 'D4', 'F4', 'G2')


@dataclass(frozen=True)
class Weight:
    """权, 以余根坐标 (<λ, α_i∨>)_i 存储; 不要求整性"""
    coroot_coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coroot_coords', tuple(Fraction(x) for x in self.coroot_coords))

    @classmethod
    def parse(cls, text: str) -> 'Weight':
        return cls(parse_vector(text))

    @property
    def rank(self) -> int:
        return len(self.coroot_coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coroot_coords[i]

    def __add__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a + b for a, b in zip(self.coroot_coords, other.coroot_coords)))

    def __sub__(self, other: 'Weight') -> 'Weight':
        return Weight(tuple(a - b for a, b in zip(self.coroot_coords, other.coroot_coords)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coroot_coords)

    def to_json(self) -> List[str]:
        return format_vector(self.coroot_coords)

    def __str__(self) -> str:
        return '(' + ','.join(self.to_json()) + ')'


@dataclass(frozen=True)
class ParabolicSubset:
    """标准抛物子集 I 及其导出的 Φ_I⁺"""
    indices: FrozenSet[int]
    roots: Tuple[Root, ...]
    complement: Tuple[Root, ...]

    def contains_root(self, root: Root) -> bool:
        return root in self.roots or tuple(-c for c in root) in self.roots

    def labels(self) -> List[int]:
        """Bourbaki 编号 (从 1 开始)"""
        return sorted(i + 1 for i in self.indices)


def _gram_data(family: str, n: int) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    """单根的内积 (α_i, α_i) 与 Dynkin 图的边 (i, j, (α_i, α_j))"""
    if family == 'A':
        return [2] * n, [(i, i + 1, -1) for i in range(n - 1)]
    if family == 'B':
        return [4] * (n - 1) + [2], [(i, i + 1, -2) for i in range(n - 1)]
    if family == 'C':
        edges = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2)]
        return [2] * (n - 1) + [4], edges
    if family == 'D':
        return [2] * n, [(i, i + 1, -1) for i in range(n - 2)] + [(n - 3, n - 1, -1)]
    if family == 'F':
        return [4, 4, 2, 2], [(0, 1, -2), (1, 2, -2), (2, 3, -1)]
    if family == 'G':
        return [2, 6], [(0, 1, -3)]
    raise UnsupportedTypeError(f"Unknown Lie type family: {family}")


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Root, ...]
    rho: Weight

    # ---- 基本数据 ----
    @property
    def family(self) -> str:
        return self.type_label[0]

    @property
    def t(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def simple_roots(self) -> Tuple[Root, ...]:
        return self.positive_roots[:self.rank]

    @cached_property
    def _index(self) -> Dict[Root, int]:
        return {root: k for k, root in enumerate(self.positive_roots)}

    @cached_property
    def _all_roots(self) -> FrozenSet[Root]:
        return frozenset(self.positive_roots) | frozenset(negate(r) for r in self.positive_roots)

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def cartan_inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        inv = Matrix(self.cartan).inv()
        return tuple(tuple(to_fraction(inv[i, j]) for j in range(self.rank)) for i in range(self.rank))

    def index(self, root: Root) -> int:
        """正根在固定顺序中的位置"""
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise CatoError(f"{list(root)} is not a positive root of {self.type_label}")

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._all_roots

    def is_positive_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._index

    def height(self, v: Sequence) -> int:
        return sum(v)

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """由 Gram 矩阵给出的 W-不变内积"""
        return sum((Fraction(u[i]) * self.gram[i][j] * v[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def pairing(self, v: Union[Sequence[int], Weight], i: int) -> Fraction:
        """<v, α_i∨>: 根经 Cartan 矩阵计算, 权直接读取余根坐标"""
        if not 0 <= i < self.rank:
            raise CatoError(f"Simple index {i} out of range for {self.type_label}")
        if isinstance(v, Weight):
            return v[i]
        return Fraction(sum(self.cartan[i][j] * v[j] for j in range(self.rank)))

    def coroot_pairing(self, v: Union[Sequence[int], Weight], beta: Root) -> Fraction:
        """<v, β∨>, β 为任意根"""
        norm = self.inner(beta, beta)
        if isinstance(v, Weight):
            # β∨ = Σ β_i (α_i,α_i)/(β,β) α_i∨
            return sum((Fraction(beta[i] * self.gram[i][i]) / norm * v[i] for i in range(self.rank)),
                       Fraction(0))
        return 2 * self.inner(v, beta) / norm

    def root_weight(self, v: Sequence[int]) -> Weight:
        """根格元素转为余根坐标"""
        return Weight(tuple(self.pairing(v, i) for i in range(self.rank)))

    def weight_to_root_coords(self, weight: Weight) -> Tuple[Fraction, ...]:
        """解 A·c = λ, 得到单根坐标 (可能非整)"""
        inv = self.cartan_inverse
        return tuple(sum((inv[i][j] * weight[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def reflect(self, v: Sequence[int], i: int) -> Root:
        """s_i(v) = v - <v, α_i∨> α_i"""
        c = int(self.pairing(v, i))
        out = list(v)
        out[i] -= c
        return tuple(out)

    def reflect_root(self, v: Sequence[int], beta: Root) -> Root:
        """s_β(v) = v - <v, β∨> β, β 为任意根"""
        c = self.coroot_pairing(v, beta)
        if c.denominator != 1:
            raise CatoError(f"Non-integral pairing <{tuple(v)}, {tuple(beta)}∨>")
        return tuple(int(a - c * b) for a, b in zip(v, beta))

    # ---- 字符串与抛物子集 ----
    def root_string(self, beta: Root, gamma: Root) -> Tuple[int, int]:
        """
        β-串通过 γ: γ - rβ, ..., γ + qβ
        Returns:
            (r, q), 满足 r - q = <γ, β∨>
        """
        beta, gamma = tuple(beta), tuple(gamma)
        if not self.is_root(beta) or not self.is_root(gamma):
            raise CatoError(f"root_string expects roots, got {list(beta)}, {list(gamma)}")
        if _proportional(beta, gamma):
            raise CatoError(f"Proportional roots {list(beta)}, {list(gamma)} have no string")
        r = 0
        while self.is_root(add(gamma, beta, -(r + 1))):
            r += 1
        q = 0
        while self.is_root(add(gamma, beta, q + 1)):
            q += 1
        return r, q

    def parabolic(self, indices: Iterable[int]) -> ParabolicSubset:
        indices = frozenset(indices)
        if any(not 0 <= i < self.rank for i in indices):
            raise CatoError(f"Simple indices {sorted(indices)} out of range")
        inside = tuple(r for r in self.positive_roots
                       if all(c == 0 for k, c in enumerate(r) if k not in indices))
        outside = tuple(r for r in self.positive_roots if r not in inside)
        return ParabolicSubset(indices, inside, outside)

    def max_parabolic_subset(self, lam: Weight) -> ParabolicSubset:
        """I = { i : <λ, α_i∨> ∈ ℤ≥0 }"""
        self._check_weight(lam)
        return self.parabolic(i for i, c in enumerate(lam.coroot_coords)
                              if c.denominator == 1 and c >= 0)

    def _check_weight(self, lam: Weight) -> None:
        if lam.rank != self.rank:
            raise CatoError(f"Weight of rank {lam.rank} used with {self.type_label}")

    # ---- 锥与分拆 ----
    def extremal_elements(self, roots: Iterable[Root]) -> List[Root]:
        """
        返回 S 中锥的极小生成元: β⁺ 不落在其余元素生成的锥中
        Args:
            roots: 非空的正根集合
        """
        pool = sorted(set(tuple(r) for r in roots), key=self._order_key)
        if not pool:
            raise CatoError("extremal_elements needs a non-empty set")
        return [beta for beta in pool
                if not self._in_cone(beta, [g for g in pool if g != beta])]

    def _in_cone(self, v: Root, generators: List[Root]) -> bool:
        # 锥的 Carathéodory 定理: 只需检查线性无关子集
        target = Matrix(v)
        for k in range(1, min(self.rank, len(generators)) + 1):
            for subset in combinations(generators, k):
                m = Matrix([list(g) for g in subset]).T
                if m.rank() < k:
                    continue
                try:
                    solution, _ = m.gauss_jordan_solve(target)
                except ValueError:
                    continue
                if all(x >= 0 for x in solution):
                    return True
        return False

    def enumerate_compositions(self, gamma: Root, n: int) -> List[Tuple[int, ...]]:
        """所有 ν ∈ ℤ≥0^t 使 Σ ν_i β_i = n·γ"""
        if not self.is_positive_root(gamma):
            raise CatoError(f"{list(gamma)} is not a positive root")
        return self.compositions(tuple(n * c for c in gamma))

    def compositions(self, target: Sequence[int]) -> List[Tuple[int, ...]]:
        target = tuple(target)
        if any(c < 0 for c in target):
            return []
        found: List[Tuple[int, ...]] = []
        nu = [0] * self.t

        def search(k: int, rest: Root) -> None:
            if not any(rest):
                found.append(tuple(nu[:k]) + (0,) * (self.t - k))
                return
            if k == self.t:
                return
            beta = self.positive_roots[k]
            kmax = min(rest[j] // beta[j] for j in range(self.rank) if beta[j] > 0)
            for e in range(kmax, -1, -1):
                nu[k] = e
                search(k + 1, add(rest, beta, -e))
            nu[k] = 0

        search(0, target)
        return sorted(found, reverse=True)

    def kostant_count(self, target: Sequence[int]) -> int:
        """Kostant 分拆数 (Verma 模权空间维数)"""
        return self._kostant(0, tuple(target))

    @cached_property
    def _memo(self) -> Dict[str, Dict]:
        return {'kostant': {}, 'min_parts': {}}

    def _kostant(self, k: int, rest: Root) -> int:
        memo = self._memo['kostant']
        if (k, rest) not in memo:
            memo[(k, rest)] = self._kostant_uncached(k, rest)
        return memo[(k, rest)]

    def _kostant_uncached(self, k: int, rest: Root) -> int:
        if any(c < 0 for c in rest):
            return 0
        if not any(rest):
            return 1
        if k == self.t:
            return 0
        beta = self.positive_roots[k]
        return self._kostant(k + 1, rest) + self._kostant(k, add(rest, beta, -1))

    def min_parts(self, target: Sequence[int]) -> Optional[Tuple[int, Tuple[int, ...]]]:
        """
        target 写成正根之和时所需的最少项数及一个见证 ν
        Returns:
            (Σν 的最小值, ν), target 不在正根生成的幺半群中时为 None
        """
        return self._min_parts(tuple(target))

    def _min_parts(self, rest: Root) -> Optional[Tuple[int, Tuple[int, ...]]]:
        memo = self._memo['min_parts']
        if rest not in memo:
            memo[rest] = self._min_parts_uncached(rest)
        return memo[rest]

    def _min_parts_uncached(self, rest: Root) -> Optional[Tuple[int, Tuple[int, ...]]]:
        if not any(rest):
            return 0, (0,) * self.t
        best = None
        for k, beta in enumerate(self.positive_roots):
            smaller = add(rest, beta, -1)
            if any(c < 0 for c in smaller):
                continue
            sub = self._min_parts(smaller)
            if sub is None:
                continue
            if best is None or sub[0] + 1 < best[0]:
                nu = list(sub[1])
                nu[k] += 1
                best = (sub[0] + 1, tuple(nu))
        return best

    # ---- Weyl 群 ----
    def _check_weyl_rank(self) -> None:
        cap = active_limits().rank_cap
        if self.rank > cap:
            raise UnsupportedTypeError(f"Weyl group of rank {self.rank} exceeds rank cap {cap}")

    def _apply(self, element: WeylElement, v: Sequence[int]) -> Root:
        out = [0] * self.rank
        for j, c in enumerate(v):
            if c:
                for k in range(self.rank):
                    out[k] += c * element[j][k]
        return tuple(out)

    @cached_property
    def _identity(self) -> WeylElement:
        return tuple(tuple(1 if k == j else 0 for k in range(self.rank)) for j in range(self.rank))

    def _times_simple(self, element: WeylElement, i: int) -> WeylElement:
        # (w s_i)(α_j) = w(s_i α_j)
        return tuple(self._apply(element, self.reflect(self.simple_roots[j], i)) for j in range(self.rank))

    def _generate(self, generators: Iterable[int]) -> Dict[WeylElement, Tuple[int, ...]]:
        self._check_weyl_rank()
        generators = sorted(generators)
        words = {self._identity: ()}
        queue = deque([self._identity])
        while queue:
            w = queue.popleft()
            for i in generators:
                nxt = self._times_simple(w, i)
                if nxt not in words:
                    words[nxt] = words[w] + (i,)
                    queue.append(nxt)
        return words

    @cached_property
    def weyl_group(self) -> Dict[WeylElement, Tuple[int, ...]]:
        """W 的全部元素及一个约化字 (BFS 得到的字是约化的)"""
        return self._generate(range(self.rank))

    def parabolic_subgroup(self, parabolic: ParabolicSubset) -> Set[WeylElement]:
        return set(self._generate(parabolic.indices))

    def apply_inverse_word(self, word: Sequence[int], v: Sequence[int]) -> Root:
        """w = s_{i1}...s_{ik} 时计算 w⁻¹(v) = s_{ik}(...s_{i1}(v))"""
        out = tuple(v)
        for i in word:
            out = self.reflect(out, i)
        return out

    def weyl_coset_witness(self, word: Sequence[int], parabolic: ParabolicSubset) -> Optional[Root]:
        """
        w ∉ W_I 时返回某个 β ∈ Φ⁺∖Φ_I⁺ 使 w⁻¹β < 0; w ∈ W_I 时返回 None
        Args:
            word: Weyl 字 (单根下标序列)
            parabolic: 抛物子集 I
        """
        self._check_weyl_rank()
        for beta in parabolic.complement:
            image = self.apply_inverse_word(word, beta)
            if all(c <= 0 for c in image):
                return beta
        return None

    # ---- 穷举检验 ----
    def check_string_law(self) -> List[Dict]:
        """对所有不成比例的根对检验 r - q = <γ, β∨> 以及串长上界"""
        longest = {'A': 2, 'D': 2, 'B': 3, 'C': 3, 'F': 3, 'G': 4}[self.family]
        violations = []
        roots = sorted(self._all_roots)
        for beta in roots:
            for gamma in roots:
                if _proportional(beta, gamma):
                    continue
                r, q = self.root_string(beta, gamma)
                if r - q != self.coroot_pairing(gamma, beta) or r + q + 1 > longest:
                    violations.append({'beta': list(beta), 'gamma': list(gamma), 'r': r, 'q': q})
        return violations

    def check_lemma2(self) -> List[Dict]:
        """
        对每个非单根 γ = α + β 以及 iβ - jα ∈ Φ⁺ (i, j > 0),
        (i-1)β - (j+1)α 与 iβ - (j+1)α 要么是正根, 要么不在 Φ ∪ {0} 中
        """
        violations = []
        bound = max(max(r) for r in self.positive_roots) + 1
        for gamma in self.positive_roots[self.rank:]:
            for a, alpha in enumerate(self.simple_roots):
                beta = add(gamma, alpha, -1)
                if not self.is_positive_root(beta):
                    continue
                for i in range(1, bound + 1):
                    for j in range(1, bound + 1):
                        chi = add(scale(beta, i), alpha, -j)
                        if not self.is_positive_root(chi):
                            continue
                        for cand in (add(scale(beta, i - 1), alpha, -(j + 1)), add(scale(beta, i), alpha, -(j + 1))):
                            if not any(cand) or (self.is_root(cand) and not self.is_positive_root(cand)):
                                violations.append({'gamma': list(gamma), 'alpha': a, 'i': i, 'j': j,
                                                   'candidate': list(cand)})
        return violations

    @cached_property
    def pairing_values(self) -> FrozenSet[int]:
        """所有非零的 <β, α∨>, α ≠ ±β"""
        values = set()
        roots = sorted(self._all_roots)
        for alpha in roots:
            for beta in roots:
                if _proportional(alpha, beta):
                    continue
                value = self.coroot_pairing(beta, alpha)
                if value:
                    values.add(int(value))
        return frozenset(values)

    def estimate_primes_ok(self, p: int) -> bool:
        """p 不整除任何非零的 <β, α∨>"""
        return all(v % p for v in self.pairing_values)

    def hypothesis_violation(self, p: int) -> Optional[str]:
        """B/C/F4 需 p > 2, G2 需 p > 3; 满足时返回 None"""
        if self.family in 'BCF' and p <= 2:
            return f"type {self.type_label} requires p > 2, got p = {p}"
        if self.family == 'G' and p <= 3:
            return f"type {self.type_label} requires p > 3, got p = {p}"
        return None

    # ---- 排序与序列化 ----
    @staticmethod
    def _order_key(root: Root) -> Tuple:
        return sum(root), tuple(-c for c in root)

    def to_json(self) -> Dict:
        return {
            'type': self.type_label,
            'rank': self.rank,
            'cartan': [list(row) for row in self.cartan],
            't': self.t,
            'positive_roots': [list(r) for r in self.positive_roots],
            'heights': [sum(r) for r in self.positive_roots],
            'highest_root': list(self.highest_root),
            'rho': self.rho.to_json(),
        }


def negate(v: Sequence[int]) -> Root:
    return tuple(-c for c in v)


def add(u: Sequence[int], v: Sequence[int], k: int = 1) -> Root:
    """u + k·v"""
    return tuple(a + k * b for a, b in zip(u, v))


def scale(v: Sequence[int], k: int) -> Root:
    return tuple(k * c for c in v)


def _proportional(u: Sequence[int], v: Sequence[int]) -> bool:
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(n))


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """
    ℤ≥0α_1 ⊕ ... ⊕ ℤ≥0α_ℓ 上的字典序
    Returns:
        -1, 0, 1 分别表示 a < b, a = b, a > b
    """
    if len(a) != len(b):
        raise CatoError(f"lex_compare length mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    return 0


def _parse_label(type_label: str) -> Tuple[str, int]:
    label = type_label.strip().upper()
    if label not in SUPPORTED_TYPES:
        raise UnsupportedTypeError(
            f"Unsupported root system type {type_label!r}; expected one of {', '.join(SUPPORTED_TYPES)}")
    family, rank = label[0], int(label[1:])
    if rank > active_limits().rank_cap:
        raise UnsupportedTypeError(f"Rank {rank} exceeds rank cap {active_limits().rank_cap}")
    return family, rank


def build_root_system(type_label: str) -> RootSystem:
    """
    由类型标签构造根系
    Args:
        type_label: "A1".."A4", "B2".."B4", "C3", "C4", "D4", "F4", "G2"
    Returns:
        RootSystem 实例 (不可变, 可共享)
    """
    family, n = _parse_label(type_label)
    return _build(family, n)


@lru_cache(maxsize=None)
def _build(family: str, n: int) -> RootSystem:
    norms, edges = _gram_data(family, n)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = norms[i]
    for i, j, value in edges:
        gram[i][j] = gram[j][i] = value
    cartan = tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(n)) for i in range(n))

    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found: Set[Root] = set(simple)
    layer = list(simple)
    while layer:
        nxt: Set[Root] = set()
        for beta in layer:
            for i, alpha in enumerate(simple):
                if beta == alpha:
                    continue
                r = 0
                while add(beta, alpha, -(r + 1)) in found:
                    r += 1
                q = r - sum(cartan[i][j] * beta[j] for j in range(n))
                if q > 0:
                    nxt.add(add(beta, alpha))
        nxt -= found
        found |= nxt
        layer = list(nxt)

    positive = tuple(sorted(found, key=RootSystem._order_key))
    rs = RootSystem(
        type_label=f"{family}{n}",
        rank=n,
        cartan=cartan,
        gram=tuple(tuple(row) for row in gram),
        positive_roots=positive,
        rho=Weight((1,) * n),
    )
    logger.debug("built %s with %d positive roots", rs.type_label, rs.t)
    return rs
