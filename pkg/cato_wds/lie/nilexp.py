"""
幂零根基 𝔲_P⁻ 中的指数映射

幺幂元以其对数存储。提供 BCH 乘积 (Dynkin 级数逐字展开), 在截断形式完备化上的
δ_u 作用, 级数 Σ = exp(-log u)·v⁺, 以及按 p-进赋值的 B/B⁺/B′ 约化。
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import CatoError, DepthError
from ..modules.modules_o import FormalVector, TruncatedModule
from ..padic.integrality import vp_factorial
from ..utils.linalg import nilpotent_exp
from ..utils.rational import format_fraction, vp
from .chevalley import ChevalleyTable, Generator, LieElement, bracket
from .rootsys import ParabolicSubset, Root, RootSystem

logger = logging.getLogger(__name__)

__all__ = [
    'FormalVector', 'UnipotentElement', 'bch', 'bch_matrix_check', 'log_word_coefficient', 'nilpotency_class',
    'random_unipotent', 'delta_action', 'sigma_series', 'group_law_check', 'adjoint_action',
    'conjugation_identity_check', 'b_sets', 'reduction_step', 'reduce_fully', 'choose_extremal',
    'extremal_component_check', 'coefficient_valuations', 'observed_valuations',
]


def nilpotency_class(rs: RootSystem, parabolic: Optional[ParabolicSubset] = None) -> int:
    """𝔲_P⁻ 的幂零类上界 Σ_{i∉I} θ_i"""
    indices = parabolic.indices if parabolic is not None else frozenset()
    return sum(c for i, c in enumerate(rs.highest_root) if i not in indices)


def _check_radical(z: LieElement, parabolic: Optional[ParabolicSubset]) -> None:
    rs = z.table.rs
    for g in z.coeffs:
        if g.kind != 'y':
            raise CatoError(f"{z.table.label(g)} is not in the nilpotent radical")
        if parabolic is not None and rs.positive_roots[g.index] not in parabolic.complement:
            raise CatoError(f"{z.table.label(g)} lies in the Levi part for I = {parabolic.labels()}")


# ---- BCH ----
def _is_block(piece: Tuple[int, ...]) -> bool:
    """形如 X^r Y^s (0 表示 X, 1 表示 Y)"""
    return all(not (a == 1 and b == 0) for a, b in zip(piece, piece[1:]))


@lru_cache(maxsize=None)
def log_word_coefficient(word: Tuple[int, ...]) -> Fraction:
    """log(e^X e^Y) 在自由结合代数中字 word 的系数"""
    size = len(word)
    ways: List[Dict[int, Fraction]] = [dict() for _ in range(size + 1)]
    ways[0][0] = Fraction(1)
    for end in range(1, size + 1):
        for start in range(end):
            piece = word[start:end]
            if not _is_block(piece):
                continue
            r = piece.count(0)
            weight = Fraction(1, factorial(r) * factorial(len(piece) - r))
            for n, value in ways[start].items():
                ways[end][n + 1] = ways[end].get(n + 1, 0) + value * weight
    return sum((Fraction((-1) ** (n - 1), n) * value for n, value in ways[size].items()), Fraction(0))


def bch(x: LieElement, y: LieElement, parabolic: Optional[ParabolicSubset] = None) -> LieElement:
    """
    ℋ(x, y) = log(exp x·exp y)

    Dynkin 投影: 齐次度 N 的部分等于 (1/N) Σ_w c_w·[w_1,[w_2,…,w_N]],
    c_w 为 log(e^X e^Y) 中字 w 的系数; 右嵌套括号按后缀缓存, 为零的后缀剪枝。
    """
    if x.table is not y.table:
        raise CatoError("bch arguments come from different tables")
    _check_radical(x, parabolic)
    _check_radical(y, parabolic)
    table = x.table
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    letters = (x, y)
    bound = nilpotency_class(table.rs, parabolic)
    result = table.zero()
    layer: Dict[Tuple[int, ...], LieElement] = {(0,): x, (1,): y}
    for degree in range(1, bound + 1):
        for word, value in layer.items():
            c = log_word_coefficient(word)
            if c:
                result = result + value * (c / degree)
        if degree == bound:
            break
        nxt: Dict[Tuple[int, ...], LieElement] = {}
        for word, value in layer.items():
            for letter in (0, 1):
                image = bracket(letters[letter], value)
                if not image.is_zero():
                    nxt[(letter,) + word] = image
        if not nxt:
            break
        layer = nxt
    return result


def bch_matrix_check(x: LieElement, y: LieElement) -> bool:
    """伴随表示中 exp(ad ℋ(x,y)) = exp(ad x)·exp(ad y)"""
    table = x.table
    h = bch(x, y)
    left = nilpotent_exp(table.adjoint_matrix(h))
    right = nilpotent_exp(table.adjoint_matrix(x)) * nilpotent_exp(table.adjoint_matrix(y))
    return left == right


# ---- 幺幂元 ----
@dataclass(frozen=True)
class UnipotentElement:
    """
    u = exp(log_coords), log_coords 支撑在 {y_β : β ∈ Φ⁺∖Φ_I⁺}

    Attributes:
        log_coords: log u
        parabolic: 抛物子集 I
    """
    log_coords: LieElement
    parabolic: ParabolicSubset

    def __post_init__(self):
        _check_radical(self.log_coords, self.parabolic)

    @classmethod
    def identity(cls, table: ChevalleyTable, parabolic: ParabolicSubset) -> 'UnipotentElement':
        return cls(table.zero(), parabolic)

    @classmethod
    def from_coefficients(cls, table: ChevalleyTable, parabolic: ParabolicSubset,
                          coefficients: Dict[Root, object]) -> 'UnipotentElement':
        log = table.zero()
        for root, c in coefficients.items():
            log = log + table.y(tuple(root)) * c
        return cls(log, parabolic)

    @property
    def table(self) -> ChevalleyTable:
        return self.log_coords.table

    def inverse(self) -> 'UnipotentElement':
        return UnipotentElement(-self.log_coords, self.parabolic)

    def __mul__(self, other: 'UnipotentElement') -> 'UnipotentElement':
        if self.parabolic != other.parabolic:
            raise CatoError("unipotent elements for different parabolics")
        return UnipotentElement(bch(self.log_coords, other.log_coords, self.parabolic), self.parabolic)

    def support(self) -> List[Root]:
        """B(u), 按正根顺序"""
        rs = self.table.rs
        return sorted((rs.positive_roots[g.index] for g in self.log_coords.coeffs), key=rs.index)

    def coefficient(self, beta: Root) -> Fraction:
        return self.log_coords.coefficient(Generator('y', self.table.rs.index(tuple(beta))))

    def component(self, beta: Root) -> LieElement:
        """z_β"""
        return self.table.y(tuple(beta)) * self.coefficient(beta)

    def to_json(self) -> Dict:
        return {
            'I': self.parabolic.labels(),
            'log': {self.table.label(Generator('y', self.table.rs.index(beta))): format_fraction(self.coefficient(beta))
                    for beta in self.support()},
        }


def random_unipotent(table: ChevalleyTable, parabolic: ParabolicSubset, rng: random.Random,
                     p: Optional[int] = None, spread: int = 2) -> UnipotentElement:
    """支撑在 Φ⁺∖Φ_I⁺ 上的随机小有理系数 (给定 p 时系数为 p 的幂乘单位)"""
    coefficients = {}
    for beta in parabolic.complement:
        if rng.random() < 0.4:
            continue
        if p is None:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        else:
            c = Fraction(rng.choice([1, -1, 2, -2])) * Fraction(p) ** rng.randint(-spread, spread)
        if c:
            coefficients[beta] = c
    return UnipotentElement.from_coefficients(table, parabolic, coefficients)


# ---- 作用 ----
def _check_module(u: UnipotentElement, module: TruncatedModule) -> None:
    if u.table is not module.table:
        raise CatoError("unipotent element and module use different tables")


def delta_action(u: UnipotentElement, v: FormalVector) -> FormalVector:
    """δ_u·v = Σ_n (1/n!)·(log u)^n·v, 超出深度的分量丢弃"""
    module = v.module
    _check_module(u, module)
    out = v
    term = v
    n = 0
    while True:
        n += 1
        term = module.apply_lie(u.log_coords, term) * Fraction(1, n)
        if term.is_zero():
            return out
        out = out + term


def sigma_series(u: UnipotentElement, module: TruncatedModule) -> FormalVector:
    """Σ = Σ_n (1/n!)·(-log u)^n·v⁺"""
    return delta_action(u.inverse(), module.highest_weight_vector())


def group_law_check(u1: UnipotentElement, u2: UnipotentElement, v: FormalVector) -> bool:
    """δ_{u1}(δ_{u2} v) = δ_{u1 u2} v"""
    return delta_action(u1, delta_action(u2, v)) == delta_action(u1 * u2, v)


def adjoint_action(u: UnipotentElement, x: LieElement) -> LieElement:
    """Ad(u⁻¹)(x) = Σ_k (1/k!)·ad(-log u)^k(x)"""
    minus = -u.log_coords
    out = x
    term = x
    k = 0
    while True:
        k += 1
        term = bracket(minus, term) * Fraction(1, k)
        if term.is_zero():
            return out
        out = out + term


def conjugation_identity_check(u: UnipotentElement, x: LieElement, v: FormalVector) -> bool:
    """
    δ_{u⁻¹}(x·(δ_u v)) = Ad(u⁻¹)(x)·v, 只比较不受截断影响的分量
    """
    module = v.module
    _check_module(u, module)
    rs = module.rs
    lift = max((sum(rs.positive_roots[g.index]) for g in x.coeffs if g.kind == 'x'), default=0)
    left = delta_action(u.inverse(), module.apply_lie(x, delta_action(u, v)))
    right = module.apply_lie(adjoint_action(u, x), v)
    limit = module.depth - lift
    for offset in set(left.components) | set(right.components):
        if sum(offset) <= limit and left.component(offset) != right.component(offset):
            logger.warning("conjugation identity fails at offset %s", list(offset))
            return False
    return True


# ---- B(u) 与约化 ----
def b_sets(u: UnipotentElement, scale_exp: int, p: int) -> Tuple[List[Root], List[Root], List[Root]]:
    """
    Returns:
        (B, B⁺, B′): B 为 log u 的支撑, B⁺ = {β : v_p(z_β 的系数) < scale_exp}, B′ = B∖B⁺
    """
    support = u.support()
    plus = [beta for beta in support if vp(u.coefficient(beta), p) < scale_exp]
    prime = [beta for beta in support if beta not in plus]
    return support, plus, prime


def _min_height(roots: Sequence[Root]) -> Optional[int]:
    return min((sum(r) for r in roots), default=None)


def reduction_step(u: UnipotentElement, scale_exp: int, p: int) -> UnipotentElement:
    """u₁ = u·exp(-z′), z′ = Σ_{β∈B′} z_β"""
    _, plus, prime = b_sets(u, scale_exp, p)
    if not plus:
        raise CatoError("B⁺(u) is empty; u is already integral at this scale")
    z_prime = u.table.zero()
    for beta in prime:
        z_prime = z_prime + u.component(beta)
    return UnipotentElement(bch(u.log_coords, -z_prime, u.parabolic), u.parabolic)


def reduce_fully(u: UnipotentElement, scale_exp: int, p: int) -> List[Dict]:
    """
    反复约化直到 B′ = ∅; 每步记录 ht′ 以及括号部分是否为零
    ("vanishing": log u₁ = log u - z′, "raised": 括号部分非零)
    """
    rs = u.table.rs
    limit = sum(rs.highest_root)
    trace: List[Dict] = []
    current = u
    for step in range(limit + 1):
        _, plus, prime = b_sets(current, scale_exp, p)
        entry = {'step': step, 'B_plus': [list(b) for b in plus], 'B_prime': [list(b) for b in prime],
                 'ht_prime': _min_height(prime), 'u': current.to_json()}
        trace.append(entry)
        if not prime or not plus:
            entry['branch'] = 'done' if not prime else 'integral'
            return trace
        nxt = reduction_step(current, scale_exp, p)
        linear = current.log_coords
        for beta in prime:
            linear = linear - current.component(beta)
        entry['branch'] = 'vanishing' if nxt.log_coords == linear else 'raised'
        current = nxt
    raise CatoError(f"reduction did not terminate within {limit} steps")


def choose_extremal(rs: RootSystem, roots: Sequence[Root]) -> Root:
    """B 的极端元中字典序最小者"""
    extremal = rs.extremal_elements(roots)
    if not extremal:
        raise CatoError("no extremal element in an empty set")
    return min(extremal)


def extremal_component_check(u: UnipotentElement, beta_plus: Root, module: TruncatedModule,
                             nmax: Optional[int] = None) -> bool:
    """Σ 在偏移 n·β⁺ 处的分量恰为 (-1)^n/n!·z_{β⁺}^n·v⁺"""
    _check_module(u, module)
    beta_plus = tuple(beta_plus)
    height = sum(beta_plus)
    if nmax is None:
        nmax = module.depth // height
    series = sigma_series(u, module)
    z = u.component(beta_plus)
    power = module.highest_weight_vector()
    for n in range(1, nmax + 1):
        power = module.apply_lie(z, power, strict=True)
        expected = power * Fraction((-1) ** n, factorial(n))
        offset = tuple(n * c for c in beta_plus)
        if series.component(offset) != expected.component(offset):
            logger.warning("Σ differs from the extremal closed form at n=%d", n)
            return False
    return True


def coefficient_valuations(u: UnipotentElement, beta_plus: Root, module: TruncatedModule, p: int,
                           nmax: Optional[int] = None) -> List[Dict[str, int]]:
    """
    z_{β⁺}^n·v⁺ 在 Σ 中的标量系数的赋值: n·v_p(t) - v_p(n!), t 为 log u 中 y_{β⁺} 的系数
    """
    _check_module(u, module)
    beta_plus = tuple(beta_plus)
    rs = module.rs
    if beta_plus not in rs.extremal_elements(u.support()):
        raise CatoError(f"{list(beta_plus)} is not extremal in B(u)")
    height = sum(beta_plus)
    if nmax is None:
        nmax = module.depth // height
    if nmax * height > module.depth:
        raise DepthError(f"n·ht(β⁺) = {nmax * height} exceeds depth {module.depth}")
    t = u.coefficient(beta_plus)
    base = vp(t, p)
    return [{'n': n, 'vp': n * base - vp_factorial(n, p)} for n in range(nmax + 1)]


def observed_valuations(u: UnipotentElement, beta_plus: Root, module: TruncatedModule, p: int,
                        nmax: Optional[int] = None) -> List[Dict[str, int]]:
    """从 Σ 的偏移 n·β⁺ 分量直接读出 y_{β⁺}^n·v⁺ 前的标量并取赋值"""
    _check_module(u, module)
    beta_plus = tuple(beta_plus)
    height = sum(beta_plus)
    if nmax is None:
        nmax = module.depth // height
    series = sigma_series(u, module)
    y = module.table.y(beta_plus)
    power = module.highest_weight_vector()
    ledger = [{'n': 0, 'vp': 0}]
    for n in range(1, nmax + 1):
        power = module.apply_lie(y, power, strict=True)
        offset = tuple(n * c for c in beta_plus)
        basis_image = power.component(offset)
        pivot = next((k for k, c in enumerate(basis_image) if c), None)
        if pivot is None:
            raise CatoError(f"y_β⁺^{n}·v⁺ vanishes; no scalar to read")
        scalar = series.component(offset)[pivot] / basis_image[pivot]
        ledger.append({'n': n, 'vp': vp(scalar, p)})
    return ledger
