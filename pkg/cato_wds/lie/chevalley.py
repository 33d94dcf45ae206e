"""
Chevalley 基与整结构常数

结构常数由特殊对 (extraspecial pair) 算法确定: 每个非单正根 ξ 的特殊对取正号,
其余 N_{r,s} 由标准恒等式导出。记号:
    e_r (r ∈ Φ): r > 0 时为 x_r, r < 0 时为 y_{-r}
    [e_r, e_{-r}] = h_r,  [h_i, e_r] = <r, α_i∨> e_r,  [e_r, e_s] = N_{r,s} e_{r+s}
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from sympy import Matrix

from ..errors import CatoError, HypothesisError, IntegralityError, TableMismatchError
from ..utils.rational import format_fraction, to_fraction
from .rootsys import Root, RootSystem, add, negate

logger = logging.getLogger(__name__)

_KIND_ORDER = {'y': 0, 'h': 1, 'x': 2}


class Generator(NamedTuple):
    """基元: kind ∈ {'x', 'y', 'h'}; x/y 的 index 为正根位置, h 的 index 为单根下标"""
    kind: str
    index: int


def generator_key(g: Generator) -> Tuple[int, int]:
    """规范顺序: y 块 (根序), h 块, x 块"""
    return _KIND_ORDER[g.kind], g.index


class LieElement:
    """Chevalley 基上的有理系数线性组合"""

    __slots__ = ('table', 'coeffs')

    def __init__(self, table: 'ChevalleyTable', coeffs: Optional[Mapping[Generator, object]] = None):
        self.table = table
        self.coeffs: Dict[Generator, Fraction] = {}
        for g, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                self.coeffs[g] = c

    def _same_table(self, other: 'LieElement') -> None:
        if self.table is not other.table:
            raise TableMismatchError(
                f"Elements from tables {self.table.rs.type_label} and {other.table.rs.type_label}")

    def __add__(self, other: 'LieElement') -> 'LieElement':
        self._same_table(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return LieElement(self.table, out)

    def __neg__(self) -> 'LieElement':
        return LieElement(self.table, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: 'LieElement') -> 'LieElement':
        return self + (-other)

    def __mul__(self, scalar) -> 'LieElement':
        scalar = Fraction(scalar)
        return LieElement(self.table, {g: scalar * c for g, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, g: Generator) -> Fraction:
        return self.coeffs.get(g, Fraction(0))

    def support(self) -> List[Generator]:
        return sorted(self.coeffs, key=generator_key)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def to_json(self) -> Dict[str, str]:
        return {self.table.label(g): format_fraction(self.coeffs[g]) for g in self.support()}

    def __repr__(self) -> str:
        if not self.coeffs:
            return '0'
        return ' + '.join(f"{format_fraction(self.coeffs[g])}*{self.table.label(g)}" for g in self.support())


class ChevalleyTable:
    """
    一个根系的完整括号表 (构造后不可变)

    Attributes:
        rs: 根系
        basis: 规范顺序的全部基元
        structure_constants: (r, s) -> N_{r,s}, r, s, r+s ∈ Φ
        extraspecial: 每个非单正根的特殊对
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        t = rs.t
        self.basis: Tuple[Generator, ...] = (
            tuple(Generator('y', k) for k in range(t))
            + tuple(Generator('h', i) for i in range(rs.rank))
            + tuple(Generator('x', k) for k in range(t)))
        self._position = {g: k for k, g in enumerate(self.basis)}
        self.extraspecial: Dict[Root, Tuple[Root, Root]] = {}
        self.structure_constants: Dict[Tuple[Root, Root], int] = {}
        self._build_constants()
        self._brackets: Dict[Tuple[Generator, Generator], Dict[Generator, int]] = {}
        for a in self.basis:
            for b in self.basis:
                out = self._bracket_basis(a, b)
                if out:
                    self._brackets[(a, b)] = out
        logger.debug("Chevalley table for %s: %d non-zero brackets", rs.type_label, len(self._brackets))

    # ---- 结构常数 ----
    def _norm(self, v: Root) -> Fraction:
        return self.rs.inner(v, v)

    def _build_constants(self) -> None:
        rs = self.rs
        order = {r: k for k, r in enumerate(rs.positive_roots)}
        positive: Dict[Tuple[Root, Root], Fraction] = {}
        self._positive = positive

        for xi in rs.positive_roots[rs.rank:]:
            pairs = [(r, s) for r in rs.positive_roots for s in rs.positive_roots
                     if order[r] < order[s] and add(r, s) == xi]
            pairs.sort(key=lambda pair: order[pair[0]])
            alpha, beta = pairs[0]
            self.extraspecial[xi] = (alpha, beta)
            p, _ = rs.root_string(alpha, beta)
            positive[(alpha, beta)] = Fraction(p + 1)
            n_ab = positive[(alpha, beta)]
            for r, s in pairs[1:]:
                # 四项恒等式应用于 r + s + (-α) + (-β) = 0
                total = Fraction(0)
                if rs.is_root(add(s, alpha, -1)):
                    total += (self._n(s, negate(alpha)) * self._n(r, negate(beta))
                              / self._norm(add(s, alpha, -1)))
                if rs.is_root(add(r, alpha, -1)):
                    total += (self._n(negate(alpha), r) * self._n(s, negate(beta))
                              / self._norm(add(r, alpha, -1)))
                positive[(r, s)] = self._norm(xi) / n_ab * total

        for r in self._all_roots():
            for s in self._all_roots():
                if r != negate(s) and rs.is_root(add(r, s)):
                    value = self._n(r, s)
                    if value.denominator != 1:
                        raise IntegralityError(f"Non-integral N for {list(r)}, {list(s)}: {value}")
                    self.structure_constants[(r, s)] = int(value)

    def _all_roots(self) -> List[Root]:
        return list(self.rs.positive_roots) + [negate(r) for r in self.rs.positive_roots]

    def _n(self, a: Root, b: Root) -> Fraction:
        """N_{a,b}, a + b ∈ Φ; 只用到和的高度更低或已确定的正对"""
        rs = self.rs
        pos_a, pos_b = rs.is_positive_root(a), rs.is_positive_root(b)
        if pos_a and pos_b:
            if (a, b) in self._positive:
                return self._positive[(a, b)]
            return -self._positive[(b, a)]
        if not pos_a and not pos_b:
            return -self._n(negate(a), negate(b))
        if not pos_a:
            return -self._n(b, a)
        # a > 0 > b, c = -(a + b)
        c = negate(add(a, b))
        if rs.is_positive_root(add(a, b)):
            return self._norm(c) / self._norm(a) * self._n(b, c)
        return self._norm(c) / self._norm(b) * self._n(c, a)

    def structure_constant(self, r: Root, s: Root) -> int:
        """N_{r,s}; r + s ∉ Φ 时为 0"""
        return self.structure_constants.get((tuple(r), tuple(s)), 0)

    # ---- 基元 ----
    def root_of(self, g: Generator) -> Optional[Root]:
        """x/y 基元对应的 (带符号) 根; h 返回 None"""
        if g.kind == 'h':
            return None
        root = self.rs.positive_roots[g.index]
        return root if g.kind == 'x' else negate(root)

    def root_generator(self, root: Root) -> Generator:
        root = tuple(root)
        if self.rs.is_positive_root(root):
            return Generator('x', self.rs.index(root))
        return Generator('y', self.rs.index(negate(root)))

    def weight_of(self, g: Generator) -> Root:
        """ad(h) 下的权 (单根坐标)"""
        root = self.root_of(g)
        return root if root is not None else (0,) * self.rs.rank

    def coroot(self, root: Root) -> Dict[Generator, Fraction]:
        """h_β = Σ β_i (α_i,α_i)/(β,β) h_i, 对负根取相反数"""
        root = tuple(root)
        sign = 1
        if not self.rs.is_positive_root(root):
            root, sign = negate(root), -1
        norm = self._norm(root)
        return {Generator('h', i): sign * Fraction(root[i] * self.rs.gram[i][i]) / norm
                for i in range(self.rs.rank) if root[i]}

    def _bracket_basis(self, a: Generator, b: Generator) -> Dict[Generator, int]:
        rs = self.rs
        ra, rb = self.root_of(a), self.root_of(b)
        if ra is None and rb is None:
            return {}
        if ra is None:
            return {b: int(rs.pairing(rb, a.index))} if rs.pairing(rb, a.index) else {}
        if rb is None:
            return {a: -int(rs.pairing(ra, b.index))} if rs.pairing(ra, b.index) else {}
        total = add(ra, rb)
        if not any(total):
            out = {}
            for g, c in self.coroot(ra).items():
                if c.denominator != 1:
                    raise IntegralityError(f"Non-integral coroot for {list(ra)}")
                out[g] = int(c)
            return out
        if rs.is_root(total):
            return {self.root_generator(total): self.structure_constant(ra, rb)}
        return {}

    def bracket_generators(self, a: Generator, b: Generator) -> Dict[Generator, int]:
        return self._brackets.get((a, b), {})

    def element(self, g: Generator, coefficient=1) -> LieElement:
        return LieElement(self, {g: coefficient})

    def x(self, root: Root) -> LieElement:
        return self.element(Generator('x', self.rs.index(tuple(root))))

    def y(self, root: Root) -> LieElement:
        return self.element(Generator('y', self.rs.index(tuple(root))))

    def h(self, i: int) -> LieElement:
        if not 0 <= i < self.rs.rank:
            raise CatoError(f"Simple index {i} out of range")
        return self.element(Generator('h', i))

    def zero(self) -> LieElement:
        return LieElement(self)

    def label(self, g: Generator) -> str:
        if g.kind == 'h':
            return f"h[{g.index + 1}]"
        coords = ','.join(str(c) for c in self.rs.positive_roots[g.index])
        return f"{g.kind}[{coords}]"

    def parse_label(self, text: str) -> Generator:
        """label 的逆: "x[1,1]", "y[0,1]", "h[2]" """
        text = text.strip()
        if len(text) < 4 or text[1] != '[' or text[-1] != ']' or text[0] not in _KIND_ORDER:
            raise CatoError(f"Cannot parse generator {text!r}")
        try:
            values = tuple(int(v) for v in text[2:-1].split(','))
        except ValueError:
            raise CatoError(f"Cannot parse generator {text!r}")
        if text[0] == 'h':
            if len(values) != 1:
                raise CatoError(f"Cannot parse generator {text!r}")
            return self.h(values[0] - 1).support()[0]
        return Generator(text[0], self.rs.index(values))

    # ---- 伴随表示 ----
    def adjoint_matrix(self, z: LieElement) -> Matrix:
        """ad(z) 在规范基下的矩阵 (列为像)"""
        if z.table is not self:
            raise TableMismatchError("adjoint_matrix called with a foreign element")
        size = len(self.basis)
        m = [[Fraction(0)] * size for _ in range(size)]
        for g, c in z.coeffs.items():
            for col, b in enumerate(self.basis):
                for out, value in self.bracket_generators(g, b).items():
                    m[self._position[out]][col] += c * value
        return Matrix(m)

    def from_vector(self, values: Iterable) -> LieElement:
        return LieElement(self, {g: to_fraction(v) for g, v in zip(self.basis, values)})

    def to_vector(self, z: LieElement) -> List[Fraction]:
        return [z.coefficient(g) for g in self.basis]

    # ---- 穷举检验 ----
    def check_jacobi(self) -> List[Tuple[str, str, str]]:
        """基元三元组上的 Jacobi 恒等式, 返回违反者"""
        failures = []
        elements = [self.element(g) for g in self.basis]
        for i, a in enumerate(elements):
            for j in range(i + 1, len(elements)):
                b = elements[j]
                ab = bracket(a, b)
                for k in range(j + 1, len(elements)):
                    c = elements[k]
                    total = bracket(ab, c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
                    if not total.is_zero():
                        failures.append((self.label(self.basis[i]), self.label(self.basis[j]),
                                         self.label(self.basis[k])))
        return failures

    def check_magnitudes(self) -> List[Dict]:
        """|N_{r,s}| = p + 1, p 为 r-串通过 s 时向下的长度"""
        failures = []
        for (r, s), value in sorted(self.structure_constants.items()):
            p, _ = self.rs.root_string(r, s)
            if abs(value) != p + 1:
                failures.append({'r': list(r), 's': list(s), 'N': value, 'expected': p + 1})
        return failures

    def check_divided_powers(self) -> List[Dict]:
        """(1/i!)·ad(e_β)^i 把每个基元映到整形式中"""
        failures = []
        for root in self._all_roots():
            e = self.element(self.root_generator(root))
            for g in self.basis:
                z = self.element(g)
                i = 0
                while not z.is_zero():
                    if not z.is_integral():
                        failures.append({'root': list(root), 'basis': self.label(g), 'i': i})
                        break
                    i += 1
                    z = bracket(e, z) * Fraction(1, i)
        return failures

    def to_json(self) -> Dict:
        entries = []
        for a in self.basis:
            for b in self.basis:
                out = self.bracket_generators(a, b)
                if out:
                    entries.append({'bra': self.label(a), 'ket': self.label(b),
                                    'out': {self.label(g): c for g, c in sorted(out.items(),
                                                                                  key=lambda kv: generator_key(kv[0]))}})
        return {
            'type': self.rs.type_label,
            'extraspecial': [{'root': list(xi), 'pair': [list(a), list(b)], 'sign': 1}
                             for xi, (a, b) in self.extraspecial.items()],
            'brackets': entries,
        }


@lru_cache(maxsize=None)
def build_table(rs: RootSystem) -> ChevalleyTable:
    """构造 (并缓存) 根系的 Chevalley 表"""
    return ChevalleyTable(rs)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """双线性扩张的李括号"""
    a._same_table(b)
    table = a.table
    out: Dict[Generator, Fraction] = {}
    for ga, ca in a.coeffs.items():
        for gb, cb in b.coeffs.items():
            for g, value in table.bracket_generators(ga, gb).items():
                out[g] = out.get(g, 0) + ca * cb * value
    return LieElement(table, out)


def ad_power(e: LieElement, i: int, z: LieElement) -> LieElement:
    """ad(e)^i(z)"""
    if i < 0:
        raise CatoError(f"ad power must be non-negative, got {i}")
    for _ in range(i):
        z = bracket(e, z)
    return z


def divided_ad_power(beta: Root, i: int, z: LieElement, lowering: bool = False) -> LieElement:
    """
    (1/i!)·ad(x_β)^i(z), lowering=True 时用 y_β
    z 为整元时断言输出也是整元
    """
    table = z.table
    e = table.y(beta) if lowering else table.x(beta)
    out = ad_power(e, i, z) * Fraction(1, factorial(i))
    if z.is_integral() and not out.is_integral():
        raise IntegralityError(f"(1/{i}!)ad({'y' if lowering else 'x'}_{list(beta)})^{i} left the integral form")
    return out


def k0_and_unit(table: ChevalleyTable, alpha: int, gamma: Root, p: int) -> Tuple[int, int]:
    """
    ad(x_α)^{k0}(y_γ) = k0!·c·y_{γ-k0·α}
    Args:
        alpha: 单根下标
        gamma: 满足 γ - α ∈ Φ⁺ 的正根
        p: 素数, 须满足根系的素数假设
    Returns:
        (k0, c), c 为 p-单位
    """
    rs = table.rs
    violation = rs.hypothesis_violation(p)
    if violation:
        raise HypothesisError(violation)
    gamma = tuple(gamma)
    simple = rs.simple_roots[alpha]
    if not rs.is_positive_root(gamma) or not rs.is_positive_root(add(gamma, simple, -1)):
        raise CatoError(f"k0_and_unit needs γ and γ - α_{alpha + 1} in Φ⁺, got γ = {list(gamma)}")
    k0 = 1
    while rs.is_positive_root(add(gamma, simple, -(k0 + 1))):
        k0 += 1
    image = ad_power(table.x(simple), k0, table.y(gamma))
    target = table.root_generator(negate(add(gamma, simple, -k0)))
    value = image.coefficient(target) / factorial(k0)
    if value.denominator != 1:
        raise IntegralityError(f"ad-power constant {value} is not an integer")
    c = int(value)
    if c % p == 0:
        raise IntegralityError(f"ad-power constant {c} is divisible by p = {p}")
    return k0, c
