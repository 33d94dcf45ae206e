"""
U(g) 的 PBW 基与规范化改写

单项式的因子顺序固定为: y 块 (按正根顺序), h 块, x 块。
任意字经由 ab -> ba + [a, b] 改写为规范形式, 全程使用精确有理数。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import CatoError, TableMismatchError
from ..utils.rational import format_fraction
from .chevalley import ChevalleyTable, Generator, LieElement, ad_power, generator_key

logger = logging.getLogger(__name__)

Word = Tuple[Generator, ...]


@dataclass(frozen=True)
class PBWMonomial:
    """y^{neg_exps} h^{cartan_exps} x^{pos_exps}"""
    neg_exps: Tuple[int, ...]
    cartan_exps: Tuple[int, ...]
    pos_exps: Tuple[int, ...]

    @classmethod
    def unit(cls, t: int, rank: int) -> 'PBWMonomial':
        return cls((0,) * t, (0,) * rank, (0,) * t)

    @classmethod
    def from_sorted_word(cls, word: Iterable[Generator], t: int, rank: int) -> 'PBWMonomial':
        exps = {'y': [0] * t, 'h': [0] * rank, 'x': [0] * t}
        for g in word:
            exps[g.kind][g.index] += 1
        return cls(tuple(exps['y']), tuple(exps['h']), tuple(exps['x']))

    def word(self) -> Word:
        out: List[Generator] = []
        for kind, exps in (('y', self.neg_exps), ('h', self.cartan_exps), ('x', self.pos_exps)):
            for index, e in enumerate(exps):
                out.extend([Generator(kind, index)] * e)
        return tuple(out)

    def label(self, table: ChevalleyTable) -> str:
        parts = []
        for kind, exps in (('y', self.neg_exps), ('h', self.cartan_exps), ('x', self.pos_exps)):
            for index, e in enumerate(exps):
                if e:
                    parts.append(f"{table.label(Generator(kind, index))}^{e}")
        return ' '.join(parts) if parts else '1'


def monomial_weight(m: PBWMonomial, table: ChevalleyTable) -> Tuple[int, ...]:
    """Σ pos_exps·β - Σ neg_exps·β (单根坐标)"""
    rs = table.rs
    out = [0] * rs.rank
    for k, beta in enumerate(rs.positive_roots):
        shift = m.pos_exps[k] - m.neg_exps[k]
        if shift:
            for j in range(rs.rank):
                out[j] += shift * beta[j]
    return tuple(out)


class PBWElement:
    """PBW 单项式的有理系数线性组合"""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: 'PBWAlgebra', terms: Optional[Mapping[PBWMonomial, object]] = None):
        self.algebra = algebra
        self.terms: Dict[PBWMonomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[m] = c

    def _same_algebra(self, other: 'PBWElement') -> None:
        if self.algebra is not other.algebra:
            raise TableMismatchError("PBW elements from different algebras")

    def __add__(self, other: 'PBWElement') -> 'PBWElement':
        self._same_algebra(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PBWElement(self.algebra, out)

    def __neg__(self) -> 'PBWElement':
        return PBWElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: 'PBWElement') -> 'PBWElement':
        return self + (-other)

    def __mul__(self, other) -> 'PBWElement':
        if isinstance(other, PBWElement):
            return self.algebra.multiply(self, other)
        scalar = Fraction(other)
        return PBWElement(self.algebra, {m: scalar * c for m, c in self.terms.items()})

    def __rmul__(self, scalar) -> 'PBWElement':
        return self * scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: PBWMonomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def weights(self) -> set:
        table = self.algebra.table
        return {monomial_weight(m, table) for m in self.terms}

    def sorted_terms(self) -> List[Tuple[PBWMonomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: [generator_key(g) for g in kv[0].word()])

    def to_json(self) -> Dict[str, str]:
        table = self.algebra.table
        return {m.label(table): format_fraction(c) for m, c in self.sorted_terms()}

    def __repr__(self) -> str:
        if not self.terms:
            return '0'
        table = self.algebra.table
        return ' + '.join(f"{format_fraction(c)}*{m.label(table)}" for m, c in self.sorted_terms())


class PBWAlgebra:
    """
    一个 Chevalley 表上的 U(g)

    Attributes:
        table: Chevalley 表
    """

    def __init__(self, table: ChevalleyTable):
        self.table = table
        self.t = table.rs.t
        self.rank = table.rs.rank
        self._ordered: Dict[Word, Dict[PBWMonomial, Fraction]] = {}

    # ---- 构造 ----
    def one(self) -> PBWElement:
        return PBWElement(self, {PBWMonomial.unit(self.t, self.rank): 1})

    def zero(self) -> PBWElement:
        return PBWElement(self)

    def generator(self, g: Generator) -> PBWElement:
        return PBWElement(self, {PBWMonomial.from_sorted_word((g,), self.t, self.rank): 1})

    def from_lie(self, z: LieElement) -> PBWElement:
        if z.table is not self.table:
            raise TableMismatchError("Lie element from a different table")
        out = self.zero()
        for g, c in z.coeffs.items():
            out = out + self.generator(g) * c
        return out

    def monomial(self, m: PBWMonomial) -> PBWElement:
        return PBWElement(self, {m: 1})

    # ---- 改写 ----
    def normal_order(self, word: Sequence[Generator]) -> PBWElement:
        """字在 U(g) 中的规范形式"""
        return PBWElement(self, self._normal_order(tuple(word)))

    def _normal_order(self, word: Word) -> Dict[PBWMonomial, Fraction]:
        if word in self._ordered:
            return self._ordered[word]
        descent = None
        for k in range(len(word) - 1):
            if generator_key(word[k]) > generator_key(word[k + 1]):
                descent = k
                break
        if descent is None:
            result = {PBWMonomial.from_sorted_word(word, self.t, self.rank): Fraction(1)}
        else:
            a, b = word[descent], word[descent + 1]
            head, tail = word[:descent], word[descent + 2:]
            result = {}
            _accumulate(result, self._normal_order(head + (b, a) + tail), 1)
            for g, value in self.table.bracket_generators(a, b).items():
                _accumulate(result, self._normal_order(head + (g,) + tail), value)
        self._ordered[word] = result
        return result

    def multiply(self, a: PBWElement, b: PBWElement) -> PBWElement:
        a._same_algebra(b)
        out: Dict[PBWMonomial, Fraction] = {}
        for ma, ca in a.terms.items():
            wa = ma.word()
            for mb, cb in b.terms.items():
                _accumulate(out, self._normal_order(wa + mb.word()), ca * cb)
        return PBWElement(self, out)

    def power(self, a: PBWElement, n: int) -> PBWElement:
        if n < 0:
            raise CatoError(f"Negative power {n}")
        out = self.one()
        for _ in range(n):
            out = self.multiply(out, a)
        return out

    def commutator(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return self.multiply(a, b) - self.multiply(b, a)

    def commutator_power(self, x: PBWElement, a: PBWElement, k: int) -> PBWElement:
        """ad(x)^k(a) in U(g)"""
        for _ in range(k):
            a = self.commutator(x, a)
        return a


def _accumulate(target: Dict[PBWMonomial, Fraction], source: Mapping[PBWMonomial, Fraction], scale) -> None:
    for m, c in source.items():
        value = target.get(m, 0) + scale * c
        if value:
            target[m] = value
        else:
            target.pop(m, None)


@lru_cache(maxsize=None)
def algebra_for(table: ChevalleyTable) -> PBWAlgebra:
    return PBWAlgebra(table)


def normal_order(table: ChevalleyTable, word: Sequence[Generator]) -> PBWElement:
    return algebra_for(table).normal_order(word)


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    """i_1 + ... + i_parts = total 的所有非负解"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(indices: Sequence[int]) -> int:
    out = factorial(sum(indices))
    for i in indices:
        out //= factorial(i)
    return out


def ad_power_identity_check(table: ChevalleyTable, x: Generator, z_word: Sequence[Generator], k: int) -> bool:
    """
    展开两边后比较规范形式:
        x^k·z_1···z_n = Σ (k; i_1..i_{n+1}) [x^{[i_1]},z_1]···[x^{[i_n]},z_n]·x^{i_{n+1}}
        ad(x)^k(z_1···z_n) = Σ (k; i_1..i_n) [x^{[i_1]},z_1]···[x^{[i_n]},z_n]
    其中 [x^{[i]}, z] = ad(x)^i(z)
    """
    if k < 0:
        raise CatoError(f"k must be non-negative, got {k}")
    algebra = algebra_for(table)
    z_word = tuple(z_word)
    n = len(z_word)
    x_lie = table.element(x)
    images = {(j, i): algebra.from_lie(ad_power(x_lie, i, table.element(z_word[j])))
              for j in range(n) for i in range(k + 1)}

    left = algebra.normal_order((x,) * k + z_word)
    right = algebra.zero()
    for indices in _compositions(k, n + 1):
        term = algebra.one()
        for j in range(n):
            term = algebra.multiply(term, images[(j, indices[j])])
        term = algebra.multiply(term, algebra.normal_order((x,) * indices[n]))
        right = right + term * _multinomial(indices)
    if left != right:
        logger.warning("left-multiplication identity failed for k=%d", k)
        return False

    left = algebra.commutator_power(algebra.generator(x), algebra.normal_order(z_word), k)
    right = algebra.zero()
    for indices in _compositions(k, n):
        term = algebra.one()
        for j in range(n):
            term = algebra.multiply(term, images[(j, indices[j])])
        right = right + term * _multinomial(indices)
    if left != right:
        logger.warning("commutator identity failed for k=%d", k)
        return False
    return True
