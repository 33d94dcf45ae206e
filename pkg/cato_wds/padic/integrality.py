"""
p-进整性检验

缩放生成元 y^{(0)} = p^{m0}·y 下, (y_γ^{(0)})^n·v⁺ 用有序单项式
(y_1^{(0)})^{ν_1}···(y_t^{(0)})^{ν_t}·v⁺ 表示时系数 c_ν 的仿射解空间,
以及 "存在 Σν >= n 且 v_p(c_ν) <= 0 的下标" 这一断言的精确判定。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from ..errors import CatoError, DepthError, HypothesisError, IntegralityError
from ..lie.chevalley import build_table, k0_and_unit
from ..lie.rootsys import Root, RootSystem, Weight, add, scale
from ..modules.modules_o import TruncatedModule
from ..utils.linalg import column, local_feasibility, matrix_to_fractions, nullspace, to_matrix
from ..utils.rational import format_fraction, format_vector, vp

logger = logging.getLogger(__name__)

HOLDS = 'holds'
FAILS = 'fails'
VACUOUS = 'vacuous'


@dataclass(frozen=True)
class PadicContext:
    """素数 p 以及根系对 p 的假设是否成立"""
    p: int
    type_label: str
    hyp_ok: bool
    violation: Optional[str] = None
    estimate_ok: bool = True

    def require(self) -> None:
        if not self.hyp_ok:
            raise HypothesisError(self.violation)

    def to_json(self) -> Dict:
        return {'p': self.p, 'type': self.type_label, 'hyp_ok': self.hyp_ok, 'estimate_ok': self.estimate_ok}


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise CatoError(f"{p} is not a prime")


def hyp_gate(rs: RootSystem, p: int) -> PadicContext:
    """检查 p 的假设条件; 结论随上下文携带而不抛出"""
    _check_prime(p)
    violation = rs.hypothesis_violation(p)
    return PadicContext(p=p, type_label=rs.type_label, hyp_ok=violation is None, violation=violation,
                        estimate_ok=rs.estimate_primes_ok(p))


def vp_factorial(n: int, p: int) -> int:
    """Legendre: v_p(n!) = Σ_{i>=1} ⌊n/p^i⌋"""
    if n < 0:
        raise CatoError(f"n must be non-negative, got {n}")
    total, power = 0, p
    while power <= n:
        total += n // power
        power *= p
    return total


def m0_min(lam: Weight, p: int) -> int:
    """使所有 p^{m0}·<λ, α_i∨> 都是 p-整数的最小 m0 >= 0"""
    _check_prime(p)
    return max([0] + [-vp(c, p) for c in lam.coroot_coords if c])


def abcd_check(rs: RootSystem, gamma: Root, nmax: int) -> Dict:
    """
    n·γ 的每种正根分解都至少用 n 项 (n <= nmax)
    Returns:
        {'holds': bool, 'counterexample': {...} 或 None}
    """
    gamma = tuple(gamma)
    if not rs.is_positive_root(gamma):
        raise CatoError(f"{list(gamma)} is not a positive root of {rs.type_label}")
    for n in range(1, nmax + 1):
        target = scale(gamma, n)
        parts, nu = rs.min_parts(target)
        if parts < n:
            used = [list(rs.positive_roots[k]) for k, e in enumerate(nu) for _ in range(e)]
            logger.info("%s: %d·%s splits into %d positive roots", rs.type_label, n, list(gamma), parts)
            return {'holds': False,
                    'counterexample': {'n': n, 'nu': list(nu), 'parts': used, 'sum': parts}}
    return {'holds': True, 'counterexample': None}


@dataclass(frozen=True)
class RelationInstance:
    """
    Attributes:
        lam: 最高权 λ
        gamma: Φ⁺∖Φ_I⁺ 中的根
        n: 幂次
        m0: 缩放指数, 不小于 m0_min(λ, p)
        ctx: p-进上下文
    """
    lam: Weight
    gamma: Root
    n: int
    m0: int
    ctx: PadicContext

    def to_json(self) -> Dict:
        return {
            'type': self.ctx.type_label,
            'lambda': self.lam.to_json(),
            'gamma': list(self.gamma),
            'n': self.n,
            'm0': self.m0,
            'p': self.ctx.p,
        }


def make_instance(rs: RootSystem, lam: Weight, gamma: Sequence[int], n: int, p: int,
                  m0: Optional[int] = None) -> RelationInstance:
    """校验并构造关系实例; m0 缺省取 m0_min"""
    ctx = hyp_gate(rs, p)
    lowest = m0_min(lam, p)
    if m0 is None:
        m0 = lowest
    if m0 < lowest:
        raise CatoError(f"m0 = {m0} is below m0_min = {lowest}")
    if n < 0:
        raise CatoError(f"n must be non-negative, got {n}")
    gamma = tuple(gamma)
    parabolic = rs.max_parabolic_subset(lam)
    if gamma not in parabolic.complement:
        raise CatoError(f"{list(gamma)} is not in Φ⁺∖Φ_I⁺ for I = {parabolic.labels()}")
    return RelationInstance(lam=lam, gamma=gamma, n=n, m0=m0, ctx=ctx)


@dataclass
class IntegralityReport:
    """
    Attributes:
        instance: 关系实例
        index_set: ℐ_n, 即 n·γ 的全部正根分解 ν
        particular_solution: 特解 (ν = n·e_γ 处为 1)
        kernel_basis: 解空间的方向
        verdict: holds / fails / vacuous (未判定时为 None)
        witness: 特解中满足条件的下标
        residuals: 可行性约化后剩余的常数项
    """
    instance: RelationInstance
    index_set: List[Tuple[int, ...]]
    particular_solution: List[Fraction]
    kernel_basis: List[List[Fraction]] = field(default_factory=list)
    verdict: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None
    residuals: List[Fraction] = field(default_factory=list)

    @property
    def kernel_rank(self) -> int:
        return len(self.kernel_basis)

    def long_indices(self) -> List[int]:
        return [k for k, nu in enumerate(self.index_set) if sum(nu) >= self.instance.n]

    def to_json(self) -> Dict:
        return {
            'instance': self.instance.to_json(),
            'verdict': self.verdict,
            'witness': list(self.witness) if self.witness is not None else None,
            'kernel_rank': self.kernel_rank,
            'index_set': [list(nu) for nu in self.index_set],
            'particular_solution': format_vector(self.particular_solution),
            'kernel_basis': [format_vector(v) for v in self.kernel_basis],
        }


def relation_space(module: TruncatedModule, inst: RelationInstance) -> IntegralityReport:
    """
    全部系数向量 c 构成的仿射空间:
        Σ_ν c_ν·p^{m0(Σν - n)}·[y^ν v⁺] = [y_γ^n v⁺]   (在偏移 n·γ 的权空间中)
    """
    inst.ctx.require()
    rs = module.rs
    if inst.ctx.type_label != rs.type_label:
        raise CatoError(f"instance for {inst.ctx.type_label} used with {rs.type_label}")
    if inst.lam != module.lam:
        raise CatoError("instance weight differs from the module's highest weight")
    offset = scale(inst.gamma, inst.n)
    if sum(offset) > module.depth:
        raise DepthError(f"n·ht(γ) = {sum(offset)} exceeds depth {module.depth}")
    p, n, m0 = inst.ctx.p, inst.n, inst.m0
    indices = module.verma_basis(offset)
    target_nu = tuple(n if k == rs.index(inst.gamma) else 0 for k in range(rs.t))
    size = module.dim(offset)
    columns = []
    for nu in indices:
        image = module.monomial_vector(nu).component(offset) if size else ()
        factor = Fraction(p) ** (m0 * (sum(nu) - n))
        columns.append([factor * c for c in image])
    particular = [Fraction(int(nu == target_nu)) for nu in indices]

    system = to_matrix([[columns[j][i] for j in range(len(indices))] for i in range(size)], len(indices))
    rhs = module.monomial_vector(target_nu).component(offset) if size else ()
    if system.rows and system * column(particular) != column(rhs):
        raise IntegralityError("n·e_γ does not solve the relation system")
    kernel = [matrix_to_fractions(v.T)[0] for v in nullspace(system)]
    logger.debug("relation space at %s: %d indices, kernel rank %d", list(offset), len(indices), len(kernel))
    return IntegralityReport(instance=inst, index_set=list(indices), particular_solution=particular,
                             kernel_basis=kernel)


def _negation_feasible(report: IntegralityReport, rows: Sequence[int]) -> Tuple[bool, List[Fraction]]:
    """是否存在解 c 使得所选下标上的坐标全部落在 p·ℤ_(p)"""
    d = [report.particular_solution[r] for r in rows]
    b_rows = [[v[r] for v in report.kernel_basis] for r in rows]
    return local_feasibility(b_rows, d, report.instance.ctx.p)


def both_conditions_verify(report: IntegralityReport) -> str:
    """
    判定解空间中每个 c 是否都有 Σν >= n 且 v_p(c_ν) <= 0 的下标;
    做法是证明其否定 (所有长下标坐标都被 p 整除) 在 ℤ_(p) 上不可行
    """
    inst = report.instance
    inst.ctx.require()
    if not inst.ctx.estimate_ok:
        logger.warning("p = %d divides a root pairing of %s", inst.ctx.p, inst.ctx.type_label)
    if inst.n == 0:
        report.verdict = VACUOUS
        return VACUOUS
    feasible, residuals = _negation_feasible(report, report.long_indices())
    report.residuals = residuals
    report.verdict = FAILS if feasible else HOLDS
    if feasible:
        logger.warning("relation %s admits a solution with all long coefficients divisible by p",
                       inst.to_json())
    report.witness = estimate_witness(report)
    return report.verdict


def estimate_witness(report: IntegralityReport, sample_range: Sequence[int] = (-1, 0, 1)) -> Optional[Tuple[int, ...]]:
    """
    特解中 v_p(c_ν) <= 0 的下标 (优先取长下标); 对核方向的小整数扰动做抽样自检
    """
    p = report.instance.ctx.p
    long_rows = set(report.long_indices())

    def witness_of(c: Sequence[Fraction]) -> Optional[int]:
        hits = [k for k, value in enumerate(c) if vp(value, p) <= 0]
        if not hits:
            return None
        preferred = [k for k in hits if k in long_rows]
        return (preferred or hits)[0]

    found = witness_of(report.particular_solution)
    if report.kernel_basis:
        steps = list(sample_range) + [p]
        for coeffs in product(steps, repeat=min(len(report.kernel_basis), 3)):
            c = list(report.particular_solution)
            for t, v in zip(coeffs, report.kernel_basis):
                c = [a + t * b for a, b in zip(c, v)]
            if witness_of(c) is None:
                logger.warning("sampled solution %s has no p-adic unit coefficient", format_vector(c))
    return report.index_set[found] if found is not None else None


def estimate_verify(report: IntegralityReport) -> bool:
    """不要求 Σν >= n 时的同一断言: 每个解都有某个 v_p(c_ν) <= 0"""
    report.instance.ctx.require()
    feasible, _ = _negation_feasible(report, range(len(report.index_set)))
    return not feasible


def rescaled_solution(report: IntegralityReport, c: Sequence[Fraction], extra: int = 1) -> List[Fraction]:
    """m0 增加 extra 时对应的解: c_ν·p^{extra·(n - Σν)}"""
    p, n = report.instance.ctx.p, report.instance.n
    return [Fraction(value) * Fraction(p) ** (extra * (n - sum(nu))) for value, nu in zip(c, report.index_set)]


def sublemma_table(rs: RootSystem, p: int) -> List[Dict]:
    """所有 (α 单根, γ) 且 γ - α ∈ Φ⁺ 的 (k0, c)"""
    ctx = hyp_gate(rs, p)
    ctx.require()
    table = build_table(rs)
    rows = []
    for a, alpha in enumerate(rs.simple_roots):
        for gamma in rs.positive_roots:
            if not rs.is_positive_root(add(gamma, alpha, -1)):
                continue
            k0, c = k0_and_unit(table, a, gamma, p)
            rows.append({'alpha': a + 1, 'gamma': list(gamma), 'k0': k0, 'c': c,
                         'target': list(add(gamma, alpha, -k0))})
    return rows


def format_report_row(report: IntegralityReport) -> Dict[str, str]:
    """CSV 行"""
    inst = report.instance
    return {
        'type': inst.ctx.type_label,
        'lambda': ','.join(format_fraction(c) for c in inst.lam.coroot_coords),
        'gamma': ','.join(str(c) for c in inst.gamma),
        'n': str(inst.n),
        'm0': str(inst.m0),
        'p': str(inst.ctx.p),
        'verdict': report.verdict or '',
        'kernel_rank': str(report.kernel_rank),
    }
