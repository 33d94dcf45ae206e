"""
精确线性代数工具

sympy 矩阵的薄封装 (行空间, 零空间, 求解) 以及 p-局部化环上的 Smith 约化。
"""
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from sympy import Matrix, eye, zeros

from .rational import to_fraction, to_sympy, vp


def to_matrix(rows: Sequence[Sequence], ncols: int = 0) -> Matrix:
    """由 Fraction/int 的行列表构造 sympy 矩阵 (允许零行)"""
    if not rows:
        return zeros(0, ncols)
    return Matrix([[to_sympy(x) for x in row] for row in rows])


def column(values: Sequence) -> Matrix:
    return Matrix(len(values), 1, [to_sympy(x) for x in values])


def vstack(blocks: Sequence[Matrix], ncols: int) -> Matrix:
    result = zeros(0, ncols)
    for block in blocks:
        if block.rows:
            result = result.col_join(block)
    return result


def row_basis(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """
    行空间的约化基
    Returns:
        (Q, pivots): Q 为 rref 的非零行, pivots 为主元列; ker(Q) = ker(m)
    """
    if m.rows == 0:
        return zeros(0, m.cols), ()
    reduced, pivots = m.rref()
    return reduced[:len(pivots), :], tuple(pivots)


def nullspace(m: Matrix) -> List[Matrix]:
    if m.rows == 0:
        return [eye(m.cols)[:, j] for j in range(m.cols)]
    return m.nullspace()


def is_zero(m: Matrix) -> bool:
    return all(entry == 0 for entry in m)


def solve_particular(a: Matrix, b: Matrix) -> Matrix:
    """求 a·x = b 的一个特解 (自由参数取零); 无解时抛出 ValueError"""
    solution, params = a.gauss_jordan_solve(b)
    if params.rows:
        solution = solution.subs({sym: 0 for sym in params})
    return solution


def nilpotent_exp(n: Matrix) -> Matrix:
    """幂零矩阵的指数 (有限和)"""
    result = eye(n.rows)
    term = eye(n.rows)
    k = 0
    while True:
        k += 1
        term = term * n
        if is_zero(term):
            return result
        result += term / factorial(k)


def unipotent_log(u: Matrix) -> Matrix:
    """幺幂矩阵的对数 (有限和)"""
    n = u - eye(u.rows)
    result = zeros(u.rows, u.cols)
    term = eye(u.rows)
    k = 0
    while True:
        k += 1
        term = term * n
        if is_zero(term):
            return result
        result += term * ((-1) ** (k + 1)) / k


def local_feasibility(b_rows: Sequence[Sequence], d: Sequence, p: int) -> Tuple[bool, List[Fraction]]:
    """
    判断是否存在 t ∈ ℚ^k 使 d + B·t ∈ p·ℤ_(p)^m

    在 ℤ_(p) 上做 Smith 式约化: 行变换只用 ℤ_(p) 上可逆的初等变换
    (主元取赋值最小者), 列变换允许任意有理系数 (t 是自由的)。
    没有主元的行给出条件 v_p(d') >= 1。
    Args:
        b_rows: m×k 有理矩阵的行
        d: 长度 m 的有理向量
        p: 素数
    Returns:
        (是否可行, 剩余行上的 d' 值)
    """
    rows = [[Fraction(x) for x in row] for row in b_rows]
    rhs = [Fraction(x) for x in d]
    m = len(rhs)
    k = len(rows[0]) if rows else 0
    pivot = 0
    for col in range(k):
        candidates = [(vp(rows[r][col], p), r) for r in range(pivot, m) if rows[r][col] != 0]
        if not candidates:
            continue
        _, r = min(candidates)
        rows[pivot], rows[r] = rows[r], rows[pivot]
        rhs[pivot], rhs[r] = rhs[r], rhs[pivot]
        lead = rows[pivot][col]
        for row in rows:
            row[col] /= lead
        for r in range(m):
            factor = rows[r][col]
            if r == pivot or factor == 0:
                continue
            # v_p(factor) >= 0, 行变换在 ℤ_(p) 上可逆
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot])]
            rhs[r] -= factor * rhs[pivot]
        for c in range(k):
            factor = rows[pivot][c]
            if c == col or factor == 0:
                continue
            for row in rows:
                row[c] -= factor * row[col]
        pivot += 1
    residuals = rhs[pivot:]
    return all(vp(x, p) >= 1 for x in residuals), residuals


def matrix_to_fractions(m: Matrix) -> List[List[Fraction]]:
    return [[to_fraction(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
