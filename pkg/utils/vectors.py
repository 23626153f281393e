"""
f、h、g（截断/扩展）与 gamma 向量之间的精确变换
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

import pandas as pd
import sympy
from sympy import Poly, QQ, chebyshevt, expand, symbols

from utils.errors import DivisibilityError, NotReciprocalError, RangeError, ShapeError

KINDS = ("f", "h", "g_trunc", "g_ext", "gamma")

Vector = Union["CountVector", Sequence[int]]


def expected_length(kind: str, d: int) -> int:
    if kind == "f":
        return d
    if kind in ("h", "g_ext"):
        return d + 1
    return d // 2 + 1


@dataclass(frozen=True)
class CountVector:
    kind: str
    d: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ShapeError(f"未知的向量类型 {self.kind}")
        object.__setattr__(self, 'entries', tuple(int(x) for x in self.entries))
        if len(self.entries) != expected_length(self.kind, self.d):
            raise ShapeError(f"{self.kind} 向量长度应为 {expected_length(self.kind, self.d)}，实际为 {len(self.entries)}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def to_json(self) -> dict:
        return {"kind": self.kind, "d": self.d, "entries": [str(x) for x in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "CountVector":
        return cls(data["kind"], int(data["d"]), tuple(int(x) for x in data["entries"]))


@dataclass(frozen=True)
class TransformMatrix:
    name: str
    d: int
    entries: Tuple[Tuple[int, ...], ...]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.entries)


class IntPolynomial:
    """升幂排列的有理系数一元多项式，末尾零项去掉"""

    def __init__(self, coefficients: Iterable):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1 if self.coefficients else -math.inf

    @classmethod
    def from_poly(cls, poly: Poly) -> "IntPolynomial":
        return cls(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))

    def to_poly(self, var) -> Poly:
        return Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in self.coefficients])) or [0],
                    var, domain=QQ)

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({[str(c) for c in self.coefficients]})"


def binom(n: int, k: int) -> int:
    """二项式系数，越界时为 0"""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _entries(vector: Vector) -> List[int]:
    if isinstance(vector, CountVector):
        return list(vector.entries)
    return [int(x) for x in vector]


def f_to_h(f: Vector, d: int = None) -> CountVector:
    """h_j = Σ_{i<=j} (-1)^{j-i} C(d-i, j-i) f_{i-1}，f_{-1} = 1"""
    values = _entries(f)
    d = len(values) if d is None else d
    if len(values) != d:
        raise ShapeError(f"f 向量长度 {len(values)} 与 d={d} 不一致")
    full = [1] + values
    h = [sum((-1) ** (j - i) * binom(d - i, j - i) * full[i] for i in range(j + 1)) for j in range(d + 1)]
    return CountVector('h', d, tuple(h))


def h_to_f(h: Vector) -> CountVector:
    """f_{j-1} = Σ_{i<=j} C(d-i, j-i) h_i"""
    values = _entries(h)
    d = len(values) - 1
    if d < 0:
        raise ShapeError("h 向量不能为空")
    f = [sum(binom(d - i, j - i) * values[i] for i in range(j + 1)) for j in range(1, d + 1)]
    return CountVector('f', d, tuple(f))


def g_ext_at(h: Vector, m: int) -> int:
    """g_m = h_m - h_{m-1}，h 在 [0, d] 之外按 0 延拓"""
    values = _entries(h)

    def at(i):
        return values[i] if 0 <= i < len(values) else 0

    return at(m) - at(m - 1)


def h_to_g(h: Vector, mode: str = "trunc") -> CountVector:
    values = _entries(h)
    d = len(values) - 1
    if mode == "trunc":
        return CountVector('g_trunc', d, tuple(g_ext_at(values, k) for k in range(d // 2 + 1)))
    if mode == "ext":
        return CountVector('g_ext', d, tuple(g_ext_at(values, k) for k in range(d + 1)))
    raise RangeError(f"未知的 g 向量模式 {mode}")


def dehn_sommerville_check(h: Vector) -> bool:
    values = _entries(h)
    return values == values[::-1]


def a_coeff(d: int, i: int, j: int) -> int:
    return binom(d - 2 * j, i - j)


def b_coeff(d: int, i: int, j: int) -> int:
    return binom(d - 2 * j, i - j) - binom(d - 2 * j, i - j - 1)


def transform_matrix(name: str, d: int) -> TransformMatrix:
    """A[i][j] = C(d-2j, i-j)，B[i][j] = C(d-2j, i-j) - C(d-2j, i-j-1)，0 <= i, j <= d/2"""
    coeff = {"A": a_coeff, "B": b_coeff}.get(name)
    if coeff is None:
        raise RangeError(f"未知的变换矩阵 {name}")
    size = d // 2 + 1
    return TransformMatrix(name, d, tuple(tuple(coeff(d, i, j) if j <= i else 0 for j in range(size))
                                          for i in range(size)))


def _check_half(values: List[int], d: int, what: str):
    if len(values) != d // 2 + 1:
        raise ShapeError(f"{what} 长度应为 {d // 2 + 1}，实际为 {len(values)}")


def gamma_to_h(gamma: Vector, d: int) -> Tuple[int, ...]:
    """前半 h 向量 (h_0, ..., h_{d/2}) = A γ"""
    values = _entries(gamma)
    _check_half(values, d, "gamma")
    return tuple(sum(a_coeff(d, i, j) * values[j] for j in range(i + 1)) for i in range(len(values)))


def gamma_to_g(gamma: Vector, d: int) -> CountVector:
    values = _entries(gamma)
    _check_half(values, d, "gamma")
    return CountVector('g_trunc', d, tuple(sum(b_coeff(d, i, j) * values[j] for j in range(i + 1))
                                           for i in range(len(values))))


def _forward_substitute(values: List[int], d: int, coeff) -> Tuple[int, ...]:
    gamma: List[int] = []
    for i, value in enumerate(values):
        gamma.append(value - sum(coeff(d, i, j) * gamma[j] for j in range(i)))
    return tuple(gamma)


def h_half_to_gamma(h_half: Vector, d: int) -> CountVector:
    values = _entries(h_half)
    _check_half(values, d, "h 前半")
    return CountVector('gamma', d, _forward_substitute(values, d, a_coeff))


def g_to_gamma(g: Vector, d: int) -> CountVector:
    values = _entries(g)
    _check_half(values, d, "g_trunc")
    return CountVector('gamma', d, _forward_substitute(values, d, b_coeff))


def h_from_gamma(gamma: Vector, d: int) -> CountVector:
    """h(t) = Σ γ_i t^i (1+t)^{d-2i}；奇数 d 时即 (1+t) 乘以 d-1 的情形"""
    values = _entries(gamma)
    _check_half(values, d, "gamma")
    return CountVector('h', d, tuple(sum(values[i] * binom(d - 2 * i, k - i) for i in range(len(values)))
                                     for k in range(d + 1)))


def edge_count_from_g(g: Vector, d: int) -> int:
    """球面的边数 f_1 = C(d+1, 2) + d g_1 + g_2"""
    values = _entries(g) + [0, 0, 0]
    return binom(d + 1, 2) + d * values[1] + values[2]


def gamma_via_chebyshev(h: Vector, d: int = None) -> CountVector:
    """
    用 Chebyshev 多项式反演求 gamma 向量

    偶数 d（m = d/2）：g(u) = h_m + 2 Σ_j h_{m-j} T_j(u/2)，γ(u) = u^m g(1/u - 2)
    奇数 d：先除以 (1+t)，再按 d-1 处理

    Raises:
        NotReciprocalError: h 不是回文的
        DivisibilityError: 奇数 d 时 (1+t) 不整除 h(t)
    """
    values = _entries(h)
    d = len(values) - 1 if d is None else d
    if len(values) != d + 1:
        raise ShapeError(f"h 向量长度应为 {d + 1}")
    if not dehn_sommerville_check(values):
        raise NotReciprocalError(f"h = {values} 不是回文的")
    t, u = symbols('t u')
    if d % 2 == 1:
        quotient, remainder = Poly(list(reversed(values)), t, domain=QQ).div(Poly(t + 1, t, domain=QQ))
        if not remainder.is_zero:
            raise DivisibilityError(f"(1+t) 不整除 h(t) = {values}")
        reduced = [int(c) for c in reversed(quotient.all_coeffs())]
        reduced += [0] * (d - len(reduced))
        gamma = gamma_via_chebyshev(reduced, d - 1)
        return CountVector('gamma', d, gamma.entries)
    m = d // 2
    g_u = values[m] + 2 * sum(values[m - j] * chebyshevt(j, u / 2) for j in range(1, m + 1))
    c = IntPolynomial.from_poly(Poly(expand(g_u), u, domain=QQ)).coefficients
    c = list(c) + [Fraction(0)] * (m + 1 - len(c))
    gamma_u = sum(sympy.Rational(c[k].numerator, c[k].denominator) * u ** (m - k) * (1 - 2 * u) ** k
                  for k in range(m + 1))
    coeffs = IntPolynomial.from_poly(Poly(expand(gamma_u), u, domain=QQ)).coefficients
    coeffs = list(coeffs) + [Fraction(0)] * (m + 1 - len(coeffs))
    return CountVector('gamma', d, tuple(int(x) for x in coeffs))


def coefficient_ratio_diagnostics(d: int) -> pd.DataFrame:
    """
    穷举 0 <= s < r <= d/2 上的 a_{r,s}/a_{r-1,s} 与 b_{r,s}/b_{r-1,s}，并检查
    1 + 2/d <= a 比值 <= d，1/3 < b 比值 < d + 1
    """
    if d < 2:
        raise RangeError("coefficient_ratio_diagnostics 要求 d >= 2")
    rows = []
    for r in range(1, d // 2 + 1):
        for s in range(r):
            a_ratio = Fraction(a_coeff(d, r, s), a_coeff(d, r - 1, s))
            b_ratio = Fraction(b_coeff(d, r, s), b_coeff(d, r - 1, s))
            rows.append({
                "r": r,
                "s": s,
                "a_ratio": a_ratio,
                "b_ratio": b_ratio,
                "a_ok": 1 + Fraction(2, d) <= a_ratio <= d,
                "b_ok": Fraction(1, 3) < b_ratio < d + 1,
            })
    return pd.DataFrame(rows, columns=["r", "s", "a_ratio", "b_ratio", "a_ok", "b_ok"])


@dataclass(frozen=True)
class GammaRatioReport:
    d: int
    ratio_ok: Tuple[bool, ...]
    gamma_lower_bounds: Tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(self.ratio_ok)


def gamma_ratio_restrictions(g: Vector, d: int) -> GammaRatioReport:
    """γ >= 0 时 3 g_{l+1} > g_l，且 γ_{l+1} >= g_{l+1} - (d+1) g_l"""
    values = _entries(g)
    ratio_ok = tuple(3 * values[l + 1] > values[l] for l in range(len(values) - 1))
    lower = tuple(max(0, values[l + 1] - (d + 1) * values[l]) for l in range(len(values) - 1))
    return GammaRatioReport(d, ratio_ok, lower)


def total_nonnegativity_check(matrix: TransformMatrix, max_size: int = 4) -> bool:
    """所有不超过 max_size 阶的子式非负"""
    m = matrix.to_sympy()
    n = m.rows
    for size in range(1, min(max_size, n) + 1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(n), size):
                if m.extract(list(rows), list(cols)).det(method='bareiss') < 0:
                    return False
    return True
