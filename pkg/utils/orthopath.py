"""
首一正交多项式族、带权 Motzkin 路径矩阵及其逆关系、单体/二聚体覆盖计数，
以及以路径权重推广的 gamma 向量的形式 h、g 向量
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import Matrix, Poly, Symbol, chebyshevt, expand, symbols

from config import get_guard
from utils.complex import SimplicialComplex, edges, f_vector, tchebyshev_subdivision
from utils.errors import NotReciprocalError, ParseError, PreconditionError, RangeError, ShapeError, SizeGuardError
from utils.macaulay import pseudopower
from utils.realize import gamma_extension_bound

logger = logging.getLogger("calc")

SCHEMES = {
    "chebyshev": "平移 Chebyshev（b=1，λ_1=1/2，其余 1/4）",
    "chebyshev_hat": "Chebyshev T̂（b=0）",
}


def _to_sympy(value):
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


@dataclass(frozen=True)
class WeightScheme:
    """
    三项递推 P_{m+1} = (x - b_m) P_m - λ_m P_{m-1} 的系数

    Args:
        b: b_0, b_1, ...
        lam: λ_1, λ_2, ...（lam[0] 是 λ_1）
    """
    b: Tuple
    lam: Tuple

    @classmethod
    def chebyshev(cls, N: int) -> "WeightScheme":
        return cls(b=tuple(Fraction(1) for _ in range(N + 1)),
                   lam=tuple(Fraction(1, 2) if m == 1 else Fraction(1, 4) for m in range(1, N + 1)))

    @classmethod
    def chebyshev_hat(cls, N: int) -> "WeightScheme":
        return cls(b=tuple(Fraction(0) for _ in range(N + 1)),
                   lam=tuple(Fraction(1, 2) if m == 1 else Fraction(1, 4) for m in range(1, N + 1)))

    @classmethod
    def symbolic(cls, N: int) -> "WeightScheme":
        return cls(b=tuple(symbols(f"b0:{N + 1}")), lam=tuple(symbols(f"lambda1:{N + 1}")))

    @classmethod
    def from_json(cls, data) -> "WeightScheme":
        """{"b": ["1", "1/2", ...], "lam": [...]}，有理数写成 "p/q" 字符串"""
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except ValueError as e:
                raise ParseError(f"权重文件不是合法 JSON: {e}")
        try:
            return cls(b=tuple(Fraction(str(x)) for x in data["b"]),
                       lam=tuple(Fraction(str(x)) for x in data["lam"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"权重方案无效: {e}")

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, sympy.Basic) for x in self.b + self.lam)

    @property
    def positive(self) -> bool:
        return not self.is_symbolic and all(x > 0 for x in self.b + self.lam)

    def b_at(self, m: int):
        return self.b[m]

    def lam_at(self, m: int):
        return self.lam[m - 1]

    def to_json(self) -> dict:
        return {"b": [str(x) for x in self.b], "lam": [str(x) for x in self.lam]}


def named_scheme(name: str, N: int) -> WeightScheme:
    if name == "chebyshev":
        return WeightScheme.chebyshev(N)
    if name == "chebyshev_hat":
        return WeightScheme.chebyshev_hat(N)
    raise RangeError(f"未知的权重方案 {name}，可用: {', '.join(SCHEMES)}")


def _require_weights(weights: WeightScheme, N: int):
    if len(weights.b) < N or len(weights.lam) < N - 1:
        raise ShapeError(f"N={N} 需要 b_0..b_{N - 1} 与 λ_1..λ_{N - 1}")


def _clean(value, symbolic: bool):
    return expand(value) if symbolic else Fraction(value)


def unitary_family(weights: WeightScheme, N: int) -> List[List]:
    """
    P_0, ..., P_N 的系数行（按升幂），P_m 首一且次数为 m
    """
    _require_weights(weights, N)
    symbolic = weights.is_symbolic
    rows = [[1] + [0] * N]
    if N >= 1:
        rows.append([-weights.b_at(0), 1] + [0] * (N - 1))
    for m in range(1, N):
        prev, cur = rows[m - 1], rows[m]
        nxt = [(cur[i - 1] if i else 0) - weights.b_at(m) * cur[i] - weights.lam_at(m) * prev[i]
               for i in range(N + 1)]
        rows.append(nxt)
    return [[_clean(c, symbolic) for c in row] for row in rows]


@dataclass(frozen=True)
class MuMatrix:
    """μ_{n,k}：行为路径长度 n，列为终点高度 k；x^n = Σ_k μ_{n,k} P_k"""
    N: int
    rows: Tuple[Tuple, ...]

    def at(self, n: int, k: int):
        if not 0 <= k <= n <= self.N:
            return 0
        return self.rows[n][k]

    def to_sympy(self) -> Matrix:
        return Matrix(self.N + 1, self.N + 1, lambda n, k: _to_sympy(self.at(n, k)))


def mu_matrix(weights: WeightScheme, N: int) -> MuMatrix:
    """μ_{n,k} = μ_{n-1,k-1} + b_k μ_{n-1,k} + λ_{k+1} μ_{n-1,k+1}"""
    _require_weights(weights, N)
    symbolic = weights.is_symbolic
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1]

        def at(k):
            return prev[k] if 0 <= k < len(prev) else 0

        row = []
        for k in range(n + 1):
            value = at(k - 1)
            if k < len(prev):
                value += weights.b_at(k) * at(k)
            if k + 1 < len(prev):
                value += weights.lam_at(k + 1) * at(k + 1)
            row.append(value)
        rows.append(row)
    return MuMatrix(N, tuple(tuple(_clean(v, symbolic) for v in row) for row in rows))


def mu_bruteforce(weights: WeightScheme, N: int, k: int):
    """
    逐条枚举从高度 0 到高度 k、长度 N 的 Motzkin 路径，求权重之和

    NE 步权重 1，高度 m 处的 E 步权重 b_m，从高度 m 出发的 SE 步权重 λ_m。
    """
    guard = get_guard('motzkin_max_n')
    if N > guard:
        raise SizeGuardError(f"N={N} 超过路径枚举上限 {guard}")
    if not 0 <= k <= N:
        return 0
    _require_weights(weights, N)

    def walk(level, remaining, weight):
        if remaining == 0:
            return weight if level == k else 0
        # 剩余步数不足以回到 k 时剪枝
        if abs(level - k) > remaining:
            return 0
        total = walk(level + 1, remaining - 1, weight)
        total += walk(level, remaining - 1, weight * weights.b_at(level))
        if level > 0:
            total += walk(level - 1, remaining - 1, weight * weights.lam_at(level))
        return total

    return _clean(walk(0, N, 1), weights.is_symbolic)


def inverse_pair_check(weights: WeightScheme, N: int) -> bool:
    """系数矩阵 P（行 k、列幂次）与 μ 矩阵（行 n、列 k）两个方向相乘都是单位阵"""
    family = unitary_family(weights, N)
    P = Matrix(N + 1, N + 1, lambda k, i: _to_sympy(family[k][i]))
    M = mu_matrix(weights, N).to_sympy()
    identity = sympy.eye(N + 1)
    left = (M * P).applyfunc(expand)
    right = (P * M).applyfunc(expand)
    return left == identity and right == identity


def mu_ratios(mu: MuMatrix) -> List[Dict]:
    """μ_{r,s} / μ_{r,s-1}，仅作标注"""
    rows = []
    for r in range(1, mu.N + 1):
        for s in range(1, r + 1):
            below = mu.at(r, s - 1)
            if below != 0:
                rows.append({"r": r, "s": s, "ratio": mu.at(r, s) / below})
    return rows


def mu_polynomial_check(N: int) -> bool:
    """不定权重下 μ_{n,k} 是总次数 n-k、系数非负的多项式"""
    if N < 1:
        raise RangeError("mu_polynomial_check 要求 N >= 1")
    weights = WeightScheme.symbolic(N)
    gens = weights.b + weights.lam
    mu = mu_matrix(weights, N)
    for n in range(N + 1):
        for k in range(n + 1):
            poly = Poly(mu.at(n, k), *gens)
            if poly.total_degree() != n - k or any(c < 0 for c in poly.coeffs()):
                logger.info(json.dumps({"event": "mu_polynomial_failed", "n": n, "k": k}, ensure_ascii=False))
                return False
    return True


@dataclass(frozen=True)
class CoverSpec:
    """
    区间上两两不交的单体/二聚体覆盖

    Args:
        length: 区间 [0, length-1]
        missing: 未覆盖的位置数
        forbid_leading_dimer: 禁止二聚体 {0, 1}
        excise_leading_pair: 去掉 {0, 1}，只在 [2, length-1] 上覆盖
        colors: 单体的颜色数，0 表示不允许单体
        signed: 每块贡献因子 -1
    """
    length: int
    missing: int
    forbid_leading_dimer: bool = False
    excise_leading_pair: bool = False
    colors: int = 1
    signed: bool = True


def cover_sum(spec: CoverSpec, weights: Optional[WeightScheme] = None):
    """
    覆盖求和

    给定权重时，位置 p 的单体权重为 -b_p，二聚体 {p, p+1} 权重为 -λ_{p+1}；
    否则每个覆盖计 (-1)^{块数}·colors^{单体数}（signed=False 时不带符号）。
    """
    guard = get_guard('cover_max_m')
    if spec.length > guard:
        raise SizeGuardError(f"区间长度 {spec.length} 超过覆盖枚举上限 {guard}")
    start = 2 if spec.excise_leading_pair else 0
    end = spec.length - 1
    if spec.missing < 0:
        return 0
    sign = -1 if spec.signed else 1

    if weights is not None:
        def monomer(p):
            return -weights.b_at(p)

        def dimer(p):
            return -weights.lam_at(p + 1)
    else:
        def monomer(p):
            return sign * spec.colors

        def dimer(p):
            return sign

    @lru_cache(maxsize=None)
    def total(p, left):
        if p > end:
            return 1 if left == 0 else 0
        value = total(p + 1, left - 1) if left > 0 else 0
        if weights is not None or spec.colors:
            value += monomer(p) * total(p + 1, left)
        if p + 1 <= end and not (spec.forbid_leading_dimer and p == 0):
            value += dimer(p) * total(p + 2, left)
        return value

    if start > end:
        return 1 if spec.missing == 0 else 0
    result = total(start, spec.missing)
    if weights is not None:
        return _clean(result, weights.is_symbolic)
    return result


def coefficient_via_covers(weights: WeightScheme, m: int, r: int):
    """P_m 的 x^r 系数 = [0, m-1] 上恰好 r 个位置未覆盖的带权覆盖之和"""
    return cover_sum(CoverSpec(length=m, missing=r), weights)


@dataclass(frozen=True)
class DimerIdentity:
    m: int
    ell: int
    A: int
    B: int
    D: int
    lhs: Fraction
    rhs: Fraction
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def dimer_identity_check(m: int, ell: int) -> DimerIdentity:
    """
    2^m [x^ℓ] T̂_m = 2^ℓ D_{m,ℓ}，D = (-1)^{(m-ℓ)/2} (A + 2B)

    A 为 [0, m-1] 上不用 {0,1}、留 ℓ 个空位的二聚体覆盖数，B 为 [2, m-1] 上的同类覆盖数。
    """
    if m < 2 or not 0 <= ell <= m:
        raise RangeError("dimer_identity_check 要求 m >= 2 且 0 <= ℓ <= m")
    coefficient = unitary_family(WeightScheme.chebyshev_hat(m), m)[m][ell]
    if (m - ell) % 2:
        return DimerIdentity(m, ell, 0, 0, 0, 2 ** m * coefficient, Fraction(0), note="奇偶不同，两边均为 0")
    A = cover_sum(CoverSpec(m, ell, forbid_leading_dimer=True, colors=0, signed=False))
    B = cover_sum(CoverSpec(m, ell, excise_leading_pair=True, colors=0, signed=False))
    D = (-1) ** ((m - ell) // 2) * (A + 2 * B)
    return DimerIdentity(m, ell, A, B, D, 2 ** m * coefficient, Fraction(2 ** ell * D))


def gamma_via_covers(h: Sequence[int]) -> Tuple[int, ...]:
    """
    偶数 d：γ_ℓ = Σ_j h_{d/2-j} (A_j - 2 B_j)

    A_j 为 [0, j-1] 上不用 {0,1} 的带符号覆盖（单体 2 色），B_j 为 [2, j-1] 上的同类覆盖（j >= 2），
    未覆盖位置数均为 d/2 - ℓ。
    """
    h = [int(x) for x in h]
    d = len(h) - 1
    if d % 2:
        raise RangeError("gamma_via_covers 要求 d 为偶数")
    if h != h[::-1]:
        raise NotReciprocalError(f"h = {h} 不是回文的")
    m = d // 2
    gamma = []
    for ell in range(m + 1):
        r = m - ell
        value = 0
        for j in range(m + 1):
            A = cover_sum(CoverSpec(j, r, forbid_leading_dimer=True, colors=2))
            B = cover_sum(CoverSpec(j, r, excise_leading_pair=True, colors=2)) if j >= 2 else 0
            value += h[m - j] * (A - 2 * B)
        gamma.append(value)
    return tuple(gamma)


@dataclass(frozen=True)
class FPolyIdentity:
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return expand(self.lhs - self.rhs) == 0


def f_polynomial(K: SimplicialComplex, var: Symbol):
    """f_S(t) = Σ_{i=0}^{d} f_{i-1} t^i，f_{-1} = 1"""
    full = (1,) + f_vector(K).entries
    return sum(f * var ** i for i, f in enumerate(full))


def tcheb_fpoly_identity_check(K: SimplicialComplex) -> FPolyIdentity:
    """把 F_K(x) = f_K((x-1)/2) 中的 x^m 换成 T_m(x)，与 F_{T(K)} 比较"""
    if not edges(K):
        raise PreconditionError("复形没有边")
    x = Symbol('x')
    F_K = Poly(expand(f_polynomial(K, (x - 1) / 2)), x)
    lhs = sum(c * chebyshevt(exp[0], x) for exp, c in F_K.terms())
    rhs = f_polynomial(tchebyshev_subdivision(K), (x - 1) / 2)
    return FPolyIdentity(expand(lhs), expand(rhs))


# 推广的 gamma 向量
def gamma_to_z(gamma: Sequence[int]) -> Tuple[int, ...]:
    """z_j = 2^j γ_{N-j}，N = len(γ) - 1"""
    gamma = [int(x) for x in gamma]
    N = len(gamma) - 1
    return tuple(2 ** j * gamma[N - j] for j in range(N + 1))


def z_to_gamma(z: Sequence) -> Tuple:
    z = [Fraction(x) for x in z]
    N = len(z) - 1
    values = [z[N - i] / 2 ** (N - i) for i in range(N + 1)]
    return tuple(int(v) if v.denominator == 1 else v for v in values)


@dataclass(frozen=True)
class FormalVectors:
    N: int
    q: Tuple
    h: Tuple
    g: Tuple


def _q_values(z: Sequence, mu: MuMatrix) -> List[Fraction]:
    N = len(z) - 1
    return [sum(Fraction(z[m]) * mu.at(m, ell) for m in range(ell, N + 1)) for ell in range(N + 1)]


def formal_h(z: Sequence, weights: WeightScheme) -> FormalVectors:
    """
    q_ℓ = Σ_{m>=ℓ} z_m μ_{m,ℓ}，h_k = 2^{-(N-k)} q_{N-k}，g_k = 2^{-(N-k+1)} (2 q_{N-k} - q_{N-k+1})
    """
    z = [Fraction(x) for x in z]
    N = len(z) - 1
    q = _q_values(z, mu_matrix(weights, N))
    q_ext = q + [Fraction(0)]
    h = tuple(q[N - k] / 2 ** (N - k) for k in range(N + 1))
    g = tuple((2 * q_ext[N - k] - q_ext[N - k + 1]) / 2 ** (N - k + 1) for k in range(N + 1))
    return FormalVectors(N, tuple(q), h, g)


@dataclass
class UnimodalityReport:
    rows: List[Dict]
    sufficient_condition: bool

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)


def formal_unimodality_check(z: Sequence, weights: WeightScheme) -> UnimodalityReport:
    """z_{ℓ-1} >= -½ Σ_{m>=ℓ} (2μ_{m,ℓ-1} - μ_{m,ℓ}) z_m，1 <= ℓ <= N"""
    z = [Fraction(x) for x in z]
    if any(v < 0 for v in z):
        raise RangeError("z 的各项必须非负")
    N = len(z) - 1
    mu = mu_matrix(weights, N)
    rows = []
    for ell in range(1, N + 1):
        threshold = -sum((2 * mu.at(m, ell - 1) - mu.at(m, ell)) * z[m] for m in range(ell, N + 1)) / 2
        rows.append({"ell": ell, "z": z[ell - 1], "threshold": threshold, "ok": z[ell - 1] >= threshold})
    sufficient = all(2 * mu.at(r - 1, s) <= mu.at(r, s) for r in range(1, N + 1) for s in range(N + 1))
    return UnimodalityReport(rows, sufficient)


@dataclass(frozen=True)
class FormalBound:
    k: int
    mode: str
    upper: Optional[Fraction]
    slack: Optional[Fraction]
    unbounded: bool = False
    reason: str = ""


def formal_extension_bound(tail: Sequence, N: int, weights: WeightScheme, mode: str = "sphere") -> FormalBound:
    """
    已知 (z_k, ..., z_N)，求 z_{k-1} 的上界

    sphere: z_{k-1} <= ½(2^k g^<N-k> - Σ_{j>=k} (2μ_{j,k-1} - μ_{j,k}) z_j)，g = 2^{-(k+1)}(2q_k - q_{k+1})
    cm:     z_{k-1} <= 2^{k-1} h^<N-k> - Σ_{j>=k} μ_{j,k-1} z_j，h = 2^{-k} q_k
    """
    if mode not in ("sphere", "cm"):
        raise RangeError(f"未知的模式 {mode}")
    tail = [Fraction(x) for x in tail]
    if not tail or len(tail) > N:
        raise RangeError(f"已知段长度应在 [1, {N}] 内")
    if tail[-1] != 2 ** N:
        raise RangeError(f"z_N 必须等于 2^N = {2 ** N}")
    if any(v < 0 for v in tail):
        raise RangeError("z 的各项必须非负")
    k = N - len(tail) + 1
    if k == N:
        return FormalBound(k, mode, None, None, unbounded=True)
    z = [Fraction(0)] * k + tail
    mu = mu_matrix(weights, N)
    q = _q_values(z, mu) + [Fraction(0)]
    if mode == "sphere":
        base = (2 * q[k] - q[k + 1]) / 2 ** (k + 1)
        linear = sum((2 * mu.at(j, k - 1) - mu.at(j, k)) * z[j] for j in range(k, N + 1))
    else:
        base = q[k] / 2 ** k
        linear = sum(mu.at(j, k - 1) * z[j] for j in range(k, N + 1))
    if base.denominator != 1 or base < 0:
        return FormalBound(k, mode, None, None, reason="non-integral" if base.denominator != 1 else "negative")
    power = pseudopower(int(base), N - k)
    if mode == "sphere":
        slack = (2 ** k * power - linear) / 2
    else:
        slack = 2 ** (k - 1) * power - linear
    return FormalBound(k, mode, slack if slack >= 0 else None, slack)


def realize_cross_check(gamma_prefix: Sequence[int], d: int, mode: str = "sphere") -> Tuple[Optional[Fraction], Optional[int]]:
    """Chebyshev 权重下形式上界与 realize 上界的对照：U_z = 2^{k-1} · U_γ"""
    N = d // 2
    gamma = [int(x) for x in gamma_prefix]
    tail = [2 ** (N - i) * gamma[i] for i in reversed(range(len(gamma)))]
    formal = formal_extension_bound(tail, N, WeightScheme.chebyshev(N), mode)
    plain = gamma_extension_bound(gamma, d, mode)
    return formal.upper, plain.upper
