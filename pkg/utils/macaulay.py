"""
Macaulay 表示、伪幂 a^<k> 及其上下界，以及三种可实现性检验
"""
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from utils.errors import RangeError
from utils.interval import decide_le, frac_pow, span, to_iv, at_prec
from utils.vectors import dehn_sommerville_check, g_ext_at

logger = logging.getLogger("calc")

CHECK_FUNCTIONS = {
    "check_f_vector": "f向量（Kruskal–Katona）",
    "check_cm_h": "Cohen–Macaulay h向量",
    "check_sphere_g": "单纯球面 g向量",
}

# 求根时二分的相对精度
ROOT_TOLERANCE = Fraction(1, 10 ** 12)
MAX_REFINE_STEPS = 400


@dataclass(frozen=True)
class MacaulayRep:
    a: int
    k: int
    terms: Tuple[Tuple[int, int], ...]

    @property
    def value(self) -> int:
        return sum(math.comb(n, i) for n, i in self.terms)

    def to_json(self) -> dict:
        return {"a": str(self.a), "k": self.k, "terms": [[str(n), i] for n, i in self.terms],
                "pseudopower": str(pseudopower(self.a, self.k))}


@dataclass(frozen=True)
class BinomialRoot:
    """C(x, k) = a 在 [k-1, ∞) 上的根，x ∈ [lower, upper]"""
    a: int
    k: int
    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def interval(self):
        return span(self.lower, self.upper)

    @property
    def value(self) -> float:
        return float((self.lower + self.upper) / 2)


@dataclass(frozen=True)
class PseudopowerBounds:
    a: int
    k: int
    lower: int
    pseudopower: int
    x: BinomialRoot
    upper_real: object
    power_upper: object
    asymptotic: object
    C_k: object
    chain_holds: Optional[bool]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failing_index: Optional[int] = None
    reason: str = ""
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failing_index": self.failing_index, "reason": self.reason, "notes": list(self.notes)}


def _largest_top(a: int, i: int) -> int:
    """最大的 q 使 C(q, i) <= a"""
    lo, hi = i - 1, max(i, 1)
    while math.comb(hi, i) <= a:
        lo, hi = hi, hi * 2
    # 不变式：C(lo, i) <= a < C(hi, i)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if math.comb(mid, i) <= a:
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=65536)
def macaulay_rep(a: int, k: int) -> MacaulayRep:
    """
    a = C(n_k, k) + C(n_{k-1}, k-1) + ... + C(n_j, j)，n_k > ... > n_j >= j >= 1

    Raises:
        RangeError: a <= 0 或 k <= 0
    """
    if a < 1 or k < 1:
        raise RangeError(f"macaulay_rep 要求 a >= 1 且 k >= 1，实际 a={a}, k={k}")
    terms = []
    rest, i = a, k
    while rest > 0:
        n = _largest_top(rest, i)
        terms.append((n, i))
        rest -= math.comb(n, i)
        i -= 1
    return MacaulayRep(a, k, tuple(terms))


@lru_cache(maxsize=65536)
def pseudopower(a: int, k: int) -> int:
    """a^<k>：每一项 C(n_i, i) 换成 C(n_i + 1, i + 1)；0^<k> = 0"""
    if k < 1 or a < 0:
        raise RangeError(f"pseudopower 要求 a >= 0 且 k >= 1，实际 a={a}, k={k}")
    if a == 0:
        return 0
    return sum(math.comb(n + 1, i + 1) for n, i in macaulay_rep(a, k).terms)


def _binom_frac(t: Fraction, k: int) -> Fraction:
    prod = Fraction(1)
    for i in range(k):
        prod *= t - i
    return prod / math.factorial(k)


def _root_bracket(a: int, k: int):
    """逐步二分，产生越来越窄的根区间 (lo, hi)；精确根时 lo == hi"""
    n = macaulay_rep(a, k).terms[0][0]
    if math.comb(n, k) == a:
        yield Fraction(n), Fraction(n)
        return
    lo, hi = Fraction(n), Fraction(n + 1)
    while True:
        yield lo, hi
        mid = (lo + hi) / 2
        value = _binom_frac(mid, k)
        if value == a:
            yield mid, mid
            return
        if value < a:
            lo = mid
        else:
            hi = mid


def binomial_root(a: int, k: int, tolerance: Fraction = ROOT_TOLERANCE) -> BinomialRoot:
    """二分求 C(x, k) = a 的实根，n_k <= x < n_k + 1"""
    if a < 1 or k < 1:
        raise RangeError(f"binomial_root 要求 a >= 1 且 k >= 1")
    for lo, hi in _root_bracket(a, k):
        if hi - lo <= tolerance * lo:
            return BinomialRoot(a, k, lo, hi)


def sandwich_verdict(a: int, k: int) -> Optional[bool]:
    """
    精确判定 C(n_k+1, k+1) <= a^<k> <= C(x+1, k+1) <= a^{(k+1)/k}

    利用 C(x+1, k+1) = a (x+1) / (k+1)：
    第二个不等式等价于 x >= t = (k+1) a^<k> / a - 1，第三个等价于 (x+1)^k <= (k+1)^k a。
    """
    rep = macaulay_rep(a, k)
    n_k = rep.terms[0][0]
    pp = pseudopower(a, k)
    if math.comb(n_k + 1, k + 1) > pp:
        return False
    t = Fraction((k + 1) * pp, a) - 1
    if t > k - 1 and _binom_frac(t, k) > a:
        return False
    bound = (k + 1) ** k * a
    for step, (lo, hi) in enumerate(_root_bracket(a, k)):
        if (hi + 1) ** k <= bound:
            return True
        if (lo + 1) ** k > bound:
            return False
        if step >= MAX_REFINE_STEPS:
            return None
    return None


def pseudopower_bounds(a: int, k: int) -> PseudopowerBounds:
    """伪幂的上下界、渐近常数 C_k = (k!)^{1/k}/(k+1) 与渐近值 C_k a^{(k+1)/k}"""
    if a < 1 or k < 1:
        raise RangeError("pseudopower_bounds 要求 a >= 1 且 k >= 1")
    n_k = macaulay_rep(a, k).terms[0][0]
    root = binomial_root(a, k)
    exponent = Fraction(k + 1, k)

    def build():
        upper_real = to_iv(a) * (root.interval + 1) / (k + 1)
        power_upper = frac_pow(a, exponent)
        c_k = frac_pow(math.factorial(k), Fraction(1, k)) / (k + 1)
        return upper_real, power_upper, c_k * power_upper, c_k

    upper_real, power_upper, asymptotic, c_k = at_prec(build)
    return PseudopowerBounds(a=a, k=k, lower=math.comb(n_k + 1, k + 1), pseudopower=pseudopower(a, k),
                             x=root, upper_real=upper_real, power_upper=power_upper,
                             asymptotic=asymptotic, C_k=c_k, chain_holds=sandwich_verdict(a, k))


def asymptotic_ratio(a: int, k: int):
    """a^<k> / (C_k a^{(k+1)/k}) 的区间，a → ∞ 时趋于 1"""
    def build():
        c_k = frac_pow(math.factorial(k), Fraction(1, k)) / (k + 1)
        return to_iv(pseudopower(a, k)) / (c_k * frac_pow(a, Fraction(k + 1, k)))
    return at_prec(build)


def pseudopower_scaling_ratio(a: int, beta: int, k: int):
    """(βa)^<k> / (β^{(k+1)/k} a^<k>) 的区间"""
    def build():
        return to_iv(pseudopower(beta * a, k)) / (frac_pow(beta, Fraction(k + 1, k)) * pseudopower(a, k))
    return at_prec(build)


def power_sum_check(values: Sequence, p) -> Optional[bool]:
    """Σ a_i^p <= (Σ a_i)^p，a_i >= 0，p >= 1；三值判定"""
    values = [Fraction(v) for v in values]
    p = Fraction(p)
    if p < 1 or any(v < 0 for v in values):
        raise RangeError("power_sum_check 要求 p >= 1 且 a_i >= 0")
    nonzero = [v for v in values if v != 0]
    if len(nonzero) <= 1 or p == 1:
        return True
    return decide_le(lambda: (sum(frac_pow(v, p) for v in nonzero), frac_pow(sum(nonzero), p)))


def _fail(name: str, index: int, reason: str, notes=()) -> CheckResult:
    logger.info(json.dumps({"check": name, "ok": False, "failing_index": index, "reason": reason}, ensure_ascii=False))
    return CheckResult(False, index, reason, tuple(notes))


def check_f_vector(f: Sequence[int]) -> CheckResult:
    """0 < f_{i+1} <= f_i^<i+1>；末尾的 0 去掉并记录，中间的 0 视为失败"""
    values = [int(x) for x in f]
    notes = []
    while values and values[-1] == 0:
        values.pop()
    if len(values) < len(f):
        notes.append(f"去掉末尾 {len(f) - len(values)} 个 0")
    for i, v in enumerate(values):
        if v <= 0:
            return _fail("check_f_vector", i, f"f_{i} = {v} 不是正数", notes)
    for i in range(len(values) - 1):
        bound = pseudopower(values[i], i + 1)
        if values[i + 1] > bound:
            return _fail("check_f_vector", i + 1, f"f_{i + 1} = {values[i + 1]} > f_{i}^<{i + 1}> = {bound}", notes)
    return CheckResult(True, notes=tuple(notes))


def check_cm_h(h: Sequence[int]) -> CheckResult:
    """h_0 = 1 且 0 <= h_{i+1} <= h_i^<i>（i >= 1）"""
    values = [int(x) for x in h]
    if not values or values[0] != 1:
        return _fail("check_cm_h", 0, "h_0 != 1")
    for i, v in enumerate(values):
        if v < 0:
            return _fail("check_cm_h", i, f"h_{i} = {v} 为负")
    for i in range(1, len(values) - 1):
        bound = pseudopower(values[i], i)
        if values[i + 1] > bound:
            return _fail("check_cm_h", i + 1, f"h_{i + 1} = {values[i + 1]} > h_{i}^<{i}> = {bound}")
    return CheckResult(True)


def check_sphere_g(h: Sequence[int]) -> CheckResult:
    """Dehn–Sommerville、h_0 = 1，以及截断 g 向量的 M 条件"""
    values = [int(x) for x in h]
    if not dehn_sommerville_check(values):
        index = next(i for i in range(len(values)) if values[i] != values[-1 - i])
        return _fail("check_sphere_g", index, "h 不是回文的")
    if values[0] != 1:
        return _fail("check_sphere_g", 0, "h_0 != 1")
    d = len(values) - 1
    g = [g_ext_at(values, k) for k in range(d // 2 + 1)]
    for i, v in enumerate(g):
        if v < 0:
            return _fail("check_sphere_g", i, f"g_{i} = {v} 为负")
    for i in range(1, len(g) - 1):
        bound = pseudopower(g[i], i)
        if g[i + 1] > bound:
            return _fail("check_sphere_g", i + 1, f"g_{i + 1} = {g[i + 1]} > g_{i}^<{i}> = {bound}")
    return CheckResult(True)


def avgh_bound_check(h: Sequence[int], q: int) -> bool:
    """q h_q <= h_1 (h_0 + ... + h_{q-1})"""
    values = [int(x) for x in h]
    if not 1 <= q < len(values):
        raise RangeError(f"avgh_bound_check 要求 1 <= q < {len(values)}")
    return q * values[q] <= values[1] * sum(values[:q])


def g_power_bound_check(g: Sequence[int]) -> CheckResult:
    """g_l <= g_1^l"""
    values = [int(x) for x in g]
    if len(values) < 2:
        return CheckResult(True)
    for l, v in enumerate(values):
        if v > values[1] ** l:
            return _fail("g_power_bound_check", l, f"g_{l} = {v} > g_1^{l}")
    return CheckResult(True)
