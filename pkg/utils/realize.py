"""
非负 gamma 向量的可实现性：逐项上界、贪心延拓与闭式多项式界
"""
import json
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config import get_diagnostics_config, get_free_cap_factor
from utils.errors import NormalizationError, ParseError, RangeError
from utils.macaulay import CheckResult, check_cm_h, check_f_vector, check_sphere_g, pseudopower
from utils.vectors import a_coeff, b_coeff, binom, g_ext_at, gamma_to_g, h_from_gamma

logger = logging.getLogger("calc")

MODES = {
    "sphere": "单纯球面（g向量 M 条件）",
    "cm": "Cohen–Macaulay（h向量 M 条件）",
    "fvector": "f向量（γ_{i+1} <= γ_i^<i>）",
}


@dataclass(frozen=True)
class ExtensionBound:
    index: int
    mode: str
    upper: Optional[int]
    slack: Optional[int]
    unbounded: bool = False

    @property
    def feasible(self) -> bool:
        return self.unbounded or self.upper is not None


@dataclass(frozen=True)
class Strategy:
    kind: str
    rho: Fraction = Fraction(1)
    values: Tuple[int, ...] = ()
    seed: Optional[int] = None


@dataclass
class ExtensionResult:
    d: int
    mode: str
    gamma: Tuple[int, ...]
    steps: List[Dict] = field(default_factory=list)
    infeasible_index: Optional[int] = None

    @property
    def complete(self) -> bool:
        return self.infeasible_index is None and len(self.gamma) == self.d // 2 + 1

    def h(self):
        return h_from_gamma(self.gamma, self.d)

    def verify(self) -> CheckResult:
        return mode_check(self.gamma, self.d, self.mode)


def _validate_prefix(prefix: Sequence[int], d: int, mode: str) -> List[int]:
    if mode not in MODES:
        raise RangeError(f"未知的模式 {mode}，可用: {', '.join(MODES)}")
    values = [int(x) for x in prefix]
    if not values or values[0] != 1:
        raise NormalizationError("gamma_0 必须为 1")
    if any(v < 0 for v in values):
        raise RangeError("gamma 前缀的各项必须非负")
    if not 1 <= len(values) <= d // 2:
        raise RangeError(f"待求的下标 {len(values)} 超出 [1, {d // 2}]")
    return values


def gamma_extension_bound(prefix: Sequence[int], d: int, mode: str = "sphere") -> ExtensionBound:
    """
    已知 γ_0..γ_i，求 γ_{i+1} 的上界

    sphere: (Σ_j b_{i,j} γ_j)^<i> - Σ_j b_{i+1,j} γ_j
    cm:     同上，换成 a 系数
    fvector: γ_i^<i>
    i = 0 时没有 M 不等式约束，返回 unbounded。
    """
    values = _validate_prefix(prefix, d, mode)
    i = len(values) - 1
    if i == 0:
        return ExtensionBound(index=1, mode=mode, upper=None, slack=None, unbounded=True)
    if mode == "fvector":
        upper = pseudopower(values[i], i)
        return ExtensionBound(index=i + 1, mode=mode, upper=upper, slack=upper)
    coeff = b_coeff if mode == "sphere" else a_coeff
    base = sum(coeff(d, i, j) * values[j] for j in range(i + 1))
    linear = sum(coeff(d, i + 1, j) * values[j] for j in range(i + 1))
    slack = pseudopower(base, i) - linear
    return ExtensionBound(index=i + 1, mode=mode, upper=slack if slack >= 0 else None, slack=slack)


def parse_strategy(text: str, seed: Optional[int] = None) -> Strategy:
    """
    解析延拓策略："max"、"fraction:0.5"、"given:0,1,4"、"random"
    """
    kind, _, arg = text.partition(':')
    kind = kind.strip().lower()
    if kind == "max":
        return Strategy("max")
    if kind == "fraction":
        try:
            rho = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"无法解析比例 '{arg}'", position=len(kind) + 1)
        if not 0 < rho <= 1:
            raise RangeError("比例必须在 (0, 1] 内")
        return Strategy("fraction", rho=rho)
    if kind == "given":
        try:
            return Strategy("given", values=tuple(int(x) for x in arg.split(',') if x.strip()))
        except ValueError:
            raise ParseError(f"无法解析给定序列 '{arg}'", position=len(kind) + 1)
    if kind == "random":
        return Strategy("random", seed=seed)
    raise ParseError(f"未知的策略 '{text}'", position=0)


def _choose(strategy: Strategy, cap: int, step: int, rng: random.Random) -> int:
    if strategy.kind == "max":
        return cap
    if strategy.kind == "fraction":
        return math.floor(strategy.rho * cap)
    if strategy.kind == "random":
        return rng.randint(0, cap)
    return strategy.values[step]


def extend_gamma(prefix: Sequence[int], d: int, mode: str = "sphere", strategy: Strategy = Strategy("max")) -> ExtensionResult:
    """
    逐项延拓 gamma 向量到长度 d/2 + 1

    有上界时取 floor(策略(上界))；第一步无约束时以 free_cap_factor * d 作为上界。
    给定序列超过上界或上界不存在时停止，并记录第一个不可行的下标。

    Raises:
        RangeError: given 策略的序列长度不等于剩余下标数
    """
    gamma = [int(x) for x in prefix]
    remaining = d // 2 + 1 - len(gamma)
    if strategy.kind == "given" and len(strategy.values) != remaining:
        raise RangeError(f"给定序列应有 {remaining} 项（γ_{len(gamma)}..γ_{d // 2}），实际为 {len(strategy.values)}")
    result = ExtensionResult(d=d, mode=mode, gamma=tuple(gamma))
    rng = random.Random(strategy.seed)
    cap_free = get_free_cap_factor() * d
    step = 0
    while len(gamma) < d // 2 + 1:
        bound = gamma_extension_bound(gamma, d, mode)
        cap = cap_free if bound.unbounded else bound.upper
        if not bound.feasible:
            result.infeasible_index = bound.index
            result.steps.append({"index": bound.index, "mode": mode, "upper": None, "chosen": None, "slack": bound.slack})
            break
        chosen = _choose(strategy, cap, step, rng)
        if strategy.kind == "given" and not bound.unbounded and chosen > bound.upper:
            result.infeasible_index = bound.index
            result.steps.append({"index": bound.index, "mode": mode, "upper": bound.upper, "chosen": chosen,
                                 "slack": bound.upper - chosen})
            break
        gamma.append(chosen)
        result.steps.append({"index": bound.index, "mode": mode, "upper": bound.upper, "chosen": chosen,
                             "slack": bound.slack})
        step += 1
    result.gamma = tuple(gamma)
    if result.infeasible_index is not None:
        logger.info(json.dumps({"event": "extension_infeasible", "d": d, "mode": mode,
                                "index": result.infeasible_index, "prefix": [str(x) for x in gamma]},
                               ensure_ascii=False))
    return result


def mode_check(gamma: Sequence[int], d: int, mode: str) -> CheckResult:
    """把完整的 gamma 向量转换后用对应模式的检验判定"""
    if mode == "fvector":
        return check_f_vector(list(gamma)[1:])
    h = h_from_gamma(gamma, d).entries
    return check_sphere_g(h) if mode == "sphere" else check_cm_h(h)


@dataclass(frozen=True)
class ClosedBounds:
    q: int
    d: int
    g_1: int
    h_prev: int
    initial_bound: Fraction
    recursive_gamma_bound: Fraction
    closed_g_bound: Fraction
    closed_gamma_bound: Fraction
    necessary_ok: bool
    initial_ok: Optional[bool] = None
    recursive_ok: Optional[bool] = None


def closed_gamma_bounds(prefix: Sequence[int], d: int, q: int) -> ClosedBounds:
    """
    q g_q <= g_1 h_{q-1}，由此得到的 γ_q 递推上界，以及闭式界
    g_q <= g_1 C(g_1+q-1, q-1) / q

    Args:
        prefix: γ_0, γ_1, ...，长度至少为 max(q, 2)；若包含 γ_q 则一并给出判定
        d: 维数参数
        q: 1 <= q <= d/2
    """
    values = [int(x) for x in prefix]
    if not 1 <= q <= d // 2:
        raise RangeError(f"q 应在 [1, {d // 2}] 内")
    if len(values) < max(q, 2):
        raise RangeError(f"gamma 前缀长度至少为 {max(q, 2)}")
    size = min(len(values), d // 2 + 1)
    g = [sum(b_coeff(d, i, j) * values[j] for j in range(i + 1)) for i in range(size)]
    g_1 = g[1]
    h_prev = sum(g[:q])
    initial = Fraction(g_1 * h_prev, q)
    recursive = sum((Fraction(values[1] + d - 1, q) * sum(b_coeff(d, i, j) for i in range(j, q))
                     - b_coeff(d, q, j)) * values[j] for j in range(q))
    closed_g = Fraction(g_1 * binom(g_1 + q - 1, q - 1), q)
    closed_gamma = closed_g - sum(b_coeff(d, q, j) * values[j] for j in range(q))
    initial_ok = recursive_ok = None
    if len(values) > q:
        initial_ok = q * g[q] <= g_1 * h_prev
        recursive_ok = values[q] <= recursive
    return ClosedBounds(q=q, d=d, g_1=g_1, h_prev=h_prev, initial_bound=initial,
                        recursive_gamma_bound=recursive, closed_g_bound=closed_g,
                        closed_gamma_bound=closed_gamma, necessary_ok=closed_gamma >= 0,
                        initial_ok=initial_ok, recursive_ok=recursive_ok)


@dataclass
class OrderReport:
    d: int
    g: Tuple[int, ...]
    rows: List[Dict]
    gamma_impossible: bool
    growth: str
    interlacing_nontrivial: bool
    refined_nontrivial: Optional[bool]


def order_diagnostics(values: Sequence[int], d: int, kind: str = "g") -> OrderReport:
    """
    g_i 与下界 b_{i,0} = C(d,i) - C(d,i-1) 比较、g_i <= g_1^i、g_1 相对 d 的增长分类，
    以及交错界非平凡所需的 g_1 < d + margin

    Args:
        values: 截断 g 向量，或 kind="h" 时的 h 向量（完整或前半）
    """
    if kind == "h":
        g = tuple(g_ext_at(list(values), k) for k in range(min(len(values), d // 2 + 1)))
    else:
        g = tuple(int(x) for x in values)
    cfg = get_diagnostics_config()
    rows = []
    for i, g_i in enumerate(g):
        lower = b_coeff(d, i, 0)
        threshold = Fraction(d + 1, i + 1) ** i * math.factorial(i)
        rows.append({
            "i": i,
            "g": g_i,
            "lower": lower,
            "below_lower": g_i < lower,
            "power_ok": len(g) < 2 or g_i <= g[1] ** i,
            "threshold": threshold,
            "g_over_d_pow": Fraction(g_i, d ** i) if d else None,
        })
    g_1 = g[1] if len(g) > 1 else 0
    growth = "linear" if g_1 <= Fraction(cfg['linear_factor']) * d else "superlinear"
    refined = g[2] < (d * d - 2) - (d - 3) * g_1 if len(g) > 2 else None
    return OrderReport(d=d, g=g, rows=rows, gamma_impossible=any(r["below_lower"] for r in rows),
                       growth=growth, interlacing_nontrivial=g_1 < d + cfg['nontrivial_margin'],
                       refined_nontrivial=refined)


def synthetic_g(d: int, gamma_1: int) -> Tuple[int, ...]:
    """γ = (1, γ_1, 0, ..., 0) 对应的截断 g 向量"""
    gamma = [1, gamma_1] + [0] * (d // 2 - 1)
    return gamma_to_g(gamma[:d // 2 + 1], d).entries
