"""
顶点与边的局部-整体恒等式、边收缩的 h 向量公式，以及链接条件导出的不等式和诊断
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from mpmath import iv

from config import get_diagnostics_config
from utils.complex import (Face, SimplicialComplex, _require_edge, check_link_condition, contract_edge, edges,
                           f_vector, h_vector, link, link_condition_at, vertices)
from utils.errors import PreconditionError, RangeError
from utils.interval import at_prec, decide_le, exact_le_pow, frac_pow, to_iv
from utils.macaulay import pseudopower
from utils.report import to_jsonable
from utils.vectors import binom, g_ext_at, h_to_f

logger = logging.getLogger("calc")

# 前提状态
VERIFIED = "verified"
ASSUMED = "assumed"
VIOLATED = "violated"


@dataclass(frozen=True)
class LocalGlobal:
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class ContractionCheck:
    edge: Face
    direct: Tuple[int, ...]
    formula: Tuple[int, ...]
    f_direct: Tuple[int, ...]
    f_formula: Tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.direct == self.formula and self.f_direct == self.f_formula


@lru_cache(maxsize=64)
def _vertex_link_h(K: SimplicialComplex) -> Tuple[Tuple[int, ...], ...]:
    return tuple(h_vector(link(K, (v,)), K.d - 1).entries for v in vertices(K))


@lru_cache(maxsize=64)
def _edge_link_h(K: SimplicialComplex) -> Tuple[Tuple[Face, Tuple[int, ...]], ...]:
    return tuple((e, h_vector(link(K, e), K.d - 2).entries) for e in edges(K))


def _require_pure(K: SimplicialComplex):
    if not K.is_pure or K.is_void:
        raise PreconditionError("要求复形是纯的且非空")


def _require_link_condition(K: SimplicialComplex):
    report = check_link_condition(K)
    if not report.ok:
        violating = report.violating_edges
        raise PreconditionError(f"链接条件在边 {list(violating[0])} 处不成立", edges=violating)


def closed_form_C(h: Sequence[int], k: int) -> Fraction:
    """C_k = ½[(k+1)(k+2) g_{k+2} + 2(k+1)(d-k) g_{k+1} + (d-k)(d-k+1) g_k]，g 取 ext 模式"""
    h = list(h)
    d = len(h) - 1
    return Fraction((k + 1) * (k + 2) * g_ext_at(h, k + 2)
                    + 2 * (k + 1) * (d - k) * g_ext_at(h, k + 1)
                    + (d - k) * (d - k + 1) * g_ext_at(h, k), 2)


def edge_link_sum(K: SimplicialComplex, k: int) -> int:
    """C_k 的直接求和：Σ_e g_k(lk e)"""
    return sum(g_ext_at(h_lk, k) for _, h_lk in _edge_link_h(K))


def vertex_local_global_check(K: SimplicialComplex, i: int) -> LocalGlobal:
    """Σ_v h_i(lk v) = (i+1) h_{i+1} + (d-i) h_i，h_{d+1} = 0"""
    _require_pure(K)
    d = K.d
    if not 0 <= i <= d:
        raise RangeError(f"i 应在 [0, {d}] 内")
    h = list(h_vector(K).entries) + [0]
    lhs = sum(h_lk[i] if i < len(h_lk) else 0 for h_lk in _vertex_link_h(K))
    return LocalGlobal(lhs, (i + 1) * h[i + 1] + (d - i) * h[i])


def edge_local_global_check(K: SimplicialComplex, k: int) -> LocalGlobal:
    """2 Σ_e g_k(lk e) = (k+1)(k+2) g_{k+2} + 2(k+1)(d-k) g_{k+1} + (d-k)(d-k+1) g_k"""
    _require_link_condition(K)
    d = K.d
    if not 0 <= k <= d - 1:
        raise RangeError(f"k 应在 [0, {d - 1}] 内")
    return LocalGlobal(2 * edge_link_sum(K, k), 2 * closed_form_C(h_vector(K).entries, k))


def contraction_h_check(K: SimplicialComplex, e: Sequence[int]) -> ContractionCheck:
    """
    收缩边 e 后重新计数的 h、f 向量与公式 h - x·h(lk e)、
    f_{k-1} - f_{k-2}(lk e) - f_{k-3}(lk e) 比较
    """
    edge = _require_edge(K, e)
    if not link_condition_at(K, edge):
        raise PreconditionError(f"链接条件在边 {list(edge)} 处不成立", edges=[edge])
    d = K.d
    contracted = contract_edge(K, edge).complex
    h = h_vector(K).entries
    lk = link(K, edge)
    h_lk = h_vector(lk, d - 2).entries
    formula = tuple(h[j] - (h_lk[j - 1] if 1 <= j <= len(h_lk) else 0) for j in range(d + 1))
    full = (1,) + f_vector(K).entries
    full_lk = (1,) + f_vector(lk, d - 2).entries

    def lk_at(i):
        return full_lk[i] if 0 <= i < len(full_lk) else 0

    f_formula = tuple(full[k] - lk_at(k - 1) - lk_at(k - 2) for k in range(1, d + 1))
    return ContractionCheck(edge=edge, direct=h_vector(contracted, d).entries, formula=formula,
                            f_direct=f_vector(contracted, d).entries, f_formula=f_formula)


def premise_status(K: SimplicialComplex) -> Tuple[str, List[Face]]:
    """按 h(Δ̃_e) = h - x·h(lk e) 检查每条边收缩后截断 g 向量非负"""
    d = K.d
    g = [g_ext_at(h_vector(K).entries, i) for i in range(d // 2 + 1)]
    failing = []
    for e, h_lk in _edge_link_h(K):
        if any(g[i] - g_ext_at(h_lk, i - 1) < 0 for i in range(len(g))):
            failing.append(e)
    if failing:
        logger.info(json.dumps({"event": "premise_violated", "edges": [list(e) for e in failing]}, ensure_ascii=False))
        return VIOLATED, failing
    return VERIFIED, []


def _interlacing_rows(h: Sequence[int], f1: int) -> List[Dict]:
    h = list(h)
    d = len(h) - 1
    g = [g_ext_at(h, i) for i in range(d + 2)]
    rows = []
    for k in range(1, d // 2):
        alpha_den = 2 * (binom(d + 1, 2) - (k + 1) * (d - k) + d * g[1] + g[2])
        alpha = Fraction((d - k) * (d - k + 1), alpha_den) if alpha_den else None
        beta = Fraction(2 * (binom(d + 1, 2) - k * (d - k + 1) + d * g[1] + g[2]), k * (k + 1))
        cushion = 2 * f1 * g[k + 1] - 2 * closed_form_C(h, k)
        rows.append({
            "k": k,
            "alpha": alpha,
            "beta": beta,
            "degenerate": alpha is None,
            "lower_ok": None if alpha is None else alpha * g[k] <= g[k + 1],
            "upper_ok": g[k + 1] <= beta * g[k],
            "cushion": cushion,
            "cushion_ok": cushion >= 0,
        })
    return rows


def interlacing_bounds(K: SimplicialComplex) -> Tuple[List[Dict], str]:
    """
    α_k g_k <= g_{k+1} <= β_k g_k（1 <= k <= d/2 - 1），以及 D_k = 2 f_1 g_{k+1} - 2 C_k >= 0

    Returns:
        (rows, premise): premise 为 verified 或 violated
    """
    _require_link_condition(K)
    premise, _ = premise_status(K)
    return _interlacing_rows(h_vector(K).entries, len(edges(K))), premise


def interlacing_bounds_from_h(h: Sequence[int]) -> List[Dict]:
    h = list(h)
    return _interlacing_rows(h, h_to_f(h).entries[1] if len(h) > 2 else 0)


@dataclass
class SandwichRecord:
    i: int
    f1: int
    S: Fraction
    middle: Fraction
    C_prev: Fraction
    cushion: Fraction
    lower_ok: Optional[bool]
    upper_ok: Optional[bool]
    cushion_ok: bool
    premise_violated: bool
    lower_rhs: object = None
    upper_rhs: object = None

    @property
    def ok(self) -> bool:
        return bool(self.lower_ok) and bool(self.upper_ok) and self.cushion_ok


def _sandwich_from_h(h: Sequence[int], f1: int, i: int) -> SandwichRecord:
    h = list(h)
    d = len(h) - 1
    if not 2 <= i <= d // 2 - 1:
        raise RangeError(f"i 应在 [2, {d // 2 - 1}] 内")
    C_prev = closed_form_C(h, i - 1)
    middle = 2 * closed_form_C(h, i)
    S = f1 * g_ext_at(h, i) - C_prev
    cushion = 2 * f1 * g_ext_at(h, i + 1) - middle
    lower_ok = exact_le_pow(cushion / 2, S, Fraction(i + 1, i))
    upper_ok = exact_le_pow(middle / 2, C_prev, Fraction(i, i - 1))
    record = SandwichRecord(i=i, f1=f1, S=S, middle=middle, C_prev=C_prev, cushion=cushion,
                            lower_ok=lower_ok, upper_ok=upper_ok, cushion_ok=cushion >= 0,
                            premise_violated=lower_ok is None or upper_ok is None)
    if not record.premise_violated:
        record.lower_rhs = at_prec(lambda: 2 * frac_pow(S, Fraction(i + 1, i)))
        record.upper_rhs = at_prec(lambda: 2 * frac_pow(C_prev, Fraction(i, i - 1)))
    return record


def global_sandwich_check(K: SimplicialComplex, i: int) -> SandwichRecord:
    """
    链接条件给出的整体夹逼：
    2 f_1 g_{i+1} - 2 S^{(i+1)/i} <= 2 C_i <= 2 C_{i-1}^{i/(i-1)}，S = f_1 g_i - C_{i-1}
    以及 0 <= D = 2 f_1 g_{i+1} - 2 C_i
    """
    _require_link_condition(K)
    return _sandwich_from_h(h_vector(K).entries, len(edges(K)), i)


def local_sandwich_check(K: SimplicialComplex, i: int) -> List[Dict]:
    """
    每条边：g_{i+1} - (g_i - g_{i-1}(lk e))^<i> <= g_i(lk e) <= g_{i-1}(lk e)^<i-1>
    """
    _require_link_condition(K)
    d = K.d
    if not 2 <= i <= d // 2 - 1:
        raise RangeError(f"i 应在 [2, {d // 2 - 1}] 内")
    h = h_vector(K).entries
    g_i, g_next = g_ext_at(h, i), g_ext_at(h, i + 1)
    rows = []
    for e, h_lk in _edge_link_h(K):
        lk_i, lk_prev = g_ext_at(h_lk, i), g_ext_at(h_lk, i - 1)
        base = g_i - lk_prev
        lower = g_next - pseudopower(base, i) if base >= 0 else None
        upper = pseudopower(lk_prev, i - 1) if lk_prev >= 0 else None
        rows.append({
            "edge": e,
            "lower": lower,
            "value": lk_i,
            "upper": upper,
            "lower_ok": None if lower is None else lower <= lk_i,
            "upper_ok": None if upper is None else lk_i <= upper,
        })
    return rows


def _triviality_rows(h: Sequence[int], f1: int, C) -> List[Dict]:
    h = list(h)
    d = len(h) - 1
    rows = []
    for k in range(1, d // 2):
        g_k, g_next = g_ext_at(h, k), g_ext_at(h, k + 1)
        if g_k == 0 or g_next == 0:
            rows.append({"k": k, "skipped": f"g_{k if g_k == 0 else k + 1} = 0"})
            continue
        C_prev, C_k = C(k - 1), C(k)
        r_prev = Fraction(C_prev, f1 * g_k)
        r_k = Fraction(C_k, f1 * g_next)
        exponent = Fraction(k + 1, k)

        def omega():
            return frac_pow(f1, Fraction(1, k)) * frac_pow(g_k, exponent) / g_next

        def lower_bound():
            inner = 1 - frac_pow(omega(), Fraction(k, k + 1)) * to_iv(1 - r_prev)
            # 底数为负时下界退化为 0
            if inner.b <= 0:
                return iv.mpf(0)
            if inner.a < 0:
                inner = iv.mpf((0, inner.b))
            return frac_pow(inner, exponent)

        row = {
            "k": k,
            "C_prev": C_prev,
            "C": C_k,
            "r_prev": r_prev,
            "r": r_k,
            "r_in_range": 0 <= r_k <= 1,
            "omega": at_prec(omega),
            "lower_bound": at_prec(lower_bound),
            "lower_ok": decide_le(lambda: (lower_bound(), to_iv(r_k))),
            "simplified_bound": at_prec(lambda: frac_pow(r_prev, exponent)),
            "g1_over_d": Fraction(g_ext_at(h, 1), d),
            "rho": Fraction(g_next, g_k * f1),
            "rho_threshold": Fraction(2, k * (k + 1)),
        }
        if r_prev <= 1:
            row["tau"] = at_prec(lambda: omega() * frac_pow(1 - r_prev, exponent))
            row["trivial"] = decide_le(lambda: (to_iv(1), omega() * frac_pow(1 - r_prev, exponent)))
        else:
            row["tau"] = None
            row["trivial"] = None
        # 渐近情形下括号项乘以 2/e 的启发式，只作标注
        row["note"] = "2/e 倍数仅作标注"
        rows.append(row)
    return rows


def _tags(rows: List[Dict], g1: int, d: int) -> List[str]:
    tags = []
    live = [r for r in rows if "skipped" not in r]
    if live and all(r["trivial"] for r in live):
        tags.append("trivial-by-M-vector")
    if any(r["trivial"] is False for r in live):
        tags.append("nontrivial-candidate")
    if g1 < d + get_diagnostics_config()['nontrivial_margin']:
        tags.append("interlacing-active")
    return tags


@dataclass
class LinkReport:
    d: int
    f1: int
    premise: str
    identities: List[Dict] = field(default_factory=list)
    interlacing: List[Dict] = field(default_factory=list)
    sandwich: List[SandwichRecord] = field(default_factory=list)
    rows: List[Dict] = field(default_factory=list)
    tags: List[str] = field(default_factory=list)
    violating_edges: List[Face] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item["equal"] for item in self.identities)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r for r in self.rows if "skipped" not in r])

    def to_json(self) -> dict:
        return to_jsonable({
            "d": self.d,
            "f1": self.f1,
            "premise": self.premise,
            "ok": self.ok,
            "identities": self.identities,
            "interlacing": self.interlacing,
            "sandwich": [dict(to_jsonable(s), ok=s.ok) for s in self.sandwich],
            "rows": self.rows,
            "tags": self.tags,
            "violating_edges": [list(e) for e in self.violating_edges],
        })


def triviality_diagnostics(K: SimplicialComplex) -> LinkReport:
    _require_link_condition(K)
    h = h_vector(K).entries
    d, f1 = K.d, len(edges(K))
    premise, failing = premise_status(K)
    rows = _triviality_rows(h, f1, lambda k: edge_link_sum(K, k))
    return LinkReport(d=d, f1=f1, premise=premise, rows=rows, tags=_tags(rows, g_ext_at(h, 1), d),
                      violating_edges=failing)


def triviality_diagnostics_from_h(h: Sequence[int]) -> LinkReport:
    """合成 h 向量的同一报告，C_k 只用闭式，前提记为 assumed"""
    h = list(h)
    d = len(h) - 1
    f1 = h_to_f(h).entries[1] if d >= 2 else 0
    rows = _triviality_rows(h, f1, lambda k: closed_form_C(h, k))
    report = LinkReport(d=d, f1=f1, premise=ASSUMED, rows=rows, tags=_tags(rows, g_ext_at(h, 1), d),
                        interlacing=_interlacing_rows(h, f1))
    report.sandwich = [_sandwich_from_h(h, f1, i) for i in range(2, d // 2)]
    return report


def analyze(K: SimplicialComplex) -> LinkReport:
    """
    完整的链接条件报告：局部-整体恒等式、收缩公式、C_k 两种算法、交错界、整体夹逼和平凡性诊断

    Raises:
        PreconditionError: 复形不纯或链接条件不成立（附带违反的边）
    """
    report = triviality_diagnostics(K)
    d = report.d
    h = h_vector(K).entries
    identities = []
    for i in range(d + 1):
        item = vertex_local_global_check(K, i)
        identities.append({"name": "vertex", "index": i, "lhs": item.lhs, "rhs": item.rhs, "equal": item.equal})
    for k in range(d):
        item = edge_local_global_check(K, k)
        identities.append({"name": "edge", "index": k, "lhs": item.lhs, "rhs": item.rhs, "equal": item.equal})
        direct = edge_link_sum(K, k)
        closed = closed_form_C(h, k)
        identities.append({"name": "C", "index": k, "lhs": direct, "rhs": closed, "equal": direct == closed})
    for e in edges(K):
        item = contraction_h_check(K, e)
        identities.append({"name": "contraction", "index": list(e), "lhs": item.direct, "rhs": item.formula,
                           "equal": item.equal})
    report.identities = identities
    report.interlacing = _interlacing_rows(h, report.f1)
    report.sandwich = [_sandwich_from_h(h, report.f1, i) for i in range(2, d // 2)]
    if not report.ok:
        logger.info(json.dumps({"event": "identity_failed", "d": d}, ensure_ascii=False))
    return report
