"""
严格的实数比较：基于 mpmath.iv 的外向舍入区间算术

分数幂 a^(p/q)、二项式方程的实根等无法精确表示的量都用区间表示，
比较结果为三值：True / False / None（区间重叠，无法判定）。
"""
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from mpmath import iv

from config import get_interval_config

Exact = Union[int, Fraction]


def to_iv(value: Exact):
    """把整数或有理数转换为包含它的区间"""
    value = Fraction(value)
    return iv.mpf(value.numerator) / value.denominator


def span(lower: Exact, upper: Exact):
    """两个有理端点之间的区间"""
    return iv.mpf((to_iv(lower), to_iv(upper)))


def frac_pow(base, exponent: Exact):
    """
    区间的有理数次幂 base^exponent

    Args:
        base: 非负区间或有理数
        exponent: 有理指数 p/q

    Returns:
        包含真实值的区间；底数为 0 时返回 0
    """
    if not hasattr(base, "_mpi_"):
        if Fraction(base) == 0:
            return iv.mpf(0)
        base = to_iv(base)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base.b <= 0:
        return iv.mpf(0)
    if base.a < 0:
        # 负的下端点来自舍入，截断到 0
        base = iv.mpf((0, base))
    return base ** to_iv(exponent)


def exact_le_pow(lhs: Exact, base: Exact, exponent: Exact) -> Optional[bool]:
    """
    精确判定 lhs <= base^exponent，exponent = p/q > 0

    lhs <= 0 时恒成立；否则比较 lhs^q 与 base^p。base 为负时返回 None（分数幂无定义）。
    """
    lhs, base, exponent = Fraction(lhs), Fraction(base), Fraction(exponent)
    if base < 0:
        return None
    if lhs <= 0:
        return True
    p, q = exponent.numerator, exponent.denominator
    return lhs ** q <= base ** p


def decide_le(build: Callable[[], Tuple[object, object]]) -> Optional[bool]:
    """
    逐步提高精度判定 lhs <= rhs

    Args:
        build: 无参函数，在当前 iv.prec 下返回 (lhs, rhs) 两个区间

    Returns:
        True / False；精度达到上限或区间宽度低于下限仍重叠时返回 None
    """
    cfg = get_interval_config()
    saved = iv.prec
    prec = cfg['prec']
    try:
        while True:
            iv.prec = prec
            lhs, rhs = build()
            verdict = lhs <= rhs
            if verdict is not None:
                return verdict
            width = max(float(iv.mpf(lhs).delta), float(iv.mpf(rhs).delta))
            if width < cfg['width_floor'] or prec * 2 > cfg['max_prec']:
                return None
            prec *= 2
    finally:
        iv.prec = saved


def at_prec(build: Callable[[], object]):
    """在配置的初始精度下计算一个区间量"""
    saved = iv.prec
    try:
        iv.prec = get_interval_config()['prec']
        return build()
    finally:
        iv.prec = saved


def midpoint(value) -> float:
    """区间中点，用于展示"""
    if hasattr(value, "_mpi_"):
        return float(value.mid)
    return float(value)


def format_iv(value, digits: int = 12) -> str:
    """区间的字符串形式 [a, b]"""
    if hasattr(value, "_mpi_"):
        return iv.nstr(value, digits)
    return str(value)
