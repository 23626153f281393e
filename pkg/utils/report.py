"""
结果输出：JSON 序列化与表格单元格格式化
"""
import dataclasses
import json
from fractions import Fraction

import pandas as pd

from config import get_table_max_digits
from utils.interval import format_iv


def to_jsonable(value):
    """
    把计算结果转换为可 JSON 序列化的结构

    整数输出为十进制字符串（避免大整数精度丢失），有理数为 "p/q"，区间为 "[a, b]"。
    """
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if hasattr(value, "_mpi_"):
        return format_iv(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, pd.DataFrame):
        return [to_jsonable(row) for row in value.to_dict(orient="records")]
    if dataclasses.is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    return str(value)


def dumps(value) -> str:
    return json.dumps(to_jsonable(value), ensure_ascii=False, indent=2)


def format_cell(value, max_digits: int = None) -> str:
    """表格单元格：超长整数截断为 前缀…(n digits)"""
    max_digits = max_digits or get_table_max_digits()
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, int):
        text = str(value)
        digits = len(text.lstrip('-'))
        if digits > max_digits:
            return f"{text[:12]}…({digits} digits)"
        return text
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return format_cell(value.numerator, max_digits)
        return f"{format_cell(value.numerator, max_digits)}/{format_cell(value.denominator, max_digits)}"
    if hasattr(value, "_mpi_"):
        return format_iv(value)
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(format_cell(v, max_digits) for v in value) + ")"
    return str(value)


def to_table(rows, columns=None) -> pd.DataFrame:
    """逐行记录转成格式化后的 DataFrame"""
    frame = pd.DataFrame(list(rows), columns=columns)
    return frame.apply(lambda col: col.map(format_cell)) if not frame.empty else frame
