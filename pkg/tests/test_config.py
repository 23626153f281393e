"""
配置读取与结果输出格式

Run: python -m pytest tests/test_config.py -v
"""
import os
import sys
from fractions import Fraction

import pandas as pd
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from config import (get_display_rows, get_free_cap_factor, get_guard, get_guards, get_interval_config,
                    get_table_max_digits, get_ui_config, override_guard)
from utils.interval import decide_le, exact_le_pow, frac_pow, span, to_iv
from utils.report import dumps, format_cell, to_jsonable, to_table


# =============================================================================
# 配置
# =============================================================================

def test_guards_from_yaml():
    guards = get_guards()
    assert guards['motzkin_max_n'] == 18
    assert guards['cover_max_m'] == 24
    assert get_guard('max_faces') == 2000000


def test_override_guard(monkeypatch):
    monkeypatch.setattr(config, "_GUARD_OVERRIDES", {})
    override_guard('max_faces', 50)
    assert get_guard('max_faces') == 50
    with pytest.raises(ValueError):
        override_guard('max_faces', 0)


def test_other_sections():
    cfg = get_interval_config()
    assert cfg['prec'] == 128
    assert cfg['max_prec'] == 2048
    assert get_free_cap_factor() == 1
    assert get_table_max_digits() == 30
    assert get_display_rows() == 100
    assert get_ui_config()['server_port'] == 7860


# =============================================================================
# 区间比较
# =============================================================================

def test_exact_power_comparison():
    assert exact_le_pow(8, 4, Fraction(3, 2)) is True
    assert exact_le_pow(9, 4, Fraction(3, 2)) is False
    assert exact_le_pow(-1, 2, Fraction(1, 2)) is True
    assert exact_le_pow(1, -2, Fraction(1, 2)) is None


def test_decide_le_with_intervals():
    assert decide_le(lambda: (frac_pow(2, Fraction(1, 2)), to_iv(Fraction(3, 2)))) is True
    assert decide_le(lambda: (to_iv(Fraction(3, 2)), frac_pow(2, Fraction(1, 2)))) is False
    assert decide_le(lambda: (span(0, 2), to_iv(1))) is None


# =============================================================================
# 输出
# =============================================================================

def test_to_jsonable():
    assert to_jsonable(10 ** 40) == str(10 ** 40)
    assert to_jsonable(Fraction(3, 2)) == "3/2"
    assert to_jsonable(Fraction(4, 2)) == "2"
    assert to_jsonable({"a": (1, True, None)}) == {"a": ["1", True, None]}
    assert dumps([1]) == '[\n  "1"\n]'


def test_format_cell_truncates_long_integers():
    assert format_cell(10 ** 40) == "100000000000…(41 digits)"
    assert format_cell(12345) == "12345"
    assert format_cell(Fraction(1, 3)) == "1/3"
    assert format_cell((1, 2)) == "(1, 2)"


def test_to_table():
    frame = to_table([{"k": 1, "r": Fraction(1, 2)}])
    assert isinstance(frame, pd.DataFrame)
    assert frame.iloc[0]["r"] == "1/2"
    assert to_table([]).empty
