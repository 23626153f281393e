"""
网页界面的输入解析与批量校验辅助函数

Run: python -m pytest tests/test_ui.py -v
"""
import os
import sys

import gradio as gr
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from main import build_app
from ui_shared import parse_vector_text, resolve_complex
from ui_single import single_submit_handler
from ui_table import parse_expected, run_checker
from utils.complex import f_vector
from utils.errors import ParseError


def test_parse_vector_text():
    assert parse_vector_text("1, 4,6，4,1") == [1, 4, 6, 4, 1]
    with pytest.raises(ParseError):
        parse_vector_text("1,a")
    with pytest.raises(ParseError):
        parse_vector_text("")


def test_resolve_complex_prefers_facets():
    assert f_vector(resolve_complex("cross", 3, "")).entries == (6, 12, 8)
    assert f_vector(resolve_complex("cross", 3, "0 1\n1 2\n0 2")).entries == (3, 3)
    assert resolve_complex("", 3, "") is None


def test_parse_expected():
    assert parse_expected("1") is True
    assert parse_expected("通过") is True
    assert parse_expected("0") is False
    assert parse_expected(float("nan")) is None
    assert parse_expected("maybe") is None


def test_run_checker_by_name():
    assert run_checker("check_sphere_g", [1, 4, 6, 4, 1]).ok
    assert run_checker("check_f_vector", [1, 3, 3, 1]).ok
    assert not run_checker("check_cm_h", [1, 2, 4]).ok


def test_single_handler_with_vector(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    vector_df, checks, status, link_df = single_submit_handler("", 4, "", "h", "1,17,153,17,1", True)
    assert list(vector_df["向量"])[:2] == ["f", "h"]
    assert checks["check_sphere_g"]["ok"] is True
    assert "assumed" in status
    assert len(link_df) == 1


def test_single_handler_reports_link_failure(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    _, _, status, link_df = single_submit_handler("simplexboundary", 3, "", "h", "", True)
    assert "链接条件不成立" in status
    assert link_df is None


def test_app_builds():
    assert isinstance(build_app(), gr.Blocks)
