"""
f、h、g、gamma 向量的精确变换

Run: python -m pytest tests/test_vectors.py -v
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.errors import NotReciprocalError, RangeError, ShapeError
from utils.vectors import (CountVector, coefficient_ratio_diagnostics, dehn_sommerville_check, edge_count_from_g,
                           f_to_h, g_to_gamma, gamma_ratio_restrictions, gamma_to_g, gamma_to_h, gamma_via_chebyshev,
                           h_from_gamma, h_half_to_gamma, h_to_f, h_to_g, total_nonnegativity_check,
                           transform_matrix)


# =============================================================================
# f / h / g
# =============================================================================

def test_f_to_h_and_back():
    assert f_to_h((6, 12, 8)).entries == (1, 3, 3, 1)
    assert h_to_f((1, 3, 3, 1)).entries == (6, 12, 8)
    assert h_to_f((1, 4, 6, 4, 1)).entries == (8, 24, 32, 16)


def test_f_to_h_length_mismatch():
    with pytest.raises(ShapeError):
        f_to_h((6, 12), d=3)


def test_count_vector_validates_length():
    with pytest.raises(ShapeError):
        CountVector('h', 4, (1, 4, 6))
    vector = CountVector('gamma', 4, (1, 0, 0))
    assert CountVector.from_json(vector.to_json()) == vector


def test_g_vectors_truncated_and_extended():
    h = (1, 4, 6, 4, 1)
    assert h_to_g(h, "trunc").entries == (1, 3, 2)
    assert h_to_g(h, "ext").entries == (1, 3, 2, -2, -3)
    with pytest.raises(RangeError):
        h_to_g(h, "full")


def test_dehn_sommerville():
    assert dehn_sommerville_check((1, 4, 6, 4, 1))
    assert not dehn_sommerville_check((1, 2, 3))


def test_edge_count_from_g():
    assert edge_count_from_g((1, 3, 2), 4) == 24


# =============================================================================
# gamma 向量
# =============================================================================

def test_transform_matrices():
    assert transform_matrix("A", 4).entries == ((1, 0, 0), (4, 1, 0), (6, 2, 1))
    assert transform_matrix("B", 4).entries == ((1, 0, 0), (3, 1, 0), (2, 1, 1))
    with pytest.raises(RangeError):
        transform_matrix("C", 4)


def test_gamma_to_h_and_g():
    assert gamma_to_h((1, 0, 0), 4) == (1, 4, 6)
    assert gamma_to_g((1, 2), 2).entries == (1, 3)
    assert g_to_gamma((1, 3), 2).entries == (1, 2)
    assert h_half_to_gamma((1, 5, 8), 4).entries == (1, 1, 0)
    assert h_from_gamma((1, 1, 0), 4).entries == (1, 5, 8, 5, 1)


def test_gamma_half_length_checked():
    with pytest.raises(ShapeError):
        gamma_to_h((1, 0), 4)


def test_gamma_via_chebyshev_matches_forward_substitution():
    assert gamma_via_chebyshev((1, 4, 6, 4, 1)).entries == (1, 0, 0)
    assert gamma_via_chebyshev((1, 5, 8, 5, 1)).entries == (1, 1, 0)
    h = (1, 6, 15, 20, 15, 6, 1)
    assert gamma_via_chebyshev(h).entries == h_half_to_gamma(h[:4], 6).entries == (1, 0, 0, 0)


def test_gamma_via_chebyshev_odd_dimension():
    """奇数 d 先除以 (1+t)"""
    assert gamma_via_chebyshev((1, 3, 3, 1)).entries == (1, 0)
    assert gamma_via_chebyshev((1, 4, 4, 1)).entries == (1, 1)


def test_gamma_via_chebyshev_requires_palindrome():
    with pytest.raises(NotReciprocalError):
        gamma_via_chebyshev((1, 2, 3))


# =============================================================================
# 系数诊断
# =============================================================================

def test_coefficient_ratio_table():
    df = coefficient_ratio_diagnostics(6)
    assert list(df.columns) == ["r", "s", "a_ratio", "b_ratio", "a_ok", "b_ok"]
    assert len(df) == 6
    with pytest.raises(RangeError):
        coefficient_ratio_diagnostics(1)


def test_gamma_ratio_restrictions():
    report = gamma_ratio_restrictions((1, 3, 2), 4)
    assert report.ok
    assert report.gamma_lower_bounds == (0, 0)
    assert not gamma_ratio_restrictions((1, 0, 3), 4).ok


def test_total_nonnegativity():
    assert total_nonnegativity_check(transform_matrix("A", 4))
