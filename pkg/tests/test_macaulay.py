"""
Macaulay 表示、伪幂、二项式方程的根与三种可实现性检验

Run: python -m pytest tests/test_macaulay.py -v
"""
import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.errors import RangeError
from utils.interval import midpoint
from utils.macaulay import (asymptotic_ratio, avgh_bound_check, binomial_root, check_cm_h, check_f_vector,
                            check_sphere_g, g_power_bound_check, macaulay_rep, power_sum_check, pseudopower,
                            pseudopower_bounds, pseudopower_scaling_ratio, sandwich_verdict)


# =============================================================================
# Macaulay 表示与伪幂
# =============================================================================

def test_macaulay_representation():
    rep = macaulay_rep(7, 2)
    assert rep.terms == ((4, 2), (1, 1))
    assert rep.value == 7
    assert macaulay_rep(6, 2).terms == ((4, 2),)


def test_pseudopower_values():
    assert pseudopower(7, 2) == 11
    assert pseudopower(3, 1) == 6
    assert pseudopower(6, 2) == 10
    assert pseudopower(0, 3) == 0


def test_macaulay_rejects_nonpositive():
    with pytest.raises(RangeError):
        macaulay_rep(0, 2)
    with pytest.raises(RangeError):
        pseudopower(5, 0)


def test_random_representations_reconstruct():
    """随机 a 的表示按定义求和还原 a，且顶部严格递减"""
    rng = random.Random(7)
    for _ in range(50):
        a, k = rng.randint(1, 10 ** 6), rng.randint(1, 6)
        rep = macaulay_rep(a, k)
        assert rep.value == a
        tops = [n for n, _ in rep.terms]
        assert tops == sorted(tops, reverse=True) and len(set(tops)) == len(tops)


# =============================================================================
# 根与上下界
# =============================================================================

def test_binomial_root_exact_and_bisected():
    exact = binomial_root(6, 2)
    assert exact.exact and exact.lower == 4
    root = binomial_root(7, 2)
    assert 4 < root.lower <= root.upper < 5
    assert abs(root.value - 4.27491721763537) < 1e-9


def test_sandwich_chain():
    assert sandwich_verdict(7, 2) is True
    bounds = pseudopower_bounds(7, 2)
    assert bounds.lower == 10
    assert bounds.pseudopower == 11
    assert bounds.chain_holds is True


def test_asymptotic_ratio_tends_to_one():
    ratio = asymptotic_ratio(10 ** 6, 1)
    assert abs(midpoint(ratio) - 1) < 1e-5


def test_power_sum():
    assert power_sum_check([1, 2, 3], 2) is True
    assert power_sum_check([1, 2, 3], Fraction(3, 2)) is True
    assert power_sum_check([5], 3) is True
    with pytest.raises(RangeError):
        power_sum_check([1, 2], Fraction(1, 2))


# =============================================================================
# 可实现性检验
# =============================================================================

def test_check_f_vector():
    assert check_f_vector((4, 6, 4)).ok
    assert check_f_vector((6, 12, 8)).ok
    result = check_f_vector((3, 7))
    assert not result.ok and result.failing_index == 1


def test_check_f_vector_zeros():
    trailing = check_f_vector((4, 6, 4, 0, 0))
    assert trailing.ok
    assert trailing.notes
    interior = check_f_vector((4, 0, 1))
    assert not interior.ok and interior.failing_index == 1


def test_check_cm_h():
    assert check_cm_h((1, 3, 6, 10)).ok
    result = check_cm_h((1, 2, 4))
    assert not result.ok and result.failing_index == 2
    assert check_cm_h((2, 1)).failing_index == 0


def test_check_sphere_g():
    assert check_sphere_g((1, 4, 6, 4, 1)).ok
    assert check_sphere_g((1, 17, 153, 17, 1)).ok
    result = check_sphere_g((1, 3, 9, 3, 1))
    assert not result.ok and result.failing_index == 2
    assert not check_sphere_g((1, 2, 3)).ok
    assert check_sphere_g((2, 4, 2)).failing_index == 0


def test_check_result_json():
    payload = check_cm_h((1, 2, 4)).to_json()
    assert payload["ok"] is False
    assert payload["failing_index"] == 2


def test_average_and_power_bounds():
    assert avgh_bound_check((1, 4, 6, 4, 1), 2)
    assert g_power_bound_check((1, 3, 2)).ok
    result = g_power_bound_check((1, 2, 5))
    assert not result.ok and result.failing_index == 2


def test_scaling_ratio_near_one():
    ratio = pseudopower_scaling_ratio(10 ** 5, 10, 2)
    assert 0.9 < midpoint(ratio) < 1.1
