"""
正交多项式族、Motzkin 路径矩阵、单体/二聚体覆盖与推广 gamma 向量

Run: python -m pytest tests/test_orthopath.py -v
"""
import os
import random
import sys
from fractions import Fraction

import pytest
from sympy import Rational, Symbol, expand

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.complex import cycle, from_facets
from utils.errors import NotReciprocalError, ParseError, RangeError, SizeGuardError
from utils.orthopath import (CoverSpec, WeightScheme, coefficient_via_covers, cover_sum, dimer_identity_check,
                             formal_extension_bound, formal_h, formal_unimodality_check, gamma_to_z,
                             gamma_via_covers, inverse_pair_check, mu_bruteforce, mu_matrix, mu_polynomial_check,
                             named_scheme, realize_cross_check, tcheb_fpoly_identity_check, unitary_family,
                             z_to_gamma)
from utils.vectors import gamma_via_chebyshev, h_half_to_gamma


def random_scheme(rng: random.Random, N: int) -> WeightScheme:
    """b_0..b_N 与 λ_1..λ_N 取正有理数"""
    def value():
        return Fraction(rng.randint(1, 9), rng.randint(1, 4))
    return WeightScheme(b=tuple(value() for _ in range(N + 1)), lam=tuple(value() for _ in range(N)))


# =============================================================================
# 多项式族与路径矩阵
# =============================================================================

def test_unitary_family_chebyshev():
    rows = unitary_family(WeightScheme.chebyshev(2), 2)
    assert rows[1] == [-1, 1, 0]
    assert rows[2] == [Fraction(1, 2), -2, 1]


def test_mu_matrix_entries():
    mu = mu_matrix(WeightScheme.chebyshev(4), 4)
    assert mu.at(1, 0) == 1
    assert mu.at(2, 0) == Fraction(3, 2)
    assert mu.at(2, 1) == 2
    assert mu.at(4, 3) == 4
    assert mu.at(2, 3) == 0


def test_mu_recursion_matches_path_enumeration():
    weights = WeightScheme.chebyshev(5)
    mu = mu_matrix(weights, 5)
    for n in range(6):
        for k in range(n + 1):
            assert mu_bruteforce(weights, n, k) == mu.at(n, k)


def test_mu_recursion_matches_path_enumeration_random_weights():
    rng = random.Random(7)
    for _ in range(25):
        N = rng.randint(1, 6)
        weights = random_scheme(rng, N)
        mu = mu_matrix(weights, N)
        for n in range(N + 1):
            for k in range(n + 1):
                assert mu_bruteforce(weights, n, k) == mu.at(n, k)


def test_path_enumeration_guard():
    with pytest.raises(SizeGuardError):
        mu_bruteforce(WeightScheme.chebyshev(19), 19, 0)


def test_inverse_pair():
    assert inverse_pair_check(WeightScheme.chebyshev(4), 4)
    assert inverse_pair_check(WeightScheme.chebyshev_hat(4), 4)
    assert inverse_pair_check(WeightScheme.symbolic(3), 3)


def test_inverse_pair_up_to_larger_N():
    for N in range(1, 13):
        assert inverse_pair_check(WeightScheme.chebyshev(N), N)
    rng = random.Random(11)
    for N in range(1, 9):
        assert inverse_pair_check(random_scheme(rng, N), N)


def test_mu_polynomials_in_indeterminate_weights():
    assert mu_polynomial_check(3)
    with pytest.raises(RangeError):
        mu_polynomial_check(0)


def test_weight_scheme_json():
    weights = WeightScheme.from_json('{"b": ["1", "1"], "lam": ["1/2"]}')
    assert weights.lam_at(1) == Fraction(1, 2)
    assert weights.positive
    assert WeightScheme.from_json(weights.to_json()) == weights
    with pytest.raises(ParseError):
        WeightScheme.from_json("{not json")
    with pytest.raises(ParseError):
        WeightScheme.from_json('{"b": ["x"], "lam": []}')
    with pytest.raises(RangeError):
        named_scheme("legendre", 3)


# =============================================================================
# 覆盖计数
# =============================================================================

def test_coefficients_via_covers():
    weights = WeightScheme.chebyshev(4)
    family = unitary_family(weights, 4)
    for m in range(5):
        for r in range(m + 1):
            assert coefficient_via_covers(weights, m, r) == family[m][r]


def test_coefficients_via_covers_random_weights():
    rng = random.Random(5)
    for _ in range(10):
        N = rng.randint(2, 6)
        weights = random_scheme(rng, N)
        family = unitary_family(weights, N)
        for m in range(N + 1):
            for r in range(m + 1):
                assert coefficient_via_covers(weights, m, r) == family[m][r]


def test_cover_sum_edge_cases():
    assert cover_sum(CoverSpec(0, 0)) == 1
    assert cover_sum(CoverSpec(0, 1)) == 0
    assert cover_sum(CoverSpec(3, -1)) == 0
    with pytest.raises(SizeGuardError):
        cover_sum(CoverSpec(25, 0))


@pytest.mark.parametrize("m, ell, value", [(2, 0, -2), (3, 1, -6), (4, 0, 2)])
def test_dimer_identity(m, ell, value):
    item = dimer_identity_check(m, ell)
    assert item.ok
    assert item.lhs == value


def test_dimer_identity_parity():
    item = dimer_identity_check(3, 0)
    assert item.ok and item.lhs == 0


def test_dimer_identity_for_every_small_case():
    for m in range(2, 15):
        for ell in range(m + 1):
            assert dimer_identity_check(m, ell).ok, (m, ell)


def test_gamma_via_covers():
    assert gamma_via_covers((1, 5, 1)) == (1, 3)
    assert gamma_via_covers((1, 4, 6, 4, 1)) == (1, 0, 0)
    assert gamma_via_covers((1, 5, 8, 5, 1)) == (1, 1, 0)
    assert gamma_via_covers((1, 6, 15, 20, 15, 6, 1))[3] == 0
    with pytest.raises(RangeError):
        gamma_via_covers((1, 3, 3, 1))
    with pytest.raises(NotReciprocalError):
        gamma_via_covers((1, 2, 3))


def test_gamma_paths_agree_on_random_palindromes():
    """矩阵、Chebyshev 反演与覆盖计数三种算法给出同一个 γ"""
    rng = random.Random(42)
    for _ in range(100):
        d = rng.choice([2, 4, 6, 8])
        half = [1] + [rng.randint(0, 60) for _ in range(d // 2)]
        h = half + half[:-1][::-1]
        expected = h_half_to_gamma(half, d).entries
        assert gamma_via_covers(h) == expected
        assert gamma_via_chebyshev(h, d).entries == expected


def test_tchebyshev_f_polynomial_identity():
    x = Symbol('x')
    triangle = tcheb_fpoly_identity_check(cycle(3))
    assert triangle.equal
    assert expand(triangle.lhs - (Rational(3, 2) * x ** 2 - Rational(1, 2))) == 0
    path = tcheb_fpoly_identity_check(from_facets([[0, 1]]))
    assert path.equal
    assert expand(path.rhs - (x ** 2 / 2 + x / 2)) == 0


# =============================================================================
# 推广的 gamma 向量
# =============================================================================

def test_gamma_z_conversion():
    assert gamma_to_z((1, 2, 3)) == (3, 4, 4)
    assert z_to_gamma((3, 4, 4)) == (1, 2, 3)


def test_formal_h():
    assert formal_h((2, 2), WeightScheme.chebyshev(1)).h == (1, 4)
    vectors = formal_h(gamma_to_z((1, 0, 0)), WeightScheme.chebyshev(2))
    assert vectors.h == (1, 4, 6)
    assert vectors.g[:3] == (1, 3, 2)


def test_formal_h_bounded_below_by_top_row():
    """z >= 0 且 z_N = 2^N 时 h_k >= 2^k μ_{N,N-k}"""
    rng = random.Random(3)
    for trial in range(40):
        N = rng.randint(1, 6)
        weights = WeightScheme.chebyshev(N) if trial % 2 else random_scheme(rng, N)
        mu = mu_matrix(weights, N)
        z = [rng.randint(0, 50) for _ in range(N)] + [2 ** N]
        h = formal_h(z, weights).h
        assert all(h[k] >= 2 ** k * mu.at(N, N - k) for k in range(N + 1))


def test_formal_h_equals_top_row_when_only_z_N_is_set():
    N = 4
    weights = WeightScheme.chebyshev(N)
    mu = mu_matrix(weights, N)
    h = formal_h([0] * N + [2 ** N], weights).h
    assert h == tuple(2 ** k * mu.at(N, N - k) for k in range(N + 1))


def test_formal_unimodality():
    report = formal_unimodality_check((0, 0, 4), WeightScheme.chebyshev(2))
    assert report.ok
    assert [r["threshold"] for r in report.rows] == [-2, -6]
    assert report.sufficient_condition is False
    with pytest.raises(RangeError):
        formal_unimodality_check((-1, 0, 4), WeightScheme.chebyshev(2))


def test_formal_extension_bound():
    weights = WeightScheme.chebyshev(2)
    bound = formal_extension_bound((0, 4), 2, weights, "sphere")
    assert bound.k == 1
    assert bound.upper == 4
    assert formal_extension_bound((4,), 2, weights).unbounded
    fractional = formal_extension_bound((1, 4), 2, weights)
    assert fractional.upper is None and fractional.reason == "non-integral"
    with pytest.raises(RangeError):
        formal_extension_bound((0, 3), 2, weights)


def test_formal_bound_agrees_with_plain_bound():
    formal, plain = realize_cross_check((1, 0), 4)
    assert plain == 4
    assert formal == 4
    formal, plain = realize_cross_check((1, 2, 3), 8)
    assert plain == 44
    assert formal == 2 * plain
