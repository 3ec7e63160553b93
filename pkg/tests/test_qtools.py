"""q-Pochhammer products, Gaussian polynomials, Rogers-Szego, partition counts."""

import random

import pytest

from qconv.polys import ParamPoly
from qconv.qtools import (
    PochhammerSpec,
    gaussian_binomial,
    param_poch,
    partition_oracle,
    partition_p,
    pochhammer,
    q6poch,
    qpoch,
    rogers_szego,
    sigma,
    triangular_weight,
)
from qconv.series import QSeries


def test_qpoch_small():
    assert qpoch(0, 4) == QSeries.one(4)
    assert qpoch(1, 4) == QSeries.from_coeffs([1, -1], qorder=4)
    # (q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
    assert qpoch(2, 4) == QSeries.from_coeffs([1, -1, -1, 1], qorder=4)


def test_q6poch_truncates_tall_factors():
    # (q^6; q^6)_2 = (1-q^6)(1-q^12); at qorder 12 the q^18 term is gone
    assert q6poch(2, 12) == QSeries.from_coeffs(
        [1] + [0] * 5 + [-1] + [0] * 5 + [-1], qorder=12
    )
    # at qorder 5 every factor exceeds the truncation
    assert q6poch(3, 5) == QSeries.one(5)


def test_param_poch():
    a = ParamPoly.var(("a",), "a")
    # (a; q)_2 = (1-a)(1-aq)
    expected = QSeries.from_coeffs([1 - a, -a * (1 - a)], qorder=3)
    assert param_poch("a", 2, 3, ("a",)) == expected


def test_pochhammer_spec_validation():
    one = ParamPoly.const((), 1)
    with pytest.raises(ValueError):
        PochhammerSpec(one, -1, 1, 2)
    with pytest.raises(ValueError):
        PochhammerSpec(one, 0, 0, 2)
    with pytest.raises(ValueError):
        PochhammerSpec(one, 0, 1, -1)


def test_pochhammer_general_spec():
    # (1 - q^2)(1 - q^8) via e0=2, step=6
    spec = PochhammerSpec(ParamPoly.const((), 1), 2, 6, 2)
    got = pochhammer(spec, 10)
    expected = (QSeries.one(10) - QSeries.monomial(10, 2)) * (
        QSeries.one(10) - QSeries.monomial(10, 8)
    )
    assert got == expected


# -- Gaussian polynomials -------------------------------------------------------


def test_gaussian_examples():
    N = 10
    assert gaussian_binomial(4, 2, N) == QSeries.from_coeffs([1, 1, 2, 1, 1], qorder=N)
    assert gaussian_binomial(3, 1, N) == QSeries.from_coeffs([1, 1, 1], qorder=N)
    assert gaussian_binomial(5, 0, N) == QSeries.one(N)
    assert gaussian_binomial(5, 5, N) == QSeries.one(N)
    assert gaussian_binomial(3, 5, N).is_zero()
    assert gaussian_binomial(3, -1, N).is_zero()


def test_gaussian_symmetry_and_degree():
    N = 40
    for n in range(13):
        for m in range(n + 1):
            g = gaussian_binomial(n, m, N)
            assert g == gaussian_binomial(n, n - m, N)
            # degree m(n-m), all coefficients positive integers up to there
            deg = m * (n - m)
            assert g.coefficient(deg) != 0
            for k in range(deg + 1):
                c = g.coefficient(k)
                assert c.is_constant and c.constant_value() >= 1
            for k in range(deg + 1, N + 1):
                assert g.coefficient(k) == 0


def test_gaussian_recurrence_equals_quotient():
    # [n m] = (q)_n / ((q)_m (q)_(n-m)) in the truncated ring
    N = 30
    for n in range(11):
        for m in range(n + 1):
            quotient = qpoch(n, N) * (qpoch(m, N) * qpoch(n - m, N)).invert()
            assert gaussian_binomial(n, m, N) == quotient


# -- Rogers-Szego ----------------------------------------------------------------


def test_rogers_szego_small():
    N = 6
    x = ParamPoly.var(("x",), "x")
    one = ParamPoly.const(("x",), 1)
    assert rogers_szego(0, N) == QSeries.from_coeffs([one], qorder=N)
    assert rogers_szego(1, N) == QSeries.from_coeffs([1 + x], qorder=N)
    # H_2 = 1 + (1+q)x + x^2
    h2 = rogers_szego(2, N)
    assert h2.coefficient(0) == 1 + x + x**2
    assert h2.coefficient(1) == x
    for k in range(2, N + 1):
        assert h2.coefficient(k) == 0


def test_rogers_szego_at_x_one_counts_subsets():
    # H_n(1) = sum of Gaussian coefficients = 2^n at q=1; check via q=series sum
    N = 25
    for n in range(7):
        h = rogers_szego(n, N).eval_params({"x": 1})
        total = QSeries.zero(N)
        for m in range(n + 1):
            total = total + gaussian_binomial(n, m, N)
        assert h == total


# -- arithmetic functions ----------------------------------------------------------


def test_sigma():
    assert [sigma(k) for k in range(1, 13)] == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]
    with pytest.raises(ValueError):
        sigma(0)


def test_partition_p_matches_known_values():
    assert partition_p(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partition_p(30)[30] == 5604


def test_partition_p_matches_oracle():
    got = partition_p(20)
    for n in range(21):
        assert got[n] == partition_oracle(n)


def test_partition_oracle_bound():
    with pytest.raises(ValueError):
        partition_oracle(50)


def test_partition_p_agrees_with_euler_series():
    # 1/(q)_30 coefficients through q^20 count all partitions of n <= 20
    rng_free = qpoch(20, 20).invert()
    table = partition_p(20)
    for n in range(21):
        assert rng_free.coefficient(n) == table[n]


def test_triangular_weight():
    assert triangular_weight(0, 5) == QSeries.one(5)
    assert triangular_weight(1, 5) == QSeries.one(5)
    assert triangular_weight(3, 5) == QSeries.monomial(5, 3)
    assert triangular_weight(4, 5) == QSeries.zero(5)  # q^6 beyond qorder 5


def test_random_pochhammer_inverse_round_trip():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(0, 5)
        N = rng.randint(6, 20)
        p = qpoch(n, N)
        assert p * p.invert() == QSeries.one(N)
