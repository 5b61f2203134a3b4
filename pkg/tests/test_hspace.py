import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirichletlab import weights as W
from dirichletlab.errors import MembershipError, RangeError
from dirichletlab.hspace import (
    bohr_inverse,
    bohr_lift,
    derivative,
    evaluate,
    evaluate_multiindex,
    hw_inner,
    hw_kernel,
    hw_norm,
    monomial,
    poly_from_coeffs,
    poly_from_dict,
    poly_to_dict,
)


def sparse(d, limit):
    """Polynomial with coefficients {n: a_n}, zeros elsewhere."""
    a = np.zeros(limit, dtype=np.complex128)  # a[k] holds a_{k+1}
    for n, c in d.items():
        a[n - 1] = c
    return poly_from_coeffs(a)


def test_monomial_evaluates_as_power():
    m = monomial(7, c=2.0)
    s = 1.4 - 0.9j
    assert evaluate(m, s) == pytest.approx(2.0 * 7.0 ** (-s), rel=1e-15)


def test_evaluate_matches_direct_sum():
    rng = np.random.default_rng(2)
    a = rng.standard_normal(40) + 1j * rng.standard_normal(40)  # a_1..a_40
    F = poly_from_coeffs(a)
    s = 0.9 + 3.0j
    direct = sum(a[n - 1] * n ** (-s) for n in range(1, 41))
    assert evaluate(F, s) == pytest.approx(direct, rel=1e-13)


def test_derivative_coefficients_and_value():
    F = sparse({2: 1.0, 9: -0.5}, 9)
    dF = derivative(F)
    assert dF.coeffs[2] == pytest.approx(-math.log(2.0))
    assert dF.coeffs[9] == pytest.approx(0.5 * math.log(9.0))
    s = 1.1 + 0.2j
    h = 1e-6
    fd = (evaluate(F, s + h) - evaluate(F, s - h)) / (2.0 * h)
    assert evaluate(dF, s) == pytest.approx(fd, rel=1e-8)


def test_monomial_norm_is_inverse_weight():
    w = W.catalog("divisor", 100)
    for n in (1, 5, 64):
        assert hw_norm(monomial(n), w) ** 2 == pytest.approx(1.0 / w.w[n], rel=1e-14)


def test_monomials_orthogonal():
    w = W.catalog("constant", 50)
    assert hw_inner(monomial(3), monomial(4, limit=50), w) == 0.0
    v = hw_inner(monomial(6, c=2.0), monomial(6, c=1.0 + 1.0j), w)
    assert v == pytest.approx(2.0 * (1.0 - 1.0j), rel=1e-14)  # a conj(b) / w_6


@given(st.lists(st.complex_numbers(max_magnitude=5.0, allow_nan=False,
                                   allow_infinity=False), min_size=1, max_size=30))
@settings(max_examples=50)
def test_hw_norm_is_weighted_coefficient_sum(coeff_list):
    w = W.catalog("log_power", 64, alpha=1.0)
    a = np.zeros(31, dtype=np.complex128)
    a[: len(coeff_list)] = coeff_list
    F = poly_from_coeffs(a)
    direct = math.fsum(abs(a[n - 1]) ** 2 / w.w[n] for n in range(1, 32))
    assert hw_norm(F, w) ** 2 == pytest.approx(direct, rel=1e-12, abs=1e-300)


def test_norm_rejects_poly_past_weight_truncation():
    w = W.catalog("constant", 10)
    with pytest.raises(RangeError):
        hw_norm(monomial(30), w)


def test_membership_error_off_support():
    wk = W.catalog("kadec", 4000, blocks=8)
    with pytest.raises(MembershipError):
        hw_norm(monomial(4), wk)  # w_4 = 0: direction excluded
    assert hw_norm(monomial(3), wk) ** 2 == pytest.approx(1.0 / 3.0, rel=1e-14)


def test_kernel_coefficients_are_weighted_translates():
    w = W.catalog("divisor", 100)
    xi = 1.7 + 0.4j
    k = hw_kernel(w, xi)
    for n in (1, 2, 3, 10, 99):
        assert k.coeffs[n] == pytest.approx(w.w[n] * n ** (-xi.conjugate()), rel=1e-14)


def test_kernel_reproduces_point_evaluations():
    rng = np.random.default_rng(20260817)
    names = ["constant", "divisor", "log_power", "inv_divisor_pow"]
    for trial in range(10):
        name = names[trial % len(names)]
        params = {"alpha": 0.7} if name in ("log_power", "inv_divisor_pow") else {}
        w = W.catalog(name, 200, **params)
        a = (rng.standard_normal(200) + 1j * rng.standard_normal(200)) * np.sqrt(w.w[1:])
        F = poly_from_coeffs(a)
        xi = complex(1.6 + rng.random(), rng.standard_normal())
        lhs = hw_inner(F, hw_kernel(w, xi), w)
        assert lhs == pytest.approx(evaluate(F, xi), rel=1e-12, abs=1e-12)


def test_bohr_roundtrip_exact(table_small):
    rng = np.random.default_rng(9)
    d = {int(n): complex(rng.standard_normal(), rng.standard_normal())
         for n in rng.choice(np.arange(1, 121), size=25, replace=False)}
    F = sparse(d, 120)
    G = bohr_lift(F, table_small)
    back = bohr_inverse(G, table_small, F.limit)
    assert np.array_equal(back.coeffs, F.coeffs)


def test_bohr_lift_evaluates_identically(table_small):
    F = sparse({1: 1.0, 2: -2.0, 12: 0.5 + 1.0j, 97: 3.0}, 97)
    G = bohr_lift(F, table_small)
    for s in (1.2 + 0.0j, 0.8 - 2.0j):
        assert evaluate_multiindex(G, table_small, s) == pytest.approx(
            evaluate(F, s), rel=1e-13
        )


def test_bohr_lift_indexes_by_prime_exponents(table_small):
    G = bohr_lift(sparse({12: 1.0}, 12), table_small)  # 12 = 2^2 * 3
    assert dict(G.terms) == {(2, 1): 1.0 + 0.0j}


def test_poly_dict_codec_roundtrip():
    F = sparse({3: 1.0, 17: -2.5 + 1.0j}, 20)
    blob = poly_to_dict(F)
    back = poly_from_dict(blob)
    assert back.limit == F.limit
    assert np.array_equal(back.coeffs, F.coeffs)
