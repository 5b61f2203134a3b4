import math

import numpy as np
import pytest

from dirichletlab import weights as W
from dirichletlab.errors import DomainError, RangeError
from dirichletlab.zeta import (
    KernelSpec,
    dirichlet_convolve,
    dirichlet_inverse,
    kernel_eval,
    prime_zeta,
    prime_zeta_unit_abscissa,
    solve_abscissa,
    weighted_zeta,
    zeta,
    zeta_equals_two_abscissa,
    zeta_eta,
    zeta_euler_maclaurin,
)

# reference constants (independent high-precision evaluations, frozen)
ZETA3 = 1.2020569031595943
PRIME_ZETA_15 = 0.8495626836215662
RHO = 1.3994333287263299
RHO1 = 1.728647238998184


def test_zeta_at_even_integers_closed_form():
    assert zeta(2.0).real == pytest.approx(math.pi**2 / 6.0, rel=1e-13)
    assert zeta(4.0).real == pytest.approx(math.pi**4 / 90.0, rel=1e-13)


def test_zeta_reference_value():
    assert zeta(3.0).real == pytest.approx(ZETA3, rel=1e-13)


def test_zeta_two_backends_agree():
    for s in (1.05, 1.5 + 2.3j, 2.0 - 5.0j, 3.7):
        a = zeta_eta(complex(s))
        b = zeta_euler_maclaurin(complex(s))
        assert a == pytest.approx(b, rel=1e-11)


def test_prime_zeta_reference_and_direct_sum(table_small):
    assert prime_zeta(1.5).real == pytest.approx(PRIME_ZETA_15, rel=1e-12)
    # at sigma = 3 the raw prime sum to 1e5 has tail < integral x^-3 = 5e-11
    direct = math.fsum(float(p) ** -3.0 for p in table_small.primes)
    assert prime_zeta(3.0).real == pytest.approx(direct, abs=1e-9)


def test_abscissas_and_residuals():
    rho = prime_zeta_unit_abscissa()
    rho1 = zeta_equals_two_abscissa()
    assert rho == pytest.approx(RHO, abs=1e-9)
    assert rho1 == pytest.approx(RHO1, abs=1e-9)
    assert abs(prime_zeta(rho).real - 1.0) <= 1e-9
    assert abs(zeta(rho1).real - 2.0) <= 1e-9
    # monotone brackets guaranteeing uniqueness of the roots
    assert prime_zeta(1.1).real > 1.0 > prime_zeta(2.0).real
    assert zeta(1.5).real > 2.0 > zeta(2.0).real


def test_solve_abscissa_on_transparent_function():
    root = solve_abscissa(lambda s: s * s, 4.0, 1.0, 3.0)
    assert root == pytest.approx(2.0, abs=1e-10)


def test_dirichlet_convolve_divisor_identity():
    ones = np.zeros(201)
    ones[1:] = 1.0
    d = dirichlet_convolve(ones, ones)
    from dirichletlab.arithmetic import divisor_count_table

    expect = divisor_count_table(200)
    assert np.array_equal(d[1:201], expect[1:201].astype(np.float64))


def test_dirichlet_inverse_of_zeta_is_mobius(table_small):
    from dirichletlab.arithmetic import factorize, mobius

    ones = np.zeros(301)
    ones[1:] = 1.0
    inv = dirichlet_inverse(ones)
    for n in range(1, 301):
        mu = 1 if n == 1 else mobius(factorize(table_small, n))
        assert inv[n] == pytest.approx(mu, abs=1e-12)


def test_dirichlet_inverse_roundtrip_is_identity():
    rng = np.random.default_rng(5)
    a = np.zeros(129)
    a[1] = 1.0
    a[2:] = rng.integers(-3, 4, size=127).astype(np.float64)
    conv = dirichlet_convolve(a, dirichlet_inverse(a))
    assert conv[1] == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(conv[2:129], 0.0, atol=1e-9)


def test_dirichlet_inverse_requires_unit_leading_term():
    a = np.zeros(10)
    a[1] = 0.0
    with pytest.raises(DomainError):
        dirichlet_inverse(a)


def ordered_factorization_recurrence(limit):
    F = [0] * (limit + 1)
    F[1] = 1
    for n in range(2, limit + 1):
        F[n] = sum(F[n // d] for d in range(2, n + 1) if n % d == 0)
    return F


def test_two_minus_zeta_inverse_counts_ordered_factorizations():
    limit = 500
    a = np.full(limit + 1, -1.0)
    a[0] = 0.0
    a[1] = 1.0  # coefficients of 2 - zeta(s)
    F = dirichlet_inverse(a)
    expect = ordered_factorization_recurrence(limit)
    for n in range(1, limit + 1):
        assert F[n] == pytest.approx(expect[n], abs=1e-9)
    assert round(F[10]) == 3


def test_weighted_zeta_brackets_closed_form():
    w = W.catalog("constant", 10**5)
    out = weighted_zeta(w, 1.0)  # sum n^-2 -> zeta(2)
    z2 = math.pi**2 / 6.0
    assert out.value < z2
    assert out.value + 2.0 * out.tail_bound > z2
    assert out.tail_bound > 0.0


def test_weighted_zeta_rejects_divergent_sigma():
    w = W.catalog("constant", 1000)
    with pytest.raises(DomainError):
        weighted_zeta(w, 0.5)


def test_kernel_dalpha_bergman_and_szego():
    # alpha = -1 (Bergman-type): 1/(s + conj(w) - 1)^2; alpha = 0: reciprocal form
    s, anchor = 0.8 + 0.3j, 1.1 - 0.2j
    v = kernel_eval(KernelSpec(family="dalpha", param=-1.0, anchor=anchor), s)
    assert v == pytest.approx(1.0 / (s + anchor.conjugate() - 1.0) ** 2, rel=1e-13)
    v0 = kernel_eval(KernelSpec(family="dalpha", param=0.0, anchor=anchor), s)
    assert v0 == pytest.approx(1.0 / (s + anchor.conjugate() - 1.0), rel=1e-13)


def test_kernel_hermitian_symmetry():
    for family, param in (("dalpha", -1.0), ("dalpha", 0.5), ("zeta_power", 2.0),
                          ("log_zeta", 0.0), ("mccarthy_pick", 0.0)):
        a = 1.3 + 0.4j
        b = 1.6 - 0.2j
        k_ab = kernel_eval(KernelSpec(family=family, param=param, anchor=b), a)
        k_ba = kernel_eval(KernelSpec(family=family, param=param, anchor=a), b)
        assert k_ab == pytest.approx(k_ba.conjugate(), rel=1e-12)


def test_kernel_diagonal_positive():
    for family, param in (("dalpha", -1.0), ("zeta_power", 2.0), ("mccarthy_pick", 0.0)):
        xi = 1.9 + 0.7j
        v = kernel_eval(KernelSpec(family=family, param=param, anchor=xi), xi)
        assert v.real > 0.0 and abs(v.imag) < 1e-12 * max(1.0, v.real)


def test_kernel_unknown_family():
    with pytest.raises((DomainError, RangeError)):
        KernelSpec(family="nope", param=0.0, anchor=1.0 + 0.0j)
