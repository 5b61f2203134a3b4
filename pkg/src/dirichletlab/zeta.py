"""Zeta-type evaluations on the right half plane, reproducing-kernel
formulas, critical abscissas, and Dirichlet-series coefficient algebra.

Two genuinely independent evaluation routes are kept for the zeta function:
an accelerated alternating (eta) series and Euler-Maclaurin summation.  The
public zeta() prefers the eta route and switches to Euler-Maclaurin near the
zeros of 1-2^(1-s) (where the eta-to-zeta division is ill conditioned) and
for large imaginary part.  Tests compare the two directly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import optimize, special

from . import arithmetic
from .accum import compensated_sum
from .errors import DomainError

# Bernoulli numbers B_2..B_30 (exact rationals, rounded once).
_B2J = [
    float(Fraction(n, d))
    for n, d in [
        (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6),
        (-3617, 510), (43867, 798), (-174611, 330), (854513, 138),
        (-236364091, 2730), (8553103, 6), (-23749461029, 870),
        (8615841276005, 14322),
    ]
]

_ETA_RATE = math.log(3.0 + math.sqrt(8.0))  # per-term gain of the acceleration
_T_MAX = 1e5


def zeta_eta(s: complex, target: float = 1e-15) -> complex:
    """Accelerated alternating-series evaluation of zeta.

    Chebyshev-weighted acceleration of eta(s) = sum (-1)^(n-1) n^(-s); the
    term count grows like |t| because the acceleration error picks up a
    factor ~exp(pi*|t|/2) off the real axis.
    """
    s = complex(s)
    t = abs(s.imag)
    digits = -math.log(target)
    n = int((digits + 0.5 * math.pi * t + math.log(1.0 + 2.0 * t + 4.0) + 3.0) / _ETA_RATE) + 2
    if n > 380:  # (3+sqrt 8))^n overflows float64 past ~400
        raise DomainError(f"eta acceleration unsupported at |t|={t:.3g}; use the Euler-Maclaurin route")
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0.0 + 0.0j
    for k in range(n):
        c = b - c
        acc += c * complex(k + 1) ** (-s)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    eta = acc / d
    return eta / (1.0 - 2.0 ** (1.0 - s))


def zeta_euler_maclaurin(s: complex, tail_terms: int = 14) -> complex:
    """Euler-Maclaurin evaluation of zeta; independent of the eta route."""
    s = complex(s)
    M = max(25, int(1.6 * abs(s.imag)) + 10)
    n = np.arange(1, M, dtype=np.float64)
    powers = np.exp(-s * np.log(n))
    head = complex(compensated_sum(powers.real), compensated_sum(powers.imag))
    out = head + M ** (1.0 - s) / (s - 1.0) + 0.5 * M ** (-s)
    # correction terms B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(1-s-2j)
    poch = s
    mpow = M ** (-s - 1.0)
    fact = 2.0
    for j in range(1, tail_terms + 1):
        out += _B2J[j - 1] / fact * poch * mpow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        mpow /= M * M
        fact *= (2 * j + 1) * (2 * j + 2)
    return out


def zeta(s: complex) -> complex:
    """Riemann zeta on Re s > 0, s != 1 (principal evaluation).

    Stated accuracy 1e-10 absolute for Re s >= 1/2 and |t| <= 100; the same
    routes remain usable well beyond that strip but carry no promise there.
    """
    s = complex(s)
    if s == 1.0:
        raise DomainError("pole at s=1")
    if s.real <= 0.0:
        raise DomainError(f"Re s = {s.real:.3g} <= 0 unsupported (no functional-equation branch)")
    if abs(s.imag) > _T_MAX:
        raise DomainError(f"|t| = {abs(s.imag):.3g} beyond supported strip")
    den = 1.0 - 2.0 ** (1.0 - s)
    if abs(s.imag) <= 250.0 and abs(den) >= 0.02:
        return zeta_eta(s)
    return zeta_euler_maclaurin(s)


@lru_cache(maxsize=None)
def _mobius_small(k: int) -> int:
    table = arithmetic.build_sieve(128)
    return arithmetic.mobius(arithmetic.factorize(table, k))


def prime_zeta(s: complex, cutoff: float = 50.0) -> complex:
    """Prime zeta via the Mobius-log expansion sum mu(k)/k log zeta(ks).

    Valid for Re s > 1; terms are dropped once k*Re(s) exceeds the cutoff,
    where |log zeta(ks)| < 2^-cutoff is below double rounding.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError(f"prime_zeta needs Re s > 1, got {s.real:.6g}")
    total = 0.0 + 0.0j
    k = 1
    while k * s.real <= cutoff:
        mu = _mobius_small(k)
        if mu:
            total += mu / k * cmath.log(zeta(k * s))
        k += 1
    return total


def solve_abscissa(func, target: float, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of func(x) = target on [lo, hi] for strictly monotone func.

    Brent bracketing refined to tol, then the residual is re-checked against
    1e-9; a residual above that is treated as a failure, not a result.
    """
    flo = func(lo) - target
    fhi = func(hi) - target
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise DomainError(f"no sign change on [{lo}, {hi}] for target {target}")
    root = optimize.brentq(lambda x: func(x) - target, lo, hi, xtol=tol, rtol=8.9e-16)
    residual = abs(func(root) - target)
    if residual > 1e-9:
        raise DomainError(f"abscissa solve residual {residual:.3g} exceeds 1e-9")
    return float(root)


@lru_cache(maxsize=None)
def prime_zeta_unit_abscissa() -> float:
    """The point rho > 1 where the prime zeta function equals 1."""
    return solve_abscissa(lambda x: prime_zeta(x).real, 1.0, 1.05, 3.0)


@lru_cache(maxsize=None)
def zeta_equals_two_abscissa() -> float:
    """The point rho1 > 1 where zeta equals 2."""
    return solve_abscissa(lambda x: zeta(x).real, 2.0, 1.2, 3.0)


_KERNEL_FAMILIES = ("dalpha", "zeta_power", "log_zeta", "mccarthy_pick", "besov")
_REGION_MARGIN = 1e-9


@dataclass(frozen=True)
class KernelSpec:
    """Reproducing-kernel family selector.

    family "dalpha" takes the smoothness parameter alpha <= 1; "zeta_power"
    and "besov" take a power gamma; "log_zeta" and "mccarthy_pick" take no
    parameter.  anchor is the fixed second argument xi of the kernel.
    """

    family: str
    param: float = 0.0
    anchor: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.family not in _KERNEL_FAMILIES:
            raise DomainError(f"unknown kernel family {self.family!r}")
        if self.family == "dalpha" and self.param > 1.0:
            raise DomainError("dalpha kernels are defined for alpha <= 1")
        if self.family == "zeta_power" and self.param <= 0.0:
            raise DomainError("zeta_power needs gamma > 0")
        if self.family == "besov" and self.param < 0.0:
            raise DomainError("besov needs gamma >= 0")


def _require_region(z: complex, threshold: float, what: str):
    if z.real <= threshold + _REGION_MARGIN:
        raise DomainError(f"{what}: Re(s + conj(anchor)) = {z.real:.9g} not above {threshold:.9g}")


def kernel_eval(spec: KernelSpec, s: complex) -> complex:
    """Evaluate the kernel k(s, anchor) for the chosen family.

    Powers and logs are principal branch throughout.
    """
    z = complex(s) + complex(spec.anchor).conjugate()
    if spec.family == "dalpha":
        a = spec.param
        _require_region(z, 1.0, "dalpha kernel")
        zz = z - 1.0
        if a == 1.0:
            return -cmath.log(zz) / math.pi
        if a == 0.0:
            return 1.0 / zz  # family constant normalized to 1
        if a < 0.0:
            c = (-a) * 2.0 ** (-a - 1.0)
        else:
            c = 2.0 ** (a - 1.0) / (1.0 - a)
        return c * zz ** (a - 1.0)
    if spec.family == "zeta_power":
        _require_region(z, 1.0, "zeta_power kernel")
        return cmath.exp(spec.param * cmath.log(zeta(z)))
    if spec.family == "log_zeta":
        _require_region(z, 1.0, "log_zeta kernel")
        return cmath.log(zeta(z))
    if spec.family == "mccarthy_pick":
        _require_region(z, zeta_equals_two_abscissa(), "mccarthy_pick kernel")
        return 1.0 / (2.0 - zeta(z))
    # besov
    _require_region(z, prime_zeta_unit_abscissa(), "besov kernel")
    g = spec.param
    w = 1.0 - prime_zeta(z)
    if g == 0.0:
        return -cmath.log(w)
    return cmath.exp(-g * cmath.log(w))


class TruncatedSum(NamedTuple):
    value: float
    tail_bound: float


def _envelope_constant(w, alpha: float, sigma0: float = 1.0) -> float:
    """Upper envelope max of S(x) (log x)^alpha / x^sigma0 over the top decades."""
    from . import weights as _weights  # deferred: weights imports this module

    S = _weights.partial_sums(w)
    limit = w.limit
    lo = max(10.0, limit / 100.0)
    xs = np.unique(np.floor(np.logspace(math.log10(lo), math.log10(limit), 60)).astype(np.int64))
    xf = xs.astype(np.float64)
    vals = S[xs] * np.log(xf) ** alpha / xf**sigma0
    return float(np.max(vals))


def _log_power_integral_tail(u: float, L: float, alpha: float) -> float:
    """integral_N^inf x^(-1-u) (log x)^(-alpha) dx = u^(alpha-1) Gamma(1-alpha, uL)."""
    if alpha == 1.0:
        return float(special.exp1(u * L))
    a = 1.0 - alpha
    return float(u ** (alpha - 1.0) * special.gamma(a) * special.gammaincc(a, u * L))


def weighted_zeta(w, sigma: float) -> TruncatedSum:
    """Truncated sum of w_n n^(-2 sigma) with an envelope-based tail estimate.

    The tail uses the measured upper Chebyshev envelope C of the partial
    sums: tail <= 2 sigma C integral_N^inf x^(sigma0 - 2 sigma) (log x)^(-alpha) dx/x.
    Near the abscissa the tail term dominates any feasible truncation; callers
    comparing against closed forms should use value + tail_bound.
    """
    sigma = float(sigma)
    sigma0 = getattr(w, "sigma0", 1.0)
    if 2.0 * sigma <= sigma0:
        raise DomainError(f"weighted zeta sum needs 2 sigma > {sigma0}, got sigma={sigma}")
    arr = w.w
    n = np.arange(1, w.limit + 1, dtype=np.float64)
    value = compensated_sum(arr[1:] * n ** (-2.0 * sigma))
    alpha = w.expected_alpha if w.expected_alpha is not None else 0.0
    c_env = _envelope_constant(w, alpha, sigma0)
    u = 2.0 * sigma - sigma0
    L = math.log(w.limit)
    tail = 2.0 * sigma * c_env * _log_power_integral_tail(u, L, alpha)
    return TruncatedSum(value=value, tail_bound=float(tail))


def dirichlet_convolve(a, b):
    """Dirichlet convolution of coefficient arrays indexed from 1 (index 0 unused).

    Exact when both inputs are Python/numpy integers, float64 otherwise.
    """
    a = list(a)
    b = list(b)
    N = min(len(a), len(b)) - 1
    exact = all(isinstance(x, (int, np.integer)) for x in a[1 : N + 1] + b[1 : N + 1])
    c = [0] * (N + 1) if exact else np.zeros(N + 1)
    for n in range(1, N + 1):
        an = a[n]
        if an == 0:
            continue
        for k in range(1, N // n + 1):
            c[n * k] += an * b[k]
    return c


def dirichlet_inverse(a, limit: int | None = None):
    """Coefficients of the reciprocal Dirichlet series, a_1 != 0 required.

    Integer inputs with a_1 = +-1 are inverted in exact integer arithmetic
    (the inverse is integral in that case); everything else in float64.
    """
    a = list(a)
    N = (limit if limit is not None else len(a) - 1)
    if N + 1 > len(a):
        raise DomainError("limit exceeds the coefficient array")
    if N < 1 or a[1] == 0:
        raise DomainError("leading coefficient a_1 must be nonzero")
    ints = all(isinstance(x, (int, np.integer)) or (isinstance(x, float) and x.is_integer()) for x in a[1 : N + 1])
    if ints and abs(a[1]) == 1:
        a1 = int(a[1])
        ai = [int(x) for x in a[: N + 1]]
        b = [0] * (N + 1)
        c = [0] * (N + 1)
        for n in range(1, N + 1):
            # dividing by a1 is multiplying when a1 is +-1, so b stays integral
            b[n] = (1 if n == 1 else -c[n]) * a1
            if b[n]:
                for k in range(2, N // n + 1):
                    c[n * k] += b[n] * ai[k]
        return b
    af = np.asarray([float(x) for x in a[: N + 1]], dtype=np.float64)
    b = np.zeros(N + 1)
    c = np.zeros(N + 1)
    for n in range(1, N + 1):
        b[n] = ((1.0 if n == 1 else 0.0) - c[n]) / af[1]
        if b[n] != 0.0 and 2 * n <= N:
            c[2 * n :: n] += b[n] * af[2 : N // n + 1]
    return b
