"""Truncated Dirichlet polynomials and the weighted Hilbert-space geometry.

Everything here is finite-dimensional on purpose: a polynomial carries its
truncation level N, norms and inner products are exact finite sums, and the
reproducing identity <F, k_xi> = F(xi) holds algebraically on shared support
(no tail enters).  The Bohr lift is pure bookkeeping between integer indices
and prime-exponent vectors.
"""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .accum import fsum, fsum_complex
from .arithmetic import SieveTable, factorize
from .errors import MembershipError, RangeError, TruncationError


@dataclass(frozen=True)
class DirichletPolynomial:
    """Coefficients a_1..a_N of sum a_n n^(-s); index 0 is unused and zero."""

    limit: int
    coeffs: np.ndarray  # complex128, length limit + 1

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.shape != (self.limit + 1,):
            raise RangeError(
                f"coefficient array must have length N+1={self.limit + 1}, got {arr.shape}"
            )
        if arr[0] != 0:
            raise RangeError("index 0 is not a Dirichlet index; coeffs[0] must be 0")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise RangeError("coefficients must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)


def poly_from_coeffs(coeffs) -> DirichletPolynomial:
    """Build from a_1..a_N (index 0 NOT included)."""
    arr = np.concatenate([[0.0 + 0.0j], np.asarray(coeffs, dtype=np.complex128)])
    return DirichletPolynomial(limit=len(arr) - 1, coeffs=arr)


def monomial(n: int, limit: int | None = None, c: complex = 1.0) -> DirichletPolynomial:
    limit = n if limit is None else limit
    if not 1 <= n <= limit:
        raise RangeError(f"monomial index {n} outside 1..{limit}")
    arr = np.zeros(limit + 1, dtype=np.complex128)
    arr[n] = c
    return DirichletPolynomial(limit=limit, coeffs=arr)


def poly_to_dict(F: DirichletPolynomial) -> dict:
    """JSON form {"N": int, "re": [...], "im": [...]}, coefficients a_1..a_N."""
    return {
        "N": F.limit,
        "re": [float(x) for x in F.coeffs[1:].real],
        "im": [float(x) for x in F.coeffs[1:].imag],
    }


def poly_from_dict(d: dict) -> DirichletPolynomial:
    n = int(d["N"])
    re = np.asarray(d["re"], dtype=np.float64)
    im = np.asarray(d["im"], dtype=np.float64)
    if re.shape != (n,) or im.shape != (n,):
        raise RangeError("re/im arrays must both have length N")
    return poly_from_coeffs(re + 1j * im)


def derivative(F: DirichletPolynomial) -> DirichletPolynomial:
    # d/ds sum a_n n^(-s) = -sum a_n log(n) n^(-s); the n=1 term drops.
    n = np.arange(F.limit + 1, dtype=np.float64)
    n[0] = 1.0
    arr = -F.coeffs * np.log(n)
    arr[0] = 0.0
    return DirichletPolynomial(limit=F.limit, coeffs=arr)


def evaluate(F: DirichletPolynomial, s: complex) -> complex:
    """Compensated evaluation of F(s) = sum a_n exp(-s log n)."""
    idx = F.support()
    if idx.size == 0:
        return 0.0 + 0.0j
    terms = F.coeffs[idx] * np.exp(-complex(s) * np.log(idx.astype(np.float64)))
    return fsum_complex(terms)


def _check_membership(F: DirichletPolynomial, w) -> np.ndarray:
    if F.limit > w.limit:
        raise RangeError(
            f"polynomial truncation {F.limit} exceeds weight truncation {w.limit}"
        )
    idx = F.support()
    if idx.size and np.any(w.w[idx] == 0.0):
        bad = idx[np.flatnonzero(w.w[idx] == 0.0)[0]]
        raise MembershipError(
            f"coefficient a_{bad} != 0 but w_{bad} = 0: direction excluded from the space"
        )
    return idx


def hw_norm(F: DirichletPolynomial, w) -> float:
    """sqrt(sum |a_n|^2 / w_n) over the support of F."""
    idx = _check_membership(F, w)
    if idx.size == 0:
        return 0.0
    a = F.coeffs[idx]
    return math.sqrt(fsum((a.real**2 + a.imag**2) / w.w[idx]))


def hw_inner(F: DirichletPolynomial, G: DirichletPolynomial, w) -> complex:
    """<F, G>_w = sum a_n conj(b_n) / w_n over shared support."""
    fi = _check_membership(F, w)
    _check_membership(G, w)
    n = min(F.limit, G.limit)
    idx = fi[fi <= n]
    idx = idx[G.coeffs[idx] != 0]
    if idx.size == 0:
        return 0.0 + 0.0j
    terms = F.coeffs[idx] * np.conj(G.coeffs[idx]) / w.w[idx]
    return fsum_complex(terms)


def hw_kernel(w, xi: complex, limit: int | None = None) -> DirichletPolynomial:
    """Truncated reproducing kernel at xi: coefficients w_n n^(-conj(xi)).

    For constant weights this is the translate of the truncated zeta series,
    k(s) = sum n^(-s-conj(xi)).
    """
    limit = w.limit if limit is None else int(limit)
    if limit > w.limit:
        raise RangeError(f"kernel truncation {limit} exceeds weight truncation {w.limit}")
    n = np.arange(limit + 1, dtype=np.float64)
    n[0] = 1.0
    arr = w.w[: limit + 1] * np.exp(-np.conj(complex(xi)) * np.log(n))
    arr = arr.astype(np.complex128)
    arr[0] = 0.0
    return DirichletPolynomial(limit=limit, coeffs=arr)


@dataclass(frozen=True)
class MultiIndexSeries:
    """Sparse power series sum c_nu z^nu on the infinite polytorus.

    Keys are prime-exponent tuples indexed by prime *index* (z_0 <-> 2^{-s}),
    with trailing zeros trimmed; () is the constant term.
    """

    terms: Dict[Tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self):
        for nu in self.terms:
            if any((e < 0 or not isinstance(e, (int, np.integer))) for e in nu):
                raise RangeError(f"exponent vector {nu} must be nonnegative integers")
            if nu and nu[-1] == 0:
                raise RangeError(f"exponent vector {nu} must have trailing zeros trimmed")


def _exponent_vector(n: int, table: SieveTable) -> Tuple[int, ...]:
    if n == 1:
        return ()
    fac = factorize(table, n)
    top = int(np.searchsorted(table.primes, fac[-1][0]))
    vec = [0] * (top + 1)
    for p, e in fac:
        vec[int(np.searchsorted(table.primes, p))] = e
    return tuple(vec)


def bohr_lift(F: DirichletPolynomial, table: SieveTable) -> MultiIndexSeries:
    """Map a_n to the coefficient of z^(exponent vector of n)."""
    if F.limit > table.limit:
        raise RangeError(f"polynomial truncation {F.limit} exceeds sieve limit {table.limit}")
    terms: Dict[Tuple[int, ...], complex] = {}
    for n in F.support():
        terms[_exponent_vector(int(n), table)] = complex(F.coeffs[n])
    return MultiIndexSeries(terms=terms)


def bohr_inverse(G: MultiIndexSeries, table: SieveTable, limit: int) -> DirichletPolynomial:
    """Inverse bookkeeping: z^nu back to the integer prod p_i^nu_i <= limit."""
    arr = np.zeros(limit + 1, dtype=np.complex128)
    primes = table.primes
    for nu, c in G.terms.items():
        if len(nu) > len(primes):
            raise RangeError(
                f"exponent vector of length {len(nu)} needs more primes than the sieve holds"
            )
        n = 1
        for i, e in enumerate(nu):
            if e:
                n *= int(primes[i]) ** int(e)
        if n > limit:
            raise TruncationError(f"monomial reconstructs to n={n} beyond truncation {limit}")
        arr[n] += c
    return DirichletPolynomial(limit=limit, coeffs=arr)


def evaluate_multiindex(G: MultiIndexSeries, table: SieveTable, s: complex) -> complex:
    """Evaluate the lifted series at z_i = p_i^(-s)."""
    s = complex(s)
    vals = []
    for nu, c in G.terms.items():
        z = complex(c)
        for i, e in enumerate(nu):
            if e:
                z *= float(table.primes[i]) ** (-s * e)
        vals.append(z)
    return fsum_complex(np.asarray(vals, dtype=np.complex128))
