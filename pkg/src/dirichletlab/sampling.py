"""Atomic measures on the log-integer line and density/sampling diagnostics.

The measure of interest puts mass w_n/n at log n (optionally mirrored to
-log n).  Everything downstream is exact finite combinatorics: interval
masses come from compensated cumulative sums, the Beurling-type lower
density is an exact sweep over the critical window positions, and the
Carleson / continuity-at-infinity checks scan window anchors.

Interval convention: [a, b) half-open everywhere, which makes additivity
interval_mass(a,c) = interval_mass(a,b) + interval_mass(b,c) exact in
floating point (each atom lands in exactly one side).

All quantities are truncation-honest: positions above the horizon are
unknown rather than absent, so queries past domain_bound raise instead of
returning zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .accum import compensated_cumsum
from .errors import HorizonError, RangeError
from . import weights as _weights


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Atoms (positions strictly increasing, masses > 0) on [domain_low, domain_bound]."""

    positions: np.ndarray
    masses: np.ndarray
    domain_bound: float
    domain_low: float = 0.0
    cum: np.ndarray = None  # cum[k] = mass of the first k atoms; filled in __post_init__

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        mas = np.asarray(self.masses, dtype=np.float64)
        if pos.shape != mas.shape or pos.ndim != 1:
            raise RangeError("positions and masses must be 1-d arrays of equal length")
        if pos.size and np.any(np.diff(pos) <= 0.0):
            raise RangeError("positions must be strictly increasing")
        if np.any(mas <= 0.0) or not np.all(np.isfinite(mas)):
            raise RangeError("masses must be finite and positive")
        if pos.size and (pos[0] < self.domain_low or pos[-1] > self.domain_bound):
            raise RangeError("atoms escape the declared domain")
        cum = np.concatenate([[0.0], compensated_cumsum(mas)]) if mas.size else np.zeros(1)
        for a in (pos, mas, cum):
            a.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "masses", mas)
        object.__setattr__(self, "cum", cum)

    @property
    def total_mass(self) -> float:
        return float(self.cum[-1])


class CarlesonReport(NamedTuple):
    c_hat: float
    worst_xi: float


class DensityReport(NamedTuple):
    window_lengths: tuple
    inf_counts: tuple  # per-r infimum of count/r
    extrapolated: float


class ContinuityResult(NamedTuple):
    passed: bool
    radius: float
    block: float  # the window length h that worked (or the last one tried)
    blocking_x: float | None


def measure_from_weights(w, symmetric: bool = False) -> AtomicMeasure:
    """Atoms at log n (and optionally -log n) with mass w_n / n; zero weights dropped.

    In the symmetric variant the two atoms at +-log 1 = 0 coincide and merge,
    so n = 1 contributes a single atom of mass 2 w_1.
    """
    idx = np.flatnonzero(w.w)
    pos = np.log(idx.astype(np.float64))
    mas = w.w[idx] / idx
    bound = math.log(w.limit)
    if not symmetric:
        return AtomicMeasure(positions=pos, masses=mas, domain_bound=bound)
    if idx.size and idx[0] == 1:
        # the mirrored atoms at +-log 1 coincide: one origin atom of mass 2 w_1
        pos_all = np.concatenate([-pos[:0:-1], [0.0], pos[1:]])
        mas_all = np.concatenate([mas[:0:-1], 2.0 * mas[:1], mas[1:]])
    else:
        pos_all = np.concatenate([-pos[::-1], pos])
        mas_all = np.concatenate([mas[::-1], mas])
    return AtomicMeasure(
        positions=pos_all, masses=mas_all, domain_bound=bound, domain_low=-bound
    )


def interval_mass(m: AtomicMeasure, a: float, b: float) -> float:
    """Mass of [a, b); exact additivity at shared endpoints."""
    tol = 1e-12 * max(1.0, abs(m.domain_bound))
    if b > m.domain_bound + tol:
        raise HorizonError(
            f"query endpoint {b} beyond the truncation horizon {m.domain_bound}"
        )
    if a < m.domain_low - tol:
        raise HorizonError(f"query endpoint {a} below the covered range {m.domain_low}")
    if a >= b:
        return 0.0
    lo = int(np.searchsorted(m.positions, a, side="left"))
    hi = int(np.searchsorted(m.positions, b, side="left"))
    return float(m.cum[hi] - m.cum[lo])


def _window_masses(m: AtomicMeasure, anchors: np.ndarray, h: float) -> np.ndarray:
    lo = np.searchsorted(m.positions, anchors, side="left")
    hi = np.searchsorted(m.positions, anchors + h, side="left")
    return m.cum[hi] - m.cum[lo]


def carleson_check(m: AtomicMeasure, beta: float, xi_grid=None) -> CarlesonReport:
    """C_hat = max over the scan of nu[xi, xi+1) / (1+xi^2)^beta.

    The default scan anchors unit windows at the atoms themselves (every
    attained local maximum of the numerator starts at an atom) plus the
    domain's low end.
    """
    if xi_grid is None:
        anchors = m.positions[m.positions <= m.domain_bound - 1.0]
        anchors = np.concatenate([[m.domain_low], anchors])
    else:
        anchors = np.asarray(list(xi_grid), dtype=np.float64)
        if anchors.size == 0:
            raise RangeError("empty scan grid")
        if np.any(anchors + 1.0 > m.domain_bound + 1e-12) or np.any(
            anchors < m.domain_low - 1e-12
        ):
            raise HorizonError("scan grid leaves the covered range")
    if anchors.size == 0:
        return CarlesonReport(c_hat=0.0, worst_xi=m.domain_low)
    q = _window_masses(m, anchors, 1.0) / (1.0 + anchors**2) ** beta
    i = int(np.argmax(q))
    return CarlesonReport(c_hat=float(q[i]), worst_xi=float(anchors[i]))


def lambda_set(m: AtomicMeasure, beta: float, r: float, delta: float) -> np.ndarray:
    """Points r*k whose window [rk, r(k+1)) carries mass >= delta (1+(rk)^2)^beta.

    Returns the point set (not the indices k): its density is what gets
    compared against interval length / 2 pi downstream.
    """
    if r <= 0.0 or delta <= 0.0:
        raise RangeError("r and delta must be positive")
    k_lo = math.ceil(m.domain_low / r - 1e-12)
    k_hi = math.floor(m.domain_bound / r + 1e-12) - 1
    if k_hi < k_lo:
        return np.empty(0, dtype=np.float64)
    ks = np.arange(k_lo, k_hi + 1, dtype=np.float64)
    mass = _window_masses(m, r * ks, r)
    keep = mass >= delta * (1.0 + (r * ks) ** 2) ** beta
    return r * ks[keep]


def beurling_lower_density(
    points: Sequence[float], r_list: Sequence[float], window: tuple | None = None
) -> DensityReport:
    """Exact inf over subwindows of count/r, per window length r.

    Counts are over open intervals (xi, xi+r) with xi swept across [0, T-r];
    the count is piecewise constant and every attained minimum starts either
    at 0, at a point of the set, or at T-r, so sweeping those anchors is
    exact.  The extrapolated figure is the value at the largest r; finite
    windows carry an intrinsic 2/r resolution, so no limit is claimed.
    """
    pts = np.sort(np.asarray(list(points), dtype=np.float64))
    if pts.size == 0:
        raise RangeError("empty point set")
    lo, hi = (0.0, float(pts[-1])) if window is None else (float(window[0]), float(window[1]))
    T = hi - lo
    if T <= 0:
        raise RangeError("window must have positive length")
    rs = sorted(float(r) for r in r_list)
    if not rs:
        raise RangeError("need at least one window length")
    if rs[-1] > T / 5.0:
        raise RangeError(f"window length {rs[-1]} too coarse for the range {T} (need r <= T/5)")
    infs = []
    for r in rs:
        anchors = np.concatenate([[lo], pts[(pts >= lo) & (pts <= hi - r)], [hi - r]])
        cnt = np.searchsorted(pts, anchors + r, side="left") - np.searchsorted(
            pts, anchors, side="right"
        )
        infs.append(float(cnt.min()) / r)
    return DensityReport(
        window_lengths=tuple(rs), inf_counts=tuple(infs), extrapolated=infs[-1]
    )


def continuity_at_infinity(
    m: AtomicMeasure,
    beta: float,
    eps: float,
    h_min: float = 2.0**-12,
    clear_margin: float = 5.0,
) -> ContinuityResult:
    """Search (R, h) with nu[x, x+h)/(1+x^2)^beta <= eps for all |x| >= R.

    h walks down 1, 1/2, 1/4, ...; for each h the violating anchors are
    scanned (atoms and atoms - h, the attainable extrema).  A witness only
    counts if the clean zone [R, horizon] keeps `clear_margin` of headroom,
    since beyond the horizon the measure is unknown, not zero.  Failure
    reports the blocking atom nearest the horizon for the smallest h tried.
    """
    if eps <= 0.0:
        raise RangeError("eps must be positive")
    h = 1.0
    blocking = None
    while h >= h_min:
        anchors = np.unique(np.concatenate([m.positions, m.positions - h]))
        anchors = anchors[(anchors >= m.domain_low) & (anchors + h <= m.domain_bound)]
        if anchors.size == 0:
            return ContinuityResult(passed=True, radius=0.0, block=h, blocking_x=None)
        q = _window_masses(m, anchors, h) / (1.0 + anchors**2) ** beta
        bad = anchors[q > eps]
        if bad.size == 0:
            return ContinuityResult(passed=True, radius=0.0, block=h, blocking_x=None)
        need = float(np.max(np.abs(bad))) + h
        if need <= m.domain_bound - clear_margin:
            return ContinuityResult(passed=True, radius=need, block=h, blocking_x=None)
        blocking = float(bad[np.argmax(np.abs(bad))])
        h /= 2.0
    return ContinuityResult(passed=False, radius=math.inf, block=2.0 * h, blocking_x=blocking)


def kadec_example(blocks: int, table) -> "_weights.WeightSequence":
    """w_{n_k} = n_k on the integers whose log is nearest each k, zero elsewhere."""
    return _weights.catalog("kadec", table.limit, blocks=blocks)


def kadec_atoms(blocks: int) -> AtomicMeasure:
    """Unit atoms at log n_k for k = 1..blocks.

    Up to k = 36 the positions are the honest log n_k of the constructed
    integers; past that e^k exceeds 2^53 and the nearest-integer log is k to
    strictly better than double precision, so the position is written as k
    exactly.  Either way |position - k| <= 1/5.
    """
    if blocks < 1:
        raise RangeError("need at least one block")
    k_exact = min(blocks, 36)
    idx = _weights.kadec_indices(k_exact)
    pos = [math.log(n) for n in idx]
    pos.extend(float(k) for k in range(37, blocks + 1))
    return AtomicMeasure(
        positions=np.asarray(pos),
        masses=np.ones(blocks),
        domain_bound=blocks + 0.2,
    )
