"""Singularity-to-partial-sums workflow for weighted Dirichlet sums.

The chain: profile F(sigma) = sum w_n n^(-sigma) above its divergence
abscissa sigma0, fit the singularity type at sigma0, then predict the
partial-sum growth S(x) ~ c x^sigma0 / (log x)^beta and compare against the
measured sums.

Truncation honesty drives the design.  Near sigma0 a truncated profile is
mostly tail, so fits are restricted to profile points whose envelope tail
bound stays under a percent of the value; with 10^7 terms that pushes the
usable window out to sigma - sigma0 of a few tenths.  At that distance a raw
two-parameter power fit is polluted by the regular part of F, so the model
carries a linear log-correction term, and the logarithmic-singularity case
is decided by letting the two models compete on relative residuals rather
than by the slope alone.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .accum import compensated_sum
from .errors import DomainError, FitError, RangeError
from .zeta import _envelope_constant, _log_power_integral_tail
from . import weights as _weights


class MellinPoint(NamedTuple):
    sigma: float
    value: float
    tail_bound: float


class SingularityFit(NamedTuple):
    sigma0: float
    beta_hat: float
    g_at_sigma0: float
    fit_window: tuple  # (min, max) of sigma - sigma0 actually used
    residual_rms: float
    log_singularity: bool


class ComparisonRow(NamedTuple):
    x: float
    predicted: float
    measured: float
    ratio: float


def mellin_profile(w, sigma_grid: Sequence[float], limit: int | None = None) -> list:
    """Truncated F(sigma) with envelope tail bounds, one MellinPoint per sigma."""
    N = w.limit if limit is None else min(int(limit), w.limit)
    sigma0 = w.sigma0
    sig = [float(s) for s in sigma_grid]
    if any(s <= sigma0 for s in sig):
        bad = min(sig)
        raise DomainError(
            f"sigma = {bad} at or below the divergence abscissa {sigma0}: the sum has no value there"
        )
    alpha = w.expected_alpha if w.expected_alpha is not None else 0.0
    c_env = _envelope_constant(w, alpha, sigma0)
    L = math.log(N)
    arr = w.w[1 : N + 1]
    logn = np.log(np.arange(1, N + 1, dtype=np.float64))
    out = []
    for s in sorted(sig):
        value = compensated_sum(arr * np.exp(-s * logn))
        tail = s * c_env * _log_power_integral_tail(s - sigma0, L, alpha)
        out.append(MellinPoint(sigma=s, value=float(value), tail_bound=float(tail)))
    return out


def _power_fit(u, logF):
    # log F = a log u + b + c u + d u^2; the analytic part of F contributes
    # exactly such a series through log(1 + regular/singular) at this depth
    A = np.column_stack([np.log(u), np.ones_like(u), u, u * u])
    coef, *_ = np.linalg.lstsq(A, logF, rcond=None)
    pred = A @ coef
    return coef, pred


def _log_fit(u, F):
    # F = A log(1/u) + B + C u + D u^2
    A = np.column_stack([-np.log(u), np.ones_like(u), u, u * u])
    coef, *_ = np.linalg.lstsq(A, F, rcond=None)
    pred = A @ coef
    return coef, pred


def _loglog_slope(u, F):
    A = np.column_stack([np.log(u), np.ones_like(u)])
    coef, *_ = np.linalg.lstsq(A, np.log(F), rcond=None)
    return float(coef[0])


def fit_singularity(
    profile: Sequence[MellinPoint],
    sigma0: float,
    max_tail_frac: float = 0.01,
    min_points: int = 5,
    max_window_ratio: float = 12.0,
    min_window_decades: float = 0.3,
    u_cap: float = 1.2,
) -> SingularityFit:
    """Classify and fit the singularity of F at sigma0 from a tail-honest window.

    Power model   log F = a log u + b + c u + d u^2,  u = sigma - sigma0,
                  beta_hat = 1 + a;
    log model     F = A log(1/u) + B + C u + D u^2.

    Two independent gates select the log model, both computed on the same
    window.  Slope drift: the local log-log slope of a power singularity
    flattens from the deep to the shallow half of the window (its analytic
    part enters with positive coefficients), while a log singularity
    steepens, since d log F / d log u = -1/log(1/u) falls away from zero.
    Shape contest: with a single analytic correction term (no u^2 soak),
    a log u + b + c u  on log F against  A log(1/u) + B + C u  on F, each
    model can only track its own singularity type, so the relative-residual
    ratio splits by an order of magnitude.  A pole with a negative analytic
    part (e.g. summatory von Mangoldt) also steepens, but loses the contest
    badly; both gates must agree before the log branch is taken.  A
    degenerate full-window slope |a| < 0.1 forces the log branch outright.

    Only points with tail_bound <= max_tail_frac * value participate; the
    window is then clipped to [u_min, min(u_cap, max_window_ratio * u_min)]
    so the fit stays local to the singularity.
    """
    pts = sorted(profile, key=lambda p: p.sigma)
    u_all = np.array([p.sigma - sigma0 for p in pts])
    F_all = np.array([p.value for p in pts])
    t_all = np.array([p.tail_bound for p in pts])
    if np.any(u_all <= 0.0):
        raise FitError("profile contains points at or below sigma0")
    ok = t_all <= max_tail_frac * F_all
    if not np.any(ok):
        raise FitError(
            "tails exceed the permitted fraction at every profile point; "
            "raise the truncation or widen the grid upward"
        )
    u, F = u_all[ok], F_all[ok]
    # keep the window local: deepest usable point up to max_window_ratio times
    # it, never past u_cap (a "local" fit at u ~ 2 would see mostly the
    # regular part of F)
    keep = u <= min(u[0] * max_window_ratio, u_cap)
    u, F = u[keep], F[keep]
    if len(u) < min_points:
        raise FitError(f"only {len(u)} usable profile points; need {min_points}")
    span = math.log10(u[-1] / u[0])
    if span < min_window_decades:
        raise FitError(
            f"usable window spans {span:.2f} decades < {min_window_decades}; "
            "tails too large for a stable fit"
        )
    if np.any(F <= 0.0):
        raise FitError("profile values must be positive to fit")

    pcoef, ppred = _power_fit(u, np.log(F))
    rms_power = float(np.sqrt(np.mean((np.exp(ppred) / F - 1.0) ** 2)))
    lcoef, lpred = _log_fit(u, F)
    rms_log = float(np.sqrt(np.mean((lpred / F - 1.0) ** 2)))

    mid = math.sqrt(u[0] * u[-1])
    deep, shallow = u <= mid, u >= mid
    drift = math.inf  # too few points to split: treat as non-drifting (power)
    if np.count_nonzero(deep) >= 3 and np.count_nonzero(shallow) >= 3:
        drift = _loglog_slope(u[shallow], F[shallow]) - _loglog_slope(u[deep], F[deep])

    ap3 = np.column_stack([np.log(u), np.ones_like(u), u])
    cp3, *_ = np.linalg.lstsq(ap3, np.log(F), rcond=None)
    rp3 = float(np.sqrt(np.mean((np.exp(ap3 @ cp3) / F - 1.0) ** 2)))
    al3 = np.column_stack([-np.log(u), np.ones_like(u), u])
    cl3, *_ = np.linalg.lstsq(al3, F, rcond=None)
    pl3 = al3 @ cl3
    rl3 = math.inf if np.any(pl3 <= 0.0) else float(np.sqrt(np.mean((pl3 / F - 1.0) ** 2)))

    is_log = (drift <= -0.05 and rl3 <= 5.0 * rp3) or abs(pcoef[0]) < 0.1

    window = (float(u[0]), float(u[-1]))
    if is_log:
        return SingularityFit(
            sigma0=float(sigma0),
            beta_hat=1.0,
            g_at_sigma0=float(lcoef[0]),
            fit_window=window,
            residual_rms=rms_log,
            log_singularity=True,
        )
    return SingularityFit(
        sigma0=float(sigma0),
        beta_hat=float(1.0 + pcoef[0]),
        g_at_sigma0=float(math.exp(pcoef[1])),
        fit_window=window,
        residual_rms=rms_power,
        log_singularity=False,
    )


def predict_and_compare(fit: SingularityFit, w, x_grid: Sequence[float]) -> list:
    """Rows (x, predicted, measured, ratio) with the shape constant calibrated
    at the grid midpoint — the fitted g is not converted into the theorem's
    c_beta (that constant carries Gamma factors the fit cannot see)."""
    xs = sorted(float(x) for x in x_grid)
    if not xs:
        raise RangeError("empty comparison grid")
    if xs[0] < 2.0 or xs[-1] > w.limit:
        raise RangeError(f"comparison grid must lie in [2, {w.limit}]")

    def shape(x: float) -> float:
        return x**fit.sigma0 / math.log(x) ** fit.beta_hat

    measured = [_weights.sum_upto(w, x) for x in xs]
    mid = len(xs) // 2
    if measured[mid] <= 0.0:
        raise FitError("midpoint partial sum is not positive; cannot calibrate")
    c = measured[mid] / shape(xs[mid])
    rows = []
    for x, s_meas in zip(xs, measured):
        pred = c * shape(x)
        rows.append(
            ComparisonRow(x=x, predicted=pred, measured=s_meas, ratio=s_meas / pred)
        )
    return rows


def detect_abscissa(w, decades: float = 1.5, points: int = 12) -> float:
    """Growth exponent of the partial sums: slope of log S(x) against log x
    over the top decades.  For S(x) ~ c x^sigma0 (log x)^(-beta) this
    estimates sigma0 up to a O(beta/log x) drift."""
    hi = w.limit
    lo = max(10.0, hi / 10.0**decades)
    xs = np.unique(np.floor(np.logspace(math.log10(lo), math.log10(hi), points)))
    S = np.array([_weights.sum_upto(w, x) for x in xs])
    if np.any(S <= 0.0):
        raise FitError("partial sums must be positive to estimate the abscissa")
    slope = np.polyfit(np.log(xs), np.log(S), 1)[0]
    return float(slope)
