"""Shared test utilities: slow independent oracles and random-instance factories.

Everything here is deliberately written *differently* from the library code it
checks (Riemann sums instead of exact breakpoint integration, brute-force
subset scans instead of greedy prefixes) so that agreement is evidence, not
tautology.
"""

from __future__ import annotations

import math

import numpy as np

from qibc import (
    Design,
    FunctionSpec,
    GateOp,
    OutcomeDistribution,
    Promise,
    pwl,
)


# ---------------------------------------------------------------------------
# Riemann oracles
# ---------------------------------------------------------------------------

def riemann_min_dist_integral(points: tuple[float, ...], L: float, panels: int = 1_000_000) -> float:
    """Midpoint Riemann sum of L * min_i |x - t_i| over [0, 1].

    Uses searchsorted against the sorted design so a 10^6-panel sum stays
    fast for any design size.
    """
    t = np.asarray(points, dtype=float)
    x = (np.arange(panels, dtype=float) + 0.5) / panels
    idx = np.searchsorted(t, x)
    left = np.where(idx > 0, x - t[np.clip(idx - 1, 0, len(t) - 1)], np.inf)
    right = np.where(idx < len(t), t[np.clip(idx, 0, len(t) - 1)] - x, np.inf)
    return L * float(np.minimum(left, right).mean())


def riemann_envelope_integrals(
    points: tuple[float, ...],
    y: tuple[float, ...],
    L: float,
    panels: int = 200_000,
) -> tuple[float, float]:
    """Midpoint Riemann sums of the two data-consistent envelopes.

    upper(x) = min_i (y_i + L|x - t_i|), lower(x) = max_i (y_i - L|x - t_i|).
    Returns (integral of lower, integral of upper).
    """
    t = np.asarray(points, dtype=float)[None, :]
    yv = np.asarray(y, dtype=float)[None, :]
    x = ((np.arange(panels, dtype=float) + 0.5) / panels)[:, None]
    cones = L * np.abs(x - t)
    hi = float((yv + cones).min(axis=1).mean())
    lo = float((yv - cones).max(axis=1).mean())
    return lo, hi


def riemann_integral(f: FunctionSpec, panels: int = 200_000) -> float:
    """Midpoint Riemann sum of f over [0, 1], via qibc.eval_many."""
    from qibc import eval_many

    x = (np.arange(panels, dtype=float) + 0.5) / panels
    return float(np.asarray(eval_many(f, x), dtype=float).mean())


# ---------------------------------------------------------------------------
# Random-instance factories
# ---------------------------------------------------------------------------

def random_design(rng: np.random.Generator, n: int) -> Design:
    """n strictly increasing points in (0, 1) with a minimum gap."""
    while True:
        pts = np.sort(rng.uniform(0.0, 1.0, size=n))
        if n == 1 or float(np.diff(pts).min()) > 1e-6:
            return Design(tuple(float(p) for p in pts))


def random_consistent_data(
    rng: np.random.Generator, d: Design, L: float, scale: float = 1.0
) -> tuple[float, ...]:
    """Data vector satisfying |y_i - y_j| <= L |t_i - t_j| with slack.

    Built as a random walk with per-step slope at most 0.999 L, so the
    pairwise condition follows from the triangle inequality with margin.
    """
    t = np.asarray(d.points)
    y = [float(rng.uniform(-scale, scale))]
    for dt in np.diff(t):
        slope = rng.uniform(-0.999 * L, 0.999 * L)
        y.append(y[-1] + float(slope * dt))
    return tuple(y)


def random_lipschitz_pwl(
    rng: np.random.Generator, L: float, k: int = 8, scale: float = 1.0
) -> FunctionSpec:
    """Random piecewise-linear function whose promise check passes exactly.

    Breakpoints sit on a jittered uniform grid (gap >= 0.4/k) and every
    segment slope is at most 0.999 L in magnitude, keeping the float
    slope test |dy| <= L dx strictly inside its margin.
    """
    xs = [0.0]
    for i in range(1, k):
        xs.append(i / k + float(rng.uniform(-0.3, 0.3)) / k)
    xs.append(1.0)
    ys = [float(rng.uniform(-scale, scale))]
    for i in range(1, len(xs)):
        slope = rng.uniform(-0.999 * L, 0.999 * L)
        ys.append(ys[-1] + float(slope * (xs[i] - xs[i - 1])))
    lo = min(ys) - 1e-9
    hi = max(ys) + 1e-9
    return pwl(tuple(zip(xs, ys)), Promise(L, lo, hi))


def random_gate(rng: np.random.Generator, nu: int) -> GateOp:
    """One random gate of any supported kind on a ``nu``-qubit register."""
    kind = rng.choice(["X", "H", "phase", "cphase", "swap", "unitary"])
    if kind in ("X", "H"):
        return GateOp(kind, (int(rng.integers(nu)),))
    if kind == "phase":
        return GateOp(kind, (int(rng.integers(nu)),), theta=float(rng.uniform(-6, 6)))
    if kind == "swap":
        targets = tuple(int(q) for q in rng.choice(nu, size=2, replace=False))
        return GateOp(kind, targets)
    if kind == "cphase":
        k = int(rng.integers(2, min(4, nu) + 1))
        targets = tuple(int(q) for q in rng.choice(nu, size=k, replace=False))
        return GateOp(kind, targets, theta=float(rng.uniform(-6, 6)))
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    u, _ = np.linalg.qr(z)
    return GateOp("unitary", (int(rng.integers(nu)),), matrix=tuple(tuple(row) for row in u))


def planted_distribution(
    rng: np.random.Generator,
    eps: float,
    truth: float,
    m_outcomes: int | None = None,
) -> OutcomeDistribution:
    """Random distribution whose local error against `truth` is <= eps.

    Mass at least 0.7501 lands on decodes within 0.999 eps of the truth;
    the rest is scattered, mostly far outside the window.
    """
    m = int(m_outcomes if m_outcomes is not None else rng.integers(2, 33))
    k_in = int(rng.integers(1, max(2, m // 2 + 1)))
    mass_in = 0.7501 + 0.2249 * float(rng.uniform())
    p = np.empty(m)
    p[:k_in] = rng.uniform(0.05, 1.0, size=k_in)
    p[:k_in] *= mass_in / p[:k_in].sum()
    if m > k_in:
        p[k_in:] = rng.uniform(0.05, 1.0, size=m - k_in)
        p[k_in:] *= (1.0 - mass_in) / p[k_in:].sum()
    phi = np.empty(m)
    phi[:k_in] = truth + rng.uniform(-0.999 * eps, 0.999 * eps, size=k_in)
    # far outcomes: offset magnitude in (2 eps, 40 eps), random sign
    far = rng.uniform(2.0 * eps, 40.0 * eps, size=m - k_in)
    phi[k_in:] = truth + far * rng.choice((-1.0, 1.0), size=m - k_in)
    order = rng.permutation(m)
    p, phi = p[order], phi[order]
    p = p / math.fsum(p.tolist())
    entries = tuple((j, float(p[j]), float(phi[j])) for j in range(m))
    return OutcomeDistribution(entries)


def subset_local_error(dist: OutcomeDistribution, truth: float) -> float:
    """Brute-force subset oracle for the local error (independent rewrite).

    Enumerates all outcome subsets, keeps those with mass >= 3/4, and
    returns the smallest of their worst |truth - phi|.
    """
    entries = dist.entries
    m = len(entries)
    best = math.inf
    for mask in range(1, 1 << m):
        mass = 0.0
        worst = 0.0
        for i in range(m):
            if mask >> i & 1:
                mass += entries[i][1]
                worst = max(worst, abs(truth - entries[i][2]))
        if mass >= 0.75 - 1e-12 and worst < best:
            best = worst
    return best
