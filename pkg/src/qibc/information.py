"""Information operators and the radius of information.

Observing a function ``f`` at design points ``t_1 < ... < t_n`` yields the
data vector ``y_f = [f(t_1), ..., f(t_n)]``. Among all Lipschitz-``L``
functions consistent with that data, the pointwise extremes are the two
piecewise-linear *envelopes*

    upper(x) = min_i (y_i + L*|x - t_i|)
    lower(x) = max_i (y_i - L*|x - t_i|)

and the set of integrals of consistent functions is exactly the interval
``H = [integral(lower), integral(upper)]``. Half its length — the *radius of
information* — is the intrinsic worst-case error of any method that only sees
the data. The radius is maximized by constant data (``y = 0`` after a shift),
which gives ``worst_radius(d, L) = L * integral(min_i |x - t_i|)``; the
midpoint design ``t_i = (2i-1)/(2n)`` minimizes it at ``L/(4n)``.

All integration here is exact breakpoint enumeration (trapezoid on linear
pieces), never quadrature, so radii are reference-grade. A one-ulp repair
pass keeps envelope segments Lipschitz as *floats*: interior kink ordinates
(never design values) are nudged by ``nextafter`` until ``|dy| <= L*dx``
holds in float arithmetic; the effect on integrals is below 1e-18.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .exceptions import InfeasibleDataError, ValidationError
from .functions import FunctionSpec, eval as feval, exact_integral, negate, pwl

__all__ = [
    "Design",
    "DataVector",
    "Envelope",
    "RadiusReport",
    "observe",
    "envelopes",
    "interval_H",
    "worst_radius",
    "optimal_design",
    "m_eps",
    "query_complexity",
]

#: Additive tolerance for the pairwise data-consistency test. Marginally
#: inconsistent data is rejected, never repaired.
CONSISTENCY_TOL = 1e-12

#: Maximum one-ulp nudges applied to a single envelope breakpoint.
_MAX_NUDGES = 8
_KINK_SEARCH_STEPS = 64


@dataclass(frozen=True)
class Design:
    """Strictly increasing sample points ``0 <= t_1 < ... < t_n <= 1``."""

    points: tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(t) for t in self.points)
        if len(pts) < 1:
            raise ValidationError("a design needs at least one point")
        for t in pts:
            if not math.isfinite(t) or not 0.0 <= t <= 1.0:
                raise ValidationError(f"design point {t!r} outside [0, 1]")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValidationError("design points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DataVector:
    """Observed values, paired positionally with a design."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 1:
            raise ValidationError("a data vector needs at least one value")
        if any(not math.isfinite(v) for v in vals):
            raise ValidationError("data values must be finite")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Envelope:
    """Pointwise extreme functions of the data-consistent Lipschitz class."""

    upper: FunctionSpec
    lower: FunctionSpec

    def __post_init__(self) -> None:
        if self.upper.family != "pwl" or self.lower.family != "pwl":
            raise ValidationError("envelope members must be piecewise-linear")
        xs = sorted(
            {x for x, _ in self.upper.points} | {x for x, _ in self.lower.points}
        )
        for x in xs:
            if feval(self.lower, x) > feval(self.upper, x) + CONSISTENCY_TOL:
                raise ValidationError(f"lower envelope exceeds upper at x={x}")


@dataclass(frozen=True)
class RadiusReport:
    """The interval ``H`` of data-consistent solution values."""

    h_lo: float
    h_hi: float
    radius: float
    center: float

    def __post_init__(self) -> None:
        for name in ("h_lo", "h_hi", "radius", "center"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError(f"radius report field {name} must be finite")
            object.__setattr__(self, name, v)
        if self.h_lo > self.h_hi:
            raise ValidationError(f"interval endpoints out of order: [{self.h_lo}, {self.h_hi}]")


def observe(f: FunctionSpec, d: Design) -> DataVector:
    """The information about ``f``: its values at the design points."""
    return DataVector(tuple(feval(f, t) for t in d.points))


def _check_consistency(ts: tuple[float, ...], ys: tuple[float, ...], L: float) -> None:
    n = len(ts)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(ys[i] - ys[j]) > L * (ts[j] - ts[i]) + CONSISTENCY_TOL:
                raise InfeasibleDataError(
                    f"data not Lipschitz-{L} consistent at points "
                    f"t={ts[i]}, t={ts[j]}: |{ys[i]} - {ys[j]}| > L*dt"
                )


def _upper_breakpoints(
    ts: tuple[float, ...], ys: tuple[float, ...], L: float
) -> list[tuple[float, float, bool]]:
    """Breakpoints ``(x, y, is_design)`` of min_i (y_i + L|x - t_i|).

    With consistent data only adjacent cones bind on each gap: the candidate
    lines of equal slope are totally ordered, and consistency forces the line
    through the nearer design point to be the lowest. Hence one kink per gap
    at ``x* = (y_{i+1} - y_i)/(2L) + (t_i + t_{i+1})/2`` when it falls
    strictly inside, plus boundary pieces rising from ``t_1`` back to 0 and
    from ``t_n`` on to 1.
    """
    bps: list[tuple[float, float, bool]] = []
    if ts[0] > 0.0:
        bps.append((0.0, ys[0] + L * ts[0], False))
    for i, (t, y) in enumerate(zip(ts, ys)):
        bps.append((t, y, True))
        if i + 1 < len(ts):
            t2, y2 = ts[i + 1], ys[i + 1]
            if L > 0.0:
                for xk, yk in _kink(t, y, t2, y2, L):
                    bps.append((xk, yk, False))
    if ts[-1] < 1.0:
        bps.append((1.0, ys[-1] + L * (1.0 - ts[-1]), False))
    return bps


def _kink(
    t: float, y: float, t2: float, y2: float, L: float
) -> list[tuple[float, float]]:
    """Float breakpoints for the cone intersection over one design gap.

    The peak ordinate comes from the symmetric formula
    ``(y + y2)/2 + L(t2 - t)/2`` rather than from evaluating a cone at the
    rounded abscissa, whose ``L * ulp(x)`` error can be worth many ulps of a
    shallow envelope. When the intersection abscissa is representable the
    peak is a single breakpoint. Otherwise no single float abscissa admits
    the full ordinate under the float check ``|dy| <= L dx`` (the two cone
    gaps sum to exactly ``L (t2 - t)``, so the feasible window has zero
    width), and sagging the peak until the check holds costs
    ``O(L ulp(x) gap)`` of area. Instead the peak is straddled with one
    breakpoint on each cone an ulp apart; the clipped sliver costs only
    ``O(L ulp(x)^2)``.
    """
    xk = (y2 - y) / (2.0 * L) + (t + t2) / 2.0
    if not (t < xk < t2):
        return []
    yk = (y + y2) / 2.0 + L * (t2 - t) / 2.0
    if abs(yk - y) <= L * (xk - t) and abs(y2 - yk) <= L * (t2 - xk):
        return [(xk, yk)]
    if L * (xk - t) >= abs(yk - y):
        # left cone already covers its gap at xk, so the true intersection
        # sits at or left of xk: bracket it from the left
        xl, xr = math.nextafter(xk, t), xk
    else:
        xl, xr = xk, math.nextafter(xk, t2)
    if not (t < xl and xr < t2):
        return [(xk, _sagged_ordinate(t, y, t2, y2, L, xk))]
    lb = L * (xl - t)
    rb = L * (t2 - xr)
    yl = _pull_onto_cone(y + lb, y, lb)
    yr = _pull_onto_cone(y2 + rb, y2, rb)
    mid = L * (xr - xl)
    for _ in range(_MAX_NUDGES):
        if abs(yr - yl) <= mid:
            return [(xl, yl), (xr, yr)]
        # lowering the higher end shrinks its own cone gap too, so the outer
        # segment checks stay satisfied
        if yl > yr:
            yl = math.nextafter(yl, yr)
        else:
            yr = math.nextafter(yr, yl)
    return [(xk, _sagged_ordinate(t, y, t2, y2, L, xk))]


def _sagged_ordinate(
    t: float, y: float, t2: float, y2: float, L: float, xk: float
) -> float:
    """Single-breakpoint fallback: lower the peak until both bounds hold."""
    yk = min(y + L * (xk - t), y2 + L * (t2 - xk))
    floor = min(y, y2)
    for _ in range(_KINK_SEARCH_STEPS):
        if abs(yk - y) <= L * (xk - t) and abs(y2 - yk) <= L * (t2 - xk):
            return yk
        if yk <= floor:
            break
        yk = math.nextafter(yk, floor)
    return yk


def _pull_onto_cone(moving: float, anchor: float, bound: float) -> float:
    """Largest-magnitude ordinate with ``|moving - anchor| <= bound`` in floats.

    Jumps straight to ``anchor +/- bound`` (the abscissa rounding behind a
    kink or boundary ordinate can be worth many ulps of a small ``y``), then
    walks out the one or two ulps of residual addition rounding.
    """
    if abs(moving - anchor) <= bound:
        return moving
    target = anchor + bound if moving > anchor else anchor - bound
    for _ in range(_MAX_NUDGES):
        if abs(target - anchor) <= bound:
            return target
        target = math.nextafter(target, anchor)
    return anchor  # unreachable fallback: the anchor itself always satisfies


def _repair_slopes(
    bps: list[tuple[float, float, bool]], L: float
) -> list[tuple[float, float, bool]]:
    """Adjust non-design ordinates until ``|dy| <= L*dx`` holds in floats.

    Non-design breakpoints of an upper envelope are local maxima, so pulling
    them toward the violated cone only moves them down. Design ordinates are
    never modified.
    """
    out = list(bps)
    for i in range(len(out) - 1):
        x0, y0, d0 = out[i]
        x1, y1, d1 = out[i + 1]
        bound = L * (x1 - x0)
        if abs(y1 - y0) <= bound:
            continue
        if not d1:
            out[i + 1] = (x1, _pull_onto_cone(y1, y0, bound), False)
        elif not d0:
            out[i] = (x0, _pull_onto_cone(y0, y1, bound), False)
        # two design endpoints: the consistency check already bounded them
    return out


def envelopes(d: Design, y: DataVector, L: float) -> Envelope:
    """Exact upper/lower envelopes of the Lipschitz-``L`` class given data.

    Raises :class:`InfeasibleDataError` when no Lipschitz-``L`` function
    matches the data (pairwise check, additive tolerance 1e-12).
    """
    L = float(L)
    if not math.isfinite(L) or L < 0.0:
        raise ValidationError(f"Lipschitz bound must be finite and >= 0, got {L!r}")
    ts, ys = d.points, y.values
    if len(ts) != len(ys):
        raise ValidationError(
            f"design has {len(ts)} points but data vector has {len(ys)} values"
        )
    _check_consistency(ts, ys, L)
    if L == 0.0:
        if any(v != ys[0] for v in ys):
            raise InfeasibleDataError("L = 0 requires exactly constant data")
        flat = pwl([(0.0, ys[0]), (1.0, ys[0])])
        return Envelope(upper=flat, lower=flat)
    upper_bps = _repair_slopes(_upper_breakpoints(ts, ys, L), L)
    neg_ys = tuple(-v for v in ys)
    lower_bps = _repair_slopes(_upper_breakpoints(ts, neg_ys, L), L)
    upper = pwl([(x, v) for x, v, _ in upper_bps])
    lower = pwl([(x, -v) for x, v, _ in lower_bps])
    return Envelope(upper=upper, lower=lower)


def interval_H(e: Envelope) -> RadiusReport:
    """Endpoints of ``H``, both attained by members of the class."""
    h_lo = exact_integral(e.lower)
    h_hi = exact_integral(e.upper)
    return RadiusReport(
        h_lo=h_lo,
        h_hi=h_hi,
        radius=(h_hi - h_lo) / 2.0,
        center=(h_hi + h_lo) / 2.0,
    )


def worst_radius(d: Design, L: float) -> float:
    """Radius of information at the worst data vector (constant data).

    Equals ``L * integral_0^1 min_i |x - t_i| dx`` by exact piecewise
    integration of the zero-data envelopes.
    """
    zeros = DataVector((0.0,) * d.n)
    return interval_H(envelopes(d, zeros, L)).radius


def optimal_design(n: int) -> Design:
    """The midpoint design ``t_i = (2i - 1)/(2n)``, radius-optimal at L/(4n)."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"design size must be a positive int, got {n!r}")
    return Design(tuple((2 * i - 1) / (2 * n) for i in range(1, n + 1)))


def m_eps(L: float, eps: float) -> int:
    """Smallest ``n`` with ``L/(4n) <= eps`` (at least 1).

    Computed as ``ceil(L/(4*eps))`` with two float-guard adjustments so the
    bracket ``L/(4m) <= eps < L/(4(m-1))`` holds in float arithmetic even
    when the ceiling argument lands within rounding of an integer.
    """
    L = float(L)
    eps = float(eps)
    if not math.isfinite(L) or L <= 0.0:
        raise ValidationError(f"L must be finite and > 0, got {L!r}")
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValidationError(f"eps must be finite and > 0, got {eps!r}")
    m = max(1, math.ceil(L / (4.0 * eps)))
    while m > 1 and L / (4.0 * (m - 1)) <= eps:
        m -= 1
    while L / (4.0 * m) > eps:
        m += 1
    return m


def query_complexity(L: float, eps: float, c: float = 1.0) -> float:
    """Classical query complexity ``c * m_eps(L, eps)`` at per-query cost ``c``."""
    c = float(c)
    if not math.isfinite(c) or c <= 0.0:
        raise ValidationError(f"query cost c must be finite and > 0, got {c!r}")
    return c * m_eps(L, eps)
