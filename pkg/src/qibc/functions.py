"""Serializable input-function families on the domain [0, 1].

Three closed-form families are supported, each with deterministic evaluation,
an exact integral, and a promise check:

``pwl``
    Piecewise-linear through breakpoints ``(x_i, y_i)`` with ``x`` strictly
    increasing from exactly 0 to exactly 1. The workhorse family: envelopes
    and adversary functions are piecewise-linear.
``constant``
    A single value.
``trig``
    Trigonometric polynomial ``c0 + sum_k (a_k cos(2*pi*k*x)
    + b_k sin(2*pi*k*x))``, given as the flat odd-length coefficient list
    ``[c0, a1, b1, a2, b2, ...]``. Included for promise-check stress tests;
    its integral over [0, 1] is exactly ``c0`` (whole periods cancel).

A :class:`Promise` records what the caller guarantees about a function: a
Lipschitz bound ``L`` and a value range. Functions may embed a promise so the
pair round-trips through JSON as one document.

Everything here is immutable and pure; values can be shared freely across
threads or processes.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Any, Iterable

from .exceptions import DomainError, ValidationError

__all__ = [
    "Promise",
    "FunctionSpec",
    "pwl",
    "constant",
    "trig",
    "eval",
    "eval_many",
    "exact_integral",
    "check_promise",
    "negate",
    "function_to_json",
    "function_from_json",
    "promise_to_json",
    "promise_from_json",
]

#: Families that admit an exact (not grid-based) Lipschitz check.
_EXACT_FAMILIES = ("pwl", "constant")

#: Minimum grid used for the trig-family promise check.
_TRIG_MIN_GRID = 4096

#: Documented slack factor for grid-based Lipschitz checks: a difference
#: quotient on a grid never exceeds the true Lipschitz constant, so the check
#: accepts quotients up to ``L * _GRID_SLACK`` to avoid false rejections of
#: bounds quoted at the exact supremum of |f'|.
_GRID_SLACK = 1.01


@dataclass(frozen=True)
class Promise:
    """Caller-guaranteed Lipschitz bound and value range."""

    lipschitz_bound: float
    range_lo: float
    range_hi: float

    def __post_init__(self) -> None:
        for name in ("lipschitz_bound", "range_lo", "range_hi"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(float(v)):
                raise ValidationError(f"promise field {name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.lipschitz_bound < 0:
            raise ValidationError(
                f"lipschitz_bound must be nonnegative, got {self.lipschitz_bound}"
            )
        if not self.range_lo < self.range_hi:
            raise ValidationError(
                f"promise range must satisfy lo < hi, got [{self.range_lo}, {self.range_hi}]"
            )


@dataclass(frozen=True)
class FunctionSpec:
    """A closed-form function on [0, 1], optionally carrying its promise."""

    family: str
    points: tuple[tuple[float, float], ...] | None = None
    value: float | None = None
    coefficients: tuple[float, ...] | None = None
    promise: Promise | None = None

    def __post_init__(self) -> None:
        if self.family == "pwl":
            if self.points is None or self.value is not None or self.coefficients is not None:
                raise ValidationError("pwl functions take exactly the 'points' parameter")
            pts = tuple(
                (float(x), float(y)) for x, y in (tuple(p) for p in self.points)
            )
            if len(pts) < 2:
                raise ValidationError("pwl needs at least 2 breakpoints")
            for x, y in pts:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ValidationError(f"non-finite breakpoint ({x!r}, {y!r})")
            xs = [x for x, _ in pts]
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise ValidationError("pwl breakpoint x-values must be strictly increasing")
            if xs[0] != 0.0 or xs[-1] != 1.0:
                raise ValidationError(
                    f"pwl breakpoints must span [0, 1] exactly, got [{xs[0]}, {xs[-1]}]"
                )
            object.__setattr__(self, "points", pts)
        elif self.family == "constant":
            if self.value is None or self.points is not None or self.coefficients is not None:
                raise ValidationError("constant functions take exactly the 'value' parameter")
            v = float(self.value)
            if not math.isfinite(v):
                raise ValidationError(f"constant value must be finite, got {v!r}")
            object.__setattr__(self, "value", v)
        elif self.family == "trig":
            if self.coefficients is None or self.points is not None or self.value is not None:
                raise ValidationError("trig functions take exactly the 'coefficients' parameter")
            cs = tuple(float(c) for c in self.coefficients)
            if len(cs) % 2 != 1:
                raise ValidationError(
                    "trig coefficient list must have odd length [c0, a1, b1, ...]"
                )
            if any(not math.isfinite(c) for c in cs):
                raise ValidationError("trig coefficients must be finite")
            object.__setattr__(self, "coefficients", cs)
        else:
            raise ValidationError(
                f"unknown family {self.family!r}; expected pwl | constant | trig"
            )


def pwl(points: Iterable[tuple[float, float]], promise: Promise | None = None) -> FunctionSpec:
    """Piecewise-linear function through ``points``."""
    return FunctionSpec(family="pwl", points=tuple(tuple(p) for p in points), promise=promise)


def constant(value: float, promise: Promise | None = None) -> FunctionSpec:
    """Constant function ``f(x) = value``."""
    return FunctionSpec(family="constant", value=value, promise=promise)


def trig(coefficients: Iterable[float], promise: Promise | None = None) -> FunctionSpec:
    """Trigonometric polynomial from the flat list ``[c0, a1, b1, ...]``."""
    return FunctionSpec(family="trig", coefficients=tuple(coefficients), promise=promise)


def eval(f: FunctionSpec, x: float) -> float:  # noqa: A001 - name fixed by the public API
    """Evaluate ``f`` at ``x`` in [0, 1].

    Exact at pwl breakpoints: evaluating at a breakpoint returns its stored
    ``y`` bitwise, never a reinterpolation.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"evaluation point {x!r} outside [0, 1]")
    if f.family == "constant":
        return f.value  # type: ignore[return-value]
    if f.family == "pwl":
        pts = f.points
        assert pts is not None
        i = bisect_right([p[0] for p in pts], x) - 1
        if i >= len(pts) - 1:
            i = len(pts) - 2
        x0, y0 = pts[i]
        x1, y1 = pts[i + 1]
        if x == x0:
            return y0
        if x == x1:
            return y1
        return y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    # trig
    cs = f.coefficients
    assert cs is not None
    terms = [cs[0]]
    for k in range((len(cs) - 1) // 2):
        a = cs[1 + 2 * k]
        b = cs[2 + 2 * k]
        w = 2.0 * math.pi * (k + 1) * x
        terms.append(a * math.cos(w))
        terms.append(b * math.sin(w))
    return math.fsum(terms)


def eval_many(f: FunctionSpec, xs: Iterable[float]) -> list[float]:
    """Evaluate ``f`` at each point of ``xs`` (scalar semantics, in order)."""
    return [eval(f, x) for x in xs]


def exact_integral(f: FunctionSpec) -> float:
    """Exact value of the integral of ``f`` over [0, 1].

    Trapezoid-exact for pwl (the trapezoid rule is exact on linear pieces),
    analytic for constant and trig (every whole harmonic integrates to 0).
    """
    if f.family == "constant":
        return f.value  # type: ignore[return-value]
    if f.family == "trig":
        assert f.coefficients is not None
        return f.coefficients[0]
    pts = f.points
    assert pts is not None
    terms = [
        (x1 - x0) * (y0 + y1) / 2.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:])
    ]
    return math.fsum(terms)


def check_promise(f: FunctionSpec, p: Promise, grid_size: int) -> bool:
    """True iff ``f`` satisfies the promise ``p``.

    For pwl and constant functions the Lipschitz check is exact (segment
    slopes compared in multiplication form ``|dy| <= L*dx``, no division) and
    the range check inspects breakpoints, where piecewise-linear extremes
    live — both independent of ``grid_size``. For trig functions both checks
    run on a uniform grid of ``max(grid_size, 4096)`` points; the Lipschitz
    comparison allows the documented slack factor 1.01 because grid
    difference quotients only ever underestimate the true constant.
    """
    if not isinstance(grid_size, int) or grid_size < 2:
        raise ValidationError(f"grid_size must be an int >= 2, got {grid_size!r}")
    L = p.lipschitz_bound
    if f.family == "constant":
        return p.range_lo <= f.value <= p.range_hi  # type: ignore[operator]
    if f.family == "pwl":
        pts = f.points
        assert pts is not None
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if abs(y1 - y0) > L * (x1 - x0):
                return False
        return all(p.range_lo <= y <= p.range_hi for _, y in pts)
    n = max(grid_size, _TRIG_MIN_GRID)
    xs = [i / (n - 1) for i in range(n)]
    vals = eval_many(f, xs)
    for v in vals:
        if not p.range_lo <= v <= p.range_hi:
            return False
    bound = L * _GRID_SLACK
    for (x0, v0), (x1, v1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if abs(v1 - v0) > bound * (x1 - x0):
            return False
    return True


def negate(f: FunctionSpec) -> FunctionSpec:
    """The function ``-f``, with the same promise (ranges are symmetric or absent)."""
    promise = f.promise
    if promise is not None:
        promise = Promise(promise.lipschitz_bound, -promise.range_hi, -promise.range_lo)
    if f.family == "constant":
        return constant(-f.value, promise)  # type: ignore[operator]
    if f.family == "pwl":
        assert f.points is not None
        return pwl(tuple((x, -y) for x, y in f.points), promise)
    assert f.coefficients is not None
    return trig(tuple(-c for c in f.coefficients), promise)


# --- JSON mirroring -------------------------------------------------------

def promise_to_json(p: Promise) -> dict[str, Any]:
    return {"L": p.lipschitz_bound, "range": [p.range_lo, p.range_hi]}


def promise_from_json(node: Any) -> Promise:
    if not isinstance(node, dict):
        raise ValidationError(f"promise must be a JSON object, got {type(node).__name__}")
    extra = set(node) - {"L", "range"}
    if extra:
        raise ValidationError(f"unknown promise keys: {sorted(extra)}")
    try:
        lo, hi = node["range"]
        return Promise(float(node["L"]), float(lo), float(hi))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed promise: {node!r}") from exc


def function_to_json(f: FunctionSpec) -> dict[str, Any]:
    doc: dict[str, Any] = {"family": f.family}
    if f.family == "pwl":
        assert f.points is not None
        doc["points"] = [[x, y] for x, y in f.points]
    elif f.family == "constant":
        doc["value"] = f.value
    else:
        doc["coefficients"] = list(f.coefficients)  # type: ignore[arg-type]
    if f.promise is not None:
        doc["promise"] = promise_to_json(f.promise)
    return doc


def function_from_json(node: Any) -> FunctionSpec:
    if not isinstance(node, dict):
        raise ValidationError(f"function must be a JSON object, got {type(node).__name__}")
    family = node.get("family")
    promise = promise_from_json(node["promise"]) if "promise" in node else None
    known = {"family", "promise", "points", "value", "coefficients"}
    extra = set(node) - known
    if extra:
        raise ValidationError(f"unknown function keys: {sorted(extra)}")
    try:
        if family == "pwl":
            return pwl([(float(x), float(y)) for x, y in node["points"]], promise)
        if family == "constant":
            return constant(float(node["value"]), promise)
        if family == "trig":
            return trig([float(c) for c in node["coefficients"]], promise)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed {family!r} function: {node!r}") from exc
    raise ValidationError(f"unknown family {family!r}; expected pwl | constant | trig")
