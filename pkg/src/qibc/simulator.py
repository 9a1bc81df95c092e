"""Dense state-vector simulator of the unitary-with-queries model.

An algorithm is a sequence ``U_T Q_f U_{T-1} Q_f ... U_1 Q_f U_0`` applied to
``|0...0>`` on ``nu`` qubits: ``T + 1`` unitary layers (each a list of gates,
applied in list order) interleaved with ``T`` identical *bit queries*

    Q_f |j>|k> = |j>|k XOR beta(f(tau(j)))>

where ``j`` lives in an ``m'``-qubit index register, ``k`` in an
``m''``-qubit value register, ``tau`` maps index ``j`` to a grid point in
[0, 1], and ``beta`` keeps the ``m''`` most significant bits of the function
value relative to the promised range:

    beta(y) = clamp(floor((y - lo) / (hi - lo) * 2^m''), 0, 2^m'' - 1).

Measuring a designated sub-register afterwards yields the exact outcome
distribution — probabilities are computed from amplitudes, never sampled —
and a decode map turns outcome integers into real values.

Conventions (fixed, documented, relied on throughout):

* qubit 0 is the most significant bit of a basis index;
* the index register is qubits ``[0, m')``, the value register
  ``[m', m'+m'')``, any further qubits are workspace;
* the measurement list is most-significant-first;
* ``tau`` defaults to midpoints ``(2j+1)/2^{m'+1}``, bitwise the same floats
  as the radius-optimal design on ``2^{m'}`` points; ``j/2^{m'}``
  (left-endpoint) is available for comparison;
* gates: X and swap permute amplitudes exactly; phase factors at exact
  multiples of pi/2 are snapped to ``+-1, +-i`` so circuits built from
  H/X/phase(pi) conjugations stay numerically clean.

States are immutable; every operation returns a fresh state. A dense vector
of ``2^nu`` amplitudes caps ``nu`` at 20 (16M amplitudes).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence, Union

import numpy as np

from .exceptions import CapacityError, ValidationError
from .functions import FunctionSpec, eval as feval
from .serialize import read_csv, render_csv

__all__ = [
    "MAX_QUBITS",
    "NORM_TOL",
    "QState",
    "GateOp",
    "QuerySpec",
    "AffineDecode",
    "Sin2Decode",
    "Decode",
    "AlgorithmSpec",
    "OutcomeDistribution",
    "zero_state",
    "apply_gate",
    "bit_query",
    "beta_code",
    "tau_point",
    "query_table",
    "run",
    "measure",
    "algorithm_to_json",
    "algorithm_from_json",
    "gate_to_json",
    "gate_from_json",
    "distribution_to_csv",
    "distribution_from_csv",
]

#: Default cap on the dense register width (2^20 amplitudes).
MAX_QUBITS = 20

#: Tolerance on the squared norm of any state.
NORM_TOL = 1e-12

#: Tolerance on unitarity of explicit gate matrices.
_UNITARY_TOL = 1e-10

_GATE_KINDS = ("X", "H", "phase", "cphase", "swap", "unitary")
_TAU_RULES = ("midpoint", "left-endpoint")

_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


# --------------------------------------------------------------------------
# state


@dataclass(frozen=True)
class QState:
    """A unit vector of ``2^nu`` complex amplitudes."""

    nu: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.nu, int) or self.nu < 1:
            raise ValidationError(f"qubit count must be a positive int, got {self.nu!r}")
        if self.nu > MAX_QUBITS:
            raise CapacityError(f"nu={self.nu} exceeds the {MAX_QUBITS}-qubit cap")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.nu,):
            raise ValidationError(
                f"amplitude vector has shape {amps.shape}, expected ({1 << self.nu},)"
            )
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValidationError(f"state norm^2 deviates from 1 by {abs(norm2 - 1.0):.3e}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)


def zero_state(nu: int) -> QState:
    """The all-zeros computational basis state on ``nu`` qubits."""
    if not isinstance(nu, int) or nu < 1:
        raise ValidationError(f"qubit count must be a positive int, got {nu!r}")
    if nu > MAX_QUBITS:
        raise CapacityError(f"nu={nu} exceeds the {MAX_QUBITS}-qubit cap")
    amps = np.zeros(1 << nu, dtype=np.complex128)
    amps[0] = 1.0
    return QState(nu=nu, amplitudes=amps)


# --------------------------------------------------------------------------
# gates


def _as_matrix_tuple(matrix: Any) -> tuple[tuple[complex, ...], ...]:
    rows = tuple(tuple(complex(v) for v in row) for row in matrix)
    n = len(rows)
    if n not in (2, 4) or any(len(r) != n for r in rows):
        raise ValidationError("explicit matrices must be 2x2 or 4x4")
    for row in rows:
        for v in row:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValidationError("matrix entries must be finite")
    return rows


@dataclass(frozen=True)
class GateOp:
    """One gate: kind, target qubits, optional angle or explicit matrix.

    ``phase`` multiplies by ``e^{i*theta}`` when its single target is 1;
    ``cphase`` does the same when *all* of its >= 2 targets are 1 (the gate is
    diagonal and symmetric, so there is no control/target distinction).
    """

    gate: str
    targets: tuple[int, ...]
    theta: float | None = None
    matrix: tuple[tuple[complex, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.gate not in _GATE_KINDS:
            raise ValidationError(
                f"unknown gate {self.gate!r}; expected one of {', '.join(_GATE_KINDS)}"
            )
        tg = tuple(int(t) for t in self.targets)
        if len(set(tg)) != len(tg):
            raise ValidationError(f"duplicate targets in {tg}")
        if any(t < 0 for t in tg):
            raise ValidationError(f"negative qubit index in {tg}")
        object.__setattr__(self, "targets", tg)
        arity = {"X": (1, 1), "H": (1, 1), "phase": (1, 1), "swap": (2, 2),
                 "cphase": (2, 64), "unitary": (1, 2)}[self.gate]
        if not arity[0] <= len(tg) <= arity[1]:
            raise ValidationError(f"{self.gate} gate on {len(tg)} targets")
        if self.gate in ("phase", "cphase"):
            if self.theta is None or not math.isfinite(float(self.theta)):
                raise ValidationError(f"{self.gate} needs a finite theta")
            object.__setattr__(self, "theta", float(self.theta))
        elif self.theta is not None:
            raise ValidationError(f"{self.gate} takes no theta")
        if self.gate == "unitary":
            if self.matrix is None:
                raise ValidationError("unitary gate needs a matrix")
            rows = _as_matrix_tuple(self.matrix)
            if len(rows) != 1 << len(tg):
                raise ValidationError(
                    f"{len(rows)}x{len(rows)} matrix on {len(tg)} targets"
                )
            u = np.array(rows, dtype=np.complex128)
            dev = float(np.max(np.abs(u.conj().T @ u - np.eye(len(rows)))))
            if dev > _UNITARY_TOL:
                raise ValidationError(f"matrix not unitary (deviation {dev:.3e})")
            object.__setattr__(self, "matrix", rows)
        elif self.matrix is not None:
            raise ValidationError(f"{self.gate} takes no matrix")


def _phase_factor(theta: float) -> complex:
    """``e^{i*theta}``, exact at float multiples of pi/2 up to full turns."""
    k = theta / (math.pi / 2.0)
    if k == round(k) and abs(k) <= 4.0:
        return (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)[int(k) % 4]
    return cmath.exp(1j * theta)


def _apply_unitary(arr: np.ndarray, u: np.ndarray, targets: Sequence[int], nu: int) -> np.ndarray:
    """Apply a k-qubit matrix to the listed qubits (first target = matrix MSB)."""
    k = len(targets)
    psi = arr.reshape([2] * nu)
    psi = np.moveaxis(psi, targets, range(nu - k, nu))
    shape = psi.shape
    psi = psi.reshape(-1, 1 << k) @ u.T
    psi = psi.reshape(shape)
    psi = np.moveaxis(psi, range(nu - k, nu), targets)
    return np.ascontiguousarray(psi).reshape(-1)


def _ones_mask(targets: Sequence[int], nu: int) -> np.ndarray:
    idx = np.arange(1 << nu)
    mask = np.ones(1 << nu, dtype=bool)
    for q in targets:
        mask &= ((idx >> (nu - 1 - q)) & 1).astype(bool)
    return mask


def _apply_gate_array(arr: np.ndarray, g: GateOp, nu: int) -> np.ndarray:
    if any(t >= nu for t in g.targets):
        raise ValidationError(f"gate targets {g.targets} exceed nu={nu}")
    if g.gate == "X":
        bit = 1 << (nu - 1 - g.targets[0])
        return arr[np.arange(arr.size) ^ bit]
    if g.gate == "H":
        return _apply_unitary(arr, _H_MATRIX, g.targets, nu)
    if g.gate in ("phase", "cphase"):
        out = arr.copy()
        mask = _ones_mask(g.targets, nu)
        out[mask] *= _phase_factor(g.theta)  # type: ignore[arg-type]
        return out
    if g.gate == "swap":
        a, b = g.targets
        psi = arr.reshape([2] * nu)
        return np.ascontiguousarray(np.swapaxes(psi, a, b)).reshape(-1)
    u = np.array(g.matrix, dtype=np.complex128)
    return _apply_unitary(arr, u, g.targets, nu)


def apply_gate(s: QState, g: GateOp) -> QState:
    """Apply one gate, returning a fresh unit-norm state."""
    return QState(nu=s.nu, amplitudes=_apply_gate_array(s.amplitudes, g, s.nu))


# --------------------------------------------------------------------------
# queries


@dataclass(frozen=True)
class QuerySpec:
    """Shape of the bit query: register sizes, promised range, grid rule."""

    m_prime: int
    m_double_prime: int
    range_lo: float
    range_hi: float
    tau_rule: str = "midpoint"

    def __post_init__(self) -> None:
        for name in ("m_prime", "m_double_prime"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValidationError(f"{name} must be a positive int, got {v!r}")
        lo, hi = float(self.range_lo), float(self.range_hi)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValidationError(f"query range must satisfy lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "range_lo", lo)
        object.__setattr__(self, "range_hi", hi)
        if self.tau_rule not in _TAU_RULES:
            raise ValidationError(
                f"unknown tau rule {self.tau_rule!r}; expected midpoint | left-endpoint"
            )

    @property
    def grid_points(self) -> int:
        """Number of distinct evaluation points the query depends on, 2^m'."""
        return 1 << self.m_prime


def tau_point(j: int, q: QuerySpec) -> float:
    """Grid point for index ``j``: midpoint ``(2j+1)/2^{m'+1}`` or ``j/2^{m'}``."""
    n = q.grid_points
    if not 0 <= j < n:
        raise ValidationError(f"index {j} outside the 2^m' grid of {n} points")
    if q.tau_rule == "midpoint":
        return (2 * j + 1) / (2 * n)
    return j / n


def beta_code(y: float, q: QuerySpec) -> int:
    """The ``m''`` most significant bits of ``y`` within the promised range."""
    span = q.range_hi - q.range_lo
    code = math.floor((float(y) - q.range_lo) / span * (1 << q.m_double_prime))
    return max(0, min((1 << q.m_double_prime) - 1, code))


def query_table(f: FunctionSpec, q: QuerySpec) -> tuple[tuple[float, int], ...]:
    """The ``(tau(j), beta(f(tau(j))))`` pairs for every grid index ``j``.

    Exactly ``2^{m'}`` distinct evaluation points — the accounting quantity
    behind the qubit lower bound.
    """
    return tuple(
        (t, beta_code(feval(f, t), q))
        for t in (tau_point(j, q) for j in range(q.grid_points))
    )


@lru_cache(maxsize=64)
def _query_permutation(f: FunctionSpec, q: QuerySpec, nu: int) -> np.ndarray:
    if q.m_prime + q.m_double_prime > nu:
        raise ValidationError(
            f"query registers need {q.m_prime + q.m_double_prime} qubits, state has {nu}"
        )
    idx = np.arange(1 << nu)
    codes = np.array([c for _, c in query_table(f, q)], dtype=np.int64)
    j = idx >> (nu - q.m_prime)
    shift = nu - q.m_prime - q.m_double_prime
    perm = idx ^ (codes[j] << shift)
    perm.flags.writeable = False
    return perm


def bit_query(s: QState, f: FunctionSpec, q: QuerySpec) -> QState:
    """Apply ``Q_f``: XOR the value register with ``beta(f(tau(j)))``.

    An exact permutation of basis states — amplitudes are moved bitwise, never
    scaled — and an involution (XOR-ing the same code twice is the identity).
    """
    perm = _query_permutation(f, q, s.nu)
    return QState(nu=s.nu, amplitudes=s.amplitudes[perm])


# --------------------------------------------------------------------------
# algorithms


@dataclass(frozen=True)
class AffineDecode:
    """``phi(j) = scale * j + offset``."""

    scale: float
    offset: float

    def __post_init__(self) -> None:
        s, o = float(self.scale), float(self.offset)
        if not (math.isfinite(s) and math.isfinite(o)):
            raise ValidationError("decode scale/offset must be finite")
        object.__setattr__(self, "scale", s)
        object.__setattr__(self, "offset", o)

    def phi(self, j: int, modulus: int) -> float:
        return self.scale * j + self.offset


@dataclass(frozen=True)
class Sin2Decode:
    """``phi(j) = sin^2(pi * j / M)`` — the phase-estimation amplitude decode."""

    def phi(self, j: int, modulus: int) -> float:
        return math.sin(math.pi * j / modulus) ** 2


Decode = Union[AffineDecode, Sin2Decode]


@dataclass(frozen=True)
class AlgorithmSpec:
    """Layers ``U_0..U_T`` with ``T`` interleaved queries, then a measurement.

    ``layers`` has ``T + 1`` entries; a query runs after every layer but the
    last. ``measure`` lists the output-register qubits most-significant-first;
    outcomes are integers ``j`` in ``[0, 2^{len(measure)})``.
    """

    nu: int
    query: QuerySpec | None
    layers: tuple[tuple[GateOp, ...], ...]
    measure: tuple[int, ...]
    decode: Decode

    def __post_init__(self) -> None:
        if not isinstance(self.nu, int) or self.nu < 1:
            raise ValidationError(f"nu must be a positive int, got {self.nu!r}")
        layers = tuple(tuple(layer) for layer in self.layers)
        if len(layers) < 1:
            raise ValidationError("an algorithm needs at least the layer U_0")
        for layer in layers:
            for g in layer:
                if not isinstance(g, GateOp):
                    raise ValidationError(f"layer entry {g!r} is not a GateOp")
                if any(t >= self.nu for t in g.targets):
                    raise ValidationError(
                        f"gate targets {g.targets} exceed nu={self.nu}"
                    )
        object.__setattr__(self, "layers", layers)
        if self.query is not None:
            if self.query.m_prime + self.query.m_double_prime > self.nu:
                raise ValidationError(
                    "query registers need "
                    f"{self.query.m_prime + self.query.m_double_prime} qubits, "
                    f"algorithm has {self.nu}"
                )
        elif len(layers) > 1:
            raise ValidationError("algorithms with queries need a query spec")
        meas = tuple(int(t) for t in self.measure)
        if len(meas) < 1:
            raise ValidationError("measurement list must be nonempty")
        if len(set(meas)) != len(meas):
            raise ValidationError(f"duplicate measured qubits in {meas}")
        if any(not 0 <= t < self.nu for t in meas):
            raise ValidationError(f"measured qubits {meas} outside [0, nu)")
        object.__setattr__(self, "measure", meas)
        if not isinstance(self.decode, (AffineDecode, Sin2Decode)):
            raise ValidationError(f"unknown decode {self.decode!r}")

    @property
    def num_queries(self) -> int:
        """T: how many times ``Q_f`` runs."""
        return len(self.layers) - 1

    @property
    def outcome_count(self) -> int:
        """M = 2^{len(measure)}."""
        return 1 << len(self.measure)

    @property
    def n_eps(self) -> int:
        """Function evaluations encoded by one query (0 when query-free)."""
        return self.query.grid_points if self.query is not None else 0

    def decode_outcome(self, j: int) -> float:
        return self.decode.phi(j, self.outcome_count)


def run(a: AlgorithmSpec, f: FunctionSpec | None = None, cap: int = MAX_QUBITS) -> QState:
    """Execute ``U_T Q_f ... Q_f U_0 |0...0>`` and return the final state."""
    if a.nu > cap:
        raise CapacityError(f"algorithm needs nu={a.nu} qubits, cap is {cap}")
    if a.num_queries > 0 and f is None:
        raise ValidationError(f"algorithm makes {a.num_queries} queries; a function is required")
    arr = np.zeros(1 << a.nu, dtype=np.complex128)
    arr[0] = 1.0
    perm = None
    if a.num_queries > 0:
        assert a.query is not None and f is not None
        perm = _query_permutation(f, a.query, a.nu)
    for i, layer in enumerate(a.layers):
        for g in layer:
            arr = _apply_gate_array(arr, g, a.nu)
        if i < a.num_queries:
            assert perm is not None
            arr = arr[perm]
    return QState(nu=a.nu, amplitudes=arr)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact measurement distribution: ``(j, p_j, phi_j)`` for every outcome."""

    entries: tuple[tuple[int, float, float], ...]

    def __post_init__(self) -> None:
        entries = tuple(
            (int(j), float(p), float(phi)) for j, p, phi in self.entries
        )
        if not entries:
            raise ValidationError("a distribution needs at least one outcome")
        seen = set()
        total = []
        for j, p, phi in entries:
            if j in seen:
                raise ValidationError(f"duplicate outcome index {j}")
            seen.add(j)
            if not math.isfinite(p) or p < 0.0:
                raise ValidationError(f"probability of outcome {j} is {p!r}")
            if not math.isfinite(phi):
                raise ValidationError(f"decoded value of outcome {j} is {phi!r}")
            total.append(p)
        if abs(math.fsum(total) - 1.0) > NORM_TOL:
            raise ValidationError(
                f"probabilities sum to {math.fsum(total)!r}, expected 1"
            )
        object.__setattr__(self, "entries", entries)


def measure(s: QState, a: AlgorithmSpec) -> OutcomeDistribution:
    """Exact distribution of the measured register, all ``M`` outcomes listed."""
    if s.nu != a.nu:
        raise ValidationError(f"state has {s.nu} qubits, algorithm expects {a.nu}")
    nu = s.nu
    width = len(a.measure)
    idx = np.arange(1 << nu)
    j = np.zeros(1 << nu, dtype=np.int64)
    for pos, q in enumerate(a.measure):
        j |= ((idx >> (nu - 1 - q)) & 1) << (width - 1 - pos)
    p = np.bincount(j, weights=np.abs(s.amplitudes) ** 2, minlength=1 << width)
    entries = tuple(
        (int(k), float(p[k]), a.decode_outcome(int(k))) for k in range(1 << width)
    )
    return OutcomeDistribution(entries=entries)


# --------------------------------------------------------------------------
# JSON / CSV mirroring


def gate_to_json(g: GateOp) -> dict[str, Any]:
    doc: dict[str, Any] = {"gate": g.gate, "targets": list(g.targets)}
    if g.theta is not None:
        doc["theta"] = g.theta
    if g.matrix is not None:
        doc["matrix"] = [[[v.real, v.imag] for v in row] for row in g.matrix]
    return doc


def gate_from_json(node: Any) -> GateOp:
    if not isinstance(node, dict):
        raise ValidationError(f"gate must be a JSON object, got {type(node).__name__}")
    extra = set(node) - {"gate", "targets", "theta", "matrix"}
    if extra:
        raise ValidationError(f"unknown gate keys: {sorted(extra)}")
    try:
        matrix = None
        if "matrix" in node:
            matrix = tuple(
                tuple(complex(float(re), float(im)) for re, im in row)
                for row in node["matrix"]
            )
        return GateOp(
            gate=node["gate"],
            targets=tuple(int(t) for t in node["targets"]),
            theta=float(node["theta"]) if "theta" in node else None,
            matrix=matrix,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed gate: {node!r}") from exc


def _query_to_json(q: QuerySpec) -> dict[str, Any]:
    return {
        "m_prime": q.m_prime,
        "m_double_prime": q.m_double_prime,
        "range": [q.range_lo, q.range_hi],
        "tau_rule": q.tau_rule,
    }


def _query_from_json(node: Any) -> QuerySpec:
    if not isinstance(node, dict):
        raise ValidationError(f"query must be a JSON object, got {type(node).__name__}")
    extra = set(node) - {"m_prime", "m_double_prime", "range", "tau_rule"}
    if extra:
        raise ValidationError(f"unknown query keys: {sorted(extra)}")
    try:
        lo, hi = node["range"]
        return QuerySpec(
            m_prime=int(node["m_prime"]),
            m_double_prime=int(node["m_double_prime"]),
            range_lo=float(lo),
            range_hi=float(hi),
            tau_rule=node.get("tau_rule", "midpoint"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed query: {node!r}") from exc


def _decode_to_json(d: Decode) -> dict[str, Any]:
    if isinstance(d, AffineDecode):
        return {"scale": d.scale, "offset": d.offset}
    return {"kind": "sin2"}


def _decode_from_json(node: Any) -> Decode:
    if not isinstance(node, dict):
        raise ValidationError(f"decode must be a JSON object, got {type(node).__name__}")
    if node.get("kind") == "sin2":
        if set(node) != {"kind"}:
            raise ValidationError(f"sin2 decode takes no other keys: {node!r}")
        return Sin2Decode()
    if set(node) != {"scale", "offset"}:
        raise ValidationError(f"malformed decode: {node!r}")
    return AffineDecode(scale=float(node["scale"]), offset=float(node["offset"]))


def algorithm_to_json(a: AlgorithmSpec) -> dict[str, Any]:
    return {
        "nu": a.nu,
        "query": None if a.query is None else _query_to_json(a.query),
        "layers": [[gate_to_json(g) for g in layer] for layer in a.layers],
        "measure": list(a.measure),
        "decode": _decode_to_json(a.decode),
    }


def algorithm_from_json(node: Any) -> AlgorithmSpec:
    if not isinstance(node, dict):
        raise ValidationError(f"algorithm must be a JSON object, got {type(node).__name__}")
    extra = set(node) - {"nu", "query", "layers", "measure", "decode"}
    if extra:
        raise ValidationError(f"unknown algorithm keys: {sorted(extra)}")
    try:
        query = node.get("query")
        return AlgorithmSpec(
            nu=int(node["nu"]),
            query=None if query is None else _query_from_json(query),
            layers=tuple(
                tuple(gate_from_json(g) for g in layer) for layer in node["layers"]
            ),
            measure=tuple(int(t) for t in node["measure"]),
            decode=_decode_from_json(node["decode"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed algorithm: {exc}") from exc


def distribution_to_csv(dist: OutcomeDistribution) -> str:
    """Render the distribution as the canonical ``j,p,phi`` CSV text."""
    return render_csv(["j", "p", "phi"], [tuple(e) for e in dist.entries])


def distribution_from_csv(path: str) -> OutcomeDistribution:
    header, rows = read_csv(path)
    if header != ["j", "p", "phi"]:
        raise ValidationError(f"expected header j,p,phi, got {header!r}")
    try:
        entries = tuple((int(j), float(p), float(phi)) for j, p, phi in rows)
    except ValueError as exc:
        raise ValidationError(f"malformed distribution row in {path}") from exc
    return OutcomeDistribution(entries=entries)
