"""Cotton flow of left-invariant metrics: dg/dt = C(g).

The bracket structure stays fixed while the frame metric evolves by its
own (0,2) Cotton tensor.  Fixed points are exactly the conformally flat
metrics (C = 0).  Since C is trace free the flow preserves volume to
leading order; an optional normalization rescales the metric after each
step to hold det g exactly.

Integration is classical fourth-order Runge-Kutta with symmetrized
stages.  The metric must stay positive definite: when a stage or a step
leaves the positive cone the run aborts with ``DegenerateMetric``
carrying the trajectory computed so far.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cotton import cotton_pack
from .errors import DegenerateMetric, SingularMetric
from .frame_algebra import MetricLieAlgebra3, SymBilinear


@dataclass(frozen=True, eq=False)
class FlowState:
    """Snapshot of the flow: time, metric, and its Cotton data."""

    time: float
    metric: np.ndarray
    cotton2: SymBilinear
    cotton_norm: float

    def __post_init__(self):
        arr = np.array(self.metric, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "metric", arr)


@dataclass(frozen=True)
class FlowResult:
    """Recorded trajectory and whether it ended at a fixed point."""

    trajectory: tuple
    fixed_point: bool

    @property
    def final(self) -> FlowState:
        return self.trajectory[-1]


def _rhs(L: MetricLieAlgebra3, g: np.ndarray) -> np.ndarray:
    c2 = cotton_pack(L.with_metric(g)).cotton2.components
    return 0.5 * (c2 + c2.T)


def _require_spd(g: np.ndarray, where: str) -> None:
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise DegenerateMetric(f"metric left the positive cone {where}") from exc


def make_state(L: MetricLieAlgebra3, time: float, g: np.ndarray) -> FlowState:
    """Package a metric as a flow state with its Cotton tensor attached."""
    g = np.asarray(g, dtype=float)
    g = 0.5 * (g + g.T)
    cp = cotton_pack(L.with_metric(g))
    return FlowState(float(time), g, cp.cotton2, cp.norm2)


def flow_step(L: MetricLieAlgebra3, state: FlowState, dt: float) -> FlowState:
    """One classical Runge-Kutta step of dg/dt = C(g).

    The state's ``cotton2`` is the right-hand side at the step's start, so
    it serves as the first stage; ``state`` must therefore carry the
    Cotton tensor of its own metric (as ``make_state`` and ``flow_run``
    arrange).  Every intermediate stage metric is required to stay
    positive definite.
    """
    g = state.metric
    k1 = state.cotton2.components
    try:
        g2 = g + 0.5 * dt * k1
        _require_spd(g2, "in the second stage")
        k2 = _rhs(L, g2)
        g3 = g + 0.5 * dt * k2
        _require_spd(g3, "in the third stage")
        k3 = _rhs(L, g3)
        g4 = g + dt * k3
        _require_spd(g4, "in the fourth stage")
        k4 = _rhs(L, g4)
    except SingularMetric as exc:
        raise DegenerateMetric(f"stage metric became singular: {exc}") from exc
    out = g + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out = 0.5 * (out + out.T)
    _require_spd(out, "after the step")
    return make_state(L, state.time + dt, out)


def flow_run(
    L: MetricLieAlgebra3,
    dt: float,
    steps: int,
    g0: np.ndarray | None = None,
    stride: int = 1,
    normalize: bool = False,
    fixed_point_tol: float | None = None,
) -> FlowResult:
    """Integrate the flow for ``steps`` steps from ``g0`` (default: the
    algebra's metric).

    States are recorded every ``stride`` steps (the initial and final
    states always).  With ``normalize`` the metric is rescaled after each
    step to keep its determinant at the initial value.  ``fixed_point`` in
    the result reports whether the final state's Cotton norm is at or
    below ``fixed_point_tol``; it is False when no tolerance is given.
    If the metric degenerates, ``DegenerateMetric`` is raised with the
    states recorded so far attached as ``trajectory``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if stride < 1:
        raise ValueError("stride must be at least 1")
    g = np.array(L.metric if g0 is None else g0, dtype=float)
    g = 0.5 * (g + g.T)
    _require_spd(g, "in the initial metric")
    det0 = float(np.linalg.det(g))
    state = make_state(L, 0.0, g)
    states = [state]
    for n in range(1, steps + 1):
        try:
            state = flow_step(L, state, dt)
        except DegenerateMetric as exc:
            raise DegenerateMetric(
                f"step {n} (t={n * dt:g}): {exc}", trajectory=states
            ) from exc
        if normalize:
            gm = state.metric * (
                det0 / float(np.linalg.det(state.metric))
            ) ** (1.0 / 3.0)
            state = make_state(L, state.time, gm)
        if n % stride == 0 or n == steps:
            states.append(state)
    fixed = (
        fixed_point_tol is not None
        and states[-1].cotton_norm <= fixed_point_tol
    )
    return FlowResult(tuple(states), fixed)


def export_trajectory(result, path: str) -> None:
    """Write a trajectory as CSV with round-tripping float reprs."""
    rows = result.trajectory if isinstance(result, FlowResult) else result
    with open(path, "w") as fh:
        fh.write("time,g11,g12,g13,g22,g23,g33,cotton_norm\n")
        for st in rows:
            m = st.metric
            vals = (
                st.time,
                m[0, 0], m[0, 1], m[0, 2], m[1, 1], m[1, 2], m[2, 2],
                st.cotton_norm,
            )
            fh.write(",".join(repr(float(v)) for v in vals) + "\n")
