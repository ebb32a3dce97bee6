"""Metric Lie algebras on a fixed 3-frame, plus the tensor value types.

Component conventions used everywhere in this package:

* ``structure_constants`` is a rank-3 array ``c`` with
  ``[e_i, e_j] = sum_k c[i, j, k] e_k``.
* ``metric`` stores the inner products ``g[i, j] = g(e_i, e_j)``; the frame
  is orthonormal iff ``metric`` is the identity.
* Vectors, symmetric bilinear forms and rank-3 covariant tensors are plain
  component arrays in this fixed frame, wrapped in ``FrameVector``,
  ``SymBilinear`` and ``Tensor3``.

All value types are immutable (their arrays are frozen); every operation is
a pure function of its inputs, so values can be shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import JacobiViolation

# Default absolute tolerance for scalar/component comparisons.
DEFAULT_TOL = 1e-9


def _frozen(a, shape) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FrameVector:
    """A tangent vector given by its components in the fixed frame."""

    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components", _frozen(self.components, (3,)))


@dataclass(frozen=True, eq=False)
class SymBilinear:
    """A symmetric bilinear form; symmetry is enforced on construction."""

    components: np.ndarray

    def __post_init__(self):
        arr = np.array(self.components, dtype=float)
        if arr.shape != (3, 3):
            raise ValueError(f"expected shape (3, 3), got {arr.shape}")
        arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    def evaluate(self, x: FrameVector, y: FrameVector) -> float:
        return float(x.components @ self.components @ y.components)


@dataclass(frozen=True, eq=False)
class Tensor3:
    """A rank-3 covariant tensor, stored as T[i, j, k] = T(e_i, e_j, e_k)."""

    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components", _frozen(self.components, (3, 3, 3)))

    def evaluate(self, x: FrameVector, y: FrameVector, z: FrameVector) -> float:
        return float(
            np.einsum(
                "ijk,i,j,k->", self.components, x.components, y.components, z.components
            )
        )


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra3:
    """A 3-dimensional Lie algebra with an inner product on the frame.

    Construction only checks shapes; ``validate`` performs the actual
    antisymmetry / Jacobi / positive-definiteness checks and reports every
    violation it finds.
    """

    structure_constants: np.ndarray
    metric: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        object.__setattr__(
            self, "structure_constants", _frozen(self.structure_constants, (3, 3, 3))
        )
        object.__setattr__(self, "metric", _frozen(self.metric, (3, 3)))

    def with_metric(self, metric) -> "MetricLieAlgebra3":
        """Same brackets, different inner product."""
        return MetricLieAlgebra3(self.structure_constants, metric)


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple
    magnitude: float


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def max_magnitude(self) -> float:
        return max((v.magnitude for v in self.violations), default=0.0)


def jacobi_residual(structure_constants: np.ndarray) -> np.ndarray:
    """Cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].

    Returns the rank-4 array of its components; it vanishes identically
    exactly when the constants satisfy the Jacobi identity.
    """
    c = np.asarray(structure_constants, dtype=float)
    t = np.einsum("ijm,mkl->ijkl", c, c)
    return t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))


def validate(L: MetricLieAlgebra3, tol: float | None = None) -> ValidityReport:
    """Check antisymmetry, the Jacobi identity and metric admissibility.

    The Jacobi tolerance defaults to ``1e-12 * (1 + max|c|)**3``, which
    covers the float error of the cyclic double contraction.
    """
    c = L.structure_constants
    g = L.metric
    scale = 1.0 + float(np.max(np.abs(c)))
    if tol is None:
        anti_tol = 1e-12 * scale
        jac_tol = 1e-12 * scale**3
    else:
        anti_tol = jac_tol = tol
    violations = []

    anti = c + np.transpose(c, (1, 0, 2))
    for i in range(3):
        for j in range(i, 3):
            for k in range(3):
                mag = abs(anti[i, j, k])
                if mag > anti_tol:
                    violations.append(Violation("antisymmetry", (i, j, k), mag))

    jac = jacobi_residual(c)
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(j + 1, 3):
                mag = float(np.max(np.abs(jac[i, j, k])))
                if mag > jac_tol:
                    violations.append(Violation("jacobi", (i, j, k), mag))

    gsym_tol = 1e-12 * (1.0 + float(np.max(np.abs(g))))
    for i in range(3):
        for j in range(i + 1, 3):
            mag = abs(g[i, j] - g[j, i])
            if mag > gsym_tol:
                violations.append(Violation("metric_asymmetric", (i, j), mag))
    eigs = np.linalg.eigvalsh(0.5 * (g + g.T))
    if eigs[0] <= gsym_tol:
        violations.append(Violation("metric_not_positive", (), float(eigs[0])))

    return ValidityReport(tuple(violations))


def bracket(L: MetricLieAlgebra3, x: FrameVector, y: FrameVector) -> FrameVector:
    """Lie bracket [X, Y] of two frame-constant vectors."""
    return FrameVector(
        np.einsum("ijk,i,j->k", L.structure_constants, x.components, y.components)
    )


def from_kenmotsu_params(lam: float, b: float, c: float) -> MetricLieAlgebra3:
    """Orthonormal almost Kenmotsu frame algebra with constants (lam, b, c).

    Frame order is (xi, e, phi_e) with brackets

        [e, xi]     = e - lam*phi_e
        [e, phi_e]  = b*e - c*phi_e
        [phi_e, xi] = -lam*e + phi_e

    The Jacobi identity for these brackets forces ``b = lam*c`` and
    ``c = lam*b`` (equivalently b = c = 0, or lam = 1 with b = c); other
    parameter triples raise ``JacobiViolation``.
    """
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    tol = DEFAULT_TOL * (1.0 + abs(lam)) * (1.0 + abs(b) + abs(c))
    if abs(b - lam * c) > tol or abs(c - lam * b) > tol:
        raise JacobiViolation(
            "brackets close only when b = lam*c and c = lam*b; got "
            f"lam={lam}, b={b}, c={c} "
            f"(residuals {b - lam * c:.3g}, {c - lam * b:.3g})"
        )
    sc = np.zeros((3, 3, 3))
    sc[1, 0] = (0.0, 1.0, -lam)  # [e, xi]
    sc[0, 1] = -sc[1, 0]
    sc[1, 2] = (0.0, b, -c)  # [e, phi_e]
    sc[2, 1] = -sc[1, 2]
    sc[2, 0] = (0.0, -lam, 1.0)  # [phi_e, xi]
    sc[0, 2] = -sc[2, 0]
    return MetricLieAlgebra3(sc, np.eye(3))


def from_nonunimodular(alpha: float, beta: float) -> MetricLieAlgebra3:
    """Orthonormal non-unimodular solvable algebra with parameters (alpha, beta).

        [e1, e2] = alpha*e2 + beta*e3
        [e2, e3] = 0
        [e1, e3] = beta*e2 + (2 - alpha)*e3

    Jacobi holds for every (alpha, beta).  The detected Reeb direction for
    this family is -e1; the structure is Kenmotsu (h = 0) exactly when
    alpha = 1 and beta = 0.
    """
    sc = np.zeros((3, 3, 3))
    sc[0, 1] = (0.0, alpha, beta)
    sc[1, 0] = -sc[0, 1]
    sc[0, 2] = (0.0, beta, 2.0 - alpha)
    sc[2, 0] = -sc[0, 2]
    return MetricLieAlgebra3(sc, np.eye(3))
