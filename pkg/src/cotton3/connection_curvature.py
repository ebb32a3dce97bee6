"""Levi-Civita connection and curvature of left-invariant 3-frame data.

Sign conventions, fixed once and validated against closed forms in tests:

* Koszul identity for frame-constant fields (the derivative terms vanish):
  ``2 g(nabla_X Y, Z) = g([X,Y], Z) - g([Y,Z], X) + g([Z,X], Y)``.
* Curvature
  ``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``.
* Ricci ``S(X,Y)`` is the trace of ``Z -> R(Z,X)Y``; the scalar curvature
  is the metric trace of S.

Index conventions: ``gamma[i, j, k]`` is the ``e_k`` component of
``nabla_{e_i} e_j``; ``riemann[i, j, k, l]`` is the ``e_l`` component of
``R(e_i, e_j) e_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularMetric
from .frame_algebra import DEFAULT_TOL, FrameVector, MetricLieAlgebra3, SymBilinear, Tensor3


@dataclass(frozen=True, eq=False)
class ConnectionTable:
    """Connection coefficients gamma[i, j, k] for nabla_{e_i} e_j."""

    gamma: np.ndarray

    def __post_init__(self):
        arr = np.array(self.gamma, dtype=float)
        if arr.shape != (3, 3, 3):
            raise ValueError(f"expected shape (3, 3, 3), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "gamma", arr)

    def nabla(self, x: FrameVector, y: FrameVector) -> FrameVector:
        """Covariant derivative nabla_X Y of frame-constant fields."""
        return FrameVector(
            np.einsum("i,j,ijk->k", x.components, y.components, self.gamma)
        )

    def operator_along(self, x: FrameVector) -> np.ndarray:
        """Matrix N with N @ v = components of nabla_X (sum_j v_j e_j)."""
        return np.einsum("i,ijk->kj", x.components, self.gamma)


@dataclass(frozen=True, eq=False)
class CurvaturePack:
    """Curvature data of one metric Lie algebra.

    ``metric`` is the inner product the curvature belongs to.
    ``jacobi_operator`` is the matrix of ``X -> R(X, reeb) reeb`` and is
    populated only when a Reeb candidate was supplied.
    """

    riemann: np.ndarray
    ricci: SymBilinear
    ricci_operator: np.ndarray
    scalar: float
    metric: np.ndarray
    jacobi_operator: np.ndarray | None = None


def levi_civita(L: MetricLieAlgebra3) -> ConnectionTable:
    """Unique torsion-free metric connection, computed via Koszul.

    Raises ``SingularMetric`` when the metric is not invertible within
    tolerance.
    """
    g = L.metric
    sv = np.linalg.svd(g, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        raise SingularMetric(f"metric is singular (singular values {sv})")
    cg = np.einsum("ijm,ml->ijl", L.structure_constants, g)
    # K[i, j, l] = g(nabla_{e_i} e_j, e_l)
    #            = (g([e_i, e_j], e_l) - g([e_j, e_l], e_i) + g([e_l, e_i], e_j)) / 2
    K = 0.5 * (
        cg
        - np.einsum("jli->ijl", cg)
        + np.einsum("lij->ijl", cg)
    )
    gamma = np.linalg.solve(g, K.reshape(9, 3).T).T.reshape(3, 3, 3)
    return ConnectionTable(gamma)


def curvature(
    L: MetricLieAlgebra3, conn: ConnectionTable, reeb: FrameVector | None = None
) -> CurvaturePack:
    """Riemann tensor, Ricci form and operator, scalar curvature."""
    gamma = conn.gamma
    c = L.structure_constants
    prod = np.einsum("jkm,iml->ijkl", gamma, gamma)
    riemann = prod - np.transpose(prod, (1, 0, 2, 3)) - np.einsum(
        "ijm,mkl->ijkl", c, gamma
    )
    ricci = SymBilinear(np.einsum("ijki->jk", riemann))
    q = np.linalg.solve(L.metric, ricci.components)
    scalar = float(np.trace(q))
    jac = None
    if reeb is not None:
        x = reeb.components if isinstance(reeb, FrameVector) else np.asarray(
            reeb, dtype=float
        )
        jac = np.einsum("ijkl,j,k->li", riemann, x, x)
    return CurvaturePack(riemann, ricci, q, scalar, L.metric, jac)


def cov_deriv_sym2(
    L: MetricLieAlgebra3, conn: ConnectionTable, T
) -> Tensor3:
    """Covariant derivative (nabla_{e_i} T)(e_j, e_k) of an invariant form.

    ``T`` is a ``SymBilinear`` or a (3, 3) component array.  For
    frame-constant components the scalar derivative term drops and only
    the two connection contractions remain.
    """
    gamma = conn.gamma
    t = T.components if isinstance(T, SymBilinear) else np.asarray(T, dtype=float)
    d = -np.einsum("ijm,mk->ijk", gamma, t) - np.einsum("ikm,jm->ijk", gamma, t)
    return Tensor3(d)


@dataclass(frozen=True)
class ParallelCheck:
    is_parallel: bool
    max_component: float


def ricci_parallel_check(
    L: MetricLieAlgebra3,
    conn: ConnectionTable,
    pack: CurvaturePack,
    tol: float = DEFAULT_TOL,
) -> ParallelCheck:
    """Whether nabla S vanishes, with the largest component as witness."""
    d = cov_deriv_sym2(L, conn, pack.ricci)
    mx = float(np.max(np.abs(d.components)))
    return ParallelCheck(mx <= tol, mx)


def sym3_eigenvalues(M: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a symmetric 3x3 matrix, ascending.

    Trigonometric solution of the characteristic cubic; no iterative
    factorization involved.
    """
    M = np.asarray(M, dtype=float)
    p1 = M[0, 1] ** 2 + M[0, 2] ** 2 + M[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(M).copy())
    q = float(np.trace(M)) / 3.0
    p2 = (M[0, 0] - q) ** 2 + (M[1, 1] - q) ** 2 + (M[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    B = (M - q * np.eye(3)) / p
    r = float(np.linalg.det(B)) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    lam1 = q + 2.0 * p * math.cos(phi)
    lam3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    lam2 = 3.0 * q - lam1 - lam3
    return np.sort(np.array([lam1, lam2, lam3]))


def ricci_spectrum(pack: CurvaturePack) -> np.ndarray:
    """Eigenvalues of the Ricci operator, ascending.

    The operator g^-1 S is similar to the symmetric Lc^-1 S Lc^-T with
    g = Lc Lc^T, so the closed-form symmetric solver applies for any
    admissible metric.
    """
    Lc = np.linalg.cholesky(pack.metric)
    Y = np.linalg.solve(Lc, pack.ricci.components)
    W = np.linalg.solve(Lc, Y.T).T
    return sym3_eigenvalues(0.5 * (W + W.T))


@dataclass(frozen=True)
class GeometryClass:
    """Coarse local-geometry classification from the Ricci spectrum.

    ``kind`` is one of "constant_curvature", "product_h2xr",
    "symmetric_other", "not_symmetric"; ``curvature`` carries the model's
    sectional curvature when one applies.
    """

    kind: str
    curvature: float | None = None


CONSTANT_CURVATURE = "constant_curvature"
PRODUCT_H2XR = "product_h2xr"
SYMMETRIC_OTHER = "symmetric_other"
NOT_SYMMETRIC = "not_symmetric"


def classify_geometry(
    pack: CurvaturePack, ricci_parallel: bool, rel_tol: float = 1e-6
) -> GeometryClass:
    """Match the Ricci spectrum of a Ricci-parallel metric to a model space.

    In dimension 3, constant sectional curvature k has Ricci spectrum
    {2k, 2k, 2k}; a hyperbolic-plane-times-line product with factor
    curvature k < 0 has {k, k, 0}.  Eigenvalues are compared sorted with
    relative tolerance ``rel_tol``.
    """
    if not ricci_parallel:
        return GeometryClass(NOT_SYMMETRIC)
    eigs = ricci_spectrum(pack)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    atol = rel_tol * scale
    lo, mid, hi = (float(v) for v in eigs)
    if hi - lo <= atol:
        return GeometryClass(CONSTANT_CURVATURE, (lo + mid + hi) / 6.0)
    # {k, k, 0} with k < 0: the zero eigenvalue is the largest of the three.
    if abs(hi) <= atol and abs(mid - lo) <= atol and mid < -atol:
        return GeometryClass(PRODUCT_H2XR, 0.5 * (lo + mid))
    return GeometryClass(SYMMETRIC_OTHER)
