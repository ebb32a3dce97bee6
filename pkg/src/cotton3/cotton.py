"""Cotton tensors of homogeneous 3-frame algebras.

The (0,3) Cotton tensor is the obstruction to conformal flatness in
dimension three:

    C(X, Y, Z) = (nabla_X S)(Y, Z) - (nabla_Y S)(X, Z)
                 - (1/4) (X(r) g(Y, Z) - Y(r) g(X, Z)).

On a frame algebra every curvature invariant is a frame constant, so the
scalar-curvature terms vanish identically and only the skew part of the
Ricci derivative survives.  C is skew in its first two slots and trace
free in every pair.

The equivalent (0,2) form is the dual over the first two slots:

    C(X)_j = (1 / (2 sqrt(det g))) C_{nmi} eps^{nml} g_{lj},

with eps the pure permutation symbol; the result is symmetric and trace
free, and scales as t^(-1/2) C under g -> t g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connection_curvature import (
    ConnectionTable,
    CurvaturePack,
    cov_deriv_sym2,
    curvature,
    levi_civita,
)
from .errors import SingularMetric
from .frame_algebra import MetricLieAlgebra3, SymBilinear, Tensor3

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0


def cotton3_oracle(
    L: MetricLieAlgebra3,
    conn: ConnectionTable | None = None,
    pack: CurvaturePack | None = None,
) -> Tensor3:
    """(0,3) Cotton tensor straight from the covariant Ricci derivative."""
    if conn is None:
        conn = levi_civita(L)
    if pack is None:
        pack = curvature(L, conn)
    D = cov_deriv_sym2(L, conn, pack.ricci).components
    return Tensor3(D - D.transpose(1, 0, 2))


def cotton2_from_cotton3(L: MetricLieAlgebra3, c3: Tensor3) -> SymBilinear:
    """Dualize the (0,3) Cotton tensor over its skew pair of slots."""
    comps = c3.components if isinstance(c3, Tensor3) else np.asarray(c3, dtype=float)
    g = L.metric
    det = float(np.linalg.det(g))
    if det <= 1e-300:
        raise SingularMetric(
            f"cotton dualization needs a positive metric determinant; det = {det:.6g}"
        )
    out = np.einsum("nmi,nml,lj->ij", comps, _EPS, g) / (2.0 * np.sqrt(det))
    return SymBilinear(out)


@dataclass(frozen=True, eq=False)
class CottonPack:
    """Both Cotton tensors of one algebra, plus the size of the (0,2) form."""

    cotton3: Tensor3
    cotton2: SymBilinear
    norm2: float


def cotton_pack(
    L: MetricLieAlgebra3,
    conn: ConnectionTable | None = None,
    pack: CurvaturePack | None = None,
) -> CottonPack:
    """Compute the (0,3) tensor, its (0,2) dual, and the Frobenius norm."""
    if conn is None:
        conn = levi_civita(L)
    if pack is None:
        pack = curvature(L, conn)
    c3 = cotton3_oracle(L, conn, pack)
    c2 = cotton2_from_cotton3(L, c3)
    return CottonPack(c3, c2, float(np.linalg.norm(c2.components)))


def cotton2_closed_form(ak) -> SymBilinear:
    """(0,2) Cotton tensor of an adapted frame from the constants alone.

    Components are with respect to (xi, e, phi_e) with f = b^2 + c^2 + 2.
    Each entry is a dual component of the covariant Ricci derivative; with
    lam, b, c frame constants the derivative reduces to connection terms
    against the closed-form Ricci entries, giving:

      C(xi, xi)      = 2 lam (b^2 - c^2)
      C(xi, e)       = 4 lam (c - lam b)
      C(xi, phi_e)   = 4 lam (lam c - b)
      C(e, e)        = 2 lam^3 - f lam + 2 lam c^2
      C(e, phi_e)    = 2 - f + 2 lam b c
      C(phi_e, phi_e)= -2 lam^3 + f lam - 2 lam b^2

    The trace cancels exactly: the diagonal sums to
    2 lam (b^2 - c^2) + 2 lam c^2 - 2 lam b^2 = 0.
    """
    lam, b, c, f = ak.lam, ak.b, ak.c, ak.f
    c11 = 2.0 * lam * (b * b - c * c)
    c12 = 4.0 * lam * (c - lam * b)
    c13 = 4.0 * lam * (lam * c - b)
    c22 = 2.0 * lam**3 - f * lam + 2.0 * lam * c * c
    c23 = 2.0 - f + 2.0 * lam * b * c
    c33 = -2.0 * lam**3 + f * lam - 2.0 * lam * b * b
    return SymBilinear(
        [
            [c11, c12, c13],
            [c12, c22, c23],
            [c13, c23, c33],
        ]
    )
