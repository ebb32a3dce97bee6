"""Shared corpus generators for the randomized property tests.

Every generator takes a ``numpy.random.Generator`` so each test controls
its own seed; nothing here keeps global state.
"""

import numpy as np

from cotton3 import (
    MetricLieAlgebra3,
    from_kenmotsu_params,
    from_nonunimodular,
)


def milnor(c1: float, c2: float, c3: float) -> MetricLieAlgebra3:
    """Unimodular algebra in a diagonalizing frame.

    [e2, e3] = c1 e1,  [e3, e1] = c2 e2,  [e1, e2] = c3 e3; the Jacobi
    identity holds for every (c1, c2, c3).
    """
    sc = np.zeros((3, 3, 3))
    sc[1, 2, 0] = c1
    sc[2, 1, 0] = -c1
    sc[2, 0, 1] = c2
    sc[0, 2, 1] = -c2
    sc[0, 1, 2] = c3
    sc[1, 0, 2] = -c3
    return MetricLieAlgebra3(sc)


def abelian() -> MetricLieAlgebra3:
    return MetricLieAlgebra3(np.zeros((3, 3, 3)))


def su2_round() -> MetricLieAlgebra3:
    """Equal Milnor constants: the round-sphere geometry (curvature +1)."""
    return milnor(2.0, 2.0, 2.0)


def heisenberg() -> MetricLieAlgebra3:
    return milnor(0.0, 0.0, 1.0)


def hyperbolic() -> MetricLieAlgebra3:
    """Constant curvature -1 as the alpha=1, beta=0 solvable algebra."""
    return from_nonunimodular(1.0, 0.0)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish rotation: QR of a Gaussian matrix, determinant fixed to +1."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def rotate_algebra(L: MetricLieAlgebra3, P: np.ndarray) -> MetricLieAlgebra3:
    """Express the algebra in the rotated frame e'_i = sum_a P[a, i] e_a.

    For orthogonal P the metric stays the identity and the constants
    transform by conjugation in every slot.
    """
    c = np.einsum(
        "ai,bj,abk,kl->ijl", P, P, L.structure_constants, P
    )
    return MetricLieAlgebra3(c, P.T @ L.metric @ P)


def random_spd(rng: np.random.Generator) -> np.ndarray:
    """Well-conditioned random symmetric positive definite 3x3 matrix."""
    B = rng.normal(size=(3, 3))
    return np.eye(3) + 0.4 * (B @ B.T)


def random_kenmotsu(rng: np.random.Generator) -> MetricLieAlgebra3:
    """Random member of the closed-bracket families of the adapted frame."""
    if rng.random() < 0.5:
        lam = float(rng.uniform(0.05, 5.0))
        return from_kenmotsu_params(lam, 0.0, 0.0)
    b = float(rng.uniform(-4.0, 4.0))
    return from_kenmotsu_params(1.0, b, b)


def random_valid_algebra(
    rng: np.random.Generator,
    with_metric: bool = False,
    rotated: bool = False,
) -> MetricLieAlgebra3:
    """A random Jacobi-valid algebra drawn from three closed families."""
    kind = rng.integers(3)
    if kind == 0:
        L = milnor(*rng.uniform(-3.0, 3.0, size=3))
    elif kind == 1:
        L = from_nonunimodular(*rng.uniform(-3.0, 3.0, size=2))
    else:
        L = random_kenmotsu(rng)
    if rotated:
        L = rotate_algebra(L, random_rotation(rng))
    if with_metric:
        L = L.with_metric(random_spd(rng))
    return L
