"""Value types, algebra builders, and validity checking."""

import numpy as np
import pytest

from conftest import abelian, milnor, random_spd
from cotton3 import (
    DEFAULT_TOL,
    FrameVector,
    JacobiViolation,
    MetricLieAlgebra3,
    SymBilinear,
    Tensor3,
    bracket,
    from_kenmotsu_params,
    from_nonunimodular,
    jacobi_residual,
    validate,
)


def brute_jacobi(c):
    """Independent cyclic-sum oracle, written as explicit loops."""
    res = np.zeros((3, 3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                term = np.zeros(3)
                for m in range(3):
                    term += c[i, j, m] * c[m, k]
                    term += c[j, k, m] * c[m, i]
                    term += c[k, i, m] * c[m, j]
                res[i, j, k] = term
    return res


class TestValueTypes:
    def test_frame_vector_shape_and_freeze(self):
        v = FrameVector([1.0, 2.0, 3.0])
        assert v.components.shape == (3,)
        with pytest.raises(ValueError):
            v.components[0] = 5.0
        with pytest.raises(ValueError):
            FrameVector([1.0, 2.0])

    def test_sym_bilinear_symmetrizes(self):
        s = SymBilinear([[0.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        assert s.components[0, 1] == s.components[1, 0] == 1.0
        x = FrameVector([1.0, 0.0, 0.0])
        y = FrameVector([0.0, 1.0, 0.0])
        assert s.evaluate(x, y) == 1.0
        with pytest.raises(ValueError):
            SymBilinear(np.zeros((2, 2)))

    def test_tensor3_evaluate(self):
        t = np.zeros((3, 3, 3))
        t[0, 1, 2] = 4.0
        T = Tensor3(t)
        assert T.evaluate(
            FrameVector([1, 0, 0]), FrameVector([0, 1, 0]), FrameVector([0, 0, 1])
        ) == 4.0
        with pytest.raises(ValueError):
            Tensor3(np.zeros((3, 3)))

    def test_algebra_defaults_and_with_metric(self):
        L = abelian()
        assert np.array_equal(L.metric, np.eye(3))
        g = np.diag([1.0, 2.0, 3.0])
        L2 = L.with_metric(g)
        assert np.array_equal(L2.metric, g)
        assert np.array_equal(L2.structure_constants, L.structure_constants)
        with pytest.raises(ValueError):
            L.structure_constants[0, 0, 0] = 1.0


class TestJacobi:
    def test_residual_matches_brute_force(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            c = rng.normal(size=(3, 3, 3))
            c = c - np.transpose(c, (1, 0, 2))
            assert np.allclose(jacobi_residual(c), brute_jacobi(c), atol=1e-12)

    def test_residual_zero_on_closed_families(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            L = milnor(*rng.uniform(-5.0, 5.0, size=3))
            assert np.max(np.abs(jacobi_residual(L.structure_constants))) == 0.0

    def test_residual_scale_aware_tolerance(self):
        # Large constants inflate the float error of the double
        # contraction; the default tolerance must scale with them.
        L = milnor(1.0e3, -2.0e3, 3.0e3)
        assert validate(L).is_valid


class TestValidate:
    def test_antisymmetry_violation_reported(self):
        c = np.zeros((3, 3, 3))
        c[0, 1, 2] = 1.0
        c[1, 0, 2] = 1.0  # should be -1
        rep = validate(MetricLieAlgebra3(c))
        assert not rep.is_valid
        assert any(v.kind == "antisymmetry" for v in rep.violations)
        assert rep.max_magnitude() >= 1.0

    def test_jacobi_violation_reported(self):
        c = np.zeros((3, 3, 3))
        c[0, 1, 2] = 1.0
        c[1, 0, 2] = -1.0
        c[0, 2, 1] = 1.0
        c[2, 0, 1] = -1.0
        c[1, 2, 1] = 1.0
        c[2, 1, 1] = -1.0
        rep = validate(MetricLieAlgebra3(c))
        assert any(v.kind == "jacobi" for v in rep.violations)

    def test_metric_violations_reported(self):
        L = abelian()
        bad_sym = np.eye(3).copy()
        bad_sym[0, 1] = 0.5
        rep = validate(MetricLieAlgebra3(L.structure_constants, bad_sym))
        assert any(v.kind == "metric_asymmetric" for v in rep.violations)
        rep = validate(
            MetricLieAlgebra3(L.structure_constants, np.diag([1.0, 1.0, -1.0]))
        )
        assert any(v.kind == "metric_not_positive" for v in rep.violations)

    def test_explicit_tolerance_used(self):
        c = np.zeros((3, 3, 3))
        c[0, 1, 2] = 1e-6
        c[1, 0, 2] = 0.0  # antisymmetry broken at the 1e-6 level
        assert not validate(MetricLieAlgebra3(c)).is_valid
        assert validate(MetricLieAlgebra3(c), tol=1e-3).is_valid


class TestBracket:
    def test_matches_structure_constants_on_basis(self):
        rng = np.random.default_rng(9)
        L = milnor(*rng.uniform(-2.0, 2.0, size=3))
        basis = [FrameVector(np.eye(3)[i]) for i in range(3)]
        for i in range(3):
            for j in range(3):
                got = bracket(L, basis[i], basis[j]).components
                assert np.allclose(got, L.structure_constants[i, j])

    def test_bilinear_and_antisymmetric(self):
        rng = np.random.default_rng(10)
        L = from_nonunimodular(1.4, -0.3)
        for _ in range(20):
            x = FrameVector(rng.normal(size=3))
            y = FrameVector(rng.normal(size=3))
            xy = bracket(L, x, y).components
            yx = bracket(L, y, x).components
            assert np.allclose(xy, -yx, atol=1e-12)


class TestBuilders:
    def test_kenmotsu_brackets(self):
        lam, b, c = 1.0, 2.5, 2.5
        L = from_kenmotsu_params(lam, b, c)
        e1, e2, e3 = (FrameVector(np.eye(3)[i]) for i in range(3))
        assert np.allclose(bracket(L, e2, e1).components, [0.0, 1.0, -lam])
        assert np.allclose(bracket(L, e2, e3).components, [0.0, b, -c])
        assert np.allclose(bracket(L, e3, e1).components, [0.0, -lam, 1.0])

    def test_kenmotsu_random_diagonal_family_is_valid(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            lam = float(rng.uniform(1e-3, 5.0))
            assert validate(from_kenmotsu_params(lam, 0.0, 0.0)).is_valid

    def test_kenmotsu_lam_one_family_is_valid(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            b = float(rng.uniform(-4.0, 4.0))
            assert validate(from_kenmotsu_params(1.0, b, b)).is_valid

    def test_kenmotsu_rejects_open_brackets(self):
        with pytest.raises(JacobiViolation):
            from_kenmotsu_params(2.0, 1.0, 0.0)
        with pytest.raises(JacobiViolation):
            from_kenmotsu_params(0.5, 2.0, 2.0)
        with pytest.raises(ValueError):
            from_kenmotsu_params(-1.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            from_kenmotsu_params(0.0, 0.0, 0.0)

    def test_nonunimodular_always_valid(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            alpha, beta = rng.uniform(-5.0, 5.0, size=2)
            L = from_nonunimodular(float(alpha), float(beta))
            assert validate(L).is_valid

    def test_nonunimodular_brackets(self):
        alpha, beta = 2.0, 0.5
        L = from_nonunimodular(alpha, beta)
        e1, e2, e3 = (FrameVector(np.eye(3)[i]) for i in range(3))
        assert np.allclose(bracket(L, e1, e2).components, [0.0, alpha, beta])
        assert np.allclose(bracket(L, e2, e3).components, [0.0, 0.0, 0.0])
        assert np.allclose(
            bracket(L, e1, e3).components, [0.0, beta, 2.0 - alpha]
        )

    def test_random_metric_stays_valid(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            L = milnor(*rng.uniform(-2.0, 2.0, size=3)).with_metric(random_spd(rng))
            assert validate(L).is_valid

    def test_default_tol_is_small(self):
        assert 0.0 < DEFAULT_TOL <= 1e-8
