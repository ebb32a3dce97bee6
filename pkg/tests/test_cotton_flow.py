"""Runge-Kutta Cotton flow: fixed points, blow-up, order, and export."""

import csv
import math

import numpy as np
import pytest

from conftest import su2_round
from cotton3 import (
    DegenerateMetric,
    FlowResult,
    cotton_pack,
    export_trajectory,
    flow_run,
    flow_step,
    from_kenmotsu_params,
    make_state,
)


class TestStateAndStep:
    def test_make_state_attaches_cotton_data(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        st = make_state(L, 0.25, np.eye(3))
        cp = cotton_pack(L)
        assert st.time == 0.25
        assert np.array_equal(st.metric, np.eye(3))
        assert np.array_equal(st.cotton2.components, cp.cotton2.components)
        assert st.cotton_norm == cp.norm2

    def test_make_state_symmetrizes(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        g = np.eye(3)
        g[0, 1] = 1e-3  # one-sided perturbation
        st = make_state(L, 0.0, g)
        assert np.array_equal(st.metric, st.metric.T)
        assert st.metric[0, 1] == pytest.approx(5e-4, abs=0.0)

    def test_step_advances_time_and_matches_run(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        st0 = make_state(L, 0.0, L.metric)
        st1 = flow_step(L, st0, 1e-3)
        assert st1.time == pytest.approx(1e-3, abs=0.0)
        result = flow_run(L, dt=1e-3, steps=1)
        assert np.array_equal(result.final.metric, st1.metric)

    def test_state_metric_is_frozen(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        st = make_state(L, 0.0, np.eye(3))
        with pytest.raises(ValueError):
            st.metric[0, 0] = 2.0

    def test_final_property(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=3)
        assert result.final is result.trajectory[-1]


class TestValidation:
    def test_rejects_bad_parameters(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            flow_run(L, dt=0.0, steps=10)
        with pytest.raises(ValueError):
            flow_run(L, dt=-1e-3, steps=10)
        with pytest.raises(ValueError):
            flow_run(L, dt=1e-3, steps=0)
        with pytest.raises(ValueError):
            flow_run(L, dt=1e-3, steps=10, stride=0)

    def test_rejects_indefinite_start(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        with pytest.raises(DegenerateMetric, match="initial metric"):
            flow_run(L, dt=1e-3, steps=1, g0=np.diag([1.0, -1.0, 1.0]))


class TestFixedPoint:
    def test_cotton_flat_metric_never_moves(self):
        # lam = 1 is conformally flat, so the flow is stationary: the
        # metric drift over 1000 steps is exactly zero.
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=1000, fixed_point_tol=1e-9)
        assert len(result.trajectory) == 1001
        drift = max(
            float(np.max(np.abs(st.metric - np.eye(3))))
            for st in result.trajectory
        )
        assert drift == 0.0
        assert result.fixed_point
        assert result.final.time == pytest.approx(1.0, rel=1e-12)

    def test_fixed_point_false_without_tolerance(self):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=5)
        assert not result.fixed_point

    def test_fixed_point_false_when_moving(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=5, fixed_point_tol=1e-9)
        assert not result.fixed_point
        assert result.final.cotton_norm > 1.0


class TestEvolution:
    def test_frozen_trajectory_values(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=30)
        st = result.final
        assert st.time == pytest.approx(0.03, rel=1e-12)
        assert np.diag(st.metric) == pytest.approx(
            [0.73702484, 2.10553778, 0.67998271], abs=1e-8
        )
        assert st.cotton_norm == pytest.approx(182.89104673662817, rel=1e-10)

    def test_metrics_stay_symmetric(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=30)
        for st in result.trajectory:
            assert np.max(np.abs(st.metric - st.metric.T)) <= 1e-13

    def test_degeneration_carries_partial_trajectory(self):
        # The lam = 2 metric collapses in finite time; the fourth RK stage
        # of step 35 leaves the positive cone.
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        with pytest.raises(DegenerateMetric) as err:
            flow_run(L, dt=1e-3, steps=100)
        assert "step 35" in str(err.value)
        assert "positive cone" in str(err.value)
        states = err.value.trajectory
        assert len(states) == 35
        assert states[-1].time == pytest.approx(0.034, rel=1e-12)
        assert np.diag(states[-1].metric) == pytest.approx(
            [0.48079602, 4.7127263, 0.62808646], abs=1e-7
        )

    def test_stride_records_endpoints(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=30, stride=7)
        times = [st.time for st in result.trajectory]
        assert times == pytest.approx(
            [0.0, 0.007, 0.014, 0.021, 0.028, 0.03], abs=1e-15
        )

    def test_normalize_holds_determinant(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=30, normalize=True)
        dets = [float(np.linalg.det(st.metric)) for st in result.trajectory]
        assert max(abs(d - 1.0) for d in dets) <= 1e-12

    def test_g0_override(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        g0 = np.diag([1.0, 2.0, 1.5])
        result = flow_run(L, dt=1e-4, steps=5, g0=g0)
        assert np.array_equal(result.trajectory[0].metric, g0)
        # The algebra's own metric is untouched.
        assert np.array_equal(L.metric, np.eye(3))

    def test_volume_nearly_conserved_without_normalization(self):
        # The right-hand side is trace free, so det g moves only at
        # second order in dt.
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=10)
        det = float(np.linalg.det(result.final.metric))
        assert abs(det - 1.0) <= 1e-2
        assert det != 1.0

    def test_observed_convergence_order_is_four(self):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        T = 0.02

        def terminal(dt):
            steps = round(T / dt)
            return flow_run(L, dt=dt, steps=steps).final.metric

        ref = terminal(2.5e-5)
        err_coarse = float(np.max(np.abs(terminal(1e-3) - ref)))
        err_fine = float(np.max(np.abs(terminal(5e-4) - ref)))
        order = math.log2(err_coarse / err_fine)
        assert 3.7 <= order <= 4.3

    def test_stationary_on_conformally_flat_sphere(self):
        result = flow_run(su2_round(), dt=1e-3, steps=50, fixed_point_tol=1e-12)
        assert result.fixed_point
        assert np.array_equal(result.final.metric, np.eye(3))


class TestExport:
    def test_csv_round_trip(self, tmp_path):
        L = from_kenmotsu_params(2.0, 0.0, 0.0)
        result = flow_run(L, dt=1e-3, steps=10, stride=2)
        path = tmp_path / "traj.csv"
        export_trajectory(result, str(path))
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [
            "time", "g11", "g12", "g13", "g22", "g23", "g33", "cotton_norm",
        ]
        assert len(rows) == 1 + len(result.trajectory)
        for row, st in zip(rows[1:], result.trajectory):
            vals = [float(x) for x in row]
            assert vals[0] == st.time
            m = st.metric
            assert vals[1:7] == [
                m[0, 0], m[0, 1], m[0, 2], m[1, 1], m[1, 2], m[2, 2],
            ]
            assert vals[7] == st.cotton_norm

    def test_accepts_plain_state_list(self, tmp_path):
        L = from_kenmotsu_params(1.0, 0.0, 0.0)
        states = [make_state(L, 0.0, np.eye(3))]
        path = tmp_path / "one.csv"
        export_trajectory(states, str(path))
        text = path.read_text().splitlines()
        assert len(text) == 2
        assert text[1].startswith("0.0,1.0,")
