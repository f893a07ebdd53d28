"""End-to-end smoke checks of the python bindings.

Depth lives in the C++ suites; this verifies the surface: builders, invariant
reports, coefficient evaluations, and the trace container round-trip.
"""

import math

import pytest

import qobs


@pytest.fixture(scope="module")
def stack():
    plant = qobs.build_plant()
    observer = qobs.build_observer(5.0, plant)
    augmented = qobs.build_augmented(plant, observer)
    return plant, observer, augmented


def test_builders_expose_the_reference_realization(stack):
    plant, observer, augmented = stack
    assert plant.omega_p == 1.0
    assert observer.omega_o == pytest.approx(math.sqrt(11.0), rel=1e-15)
    assert observer.a_o.tolist() == [[0.0, 1.0], [-11.0, 0.0]]
    assert augmented.a_bar_a.tolist() == [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [10.0, 0.0, -11.0, 0.0],
    ]
    assert augmented.a_a.rows == 6


def test_invariant_reports(stack):
    plant, observer, augmented = stack
    for system in (plant.system, observer.system, augmented.system):
        report = qobs.check_realizability(system)
        assert report.passed
        assert report.residual == 0.0
    nd = qobs.verify_nondisturbance(augmented, plant)
    assert nd.passed
    assert nd.coupling_residual == 0.0
    assert nd.trajectory_residual <= 1e-9


def test_coefficient_evaluations_are_consistent(stack):
    plant, observer, augmented = stack
    t_avg, t = 0.1, 0.7
    f = qobs.plant_output_coeffs(plant, t)
    assert f[0] == math.cos(t) and f[1] == math.sin(t)

    g = qobs.g_coeffs(observer, t_avg, t)
    h = qobs.h_coeffs(plant, t_avg, t)
    l = qobs.l_coeffs(augmented, t_avg, t)
    k = qobs.k_coeffs(augmented, t)
    assert l[2] == pytest.approx(g[0], abs=1e-9)
    assert l[3] == pytest.approx(g[1], abs=1e-9)
    assert (l[0] - f[0]) == pytest.approx(h[0] - g[0], abs=1e-9)
    assert len(k) == 4


def test_propagators_agree_with_expm(stack):
    plant, observer, augmented = stack
    p = qobs.observer_propagator(observer, 1.0)
    e = qobs.expm(observer.a_o, 1.0)
    for i in range(2):
        for j in range(2):
            assert p[i, j] == pytest.approx(e[i, j], abs=1e-10)


def test_envelope_and_design(stack):
    plant, observer, _ = stack
    env = qobs.error_envelope(plant, observer, 0.1)
    assert env.combined == pytest.approx(env.sup_g_sq + env.sup_h_sq, abs=1e-9)

    design = qobs.design_for_epsilon(plant, 0.1)
    check = qobs.error_envelope(plant, qobs.build_observer(design.mu, plant), design.t_avg)
    assert check.combined <= 0.1


def test_trace_container(stack):
    plant, observer, augmented = stack
    trace = qobs.make_trace(plant, observer, augmented, 0.1, 0.5, 1e-3)
    assert len(trace.times) == 501
    assert [s.label for s in trace.series[:3]] == ["f1", "f2", "k1"]
    g1 = trace.series[10]
    assert g1.start_index == 100
    assert len(g1.values) == 401
    assert trace.series[0].values[250] == math.cos(trace.times[250])


def test_matrix_surface():
    m = qobs.Matrix([[1.0, 2.0], [3.0, 4.0]])
    assert m.rows == 2 and m.cols == 2
    assert m.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    assert m[1, 0] == 3.0
    with pytest.raises(IndexError):
        m[2, 0]


def test_validation_errors_translate():
    plant = qobs.build_plant()
    with pytest.raises(ValueError):
        qobs.build_observer(-1.0, plant)
    with pytest.raises(ValueError):
        qobs.build_plant(omega_p=0.0)
    with pytest.raises(ValueError):
        qobs.g_coeffs(qobs.build_observer(5.0, plant), 0.1, 0.01)
