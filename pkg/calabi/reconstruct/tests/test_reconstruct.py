import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.stats import ortho_group

from calabi.catalog import LogCone, QSurface, as_function, sample_points
from calabi.errors import CommutatorViolationError, InvalidParametersError, StepCountError
from calabi.jets import eval_jet
from calabi.reconstruct import (FlatParallelData, closed_form, diagonal_form, equivalence_to_catalog,
                                flat_data_from_cubic, graph_equivalence_defect, graph_height,
                                integrate_frames, integrate_hyperbolic, recovered_function,
                                recovered_surface, solve_rays)
from calabi.reconstruct.rk4 import integrate, linear_step_matrix, rk4_step
from calabi.tensors import bundle_at
from tests.oracles import orthonormal_cubic, random_flat_data, rng

E = math.e


def test_rk4_is_exact_for_cubic_rates():
    z, path = integrate(lambda t, z: np.array([t**3]), np.zeros(1), 0.0, 2.0, 4, keep_path=True)

    assert z[0] == pytest.approx(4.0, abs=1e-14)
    assert path.shape == (5, 1)


def test_linear_step_matrix_is_truncated_exponential():
    M = np.array([[0.3, 1.0], [-0.5, 0.2]])
    h = 0.1
    hM = h * M
    expected = np.eye(2) + hM + hM @ hM / 2 + hM @ hM @ hM / 6 + hM @ hM @ hM @ hM / 24

    np.testing.assert_allclose(linear_step_matrix(M, h), expected, atol=1e-15)
    np.testing.assert_allclose(
        rk4_step(lambda _t, z: M @ z, 0.0, np.array([1.0, 2.0]), h), expected @ [1.0, 2.0], atol=1e-15
    )


def test_data_validation():
    assert FlatParallelData(n=3).v == (1.0, 1.0, 1.0)
    assert FlatParallelData(n=2, diag=(2.0, 1.0)).weights == (0.25, 1.0)

    with pytest.raises(ValidationError):
        FlatParallelData(n=2, diag=(1.0, 2.0))
    with pytest.raises(ValidationError):
        FlatParallelData(n=1, diag=(1.0, 1.0))
    with pytest.raises(ValidationError):
        FlatParallelData(n=2, v=(1.0, -1.0))
    with pytest.raises(InvalidParametersError):
        FlatParallelData.build(n=2, diag=[0.0])


def test_paraboloid_ray():
    data = FlatParallelData(n=2, v=(1.0, 1.0))

    np.testing.assert_allclose(closed_form(data), [1.0, 1.0, 1.0])
    np.testing.assert_allclose(integrate_frames(data).x, [1.0, 1.0, 1.0], atol=1e-10)


def test_single_log_direction():
    data = FlatParallelData(n=1, diag=(1.0,), v=(1.0,))

    x = closed_form(data)
    assert x[0] == pytest.approx(E - 1)
    assert x[1] == pytest.approx((E - 1) - 1)


def test_two_log_directions():
    data = FlatParallelData(n=2, diag=(1.0, 1.0), v=(1.0, 1.0))

    np.testing.assert_allclose(closed_form(data), [E - 1, E - 1, 2 * (E - 1) - 2])


def test_integrator_matches_closed_form():
    generator = rng(11)
    for _ in range(5):
        data = random_flat_data(generator)
        path = integrate_frames(data)

        assert np.abs(path.x - closed_form(data)).max() < 1e-9
        assert path.positions.shape == (path.steps + 1, data.n + 1)
        np.testing.assert_array_equal(path.positions[0], np.zeros(data.n + 1))


def test_frames_at_the_end_point():
    data = FlatParallelData(n=2, diag=(1.5,), v=(0.5, 2.0))
    frames = integrate_frames(data).frames
    grow = math.exp(1.5 * 0.5)

    # e_1 = exp(a v t) eps_1 + (exp(a v t) - 1)/a Y ; e_2 = eps_2 + v_2 t Y
    np.testing.assert_allclose(frames[0], [grow, 0.0, (grow - 1) / 1.5], atol=1e-10)
    np.testing.assert_allclose(frames[1], [0.0, 1.0, 2.0], atol=1e-10)


def test_too_few_steps():
    with pytest.raises(StepCountError) as info:
        integrate_frames(FlatParallelData(n=1, diag=(5.0,), v=(2.0,)), steps=1)

    assert info.value.error_estimate > 1e-6
    with pytest.raises(InvalidParametersError):
        integrate_frames(FlatParallelData(n=1), steps=0)


@pytest.mark.parametrize(
    "diag, n, expected",
    [((1.0,), 2, "q:1:2"), ((2.0,), 2, "q:0.25:2"), ((), 3, "paraboloid:3"), ((2.0, 1.0), 3, "q:0.25,1:3")],
)
def test_recovered_function(diag, n, expected):
    data = FlatParallelData(n=n, diag=diag)

    assert recovered_function(data).catalog_id == expected


def test_recovered_function_reproduces_diagonal():
    data = FlatParallelData(n=3, diag=(2.0, 0.7))
    surface = recovered_surface(data)
    f = recovered_function(data)

    for x in sample_points(surface, 10, rng(4)):
        cubic = diagonal_form(orthonormal_cubic(bundle_at(eval_jet(f, x))))
        np.testing.assert_allclose(cubic.values, [2.0, 0.7, 0.0], atol=1e-7)
        assert cubic.off_diagonal < 1e-9


def test_graph_consistency():
    generator = rng(12)
    for _ in range(10):
        data = random_flat_data(generator)
        x = closed_form(data)

        assert graph_height(data, x[:-1]) == pytest.approx(x[-1], abs=1e-8 * (1 + abs(x[-1])))
        np.testing.assert_allclose(solve_rays(data, x[:-1]), data.rays, rtol=1e-10)
        assert graph_equivalence_defect(data, x) < 1e-10 * (1 + np.abs(x).max())


def test_equivalence_map_blocks():
    phi = equivalence_to_catalog(FlatParallelData(n=3, diag=(2.0,)))

    np.testing.assert_allclose(phi.a, np.diag([2.0, 1.0, 1.0]))
    assert phi.shear == (-0.5, 0.0, 0.0)
    assert phi.translate == (1.0, 0.0, 0.0, 0.0)


def test_graph_height_outside_domain():
    with pytest.raises(InvalidParametersError):
        graph_height(FlatParallelData(n=1, diag=(1.0,)), [-1.0])


def test_diagonal_form_of_rotated_cubic():
    Q = ortho_group.rvs(3, random_state=8)
    values = [0.3, 1.7, 1.1]
    T = sum(a * np.einsum("i,j,k->ijk", q, q, q) for a, q in zip(values, Q.T))
    # flipping a direction flips the sign of its value
    T = T - 2 * 0.3 * np.einsum("i,j,k->ijk", Q[:, 0], Q[:, 0], Q[:, 0])

    cubic = diagonal_form(T)

    np.testing.assert_allclose(cubic.values, [1.7, 1.1, 0.3], atol=1e-10)
    assert cubic.off_diagonal < 1e-10
    data = flat_data_from_cubic(T)
    assert data.diag == pytest.approx((1.7, 1.1, 0.3), abs=1e-10)


def test_sum_of_cubes_in_a_rotated_frame():
    # x^3 + 3 x y^2 = ((x + y)^3 + (x - y)^3) / 2
    T = np.zeros((2, 2, 2))
    T[0, 0, 0] = 1.0
    T[0, 1, 1] = T[1, 0, 1] = T[1, 1, 0] = 1.0

    np.testing.assert_allclose(diagonal_form(T).values, [math.sqrt(2), math.sqrt(2)], atol=1e-12)


def test_non_diagonal_cubic_is_rejected():
    # x^2 y has non-commuting slices
    T = np.zeros((2, 2, 2))
    T[0, 0, 1] = T[0, 1, 0] = T[1, 0, 0] = 1.0

    with pytest.raises(CommutatorViolationError):
        diagonal_form(T)


def test_diagonal_form_of_q_surface():
    f = as_function(QSurface(c=(4.0, 1.0), n=3))
    bundle = bundle_at(eval_jet(f, [0.7, 2.0, -1.0]))

    np.testing.assert_allclose(diagonal_form(orthonormal_cubic(bundle)).values, [1.0, 0.5, 0.0], atol=1e-10)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_hyperbolic_frames_reach_the_parametrization(c):
    path = integrate_hyperbolic(c, [0.0, 1.0, 0.0], [0.4, 1.3, 0.8])

    assert path.deviation < 1e-8
    assert path.jacobian_deviation < 1e-8
    assert path.error_estimate < 1e-6


def test_hyperbolic_start_lies_on_the_log_cone():
    surface = LogCone(c=1.0)
    path = integrate_hyperbolic(1.0, [0.2, 0.5, 0.1], [0.2, 0.5, 0.1], steps=1)

    assert surface.contains(path.position[:3])
    assert path.deviation == 0.0


def test_hyperbolic_rejects_other_sheet():
    with pytest.raises(InvalidParametersError):
        integrate_hyperbolic(1.0, [0.0, 1.0, 0.0], [0.0, -0.5, 0.0])
