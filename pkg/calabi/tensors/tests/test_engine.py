import numpy as np
import pytest

from calabi.catalog import as_function, parse_catalog_id, sample_points
from calabi.errors import DimensionError, NotPositiveDefiniteError
from calabi.jets import eval_jet, parse
from calabi.tensors import (bundle_at, christoffel_holonomy_riemann, cubic_at, curvature_at,
                            extremal_residual, metric_at, parallel_rhs_checks,
                            tchebychev_from_log_det)
from tests.oracles import random_convex_function, rng

PARABOLOID = parse("0.5*(x1^2+x2^2)")
LOG_CONE = parse("-1/2*ln(x1^2-x2^2-x3^2)")


def q_surface(cs, n):
    logs = "".join(f"-{c}*ln(x{i})" for i, c in enumerate(cs, start=1))
    squares = "".join(f"+0.5*x{j}^2" for j in range(len(cs) + 1, n + 1))
    return parse(logs + squares, dim=n)


def test_paraboloid_is_trivial():
    bundle = bundle_at(eval_jet(PARABOLOID, [3.0, 4.0]))

    np.testing.assert_allclose(bundle.metric.G, np.eye(2))
    assert bundle.metric.detG == pytest.approx(1.0)
    assert not bundle.metric.weingarten.any()
    assert not bundle.cubic.A.any()
    assert not bundle.cubic.CovA.any()
    assert not bundle.curvature.Riem.any()
    assert bundle.curvature.J == 0.0
    assert bundle.curvature.R == 0.0
    assert bundle.curvature.tchebychev_norm_sq == 0.0
    assert bundle.extremal == 0.0
    assert parallel_rhs_checks(bundle) == (0.0, 0.0)


@pytest.mark.parametrize("c1, t", [(1.0, 0.0), (2.5, -1.3), (0.3, 4.0)])
def test_q_metric_and_cubic(c1, t):
    f = q_surface([c1], 2)
    jet = eval_jet(f, [1.0, t])
    metric = metric_at(jet)
    cubic = cubic_at(jet, metric)

    np.testing.assert_allclose(metric.G, np.diag([c1, 1.0]), atol=1e-14)
    assert metric.inverse_defect < 1e-12
    expected = np.zeros((2, 2, 2))
    expected[0, 0, 0] = c1
    np.testing.assert_allclose(cubic.A, expected, atol=1e-14)


def test_cubic_form_scales_with_position():
    jet = eval_jet(q_surface([3.0], 2), [2.0, 0.5])

    assert cubic_at(jet).A[0, 0, 0] == pytest.approx(3.0 / 8.0, rel=1e-14)


def test_log_cone_metric_is_positive_definite():
    metric = metric_at(eval_jet(LOG_CONE, [2.0, 1.0, 1.0]))

    assert metric.detG > 0
    assert np.linalg.eigvalsh(metric.G).min() > 0
    assert metric.inverse_defect < 1e-12


def test_not_positive_definite_reports_smallest_eigenvalue():
    jet = eval_jet(parse("x1^2-x2^2"), [0.0, 0.0])

    with pytest.raises(NotPositiveDefiniteError) as excinfo:
        metric_at(jet)

    assert excinfo.value.min_eigenvalue == pytest.approx(-2.0)


@pytest.mark.parametrize("cs, n", [([1.0], 2), ([0.5, 2.0], 2), ([2.0, 3.0], 3), ([0.7, 1.3, 4.0], 3)])
def test_q_surfaces_are_flat_and_parallel(cs, n):
    generator = rng(7)
    inv_sum = sum(1.0 / c for c in cs)
    for _ in range(20):
        x = generator.uniform(0.2, 3.0, n)
        bundle = bundle_at(eval_jet(q_surface(cs, n), x))
        curvature = bundle.curvature

        assert curvature.cov_a_norm < 1e-9
        assert curvature.riem_norm < 1e-9
        assert abs(curvature.R) < 1e-9
        assert curvature.J == pytest.approx(inv_sum / (n * (n - 1)), rel=1e-10)
        assert curvature.tchebychev_norm_sq == pytest.approx(inv_sum / n**2, rel=1e-10)
        assert abs(bundle.extremal) < 1e-8
        assert max(parallel_rhs_checks(bundle)) < 1e-9


@pytest.mark.parametrize("x", [[2.0, 1.0, 0.0], [2.0, 1.0, 1.0], [3.0, -0.4, 1.7], [1.2, 0.1, -0.3]])
def test_log_cone_invariants(x):
    bundle = bundle_at(eval_jet(LOG_CONE, x))
    curvature = bundle.curvature

    assert curvature.R == pytest.approx(-2.0, abs=1e-9)
    assert curvature.scalar_formula == pytest.approx(-2.0, abs=1e-9)
    assert curvature.J == pytest.approx(7.0 / 6.0, abs=1e-9)
    assert curvature.tchebychev_norm_sq == pytest.approx(1.0, abs=1e-9)
    assert curvature.cov_a_norm < 1e-7
    assert abs(bundle.extremal) < 1e-8
    assert max(parallel_rhs_checks(bundle)) < 1e-8


def test_codazzi_and_curvature_identities_on_generic_functions():
    generator = rng(11)
    for _ in range(10):
        dim = int(generator.integers(2, 5))
        f, x = random_convex_function(generator, dim)
        bundle = bundle_at(eval_jet(f, x))
        curvature = bundle.curvature
        scale = 1.0 + float(np.abs(curvature.Riem).max())

        assert bundle.cubic.codazzi_defect < 1e-9 * (1.0 + curvature.cov_a_norm)
        assert curvature.symmetry_defect < 1e-10 * scale
        assert curvature.bianchi_defect < 1e-10 * scale
        assert curvature.scalar_discrepancy < 1e-10 * (1.0 + abs(curvature.R))


def test_tchebychev_matches_log_det_route():
    generator = rng(13)
    for _ in range(5):
        f, x = random_convex_function(generator, 3)
        jet = eval_jet(f, x)
        curvature = curvature_at(jet)

        np.testing.assert_allclose(tchebychev_from_log_det(jet), curvature.T_lower, atol=1e-10)


def test_gauss_equation_matches_christoffel_holonomy():
    generator = rng(17)
    for _ in range(5):
        f, x = random_convex_function(generator, 3)
        gauss = curvature_at(eval_jet(f, x)).Riem
        holonomy = christoffel_holonomy_riemann(f, x)

        np.testing.assert_allclose(holonomy, gauss, atol=1e-5 * (1.0 + np.abs(gauss).max()))


def test_holonomy_on_log_cone():
    x = [2.0, 0.3, -0.5]
    gauss = curvature_at(eval_jet(LOG_CONE, x)).Riem

    np.testing.assert_allclose(christoffel_holonomy_riemann(LOG_CONE, x), gauss, atol=1e-5)


def test_extremal_residual_detects_non_extremal_surface():
    f = parse("exp(x1) + 0.5*x2^2")

    # ln det Hess f = x1, whose Laplacian is -G^kl Gamma^1_kl = -1/2 e^-x1
    value = extremal_residual(eval_jet(f, [0.0, 0.0]), f)
    assert value == pytest.approx(-0.5, rel=1e-12)


def test_pick_invariant_needs_two_dimensions():
    curvature = curvature_at(eval_jet(parse("-ln(x1)"), [1.0]))

    assert curvature.R == 0.0
    with pytest.raises(DimensionError):
        curvature.J


def test_low_order_jets_are_rejected():
    with pytest.raises(ValueError):
        curvature_at(eval_jet(PARABOLOID, [0.0, 0.0], order=2))
    with pytest.raises(ValueError):
        extremal_residual(eval_jet(PARABOLOID, [0.0, 0.0], order=3))


@pytest.mark.parametrize("text", ["paraboloid:2", "q:1:2", "q:0.4:2", "q:1,1:2", "q:0.5,3:2"])
def test_parallel_cubic_form_in_two_dimensions_is_flat(text):
    surface = parse_catalog_id(text)
    f = as_function(surface)
    for x in sample_points(surface, 10, rng(19)):
        curvature = bundle_at(eval_jet(f, x)).curvature

        assert curvature.cov_a_norm < 1e-9
        assert curvature.riem_norm < 1e-9
        assert abs(curvature.R) < 1e-9
