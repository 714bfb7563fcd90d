import numpy as np

from calabi.catalog import as_function, sample_points
from calabi.jets import eval_jet
from calabi.normal_form import normal_form_at
from calabi.reconstruct import closed_form, diagonal_form, integrate_frames, recovered_surface
from calabi.tensors import bundle_at
from tests.oracles import orthonormal_cubic, random_flat_data, rng


def test_integrated_frames_match_the_closed_form():
    generator = rng(7)
    for _ in range(20):
        data = random_flat_data(generator)
        path = integrate_frames(data, steps=10_000)

        assert np.abs(path.x - closed_form(data)).max() < 1e-9


def test_recovered_surface_reproduces_the_cubic_form():
    generator = rng(8)
    for _ in range(20):
        data = random_flat_data(generator)
        surface = recovered_surface(data)
        f = as_function(surface)

        for x in sample_points(surface, 3, generator):
            values = diagonal_form(orthonormal_cubic(bundle_at(eval_jet(f, x)))).values
            np.testing.assert_allclose(values, data.cubic_diagonal, rtol=0, atol=1e-7)
        np.testing.assert_allclose(1.0 / np.sqrt(data.weights), data.diag, rtol=1e-12)


def test_recovered_surface_has_the_expected_normal_form():
    generator = rng(12)
    checked = 0
    while checked < 20:
        data = random_flat_data(generator)
        if data.n < 2:
            continue
        checked += 1
        surface = recovered_surface(data)
        f = as_function(surface)
        expected_label = "C1" if data.r else "C0"
        expected_mu1 = max(data.diag, default=0.0)

        for x in sample_points(surface, 3, generator):
            normal_form = normal_form_at(bundle_at(eval_jet(f, x)))
            assert normal_form.case_label == expected_label
            assert abs(normal_form.spectrum[0] - expected_mu1) < 1e-7
            np.testing.assert_allclose(normal_form.spectrum[1:], 0.0, atol=1e-7)
