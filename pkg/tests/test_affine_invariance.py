import pytest

from calabi.affine import AffineMap, check_equivalence_invariants
from calabi.catalog import as_function, parse_catalog_id
from calabi.catalog.defaults import DEFAULT_SURFACES
from tests.oracles import rng, samples


@pytest.mark.parametrize("text", DEFAULT_SURFACES)
def test_invariants_survive_affine_maps(text):
    surface = parse_catalog_id(text)
    f = as_function(surface)
    generator = rng(9)
    points = samples(surface, 3)

    for _ in range(20):
        phi = AffineMap.random(surface.dim, generator)
        report = check_equivalence_invariants(phi, f, points)

        assert report.passed(1e-7), report
