import pytest

from calabi.jets import eval_jet
from calabi.tensors import bundle_at
from tests.oracles import random_convex_function, rng


@pytest.mark.parametrize("dim", [2, 3])
def test_codazzi_on_random_convex_functions(dim):
    generator = rng(100 + dim)
    for _ in range(25):
        f, _ = random_convex_function(generator, dim)
        for x in generator.uniform(-1.0, 1.0, (10, dim)):
            bundle = bundle_at(eval_jet(f, x))
            assert bundle.cubic.codazzi_defect < 1e-9 * (1.0 + bundle.curvature.cov_a_norm)
