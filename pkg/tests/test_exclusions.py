import pytest

from calabi.catalog import Paraboloid, as_function, parse_catalog_id
from calabi.catalog.defaults import DEFAULT_SURFACES
from calabi.jets import eval_jet
from calabi.normal_form import normal_form_at
from calabi.tensors import bundle_at
from tests.oracles import samples


@pytest.mark.parametrize("text", [s for s in DEFAULT_SURFACES if parse_catalog_id(s).dim >= 2])
def test_excluded_cases_never_appear(text):
    surface = parse_catalog_id(text)
    f = as_function(surface)
    labels = {normal_form_at(bundle_at(eval_jet(f, x))).case_label for x in samples(surface, 100)}

    if isinstance(surface, Paraboloid):
        assert labels == {"C0"}
    else:
        assert "C0" not in labels
    if surface.dim == 3:
        assert "C3" not in labels
