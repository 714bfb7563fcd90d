from calabi.normal_form.basis import NormalForm, build_basis
from calabi.normal_form.classify import (classify_case, frame_ricci, normal_form_at,
                                         rotate_c2_frame)
from calabi.normal_form.maximize import CubicMaximum, maximize_cubic

__all__ = [
    "CubicMaximum",
    "NormalForm",
    "build_basis",
    "classify_case",
    "frame_ricci",
    "maximize_cubic",
    "normal_form_at",
    "rotate_c2_frame",
]
