from calabi.normal_form.defaults.normal_form import NormalFormConfig

__all__ = ["NormalFormConfig"]
