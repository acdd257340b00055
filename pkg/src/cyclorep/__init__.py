"""Integers represented by cyclotomic binary forms."""

from .cycloform import BinaryForm, CyclotomicForm, cyclotomic_coeffs, cyclotomic_poly, evaluate
from .counting import count_Ad, represented_by_form
from .geometry import area, constant_Cd
from .kernels import BACKEND_NAME
from .numtheory import euler_phi, inverse_totient

__all__ = [
    "BACKEND_NAME",
    "BinaryForm",
    "CyclotomicForm",
    "area",
    "constant_Cd",
    "count_Ad",
    "cyclotomic_coeffs",
    "cyclotomic_poly",
    "euler_phi",
    "evaluate",
    "inverse_totient",
    "represented_by_form",
]

__version__ = "0.1.0"
