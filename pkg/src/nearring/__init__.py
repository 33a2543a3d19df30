"""Exact computations for overlaps of basic graphs in circular planar nearrings."""

from .cyclotomic import CycNum, cyclotomic_poly, norm, reduce, resultant
from .fields import Field, FieldElem, build_field, element_of_order, minimal_polynomial, subgroup
from .overlaps import ComplexContext, FieldContext, OverlapClass, Quad, enumerate_overlaps

__version__ = "0.1.0"

__all__ = [
    "ComplexContext",
    "CycNum",
    "Field",
    "FieldContext",
    "FieldElem",
    "OverlapClass",
    "Quad",
    "build_field",
    "cyclotomic_poly",
    "element_of_order",
    "enumerate_overlaps",
    "minimal_polynomial",
    "norm",
    "reduce",
    "resultant",
    "subgroup",
]
