"""Ramification invariants of rank-2 elementary abelian Kummer extensions.

The class-field side (Vostokov pairing, norm groups, truncated
exponentiation) and a direct tower oracle compute i_1 and the refined
break b_* for extensions L = K(R^{1/p}) with a single lower break.
"""

from .errors import FieldSpecError, KummerBreakError, PrecisionError, SpecError
from .field import Field, FieldSpec, make_field
from .fieldspec import load_fieldspec, parse_fieldspec

__version__ = "0.1.0"

__all__ = [
    "Field", "FieldSpec", "make_field", "load_fieldspec", "parse_fieldspec",
    "KummerBreakError", "FieldSpecError", "PrecisionError", "SpecError",
]
