class KummerBreakError(Exception):
    pass


class FieldSpecError(KummerBreakError, ValueError):
    """The field description is malformed or violates a field invariant."""


class PrecisionError(KummerBreakError, ArithmeticError):
    """A result would need digits that the working precision cannot certify."""


class SpecError(KummerBreakError, ValueError):
    """Kummer generators do not describe a single-break rank-2 extension."""
