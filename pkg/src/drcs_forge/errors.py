"""Exception types shared across the package.

Each error carries an exit_code used by the CLI: 2 for validation
failures, 3 for infeasible parameters, 4 for I/O and parsing trouble.
"""


class DrcsForgeError(Exception):
    exit_code = 2

    def payload(self):
        """Machine-readable form for the CLI stderr channel."""
        return {"error": type(self).__name__, "message": str(self)}


# -- validation (exit 2) --

class NonPrimeError(DrcsForgeError):
    pass


class CapExceededError(DrcsForgeError):
    pass


class SpecMismatchError(DrcsForgeError):
    """Operands belong to different field specs."""
    pass


class ZeroToNegativePowerError(DrcsForgeError):
    pass


class C1ViolatedError(DrcsForgeError):
    """A C2 check was asked about a rectangle that fails C1."""
    pass


class TooManyColumnsRemovedError(DrcsForgeError):
    pass


class PreconditionError(DrcsForgeError):
    """A construction input does not have the rectangle class it needs."""
    pass


class SameRowError(DrcsForgeError):
    pass


class OrderMismatchError(DrcsForgeError):
    pass


class RectangleClassError(DrcsForgeError):
    pass


class UnitarityError(DrcsForgeError):
    """A claimed Hadamard matrix failed the row-orthogonality check."""
    pass


class InvariantError(DrcsForgeError):
    pass


class LengthMismatchError(DrcsForgeError):
    pass


class ShapeMismatchError(DrcsForgeError):
    pass


class MismatchError(DrcsForgeError):
    """A recomputed reference value disagrees with the stored one."""
    pass


# -- infeasible parameters (exit 3) --

class ParamsOutOfRangeError(DrcsForgeError):
    exit_code = 3


class InfeasibleError(DrcsForgeError):
    exit_code = 3


# -- I/O and parsing (exit 4) --

class ParseError(DrcsForgeError):
    exit_code = 4


class SchemaError(DrcsForgeError):
    exit_code = 4
