class SemiextError(Exception):
    """Base class for errors raised by this package."""


class InputError(SemiextError, ValueError):
    """Malformed input: bad table, empty family, width mismatch, unknown name."""


class CapExceededError(SemiextError):
    """A requested enumeration lies beyond the configured order cap."""

    def __init__(self, what, n, cap):
        super().__init__(f"{what} is capped at order {cap}; got {n}")
        self.what, self.n, self.cap = what, n, cap


class NotAssociativeError(InputError):
    def __init__(self, witness, table=None):
        x, y, z = witness
        super().__init__(f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})")
        self.witness = witness
        self.table = table


class NotASemilatticeError(InputError):
    def __init__(self, table=None):
        super().__init__("operation requires a semilattice (commutative band)")
        self.table = table


class ClosureError(SemiextError):
    """A product left the enumerated carrier; this means an implementation bug."""
