"""Exception types shared by all dormant modules"""


class DormantError(Exception):
    """Base class for dormant errors"""
    exit_status = 1


class InputError(DormantError):
    """Caller supplied data outside the documented domain"""
    exit_status = 2


class PreconditionError(InputError):
    """An operation precondition does not hold for otherwise valid data"""
    pass


class GridOverflow(InputError):
    """An enumeration or sweep would exceed its configured cap"""

    def __init__(self, message: str, estimate: int, cap: int):
        super().__init__(f"{message} (estimated {estimate} > cap {cap})")
        self.estimate = estimate
        self.cap = cap


class InvariantViolation(DormantError):
    """An internal mathematical invariant failed"""
    exit_status = 3


class InsufficientPrecision(DormantError):
    """Interval oracle too wide at the requested precision"""

    def __init__(self, bits: int, width):
        super().__init__(f"interval width {width} too wide at {bits} bits")
        self.bits = bits
        self.width = width
