"""Error taxonomy shared across the package.

Exit-code mapping used by the CLI and service:
  0 success, 2 input error, 3 capability/resource error, 4 bound too small.
"""


class BinomesoError(Exception):
    exit_code = 1


class InputError(BinomesoError):
    """Malformed input: parse errors, undeclared variables, bad preconditions."""

    exit_code = 2


class CapabilityError(BinomesoError):
    """The computation needs something the current configuration lacks.

    When the missing piece is a root of unity, ``required_cyclotomic`` names
    the order N such that rerunning over QQ(zeta_N) would succeed.
    """

    exit_code = 3

    def __init__(self, message, required_cyclotomic=None):
        super().__init__(message)
        self.required_cyclotomic = required_cyclotomic


class ResourceLimitError(BinomesoError):
    """An enumeration exceeded its configured ceiling."""

    exit_code = 3


class BoundTooSmallError(BinomesoError):
    """Post-hoc verification of a decomposition failed at the given degree bound."""

    exit_code = 4

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class NonCellularError(BinomesoError):
    """An operation requiring cellular input received a non-cellular ideal."""

    exit_code = 2
