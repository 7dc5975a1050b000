"""Exception types raised by the library.

Each carries a CLI exit code so the command layer can map failures
without a lookup table.
"""


class CpdError(Exception):
    exit_code = 1


class BadInput(CpdError):
    exit_code = 1


class UnknownName(BadInput):
    pass


class BadParameters(BadInput):
    pass


class NotNormal(CpdError):
    exit_code = 1


class NotInvariant(CpdError):
    exit_code = 1


class NotFaithful(CpdError):
    exit_code = 2

    def __init__(self, message, kernel_witness=None):
        super().__init__(message)
        self.kernel_witness = kernel_witness


class HypothesisViolated(CpdError):
    exit_code = 2


class CapExceeded(CpdError):
    exit_code = 3
