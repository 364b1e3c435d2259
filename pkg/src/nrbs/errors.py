"""Exception hierarchy.

``InputError`` subclasses describe bad data or bad configuration (CLI exit 1);
``InvariantViolation`` means the engine produced an inconsistent result (CLI
exit 2).
"""


class NRBSError(Exception):
    pass


class InputError(NRBSError):
    pass


class DimensionMismatch(InputError):
    pass


class CurrencyMismatch(InputError):
    pass


class UnknownUnit(InputError):
    pass


class MalformedScale(InputError):
    pass


class InvalidParams(InputError):
    pass


class MissingComponent(InputError):
    pass


class NegativeClosingStock(InputError):
    pass


class IllegalCategory(InputError):
    pass


class DuplicateItem(InputError):
    pass


class RegionMismatch(InputError):
    pass


class MixedPeriod(InputError):
    pass


class MissingMonitoring(InputError):
    pass


class UnknownFormat(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class InvariantViolation(NRBSError):
    pass
