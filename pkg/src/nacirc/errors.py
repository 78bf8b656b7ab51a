"""Exception hierarchy shared by every nacirc module."""


class NacircError(Exception):
    """Base class for all nacirc errors."""


class NotPrime(NacircError):
    """Requested modulus is not a prime."""


class FieldTooSmall(NacircError):
    """The field cannot support the requested degree / weight range."""


class DimensionMismatch(NacircError):
    """Vectors, matrices or algebra elements of incompatible shapes."""


class ParseError(NacircError):
    """Malformed circuit file; carries the offending 1-based line number."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleError(NacircError):
    """A gate references itself."""


class BadReference(NacircError):
    """A gate references an id that is not yet defined."""


class BadMode(NacircError):
    """Unknown circuit mode."""


class DegreeExceeded(NacircError):
    """Syntactic degree larger than the declared bound."""


class CapExceeded(NacircError):
    """Enumeration would exceed the configured cap."""


class InvalidCode(NacircError):
    """A (order, levels) code does not describe any monomial."""


class TermCapExceeded(NacircError):
    """Brute-force expansion would exceed the term cap."""


class EnumerationCapExceeded(NacircError):
    """Weight-assignment enumeration would exceed the budget."""


class SetTooSmall(NacircError):
    """Sample set S too small for the requested degree bound."""
