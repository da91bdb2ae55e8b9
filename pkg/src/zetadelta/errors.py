"""Exception types shared across the package."""


class OutOfRangeError(ValueError):
    """An argument lies outside the range a table, grid or method covers."""


class ValidityRangeError(ValueError):
    """A moment bound was requested outside the parameter range where it holds."""


class InfeasibleError(ValueError):
    """No admissible derivation exists; ``violations`` lists what failed."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge or overflowed."""


class ResourceError(MemoryError):
    """A request would exceed the configured memory cap."""


class CacheError(RuntimeError):
    """A cache file is corrupt, has the wrong magic/version, or fails its hash."""
