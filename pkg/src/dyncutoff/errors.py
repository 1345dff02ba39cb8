"""Exception types shared across the package."""


class DyncutoffError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DyncutoffError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class EmptySystem(DyncutoffError):
    """A graph or potential was requested for a system with zero atoms."""


class MinimumImageViolation(DyncutoffError):
    """A periodic cell is too small for single-image neighbor search and
    ghost replication was disabled."""


class ParamMismatch(DyncutoffError, ValueError):
    """Two parameter sets that must agree (e.g. graph cutoff vs. dynamic
    cutoff parameters) do not."""


class OverlapError(DyncutoffError):
    """Two atoms are unphysically close (pair distance below 0.1 angstrom)."""


class BlowUp(DyncutoffError):
    """A molecular dynamics run became unstable.

    Carries the integration step at which the instability was detected.
    """

    def __init__(self, step, message):
        super().__init__(f"step {step}: {message}")
        self.step = step


class ParseError(DyncutoffError):
    """A text input (XYZ frame or run configuration) failed to parse.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
