"""Exception types shared across the toolkit."""


class AtomgwError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(AtomgwError, ValueError):
    """A physical parameter or argument violates its constraints."""


class UnitError(InvalidParameterError):
    """A curve or component carries the wrong units tag."""


class CoverageError(InvalidParameterError):
    """A curve or trajectory does not cover the requested points.

    Interpolation between samples is allowed; extrapolation is not.
    """


class DegenerateCouplingError(InvalidParameterError):
    """A coupling has zero slope in its tolerance variable and cannot be
    inverted for the given fixed parameters."""


class CurveParseError(AtomgwError, ValueError):
    """A curve file failed to parse.  Carries the offending line number."""

    def __init__(self, path, line_number, message):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


class ConfigError(AtomgwError, ValueError):
    """A config file failed validation.  All failures are aggregated."""

    def __init__(self, path, problems):
        self.path = str(path)
        self.problems = tuple(problems)
        lines = "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(f"{path}: {len(self.problems)} problem(s):\n{lines}")
