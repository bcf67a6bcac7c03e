"""Exceptions shared across the package."""


class InvalidParameterError(ValueError):
    """A value violates a documented parameter constraint."""


class ConfigError(ValueError):
    """A config document is malformed.

    Carries the offending key path so callers can point users at the exact
    line of their config file.
    """

    def __init__(self, key: str, problem: str):
        self.key = key
        self.problem = problem
        super().__init__(f"config key '{key}': {problem}")


class EquivalenceGateError(RuntimeError):
    """The benchmark correctness gate failed; timings would be meaningless."""
