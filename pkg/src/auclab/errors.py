"""Exception types shared across the package."""

from __future__ import annotations


class MetricUndefinedError(ValueError):
    """A requested statistic is mathematically undefined on this input.

    Examples: AUROC on a single-class sample, Spearman's rho on a constant
    vector.
    """


class DataError(ValueError):
    """Input data violates a precondition (malformed file, bad values)."""


class TiedScoresError(DataError):
    """Tied scores where pairwise-distinct scores are required.

    ``tied_indices`` holds one tuple of 0-based sample indices per distinct
    tied value.
    """

    def __init__(self, message: str, tied_indices: tuple[tuple[int, ...], ...] = ()):
        super().__init__(message)
        self.tied_indices = tied_indices


class StaleMistakeError(DataError):
    """A mistake record no longer describes an adjacent discordant pair."""


class ConfigError(ValueError):
    """Experiment configuration fails schema validation.

    ``problems`` lists every violation found, not just the first.
    """

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)
