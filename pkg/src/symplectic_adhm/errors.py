"""Exception hierarchy shared by every module.

Input problems (bad shapes, violated equations, malformed documents) derive
from :class:`InputError`; failures of the constructive pipelines derive from
:class:`PipelineError`.  The CLI maps the two families to distinct exit codes.
"""

from __future__ import annotations


class AdhmError(Exception):
    """Base class for all package errors."""


class InputError(AdhmError, ValueError):
    """The caller supplied data that does not meet a precondition."""


class PipelineError(AdhmError, RuntimeError):
    """A constructive procedure could not complete."""


class ShapeMismatch(InputError):
    pass


class NoSolution(AdhmError):
    """A linear system has no solution."""


class NotCommuting(InputError):
    pass


class NotSymmetric(InputError):
    pass


class Singular(InputError):
    pass


class SingularGauge(InputError):
    pass


class ZeroPoint(InputError):
    pass


class NotStable(InputError):
    pass


class NotNonderogatory(InputError):
    pass


class NotEquivalent(AdhmError):
    pass


class Unreachable(AdhmError):
    pass


class EquationViolated(InputError):
    """One or more defining equations fail; ``report`` names each one."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(item.name for item in report.failures)
        super().__init__(f"equations violated: {names}")


class ConditionFailed(AdhmError):
    def __init__(self, failures, lift=None):
        self.failures = list(failures)
        self.lift = lift
        super().__init__("lift conditions failed: " + ", ".join(self.failures))


class NormalFormFailed(PipelineError):
    pass


class GenerationFailed(PipelineError):
    def __init__(self, stage: str, attempts: int):
        self.stage = stage
        self.attempts = attempts
        super().__init__(f"generation failed at stage {stage!r} after {attempts} attempts")


class SearchExhausted(PipelineError):
    pass


class StageFailed(PipelineError):
    def __init__(self, stage: str, diagnostic: str):
        self.stage = stage
        self.diagnostic = diagnostic
        super().__init__(f"{stage}: {diagnostic}")
