"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`DiametralError`, so callers (and the CLI) can separate expected
refusals from programming bugs.
"""


class DiametralError(Exception):
    """Base class for all library errors."""


class DomainError(DiametralError, ValueError):
    pass


class NotAOH(DiametralError):
    """The norm has property (alpha); no Daugavet-point constructor applies."""


class Infeasible(DiametralError):
    pass


class NoOracle(DiametralError):
    pass


class MissingOracle(NoOracle):
    pass


class InfeasibleMesh(DiametralError):
    """The dyadic mesh cannot be refined far enough for the requested epsilon."""


class EmptySlice(DiametralError):
    pass


class NotFound(DiametralError):
    pass


class VerificationFailed(DiametralError):
    """A constructed object failed its own re-check. Indicates a bug."""


class ZeroComponent(DiametralError):
    pass


class NotApplicable(DiametralError):
    pass


class WidthTooLarge(DiametralError):
    pass


class BEqualsOne(NotApplicable):
    pass


class SliceDoesNotContainPoint(DiametralError):
    pass


class ConjugateMismatch(DiametralError):
    pass


class ConfigError(DiametralError):
    pass
