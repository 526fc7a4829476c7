"""
Exceptions raised by the FS(j,k) services.

Everything derives from FSError (a ValueError), so callers that only care about
"bad input" can catch ValueError the way the rest of the code base does.
"""


class FSError(ValueError):
    """Base class for all FS(j,k) toolkit errors."""


class ConstructionError(FSError):
    """Invalid (j, k) parameters or a host that is not a valid FS(j,k)."""


class NotTwoRegularError(FSError):
    """An edge or vertex set that does not induce a 2-regular subgraph."""


class NotCubicError(FSError):
    """An operation that needs a cubic host got something else."""


class InvalidMatchingError(FSError):
    """An edge set that is not a (perfect) matching of its host."""


class ClassificationError(FSError):
    """A gap profile matching none of the three perfect matching types."""


class TransformPreconditionError(FSError):
    """A local transformation was asked for where its pattern is absent."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class StructureViolation(FSError):
    """A type-2 complement containing a cycle that is neither long nor a 6-cycle."""


class WordError(FSError):
    """Malformed block word, or a word that does not fit its host."""
