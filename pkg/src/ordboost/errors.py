"""Exception types shared across the engine.

Every error carries a stable ``code`` string (the class name) so that the
HTTP layer can map failures to machine-readable responses without parsing
messages.
"""


class OrdboostError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- validation of domain values ---

class WrongLength(OrdboostError):
    pass


class DuplicateItem(OrdboostError):
    pass


class OutOfRangeItem(OrdboostError):
    pass


class ItemOutOfRange(OrdboostError):
    """A constraint references an item outside the dataset's item range."""


class NonFiniteTarget(OrdboostError):
    pass


class InvalidHyperparams(OrdboostError):
    pass


class InvalidSpec(OrdboostError):
    pass


# --- datasets and files ---

class EmptyDataset(OrdboostError):
    pass


class IncompatibleDatasets(OrdboostError):
    pass


class InsufficientRows(OrdboostError):
    pass


class Malformed(OrdboostError):
    """Unparseable dataset or model file; message includes the line number."""


# --- fitting and search ---

class LengthMismatch(OrdboostError):
    pass


class NoViableCandidate(OrdboostError):
    pass


class SaturatedConstraint(OrdboostError):
    """The constraint already uses every item; no child can be generated."""


class DuplicateConstraint(OrdboostError):
    pass


# --- metrics ---

class Empty(OrdboostError):
    pass


# --- sessions ---

class UnknownSession(OrdboostError):
    pass


class UnknownDataset(OrdboostError):
    pass


class UnknownNode(OrdboostError):
    pass


class NodeInactive(OrdboostError):
    pass


class NodeActive(OrdboostError):
    pass


class AlreadyFinalized(OrdboostError):
    pass


class IndexOutOfRange(OrdboostError):
    pass


class EmptyModel(OrdboostError):
    pass
