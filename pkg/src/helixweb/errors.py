"""Exception hierarchy shared by all helixweb modules."""


class HelixwebError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HelixwebError):
    """Malformed or mismatched input: wrong vector length, mixed surfaces,
    unparseable JSON, unknown seed name."""


class DomainError(HelixwebError):
    """Input is well-formed but outside the mathematical domain of the
    operation (non-exceptional class, non-normalizable torsion class,
    incoherent pair)."""


class MutationError(DomainError):
    """A mutation was requested whose orthogonality precondition fails."""


class StructureError(HelixwebError):
    """A composite structure (collection, block partition, levelling,
    helix) violates its defining conditions."""


class InvariantBreach(HelixwebError):
    """An internal consistency check failed.  These conditions are
    guaranteed by theory for del Pezzo inputs; seeing one means either a
    bug or an input outside the supported class."""
