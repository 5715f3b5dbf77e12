"""Exception taxonomy shared by all gcsg modules.

Input problems (bad graphs, files, decompositions) raise InputError
subclasses; size guards raise TooLarge; InternalCheckError means a
library self-check failed and is never the caller's fault.
"""


class GcsgError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GcsgError):
    """Invalid user-supplied data (graph, file, decomposition, ...)."""


# -- graph construction / lookup ------------------------------------------

class DuplicateNode(InputError):
    pass


class InvalidNodeId(InputError):
    pass


class UnknownEndpoint(InputError):
    pass


class SelfLoop(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class NonFiniteWeight(InputError):
    pass


class UnknownNode(InputError):
    pass


# -- valuations -------------------------------------------------------------

class MissingWeights(InputError):
    pass


class MissingLabels(InputError):
    pass


class EmptyEdgeSet(InputError):
    pass


class MissingEntry(InputError):
    pass


class SeparationViolated(InputError):
    pass


# -- partitions -------------------------------------------------------------

class NotSubset(InputError):
    pass


class AgreementViolated(InputError):
    pass


class MalformedCode(InputError):
    pass


# -- tree decompositions ----------------------------------------------------

class EmptyDecomposition(InputError):
    pass


class InvalidDecomposition(InputError):
    pass


class NotAGrid(InputError):
    pass


class InvalidSeparator(InputError):
    pass


# -- solvers ----------------------------------------------------------------

class Disconnected(InputError):
    pass


class MethodNeedsDecomposition(InputError):
    pass


class TooLarge(GcsgError):
    """A size guard tripped; the instance exceeds the configured cap."""


class InternalCheckError(GcsgError):
    """A library invariant failed at runtime; indicates a bug, not bad input."""


class MissingChildEntry(InternalCheckError):
    pass


class MissingWitness(InternalCheckError):
    pass


# -- file formats -----------------------------------------------------------

class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass
