"""Exception hierarchy.

Everything raised on purpose by the library derives from
:class:`CambrianError`, so front ends can separate domain failures from bugs.
"""


class CambrianError(Exception):
    """Base class for domain errors."""


class QuiverError(CambrianError):
    pass


class CycleError(QuiverError):
    pass


class DisconnectedError(QuiverError):
    pass


class EmptyError(QuiverError):
    pass


class GeneratorIndexError(CambrianError, IndexError):
    pass


class ResourceError(CambrianError):
    """An enumeration would exceed the configured element budget."""


class NotReducedError(CambrianError):
    pass


class NotSortableError(CambrianError):
    pass


class NotPositiveRootError(CambrianError):
    pass


class AmbiguityError(CambrianError):
    """A weak-order maximum that should be unique is not."""


class SingularError(CambrianError):
    pass


class NotDynkinError(CambrianError):
    pass


class NotRootError(CambrianError):
    pass


class ShapeError(CambrianError):
    pass


class RangeError(CambrianError):
    pass
