"""Exception hierarchy shared by every layer of the engine."""


class FusionLabError(Exception):
    pass


class DegreeMismatch(FusionLabError, ValueError):
    pass


class CapExceeded(FusionLabError):
    """A configured safety cap (order, enumeration, class count) was hit."""


class NotASubgroup(FusionLabError, ValueError):
    pass


class NotNormal(FusionLabError, ValueError):
    pass


class InternalCheckError(FusionLabError):
    """Two independent computations of the same quantity disagreed.

    This always signals an engine bug, never a property of the input group.
    """


class ClassificationError(FusionLabError):
    pass
