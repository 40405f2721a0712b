"""Exception hierarchy shared by every module."""


class QHLError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(QHLError, ValueError):
    pass


class CapacityError(QHLError, ValueError):
    pass


class ValidationError(QHLError, ValueError):
    pass


class DegenerateInputError(QHLError, ValueError):
    pass


class UnboundAtomError(QHLError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"atom {self.name!r} is not bound"


class NonCommutingError(QHLError):
    """Generators of a framework fail to commute.

    ``pairs`` holds ``(i, j, norm)`` triples where ``i`` and ``j`` are the
    generator labels (indices, or names when the caller supplied them).
    """

    def __init__(self, pairs):
        self.pairs = list(pairs)
        desc = ", ".join(f"({a}, {b}): {n:.3g}" for a, b, n in self.pairs)
        super().__init__(f"non-commuting generators {desc}")


class InconsistentFamilyError(QHLError):
    def __init__(self, max_off_diagonal):
        self.max_off_diagonal = max_off_diagonal
        super().__init__(
            "history family is not consistent: max off-diagonal decoherence "
            f"magnitude {max_off_diagonal:.3g}"
        )
