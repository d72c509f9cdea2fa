"""Exception hierarchy shared by the computational modules."""


class MappingToriError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MappingToriError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularLattice(MappingToriError):
    """A lattice map has zero determinant, so its cokernel is infinite."""


class IllPosedSum(MappingToriError):
    """A quadratic phase is not constant on cosets of the summation lattice."""


class ParabolicMonodromy(MappingToriError):
    """The monodromy has trace +2 or -2."""


class DegenerateFixedSet(MappingToriError):
    """``w (x) U - 1`` is singular, so the fixed points are not isolated."""

    def __init__(self, message, monodromy=None, weyl=None):
        super().__init__(message)
        self.monodromy = monodromy
        self.weyl = weyl


class CUnsupported(MappingToriError):
    """The lower-left entry of the monodromy vanishes where it must not."""


class ConventionError(MappingToriError):
    """An internal consistency check on a sign or normalization failed."""
