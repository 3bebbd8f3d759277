"""Exception hierarchy shared by all modules."""


class OrbitAtlasError(Exception):
    pass


class NotPrime(OrbitAtlasError, ValueError):
    pass


class ShapeMismatch(OrbitAtlasError, ValueError):
    pass


class ModulusMismatch(OrbitAtlasError, ValueError):
    pass


class Singular(OrbitAtlasError, ValueError):
    pass


class ZeroDiagonal(OrbitAtlasError, ValueError):
    pass


class AmbientMismatch(OrbitAtlasError, ValueError):
    pass


class WeightMismatch(OrbitAtlasError, ValueError):
    pass


class NegativePart(OrbitAtlasError, ValueError):
    pass


class PreconditionViolated(OrbitAtlasError, ValueError):
    pass


class LevelError(PreconditionViolated):
    pass


class NotARefinement(PreconditionViolated):
    pass


class TooLarge(OrbitAtlasError):
    """An enumeration would exceed the desk-scale bound."""


class CapExceeded(OrbitAtlasError):
    """Group closure grew past the element cap."""

    def __init__(self, cap, partial):
        super().__init__(f"group closure exceeds cap {cap} (found {partial} elements)")
        self.cap = cap
        self.partial = partial


class NonIntegerAverage(OrbitAtlasError, ArithmeticError):
    """Burnside average was not an integer; always a bug."""


class ChoiceDependent(OrbitAtlasError, ArithmeticError):
    """Incidence counts depended on the sampled pair; always a bug."""
