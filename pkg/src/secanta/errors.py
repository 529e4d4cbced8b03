"""Exception types shared across the package."""


class SecantaError(ValueError):
    """Base class for all input/domain errors raised by this package."""


class IndexOutOfRange(SecantaError):
    pass


class RepeatedFermionIndex(SecantaError):
    pass


class AllZero(SecantaError):
    """A state tensor must have at least one nonzero entry."""


class EmptyOrFullModeSet(SecantaError):
    """Flattenings need a nonempty proper subset of the modes."""


class SpecMismatch(SecantaError):
    """Operands live in different state spaces, or the wrong kind was passed."""


class DimensionMismatch(SecantaError):
    pass


class RankDeficientInjection(SecantaError):
    """Embeddings require full-column-rank local maps."""


class DependentFermionVectors(SecantaError):
    """A wedge of linearly dependent vectors is the zero tensor."""


class KetSyntaxError(SecantaError):
    """Malformed ket expression; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LabelLengthMismatch(SecantaError):
    pass


class DigitOutOfRange(SecantaError):
    pass


class FermionRepeatedDigit(SecantaError):
    pass


class ZeroMonomial(SecantaError):
    pass


class NotCoprime(SecantaError):
    pass


class DegreeMismatch(SecantaError):
    pass


class BadParams(SecantaError):
    pass


class ZeroParameter(SecantaError):
    pass
