"""Exception types raised across the package."""


class BiquadError(Exception):
    """Base class for all package errors."""


class IncompleteFactorization(BiquadError):
    """Factorization budget exhausted with a composite cofactor left over."""

    def __init__(self, n, cofactor):
        super().__init__(f"could not fully factor {n}: composite cofactor {cofactor}")
        self.n = n
        self.cofactor = cofactor


class NotAResidue(BiquadError):
    pass


class NotA2adicSquare(BiquadError):
    pass


class ZeroElement(BiquadError):
    pass


class DegenerateField(BiquadError):
    pass


class NotARealField(BiquadError):
    pass


class NotApplicable(BiquadError):
    pass


class NotAUnit(BiquadError):
    pass


class InconsistentEmbedding(BiquadError):
    pass


class PrecisionExhausted(BiquadError):
    pass


class UnexpectedValuation(BiquadError):
    pass
