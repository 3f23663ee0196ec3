"""Exception types shared across the package."""


class OrigamiError(Exception):
    """Base class for all errors raised by this package."""


class DisconnectedOrigami(OrigamiError):
    """The permutation pair does not act transitively on the squares."""


class BadParameters(OrigamiError):
    """Family parameters violate the stairs size constraints."""


class ModelMismatch(OrigamiError):
    """Two homology classes belong to different homology models."""


class NotInKernel(OrigamiError):
    """A class with nonzero holonomy was passed where a holonomy-free one is required."""


class NotTwoCylinders(OrigamiError):
    """The direction does not decompose the surface into exactly two cylinders."""


class BadScale(OrigamiError):
    """The requested multitwist scale does not make every twist count integral."""


class DegenerateSpan(OrigamiError):
    """The three transvection vectors do not span a 3-dimensional subspace."""


class NoRadical(OrigamiError):
    """The pairing on the 3-dimensional subspace admits no nonzero radical vector."""


class NotSquare(OrigamiError):
    """A square matrix was expected."""


class NotSquarefree(OrigamiError):
    """A squarefree polynomial was expected."""


class NotReciprocal(OrigamiError):
    """A monic reciprocal polynomial of even degree was expected."""


class BadPrime(OrigamiError):
    """The modulus is not prime or divides the leading coefficient."""


class NotIrreducible(OrigamiError):
    """Irreducibility over the rationals could not be certified."""
