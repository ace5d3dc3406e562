"""Exception types raised by the library."""


class EefTextcatError(Exception):
    """Base class for all errors raised by eef_textcat."""


class EmptyClass(EefTextcatError):
    """A declared class has no documents."""


class VocabularyTooSmall(EefTextcatError):
    """Fewer than two distinct terms; a multinomial needs at least two cells."""


class DegenerateClass(EefTextcatError):
    """A class has zero total tokens and no smoothing to cover it."""


class ZeroProbabilityCell(EefTextcatError):
    """A document puts mass on a cell whose model probability is zero."""


class InvalidK(EefTextcatError):
    """Requested feature count outside 1 <= K <= D-1."""


class DegenerateReduction(EefTextcatError):
    """A reduced remainder cell came out negative; the input model is corrupt."""


class NonpositiveCell(EefTextcatError):
    """A cell probability is <= 0 where a log ratio is required."""


class TooLarge(EefTextcatError):
    """Exhaustive enumeration would exceed the configured outcome cap."""


class EmptyTestSplit(EefTextcatError):
    """The evaluation split contains no documents."""
