"""Exception hierarchy.

Every error raised by the library derives from GridTbError so callers
(and the CLI exit-code mapping) can distinguish library failures from
programming errors.
"""


class GridTbError(Exception):
    """Base class for all gridtb errors."""


# --- input / parse errors -------------------------------------------------

class FormatError(GridTbError):
    """Malformed textual input (PD code, braid word, grid file, record)."""


class NotAPermutation(FormatError):
    """A grid marker sequence is not a permutation of 1..n."""


class MarkerCollision(FormatError):
    """X and O markers share a cell in some column."""


class TooSmall(FormatError):
    """Grid size below 2."""


class ArcMultiplicityError(FormatError):
    """An arc label does not occur exactly twice in a PD code."""


class OrientationConflict(FormatError):
    """No consistent orientation of the arcs of a PD code exists."""


class NonPlanarDiagram(FormatError):
    """The PD code does not describe a diagram in the plane."""


class LetterOutOfRange(FormatError):
    """A braid letter references a strand outside 1..m-1."""


# --- engine errors --------------------------------------------------------

class VariableMismatch(GridTbError):
    """Arithmetic on polynomials with different variable names."""


class DegreeOfZero(GridTbError):
    """Degree query on the zero polynomial."""


class NonRealResult(GridTbError):
    """Dubrovnik transform produced a genuinely imaginary term."""


class EmptyTable(GridTbError):
    """Degree query on an empty homology table."""


class CrossingLimitExceeded(GridTbError):
    """Diagram exceeds the configured crossing budget for an engine."""


class FieldUnsupported(GridTbError):
    """Requested coefficient field is not available."""


class MemoryBudgetExceeded(GridTbError):
    """Homology engine exceeded its generator-count budget."""


# --- data / certification errors -------------------------------------------

class FingerprintMismatch(GridTbError):
    """Two representations of one knot record disagree."""


class InconsistentRecord(GridTbError):
    """Recorded invariant values contradict a provable inequality."""
