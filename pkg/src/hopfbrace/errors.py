from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .hopf_core import CheckReport


class KernelError(Exception):
    """Base class for every error raised by the kernel."""


class FieldError(KernelError):
    """Unknown field name or a non-prime characteristic."""


class SignatureMismatch(KernelError):
    """Two structure maps cannot be composed."""


class InvalidPermutation(KernelError):
    """A leg permutation is not a permutation of the legs."""


class DimensionMismatch(KernelError):
    """Vector or matrix sizes do not agree."""


class NotInvertible(KernelError):
    """An element or matrix has no two-sided inverse."""


class NotAGroup(KernelError):
    """A multiplication table fails the group axioms."""


class CharacteristicTwo(KernelError):
    """The construction needs a field of characteristic different from 2."""


class SingularAntipode(KernelError):
    """The antipode is not bijective."""


class NotAHopfAlgebra(KernelError):
    """The antipode equations have a one-sided solution only."""


class NotCommutative(KernelError):
    """The underlying algebra is not commutative."""


class NotCocommutative(KernelError):
    """The comultiplication is not cocommutative."""


class RolesDiffer(KernelError):
    """The two Hopf algebras of a matched pair were expected to coincide."""


class CounitMismatch(KernelError):
    """Two counits supplied for one brace disagree."""


class UnknownObject(KernelError):
    """A zoo name or object reference could not be resolved."""


class CheckFailed(KernelError):
    """A constructor refused its input because an axiom check failed."""

    def __init__(self, report: "CheckReport", message: Optional[str] = None):
        self.report = report
        super().__init__(message or f"{type(self).__name__}: {report.summary()}")


class HopfCheckFailed(CheckFailed):
    pass


class BraceCheckFailed(CheckFailed):
    pass


class HarrisonCheckFailed(CheckFailed):
    pass


class LongCheckFailed(CheckFailed):
    pass


class CocycleCheckFailed(CheckFailed):
    pass


class RMatrixCheckFailed(CheckFailed):
    pass


class MatchedCheckFailed(CheckFailed):
    pass


class ComoduleBialgebraCheckFailed(CheckFailed):
    pass


class Eq31Failed(CheckFailed):
    pass


class Eq41Failed(CheckFailed):
    pass


class Eq42Failed(CheckFailed):
    pass


class Eq43Failed(CheckFailed):
    pass


class ClosedFormulaMismatch(CheckFailed):
    pass


class HypothesisFailed(CheckFailed):
    """A hypothesis of a construction does not hold; `which` names it."""

    def __init__(self, which: str, report: "CheckReport"):
        self.which = which
        super().__init__(report, f"HypothesisFailed({which}): {report.summary()}")


class HopfFileError(KernelError):
    """A `.hopf` file could not be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)
