from dataclasses import dataclass, field, replace
from gupqm.model.errors import DomainError
from gupqm.model.system.endpoints import Endpoints, TimeArg
from typing import Dict, Optional

__SPLIT_ERROR = "Split times must be non zero and of the same kind: %s + %s"


@dataclass(frozen=True)
class CompositionSplit:
    """
    Split of the evolution time T = T1 + T2 at an intermediate point, which
    is integrated over the whole of R^D.
    """

    T1: TimeArg
    T2: TimeArg
    endpoints: Endpoints

    @staticmethod
    def of(e: Endpoints, T1: complex) -> 'CompositionSplit':
        """Split the time of the endpoints, T1 being of the same kind."""
        first = TimeArg(T1, e.time.euclidean)
        second = TimeArg(e.time.value - T1, e.time.euclidean)
        return CompositionSplit(first, second, e)

    def __post_init__(self):
        if self.T1.euclidean != self.T2.euclidean:
            raise DomainError(_split_message(self.T1, self.T2))

    @property
    def D(self) -> int:
        return self.endpoints.D

    @property
    def q0(self):
        return self.endpoints.q0

    @property
    def qf(self):
        return self.endpoints.qf

    def swapped(self) -> 'CompositionSplit':
        """The mirrored split (T2, T1) between swapped endpoints."""
        return CompositionSplit(self.T2, self.T1, self.endpoints.swapped())


@dataclass(frozen=True)
class ResidualReport:
    """
    Outcome of a consistency check.

    label: str
        Name of the check
    residual_norm: float
        Size of the violation
    reference_norm: float
        Size of the quantity the violation is compared with
    alpha_used: float
        GUP parameter of the evaluation
    scaling_ratio: float
        Ratio measuring how the residual scales, when the check has one
    seed, trial: int
        Replay information of randomized checks
    tolerance: float
        Threshold the check is judged against, when judged
    passed: bool
        Verdict, None for measurements only
    details: Dict[str, float]
        Further measured quantities
    """

    label: str
    residual_norm: float
    reference_norm: float
    alpha_used: float
    scaling_ratio: Optional[float] = None
    seed: Optional[int] = None
    trial: Optional[int] = None
    tolerance: Optional[float] = None
    passed: Optional[bool] = None
    details: Dict[str, float] = field(default_factory=dict)

    @property
    def relative(self) -> float:
        """Residual relative to the reference (the residual if it vanishes)."""
        if self.reference_norm == 0:
            return self.residual_norm
        return self.residual_norm / self.reference_norm

    def judged(self, tolerance: float, passed: bool = None) -> 'ResidualReport':
        """
        Returns the report with a verdict: the given one, or whether the
        relative residual is within the tolerance.
        """

        if passed is None:
            passed = self.relative <= tolerance
        return replace(self, tolerance=tolerance, passed=bool(passed))

    def replayed(self, seed: int, trial: int) -> 'ResidualReport':
        return replace(self, seed=seed, trial=trial)


def _split_message(T1: TimeArg, T2: TimeArg) -> str:
    return __SPLIT_ERROR % (T1, T2)
