import numpy as np

from gupqm.model.system.endpoints import Endpoints, TimeArg
from gupqm.model.system.parameters.ModelParams import ModelParams


def relative(value: complex, reference: complex) -> float:
    return abs(value - reference) / abs(reference)


def oscillator(D: int = 2, alpha: float = 1e-3, **others) -> ModelParams:
    return ModelParams(omega=1.0, alpha=alpha, D=D, **others)


def random_endpoints(
        rng: np.random.Generator,
        D: int,
        time: TimeArg,
        bound: float = 1.0
) -> Endpoints:
    return Endpoints(
        tuple(rng.uniform(-bound, bound, D)),
        tuple(rng.uniform(-bound, bound, D)),
        time
    )
