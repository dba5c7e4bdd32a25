import numpy as np

from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from gupqm.model.classical.action import ActionCoefficients, check_caustic
from gupqm.model.classical.action import free_action_coefficients, invariants
from gupqm.model.classical.action import sho_action_coefficients
from gupqm.model.errors import DomainError
from gupqm.model.system.endpoints import principal_power
from gupqm.model.system.parameters.ModelParams import ModelParams
from typing import Optional, Tuple

__BETA_ERROR = "Unknown prefactor constant beta%s"
__FREE_ERROR = "The oscillator propagator requires omega > 0"


@dataclass(frozen=True)
class PrefactorSpec:
    """
    Constants of the first-order prefactor ansatz. The composition law holds
    only for the canonical values of the dimension, beta1 = D(D+2)/8,
    beta2 = -(D+2)/8 and beta3 = 1; other values serve as negative controls.
    """

    beta1: float
    beta2: float
    beta3: float = 1.0

    @staticmethod
    def canonical(D: int) -> 'PrefactorSpec':
        return PrefactorSpec(D * (D + 2) / 8, -(D + 2) / 8, 1.0)

    def perturbed(self, index: int, delta: float) -> 'PrefactorSpec':
        """Returns the spec with beta<index> moved by delta."""
        name = f'beta{index}'
        if not hasattr(self, name):
            raise DomainError(_beta_message(index))
        return replace(self, **{name: getattr(self, name) + delta})


@dataclass(frozen=True)
class PrefactorCoefficients:
    """
    Coefficients of the first-order prefactor between x and y,
        f = F0 + F1 (|x|^2 + |y|^2) + F2 x.y
    """

    F0: complex
    F1: complex
    F2: complex

    def f(self, x2, y2, xy):
        return self.F0 + self.F1 * (x2 + y2) + self.F2 * xy


class Propagator(ABC):
    """
    First-order propagator of the form
        K(x, y; T) = L(T) [1 + alpha f(x, y; T)] exp(i/hbar (S0 + alpha S1))
    with S0, S1 and f quadratic or quartic forms of the invariants of the
    final point x and the initial point y.
    """

    def __init__(self, params: ModelParams, spec: Optional[PrefactorSpec] = None):
        self.params = params
        self.spec = spec or PrefactorSpec.canonical(params.D)

    @abstractmethod
    def leading(self, T: complex) -> complex:
        """The leading (alpha = 0) prefactor L(T)."""

    @abstractmethod
    def action(self, T: complex) -> ActionCoefficients:
        """The coefficients of S0 and S1."""

    @abstractmethod
    def prefactor(self, T: complex) -> PrefactorCoefficients:
        """The coefficients of the first-order prefactor f."""

    def forms(
            self,
            T: complex
    ) -> Tuple[complex, ActionCoefficients, PrefactorCoefficients]:
        return self.leading(T), self.action(T), self.prefactor(T)

    def parts(self, x, y, T: complex) -> Tuple:
        """
        The zeroth-order kernel L exp(i S0/hbar) and the first-order
        correction f + i S1/hbar between final points x and initial points
        y, both of shape (..., D).
        """

        hbar = self.params.hbar
        leading, action, prefactor = self.forms(T)
        x2, y2, xy = invariants(x, y)

        gaussian = leading * np.exp(1j * action.S0(x2, y2, xy) / hbar)
        correction = prefactor.f(x2, y2, xy) + 1j * action.S1(x2, y2, xy) / hbar
        return gaussian, correction

    def amplitude(self, x, y, T: complex, linearized: bool = False):
        """
        Vectorised kernel between final points x and initial points y, both
        of shape (..., D). When linearized, the first-order expansion
        L exp(i S0/hbar) [1 + alpha (f + i S1/hbar)] is returned instead.
        """

        hbar, alpha = self.params.hbar, self.params.alpha
        if linearized:
            gaussian, correction = self.parts(x, y, T)
            return gaussian * (1 + alpha * correction)

        leading, action, prefactor = self.forms(T)
        x2, y2, xy = invariants(x, y)
        S0 = action.S0(x2, y2, xy)
        S1 = action.S1(x2, y2, xy)
        f = prefactor.f(x2, y2, xy)
        return leading * (1 + alpha * f) * np.exp(1j * (S0 + alpha * S1) / hbar)


class FreeParticle(Propagator):
    """Free particle in D dimensions."""

    def leading(self, T: complex) -> complex:
        p = self.params
        return principal_power(p.m / (2 * np.pi * p.hbar * 1j * T), p.D / 2)

    def action(self, T: complex) -> ActionCoefficients:
        return free_action_coefficients(self.params, T)

    def prefactor(self, T: complex) -> PrefactorCoefficients:
        m, hbar = self.params.m, self.params.hbar
        b = self.spec
        T = complex(T)
        # small omega T limit of the oscillator ansatz
        return PrefactorCoefficients(
            F0=8 * b.beta1 * 1j * hbar * m / T,
            F1=16 * b.beta2 * m ** 2 / T ** 2,
            F2=-32 * b.beta2 * m ** 2 / T ** 2
        )


class Oscillator(Propagator):
    """Isotropic harmonic oscillator in D dimensions."""

    def __init__(self, params: ModelParams, spec: Optional[PrefactorSpec] = None):
        if params.free:
            raise DomainError(_free_message())
        super().__init__(params, spec)

    def leading(self, T: complex) -> complex:
        p = self.params
        s, _ = check_caustic(p.omega, T)
        return principal_power(
            p.m * p.omega / (2 * np.pi * p.hbar * 1j * s), p.D / 2
        )

    def action(self, T: complex) -> ActionCoefficients:
        return sho_action_coefficients(self.params, T)

    def prefactor(self, T: complex) -> PrefactorCoefficients:
        p, b = self.params, self.spec
        s, c = check_caustic(p.omega, T)
        x = p.omega * complex(T)
        cos2 = np.cos(2 * x)

        scale = b.beta2 * p.m ** 2 * p.omega ** 2 / s ** 3
        return PrefactorCoefficients(
            F0=b.beta1 * 1j * p.hbar * p.m * p.omega / s ** 2
            * (2 * x + 5 * s * c + x * cos2),
            F1=scale * (6 * x * c + 10 * s - 6 * b.beta3 * s ** 3),
            F2=scale * (-4 * x * (2 + cos2) - 20 * s * c)
        )


def propagator(
        params: ModelParams,
        spec: Optional[PrefactorSpec] = None
) -> Propagator:
    """Returns the propagator of the system described by the parameters."""
    if params.free:
        return FreeParticle(params, spec)
    return Oscillator(params, spec)


def _beta_message(index) -> str:
    return __BETA_ERROR % index


def _free_message() -> str:
    return __FREE_ERROR
