import math
import numpy as np

from dataclasses import dataclass
from enum import Enum
from gupqm.model.errors import DimensionError, DomainError
from gupqm.model.moments.polynomial import MultiPoly
from gupqm.model.system.endpoints import principal_power
from typing import Optional, Sequence, Tuple

# relative slack accepted on Re(a) >= 0, absorbing the rounding of weights
# assembled from trigonometric coefficients
REAL_PART_SLACK = 1e-14

__ZERO_WEIGHT_ERROR = "Gaussian weight with a = 0 is not integrable"
__DIVERGENT_WEIGHT_ERROR = "Gaussian weight with Re(a) = %s < 0 diverges"
__KIND_ERROR = "Moment kind '%s' %s a direction vector x"
__DIMENSION_ERROR = "Polynomial of dimension %d against a weight of dimension %d"
__DIRECTION_ERROR = "Direction of dimension %d against a weight of dimension %d"


@dataclass(frozen=True)
class GaussianWeight:
    """
    Weight exp(-a |q|^2 + 2 b.q) over R^D, with complex a and b.

    a: complex
        Quadratic coefficient, a != 0 and Re(a) >= 0 (purely imaginary values
        are integrated only analytically)
    b: Tuple[complex, ...]
        Linear coefficients, one per dimension
    """

    a: complex
    b: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, 'a', complex(self.a))
        object.__setattr__(
            self, 'b', tuple(complex(v) for v in np.atleast_1d(self.b))
        )
        _check_weight(self.a)

    @staticmethod
    def centered(a: complex, D: int) -> 'GaussianWeight':
        return GaussianWeight(a, (0j,) * D)

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def b_squared(self) -> complex:
        """Unconjugated sum of squares of b."""
        return complex(sum(v * v for v in self.b))

    @property
    def center(self) -> Tuple[complex, ...]:
        """The stationary point b / a of the exponent."""
        return tuple(v / self.a for v in self.b)

    @property
    def volume(self) -> complex:
        """Integral of the centered weight, (pi/a)^(D/2)."""
        return principal_power(np.pi / self.a, self.D / 2)

    @property
    def exponent(self) -> complex:
        """Value |b|^2 / a of the exponent at the stationary point."""
        return self.b_squared / self.a

    @property
    def normalization(self) -> complex:
        """Integral of the bare weight, (pi/a)^(D/2) exp(|b|^2/a)."""
        return self.volume * complex(np.exp(self.exponent))


class MomentKind(Enum):
    """The moments admitting a closed formula."""

    BASIC = 'basic'
    Q2 = 'q2'
    XQ = 'xq'
    XQ2 = 'xq2'
    Q2XQ = 'q2xq'
    Q4 = 'q4'

    @property
    def requires_x(self) -> bool:
        return self in (MomentKind.XQ, MomentKind.XQ2, MomentKind.Q2XQ)

    def polynomial(self, D: int, x: Optional[Sequence[complex]] = None):
        """Returns the polynomial multiplying the weight for this kind."""
        _check_kind(self, x)
        q2 = MultiPoly.norm_squared(D)
        if self is MomentKind.BASIC:
            return MultiPoly.constant(D, 1)
        if self is MomentKind.Q2:
            return q2
        if self is MomentKind.Q4:
            return q2 * q2

        xq = MultiPoly.dot(D, x)
        if self is MomentKind.XQ:
            return xq
        if self is MomentKind.XQ2:
            return xq * xq
        return q2 * xq


def closed_moment(
        kind: MomentKind,
        w: GaussianWeight,
        x: Optional[Sequence[complex]] = None
) -> complex:
    """
    Closed formula of the integral of a moment polynomial against a Gaussian
    weight. The squared norms of b are analytic (unconjugated) sums.

    Parameters
    ----------
    kind: MomentKind
        Which moment to evaluate
    w: GaussianWeight
        The Gaussian weight
    x: Sequence[complex]
        The direction vector, required exactly by the kinds involving x.q
    Returns
    -------
    The value of the integral.
    """

    kind = MomentKind(kind)
    _check_kind(kind, x)

    a, D = w.a, w.D
    b2 = w.b_squared
    base = w.normalization

    if kind is MomentKind.BASIC:
        return base
    if kind is MomentKind.Q2:
        return base / a * (D / 2 + b2 / a)
    if kind is MomentKind.Q4:
        return base / a ** 2 * (
            D * (D + 2) / 4 + (D + 2) * b2 / a + b2 ** 2 / a ** 2
        )

    if len(x) != D:
        raise DimensionError(__DIRECTION_ERROR % (len(x), D))
    x = np.asarray(x, dtype=complex)
    xb = complex(x @ np.asarray(w.b))
    x2 = complex(x @ x)

    if kind is MomentKind.XQ:
        return base * xb / a
    if kind is MomentKind.XQ2:
        return base * (x2 / (2 * a) + xb ** 2 / a ** 2)
    return base * ((D + 2) / 2 + b2 / a) * xb / a ** 2


def central_moment(k: int, a: complex) -> complex:
    """
    One-dimensional central moment of exp(-a u^2), normalized to the bare
    weight: zero for odd k, (k - 1)!! / (2a)^(k/2) otherwise.
    """

    if k % 2:
        return 0j
    return math.prod(range(k - 1, 0, -2)) / (2 * a) ** (k // 2)


def expectation(p: MultiPoly, w: GaussianWeight) -> complex:
    """
    Mean of p(q) under the normalized weight, that is the integral of
    p(q) exp(-a |q|^2 + 2 b.q) divided by the integral of the weight alone.
    The square is completed (q = b/a + u), the polynomial is shifted exactly
    and every monomial of the shifted polynomial is replaced by its Isserlis
    pairing count.

    Parameters
    ----------
    p: MultiPoly
        The polynomial, of degree at most the MultiPoly bound
    w: GaussianWeight
        The Gaussian weight, of the same dimension
    Returns
    -------
    The normalized value of the integral.
    """

    if p.D != w.D:
        raise DimensionError(__DIMENSION_ERROR % (p.D, w.D))
    if p.is_zero():
        return 0j

    contributions = []
    for exponent, coefficient in p.shift(w.center):
        # any odd exponent makes the whole monomial vanish
        if any(k % 2 for k in exponent):
            continue
        value = coefficient
        for k in exponent:
            value *= central_moment(k, w.a)
        contributions.append(value)

    # compensated summation on both parts
    return complex(
        math.fsum(c.real for c in contributions),
        math.fsum(c.imag for c in contributions)
    )


def integrate_poly_gaussian(p: MultiPoly, w: GaussianWeight) -> complex:
    """
    Exact integral of p(q) exp(-a |q|^2 + 2 b.q), the polynomial being of
    degree at most the MultiPoly bound.
    """

    return w.normalization * expectation(p, w)


def _check_weight(a: complex):
    if a == 0:
        raise DomainError(__ZERO_WEIGHT_ERROR)
    if a.real < -REAL_PART_SLACK * abs(a):
        raise DomainError(__DIVERGENT_WEIGHT_ERROR % a.real)


def _check_kind(kind: MomentKind, x):
    if kind.requires_x and x is None:
        raise DomainError(__KIND_ERROR % (kind.value, 'requires'))
    if not kind.requires_x and x is not None:
        raise DomainError(__KIND_ERROR % (kind.value, 'does not take'))
