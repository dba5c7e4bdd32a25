import itertools
import math
import numpy as np

from gupqm.model.errors import DegreeOverflowError, DimensionError
from typing import Dict, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, float, complex]

MAX_DEGREE = 8

__DEGREE_ERROR = "Polynomial degree %d exceeds the supported bound %d"
__DIMENSION_ERROR = "Cannot combine polynomials of dimension %d and %d"
__EXPONENT_ERROR = "Exponent %s does not match dimension %d"


class MultiPoly:
    """
    Sparse complex polynomial in D variables, stored as a map from exponent
    multi-indices to coefficients. Instances are kept canonical: no zero
    coefficients, no duplicated monomials, total degree <= MAX_DEGREE.
    """

    __slots__ = ('_D', '_terms')

    # numpy scalars defer to the reflected operators
    __array_ufunc__ = None

    def __init__(self, D: int, terms: Mapping[Exponent, Scalar] = None):
        self._D = int(D)
        self._terms: Dict[Exponent, complex] = dict()
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(k) for k in exponent)
            _check_exponent(exponent, self._D)
            self._accumulate(exponent, complex(coefficient))
        self._canonicalize()

    # constructors

    @staticmethod
    def constant(D: int, value: Scalar) -> 'MultiPoly':
        return MultiPoly(D, {(0,) * D: value})

    @staticmethod
    def variable(D: int, axis: int) -> 'MultiPoly':
        """The monomial q_axis (axis counted from zero)."""
        exponent = [0] * D
        exponent[axis] = 1
        return MultiPoly(D, {tuple(exponent): 1})

    @staticmethod
    def dot(D: int, x: Sequence[Scalar]) -> 'MultiPoly':
        """The linear form x . q."""
        if len(x) != D:
            raise DimensionError(_dimension_message(D, len(x)))
        return sum(
            (complex(c) * MultiPoly.variable(D, i) for i, c in enumerate(x)),
            MultiPoly(D)
        )

    @staticmethod
    def norm_squared(D: int) -> 'MultiPoly':
        """The quadratic form |q|^2."""
        terms = dict()
        for i in range(D):
            exponent = [0] * D
            exponent[i] = 2
            terms[tuple(exponent)] = 1
        return MultiPoly(D, terms)

    # properties

    @property
    def D(self) -> int:
        return self._D

    @property
    def terms(self) -> Dict[Exponent, complex]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[Tuple[Exponent, complex]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._D == other._D and self._terms == other._terms

    def __repr__(self) -> str:
        monomials = ' + '.join(f'({c})*q^{e}' for e, c in self)
        return f'MultiPoly(D={self._D}: {monomials or "0"})'

    # arithmetic

    def __add__(self, other) -> 'MultiPoly':
        other = self._coerce(other)
        result = MultiPoly(self._D, self._terms)
        for exponent, coefficient in other._terms.items():
            result._accumulate(exponent, coefficient)
        result._canonicalize()
        return result

    __radd__ = __add__

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly(self._D, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> 'MultiPoly':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'MultiPoly':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'MultiPoly':
        if not isinstance(other, MultiPoly):
            factor = complex(other)
            return MultiPoly(
                self._D, {e: factor * c for e, c in self._terms.items()}
            )

        if other._D != self._D:
            raise DimensionError(_dimension_message(self._D, other._D))
        _check_degree(self.degree + other.degree)

        result = MultiPoly(self._D)
        for (e1, c1), (e2, c2) in itertools.product(
                self._terms.items(), other._terms.items()
        ):
            result._accumulate(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        result._canonicalize()
        return result

    __rmul__ = __mul__

    def __pow__(self, power: int) -> 'MultiPoly':
        assert int(power) == power and power >= 0, "Only natural powers"
        _check_degree(self.degree * power)
        result = MultiPoly.constant(self._D, 1)
        for _ in range(int(power)):
            result = result * self
        return result

    # evaluation

    def shift(self, center: Sequence[Scalar]) -> 'MultiPoly':
        """
        Returns the polynomial u -> p(u + center), expanding every monomial
        with the binomial theorem over complex coefficients.

        Parameters
        ----------
        center: Sequence[Scalar]
            The (complex) translation vector
        Returns
        -------
        The translated polynomial, exact up to floating point rounding.
        """

        if len(center) != self._D:
            raise DimensionError(_dimension_message(self._D, len(center)))
        center = [complex(c) for c in center]

        result = MultiPoly(self._D)
        for exponent, coefficient in self._terms.items():
            # every axis contributes sum_j C(k, j) c^(k - j) u^j
            for js in itertools.product(*(range(k + 1) for k in exponent)):
                value = coefficient
                for k, j, c in zip(exponent, js, center):
                    value *= math.comb(k, j) * c ** (k - j)
                result._accumulate(js, value)
        result._canonicalize()
        return result

    def evaluate(self, points) -> Union[complex, np.ndarray]:
        """
        Evaluate the polynomial on one point (shape (D,)) or on a batch of
        points (shape (..., D)).
        """

        points = np.asarray(points, dtype=complex)
        if points.shape[-1] != self._D:
            raise DimensionError(_dimension_message(self._D, points.shape[-1]))

        result = np.zeros(points.shape[:-1], dtype=complex)
        for exponent, coefficient in self._terms.items():
            result = result + coefficient * np.prod(
                points ** np.asarray(exponent), axis=-1
            )
        return complex(result) if result.ndim == 0 else result

    __call__ = evaluate

    # internals

    def _coerce(self, other) -> 'MultiPoly':
        if isinstance(other, MultiPoly):
            if other._D != self._D:
                raise DimensionError(_dimension_message(self._D, other._D))
            return other
        return MultiPoly.constant(self._D, other)

    def _accumulate(self, exponent: Exponent, coefficient: complex):
        self._terms[exponent] = self._terms.get(exponent, 0j) + coefficient

    def _canonicalize(self):
        self._terms = {e: c for e, c in self._terms.items() if c != 0}
        _check_degree(self.degree)


def _check_degree(degree: int):
    if degree > MAX_DEGREE:
        raise DegreeOverflowError(__DEGREE_ERROR % (degree, MAX_DEGREE))


def _check_exponent(exponent: Exponent, D: int):
    if len(exponent) != D or any(k < 0 for k in exponent):
        raise DimensionError(__EXPONENT_ERROR % (exponent, D))


def _dimension_message(d1: int, d2: int) -> str:
    return __DIMENSION_ERROR % (d1, d2)
