"""Graded exterior algebra over the coefficient field.

Forms live on 2n anti-commuting generators.  A term is indexed by the
bitmask of the generators it uses; the sign of a product is the parity of
the merge permutation of the two index sets.  Inhomogeneous sums are legal
values, but degree-sensitive operations reject them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .coeff import CoeffScalar, ZERO
from .errors import DegreeTooHigh, DimensionMismatch, MixedDegree


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of index sets a and b; 0 on overlap."""
    if a & b:
        return 0
    sign = 1
    total_b = popcount(b)
    for i in indices_of(a):
        above = total_b - popcount(b & ((1 << i) - 1))
        if above % 2:
            sign = -sign
    return sign


class GradedBasis:
    """Ordered monomial bases of every degree, lexicographic on index tuples."""

    def __init__(self, dimension: int):
        self.dimension = dimension

    @staticmethod
    @lru_cache(maxsize=None)
    def _masks(dimension: int, degree: int):
        return tuple(mask_of(c) for c in combinations(range(dimension), degree))

    @staticmethod
    @lru_cache(maxsize=None)
    def _positions(dimension: int, degree: int):
        return {m: i for i, m in enumerate(GradedBasis._masks(dimension, degree))}

    def masks(self, degree: int):
        if not 0 <= degree <= self.dimension:
            return ()
        return self._masks(self.dimension, degree)

    def position(self, mask: int) -> int:
        return self._positions(self.dimension, popcount(mask))[mask]

    def size(self, degree: int) -> int:
        return comb(self.dimension, degree) if 0 <= degree <= self.dimension else 0


class InvariantForm:
    """Exterior-algebra element: {generator bitmask: nonzero coefficient}."""

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms=None):
        if dimension <= 0 or dimension % 2:
            raise DimensionMismatch(f"dimension must be positive even, got {dimension}")
        self.dimension = dimension
        clean = {}
        for mask, coefficient in (terms or {}).items():
            if mask < 0 or mask >> dimension:
                raise DimensionMismatch(f"mask {mask:b} exceeds dimension {dimension}")
            if not isinstance(coefficient, CoeffScalar):
                coefficient = CoeffScalar(coefficient)
            if not coefficient.is_zero:
                clean[mask] = coefficient
        self.terms = clean

    @classmethod
    def zero(cls, dimension: int) -> "InvariantForm":
        return cls(dimension)

    @classmethod
    def monomial(cls, dimension: int, indices, coefficient=1) -> "InvariantForm":
        return cls(dimension, {mask_of(indices): CoeffScalar(coefficient)})

    @classmethod
    def scalar(cls, dimension: int, coefficient) -> "InvariantForm":
        return cls(dimension, {0: coefficient})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({popcount(m) for m in self.terms})

    @property
    def degree(self):
        """Common degree of all terms; None for zero, raises on mixed."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise MixedDegree(f"form mixes degrees {degs}")
        return degs[0]

    def homogeneous_degree(self, default=None):
        degs = self.degrees()
        if not degs:
            return default
        if len(degs) > 1:
            raise MixedDegree(f"form mixes degrees {degs}")
        return degs[0]

    def coefficient(self, mask: int) -> CoeffScalar:
        return self.terms.get(mask, ZERO)

    def _check_dim(self, other):
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"forms on different dimensions {self.dimension} vs {other.dimension}")

    def __add__(self, other):
        self._check_dim(other)
        terms = dict(self.terms)
        for mask, coefficient in other.terms.items():
            acc = terms.get(mask, ZERO) + coefficient
            if acc.is_zero:
                terms.pop(mask, None)
            else:
                terms[mask] = acc
        out = InvariantForm.__new__(InvariantForm)
        out.dimension, out.terms = self.dimension, terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = InvariantForm.__new__(InvariantForm)
        out.dimension = self.dimension
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __mul__(self, scalar):
        """Scalar multiple; use wedge() or ^ for products of forms."""
        if isinstance(scalar, InvariantForm):
            return NotImplemented
        if not isinstance(scalar, CoeffScalar):
            scalar = CoeffScalar(scalar)
        if scalar.is_zero:
            return InvariantForm.zero(self.dimension)
        out = InvariantForm.__new__(InvariantForm)
        out.dimension = self.dimension
        out.terms = {m: c * scalar for m, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, CoeffScalar):
            scalar = CoeffScalar(scalar)
        return self * (CoeffScalar(1) / scalar)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __repr__(self):
        from .exprparse import form_to_expr
        return f"InvariantForm({form_to_expr(self)})"


def wedge(a: InvariantForm, b: InvariantForm) -> InvariantForm:
    """Exterior product with the merge-permutation sign convention."""
    a._check_dim(b)
    terms: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign = merge_sign(ma, mb)
            if sign == 0:
                continue
            mask = ma | mb
            c = ca * cb
            if sign < 0:
                c = -c
            acc = terms.get(mask, ZERO) + c
            if acc.is_zero:
                terms.pop(mask, None)
            else:
                terms[mask] = acc
    out = InvariantForm.__new__(InvariantForm)
    out.dimension, out.terms = a.dimension, terms
    return out


def wedge_power(a: InvariantForm, power: int) -> InvariantForm:
    result = InvariantForm.scalar(a.dimension, 1)
    for _ in range(power):
        result = wedge(result, a)
    return result


def lefschetz(a: InvariantForm, omega: InvariantForm, power: int = 1) -> InvariantForm:
    """(omega^r / r!) wedge a, exactly."""
    if power < 0:
        raise ValueError("negative Lefschetz power")
    a._check_dim(omega)
    return wedge(wedge_power(omega, power), a) * Fraction(1, factorial(power))


def is_primitive(a: InvariantForm, omega: InvariantForm) -> bool:
    """True iff omega^(n-k+1) wedge a vanishes (k = degree of a, 2n ambient)."""
    if a.is_zero:
        return True
    k = a.degree
    n = a.dimension // 2
    if k > n:
        raise DegreeTooHigh(f"primitivity needs degree <= {n}, got {k}")
    return lefschetz(a, omega, n - k + 1).is_zero
