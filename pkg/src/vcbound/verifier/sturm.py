"""Exact distinct-real-root counting with Sturm sequences.

Univariate polynomials are :class:`SparsePolynomial` values with one
variable; internally they are dense coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionError, DomainError
from ..polynomial import SparsePolynomial

Dense = list[Fraction]


def _to_dense(p: SparsePolynomial) -> Dense:
    if p.num_vars != 1:
        raise DimensionError(f"expected a univariate polynomial, got {p.num_vars} variables")
    deg = p.total_degree()
    out = [Fraction(0)] * (deg + 1)
    for (e,), c in p.items():
        out[e] = c
    return out


def _from_dense(coeffs: Dense) -> SparsePolynomial:
    return SparsePolynomial({(i,): c for i, c in enumerate(coeffs) if c}, 1)


def _trim(a: Dense) -> Dense:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _deriv(a: Dense) -> Dense:
    return _trim([i * c for i, c in enumerate(a)][1:])


def _rem(a: Dense, b: Dense) -> Dense:
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial remainder by zero")
    lead = b[-1]
    while len(a) >= len(b):
        f = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = _trim(a)
    return a


def _quo(a: Dense, b: Dense) -> Dense:
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = _trim(a)
    return q


def _monic(a: Dense) -> Dense:
    return [c / a[-1] for c in a]


def _gcd(a: Dense, b: Dense) -> Dense:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _rem(a, b)
    return _monic(a)


def squarefree_part(p: SparsePolynomial) -> SparsePolynomial:
    """p / gcd(p, p'), made monic."""
    a = _trim(_to_dense(p))
    if not a:
        raise DomainError("squarefree part of the zero polynomial")
    d = _deriv(a)
    if not d:
        return _from_dense(_monic(a))
    return _from_dense(_monic(_quo(a, _gcd(a, d))))


@dataclass(frozen=True)
class SturmSequence:
    chain: tuple[SparsePolynomial, ...]

    def sign_variations(self, x: Fraction | int) -> int:
        signs = []
        for p in self.chain:
            v = p.evaluate([x])
            if v:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for p in self.chain:
            deg = p.total_degree()
            lead = p.coefficient((deg,))
            s = lead > 0
            if not positive and deg % 2:
                s = not s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_between(self, a, b) -> int:
        """Distinct roots in the half-open interval (a, b]."""
        return self.sign_variations(a) - self.sign_variations(b)


def sturm_sequence(p: SparsePolynomial) -> SturmSequence:
    """Sturm chain of the squarefree part of ``p``."""
    a = _trim(_to_dense(squarefree_part(p)))
    chain = [a]
    b = _deriv(a)
    while b:
        chain.append(b)
        a, b = b, [-c for c in _rem(a, b)]
    return SturmSequence(tuple(_from_dense(c) for c in chain))


def count_real_roots(p: SparsePolynomial) -> int:
    """Number of distinct real roots of a nonzero univariate polynomial."""
    if p.is_zero():
        raise DomainError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(p)
    return seq.variations_at_infinity(False) - seq.variations_at_infinity(True)


def fiber_components_1d(p: SparsePolynomial, y) -> int:
    """Components of {w : p(w) = y} on the real line, i.e. its distinct roots."""
    if p.num_vars != 1:
        raise DimensionError("fiber_components_1d needs a univariate polynomial")
    if p.is_constant():
        raise DomainError("fiber of a constant polynomial is empty or the whole line")
    return count_real_roots(p - Fraction(y))
