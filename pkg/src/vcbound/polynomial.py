"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero :class:`~fractions.Fraction`
coefficients.  Values are immutable; every operation returns a new polynomial.

Example:
    >>> p = SparsePolynomial.variable(0, 2) + SparsePolynomial.variable(1, 2)
    >>> str(p * p)
    '1 * w1^2 + 2 * w1 w2 + 1 * w2^2'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError

Exponent = tuple[int, ...]
Rational = int | Fraction


def _check_exponent(exp: Iterable[int], num_vars: int) -> Exponent:
    exp = tuple(exp)
    if len(exp) != num_vars:
        raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {num_vars}")
    for e in exp:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise ValueError(f"exponent entries must be non-negative integers, got {exp}")
    return exp


class SparsePolynomial:
    """Immutable polynomial in ``num_vars`` variables with rational coefficients.

    Terms are kept sorted in descending lexicographic order of their
    exponent tuples, so iteration, printing and equality are deterministic.
    """

    __slots__ = ("_terms", "_num_vars", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Rational] | None = None, num_vars: int = 1):
        if not isinstance(num_vars, int) or num_vars < 1:
            raise ValueError("num_vars must be a positive integer")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = _check_exponent(exp, num_vars)
            c = clean.get(exp, Fraction(0)) + Fraction(coeff)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._num_vars = num_vars
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[Exponent, Fraction], num_vars: int) -> SparsePolynomial:
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(((e, c) for e, c in terms.items() if c), reverse=True))
        obj._num_vars = num_vars
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, num_vars: int) -> SparsePolynomial:
        return cls({}, num_vars)

    @classmethod
    def constant(cls, value: Rational, num_vars: int) -> SparsePolynomial:
        return cls({(0,) * num_vars: value}, num_vars)

    @classmethod
    def variable(cls, index: int, num_vars: int) -> SparsePolynomial:
        if not 0 <= index < num_vars:
            raise DimensionError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls({tuple(exp): 1}, num_vars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Rational = 1) -> SparsePolynomial:
        return cls({tuple(exponent): coeff}, len(exponent))

    # accessors

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Copy of the term map, in descending lex order."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total_degree(self) -> int:
        """Largest total degree over all monomials; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    # arithmetic

    def _coerce(self, other) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            if other._num_vars != self._num_vars:
                raise DimensionError(
                    f"polynomials in {self._num_vars} and {other._num_vars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SparsePolynomial.constant(other, self._num_vars)
        return NotImplemented

    def __add__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePolynomial._from_clean(out, self._num_vars)

    __radd__ = __add__

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial._from_clean({e: -c for e, c in self._terms.items()}, self._num_vars)

    def __sub__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> SparsePolynomial:
        return (-self) + other

    def __mul__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial._from_clean(out, self._num_vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SparsePolynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SparsePolynomial.constant(1, self._num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePolynomial):
            return self._num_vars == other._num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == SparsePolynomial.constant(other, self._num_vars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num_vars, tuple(self._terms.items())))
        return self._hash

    # evaluation and substitution

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self._num_vars:
            raise DimensionError(f"point of length {len(point)} for {self._num_vars} variables")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total

    __call__ = evaluate

    def partial_substitute(self, values: Mapping[int, Rational]) -> SparsePolynomial:
        """Fix some variables to rational values and drop them.

        The remaining variables keep their relative order.
        """
        keep = [i for i in range(self._num_vars) if i not in values]
        if not keep:
            raise DimensionError("cannot substitute every variable; use evaluate()")
        vals = {i: Fraction(v) for i, v in values.items()}
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            coeff = c
            for i, v in vals.items():
                if e[i]:
                    coeff *= v ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + coeff
        return SparsePolynomial._from_clean(out, len(keep))

    def derivative(self, index: int = 0) -> SparsePolynomial:
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            if e[index]:
                d = list(e)
                d[index] -= 1
                out[tuple(d)] = c * e[index]
        return SparsePolynomial._from_clean(out, self._num_vars)

    # text form

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = _default_names(self._num_vars) if names is None else list(names)
        if len(names) != self._num_vars:
            raise DimensionError("wrong number of variable names")
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            mono = " ".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            mag = abs(c)
            body = f"{mag} * {mono}" if mono else f"{mag}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.to_text()!r}, num_vars={self._num_vars})"


def _default_names(n: int, prefix: str = "w") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def parse_polynomial(text: str, num_vars: int | None = None,
                     names: Sequence[str] | None = None) -> SparsePolynomial:
    """Parse the text form produced by :meth:`SparsePolynomial.to_text`.

    Terms look like ``c * w1^a1 w2^a2`` with ``c`` an integer or ``p/q``;
    the ``*`` and the coefficient are optional.  Variables default to
    ``w1 .. wn``; pass ``names`` for anything else.
    """
    if names is None:
        if num_vars is None:
            found = [int(m) for m in re.findall(r"w(\d+)", text)]
            num_vars = max(found, default=1)
        names = _default_names(num_vars)
    names = list(names)
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)

    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        num, var, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif var is not None:
            tokens.append(("var", var))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        else:
            tokens.append(("sign", sign))

    terms: dict[Exponent, Fraction] = {}
    i = 0
    if not tokens:
        raise ValueError("empty polynomial text")
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "sign":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exp = [0] * nv
        seen_factor = False
        while i < len(tokens) and tokens[i][0] != "sign":
            kind, val = tokens[i]
            if kind == "*":
                i += 1
                continue
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                if val not in index:
                    raise ValueError(f"unknown variable {val!r}")
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                    if i + 2 >= len(tokens) or tokens[i + 2][0] != "num" \
                            or tokens[i + 2][1].denominator != 1:
                        raise ValueError(f"bad exponent after {val!r}")
                    power = int(tokens[i + 2][1])
                    i += 2
                exp[index[val]] += power
                i += 1
            else:
                raise ValueError("misplaced '^'")
            seen_factor = True
        if not seen_factor:
            raise ValueError("dangling sign in polynomial text")
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
    return SparsePolynomial(terms, nv)


def poly_add(a: SparsePolynomial, b: SparsePolynomial) -> SparsePolynomial:
    return a + b


def poly_mul(a: SparsePolynomial, b: SparsePolynomial) -> SparsePolynomial:
    return a * b


def poly_compose(outer: SparsePolynomial, substitutions: Sequence[SparsePolynomial]) -> SparsePolynomial:
    """Substitute ``substitutions[i]`` for variable ``i`` of ``outer``.

    All substitutions must live in the same ring; the result does too.
    """
    if len(substitutions) != outer.num_vars:
        raise DimensionError(
            f"{len(substitutions)} substitutions for {outer.num_vars} outer variables"
        )
    nv = substitutions[0].num_vars
    if any(s.num_vars != nv for s in substitutions):
        raise DimensionError("substitutions disagree on num_vars")
    powers: list[dict[int, SparsePolynomial]] = [{0: SparsePolynomial.constant(1, nv)} for _ in substitutions]

    def power(i: int, k: int) -> SparsePolynomial:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * substitutions[i]
        return cache[k]

    out: dict[Exponent, Fraction] = {}
    for e, c in outer.items():
        term = SparsePolynomial.constant(c, nv)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for te, tc in term.items():
            out[te] = out.get(te, 0) + tc
    return SparsePolynomial._from_clean(out, nv)


def block_degrees(p: SparsePolynomial, part: Sequence[int]) -> list[int]:
    """Per-block maximum of the summed exponents over all monomials of ``p``."""
    part = list(part)
    if any(s < 1 for s in part):
        raise ValueError("block sizes must be positive")
    if sum(part) != p.num_vars:
        raise DimensionError(f"partition {part} does not cover {p.num_vars} variables")
    bounds = []
    start = 0
    for size in part:
        bounds.append((start, start + size))
        start += size
    degs = [0] * len(part)
    for e in p.terms:
        for i, (lo, hi) in enumerate(bounds):
            s = sum(e[lo:hi])
            if s > degs[i]:
                degs[i] = s
    return degs


def support(p: SparsePolynomial) -> frozenset[Exponent]:
    return frozenset(p.terms)
