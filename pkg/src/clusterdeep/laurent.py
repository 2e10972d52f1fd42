"""Sparse multivariate Laurent polynomials with exact integer coefficients.

A polynomial is a map from exponent vectors (tuples of signed ints, one slot
per variable) to nonzero integer coefficients.  All arithmetic is exact; the
only failure modes are NotDivisible from div_exact, ZeroAtNegativeExponent
from evaluate, and TermGuardExceeded when a product blows past the term cap.

The term cap defaults to 10**6 and can be overridden with the environment
variable CLUSTERDEEP_TERM_GUARD or by assigning set_term_guard().
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, TermGuardExceeded, ZeroAtNegativeExponent

Rational = Fraction

_DEFAULT_GUARD = 10**6
_term_guard = int(os.environ.get("CLUSTERDEEP_TERM_GUARD", _DEFAULT_GUARD))


def set_term_guard(limit: int) -> None:
    global _term_guard
    if limit < 1:
        raise ValueError("term guard must be positive")
    _term_guard = int(limit)


def term_guard() -> int:
    return _term_guard


def parse_rational(text) -> Fraction:
    """Parse "a/b" or "a" (also plain ints) into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over a fixed number of variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError("exponent vector length %d != nvars %d" % (len(exps), nvars))
                clean[exps] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> "LaurentPoly":
        exps = [0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coeff: int, exps: Sequence[int]) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {(0,) * self.nvars}

    def constant_value(self) -> int:
        if not self.terms:
            return 0
        zero = (0,) * self.nvars
        if self.terms.keys() != {zero}:
            raise ValueError("not a constant")
        return self.terms[zero]

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.nvars)
        # multiply the smaller support on the outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        guard = _term_guard
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            if len(out) > guard:
                raise TermGuardExceeded("product exceeds %d terms" % guard)
        return LaurentPoly(self.nvars, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit monomial (coefficient +-1)."""
        if len(self.terms) != 1:
            raise NotDivisible("only monomials are invertible")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise NotDivisible("monomial coefficient %d is not a unit" % c)
        return LaurentPoly(self.nvars, {tuple(-x for x in e): c})

    def _check(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError("expected LaurentPoly, got %r" % type(other))
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch: %d vs %d" % (self.nvars, other.nvars))

    # -- exact division ----------------------------------------------------

    def _min_exponents(self):
        mins = [0] * self.nvars
        first = True
        for e in self.terms:
            if first:
                mins = list(e)
                first = False
            else:
                for i, x in enumerate(e):
                    if x < mins[i]:
                        mins[i] = x
        return mins

    def _shift(self, offset) -> "LaurentPoly":
        return LaurentPoly(
            self.nvars,
            {tuple(x + o for x, o in zip(e, offset)): c for e, c in self.terms.items()},
        )

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * other == self, exactly, in the Laurent ring.

        Monomials are units here, so dividing by a single term always
        succeeds (exponents just shift).  Raises NotDivisible when no exact
        Laurent quotient with integer coefficients exists, e.g.
        (x1 + 1) / (x2 + 1).
        """
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return LaurentPoly.zero(self.nvars)

        # strip monomial content so both operands become honest polynomials;
        # the minimum exponent per variable is additive under multiplication,
        # so divisibility is unaffected and the quotient regains the shift.
        ma = self._min_exponents()
        mb = other._min_exponents()
        a = self._shift([-x for x in ma])
        b = other._shift([-x for x in mb])
        shift = tuple(x - y for x, y in zip(ma, mb))

        # single-term divisor: quotient is an exponent shift
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            out = {}
            for e, c in a.terms.items():
                if c % cb:
                    raise NotDivisible("coefficient %d not divisible by %d" % (c, cb))
                out[tuple(x - y + s for x, y, s in zip(e, eb, shift))] = c // cb
            return LaurentPoly(self.nvars, out)

        # lex reduction by the leading term; every intermediate remainder in
        # the divisible case equals (q - partial) * b, so failures below
        # (negative exponent or coefficient mismatch) certify NotDivisible.
        lead_b = max(b.terms)
        cb = b.terms[lead_b]
        rem = dict(a.terms)
        quot: dict = {}
        guard = _term_guard
        steps = 0
        while rem:
            steps += 1
            if steps > guard:
                raise TermGuardExceeded("division exceeded %d reduction steps" % guard)
            lead_r = max(rem)
            cr = rem[lead_r]
            qe = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(x < 0 for x in qe):
                raise NotDivisible("leading monomial not divisible")
            if cr % cb:
                raise NotDivisible("leading coefficient %d not divisible by %d" % (cr, cb))
            qc = cr // cb
            quot[qe] = qc
            for eb2, cb2 in b.terms.items():
                e = tuple(x + y for x, y in zip(qe, eb2))
                s = rem.get(e, 0) - qc * cb2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return LaurentPoly(self.nvars, {tuple(x + s for x, s in zip(e, shift)): c for e, c in quot.items()})

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.div_exact(self)
            return True
        except NotDivisible:
            return False

    # -- evaluation and display -------------------------------------------

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        """Exact evaluation at rational values.

        A zero value is fine wherever the variable appears with non-negative
        exponents only; a zero under a negative exponent raises.
        """
        if len(values) != self.nvars:
            raise ValueError("expected %d values, got %d" % (self.nvars, len(values)))
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = Fraction(c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                v = vals[i]
                if v == 0:
                    if k < 0:
                        raise ZeroAtNegativeExponent(
                            "variable %d is 0 but occurs with exponent %d" % (i, k)
                        )
                    prod = Fraction(0)
                    break
                prod *= v**k
            total += prod
        return total

    def substitute(self, values: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute a polynomial for every variable.

        Negative exponents require the substituted value to be an invertible
        monomial in the target ring.
        """
        if len(values) != self.nvars:
            raise ValueError("expected %d substitutes" % self.nvars)
        if not values:
            raise ValueError("cannot substitute into a 0-variable polynomial")
        target = values[0].nvars
        out = LaurentPoly.zero(target)
        cache: dict = {}
        for e, c in self.terms.items():
            prod = LaurentPoly.constant(c, target)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                key = (i, k)
                if key not in cache:
                    cache[key] = values[i] ** k
                prod = prod * cache[key]
            out = out + prod
        return out

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["x%d" % (i + 1) for i in range(self.nvars)]
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                factors.append(names[i] if k == 1 else "%s^%d" % (names[i], k))
            body = "*".join(factors)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = "%d*%s" % (abs(c), body)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, text))
        first_sign, first_text = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in pieces[1:]:
            out += " %s %s" % (sign, text)
        return out

    def __repr__(self):
        return "LaurentPoly(%d, %s)" % (self.nvars, self.pretty())


def poly_sum(parts: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly.zero(nvars)
    for p in parts:
        total = total + p
    return total


def poly_prod(parts: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly.one(nvars)
    for p in parts:
        total = total * p
    return total
