"""Reduced rational functions in the symbolic a-variables.

Every RatFunc is kept canonical from the moment it is built: numerator and
denominator share no polynomial factor, the denominator's graded-lex leading
coefficient is 1, and the zero function is 0/1.  Equality of rational
functions is therefore a plain structural comparison, which is what turns
the proof engine's identity checks into complete symbolic proofs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .poly import LinearForm, Poly, exact_div, poly_gcd


class RatFunc:
    """Canonical num/den pair over Q[a_1..a_n]."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        # Trusts the caller; use make() unless both parts are known canonical.
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatFunc":
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator disagree on nvars")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(Poly.zero(num.nvars), Poly.const(num.nvars, 1))
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = exact_div(num, g)
            den = exact_div(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return cls(num, den)

    @classmethod
    def zero(cls, nvars: int) -> "RatFunc":
        return cls(Poly.zero(nvars), Poly.const(nvars, 1))

    @classmethod
    def one(cls, nvars: int) -> "RatFunc":
        return cls(Poly.const(nvars, 1), Poly.const(nvars, 1))

    @classmethod
    def const(cls, nvars: int, c: Fraction | int) -> "RatFunc":
        return cls(Poly.const(nvars, c), Poly.const(nvars, 1))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.const(p.nvars, 1))

    # ------------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def total_degree(self) -> int:
        """Sum of numerator and denominator total degrees (the fit's 't')."""
        return self.num.total_degree() + self.den.total_degree()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # ------------------------------------------------------------------
    # arithmetic (always re-canonicalized)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc.make(self.num.scale(other), self.den)
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def reciprocal(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RatFunc.make(self.den, self.num)

    # ------------------------------------------------------------------
    # evaluation / substitution

    def evaluate(self, values: Sequence[Fraction | int]) -> Fraction:
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {tuple(values)}")
        return self.num.evaluate(values) / d

    def substitute(self, assignment: Mapping[int, Fraction | int]) -> "RatFunc":
        den = self.den.substitute(assignment)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes identically under substitution")
        return RatFunc.make(self.num.substitute(assignment), den)

    def shift_var(self, var: int, delta: int) -> "RatFunc":
        # A shift is an automorphism, so reducedness is preserved; only the
        # denominator's leading coefficient needs renormalizing.
        return self._rescale(self.num.shift_var(var, delta), self.den.shift_var(var, delta))

    def permute_vars(self, perm: Sequence[int]) -> "RatFunc":
        return self._rescale(self.num.permute_vars(perm), self.den.permute_vars(perm))

    def drop_var(self, var: int) -> "RatFunc":
        return self._rescale(self.num.drop_var(var), self.den.drop_var(var))

    def insert_var(self, var: int) -> "RatFunc":
        return self._rescale(self.num.insert_var(var), self.den.insert_var(var))

    @staticmethod
    def _rescale(num: Poly, den: Poly) -> "RatFunc":
        if num.is_zero():
            return RatFunc.zero(num.nvars)
        lc = den.leading_coeff()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return RatFunc(num, den)

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> dict:
        return {
            "num_terms": self.num.to_json_terms(),
            "den_terms": self.den.to_json_terms(),
        }

    @classmethod
    def from_json(cls, nvars: int, data: Mapping) -> "RatFunc":
        return cls(
            Poly.from_json_terms(nvars, data["num_terms"]),
            Poly.from_json_terms(nvars, data["den_terms"]),
        )

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r} / {self.den!r})"


def ratfunc_arith(r: RatFunc, s: RatFunc, op: str) -> RatFunc:
    """Dispatcher for field operations; division by zero is a domain error."""
    if r.nvars != s.nvars:
        raise ValueError(f"mismatched variable counts {r.nvars} != {s.nvars}")
    if op == "add":
        return r + s
    if op == "sub":
        return r - s
    if op == "mul":
        return r * s
    if op == "div":
        return r / s
    raise ValueError(f"unknown op {op!r}")


def rising_factorial(y: LinearForm, h: int) -> RatFunc:
    """The rising factorial (y)_h as a reduced rational function.

    h > 0 gives the polynomial y (y+1) ... (y+h-1); h = 0 gives 1; h < 0
    gives 1 / ((y-1)(y-2)...(y-|h|)), the reading under which
    (y)_h * (y+h)_{-h} = 1 holds identically.
    """
    nvars = y.nvars
    if h == 0:
        return RatFunc.one(nvars)
    if h > 0:
        prod = Poly.const(nvars, 1)
        for r in range(h):
            prod = prod * y.shift(r).to_poly()
        return RatFunc.make(prod, Poly.const(nvars, 1))
    prod = Poly.const(nvars, 1)
    for r in range(1, -h + 1):
        prod = prod * y.shift(-r).to_poly()
    return RatFunc.make(Poly.const(nvars, 1), prod)
