"""Exact expansion of Dyson-style Laurent products and coefficient extraction.

The product F_n(x; a; b) = prod_h x_h^{-b_h} prod_{i != j} (1 - x_i/x_j)^{a_j}
is expanded variable by variable: all factors involving x_1 are absorbed
first, the slice landing on the target x_1-exponent is kept and x_1 retired,
then x_2, and so on.  Grouping the two factors of each unordered pair {i, j}
into one binomial power,

    (1 - x_i/x_j)^{a_j} (1 - x_j/x_i)^{a_i}
        = (-1)^{a_j} (x_i - x_j)^{a_i + a_j} x_i^{-a_i} x_j^{-a_j},

keeps the intermediate slices small while remaining a plain exact expansion;
coefficients are arbitrary-precision integers throughout, so nothing can
overflow.  Also here: the symbolic Taylor coefficients P_k used by the
boundary conditions of the proof engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from .poly import Poly, binomial_poly

Exponents = Tuple[int, ...]


def multinomial(a: Tuple[int, ...] | List[int]) -> int:
    """(a_1 + ... + a_n)! / (a_1! ... a_n!) as an exact integer."""
    total = factorial(sum(a))
    for ai in a:
        total //= factorial(ai)
    return total


@dataclass(frozen=True)
class DysonInstance:
    """A concrete (n, a, b) triple; a must be nonnegative."""

    n: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.a) != self.n or len(self.b) != self.n:
            raise ValueError("a and b must both have length n")
        if any(ai < 0 for ai in self.a):
            raise ValueError("all a_i must be nonnegative")


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    Exponents may be negative; they stay tiny (bounded by sum(a) + max|b|)
    even when the coefficients grow huge.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponents, int] | None = None):
        clean: Dict[Exponents, int] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ValueError(f"exponent vector {mono} has wrong length")
                if c:
                    clean[mono] = int(c)
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, int]) -> "LaurentPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, nvars: int, expo: Exponents, coeff: int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(expo): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, expo: Exponents) -> int:
        return self.terms.get(tuple(expo), 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.nvars != other.nvars:
            raise ValueError("mismatched variable counts")
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return LaurentPoly._raw(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.nvars != other.nvars:
            raise ValueError("mismatched variable counts")
        out: Dict[Exponents, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        return LaurentPoly._raw(self.nvars, out)

    def exponent_range(self, var: int) -> Tuple[int, int]:
        if not self.terms:
            return (0, 0)
        exps = [m[var] for m in self.terms]
        return (min(exps), max(exps))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {len(self.terms)} terms)"


def coeff_slice(p: LaurentPoly, var: int, exponent: int) -> LaurentPoly:
    """Terms whose ``var``-exponent equals ``exponent``, with that variable removed."""
    if not 0 <= var < p.nvars:
        raise ValueError(f"variable index {var} out of range")
    out: Dict[Exponents, int] = {}
    for mono, c in p.terms.items():
        if mono[var] == exponent:
            out[mono[:var] + mono[var + 1 :]] = c
    return LaurentPoly._raw(p.nvars - 1, out)


# ----------------------------------------------------------------------
# constant-term extraction


@lru_cache(maxsize=200000)
def _ct_cached(n: int, a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
    # DP state: accumulated exponents of the still-active variables h..n-1,
    # mapped to integer coefficients.  Processing variable h absorbs every
    # pair factor (h, j), keeps only the slice with x_h-exponent b_h, and
    # retires x_h.
    state: Dict[Tuple[int, ...], int] = {(0,) * n: 1}
    for h in range(n - 1):
        partners = list(range(h + 1, n))
        # pair (h, j) with summand index m in [-a_h, a_j] contributes
        # (-1)^m C(a_h + a_j, a_h + m) and exponents +m to x_h, -m to x_j
        lows = [-a[h]] * len(partners)
        highs = [a[j] for j in partners]
        suffix_lo = [0] * (len(partners) + 1)
        suffix_hi = [0] * (len(partners) + 1)
        for i in range(len(partners) - 1, -1, -1):
            suffix_lo[i] = suffix_lo[i + 1] + lows[i]
            suffix_hi[i] = suffix_hi[i + 1] + highs[i]
        new_state: Dict[Tuple[int, ...], int] = {}
        for key, coeff in state.items():
            need = b[h] - key[0]
            rest = key[1:]

            def walk(idx: int, need: int, rest: Tuple[int, ...], coeff: int):
                if idx == len(partners):
                    if need == 0:
                        s = new_state.get(rest, 0) + coeff
                        if s:
                            new_state[rest] = s
                        elif rest in new_state:
                            del new_state[rest]
                    return
                # prune m-ranges that cannot reach the target slice
                lo = max(lows[idx], need - suffix_hi[idx + 1])
                hi = min(highs[idx], need - suffix_lo[idx + 1])
                s = a[h] + a[partners[idx]]
                for m in range(lo, hi + 1):
                    c = comb(s, a[h] + m)
                    if m & 1:
                        c = -c
                    nr = list(rest)
                    nr[idx] -= m
                    walk(idx + 1, need - m, tuple(nr), coeff * c)

            walk(0, need, rest, coeff)
        state = new_state
        if not state:
            return 0
    return state.get((b[n - 1],), 0)


def ct_bruteforce(inst: DysonInstance) -> int:
    """Coefficient of x_1^{b_1}...x_n^{b_n} in F_n(x; a; 0).

    Equivalently the constant term of F_n(x; a; b); computed by exact
    expansion with variable-by-variable coefficient elimination.
    """
    return _ct_cached(inst.n, inst.a, inst.b)


def ct(n: int, a, b) -> int:
    """Convenience wrapper building the instance inline."""
    return ct_bruteforce(DysonInstance(n, tuple(a), tuple(b)))


# ----------------------------------------------------------------------
# symbolic Taylor coefficients P_k for the boundary conditions


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lex ascending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class PkTerm:
    """One composition term of P_k.

    ``m`` is indexed by the surviving variables (original order, k removed),
    ``coeff`` lives in the full n-variable ring but does not involve a_k,
    ``shifted_b`` is the (n-1)-vector b_i + m_i over the same indices.
    """

    m: Tuple[int, ...]
    coeff: Poly
    shifted_b: Tuple[int, ...]


@dataclass(frozen=True)
class PkExpansion:
    """Coefficient of x_k^{b_k} in the Taylor expansion of the segregated
    factors prod_{i != k} (x_i - x_k)^{a_i} / x_i^{a_i + b_i} about x_k = 0,
    organized term by term; empty when b_k < 0."""

    n: int
    k: int  # zero-based pivot index
    b: Tuple[int, ...]
    terms: Tuple[PkTerm, ...]


def pk_expansion(n: int, k: int, b) -> PkExpansion:
    """Enumerate P_k's terms for pivot ``k`` (zero-based index, n >= 3)."""
    b = tuple(b)
    if n < 3:
        raise ValueError("pk_expansion needs n >= 3")
    if not 0 <= k < n:
        raise ValueError(f"pivot index {k} out of range")
    if len(b) != n:
        raise ValueError("b must have length n")
    others = [i for i in range(n) if i != k]
    terms: List[PkTerm] = []
    if b[k] >= 0:
        for m in _compositions(b[k], n - 1):
            coeff = Poly.const(n, 1)
            for i, mi in zip(others, m):
                coeff = coeff * binomial_poly(n, i, mi)
                if mi & 1:
                    coeff = -coeff
            shifted = tuple(b[i] + mi for i, mi in zip(others, m))
            terms.append(PkTerm(m=m, coeff=coeff, shifted_b=shifted))
    return PkExpansion(n=n, k=k, b=b, terms=tuple(terms))
