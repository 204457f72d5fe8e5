"""Machine verification of conjectured closed forms.

A closed form d_n(a; b) = R(a) * (a_1+...+a_n)!/(a_1!...a_n!) is certified by
checking, as identities of rational functions in canonical form:

* the recursion R(a) = sum_i (a_i / (a_1+...+a_n)) R(a - e_i),
* for every pivot k, the boundary identity obtained by setting a_k = 0,
  whose right side combines level-(n-1) closed forms weighted by the Taylor
  coefficients of P_k,
* the initial value at a = 0,

together with a guarantee that R's reduced denominator cannot vanish at any
nonnegative integer point (so the rational identities imply the integer
ones).  Identity checking is cross-multiplied polynomial comparison over Q:
a complete symbolic proof, not sampling.  Boundary dependencies are proved
recursively, bottoming out in the built-in n = 2 closed form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .conjecture import ClosedForm, guess_dyson
from .laurent import pk_expansion
from .poly import LinearForm, Poly, exact_div, make_primitive
from .ratfunc import RatFunc, rising_factorial

FormResolver = Callable[[Tuple[int, ...]], ClosedForm]


class MalformedFormError(Exception):
    """The form cannot even be substituted into (denominator collapses)."""


class UnresolvedDependencyError(Exception):
    """A boundary check needs level-(n-1) forms that were not supplied."""

    def __init__(self, missing: List[Tuple[int, ...]]):
        self.missing = missing
        super().__init__(f"missing lower-level closed forms for b in {missing}")


@dataclass
class CheckOutcome:
    """Verdict of one symbolic check, with the failing difference if any."""

    ok: bool
    check: str
    k: Optional[int] = None
    lhs: Optional[RatFunc] = None
    rhs: Optional[RatFunc] = None
    difference: Optional[RatFunc] = None
    note: str = ""


class ProofError(Exception):
    """A check failed; carries the counterexample report."""

    def __init__(self, form: ClosedForm, outcome: CheckOutcome):
        self.form = form
        self.outcome = outcome
        where = f" at k={outcome.k + 1}" if outcome.k is not None else ""
        msg = (
            f"proof of d_{form.n}(a; {list(form.b)}) failed: "
            f"{outcome.check}{where} does not hold"
        )
        if outcome.difference is not None:
            msg += f"; difference {outcome.difference!r}"
        super().__init__(msg)


# ----------------------------------------------------------------------
# the n = 2 base case


def c2_closed_form(b: Sequence[int]) -> ClosedForm:
    """Closed form of the two-variable constant term (binomial theorem case).

    For b = (h, -h) the value is (-1)^h (a_1+a_2)! / ((a_1+h)! (a_2-h)!),
    i.e. R = (-1)^h / ((1+a_1)_h (1+a_2)_{-h}); out-of-support factorials
    correspond to numerator zeros of R at the same integer points, so
    evaluating R reproduces the convention that the coefficient is 0 there.
    """
    b = tuple(b)
    if len(b) != 2:
        raise ValueError("c2_closed_form expects a pair")
    if b[0] + b[1] != 0:
        return ClosedForm(n=2, b=b, R=RatFunc.zero(2))
    h = b[0]
    prod = rising_factorial(LinearForm(1, (1, 0)), h) * rising_factorial(
        LinearForm(1, (0, 1)), -h
    )
    sign = -1 if h % 2 else 1
    return ClosedForm(n=2, b=b, R=prod.reciprocal() * sign)


# ----------------------------------------------------------------------
# the four checks


def check_recursion(form: ClosedForm) -> CheckOutcome:
    """Verify R(a) = sum_i (a_i / (a_1+...+a_n)) R(a - e_i) symbolically.

    The multinomial shift rule multinomial(a - e_i)/multinomial(a) = a_i/sum(a)
    is exact, so this is precisely the constant-term recursion divided by the
    multinomial.  Both sides are compared after clearing denominators.
    """
    n = form.n
    R = form.R
    if R.is_zero():
        return CheckOutcome(ok=True, check="recursion", lhs=R, rhs=R, note="zero form")
    num, den = R.num, R.den
    s = Poly.zero(n)
    for i in range(n):
        s = s + Poly.variable(n, i)
    shifted = [(num.shift_var(i, -1), den.shift_var(i, -1)) for i in range(n)]
    dens = [d for _, d in shifted]
    prefix = [Poly.const(n, 1)]
    for d in dens:
        prefix.append(prefix[-1] * d)
    suffix = [Poly.const(n, 1)]
    for d in reversed(dens):
        suffix.append(suffix[-1] * d)
    suffix.reverse()
    all_dens = prefix[-1]
    lhs_poly = num * s * all_dens
    rhs_poly = Poly.zero(n)
    for i in range(n):
        others = prefix[i] * suffix[i + 1]
        rhs_poly = rhs_poly + Poly.variable(n, i) * shifted[i][0] * den * others
    if lhs_poly == rhs_poly:
        return CheckOutcome(ok=True, check="recursion", lhs=R, rhs=R)
    diff = RatFunc.make(lhs_poly - rhs_poly, s * den * all_dens)
    rhs = RatFunc.make(rhs_poly, s * den * all_dens)
    return CheckOutcome(ok=False, check="recursion", lhs=R, rhs=rhs, difference=diff)


def check_boundary(form: ClosedForm, k: int, resolver: FormResolver) -> CheckOutcome:
    """Verify the boundary identity at a_k = 0 (k is a zero-based index).

    Left side: R with a_k set to 0, read in the surviving n-1 variables (the
    multinomial collapses to the (n-1)-variable one on both sides).  Right
    side: sum over the P_k expansion of coeff(a-hat) * R_{shifted b}(a-hat),
    with each lower-level form fetched from ``resolver``.  Empty expansions
    (b_k < 0) make the right side 0.
    """
    n, b = form.n, form.b
    if not 0 <= k < n:
        raise ValueError(f"pivot index {k} out of range")
    R = form.R
    if R.is_zero():
        lhs = RatFunc.zero(n - 1)
    else:
        den0 = R.den.substitute({k: 0})
        if den0.is_zero():
            raise MalformedFormError(
                f"denominator of R vanishes identically at a_{k + 1} = 0"
            )
        lhs_num = R.num.substitute({k: 0}).drop_var(k)
        lhs_den = den0.drop_var(k)
        lhs = RatFunc._rescale(lhs_num, lhs_den)

    expansion = pk_expansion(n, k, b)
    if not expansion.terms:
        ok = lhs.is_zero()
        zero = RatFunc.zero(n - 1)
        return CheckOutcome(
            ok=ok,
            check="boundary",
            k=k,
            lhs=RatFunc.make(lhs.num, lhs.den) if not ok else zero,
            rhs=zero,
            difference=None if ok else RatFunc.make(lhs.num, lhs.den),
            note="empty expansion (b_k < 0)",
        )

    missing = []
    lower: List[ClosedForm] = []
    for term in expansion.terms:
        try:
            lower.append(resolver(term.shifted_b))
        except KeyError:
            missing.append(term.shifted_b)
    if missing:
        raise UnresolvedDependencyError(missing)

    dens = [f.R.den for f in lower]
    prefix = [Poly.const(n - 1, 1)]
    for d in dens:
        prefix.append(prefix[-1] * d)
    suffix = [Poly.const(n - 1, 1)]
    for d in reversed(dens):
        suffix.append(suffix[-1] * d)
    suffix.reverse()
    den_rhs = prefix[-1]
    num_rhs = Poly.zero(n - 1)
    for i, (term, low) in enumerate(zip(expansion.terms, lower)):
        coeff = term.coeff.drop_var(k)
        num_rhs = num_rhs + coeff * low.R.num * (prefix[i] * suffix[i + 1])
    ok = lhs.num * den_rhs == num_rhs * lhs.den
    lhs_canon = RatFunc.make(lhs.num, lhs.den)
    if ok:
        return CheckOutcome(ok=True, check="boundary", k=k, lhs=lhs_canon, rhs=lhs_canon)
    rhs_canon = RatFunc.make(num_rhs, den_rhs)
    diff = RatFunc.make(lhs.num * den_rhs - num_rhs * lhs.den, lhs.den * den_rhs)
    return CheckOutcome(
        ok=False, check="boundary", k=k, lhs=lhs_canon, rhs=rhs_canon, difference=diff
    )


def check_initial(form: ClosedForm) -> CheckOutcome:
    """Verify d_n(0; b) = 1 when b = 0 and 0 otherwise.

    The reduced canonical R is evaluated at a = 0.  If its denominator
    happens to vanish there, the value is taken as the limit along the
    diagonal a = (t, ..., t) and the outcome is flagged in the note.
    """
    n = form.n
    expected = Fraction(1) if all(x == 0 for x in form.b) else Fraction(0)
    R = form.R
    note = ""
    if R.is_zero():
        value = Fraction(0)
    else:
        zeros = (0,) * n
        den0 = R.den.evaluate(zeros)
        if den0 != 0:
            value = R.num.evaluate(zeros) / den0
        else:
            note = "limit"
            value = _diagonal_limit_at_zero(R)
            if value is None:
                return CheckOutcome(
                    ok=False,
                    check="initial",
                    lhs=R,
                    note="diverges along the diagonal at a = 0",
                )
    ok = value == expected
    return CheckOutcome(
        ok=ok,
        check="initial",
        lhs=RatFunc.const(n, value),
        rhs=RatFunc.const(n, expected),
        difference=None if ok else RatFunc.const(n, value - expected),
        note=note,
    )


def _diagonal_limit_at_zero(R: RatFunc) -> Optional[Fraction]:
    def restrict(p: Poly) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for mono, c in p.terms.items():
            d = sum(mono)
            out[d] = out.get(d, Fraction(0)) + c
        return {d: c for d, c in out.items() if c != 0}

    num_t = restrict(R.num)
    den_t = restrict(R.den)
    if not den_t:
        return None
    if not num_t:
        return Fraction(0)
    ord_num = min(num_t)
    ord_den = min(den_t)
    if ord_num > ord_den:
        return Fraction(0)
    if ord_num == ord_den:
        return num_t[ord_num] / den_t[ord_den]
    return None


# ----------------------------------------------------------------------
# denominator safety


def _divisors(n: int) -> List[int]:
    n = abs(n)
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return divs


def linear_factors(p: Poly) -> Optional[Tuple[List[LinearForm], Fraction]]:
    """Factor p as const * product of integer linear forms with nonnegative
    coefficients and positive constant terms; None if p is not of that shape.

    Every factor of such a product has its constant dividing p(0) and each
    coefficient bounded by the matching first-degree coefficient of p, so
    trial division over that finite candidate set is a complete search.
    """
    if p.is_zero():
        return None
    nvars = p.nvars
    prim = make_primitive(p)
    scale = p.leading_coeff() / prim.leading_coeff()
    factors: List[LinearForm] = []
    work = prim
    while not work.is_constant():
        const = work.constant_value()
        if const <= 0 or const.denominator != 1:
            return None
        bounds = []
        for i in range(nvars):
            mono = tuple(1 if j == i else 0 for j in range(nvars))
            c = work.coefficient(mono)
            if c.denominator != 1 or c < 0:
                return None
            bounds.append(int(c))
        total = 1
        for bd in bounds:
            total *= bd + 1
        if total > 20000:
            return None
        found = None
        for c0 in _divisors(int(const)):
            for coeffs in itertools.product(*(range(bd + 1) for bd in bounds)):
                if not any(coeffs):
                    continue
                cand = LinearForm(c0, coeffs)
                try:
                    quotient = exact_div(work, cand.to_poly())
                except ArithmeticError:
                    continue
                factors.append(cand)
                work = quotient
                found = cand
                break
            if found:
                break
        if not found:
            return None
    tail = work.constant_value()
    if tail <= 0:
        return None
    return factors, scale * tail


@dataclass
class DenominatorSafety:
    ok: bool
    guarantee: str  # "syntactic" or "grid"
    factors: Optional[List[LinearForm]] = None
    constant: Optional[Fraction] = None
    witness: Optional[Tuple[int, ...]] = None


def check_denominator_safety(form: ClosedForm) -> DenominatorSafety:
    """Certify that R's reduced denominator is nonzero at nonnegative integer a.

    First a syntactic test: the denominator splits into linear forms with
    nonnegative coefficients and strictly positive constants (then it is
    positive everywhere on the grid).  If that fails, an exhaustive check on
    the finite grid 0 <= a_i <= sum|b_i| + n is run instead and reported as
    the weaker guarantee.
    """
    den = form.R.den
    split = linear_factors(den)
    if split is not None:
        factors, const = split
        if const > 0 and all(f.is_positive_on_grid() for f in factors):
            return DenominatorSafety(
                ok=True, guarantee="syntactic", factors=factors, constant=const
            )
    bound = sum(abs(x) for x in form.b) + form.n
    for point in itertools.product(range(bound + 1), repeat=form.n):
        if den.evaluate(point) == 0:
            return DenominatorSafety(ok=False, guarantee="grid", witness=point)
    return DenominatorSafety(ok=True, guarantee="grid")


# ----------------------------------------------------------------------
# certificates and the prover driver


@dataclass
class ProofCertificate:
    """Machine-checkable record that a ClosedForm passed every check.

    ``dependencies`` holds the certificates of the level-(n-1) forms used by
    the boundary checks, recursively down to n = 2, where the built-in
    binomial-theorem closed form needs no further justification.
    """

    form: ClosedForm
    recursion_ok: bool
    boundary_ok: Tuple[bool, ...]
    initial_ok: bool
    denominator_safe: bool
    denominator_guarantee: str
    initial_limit_used: bool
    base_case: bool
    dependencies: Tuple["ProofCertificate", ...]
    identities: dict = field(default_factory=dict)

    def is_valid(self) -> bool:
        if self.base_case:
            return True
        return (
            self.recursion_ok
            and all(self.boundary_ok)
            and self.initial_ok
            and self.denominator_safe
            and all(dep.is_valid() for dep in self.dependencies)
        )

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "recursion_ok": self.recursion_ok,
            "boundary_ok": list(self.boundary_ok),
            "initial_ok": self.initial_ok,
            "denominator_safe": self.denominator_safe,
            "denominator_guarantee": self.denominator_guarantee,
            "initial_limit_used": self.initial_limit_used,
            "base_case": self.base_case,
            "dependency_b": [list(dep.form.b) for dep in self.dependencies],
            "dependencies": [dep.to_json() for dep in self.dependencies],
            "identities": self.identities,
        }


class Resolver:
    """Cache of closed forms and certificates shared across a proof run.

    Forms are looked up in the cache first, then fall back to the built-in
    n = 2 family or to a fresh conjecture; ``guess_calls`` counts how many
    forms actually required sampling and fitting.
    """

    def __init__(self, max_t: int = 12, use_ansatz: bool = True, oracle=None):
        self.max_t = max_t
        self.use_ansatz = use_ansatz
        self.oracle = oracle
        self.forms: Dict[Tuple[int, Tuple[int, ...]], ClosedForm] = {}
        self.certificates: Dict[Tuple[int, Tuple[int, ...]], ProofCertificate] = {}
        self.guess_calls = 0

    def form(self, n: int, b: Sequence[int]) -> ClosedForm:
        b = tuple(b)
        key = (n, b)
        if key in self.forms:
            return self.forms[key]
        if n == 2:
            form = c2_closed_form(b)
        elif sum(b) != 0:
            form = ClosedForm(n=n, b=b, R=RatFunc.zero(n))
        else:
            form = guess_dyson(n, b, self.max_t, self.use_ansatz, self.oracle)
            self.guess_calls += 1
        self.forms[key] = form
        return form

    def add_form(self, form: ClosedForm) -> None:
        self.forms[(form.n, form.b)] = form

    def lower_resolver(self, n: int) -> FormResolver:
        def fetch(bv: Tuple[int, ...]) -> ClosedForm:
            return self.form(n - 1, bv)

        return fetch


def dict_resolver(forms: Dict[Tuple[int, ...], ClosedForm]) -> FormResolver:
    """Resolver backed by a plain dict; raises KeyError for missing vectors
    (check_boundary converts that into an UnresolvedDependencyError)."""

    def fetch(bv: Tuple[int, ...]) -> ClosedForm:
        return forms[bv]

    return fetch


def _identity_json(outcome: CheckOutcome) -> dict:
    data: dict = {"ok": outcome.ok}
    if outcome.lhs is not None:
        data["lhs"] = outcome.lhs.to_json()
    if outcome.rhs is not None:
        data["rhs"] = outcome.rhs.to_json()
    if outcome.note:
        data["note"] = outcome.note
    return data


def prove(n: int, b: Sequence[int], resolver: Resolver | None = None) -> ProofCertificate:
    """Certify the closed form for (n, b), recursing through its boundary
    dependencies down to the n = 2 base case.

    Raises ProofError with a counterexample report when any check fails, and
    propagates GuessExhausted when a needed form cannot even be conjectured.
    """
    if n < 2:
        raise ValueError("prove requires n >= 2")
    if resolver is None:
        resolver = Resolver()
    b = tuple(b)
    key = (n, b)
    if key in resolver.certificates:
        return resolver.certificates[key]

    form = resolver.form(n, b)
    if n == 2:
        cert = ProofCertificate(
            form=form,
            recursion_ok=True,
            boundary_ok=(True, True),
            initial_ok=True,
            denominator_safe=True,
            denominator_guarantee="syntactic",
            initial_limit_used=False,
            base_case=True,
            dependencies=(),
            identities={"base_case": "binomial-theorem closed form for n = 2"},
        )
        resolver.certificates[key] = cert
        return cert

    # prove lower levels first (post-order over the dependency tree)
    dep_vectors: List[Tuple[int, ...]] = []
    for k in range(n):
        if b[k] < 0:
            continue
        for term in pk_expansion(n, k, b).terms:
            if term.shifted_b not in dep_vectors:
                dep_vectors.append(term.shifted_b)
    dependencies = tuple(prove(n - 1, v, resolver) for v in dep_vectors)

    safety = check_denominator_safety(form)
    if not safety.ok:
        raise ProofError(
            form,
            CheckOutcome(
                ok=False,
                check="denominator-safety",
                note=f"denominator vanishes at {safety.witness}",
            ),
        )
    recursion = check_recursion(form)
    if not recursion.ok:
        raise ProofError(form, recursion)
    boundaries = []
    for k in range(n):
        outcome = check_boundary(form, k, resolver.lower_resolver(n))
        if not outcome.ok:
            raise ProofError(form, outcome)
        boundaries.append(outcome)
    initial = check_initial(form)
    if not initial.ok:
        raise ProofError(form, initial)

    cert = ProofCertificate(
        form=form,
        recursion_ok=True,
        boundary_ok=tuple(True for _ in range(n)),
        initial_ok=True,
        denominator_safe=True,
        denominator_guarantee=safety.guarantee,
        initial_limit_used=initial.note == "limit",
        base_case=False,
        dependencies=dependencies,
        identities={
            "recursion": _identity_json(recursion),
            "boundary": [_identity_json(o) for o in boundaries],
            "initial": _identity_json(initial),
        },
    )
    resolver.certificates[key] = cert
    return cert
