"""Exact rational-function fitting for constant-term closed forms.

Given a target b-vector, the constant term divided by the multinomial
coefficient is sampled at a deterministic grid of integer a-points and
matched against num/den candidates of increasing total degree t, trying the
splits (t, 0), (t-1, 1), ..., (0, t) in order.  An empirically known factor
attached to each negative b-component (a product of reciprocal rising
factorials) is divided out of the samples first, which lowers the degree of
the residual fit dramatically; the factor is restored on the way out.

Everything is exact: the linear systems are solved over Q, candidates are
validated on held-out points, and the caller is expected to run the proof
engine on whatever comes out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .laurent import ct, multinomial
from .linalg import solve_nullspace
from .poly import LinearForm, Poly
from .ratfunc import RatFunc, rising_factorial

Oracle = Callable[[int, Tuple[int, ...], Tuple[int, ...]], int]

HOLDOUT = 5  # held-out validation points appended to every fit


class GuessError(Exception):
    """Base class for fitting failures."""


class AmbiguousFit(GuessError):
    """The nullspace held several inequivalent candidates; add more data."""


class GuessExhausted(GuessError):
    """No rational form found up to max_t; carries the samples gathered."""

    def __init__(self, n: int, b: Tuple[int, ...], max_t: int, samples: "SampleSet"):
        self.n = n
        self.b = b
        self.max_t = max_t
        self.samples = samples
        super().__init__(
            f"no rational form of total degree <= {max_t} matches "
            f"c_{n}(a; {list(b)}) on {len(samples.points)} samples"
        )


@dataclass(frozen=True)
class AnsatzFactor:
    """The empirical factor of R_b attached to negative b-components."""

    b: Tuple[int, ...]
    value: RatFunc


@dataclass(frozen=True)
class ClosedForm:
    """A pair (b, R) denoting d_n(a; b) = R(a) * (a_1+...+a_n)!/(a_1!...a_n!)."""

    n: int
    b: Tuple[int, ...]
    R: RatFunc

    def evaluate(self, a: Sequence[int]) -> Fraction:
        return self.R.evaluate(a) * multinomial(tuple(a))

    def to_json(self) -> dict:
        return {"n": self.n, "b": list(self.b), "R": self.R.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ClosedForm":
        n = data["n"]
        return cls(n=n, b=tuple(data["b"]), R=RatFunc.from_json(n, data["R"]))


@dataclass
class SampleSet:
    """Distinct integer sample points with exact oracle values."""

    points: List[Tuple[int, ...]]
    values: List[Fraction]

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValueError("points and values must align")
        seen: Dict[Tuple[int, ...], Fraction] = {}
        pts: List[Tuple[int, ...]] = []
        vals: List[Fraction] = []
        for p, v in zip(self.points, self.values):
            p = tuple(p)
            v = Fraction(v)
            if p in seen:
                if seen[p] != v:
                    raise ValueError(f"inconsistent duplicate sample at {p}")
                continue
            seen[p] = v
            pts.append(p)
            vals.append(v)
        self.points = pts
        self.values = vals


def ansatz_factor(b: Sequence[int]) -> AnsatzFactor:
    """Product over negative components b_i of
    1 / ((1 + a_i)_{floor(b_i / 2)} (1 + sum_{j != i} a_j)_{|b_i|}),
    as a reduced rational function; 1 when b has no negative components."""
    b = tuple(b)
    n = len(b)
    value = RatFunc.one(n)
    for i, bi in enumerate(b):
        if bi >= 0:
            continue
        first = rising_factorial(LinearForm(1, tuple(1 if j == i else 0 for j in range(n))), bi // 2)
        second = rising_factorial(LinearForm(1, tuple(0 if j == i else 1 for j in range(n))), abs(bi))
        value = value * (first * second).reciprocal()
    return AnsatzFactor(b=b, value=value)


def sample_grid(n: int, b: Sequence[int], count: int) -> List[Tuple[int, ...]]:
    """First ``count`` points of the deterministic sampling sequence.

    Entries are >= max(2, max|b_i|) and pairwise distinct within each point;
    every arrangement of a coordinate set is emitted (so no variable is stuck
    in a narrow band, which would let spurious interpolants through), and
    points at which the ansatz factor vanishes or blows up are skipped (so
    sampled values can always be divided by it).
    """
    if count < 1:
        raise ValueError("count must be positive")
    return list(itertools.islice(_grid_iter(n, tuple(b)), count))


def _grid_iter(n: int, b: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    factor = ansatz_factor(b).value
    lo = max(2, max((abs(x) for x in b), default=0))
    for top in itertools.count(lo + n - 1):
        for rest in itertools.combinations(range(lo, top), n - 1):
            for point in itertools.permutations(rest + (top,)):
                if factor.num.evaluate(point) == 0 or factor.den.evaluate(point) == 0:
                    continue
                yield point


def _monomials_up_to(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    monos = [
        m
        for m in itertools.product(range(degree + 1), repeat=nvars)
        if sum(m) <= degree
    ]
    monos.sort(key=lambda m: (sum(m), m))
    return monos


def _eval_mono(point: Tuple[int, ...], mono: Tuple[int, ...]) -> int:
    v = 1
    for x, e in zip(point, mono):
        if e:
            v *= x**e
    return v


def guess_rat(samples: SampleSet, t: int, holdout: int = HOLDOUT) -> Optional[RatFunc]:
    """Fit a rational function of total degree exactly t to the samples.

    For each split (d_num, d_den) with d_num + d_den = t, in the order
    (t, 0), (t-1, 1), ..., (0, t): solve value * den(a) - num(a) = 0 on the
    fitting points, reject candidates whose denominator vanishes at any
    sample point, and keep a survivor only if it reproduces the held-out
    values exactly.  Returns None when no split admits a fit; raises
    AmbiguousFit when a nullspace of dimension > 1 holds inequivalent
    candidates (the caller should supply more samples).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if not samples.points:
        raise ValueError("empty sample set")
    nvars = len(samples.points[0])
    if len(samples.points) <= holdout:
        raise ValueError("not enough samples for the held-out margin")
    fit_pts = samples.points[:-holdout] if holdout else samples.points
    fit_vals = samples.values[: len(fit_pts)]
    hold_pts = samples.points[len(fit_pts) :]
    hold_vals = samples.values[len(fit_pts) :]

    for d_num in range(t, -1, -1):
        d_den = t - d_num
        num_monos = _monomials_up_to(nvars, d_num)
        den_monos = _monomials_up_to(nvars, d_den)
        unknowns = len(num_monos) + len(den_monos)
        if len(fit_pts) < unknowns:
            raise ValueError(
                f"need at least {unknowns + holdout} samples for t={t}, have "
                f"{len(samples.points)}"
            )
        rows = []
        for p, f in zip(fit_pts, fit_vals):
            row = [f * _eval_mono(p, m) for m in den_monos]
            row += [Fraction(-_eval_mono(p, m)) for m in num_monos]
            rows.append(row)
        basis = solve_nullspace(rows)
        if not basis:
            continue
        candidates: List[RatFunc] = []
        for vec in basis:
            den = Poly(nvars, dict(zip(den_monos, vec[: len(den_monos)])))
            num = Poly(nvars, dict(zip(num_monos, vec[len(den_monos) :])))
            if den.is_zero():
                continue
            if any(den.evaluate(p) == 0 for p in samples.points):
                continue
            candidates.append(RatFunc.make(num, den))
        if not candidates:
            continue
        first = candidates[0]
        if any(c != first for c in candidates[1:]):
            raise AmbiguousFit(
                f"{len(candidates)} inequivalent candidates at t={t}, "
                f"split ({d_num},{d_den})"
            )
        if all(first.evaluate(p) == v for p, v in zip(hold_pts, hold_vals)):
            return first
    return None


@dataclass
class GuessDetails:
    """Fit metadata surfaced for diagnostics and benchmarks."""

    t: int
    samples_used: int
    residual: RatFunc
    used_ansatz: bool


def guess_dyson(
    n: int,
    b: Sequence[int],
    max_t: int = 10,
    use_ansatz: bool = True,
    oracle: Oracle | None = None,
) -> ClosedForm:
    """Conjecture the closed form d_n(a; b); see guess_dyson_with_details."""
    form, _ = guess_dyson_with_details(n, b, max_t, use_ansatz, oracle)
    return form


def guess_dyson_with_details(
    n: int,
    b: Sequence[int],
    max_t: int = 10,
    use_ansatz: bool = True,
    oracle: Oracle | None = None,
) -> Tuple[ClosedForm, GuessDetails]:
    """Sample the constant-term oracle and fit R_b with increasing degree.

    If sum(b) != 0 the zero form is returned immediately.  Otherwise the
    oracle value divided by the multinomial (and, unless disabled, by the
    ansatz factor) is fitted by guess_rat with t = 0, 1, ..., max_t; the
    winning residual times the ansatz factor is validated against the oracle
    at 5 fresh points before being returned.  Raises GuessExhausted when
    max_t is used up.
    """
    b = tuple(b)
    if n < 1 or len(b) != n:
        raise ValueError("b must have length n >= 1")
    if oracle is None:
        oracle = ct
    if sum(b) != 0:
        zero = ClosedForm(n=n, b=b, R=RatFunc.zero(n))
        details = GuessDetails(t=0, samples_used=0, residual=RatFunc.zero(n), used_ansatz=use_ansatz)
        return zero, details

    factor = ansatz_factor(b).value if use_ansatz else RatFunc.one(n)
    grid = _grid_iter(n, b)
    points: List[Tuple[int, ...]] = []
    values: List[Fraction] = []

    def extend(target: int) -> None:
        while len(points) < target:
            p = next(grid)
            points.append(p)
            raw = Fraction(oracle(n, p, b), multinomial(p))
            values.append(raw / factor.evaluate(p))

    last_samples = SampleSet([], [])
    for t in range(max_t + 1):
        # a few extra rows overdetermine every split, starving fake interpolants
        needed = _max_unknowns(n, t) + 3 + HOLDOUT
        extend(needed)
        for attempt in range(4):
            samples = SampleSet(points[:needed], values[:needed])
            last_samples = samples
            try:
                residual = guess_rat(samples, t)
            except AmbiguousFit:
                if attempt == 3:
                    residual = None
                    break
                needed *= 2
                extend(needed)
                continue
            break
        if residual is None:
            continue
        form_r = factor * residual
        fresh = []
        while len(fresh) < 5:
            p = next(grid)
            if p not in points:
                fresh.append(p)
        candidate = ClosedForm(n=n, b=b, R=form_r)
        if all(
            candidate.evaluate(p) == oracle(n, p, b) for p in fresh
        ):
            details = GuessDetails(
                t=t,
                samples_used=len(samples.points),
                residual=residual,
                used_ansatz=use_ansatz,
            )
            return candidate, details
    raise GuessExhausted(n, b, max_t, last_samples)


def _max_unknowns(nvars: int, t: int) -> int:
    # the widest split is (t, 0): all monomials of degree <= t plus a constant
    return len(_monomials_up_to(nvars, t)) + 1
