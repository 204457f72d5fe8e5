import itertools
from fractions import Fraction

import pytest

import dysonct.prover as prover_module
from dysonct.conjecture import ClosedForm, guess_dyson, sample_grid
from dysonct.laurent import ct
from dysonct.poly import Poly
from dysonct.prover import (
    ProofError,
    Resolver,
    UnresolvedDependencyError,
    c2_closed_form,
    check_boundary,
    check_denominator_safety,
    check_initial,
    check_recursion,
    dict_resolver,
    linear_factors,
    prove,
)
from dysonct.ratfunc import RatFunc


def _vars(n):
    return [Poly.variable(n, i) for i in range(n)]


def form_2m1m1():
    return guess_dyson(3, (2, -1, -1))


# ----------------------------------------------------------------------
# c2


def test_c2_zero_sum_mismatch():
    assert c2_closed_form((1, 1)).R.is_zero()


def test_c2_trivial():
    assert c2_closed_form((0, 0)).R == RatFunc.one(2)


def test_c2_values():
    assert c2_closed_form((1, -1)).evaluate((1, 1)) == -1
    # out-of-support binomial vanishes through the numerator zero
    assert c2_closed_form((2, -2)).evaluate((1, 1)) == 0


def test_c2_matches_oracle_on_grid():
    for h in range(-4, 5):
        form = c2_closed_form((h, -h))
        for a1 in range(7):
            for a2 in range(7):
                assert form.evaluate((a1, a2)) == ct(2, (a1, a2), (h, -h)), (h, a1, a2)


# ----------------------------------------------------------------------
# recursion


def test_recursion_constant_form():
    assert check_recursion(ClosedForm(3, (0, 0, 0), RatFunc.one(3))).ok


def test_recursion_form_2m1m1():
    assert check_recursion(form_2m1m1()).ok


def test_recursion_rejects_non_solution():
    a = _vars(3)
    out = check_recursion(ClosedForm(3, (0, 0, 0), RatFunc.from_poly(a[0])))
    assert not out.ok
    assert out.difference is not None and not out.difference.is_zero()


def test_recursion_zero_form():
    assert check_recursion(ClosedForm(3, (1, 0, 0), RatFunc.zero(3))).ok


def test_recursion_symbolic_agrees_with_pointwise():
    # the symbolic verdict must match exact evaluation at integer points
    forms = [form_2m1m1(), ClosedForm(3, (0, 0, 0), RatFunc.one(3)),
             ClosedForm(3, (0, 0, 0), RatFunc.from_poly(_vars(3)[0]))]
    points = [p for p in sample_grid(3, (0, 0, 0), 20)]
    for form in forms:
        symbolic = check_recursion(form).ok
        pointwise = True
        for p in points:
            s = sum(p)
            rhs = sum(
                Fraction(p[i], s)
                * form.R.evaluate(tuple(x - (1 if i == j else 0) for j, x in enumerate(p)))
                for i in range(3)
            )
            if form.R.evaluate(p) != rhs:
                pointwise = False
                break
        assert symbolic == pointwise


# ----------------------------------------------------------------------
# boundary


def test_boundary_2m1m1_positive_pivot():
    resolver = Resolver()
    assert check_boundary(form_2m1m1(), 0, resolver.lower_resolver(3)).ok


def test_boundary_2m1m1_negative_pivots():
    resolver = Resolver()
    for k in (1, 2):
        out = check_boundary(form_2m1m1(), k, resolver.lower_resolver(3))
        assert out.ok
        assert "empty" in out.note


def test_boundary_detects_wrong_form():
    # R = 1 satisfies the recursion but not the k=2 boundary for b=(2,-1,-1)
    wrong = ClosedForm(3, (2, -1, -1), RatFunc.one(3))
    assert check_recursion(wrong).ok
    resolver = Resolver()
    out = check_boundary(wrong, 1, resolver.lower_resolver(3))
    assert not out.ok


def test_boundary_negative_pivot_requires_vanishing():
    # for b_k < 0 the check passes iff R vanishes at a_k = 0
    form = form_2m1m1()
    resolver = Resolver()
    assert form.R.num.substitute({1: 0}).is_zero()
    assert check_boundary(form, 1, resolver.lower_resolver(3)).ok
    bad = ClosedForm(3, (2, -1, -1), RatFunc.one(3))
    assert not check_boundary(bad, 1, resolver.lower_resolver(3)).ok


def test_boundary_unresolved_dependency():
    form = form_2m1m1()
    with pytest.raises(UnresolvedDependencyError) as info:
        check_boundary(form, 0, dict_resolver({}))
    assert (1, -1) in info.value.missing


def test_boundary_rejects_denominator_collapsing_form():
    # a denominator vanishing identically at a_k = 0 is malformed, not a limit
    a = _vars(3)
    form = ClosedForm(3, (0, 0, 0), RatFunc.make(Poly.const(3, 1), a[0]))
    resolver = Resolver()
    with pytest.raises(prover_module.MalformedFormError):
        check_boundary(form, 0, resolver.lower_resolver(3))


# ----------------------------------------------------------------------
# initial condition and denominator safety


def test_initial_examples():
    assert check_initial(ClosedForm(3, (0, 0, 0), RatFunc.one(3))).ok
    assert check_initial(form_2m1m1()).ok  # value 0 at a = 0
    form5 = guess_dyson(3, (-1, 0, 1))
    assert check_initial(form5).ok


def test_initial_limit_fallback_is_flagged():
    a1, a2 = Poly.variable(2, 0), Poly.variable(2, 1)
    form = ClosedForm(2, (0, 0), RatFunc.make(a1, a1 + a2))
    out = check_initial(form)
    assert out.note == "limit"
    assert not out.ok  # diagonal limit is 1/2, not the expected 1


def test_denominator_safety_syntactic():
    result = check_denominator_safety(form_2m1m1())
    assert result.ok and result.guarantee == "syntactic"
    coeff_sets = {f.coeffs for f in result.factors}
    assert coeff_sets == {(1, 0, 0), (1, 1, 0), (1, 0, 1)}
    assert all(f.constant == 1 for f in result.factors)


def test_denominator_safety_trivial_denominator():
    result = check_denominator_safety(ClosedForm(3, (0, 0, 0), RatFunc.one(3)))
    assert result.ok


def test_denominator_safety_grid_failure():
    a1, a2 = Poly.variable(2, 0), Poly.variable(2, 1)
    form = ClosedForm(2, (0, 0), RatFunc.make(Poly.const(2, 1), a1 - a2))
    result = check_denominator_safety(form)
    assert not result.ok
    assert result.witness is not None
    assert (a1 - a2).evaluate(result.witness) == 0


def test_denominator_safety_grid_fallback_positive():
    # irreducible quadratic denominator: syntactic test fails, grid check passes
    a1, a2 = Poly.variable(2, 0), Poly.variable(2, 1)
    den = a1 * a1 + a2 + Poly.const(2, 1)
    form = ClosedForm(2, (0, 0), RatFunc.make(Poly.const(2, 1), den))
    result = check_denominator_safety(form)
    assert result.ok and result.guarantee == "grid"


def test_linear_factors_reassembles_product():
    a = _vars(3)
    one = Poly.const(3, 1)
    den = (one + a[0] + a[1]) * (one + a[0] + a[2]) * (one + a[0])
    factors, const = linear_factors(den)
    rebuilt = Poly.const(3, const)
    for f in factors:
        rebuilt = rebuilt * f.to_poly()
    assert rebuilt == den


# ----------------------------------------------------------------------
# prove


def test_prove_2m1m1():
    cert = prove(3, (2, -1, -1))
    assert cert.is_valid()
    dep_bs = {d.form.b for d in cert.dependencies}
    assert dep_bs == {(1, -1), (-1, 1), (0, 0)}
    assert all(d.base_case for d in cert.dependencies)


def test_prove_zero_form():
    cert = prove(3, (1, 0, 0))
    assert cert.is_valid()
    assert cert.form.R.is_zero()


def test_prove_base_case_directly():
    cert = prove(2, (2, -2))
    assert cert.base_case and cert.is_valid()


def test_prove_n4_end_to_end():
    resolver = Resolver()
    cert = prove(4, (1, -1, 0, 0), resolver)
    assert cert.is_valid()
    # tree bottoms out in n = 2 base certificates
    level3 = cert.dependencies
    assert level3 and all(d.form.n == 3 for d in level3)
    leaves = [leaf for d in level3 for leaf in d.dependencies]
    assert leaves and all(leaf.base_case and leaf.form.n == 2 for leaf in leaves)
    assert cert.form.evaluate((1, 1, 1, 1)) == ct(4, (1, 1, 1, 1), (1, -1, 0, 0))
    assert cert.form.evaluate((2, 1, 1, 1)) == ct(4, (2, 1, 1, 1), (1, -1, 0, 0))


def test_prove_failure_gives_counterexample_report():
    resolver = Resolver()
    resolver.add_form(ClosedForm(3, (2, -1, -1), RatFunc.one(3)))
    with pytest.raises(ProofError) as info:
        prove(3, (2, -1, -1), resolver)
    assert info.value.outcome.check == "boundary"


def test_certified_forms_match_oracle_everywhere_tested():
    # every zero-sum b with |b_i| <= 2 for n = 3, all a_i <= 3
    resolver = Resolver()
    vectors = [
        b
        for b in itertools.product(range(-2, 3), repeat=3)
        if sum(b) == 0
    ]
    assert len(vectors) == 19
    for b in vectors:
        cert = prove(3, b, resolver)
        assert cert.is_valid()
        for a in itertools.product(range(4), repeat=3):
            assert cert.form.evaluate(a) == ct(3, a, b), (b, a)


@pytest.mark.parametrize(
    "target", ["check_recursion", "check_boundary", "check_initial"]
)
def test_mutated_checker_blocks_certificate(monkeypatch, target):
    def failing(*args, **kwargs):
        from dysonct.prover import CheckOutcome

        return CheckOutcome(ok=False, check=target)

    monkeypatch.setattr(prover_module, target, failing)
    with pytest.raises(ProofError):
        prover_module.prove(3, (2, -1, -1), Resolver())


def test_mutated_denominator_check_blocks_certificate(monkeypatch):
    def failing(form):
        from dysonct.prover import DenominatorSafety

        return DenominatorSafety(ok=False, guarantee="grid", witness=(0, 0, 0))

    monkeypatch.setattr(prover_module, "check_denominator_safety", failing)
    with pytest.raises(ProofError):
        prover_module.prove(3, (2, -1, -1), Resolver())


def test_certificate_serialization_carries_tree():
    cert = prove(3, (2, -1, -1), Resolver())
    data = cert.to_json()
    assert data["recursion_ok"] and data["initial_ok"]
    assert sorted(tuple(x) for x in data["dependency_b"]) == [(-1, 1), (0, 0), (1, -1)]
    assert len(data["dependencies"]) == 3
    assert all(dep["base_case"] for dep in data["dependencies"])
    assert "recursion" in data["identities"]
    assert len(data["identities"]["boundary"]) == 3
