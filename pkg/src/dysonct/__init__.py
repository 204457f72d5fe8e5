"""dysonct: conjecture and prove closed forms for Dyson-product constant terms."""

from .conjecture import (
    AnsatzFactor,
    ClosedForm,
    GuessExhausted,
    SampleSet,
    ansatz_factor,
    guess_dyson,
    guess_dyson_with_details,
    guess_rat,
    sample_grid,
)
from .laurent import (
    DysonInstance,
    LaurentPoly,
    PkExpansion,
    PkTerm,
    coeff_slice,
    ct,
    ct_bruteforce,
    multinomial,
    pk_expansion,
)
from .linalg import solve_nullspace
from .poly import BigRat, LinearForm, Poly, binomial_poly, poly_arith, poly_gcd
from .prover import (
    ProofCertificate,
    ProofError,
    Resolver,
    c2_closed_form,
    check_boundary,
    check_denominator_safety,
    check_initial,
    check_recursion,
    prove,
)
from .ratfunc import RatFunc, ratfunc_arith, rising_factorial
from .store import ResultStore, StoreEntry, store_path
from .turbo import (
    complexity,
    derive_by_reduction,
    permute_form,
    reduction_relation,
    turbo_dyson,
    zero_sum_vectors,
)

__all__ = [
    "AnsatzFactor",
    "BigRat",
    "ClosedForm",
    "DysonInstance",
    "GuessExhausted",
    "LaurentPoly",
    "LinearForm",
    "PkExpansion",
    "PkTerm",
    "Poly",
    "ProofCertificate",
    "ProofError",
    "RatFunc",
    "Resolver",
    "ResultStore",
    "SampleSet",
    "StoreEntry",
    "ansatz_factor",
    "binomial_poly",
    "c2_closed_form",
    "check_boundary",
    "check_denominator_safety",
    "check_initial",
    "check_recursion",
    "coeff_slice",
    "complexity",
    "ct",
    "ct_bruteforce",
    "derive_by_reduction",
    "guess_dyson",
    "guess_dyson_with_details",
    "guess_rat",
    "multinomial",
    "permute_form",
    "pk_expansion",
    "poly_arith",
    "poly_gcd",
    "prove",
    "ratfunc_arith",
    "reduction_relation",
    "rising_factorial",
    "sample_grid",
    "solve_nullspace",
    "store_path",
    "turbo_dyson",
    "zero_sum_vectors",
]
