"""Shared test helpers, chiefly the independent constant-term oracle."""

from __future__ import annotations

from dysonct.laurent import LaurentPoly
from dysonct.poly import Poly


def literal_ct(n: int, a, b) -> int:
    """Constant-term oracle by literal expansion of every (1 - x_i/x_j)^{a_j}.

    Deliberately naive (full product, no slicing, no pair merging) so it is
    an independent check on the production path; only usable for small a.
    """
    f = LaurentPoly.one(n)
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            expo = tuple(1 if t == i else (-1 if t == j else 0) for t in range(n))
            base = LaurentPoly(n, {(0,) * n: 1, expo: -1})
            for _ in range(a[j]):
                f = f * base
    return f.coefficient(tuple(b))


def poly_vars(nvars: int):
    """The variable polynomials a_1..a_n plus the constant-builder."""
    return [Poly.variable(nvars, i) for i in range(nvars)]


def latex_balanced(text: str) -> bool:
    """Smoke check used by the document tests: delimiters and environments pair up."""
    depth = 0
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                return False
    if depth != 0:
        return False
    if text.count(r"\[") != text.count(r"\]"):
        return False
    begins = [m for m in _environments(text, r"\begin{")]
    ends = [m for m in _environments(text, r"\end{")]
    return begins == ends


def _environments(text: str, marker: str):
    out = []
    idx = 0
    while True:
        idx = text.find(marker, idx)
        if idx < 0:
            return out
        close = text.find("}", idx)
        out.append(text[idx + len(marker) : close])
        idx = close
