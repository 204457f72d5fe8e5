"""Human-readable proof documents generated from certificates.

A document is only ever produced from a valid certificate.  It states the
closed form, then walks the verified facts in proof order: the recursion,
one boundary identity per pivot, the initial value, and the uniqueness
conclusion.  Everything displayed is re-derived from the certificate and the
deterministic expansion machinery, never free-typed.
"""

from __future__ import annotations

from typing import List

from .laurent import pk_expansion
from .prover import ProofCertificate
from .render import (
    ASCII,
    LATEX,
    fmt_b_vector,
    fmt_c_symbol,
    fmt_closed_form,
    fmt_d_symbol,
    fmt_pk_coeff,
    fmt_var,
)

FORMATS = ("markdown", "latex")


def build_document(cert: ProofCertificate, fmt: str = "markdown") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    if not cert.is_valid():
        raise ValueError("refusing to write a document for an invalid certificate")
    if fmt == "latex":
        return _latex_document(cert)
    return _markdown_document(cert)


# ----------------------------------------------------------------------
# shared text assembly


def _a_with_zero(n: int, k: int, style: str) -> str:
    parts = ["0" if i == k else fmt_var(i, style) for i in range(n)]
    inner = ",".join(parts)
    if style == LATEX:
        return rf"\langle {inner} \rangle"
    return f"<{inner}>"


def _a_minus_e(n: int, i: int, style: str) -> str:
    parts = [
        f"{fmt_var(j, style)}-1" if j == i else fmt_var(j, style) for j in range(n)
    ]
    inner = ",".join(parts)
    if style == LATEX:
        return rf"\langle {inner} \rangle"
    return f"<{inner}>"


def _a_hat(n: int, k: int, style: str) -> str:
    parts = [fmt_var(i, style) for i in range(n) if i != k]
    inner = ",".join(parts)
    if style == LATEX:
        return rf"\langle {inner} \rangle"
    return f"<{inner}>"


def _boundary_rhs(cert: ProofCertificate, k: int, style: str) -> str:
    n, b = cert.form.n, cert.form.b
    expansion = pk_expansion(n, k, b)
    if not expansion.terms:
        return "0"
    others = [i for i in range(n) if i != k]
    pieces: List[str] = []
    for term in expansion.terms:
        coeff = fmt_pk_coeff(term, others, style)
        call = fmt_c_symbol(n - 1, term.shifted_b, style, a_text=_a_hat(n, k, style))
        if coeff == "1":
            piece = call
        elif coeff == "-1":
            piece = f"-{call}"
        else:
            sep = r"\, " if style == LATEX else " "
            piece = f"{coeff}{sep}{call}"
        pieces.append(piece)
    text = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            text += " - " + piece[1:]
        else:
            text += " + " + piece
    return text


def _recursion_rhs(n: int, b, style: str) -> str:
    terms = [fmt_c_symbol(n, b, style, a_text=_a_minus_e(n, i, style)) for i in range(n)]
    return " + ".join(terms)


def _zero_vector(n: int, style: str) -> str:
    return fmt_b_vector((0,) * n, style)


# ----------------------------------------------------------------------
# markdown


def _markdown_document(cert: ProofCertificate) -> str:
    form = cert.form
    n, b = form.n, form.b
    d_sym = fmt_d_symbol(n, b, ASCII)
    c_sym = fmt_c_symbol(n, b, ASCII)
    lines: List[str] = []
    lines.append(f"# Closed form for {c_sym}")
    lines.append("")
    if cert.base_case:
        body = "0" if form.R.is_zero() else fmt_closed_form(form, ASCII)
        lines.append(f"**Statement.** {c_sym} = {d_sym} = {body}")
        lines.append("")
        lines.append(
            "This is the built-in two-variable family: expanding the Laurent "
            "product reduces it to a single binomial coefficient, so no further "
            "induction is needed."
        )
        return "\n".join(lines) + "\n"
    if form.R.is_zero():
        lines.append(
            f"**Statement.** {c_sym} = 0 for all nonnegative integer a, since the "
            f"components of b = {fmt_b_vector(b, ASCII)} do not sum to zero and the "
            f"underlying Laurent product is homogeneous of degree 0."
        )
        lines.append("")
        lines.append(_conclusion_text(cert, ASCII))
        return "\n".join(lines) + "\n"

    lines.append(
        f"**Statement.** For all nonnegative integers "
        + ", ".join(fmt_var(i, ASCII) for i in range(n))
        + ","
    )
    lines.append("")
    lines.append(f"    {c_sym} = {d_sym} = {fmt_closed_form(form, ASCII)}")
    lines.append("")
    lines.append(
        f"where {c_sym} denotes the constant term of the Laurent product "
        f"F_{n}(x; a; {fmt_b_vector(b, ASCII)})."
    )
    lines.append("")
    lines.append("## Good style proof")
    lines.append("")
    lines.append(f"**Recursion.** For {', '.join(fmt_var(i, ASCII) for i in range(n))} >= 1,")
    lines.append("")
    lines.append(f"    {c_sym} = {_recursion_rhs(n, b, ASCII)}")
    lines.append("")
    lines.append(
        "and the closed form satisfies the same relation "
        "(verified as an identity of rational functions in canonical form)."
    )
    lines.append("")
    lines.append("**Boundary conditions.** Setting each a_k = 0 in turn:")
    lines.append("")
    for k in range(n):
        lhs = fmt_c_symbol(n, b, ASCII, a_text=_a_with_zero(n, k, ASCII))
        lines.append(f"    {lhs} = {_boundary_rhs(cert, k, ASCII)}")
    lines.append("")
    lines.append(
        "each verified against the lower-level closed forms "
        "(empty right sides are exactly the vanishing cases)."
    )
    lines.append("")
    value = "1" if all(x == 0 for x in b) else "0"
    lines.append(
        f"**Initial condition.** "
        f"{fmt_c_symbol(n, b, ASCII, a_text=_zero_vector(n, ASCII))} = {value}."
    )
    lines.append("")
    lines.append(_conclusion_text(cert, ASCII))
    deps = _dependency_section(cert, ASCII)
    if deps:
        lines.append("")
        lines.extend(deps)
    return "\n".join(lines) + "\n"


def _conclusion_text(cert: ProofCertificate, style: str) -> str:
    form = cert.form
    c_sym = fmt_c_symbol(form.n, form.b, style)
    return (
        f"**Conclusion.** The recursion, the {form.n} boundary identities, and the "
        f"initial value determine {c_sym} at every nonnegative integer point; the "
        f"closed form above satisfies all of them, so the identity holds. QED"
    )


def _dependency_section(cert: ProofCertificate, style: str) -> List[str]:
    if not cert.dependencies or all(d.base_case for d in cert.dependencies):
        return []
    lines = ["## Appendix: lower-level closed forms used by the boundary checks", ""]
    for dep in cert.dependencies:
        lines.extend(_dependency_lines(dep, style))
    return lines


def _dependency_lines(dep: ProofCertificate, style: str) -> List[str]:
    form = dep.form
    d_sym = fmt_d_symbol(form.n, form.b, style)
    body = fmt_closed_form(form, style) if not form.R.is_zero() else "0"
    lines = [f"- {d_sym} = {body}"]
    if dep.base_case:
        return lines
    sub = [d for d in dep.dependencies]
    if sub:
        inner = ", ".join(fmt_b_vector(s.form.b, style) for s in sub)
        lines.append(f"  (certified via its own recursion/boundary/initial checks; "
                     f"depends on {inner})")
    for s in sub:
        if not s.base_case:
            lines.extend("  " + l for l in _dependency_lines(s, style))
    return lines


# ----------------------------------------------------------------------
# latex


def _latex_document(cert: ProofCertificate) -> str:
    form = cert.form
    n, b = form.n, form.b
    c_sym = fmt_c_symbol(n, b, LATEX)
    d_sym = fmt_d_symbol(n, b, LATEX)
    out: List[str] = []
    out.append(rf"\section*{{Closed form for ${c_sym}$}}")
    out.append("")
    if cert.base_case:
        body = "0" if form.R.is_zero() else fmt_closed_form(form, LATEX)
        out.append(rf"\noindent\textbf{{Statement.}} ${c_sym} = {d_sym} = {body}$.")
        out.append("")
        out.append(
            "This is the built-in two-variable family: expanding the Laurent "
            "product reduces it to a single binomial coefficient, so no further "
            "induction is needed."
        )
        return "\n".join(out) + "\n"
    if form.R.is_zero():
        out.append(
            rf"${c_sym} = 0$ for all nonnegative integer $\mathbf{{a}}$, since the "
            rf"components of $\mathbf{{b}} = {fmt_b_vector(b, LATEX)}$ do not sum to "
            r"zero and the underlying Laurent product is homogeneous of degree $0$."
        )
        out.append("")
        out.append(_latex_conclusion(cert))
        return "\n".join(out) + "\n"

    out.append(
        r"\noindent\textbf{Statement.} For all nonnegative integers "
        + ", ".join(f"${fmt_var(i, LATEX)}$" for i in range(n))
        + ","
    )
    out.append(r"\[")
    out.append(rf"{c_sym} = {d_sym} = {fmt_closed_form(form, LATEX)}.")
    out.append(r"\]")
    out.append(
        rf"Here ${c_sym}$ denotes the constant term of the Laurent product "
        rf"$F_{{{n}}}(\mathbf{{x}}; \mathbf{{a}}; {fmt_b_vector(b, LATEX)})$."
    )
    out.append("")
    out.append(r"\subsection*{Good style proof}")
    out.append("")
    out.append(
        r"\noindent\textbf{Recursion.} For "
        + ", ".join(f"${fmt_var(i, LATEX)}$" for i in range(n))
        + r" $\geq 1$,"
    )
    out.append(r"\[")
    out.append(rf"{c_sym} = {_recursion_rhs(n, b, LATEX)},")
    out.append(r"\]")
    out.append(
        "and the closed form satisfies the same relation (verified as an identity "
        "of rational functions in canonical form)."
    )
    out.append("")
    out.append(r"\noindent\textbf{Boundary conditions.} Setting each $a_k = 0$ in turn:")
    out.append(r"\begin{gather*}")
    rows = []
    for k in range(n):
        lhs = fmt_c_symbol(n, b, LATEX, a_text=_a_with_zero(n, k, LATEX))
        rows.append(rf"{lhs} = {_boundary_rhs(cert, k, LATEX)}")
    out.append(" \\\\\n".join(rows))
    out.append(r"\end{gather*}")
    out.append(
        "each verified against the lower-level closed forms (empty right sides "
        "are exactly the vanishing cases)."
    )
    out.append("")
    value = "1" if all(x == 0 for x in b) else "0"
    init_sym = fmt_c_symbol(n, b, LATEX, a_text=_zero_vector(n, LATEX))
    out.append(rf"\noindent\textbf{{Initial condition.}} ${init_sym} = {value}$.")
    out.append("")
    out.append(_latex_conclusion(cert))
    deps = _latex_dependency_section(cert)
    if deps:
        out.append("")
        out.extend(deps)
    return "\n".join(out) + "\n"


def _latex_conclusion(cert: ProofCertificate) -> str:
    form = cert.form
    c_sym = fmt_c_symbol(form.n, form.b, LATEX)
    return (
        rf"\noindent\textbf{{Conclusion.}} The recursion, the {form.n} boundary "
        rf"identities, and the initial value determine ${c_sym}$ at every "
        r"nonnegative integer point; the closed form above satisfies all of them, "
        r"so the identity holds. \qed"
    )


def _latex_dependency_section(cert: ProofCertificate) -> List[str]:
    if not cert.dependencies or all(d.base_case for d in cert.dependencies):
        return []
    out = [r"\subsection*{Appendix: lower-level closed forms used by the boundary checks}"]
    out.append(r"\begin{itemize}")
    for dep in cert.dependencies:
        out.extend(_latex_dependency_item(dep))
    out.append(r"\end{itemize}")
    return out


def _latex_dependency_item(dep: ProofCertificate) -> List[str]:
    form = dep.form
    d_sym = fmt_d_symbol(form.n, form.b, LATEX)
    body = fmt_closed_form(form, LATEX) if not form.R.is_zero() else "0"
    lines = [rf"\item ${d_sym} = {body}$"]
    if not dep.base_case and dep.dependencies:
        inner = ", ".join(f"${fmt_b_vector(s.form.b, LATEX)}$" for s in dep.dependencies)
        lines.append(rf"(depends on {inner})")
    return lines
