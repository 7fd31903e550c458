"""Degree-one de Rham cohomology, U(1) gauge theory, and cross-group checks.

The first cohomology is computed from exact integer matrices for the two
differentials; on the four-element class of a4 (and the transposition
class of s3) it is one-dimensional, generated by the sum of the basis
one-forms, which is closed but not exact.  Constant multiples of a single
basis form shifted by that sum give flat U(1) connections; gauge
transformations act by unit functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .cyclotomic import Cyclotomic
from .groups import (
    ClassCalculus,
    FiniteGroup,
    GroupSpecError,
    TABLE_III,
    build_group,
    class_calculus,
    classify_class_products,
    is_cyclic_class,
)
from . import linalg
from .linalg import ExactMatrix
from .calculus import (
    GroupFunction,
    OneForm,
    TwoForm,
    braiding,
    d0,
    d1,
    e_form,
    right_translate,
    theta,
    two_form_right_mul,
    wedge,
)

Scalar = Union[Cyclotomic, int, Fraction]


def _as_cyc(value: Scalar) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic(value)


# ---------------------------------------------------------------------------
# differentials as matrices, first cohomology
# ---------------------------------------------------------------------------


def one_form_to_vector(c: ClassCalculus, w: OneForm) -> list[Cyclotomic]:
    out: list[Cyclotomic] = []
    for f in w.coeffs:
        out.extend(f.values)
    return out


def vector_to_one_form(c: ClassCalculus, vec: Sequence[Cyclotomic]) -> OneForm:
    order = c.group.order
    return OneForm(
        tuple(
            GroupFunction(tuple(vec[a * order + g] for g in range(order)))
            for a in range(c.n)
        )
    )


def two_form_to_vector(c: ClassCalculus, w: TwoForm) -> list[Cyclotomic]:
    out: list[Cyclotomic] = []
    for f in w.coeffs:
        out.extend(f.values)
    return out


def d0_matrix(c: ClassCalculus) -> ExactMatrix:
    """The differential on functions, as an (n |G|) x |G| matrix."""
    order = c.group.order
    cols = []
    for h in range(order):
        cols.append(one_form_to_vector(c, d0(c, GroupFunction.delta(order, h))))
    return ExactMatrix.from_rows(cols).transpose()


def d1_matrix(c: ClassCalculus) -> ExactMatrix:
    """The differential on one-forms, over the degree-two basis."""
    order = c.group.order
    cols = []
    zero = GroupFunction.zero(order)
    for a in range(c.n):
        for g in range(order):
            coeffs = [zero] * c.n
            coeffs[a] = GroupFunction.delta(order, g)
            cols.append(two_form_to_vector(c, d1(c, OneForm(tuple(coeffs)))))
    return ExactMatrix.from_rows(cols).transpose()


def de_rham_h1(c: ClassCalculus) -> dict:
    """ker d1 / im d0 in degree one, with the distinguished representative."""
    mat0 = d0_matrix(c)
    mat1 = d1_matrix(c)
    prod = mat1 @ mat0
    if not prod.is_zero():
        raise linalg.CertificationError("d1 d0 != 0")
    rank0 = linalg.rank(mat0)
    ker1 = mat1.cols - linalg.rank(mat1)
    th_vec = one_form_to_vector(c, theta(c))
    th_closed = all(not v for v in mat1.matvec(th_vec))
    th_exact = linalg.solve_affine(mat0, th_vec) is not None
    h1 = ker1 - rank0
    representative = "theta" if (h1 == 1 and th_closed and not th_exact) else None
    return {
        "ker_d1": ker1,
        "im_d0": rank0,
        "h1_dim": h1,
        "theta_closed": th_closed,
        "theta_exact": th_exact,
        "representative": representative,
    }


# ---------------------------------------------------------------------------
# U(1) connections
# ---------------------------------------------------------------------------


def u1_curvature(c: ClassCalculus, alpha: OneForm) -> TwoForm:
    """F(alpha) = d alpha + alpha ^ alpha."""
    return d1(c, alpha) + wedge(c, alpha, alpha)


def gauge_transform(c: ClassCalculus, u: GroupFunction, alpha: OneForm) -> OneForm:
    """alpha -> u alpha u^-1 + u d(u^-1), for a unit function u."""
    uinv = u.pointwise_inverse()
    coeffs = []
    for a in range(c.n):
        moved = u * alpha.coeffs[a] * right_translate(c, a, uinv)
        inhom = u * (right_translate(c, a, uinv) - uinv)
        coeffs.append(moved + inhom)
    return OneForm(tuple(coeffs))


def conjugate_two_form(c: ClassCalculus, u: GroupFunction, w: TwoForm) -> TwoForm:
    """u w u^-1: the inverse translates past both legs of each basis wedge."""
    uinv = u.pointwise_inverse()
    return TwoForm(tuple(u * f for f in two_form_right_mul(c, w, uinv).coeffs))


@dataclass(frozen=True)
class FlatFamily:
    """A line of constant connections with identically vanishing curvature."""

    kind: str  # "axis" or "diagonal"
    axis: str | None  # class label for axis families

    def member(self, c: ClassCalculus, lam: Scalar) -> OneForm:
        lam = _as_cyc(lam)
        th = theta(c)
        if self.kind == "diagonal":
            return th.scale(lam - 1)
        return e_form(c, self.axis).scale(lam) - th


def constant_flat_connections(c: ClassCalculus) -> list[FlatFamily]:
    """One family per class direction plus the diagonal family."""
    out = [FlatFamily(kind="axis", axis=label) for label in c.labels]
    out.append(FlatFamily(kind="diagonal", axis=None))
    return out


def constant_one_form(c: ClassCalculus, coeffs: Sequence[Scalar]) -> OneForm:
    order = c.group.order
    return OneForm(
        tuple(GroupFunction.constant(order, _as_cyc(v)) for v in coeffs)
    )


def is_flat_family_member(c: ClassCalculus, alpha: OneForm) -> bool:
    """Whether a constant connection lies on one of the flat lines."""
    consts = []
    for f in alpha.coeffs:
        if not f.is_constant():
            return False
        consts.append(f.values[0])
    shifted = [v + 1 for v in consts]
    nonzero = [v for v in shifted if v]
    if len(nonzero) <= 1:
        return True
    return all(v == shifted[0] for v in shifted)


# ---------------------------------------------------------------------------
# cross-checks on other groups
# ---------------------------------------------------------------------------


def _braiding_fixes(c: ClassCalculus, terms: Sequence[tuple[int, int]]) -> bool:
    """Whether sum of e_a (x) e_b over the terms is braiding-invariant."""
    n = c.n
    vec = [0] * (n * n)
    for a, b in terms:
        vec[a * n + b] += 1
    perm = braiding(c).perm
    out = [0] * (n * n)
    for col, val in enumerate(vec):
        if val:
            out[perm[col]] += val
    return out == vec


def s4_cross_relations_check(group: FiniteGroup | None = None) -> dict:
    """Degree-two relations on the eight-element class of s4.

    Pairs a (x) a-bar anticommute; three cyclic four-term sums mixing the
    chiral halves, and their images under a (x) b -> b-bar (x) a-bar, all
    land in the braiding-invariant relation space.
    """
    if group is None:
        group = build_group("s4")
    t = group.index("(123)")
    u = group.index("(14)(23)")
    v = group.index("(12)(34)")
    w = group.index("(13)(24)")
    x = group.mult(u, t)
    y = group.mult(v, t)
    z = group.mult(w, t)
    c = class_calculus(group, group.names[t])
    pos = {}
    for sym, g in (("t", t), ("x", x), ("y", y), ("z", z)):
        pos[sym] = c.elements.index(g)
        pos[sym + "bar"] = c.elements.index(group.inv(g))
    legend = {sym: group.names[c.elements[p]] for sym, p in pos.items()}

    def conj_terms(terms: list[tuple[str, str]]) -> list[tuple[str, str]]:
        def bar(s: str) -> str:
            return s[:-3] if s.endswith("bar") else s + "bar"

        return [(bar(b), bar(a)) for a, b in terms]

    named: dict[str, list[tuple[str, str]]] = {}
    for sym in ("t", "x", "y", "z"):
        named[f"{sym} {sym}bar pair"] = [(sym, sym + "bar"), (sym + "bar", sym)]
    cycles = {
        "cycle t zbar x ybar": [("t", "zbar"), ("zbar", "x"), ("x", "ybar"), ("ybar", "t")],
        "cycle t xbar y zbar": [("t", "xbar"), ("xbar", "y"), ("y", "zbar"), ("zbar", "t")],
        "cycle t ybar z xbar": [("t", "ybar"), ("ybar", "z"), ("z", "xbar"), ("xbar", "t")],
    }
    named.update(cycles)
    for name, terms in cycles.items():
        named[name + " conjugate"] = conj_terms(terms)
    results = {
        name: _braiding_fixes(c, [(pos[a], pos[b]) for a, b in terms])
        for name, terms in named.items()
    }
    return {
        "class_size": c.n,
        "legend": legend,
        "relations": results,
        "all_in_kernel": all(results.values()),
    }


def conjugate_calculus_check(c: ClassCalculus) -> dict:
    """Transpose of each difference operator is the inverse-class operator.

    Requires every class element to have order three, so the inverse class
    is the elementwise square.
    """
    group = c.group
    for g in c.elements:
        if group.element_order(g) != 3:
            raise GroupSpecError(
                "conjugate-calculus check needs an order-three class",
                {"element": group.names[g], "order": group.element_order(g)},
            )
    order = group.order
    ok = True
    for pos in range(c.n):
        a = c.elements[pos]
        asq = group.mult(a, a)
        for g in range(order):
            for h in range(order):
                lhs = (1 if group.mult(h, a) == g else 0) - (1 if h == g else 0)
                rhs = (1 if group.mult(g, asq) == h else 0) - (1 if g == h else 0)
                if lhs != rhs:
                    ok = False
    conj_label = group.names[group.inv(c.elements[0])]
    conj_c = class_calculus(group, conj_label)
    cyclic, witness = is_cyclic_class(conj_c)
    table = classify_class_products(conj_c) if cyclic else None
    return {
        "transpose_identity": ok,
        "conjugate_class_of": conj_label,
        "conjugate_cyclic": cyclic,
        "conjugate_witness": witness,
        "conjugate_table": table,
        "conjugate_size": conj_c.n,
    }
