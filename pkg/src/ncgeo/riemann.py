"""Invariant metrics, connections, torsion, curvature and Ricci flatness.

Connections are families A_a of one-forms indexed by the class.  Torsion
acts pointwise on the components, so its solution space is assembled from
one small affine block per group point; the cotorsion condition couples
points through right translations and is solved by substituting the
torsion-free parametrization.  Ricci curvature uses a lift of two-forms
into the tensor square: the canonical splitting (complement of the
relation kernel along its orthogonal projector) or the simpler
id - braiding lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .cyclotomic import ONE, ZERO, Cyclotomic
from .groups import ClassCalculus
from . import linalg
from .linalg import AffineSpace, ExactMatrix
from .calculus import (
    GroupFunction,
    OneForm,
    TwoForm,
    braiding,
    d0,
    d1,
    de_basis,
    e_form,
    omega2_basis,
    theta,
    wedge,
    zero_two_form,
)

Scalar = Union[Cyclotomic, int, Fraction]


def _as_cyc(value: Scalar) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic(value)


# ---------------------------------------------------------------------------
# tensor square of the one-form module
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorSquare:
    """sum_{a,b} f_{ab} e_a (x) e_b with all coefficients on the left."""

    n: int
    coeffs: tuple[GroupFunction, ...]  # index a * n + b

    @classmethod
    def zero(cls, c: ClassCalculus) -> "TensorSquare":
        order = c.group.order
        return cls(c.n, tuple(GroupFunction.zero(order) for _ in range(c.n * c.n)))

    def entry(self, a: int, b: int) -> GroupFunction:
        return self.coeffs[a * self.n + b]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coeffs)

    def __add__(self, other: "TensorSquare") -> "TensorSquare":
        return TensorSquare(
            self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "TensorSquare") -> "TensorSquare":
        return TensorSquare(
            self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "TensorSquare":
        return TensorSquare(self.n, tuple(-a for a in self.coeffs))

    def scale(self, s: Scalar) -> "TensorSquare":
        s = _as_cyc(s)
        return TensorSquare(self.n, tuple(f * s for f in self.coeffs))


def tensor_of_forms(c: ClassCalculus, u: OneForm, v: OneForm) -> TensorSquare:
    """u (x) v, moving v's coefficients left: f e_a (x) h e_b = f R_a(h) e_a (x) e_b."""
    from .calculus import right_translate

    order = c.group.order
    coeffs = []
    for a in range(c.n):
        fa = u.coeffs[a]
        for b in range(c.n):
            hb = v.coeffs[b]
            if fa.is_zero() or hb.is_zero():
                coeffs.append(GroupFunction.zero(order))
            else:
                coeffs.append(fa * right_translate(c, a, hb))
    return TensorSquare(c.n, tuple(coeffs))


def wedge_tensor(c: ClassCalculus, t: TensorSquare) -> TwoForm:
    """Image of a tensor under the wedge quotient map."""
    basis = omega2_basis(c)
    order = c.group.order
    out = [GroupFunction.zero(order) for _ in range(basis.dim)]
    for col, f in enumerate(t.coeffs):
        if f.is_zero():
            continue
        for beta in range(basis.dim):
            r = basis.reduction.data[beta][col]
            if r:
                out[beta] = out[beta] + f * r
    return TwoForm(tuple(out))


# ---------------------------------------------------------------------------
# invariant metrics
# ---------------------------------------------------------------------------


def _class_pos_conj(c: ClassCalculus, g: int) -> list[int]:
    """Class position map j -> position of g a_j g^-1."""
    group = c.group
    return [c.elements.index(group.conjugate(g, c.elements[j])) for j in range(c.n)]


def invariant_bilinear_space(c: ClassCalculus) -> list[ExactMatrix]:
    """Basis of bilinear forms with eta(conj_g a, b) = eta(a, conj_{g^-1} b)."""
    n = c.n
    rows: list[list[Cyclotomic]] = []
    for g in range(c.group.order):
        conj = _class_pos_conj(c, g)
        inv_conj = _class_pos_conj(c, c.group.inv(g))
        for a in range(n):
            for b in range(n):
                row = [ZERO] * (n * n)
                row[inv_conj[a] * n + b] = row[inv_conj[a] * n + b] + ONE
                row[a * n + conj[b]] = row[a * n + conj[b]] - ONE
                if any(row):
                    rows.append(row)
    if not rows:
        basis_vecs = [
            tuple(ONE if k == i else ZERO for k in range(n * n))
            for i in range(n * n)
        ]
    else:
        basis_vecs = linalg.nullspace(ExactMatrix.from_rows(rows))
    out = []
    for vec in basis_vecs:
        data = [[vec[a * n + b] for b in range(n)] for a in range(n)]
        out.append(ExactMatrix(n, n, data))
    return out


@dataclass(frozen=True)
class Metric:
    """An invariant fibre metric eta together with its inverse if it has one."""

    eta: ExactMatrix
    eta_inv: ExactMatrix | None
    mu: Cyclotomic | None = None

    @property
    def is_invertible(self) -> bool:
        return self.eta_inv is not None


def metric_from_mu(c: ClassCalculus, mu: Scalar) -> Metric:
    """eta = id + mu * (all-ones); invertible exactly when 1 + n*mu != 0."""
    n = c.n
    mu = _as_cyc(mu)
    data = [
        [mu + 1 if a == b else mu for b in range(n)]
        for a in range(n)
    ]
    eta = ExactMatrix(n, n, data)
    denom = 1 + mu * n
    if not denom:
        return Metric(eta=eta, eta_inv=None, mu=mu)
    shift = mu * denom.inverse()
    inv_data = [
        [(Cyclotomic(1) if a == b else ZERO) - shift for b in range(n)]
        for a in range(n)
    ]
    return Metric(eta=eta, eta_inv=ExactMatrix(n, n, inv_data), mu=mu)


def metric_tensor(c: ClassCalculus, metric: Metric) -> TensorSquare:
    """g = sum_{ab} eta_{ab} e_a (x) e_b with constant coefficients."""
    order = c.group.order
    coeffs = []
    for a in range(c.n):
        for b in range(c.n):
            coeffs.append(GroupFunction.constant(order, metric.eta.data[a][b]))
    return TensorSquare(c.n, tuple(coeffs))


# ---------------------------------------------------------------------------
# connections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Connection:
    """One one-form A_a per class position."""

    comps: tuple[OneForm, ...]

    def sum(self) -> OneForm:
        total = self.comps[0]
        for w in self.comps[1:]:
            total = total + w
        return total


def vector_index(c: ClassCalculus, g: int, b: int, d: int) -> int:
    return (g * c.n + b) * c.n + d


def connection_from_vector(
    c: ClassCalculus, vec: Sequence[Cyclotomic]
) -> Connection:
    """Unflatten: vec[(g n + b) n + d] is the e_d coefficient of A_b at g."""
    n = c.n
    order = c.group.order
    comps = []
    for b in range(n):
        coeffs = []
        for d in range(n):
            values = tuple(vec[vector_index(c, g, b, d)] for g in range(order))
            coeffs.append(GroupFunction(values))
        comps.append(OneForm(tuple(coeffs)))
    return Connection(tuple(comps))


def connection_to_vector(c: ClassCalculus, conn: Connection) -> list[Cyclotomic]:
    n = c.n
    order = c.group.order
    vec = [ZERO] * (order * n * n)
    for b in range(n):
        for d in range(n):
            values = conn.comps[b].coeffs[d].values
            for g in range(order):
                vec[vector_index(c, g, b, d)] = values[g]
    return vec


def torsion(c: ClassCalculus, conn: Connection) -> list[TwoForm]:
    """Torsion two-forms: d e_a + sum_b A_b ^ (e_{b^-1 a b} - e_a)."""
    des = de_basis(c)
    out = []
    for a in range(c.n):
        total = des[a]
        ea = e_form(c, a)
        for b in range(c.n):
            diff = e_form(c, c.ad_inv(b, a)) - ea
            total = total + wedge(c, conn.comps[b], diff)
        out.append(total)
    return out


def dual_basis_form(c: ClassCalculus, metric: Metric, a: int) -> OneForm:
    """e*^a = sum_b eta^{ba} e_b (constant coefficients)."""
    order = c.group.order
    return OneForm(
        tuple(
            GroupFunction.constant(order, metric.eta.data[b][a])
            for b in range(c.n)
        )
    )


def cotorsion(c: ClassCalculus, conn: Connection, metric: Metric) -> list[TwoForm]:
    """Cotorsion two-forms: d e*^a + sum_b (e*^{b a b^-1} - e*^a) ^ A_b."""
    des = de_basis(c)
    out = []
    for a in range(c.n):
        total = zero_two_form(c)
        for b in range(c.n):
            total = total + des[b].scale(metric.eta.data[b][a])
        star_a = dual_basis_form(c, metric, a)
        for b in range(c.n):
            diff = dual_basis_form(c, metric, c.ad(b, a)) - star_a
            total = total + wedge(c, diff, conn.comps[b])
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# affine solvers
# ---------------------------------------------------------------------------


def _constant_value(f: GroupFunction) -> Cyclotomic:
    return f.values[0]


def _torsion_point_block(c: ClassCalculus) -> tuple[ExactMatrix, list[Cyclotomic]]:
    """The single-point torsion system: unknowns A_b^d, one block per point."""
    n = c.n
    basis = omega2_basis(c)
    des = de_basis(c)
    rows: list[list[Cyclotomic]] = []
    rhs: list[Cyclotomic] = []
    for a in range(n):
        ea = e_form(c, a)
        # wedge(e_d, e_{b^-1 a b} - e_a) has constant coefficients
        cols: list[list[Cyclotomic]] = []
        for b in range(n):
            diff = e_form(c, c.ad_inv(b, a)) - ea
            for d in range(n):
                w = wedge(c, e_form(c, d), diff)
                cols.append([_constant_value(f) for f in w.coeffs])
        for beta in range(basis.dim):
            rows.append([col[beta] for col in cols])
            rhs.append(-_constant_value(des[a].coeffs[beta]))
    return ExactMatrix.from_rows(rows), rhs


def solve_torsion_free(c: ClassCalculus) -> AffineSpace | None:
    """All torsion-free connections, as an affine space of flat vectors."""
    n = c.n
    order = c.group.order
    block, rhs = _torsion_point_block(c)
    sol = linalg.solve_affine(block, rhs)
    if sol is None:
        return None
    total = order * n * n
    particular = [ZERO] * total
    for g in range(order):
        for b in range(n):
            for d in range(n):
                particular[vector_index(c, g, b, d)] = sol.particular[b * n + d]
    basis_vecs = []
    for g in range(order):
        for vec in sol.basis:
            full = [ZERO] * total
            for b in range(n):
                for d in range(n):
                    full[vector_index(c, g, b, d)] = vec[b * n + d]
            basis_vecs.append(tuple(full))
    return AffineSpace(particular=tuple(particular), basis=tuple(basis_vecs))


def _combine(
    particular: Sequence[Cyclotomic],
    basis: Sequence[Sequence[Cyclotomic]],
    coeffs: Sequence[Cyclotomic],
) -> list[Cyclotomic]:
    out = list(particular)
    for w, vec in zip(coeffs, basis):
        if not w:
            continue
        for i, v in enumerate(vec):
            if v:
                out[i] = out[i] + w * v
    return out


def _solve_on_family(
    family: AffineSpace,
    evaluate,
) -> AffineSpace | None:
    """Solve evaluate(x) = 0 on an affine family, assuming evaluate is affine."""
    base = evaluate(list(family.particular))
    columns = []
    for vec in family.basis:
        shifted = evaluate(_combine(family.particular, [vec], [ONE]))
        columns.append([s - b for s, b in zip(shifted, base)])
    if columns:
        mat = ExactMatrix.from_rows(columns).transpose()
    else:
        mat = ExactMatrix.zeros(len(base), 0)
    sol = linalg.solve_affine(mat, [-v for v in base])
    if sol is None:
        return None
    particular = _combine(family.particular, family.basis, sol.particular)
    basis_vecs = []
    for yvec in sol.basis:
        zero = [ZERO] * len(family.particular)
        basis_vecs.append(tuple(_combine(zero, family.basis, yvec)))
    return AffineSpace(particular=tuple(particular), basis=tuple(basis_vecs))


def _twoforms_to_vector(tfs: Sequence[TwoForm]) -> list[Cyclotomic]:
    out: list[Cyclotomic] = []
    for tf in tfs:
        for f in tf.coeffs:
            out.extend(f.values)
    return out


def solve_torsion_cotorsion_free(
    c: ClassCalculus, metric: Metric
) -> AffineSpace | None:
    """Connections with vanishing torsion and cotorsion (an affine space)."""
    family = solve_torsion_free(c)
    if family is None:
        return None

    def evaluate(vec: list[Cyclotomic]) -> list[Cyclotomic]:
        conn = connection_from_vector(c, vec)
        return _twoforms_to_vector(cotorsion(c, conn, metric))

    return _solve_on_family(family, evaluate)


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def is_regular(c: ClassCalculus, conn: Connection) -> bool:
    """Products A_a ^ A_b grouped by a*b vanish outside identity and class."""
    group = c.group
    allowed = {group.identity} | set(c.elements)
    buckets: dict[int, TwoForm] = {}
    for a in range(c.n):
        for b in range(c.n):
            g = group.mult(c.elements[a], c.elements[b])
            if g in allowed:
                continue
            w = wedge(c, conn.comps[a], conn.comps[b])
            buckets[g] = buckets[g] + w if g in buckets else w
    return all(w.is_zero() for w in buckets.values())


def curvature_2forms(c: ClassCalculus, conn: Connection) -> list[TwoForm]:
    """F_a = d A_a + sum_{cd=a} A_c ^ A_d - sum_c (A_c ^ A_a + A_a ^ A_c)."""
    group = c.group
    out = []
    for a in range(c.n):
        total = d1(c, conn.comps[a])
        target = c.elements[a]
        for i in range(c.n):
            for j in range(c.n):
                if group.mult(c.elements[i], c.elements[j]) == target:
                    total = total + wedge(c, conn.comps[i], conn.comps[j])
        for i in range(c.n):
            total = total - wedge(c, conn.comps[i], conn.comps[a])
            total = total - wedge(c, conn.comps[a], conn.comps[i])
        out.append(total)
    return out


def covariant_derivative(
    c: ClassCalculus, conn: Connection, alpha: OneForm
) -> TensorSquare:
    """nabla alpha = sum_a d(alpha_a) (x) e_a - alpha_a sum_b A_b (x) (e_{b^-1 a b} - e_a)."""
    n = c.n
    order = c.group.order
    coeffs = [GroupFunction.zero(order) for _ in range(n * n)]
    for a in range(n):
        fa = alpha.coeffs[a]
        da = d0(c, fa)
        for d in range(n):
            coeffs[d * n + a] = coeffs[d * n + a] + da.coeffs[d]
        if fa.is_zero():
            continue
        for b in range(n):
            target = c.ad_inv(b, a)
            for d in range(n):
                contrib = fa * conn.comps[b].coeffs[d]
                coeffs[d * n + target] = coeffs[d * n + target] - contrib
                coeffs[d * n + a] = coeffs[d * n + a] + contrib
    return TensorSquare(n, tuple(coeffs))


def riemann(c: ClassCalculus, conn: Connection) -> list[list[TwoForm]]:
    """riemann(e_a) = sum_d W_d (x) e_d; returns W[a][d] as two-forms."""
    curv = curvature_2forms(c, conn)
    total = zero_two_form(c)
    for f in curv:
        total = total + f
    out = []
    for a in range(c.n):
        row = [zero_two_form(c) for _ in range(c.n)]
        for b in range(c.n):
            row[c.ad_inv(b, a)] = row[c.ad_inv(b, a)] + curv[b]
        row[a] = row[a] - total
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# lifts and Ricci
# ---------------------------------------------------------------------------


def lift_i(c: ClassCalculus) -> ExactMatrix:
    """Canonical lift: complement of the relation kernel along its projector.

    Columns are images in the tensor square of the degree-two basis wedges;
    composing with the wedge quotient gives the identity.
    """
    basis = omega2_basis(c)
    n = c.n
    size = n * n
    if not basis.kernel:
        proj_complement = ExactMatrix.identity(size)
    else:
        bmat = ExactMatrix.from_rows([list(v) for v in basis.kernel]).transpose()
        gram = bmat.transpose() @ bmat
        gram_inv = linalg.invert(gram)
        proj = bmat @ gram_inv @ bmat.transpose()
        proj_complement = ExactMatrix.identity(size) - proj
    cols = []
    for a, b in basis.pairs:
        cols.append(proj_complement.column(a * n + b))
    return ExactMatrix.from_rows(cols).transpose()


def lift_iprime(c: ClassCalculus) -> ExactMatrix:
    """Simpler lift (id - braiding) on basis wedges; does not split the wedge."""
    n = c.n
    size = n * n
    basis = omega2_basis(c)
    psi = braiding(c).matrix()
    op = ExactMatrix.identity(size) - psi
    cols = []
    for a, b in basis.pairs:
        cols.append(op.column(a * n + b))
    return ExactMatrix.from_rows(cols).transpose()


def apply_lift(c: ClassCalculus, lift: ExactMatrix, w: TwoForm) -> TensorSquare:
    """Lift a two-form into the tensor square (left-linear over functions)."""
    n = c.n
    order = c.group.order
    coeffs = []
    for idx in range(n * n):
        total = GroupFunction.zero(order)
        for beta, f in enumerate(w.coeffs):
            s = lift.data[idx][beta]
            if s and not f.is_zero():
                total = total + f * s
        coeffs.append(total)
    return TensorSquare(n, tuple(coeffs))


def ricci(
    c: ClassCalculus, conn: Connection, lift: ExactMatrix | None = None
) -> TensorSquare:
    """Contract the first leg of the lifted curvature against the input.

    Ricci_{b,d} = sum_c (phi_c^{conj_c(d), b} - phi_c^{d, b}) where
    i(F_c) = sum phi_c^{ab} e_a (x) e_b.
    """
    if lift is None:
        lift = lift_i(c)
    n = c.n
    order = c.group.order
    curv = curvature_2forms(c, conn)
    phi = [apply_lift(c, lift, f) for f in curv]
    coeffs = [GroupFunction.zero(order) for _ in range(n * n)]
    for cc in range(n):
        for d in range(n):
            up = c.ad(cc, d)
            for b in range(n):
                contrib = phi[cc].entry(up, b) - phi[cc].entry(d, b)
                coeffs[b * n + d] = coeffs[b * n + d] + contrib
    return TensorSquare(n, tuple(coeffs))


def _tensorsquare_to_vector(t: TensorSquare) -> list[Cyclotomic]:
    out: list[Cyclotomic] = []
    for f in t.coeffs:
        out.extend(f.values)
    return out


class NonlinearCurvatureError(RuntimeError):
    """The quadratic curvature terms do not drop out on the torsion-free family."""


def _check_linear_curvature(c: ClassCalculus, family: AffineSpace) -> None:
    group = c.group
    class_set = set(c.elements)
    for i in range(c.n):
        for j in range(c.n):
            if group.mult(c.elements[i], c.elements[j]) in class_set:
                raise NonlinearCurvatureError(
                    "two class elements multiply back into the class"
                )
    n = c.n
    order = c.group.order
    vectors = [list(family.particular)] + [list(v) for v in family.basis]
    for vec in vectors:
        for g in range(order):
            for d in range(n):
                total = ZERO
                for b in range(n):
                    total = total + vec[vector_index(c, g, b, d)]
                if total:
                    raise NonlinearCurvatureError(
                        "component sum of a torsion-free solution is nonzero"
                    )


def solve_ricci_flat(
    c: ClassCalculus, lift: ExactMatrix | None = None
) -> AffineSpace | None:
    """Torsion-free connections with vanishing Ricci curvature.

    Requires the curvature to restrict linearly to the torsion-free family
    (checked); the quadratic terms vanish there because no two class
    elements multiply into the class and component sums vanish.
    """
    if lift is None:
        lift = lift_i(c)
    family = solve_torsion_free(c)
    if family is None:
        return None
    _check_linear_curvature(c, family)

    def evaluate(vec: list[Cyclotomic]) -> list[Cyclotomic]:
        conn = connection_from_vector(c, vec)
        return _tensorsquare_to_vector(ricci(c, conn, lift))

    return _solve_on_family(family, evaluate)


def levi_civita(c: ClassCalculus, metric: Metric | None = None) -> Connection:
    """The connection A_a = e_a - theta/n, verified torsion- and cotorsion-free."""
    n = c.n
    th = theta(c)
    scale = Cyclotomic(Fraction(1, n))
    comps = tuple(e_form(c, a) - th.scale(scale) for a in range(n))
    conn = Connection(comps)
    if metric is None:
        metric = metric_from_mu(c, 0)
    if not all(t.is_zero() for t in torsion(c, conn)):
        raise ValueError("candidate connection has torsion")
    if not all(t.is_zero() for t in cotorsion(c, conn, metric)):
        raise ValueError("candidate connection has cotorsion")
    return conn
