"""First-order differential calculus on a finite group from a conjugacy class.

Functions on G form the base algebra; the one-form module has a left basis
{e_a} indexed by the class, with the bimodule rule e_a f = R_a(f) e_a and
the differential d f = sum_a (R_a - id)(f) e_a.  Degree-two and higher
relations come from the braiding e_a (x) e_b -> e_{aba^-1} (x) e_a via
braided integers and factorials; exterior dimensions are the ranks of the
braided factorials, computed exactly in small degree and certified modulo
two large primes in degrees where the matrices reach 4096 x 4096 (block
decomposition by word product keeps that cheap).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
import scipy.sparse as sp

from .cyclotomic import ONE, ZERO, Cyclotomic
from .groups import ClassCalculus, FiniteGroup, GroupSpecError
from . import linalg
from .linalg import ExactMatrix

Scalar = Union[Cyclotomic, int, Fraction]

#: Largest degree the antisymmetrizer builders accept by default.
DEFAULT_DEGREE_CAP = 6

#: Exact elimination is used when the tensor space is at most this large.
EXACT_SIZE_LIMIT = 1024

#: Default policy: exact below, modular above.
AUTO_EXACT_LIMIT = 256

QUADRATIC_SIZE_LIMIT = 4096


class ScaleCapError(RuntimeError):
    """Refusal to build matrices beyond the supported scale."""

    def __init__(self, message: str, diagnostic: dict | None = None):
        super().__init__(message)
        self.diagnostic = {"error": message, **(diagnostic or {})}


def _as_cyc(value: Scalar) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic(value)


# ---------------------------------------------------------------------------
# functions on the group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFunction:
    """An element of the function algebra, as values on group elements."""

    values: tuple[Cyclotomic, ...]

    @classmethod
    def from_values(cls, values: Sequence[Scalar]) -> "GroupFunction":
        return cls(tuple(_as_cyc(v) for v in values))

    @classmethod
    def constant(cls, order: int, value: Scalar = 1) -> "GroupFunction":
        return cls((_as_cyc(value),) * order)

    @classmethod
    def delta(cls, order: int, g: int) -> "GroupFunction":
        return cls(tuple(ONE if i == g else ZERO for i in range(order)))

    @classmethod
    def zero(cls, order: int) -> "GroupFunction":
        return cls((ZERO,) * order)

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def is_constant(self) -> bool:
        return all(v == self.values[0] for v in self.values)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        return GroupFunction(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        return GroupFunction(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "GroupFunction":
        return GroupFunction(tuple(-a for a in self.values))

    def __mul__(self, other: Union["GroupFunction", Scalar]) -> "GroupFunction":
        if isinstance(other, GroupFunction):
            return GroupFunction(
                tuple(a * b for a, b in zip(self.values, other.values))
            )
        s = _as_cyc(other)
        return GroupFunction(tuple(a * s for a in self.values))

    def __rmul__(self, other: Scalar) -> "GroupFunction":
        return self.__mul__(other)

    def pointwise_inverse(self) -> "GroupFunction":
        if any(not v for v in self.values):
            raise ZeroDivisionError("function vanishes somewhere; not a unit")
        return GroupFunction(tuple(v.inverse() for v in self.values))


def translate_by_element(group: FiniteGroup, g: int, f: GroupFunction) -> GroupFunction:
    """(R_g f)(h) = f(h g)."""
    return GroupFunction(tuple(f.values[group.mult(h, g)] for h in range(group.order)))


def right_translate(c: ClassCalculus, pos: int, f: GroupFunction) -> GroupFunction:
    """(R_a f)(h) = f(h a) for the class element at the given position."""
    perm = c.right_perm[pos]
    return GroupFunction(tuple(f.values[perm[h]] for h in range(c.group.order)))


def partial(c: ClassCalculus, a: Union[int, str], f: GroupFunction) -> GroupFunction:
    """The difference operator R_a - id attached to a class element."""
    pos = c.position(a) if isinstance(a, str) else a
    return right_translate(c, pos, f) - f


# ---------------------------------------------------------------------------
# one-forms and two-forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OneForm:
    """sum_a f_a e_a with the coefficient functions kept on the left."""

    coeffs: tuple[GroupFunction, ...]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coeffs)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "OneForm":
        return OneForm(tuple(-a for a in self.coeffs))

    def scale(self, s: Scalar) -> "OneForm":
        s = _as_cyc(s)
        return OneForm(tuple(f * s for f in self.coeffs))

    def left_mul(self, f: GroupFunction) -> "OneForm":
        return OneForm(tuple(f * g for g in self.coeffs))


@dataclass(frozen=True)
class TwoForm:
    """Coefficients over the fixed degree-two basis of the class calculus."""

    coeffs: tuple[GroupFunction, ...]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coeffs)

    def __add__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TwoForm":
        return TwoForm(tuple(-a for a in self.coeffs))

    def scale(self, s: Scalar) -> "TwoForm":
        s = _as_cyc(s)
        return TwoForm(tuple(f * s for f in self.coeffs))

    def left_mul(self, f: GroupFunction) -> "TwoForm":
        return TwoForm(tuple(f * g for g in self.coeffs))


def zero_one_form(c: ClassCalculus) -> OneForm:
    return OneForm(tuple(GroupFunction.zero(c.group.order) for _ in range(c.n)))


def e_form(c: ClassCalculus, a: Union[int, str]) -> OneForm:
    """The basis one-form attached to a class element."""
    pos = c.position(a) if isinstance(a, str) else a
    order = c.group.order
    return OneForm(
        tuple(
            GroupFunction.constant(order) if i == pos else GroupFunction.zero(order)
            for i in range(c.n)
        )
    )


def theta(c: ClassCalculus) -> OneForm:
    """The sum of all basis one-forms; generates d by graded commutator."""
    order = c.group.order
    return OneForm(tuple(GroupFunction.constant(order) for _ in range(c.n)))


def one_form_right_mul(c: ClassCalculus, w: OneForm, f: GroupFunction) -> OneForm:
    """w * f, moved into left presentation via e_a f = R_a(f) e_a."""
    return OneForm(
        tuple(g * right_translate(c, i, f) for i, g in enumerate(w.coeffs))
    )


def right_to_left(c: ClassCalculus, right_coeffs: Sequence[GroupFunction]) -> OneForm:
    """Rewrite sum_b e_b h_b as sum_b R_b(h_b) e_b."""
    return OneForm(
        tuple(right_translate(c, i, h) for i, h in enumerate(right_coeffs))
    )


# ---------------------------------------------------------------------------
# braiding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidData:
    """The braiding as a permutation of the n^2 tensor-basis pairs."""

    calculus: ClassCalculus
    perm: tuple[int, ...]  # column (a,b) maps to row perm[(a,b)]

    @property
    def n(self) -> int:
        return self.calculus.n

    def matrix(self) -> ExactMatrix:
        size = len(self.perm)
        m = ExactMatrix.zeros(size, size)
        for col, row in enumerate(self.perm):
            m.data[row][col] = ONE
        return m

    def order(self) -> int:
        k = 1
        cur = list(self.perm)
        ident = list(range(len(self.perm)))
        while cur != ident:
            cur = [self.perm[i] for i in cur]
            k += 1
        return k


@lru_cache(maxsize=None)
def braiding(c: ClassCalculus) -> BraidData:
    """e_a (x) e_b -> e_{a b a^-1} (x) e_a, as a basis permutation."""
    n = c.n
    perm = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            perm[a * n + b] = c.ad(a, b) * n + a
    return BraidData(calculus=c, perm=tuple(perm))


@lru_cache(maxsize=None)
def degree2_relations(c: ClassCalculus) -> tuple[tuple[Cyclotomic, ...], ...]:
    """Echelonized basis of ker(id - braiding): the degree-two relations."""
    b = braiding(c)
    m = ExactMatrix.identity(c.n * c.n) - b.matrix()
    return tuple(tuple(v) for v in linalg.nullspace(m))


# ---------------------------------------------------------------------------
# the degree-two basis and reduction map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Omega2Basis:
    """A chosen complement of the relation space inside the tensor square."""

    pairs: tuple[tuple[int, int], ...]  # class-position pairs (a, b)
    reduction: ExactMatrix  # dim x n^2, tensor coords -> basis coords
    kernel: tuple[tuple[Cyclotomic, ...], ...]
    prod_elem: tuple[int, ...]  # group element a*b per basis pair

    @property
    def dim(self) -> int:
        return len(self.pairs)


def tableiii_assignment(c: ClassCalculus) -> tuple[int, int, int, int] | None:
    """Class positions (t, x, y, z) realizing the third product table."""
    from .groups import _is_witness, _match_tables, TABLE_III

    if c.n != 4:
        return None
    for t_pos in range(4):
        if not _is_witness(c.group, list(c.elements), c.elements[t_pos]):
            continue
        for x_pos in (p for p in range(4) if p != t_pos):
            z_pos = c.ad(t_pos, x_pos)
            y_pos = c.ad(t_pos, z_pos)
            if len({t_pos, x_pos, y_pos, z_pos}) != 4:
                continue
            if _match_tables(c, t_pos, x_pos, y_pos, z_pos) == TABLE_III:
                return (t_pos, x_pos, y_pos, z_pos)
    return None


@lru_cache(maxsize=None)
def omega2_basis(c: ClassCalculus) -> Omega2Basis:
    """Fixed basis of the degree-two component.

    For a four-element class with the third product table the basis is the
    standard eight wedges (t,x),(t,y),(t,z),(x,t),(y,t),(x,y),(y,z),(x,z);
    otherwise the complement of the relation kernel with lexicographic
    pivots.
    """
    n = c.n
    size = n * n
    kernel = degree2_relations(c)
    pairs: list[tuple[int, int]] | None = None
    assign = tableiii_assignment(c)
    if assign is not None:
        t, x, y, z = assign
        pairs = [(t, x), (t, y), (t, z), (x, t), (y, t), (x, y), (y, z), (x, z)]
        if len(pairs) + len(kernel) != size:
            pairs = None
    if pairs is None:
        rows = [list(v) for v in kernel]
        pivots = linalg._rref_in_place(rows, size) if rows else []
        pivot_set = set(pivots)
        pairs = [(q // n, q % n) for q in range(size) if q not in pivot_set]
    # reduction = first len(pairs) rows of [basis | kernel]^-1
    cols: list[list[Cyclotomic]] = []
    for a, b in pairs:
        col = [ZERO] * size
        col[a * n + b] = ONE
        cols.append(col)
    cols.extend([list(v) for v in kernel])
    full = ExactMatrix.from_rows(cols).transpose()
    inv = linalg.invert(full)
    reduction = ExactMatrix(len(pairs), size, [inv.data[i] for i in range(len(pairs))])
    prod_elem = tuple(
        c.group.mult(c.elements[a], c.elements[b]) for a, b in pairs
    )
    return Omega2Basis(
        pairs=tuple(pairs),
        reduction=reduction,
        kernel=kernel,
        prod_elem=prod_elem,
    )


def basis_pair_labels(c: ClassCalculus) -> list[str]:
    basis = omega2_basis(c)
    labels = c.labels
    return [f"e_{labels[a]}^e_{labels[b]}" for a, b in basis.pairs]


def zero_two_form(c: ClassCalculus) -> TwoForm:
    dim = omega2_basis(c).dim
    return TwoForm(tuple(GroupFunction.zero(c.group.order) for _ in range(dim)))


def reduce_tensor_pair(c: ClassCalculus, a: int, b: int) -> list[Cyclotomic]:
    """Coordinates of e_a (x) e_b over the degree-two basis."""
    basis = omega2_basis(c)
    col = a * c.n + b
    return [basis.reduction.data[i][col] for i in range(basis.dim)]


def wedge(c: ClassCalculus, u: OneForm, v: OneForm) -> TwoForm:
    """(f e_a) ^ (h e_b) = f R_a(h) [e_a e_b], reduced to the fixed basis."""
    basis = omega2_basis(c)
    order = c.group.order
    out = [GroupFunction.zero(order) for _ in range(basis.dim)]
    for i, f in enumerate(u.coeffs):
        if f.is_zero():
            continue
        for j, h in enumerate(v.coeffs):
            if h.is_zero():
                continue
            prod = f * right_translate(c, i, h)
            col = i * c.n + j
            for beta in range(basis.dim):
                r = basis.reduction.data[beta][col]
                if r:
                    out[beta] = out[beta] + prod * r
    return TwoForm(tuple(out))


def two_form_right_mul(c: ClassCalculus, w: TwoForm, f: GroupFunction) -> TwoForm:
    """w * f: the function moves left through both legs of each basis wedge."""
    basis = omega2_basis(c)
    return TwoForm(
        tuple(
            g * translate_by_element(c.group, basis.prod_elem[beta], f)
            for beta, g in enumerate(w.coeffs)
        )
    )


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def d0(c: ClassCalculus, f: GroupFunction) -> OneForm:
    """d f = sum_a (R_a - id)(f) e_a."""
    return OneForm(tuple(partial(c, a, f) for a in range(c.n)))


@lru_cache(maxsize=None)
def de_basis(c: ClassCalculus) -> tuple[TwoForm, ...]:
    """d e_a = theta ^ e_a + e_a ^ theta for each class position."""
    th = theta(c)
    out = []
    for a in range(c.n):
        ea = e_form(c, a)
        out.append(wedge(c, th, ea) + wedge(c, ea, th))
    return tuple(out)


def d1(c: ClassCalculus, w: OneForm) -> TwoForm:
    """d(f e_a) = (d f) ^ e_a + f d e_a, extended additively."""
    des = de_basis(c)
    out = zero_two_form(c)
    for a, f in enumerate(w.coeffs):
        if f.is_zero():
            continue
        out = out + wedge(c, d0(c, f), e_form(c, a)) + des[a].left_mul(f)
    return out


# ---------------------------------------------------------------------------
# braided integers, braided factorials
# ---------------------------------------------------------------------------


def _check_cap(b: BraidData, m: int, cap: int) -> None:
    if m > cap:
        raise ScaleCapError(
            f"degree {m} exceeds the configured cap {cap}",
            {
                "degree": m,
                "cap": cap,
                "matrix_side": b.n**m,
                "hint": "raise the cap explicitly to attempt larger degrees",
            },
        )


@lru_cache(maxsize=None)
def _psi_sparse(b: BraidData) -> sp.csr_matrix:
    size = len(b.perm)
    rows = np.fromiter(b.perm, dtype=np.int64)
    cols = np.arange(size, dtype=np.int64)
    data = np.ones(size, dtype=np.int64)
    return sp.csr_matrix((data, (rows, cols)), shape=(size, size))


@lru_cache(maxsize=None)
def _bracket_sparse(b: BraidData, m: int) -> sp.csr_matrix:
    """[m, -psi] = id - psi_12 (id (x) [m-1, -psi])."""
    n = b.n
    if m == 1:
        return sp.identity(n, dtype=np.int64, format="csr")
    sub = _bracket_sparse(b, m - 1)
    psi12 = sp.kron(_psi_sparse(b), sp.identity(n ** (m - 2), dtype=np.int64), format="csr")
    shifted = sp.kron(sp.identity(n, dtype=np.int64), sub, format="csr")
    out = sp.identity(n**m, dtype=np.int64, format="csr") - psi12 @ shifted
    out.eliminate_zeros()
    return out


@lru_cache(maxsize=None)
def _factorial_sparse(b: BraidData, m: int) -> sp.csr_matrix:
    """A_m = (id (x) A_{m-1}) [m, -psi]."""
    n = b.n
    if m == 1:
        return sp.identity(n, dtype=np.int64, format="csr")
    prev = _factorial_sparse(b, m - 1)
    out = sp.kron(sp.identity(n, dtype=np.int64), prev, format="csr") @ _bracket_sparse(b, m)
    out.eliminate_zeros()
    return out


def _sparse_to_exact(m: sp.spmatrix) -> ExactMatrix:
    coo = m.tocoo()
    rows, cols = m.shape
    data = [[ZERO] * cols for _ in range(rows)]
    for r, col, v in zip(coo.row, coo.col, coo.data):
        data[r][col] = Cyclotomic.from_int(int(v))
    return ExactMatrix(rows, cols, data)


def braided_integer(b: BraidData, m: int, cap: int = DEFAULT_DEGREE_CAP) -> ExactMatrix:
    """The alternating sum id - psi_12 + psi_12 psi_23 - ... in degree m."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    _check_cap(b, m, cap)
    return _sparse_to_exact(_bracket_sparse(b, m))


def braided_factorial(b: BraidData, m: int, cap: int = DEFAULT_DEGREE_CAP) -> ExactMatrix:
    """The degree-m antisymmetrizer (product of braided integers)."""
    if m < 2:
        raise ValueError("degree must be >= 2")
    _check_cap(b, m, cap)
    return _sparse_to_exact(_factorial_sparse(b, m))


# ---------------------------------------------------------------------------
# gradings, blocks, and dimensions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _word_grading(c: ClassCalculus, m: int) -> tuple[int, ...]:
    """Group element of the product a_{i_1} ... a_{i_m} for every length-m word."""
    n = c.n
    group = c.group
    if m == 0:
        return (group.identity,)
    prev = _word_grading(c, m - 1)
    out = []
    for p in prev:
        for a in range(n):
            out.append(group.mult(p, c.elements[a]))
    return tuple(out)


def _grading_blocks(c: ClassCalculus, m: int) -> list[np.ndarray]:
    grading = np.fromiter(_word_grading(c, m), dtype=np.int64)
    return [np.nonzero(grading == g)[0] for g in sorted(set(grading.tolist()))]


def _block_slices(mat: sp.csr_matrix, blocks: list[np.ndarray]) -> list[np.ndarray]:
    """Dense per-block submatrices; verifies the matrix respects the blocks."""
    coo = mat.tocoo()
    blocked_nnz = 0
    out = []
    for idx in blocks:
        sub = mat[idx][:, idx].toarray()
        blocked_nnz += np.count_nonzero(sub)
        out.append(sub)
    if blocked_nnz != coo.nnz:
        raise linalg.CertificationError(
            "matrix does not respect the word-product block structure"
        )
    return out


def _sparse_digest(mat: sp.csr_matrix, extra: bytes) -> bytes:
    coo = mat.tocoo()
    order = np.lexsort((coo.col, coo.row))
    return linalg.content_digest(
        np.asarray(mat.shape, dtype=np.int64).tobytes(),
        coo.row[order].astype(np.int64).tobytes(),
        coo.col[order].astype(np.int64).tobytes(),
        coo.data[order].astype(np.int64).tobytes(),
        extra,
    )


def _exact_block_rank(blocks: list[np.ndarray]) -> int:
    total = 0
    for blk in blocks:
        rows = [[int(v) for v in row] for row in blk]
        total += linalg._rank_bareiss_int(rows, blk.shape[1])
    return total


def exterior_dimension(
    c: ClassCalculus,
    m: int,
    method: str = "auto",
    cap: int = DEFAULT_DEGREE_CAP,
) -> int:
    """Dimension of the degree-m exterior component (rank of A_m)."""
    dim, _ = exterior_dimension_info(c, m, method=method, cap=cap)
    return dim


def exterior_dimension_info(
    c: ClassCalculus,
    m: int,
    method: str = "auto",
    cap: int = DEFAULT_DEGREE_CAP,
) -> tuple[int, dict]:
    """Dimension plus a record of how it was computed (method, primes)."""
    if m < 0:
        raise ValueError("degree must be >= 0")
    if m == 0:
        return 1, {"method": "exact"}
    if m == 1:
        return c.n, {"method": "exact"}
    size = c.n**m
    if method == "auto":
        method = "exact" if size <= AUTO_EXACT_LIMIT else "modular"
    if method not in ("exact", "modular"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact" and size > EXACT_SIZE_LIMIT:
        raise ScaleCapError(
            f"exact elimination refused beyond {EXACT_SIZE_LIMIT} columns",
            {"degree": m, "matrix_side": size, "allowed": EXACT_SIZE_LIMIT},
        )
    b = braiding(c)
    _check_cap(b, m, cap)
    mat = _factorial_sparse(b, m)
    blocks = _block_slices(mat, _grading_blocks(c, m))
    if method == "exact":
        return _exact_block_rank(blocks), {"method": "exact"}
    digest = _sparse_digest(mat, b"exterior")
    rank_certified, primes = linalg.certified_rank_blocks(blocks, digest)
    return rank_certified, {"method": "modular-certified", "primes": list(primes)}


def quadratic_dimension(c: ClassCalculus, m: int) -> int:
    """Degree-m dimension when only the degree-two relations are imposed."""
    if m < 2:
        raise ValueError("degree must be >= 2")
    size = c.n**m
    if size > QUADRATIC_SIZE_LIMIT:
        raise ScaleCapError(
            f"quadratic dimension refused beyond {QUADRATIC_SIZE_LIMIT} columns",
            {"degree": m, "matrix_side": size, "allowed": QUADRATIC_SIZE_LIMIT},
        )
    n = c.n
    kernel = degree2_relations(c)
    # integer-scaled kernel rows with their two-letter product grading
    kernel_rows: list[tuple[list[tuple[int, int]], int]] = []
    grading2 = _word_grading(c, 2)
    for vec in kernel:
        scaled = linalg._clear_row_denominators(list(vec))
        if any(v.om for v in scaled):
            raise linalg.CertificationError("relation vector is not rational")
        support = [(q, int(v.re)) for q, v in enumerate(scaled) if v]
        grades = {grading2[q] for q, _ in support}
        if len(grades) != 1:
            raise linalg.CertificationError(
                "relation vector mixes word-product blocks"
            )
        kernel_rows.append((support, grades.pop()))
    grading_m = _word_grading(c, m)
    block_cols: dict[int, dict[int, int]] = {}
    for idx, g in enumerate(grading_m):
        cols = block_cols.setdefault(g, {})
        cols[idx] = len(cols)
    rows_per_block: dict[int, list[dict[int, int]]] = {g: [] for g in block_cols}
    for i in range(m - 1):
        left_grading = _word_grading(c, i)
        right_grading = _word_grading(c, m - 2 - i)
        right = len(right_grading)
        for support, kgrade in kernel_rows:
            for u, gu in enumerate(left_grading):
                for v, gv in enumerate(right_grading):
                    g = c.group.mult(c.group.mult(gu, kgrade), gv)
                    row = {}
                    for q, val in support:
                        idx = (u * n * n + q) * right + v
                        row[block_cols[g][idx]] = val
                    rows_per_block[g].append(row)
    total_rank = 0
    exact = size <= AUTO_EXACT_LIMIT
    all_blocks = []
    for g in sorted(rows_per_block):
        ncols = len(block_cols[g])
        rows = rows_per_block[g]
        dense = np.zeros((len(rows), ncols), dtype=np.int64)
        for r, row in enumerate(rows):
            for ci, val in row.items():
                dense[r, ci] = val
        all_blocks.append(dense)
    if exact:
        total_rank = _exact_block_rank(all_blocks)
    else:
        digest = linalg.content_digest(
            b"quadratic",
            repr((c.labels, m)).encode(),
            *(blk.tobytes() for blk in all_blocks),
        )
        total_rank, _ = linalg.certified_rank_blocks(all_blocks, digest)
    return size - total_rank


def exterior_profile(
    c: ClassCalculus, max_degree: int, cap: int = DEFAULT_DEGREE_CAP
) -> list[dict]:
    """Dimension-and-method records for degrees 0..max_degree."""
    out = []
    for m in range(max_degree + 1):
        dim, info = exterior_dimension_info(c, m, cap=cap)
        out.append({"degree": m, "dim": dim, **info})
    return out
