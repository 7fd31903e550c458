"""Dense exact linear algebra over Q(omega), plus a modular fast path.

Exact rank uses fraction-free (Bareiss) elimination after clearing row
denominators; nullspace/solve use a deterministic Gauss-Jordan RREF with
lexicographic pivot ordering so solution bases are byte-stable.  Large
integer matrices (antisymmetrizers at degrees 5-6) go through rank mod p
for two deterministically chosen primes > 2**30 congruent to 1 mod 3;
agreement of the two ranks is the certification contract.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import sympy

from .cyclotomic import ONE, ZERO, Cyclotomic

Scalar = Union[Cyclotomic, int, Fraction]


class CertificationError(RuntimeError):
    """Two modular ranks disagreed; the certified value does not exist."""


def _as_cyc(value: Scalar) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic(value)


class ExactMatrix:
    """A dense rows x cols matrix of Cyclotomic entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[Cyclotomic]]):
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        data = [[_as_cyc(v) for v in row] for row in rows]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, data)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Cyclotomic:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> list[Cyclotomic]:
        return list(self.data[i])

    def column(self, j: int) -> list[Cyclotomic]:
        return [self.data[i][j] for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        data = [[self.data[i][j] for j in col_idx] for i in row_idx]
        return ExactMatrix(len(row_idx), len(col_idx), data)

    # -- algebra -----------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix(self.cols, self.rows, data)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [[-v for v in row] for row in self.data])

    def scale(self, s: Scalar) -> "ExactMatrix":
        s = _as_cyc(s)
        return ExactMatrix(self.rows, self.cols, [[s * v for v in row] for row in self.data])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose().data
        out = []
        for row in self.data:
            out_row = []
            for col in ot:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(self.rows, other.cols, out)

    def matvec(self, vec: Sequence[Scalar]) -> list[Cyclotomic]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        v = [_as_cyc(x) for x in vec]
        out = []
        for row in self.data:
            acc = ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"

    def _check_shape(self, other: "ExactMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- predicates / conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    def is_integer(self) -> bool:
        return all(v.is_integer() for row in self.data for v in row)

    def to_int_array(self) -> np.ndarray:
        """Integer numpy copy; raises on non-integer entries."""
        out = np.empty((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.data):
            for j, v in enumerate(row):
                if not v.is_integer():
                    raise ValueError(f"non-integer entry at ({i}, {j}): {v}")
                out[i, j] = int(v.re)
        return out.astype(np.int64)


@dataclass(frozen=True)
class AffineSpace:
    """A solution set: particular point plus a basis of homogeneous directions."""

    particular: tuple[Cyclotomic, ...]
    basis: tuple[tuple[Cyclotomic, ...], ...] = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def point(self, coeffs: Sequence[Scalar]) -> list[Cyclotomic]:
        """particular + sum_i coeffs[i] * basis[i]."""
        if len(coeffs) != len(self.basis):
            raise ValueError("coefficient count mismatch")
        out = list(self.particular)
        for c, vec in zip(coeffs, self.basis):
            c = _as_cyc(c)
            if not c:
                continue
            out = [o + c * v for o, v in zip(out, vec)]
        return out

    def contains(self, point: Sequence[Scalar]) -> bool:
        """Exact membership test: point - particular in span(basis)?"""
        diff = [_as_cyc(p) - q for p, q in zip(point, self.particular)]
        if len(diff) != len(self.particular):
            raise ValueError("point length mismatch")
        if not self.basis:
            return all(not v for v in diff)
        cols = ExactMatrix.from_rows([list(vec) for vec in self.basis]).transpose()
        return solve_affine(cols, diff) is not None


# ---------------------------------------------------------------------------
# exact rank (fraction-free)
# ---------------------------------------------------------------------------


def _clear_row_denominators(row: Sequence[Cyclotomic]) -> list[Cyclotomic]:
    lcm = 1
    for v in row:
        for part in (v.re, v.om):
            d = part.denominator
            if d != 1:
                lcm = lcm // math.gcd(lcm, d) * d
    if lcm == 1:
        return list(row)
    s = Cyclotomic(lcm)
    return [s * v for v in row]


def rank(m: ExactMatrix) -> int:
    """Rank over Q(omega) by Bareiss fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_integer():
        return _rank_bareiss_int([[int(v.re) for v in row] for row in m.data], m.cols)
    rows = [_clear_row_denominators(row) for row in m.data]
    return _rank_bareiss_cyc(rows, m.cols)


def _rank_bareiss_int(rows: list[list[int]], ncols: int) -> int:
    nrows = len(rows)
    prev = 1
    pr = 0
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
        p = rows[pr][col]
        for r in range(pr + 1, nrows):
            row_r = rows[r]
            v = row_r[col]
            row_p = rows[pr]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - v * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        pr += 1
        if pr == nrows:
            break
    return pr


def _rank_bareiss_cyc(rows: list[list[Cyclotomic]], ncols: int) -> int:
    nrows = len(rows)
    prev = ONE
    pr = 0
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
        p = rows[pr][col]
        for r in range(pr + 1, nrows):
            row_r = rows[r]
            v = row_r[col]
            row_p = rows[pr]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - v * row_p[c]) / prev
            row_r[col] = ZERO
        prev = p
        pr += 1
        if pr == nrows:
            break
    return pr


# ---------------------------------------------------------------------------
# RREF, nullspace, affine solve
# ---------------------------------------------------------------------------


def _rref_in_place(rows: list[list[Cyclotomic]], ncols: int) -> list[int]:
    """Reduced row echelon form; returns pivot column indices (ascending)."""
    nrows = len(rows)
    pivots: list[int] = []
    pr = 0
    for col in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = rows[pr][col].inverse()
        rows[pr] = [inv * v for v in rows[pr]]
        for r in range(nrows):
            if r == pr:
                continue
            f = rows[r][col]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return pivots


def nullspace(m: ExactMatrix) -> list[list[Cyclotomic]]:
    """Deterministic echelonized basis of the right kernel of m."""
    rows = [list(r) for r in m.data]
    pivots = _rref_in_place(rows, m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for i, p in enumerate(pivots):
            v = rows[i][f]
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve_affine(a: ExactMatrix, b: Sequence[Scalar]) -> Optional[AffineSpace]:
    """Full solution set of a @ x = b, or None when inconsistent."""
    if len(b) != a.rows:
        raise ValueError("rhs length mismatch")
    rows = [list(r) + [_as_cyc(v)] for r, v in zip(a.data, b)]
    if a.rows == 0:
        rows = []
    pivots = _rref_in_place(rows, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    particular = [ZERO] * a.cols
    for i, p in enumerate(pivots):
        particular[p] = rows[i][a.cols]
    pivot_set = set(pivots)
    free_cols = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        vec = [ZERO] * a.cols
        vec[f] = ONE
        for i, p in enumerate(pivots):
            v = rows[i][f]
            if v:
                vec[p] = -v
        basis.append(tuple(vec))
    return AffineSpace(tuple(particular), tuple(basis))


def invert(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.data)]
    pivots = _rref_in_place(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return ExactMatrix(n, n, [row[n:] for row in rows])


# ---------------------------------------------------------------------------
# modular rank path
# ---------------------------------------------------------------------------


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer matrix mod p (int64 elimination, p < 2**31)."""
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    pr = 0
    for col in range(ncols):
        if pr >= nrows:
            break
        nz = np.nonzero(m[pr:, col])[0]
        if nz.size == 0:
            continue
        piv = pr + int(nz[0])
        if piv != pr:
            m[[pr, piv]] = m[[piv, pr]]
        inv = pow(int(m[pr, col]), p - 2, p)
        m[pr, col:] = (m[pr, col:] * inv) % p
        factors = m[pr + 1 :, col]
        nzr = np.nonzero(factors)[0]
        if nzr.size:
            sel = pr + 1 + nzr
            m[sel, col:] = (m[sel, col:] - factors[nzr, None] * m[pr, col:]) % p
        pr += 1
    return pr


def _omega_residue(p: int) -> int:
    """Smallest nontrivial cube root of unity mod p (requires p = 1 mod 3)."""
    if p % 3 != 1:
        raise ValueError(f"prime {p} is not 1 mod 3; omega has no image")
    e = (p - 1) // 3
    for g in range(2, p):
        r = pow(g, e, p)
        if r != 1:
            return r
    raise ValueError("no cube root found")  # pragma: no cover


def modular_rank(m: ExactMatrix, p: int) -> int:
    """Rank of an integer (or Z[omega]) matrix mod p; lower bound on rank."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    needs_omega = False
    for row in m.data:
        for v in row:
            if v.re.denominator != 1 or v.om.denominator != 1:
                raise ValueError(f"non-integer entry {v}")
            if v.om:
                needs_omega = True
    if needs_omega:
        r = _omega_residue(p)
        arr = np.array(
            [[(int(v.re) + int(v.om) * r) % p for v in row] for row in m.data],
            dtype=np.int64,
        )
    else:
        arr = np.array([[int(v.re) % p for v in row] for row in m.data], dtype=np.int64)
    if arr.size == 0:
        return 0
    return rank_mod_p(arr, p)


def deterministic_primes(digest: bytes, count: int = 2) -> tuple[int, ...]:
    """Distinct primes = 1 mod 3 in (2**30, 2**31), fixed by the digest."""
    rng = random.Random(int.from_bytes(digest, "big"))
    found: list[int] = []
    while len(found) < count:
        cand = rng.randrange(2**30 + 2, 2**31)
        cand -= (cand - 1) % 3
        if cand <= 2**30 or cand in found:
            continue
        if sympy.isprime(cand):
            found.append(cand)
    return tuple(found)


def content_digest(*parts: bytes) -> bytes:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.digest()


def certified_rank_blocks(
    blocks: Iterable[np.ndarray], digest: bytes
) -> tuple[int, tuple[int, int]]:
    """Sum of block ranks mod two deterministic primes; ranks must agree.

    The blocks must be a block-diagonal decomposition (after row/column
    permutation) of the matrix whose rank is certified.
    """
    p1, p2 = deterministic_primes(digest)
    blocks = list(blocks)
    r1 = sum(rank_mod_p(b, p1) for b in blocks)
    r2 = sum(rank_mod_p(b, p2) for b in blocks)
    if r1 != r2:
        raise CertificationError(f"modular ranks disagree: {r1} (mod {p1}) vs {r2} (mod {p2})")
    return r1, (p1, p2)
