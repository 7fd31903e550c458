"""Finite groups as validated Cayley tables, plus conjugacy-class machinery.

A group is a table of index products with the identity at index 0; builtins
cover the alternating group on four letters (in the element order used by
the rest of the engine), symmetric groups on 3 and 4 letters, SL(2, Z/3),
the Klein four-group, and cyclic groups.  A ClassCalculus packages one
conjugacy class together with its adjoint action and right translations;
it is the geometric site every other module works over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence, Union


class GroupSpecError(ValueError):
    """Raised for malformed group descriptions; carries a JSON diagnostic."""

    def __init__(self, message: str, diagnostic: dict | None = None):
        super().__init__(message)
        self.diagnostic = {"error": message, **(diagnostic or {})}


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group: element names and the index multiplication table."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.names)

    def mult(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def conjugate(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def power(self, g: int, k: int) -> int:
        out = self.identity
        if k < 0:
            g, k = self.inverse[g], -k
        for _ in range(k):
            out = self.table[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, acc = 1, g
        while acc != self.identity:
            acc = self.table[acc][g]
            k += 1
        return k

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GroupSpecError(
                f"unknown element label {name!r}", {"known": list(self.names)}
            ) from None


def _validate(names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    n = len(names)
    if len(set(names)) != n:
        raise GroupSpecError("duplicate element names", {"names": list(names)})
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupSpecError("table is not |G| x |G|", {"order": n})
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise GroupSpecError(
                    "table entry out of range",
                    {"row": names[i], "col": names[j], "value": v},
                )
    for i, row in enumerate(table):
        if len(set(row)) != n:
            raise GroupSpecError("row is not a permutation", {"row": names[i]})
    for j in range(n):
        if len({table[i][j] for i in range(n)}) != n:
            raise GroupSpecError("column is not a permutation", {"col": names[j]})
    for j in range(n):
        if table[0][j] != j or table[j][0] != j:
            raise GroupSpecError(
                "index 0 is not a two-sided identity", {"element": names[j]}
            )
    for i in range(n):
        for j in range(n):
            ij = table[i][j]
            for k in range(n):
                if table[ij][k] != table[i][table[j][k]]:
                    raise GroupSpecError(
                        "associativity fails",
                        {"triple": [names[i], names[j], names[k]]},
                    )
    inverse = [0] * n
    for i in range(n):
        inv = next((j for j in range(n) if table[i][j] == 0), None)
        if inv is None or table[inv][i] != 0:
            raise GroupSpecError("missing inverse", {"element": names[i]})
        inverse[i] = inv
    return FiniteGroup(
        names=tuple(names),
        table=tuple(tuple(row) for row in table),
        identity=0,
        inverse=tuple(inverse),
    )


# ---------------------------------------------------------------------------
# builtins
# ---------------------------------------------------------------------------


def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """(f g)(i) = f(g(i))."""
    return tuple(f[x] for x in g)


def _perm_group(perms: Sequence[tuple[int, ...]], names: Sequence[str]) -> FiniteGroup:
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[_compose(a, b)] for b in perms] for a in perms]
    return _validate(names, table)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen: set[int] = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append(cyc)
    if not cycles:
        return "e"
    return "".join("(" + "".join(str(p + 1) for p in cyc) + ")" for cyc in cycles)


def _builtin_a4() -> FiniteGroup:
    e = (0, 1, 2, 3)
    u = (3, 2, 1, 0)  # (14)(23)
    v = (1, 0, 3, 2)  # (12)(34)
    w = (2, 3, 0, 1)  # (13)(24)
    t = (1, 2, 0, 3)  # (123)
    x = _compose(u, t)
    y = _compose(v, t)
    z = _compose(w, t)
    t2 = _compose(t, t)
    elems = [e, u, v, w, t, x, y, z, t2, _compose(u, t2), _compose(v, t2), _compose(w, t2)]
    names = ["e", "u", "v", "w", "t", "x", "y", "z", "t2", "ut2", "vt2", "wt2"]
    return _perm_group(elems, names)


def _builtin_s3() -> FiniteGroup:
    elems = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return _perm_group(elems, names)


def _builtin_s4() -> FiniteGroup:
    elems = sorted(itertools.permutations(range(4)))
    names = [_cycle_name(p) for p in elems]
    return _perm_group(elems, names)


def _builtin_sl2z3() -> FiniteGroup:
    mats = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    mats = [ident] + sorted(mats)
    idx = {m: i for i, m in enumerate(mats)}

    def mul(m1, m2):
        a, b, c, d = m1
        e_, f, g, h = m2
        return (
            (a * e_ + b * g) % 3,
            (a * f + b * h) % 3,
            (c * e_ + d * g) % 3,
            (c * f + d * h) % 3,
        )

    names = ["".join(str(v) for v in m) for m in mats]
    table = [[idx[mul(m1, m2)] for m2 in mats] for m1 in mats]
    return _validate(names, table)


def _builtin_klein() -> FiniteGroup:
    names = ["e", "u", "v", "w"]
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return _validate(names, table)


def _builtin_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("cyclic group order must be >= 1", {"order": n})
    names = ["e"] + ["u" if k == 1 else f"u{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _validate(names, table)


GroupSpec = Union[str, Mapping]


def build_group(spec: GroupSpec) -> FiniteGroup:
    """Build a validated group from a builtin name or a names/table mapping."""
    if isinstance(spec, str):
        name = spec.strip().lower()
        if name == "a4":
            return _builtin_a4()
        if name == "s3":
            return _builtin_s3()
        if name == "s4":
            return _builtin_s4()
        if name == "sl2z3":
            return _builtin_sl2z3()
        if name == "klein":
            return _builtin_klein()
        if name.startswith("cyclic(") and name.endswith(")"):
            try:
                n = int(name[7:-1])
            except ValueError:
                raise GroupSpecError(f"bad cyclic order in {spec!r}") from None
            return _builtin_cyclic(n)
        raise GroupSpecError(
            f"unknown builtin group {spec!r}",
            {"builtins": ["a4", "s3", "s4", "sl2z3", "klein", "cyclic(n)"]},
        )
    if isinstance(spec, Mapping):
        if "names" not in spec or "table" not in spec:
            raise GroupSpecError("group spec needs 'names' and 'table' keys")
        return _validate(spec["names"], spec["table"])
    raise GroupSpecError(f"unsupported group spec type {type(spec).__name__}")


# ---------------------------------------------------------------------------
# conjugacy classes and the class calculus
# ---------------------------------------------------------------------------


def conjugacy_classes(group: FiniteGroup) -> list[list[int]]:
    """Conjugation orbits; the identity's orbit first, then by least element."""
    seen: set[int] = set()
    classes = []
    for g in range(group.order):
        if g in seen:
            continue
        orbit = sorted({group.conjugate(h, g) for h in range(group.order)})
        seen.update(orbit)
        classes.append(orbit)
    ident = next(c for c in classes if group.identity in c)
    rest = [c for c in classes if c is not ident]
    return [ident] + sorted(rest, key=lambda c: c[0])


@dataclass(frozen=True)
class ClassCalculus:
    """One nontrivial conjugacy class with its adjoint and right actions."""

    group: FiniteGroup
    elements: tuple[int, ...]  # group indices of the class, canonical order
    ad_table: tuple[tuple[int, ...], ...]  # ad[i][j]: class position of a_i a_j a_i^-1
    right_perm: tuple[tuple[int, ...], ...]  # right_perm[i][g] = g * a_i

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.group.names[g] for g in self.elements)

    def position(self, label: str) -> int:
        return self.elements.index(self.group.index(label))

    def ad(self, i: int, j: int) -> int:
        """Class position of a_i a_j a_i^-1."""
        return self.ad_table[i][j]

    def ad_inv(self, i: int, j: int) -> int:
        """Class position of a_i^-1 a_j a_i."""
        g = self.group
        conj = g.conjugate(g.inv(self.elements[i]), self.elements[j])
        return self.elements.index(conj)

    def product_position(self, i: int, j: int) -> int | None:
        """Class position of a_i * a_j when the product stays in the class."""
        prod = self.group.mult(self.elements[i], self.elements[j])
        try:
            return self.elements.index(prod)
        except ValueError:
            return None


def _class_of(group: FiniteGroup, g: int) -> list[int]:
    return sorted({group.conjugate(h, g) for h in range(group.order)})


def class_calculus(group: FiniteGroup, element: Union[str, int]) -> ClassCalculus:
    """The calculus site for the conjugacy class containing the element."""
    g = group.index(element) if isinstance(element, str) else element
    if g == group.identity:
        raise GroupSpecError("the identity class carries no calculus")
    members = _class_of(group, g)
    ordered = _canonical_class_order(group, members)
    ad_table = tuple(
        tuple(ordered.index(group.conjugate(a, b)) for b in ordered) for a in ordered
    )
    right_perm = tuple(
        tuple(group.mult(h, a) for h in range(group.order)) for a in ordered
    )
    return ClassCalculus(
        group=group,
        elements=tuple(ordered),
        ad_table=ad_table,
        right_perm=right_perm,
    )


def _canonical_class_order(group: FiniteGroup, members: list[int]) -> list[int]:
    """Ascending group order, with the first cyclicity witness moved to front."""
    ordered = sorted(members)
    if len(ordered) >= 2:
        for cand in ordered:
            if _is_witness(group, ordered, cand):
                ordered = [cand] + [m for m in ordered if m != cand]
                break
    return ordered


def _is_witness(group: FiniteGroup, members: list[int], t: int) -> bool:
    """Does Ad_t cycle the rest of the class, with a -> Ad_a(t) a bijection?"""
    rest = [m for m in members if m != t]
    if not rest:
        return False
    # single (n-1)-cycle test
    start = rest[0]
    seen = {start}
    cur = group.conjugate(t, start)
    while cur != start:
        if cur == t or cur in seen:
            return False
        seen.add(cur)
        cur = group.conjugate(t, cur)
    if len(seen) != len(rest):
        return False
    images = {group.conjugate(a, t) for a in members}
    return images == set(members)


def is_cyclic_class(c: ClassCalculus) -> tuple[bool, str | None]:
    """First witness (in class order) of the cyclicity condition, if any."""
    for pos, g in enumerate(c.elements):
        if _is_witness(c.group, list(c.elements), g):
            return True, c.labels[pos]
    return False, None


def cyclicity_witnesses(c: ClassCalculus) -> list[str]:
    return [
        c.labels[pos]
        for pos, g in enumerate(c.elements)
        if _is_witness(c.group, list(c.elements), g)
    ]


def class_generates(c: ClassCalculus) -> bool:
    """Does the class generate the whole group?"""
    return len(generated_subgroup(c)) == c.group.order


def generated_subgroup(c: ClassCalculus) -> list[int]:
    """Subgroup closure of the class, as sorted group indices."""
    group = c.group
    closure = {group.identity}
    frontier = list(c.elements)
    closure.update(frontier)
    while frontier:
        nxt = []
        for a in list(closure):
            for b in frontier:
                p = group.mult(a, b)
                if p not in closure:
                    closure.add(p)
                    nxt.append(p)
                p = group.mult(b, a)
                if p not in closure:
                    closure.add(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(closure)


# ---------------------------------------------------------------------------
# product-table classification for four-element cyclic classes
# ---------------------------------------------------------------------------

TABLE_II = "TableII"
TABLE_III = "TableIII"
OTHER = "Other"


def classify_class_products(c: ClassCalculus) -> str:
    """Which of the two admissible 4x4 class product tables occurs (or Other).

    Both admissible tables share the triple coincidences
    t*x = z*t = x*z (and the three images of this line under the cycle);
    they differ in whether the squares coincide with those triple values
    (third table) or avoid them entirely (second table).
    """
    cyclic, _ = is_cyclic_class(c)
    if not cyclic or c.n != 4:
        raise GroupSpecError(
            "product-table classification needs a cyclic class of size 4",
            {"size": c.n, "cyclic": cyclic},
        )
    group = c.group
    found_ii = False
    for t_pos in range(4):
        if not _is_witness(group, list(c.elements), c.elements[t_pos]):
            continue
        others = [p for p in range(4) if p != t_pos]
        for x_pos in others:
            z_pos = c.ad(t_pos, x_pos)
            y_pos = c.ad(t_pos, z_pos)
            if sorted([x_pos, y_pos, z_pos]) != sorted(others):
                continue
            verdict = _match_tables(c, t_pos, x_pos, y_pos, z_pos)
            if verdict == TABLE_III:
                return TABLE_III
            if verdict == TABLE_II:
                found_ii = True
    return TABLE_II if found_ii else OTHER


def _match_tables(c: ClassCalculus, t: int, x: int, y: int, z: int) -> str:
    group = c.group
    e = c.elements

    def prod(i: int, j: int) -> int:
        return group.mult(e[i], e[j])

    triples = [
        [(t, x), (z, t), (x, z)],
        [(t, y), (x, t), (y, x)],
        [(t, z), (y, t), (z, y)],
        [(x, y), (y, z), (z, x)],
    ]
    triple_vals = []
    for cells in triples:
        vals = {prod(i, j) for i, j in cells}
        if len(vals) != 1:
            return OTHER
        triple_vals.append(vals.pop())
    if len(set(triple_vals)) != 4:
        return OTHER
    squares = [prod(t, t), prod(x, x), prod(y, y), prod(z, z)]
    # third-table coincidences: t^2 = x*y, y^2 = t*x, z^2 = t*y, x^2 = t*z
    if (
        squares[0] == triple_vals[3]
        and squares[2] == triple_vals[0]
        and squares[3] == triple_vals[1]
        and squares[1] == triple_vals[2]
    ):
        return TABLE_III
    if len(set(squares)) == 4 and not set(squares) & set(triple_vals):
        return TABLE_II
    return OTHER
