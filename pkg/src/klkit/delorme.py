"""Delorme polynomials, Grothendieck-group transition matrices and Ext series between simples.

With ``a_{x,y} = t^{l(y)-l(x)} P_{x,y}(t^-2)``:

* ``characters_matrix`` has entry (x, y) = a_{x,y}(-1); column y writes L_y in the Verma basis.
* ``verma_in_simples`` is its exact integer inverse.
* ``ext_series_ll(x, y) = sum_z a_{z,x} a_{z,y}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coxeter import CoxeterSystem, GroupElement
from .kl import KLTable, kl_polynomial, kl_table
from .poly import DegreeBoundError, IntPoly, twist_kl, untwist_kl


def delorme_poly(system: CoxeterSystem, x: GroupElement, y: GroupElement) -> IntPoly:
    p = kl_polynomial(system, x, y)
    if p.is_zero():
        return p
    return twist_kl(p, y.length - x.length)


@dataclass
class DelormeTable:
    system: CoxeterSystem
    kl: KLTable
    a: list[list[IntPoly]] = field(repr=False)

    @property
    def elements(self) -> list[GroupElement]:
        return self.kl.elements

    def __getitem__(self, pair) -> IntPoly:
        x, y = (self.kl._ix(w) for w in pair)
        return self.a[x][y]


def delorme_table(system: CoxeterSystem, threads: int = 1) -> DelormeTable:
    table = kl_table(system, threads=threads)
    n = len(table)
    lens = [table.length(i) for i in range(n)]
    a = [[IntPoly() for _ in range(n)] for _ in range(n)]
    for y in range(n):
        for x in range(n):
            p = table[x, y]
            if p:
                a[x][y] = twist_kl(p, lens[y] - lens[x])
    return DelormeTable(system, table, a)


@dataclass
class TransitionMatrix:
    """Square integer matrix indexed by the canonical enumeration."""

    elements: list[GroupElement]
    entries: list[list[int]]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __matmul__(self, other: TransitionMatrix) -> TransitionMatrix:
        a = np.array(self.entries, dtype=object)
        b = np.array(other.entries, dtype=object)
        return TransitionMatrix(self.elements, (a @ b).tolist() if len(a) else [])

    def is_unitriangular(self) -> bool:
        n = len(self)
        return all(self.entries[i][i] == 1 for i in range(n)) and all(
            self.entries[i][j] == 0 for i in range(n) for j in range(i))

    def inverse(self) -> TransitionMatrix:
        """Exact inverse of an upper unitriangular integer matrix by back substitution."""
        if not self.is_unitriangular():
            raise ValueError("matrix is not upper unitriangular")
        n = len(self)
        m = self.entries
        inv = [[int(i == j) for j in range(n)] for i in range(n)]
        for j in range(n):
            for i in range(j - 1, -1, -1):
                inv[i][j] = -sum(m[i][k] * inv[k][j] for k in range(i + 1, j + 1) if m[i][k])
        return TransitionMatrix(self.elements, inv)

    @classmethod
    def identity(cls, elements) -> TransitionMatrix:
        n = len(elements)
        return cls(elements, [[int(i == j) for j in range(n)] for i in range(n)])


def characters_matrix(system: CoxeterSystem, threads: int = 1) -> TransitionMatrix:
    table = kl_table(system, threads=threads)
    at_one = table.value_at_one()
    n = len(table)
    lens = [table.length(i) for i in range(n)]
    entries = [[int(at_one[x, y]) * (-1) ** ((lens[y] - lens[x]) % 2) for y in range(n)]
               for x in range(n)]
    return TransitionMatrix(table.elements, entries)


def verma_in_simples(system: CoxeterSystem, threads: int = 1) -> TransitionMatrix:
    return characters_matrix(system, threads=threads).inverse()


def kl_inversion_matrix(system: CoxeterSystem) -> TransitionMatrix:
    """Entries P_{w0 y, w0 x}(1), computed independently of any matrix inversion.

    KL inversion says this is the inverse of the characters matrix. A sign factor
    (-1)^{l(y)-l(x)} here would give negative entries and cannot be an inverse whose
    entries are Verma multiplicities.
    """
    table = kl_table(system)
    elems = table.elements
    w0 = system.longest_element()
    flip = [table._ix(system.multiply(w0, w)) for w in elems]
    n = len(elems)
    entries = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            entries[x][y] = table[flip[y], flip[x]](1)
    return TransitionMatrix(elems, entries)


def ext_series_ll(system: CoxeterSystem, x: GroupElement, y: GroupElement) -> IntPoly:
    """Sum over z of a_{z,x} a_{z,y}; only z below both x and y contribute."""
    system._check_same(x, y)
    system.check_cap("Ext series between simples")
    table = kl_table(system)
    xi, yi = table._ix(x), table._ix(y)
    leq = table.engine.leq
    total = IntPoly()
    for z in np.flatnonzero(leq[:, xi] & leq[:, yi]):
        lz = table.length(int(z))
        total = total + twist_kl(table[z, xi], table.length(xi) - lz) * twist_kl(
            table[z, yi], table.length(yi) - lz)
    return total


def ext_ll_table(system: CoxeterSystem, threads: int = 1) -> list[list[IntPoly]]:
    dt = delorme_table(system, threads=threads)
    n = len(dt.a)
    leq = dt.kl.engine.leq
    out = [[IntPoly() for _ in range(n)] for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            total = IntPoly()
            for z in np.flatnonzero(leq[:, x] & leq[:, y]):
                total = total + dt.a[z][x] * dt.a[z][y]
            out[x][y] = out[y][x] = total
    return out


def verify_kl_structure(system: CoxeterSystem, max_witnesses: int = 10) -> dict:
    """Check the four structural properties of Delorme/KL polynomials on every pair.

    (1) a_{x,y} = t^{l(y)-l(x)} P_{x,y}(t^-2);  (2) P_{x,y} != 0 iff x <= y iff P_{x,y}(0) = 1;
    (3) P_{x,x} = 1;  (4) deg P_{x,y} < (l(y) - l(x)) / 2 for x < y.
    Bruhat comparisons use the element-level lifting recursion, not the engine's table.
    """
    table = kl_table(system)
    dt = delorme_table(system)
    elems = table.elements
    words = system.canonical_words()
    n = len(elems)
    wit: dict[str, list] = {"1": [], "2": [], "3": [], "4": []}

    def note(prop, x, y, detail):
        if len(wit[prop]) < max_witnesses:
            wit[prop].append({"x": list(words[x]), "y": list(words[y]), "detail": detail})

    counts = {k: 0 for k in wit}
    for x in range(n):
        for y in range(n):
            p = table[x, y]
            a = dt.a[x][y]
            gap = table.length(y) - table.length(x)
            if p:
                try:
                    back = untwist_kl(a, gap)
                except DegreeBoundError as exc:
                    back = None
                    note("1", x, y, str(exc))
                if back != p:
                    counts["1"] += 1
                    if back is not None:
                        note("1", x, y, f"untwisted {back} != {p}")
            elif a:
                counts["1"] += 1
                note("1", x, y, "a nonzero while P is zero")
            leq = system.bruhat_leq(elems[x], elems[y])
            if not (bool(p) == leq == (p.coefficient(0) == 1)):
                counts["2"] += 1
                note("2", x, y, f"P={p}, bruhat={leq}")
            if x == y and p != IntPoly([1]):
                counts["3"] += 1
                note("3", x, y, f"P={p}")
            if x != y and p and not 2 * p.degree < gap:
                counts["4"] += 1
                note("4", x, y, f"deg {p.degree} with gap {gap}")
    props = {k: {"pass": counts[k] == 0, "failures": counts[k], "witnesses": wit[k]}
             for k in wit}
    return {"type": str(system.type), "pairs": n * n, "properties": props,
            "pass": all(v["pass"] for v in props.values())}
