"""Finite Weyl groups acting on their root lattice.

Group elements are integer matrices in the basis of simple roots; column j
of the matrix of w holds the coordinates of w(alpha_j). Everything is exact
integer arithmetic. Generators are numbered from 1 as in Bourbaki.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_ORDER_CAP = 1_000_000


class CoxeterError(ValueError):
    """Invalid Cartan type, word or element."""


class OrderCapExceeded(RuntimeError):
    """An operation needs the whole group but the group is larger than the cap."""


_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _component_order(family: str, n: int) -> int:
    if family == "A":
        return math.factorial(n + 1)
    if family in "BC":
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[family, n]


def _component_roots(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1) // 2
    if family in "BC":
        return n * n
    if family == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[family, n]


@dataclass(frozen=True)
class CoxeterType:
    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise CoxeterError("empty Cartan type")
        for family, rank in self.components:
            check = _VALID_RANKS.get(family)
            if check is None or not isinstance(rank, int) or not check(rank):
                raise CoxeterError(f"invalid Dynkin type {family}{rank}")

    @classmethod
    def parse(cls, text: str) -> CoxeterType:
        """Parse strings such as ``"A2"``, ``"B3"`` or ``"A1xA1"``."""
        parts = [p.strip() for p in text.strip().split("x")]
        comps = []
        for part in parts:
            m = re.fullmatch(r"([A-Ga-g])\s*(\d+)", part)
            if not m:
                raise CoxeterError(f"cannot parse Cartan type {text!r}")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    @property
    def order(self) -> int:
        return math.prod(_component_order(f, n) for f, n in self.components)

    @property
    def num_positive_roots(self) -> int:
        return sum(_component_roots(f, n) for f, n in self.components)

    def __str__(self):
        return "x".join(f"{f}{n}" for f, n in self.components)


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    """Cartan matrix with entry (i, j) = <alpha_j, alpha_i^vee>, Bourbaki numbering."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if family in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B" and n >= 2:
            link(n - 2, n - 1, -2, -1)
        if family == "C" and n >= 2:
            link(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G":
        link(0, 1, -1, -3)
    return a


def _block_diagonal(blocks: Sequence[list[list[int]]]) -> list[list[int]]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(b)] = row
        off += len(b)
    return out


Matrix = tuple[tuple[int, ...], ...]


class GroupElement:
    """An element of a finite Weyl group, stored as its reflection-representation matrix."""

    __slots__ = ("system", "matrix", "key", "_length", "__weakref__")

    def __init__(self, system: CoxeterSystem, matrix: Matrix):
        self.system = system
        self.matrix = matrix
        self.key = tuple(x for row in matrix for x in row)
        self._length = None

    @property
    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        if self._length is None:
            self._length = self.system._inversion_count(self.matrix)
        return self._length

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other):
        return self.system.multiply(self, other)

    def is_identity(self) -> bool:
        return self.key == self.system.identity.key

    def __repr__(self):
        word = " ".join(map(str, self.system.reduced_word(self)))
        return f"<{self.system.type} element [{word}]>"


class CoxeterSystem:
    """A finite crystallographic Coxeter system built from a Cartan type."""

    def __init__(self, ctype: CoxeterType | str, order_cap: int = DEFAULT_ORDER_CAP):
        if isinstance(ctype, str):
            ctype = CoxeterType.parse(ctype)
        self.type = ctype
        self.order_cap = order_cap
        self.cartan: list[list[int]] = _block_diagonal(
            [cartan_matrix(f, n) for f, n in ctype.components])
        self.rank = len(self.cartan)
        self.generators = tuple(range(1, self.rank + 1))
        self.order = ctype.order
        self.positive_roots = self._close_roots()
        if len(self.positive_roots) != ctype.num_positive_roots:
            raise AssertionError("root closure produced the wrong number of roots")
        self._bruhat_memo: dict[tuple, bool] = {}
        self._lock = threading.RLock()
        self.identity = GroupElement(self, tuple(
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)))
        self.identity._length = 0
        self._caches: dict = {}

    def __repr__(self):
        return f"CoxeterSystem({str(self.type)!r})"

    # -- roots -----------------------------------------------------------

    def _reflect_root(self, i: int, beta: Sequence[int]) -> tuple[int, ...]:
        pairing = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    def _close_roots(self) -> list[tuple[int, ...]]:
        simple = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(self.rank):
                    gamma = self._reflect_root(i, beta)
                    if all(c >= 0 for c in gamma) and gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        return sorted(seen, key=lambda r: (sum(r), r))

    @cached_property
    def _root_columns(self):
        return [tuple(r[j] for r in self.positive_roots) for j in range(self.rank)]

    def _inversion_count(self, m: Matrix) -> int:
        # w(beta) is negative iff its height is; height = (column sums of m) . beta
        colsum = [sum(m[r][c] for r in range(self.rank)) for c in range(self.rank)]
        count = 0
        for beta in self.positive_roots:
            if sum(colsum[j] * beta[j] for j in range(self.rank)) < 0:
                count += 1
        return count

    # -- element construction ------------------------------------------------

    def _check_generator(self, i: int):
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise CoxeterError(f"generator {i!r} out of range 1..{self.rank}")

    def _lmul_matrix(self, i: int, m: Matrix) -> Matrix:
        """Matrix of s_i * w (0-based i); only row i changes."""
        a = self.cartan[i]
        rows = list(m)
        new = [-x for x in m[i]]
        for k in range(self.rank):
            if k != i and a[k]:
                ak = a[k]
                rk = m[k]
                new = [x - ak * y for x, y in zip(new, rk)]
        rows[i] = tuple(new)
        return tuple(rows)

    def _rmul_matrix(self, m: Matrix, i: int) -> Matrix:
        """Matrix of w * s_i (0-based i)."""
        a = self.cartan[i]
        out = []
        for row in m:
            ri = row[i]
            out.append(tuple(x - a[c] * ri for c, x in enumerate(row)) if ri else row)
        return tuple(out)

    def simple_reflection(self, i: int) -> GroupElement:
        self._check_generator(i)
        g = GroupElement(self, self._lmul_matrix(i - 1, self.identity.matrix))
        g._length = 1
        return g

    def lmul(self, i: int, w: GroupElement) -> GroupElement:
        """s_i * w."""
        return GroupElement(self, self._lmul_matrix(i - 1, w.matrix))

    def rmul(self, w: GroupElement, i: int) -> GroupElement:
        """w * s_i."""
        return GroupElement(self, self._rmul_matrix(w.matrix, i - 1))

    def from_word(self, word: Iterable[int]) -> GroupElement:
        """Product s_{w1} s_{w2} ... of simple reflections, left to right."""
        m = self.identity.matrix
        for i in word:
            self._check_generator(i)
            m = self._rmul_matrix(m, i - 1)
        return GroupElement(self, m)

    def from_matrix(self, matrix: Sequence[Sequence[int]]) -> GroupElement:
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(m) != self.rank or any(len(r) != self.rank for r in m):
            raise CoxeterError("matrix has the wrong shape")
        w = GroupElement(self, m)
        # membership: strip right descents down to the identity
        u, steps = w.matrix, 0
        while u != self.identity.matrix:
            d = self._right_descents_matrix(u)
            if not d or steps > len(self.positive_roots):
                raise CoxeterError("matrix is not an element of the Weyl group")
            u = self._rmul_matrix(u, d[0])
            steps += 1
        return w

    def _check_same(self, *elems: GroupElement):
        for e in elems:
            if e.system is not self:
                raise CoxeterError("element belongs to a different Coxeter system")

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check_same(a, b)
        n = self.rank
        bm = b.matrix
        m = tuple(tuple(sum(a.matrix[r][k] * bm[k][c] for k in range(n)) for c in range(n))
                  for r in range(n))
        return GroupElement(self, m)

    def inverse(self, w: GroupElement) -> GroupElement:
        self._check_same(w)
        inv = self.identity.matrix
        u = w.matrix
        # w = s_{b_k} ... s_{b_1} when stripping right descents b_1, b_2, ...
        while u != self.identity.matrix:
            i = self._right_descents_matrix(u)[0]
            u = self._rmul_matrix(u, i)
            inv = self._rmul_matrix(inv, i)
        return GroupElement(self, inv)

    def length(self, w: GroupElement) -> int:
        return w.length

    # -- descents --------------------------------------------------------

    def _right_descents_matrix(self, m: Matrix) -> list[int]:
        return [c for c in range(self.rank) if sum(m[r][c] for r in range(self.rank)) < 0]

    def descents(self, w: GroupElement, side: str = "right") -> frozenset[int]:
        """Right descents: w(alpha_s) < 0. Left descents: w^-1(alpha_s) < 0."""
        self._check_same(w)
        if side == "right":
            return frozenset(c + 1 for c in self._right_descents_matrix(w.matrix))
        if side == "left":
            lw = w.length
            return frozenset(i for i in self.generators if self.lmul(i, w).length < lw)
        raise ValueError("side must be 'left' or 'right'")

    def left_descent(self, w: GroupElement, policy: str = "smallest") -> int | None:
        d = self.descents(w, "left")
        if not d:
            return None
        return min(d) if policy == "smallest" else max(d)

    # -- words -----------------------------------------------------------

    def reduced_word(self, w: GroupElement) -> tuple[int, ...]:
        """ShortLex-minimal reduced word: repeatedly strip the smallest left descent."""
        self._check_same(w)
        word = []
        u = w
        while not u.is_identity():
            lu = u.length
            for i in self.generators:
                su = self.lmul(i, u)
                if su.length < lu:
                    word.append(i)
                    u = su
                    break
        return tuple(word)

    def longest_element(self) -> GroupElement:
        # -1 on the root lattice is w0 exactly when it lies in W; build it by descent instead
        m = self.identity.matrix
        while True:
            up = [i for i in range(self.rank)
                  if i not in self._right_descents_matrix(m)]
            if not up:
                break
            m = self._rmul_matrix(m, up[0])
        w0 = GroupElement(self, m)
        assert w0.length == len(self.positive_roots)
        return w0

    # -- Bruhat order ----------------------------------------------------

    def bruhat_leq(self, x: GroupElement, y: GroupElement) -> bool:
        """Bruhat comparison by the lifting recursion, memoized on (x, y)."""
        self._check_same(x, y)
        return self._bruhat(x, y)

    def _bruhat(self, x: GroupElement, y: GroupElement) -> bool:
        key = (x.key, y.key)
        hit = self._bruhat_memo.get(key)
        if hit is not None:
            return hit
        if y.is_identity():
            result = x.is_identity()
        elif x.length > y.length:
            result = False
        elif x.length == y.length:
            result = x.key == y.key
        else:
            s = self.left_descent(y)
            sy = self.lmul(s, y)
            sx = self.lmul(s, x)
            if sx.length < x.length:
                result = self._bruhat(sx, sy)
            else:
                result = self._bruhat(x, sy)
        with self._lock:
            self._bruhat_memo[key] = result
        return result

    # -- enumeration -----------------------------------------------------

    def check_cap(self, what: str = "operation"):
        if self.order > self.order_cap:
            raise OrderCapExceeded(
                f"{what} needs all {self.order} elements of {self.type}; cap is {self.order_cap}")

    def enumerate(self) -> list[GroupElement]:
        """All elements in canonical order: by length, then ShortLex reduced word."""
        cached = self._caches.get("enumerate")
        if cached is not None:
            return list(cached)
        self.check_cap("enumerate")
        elems, words = self._bfs_levels([self.identity])
        self._caches["enumerate"] = elems
        self._caches["words"] = words
        self._caches["index"] = {w.key: i for i, w in enumerate(elems)}
        return list(elems)

    def _bfs_levels(self, start: list[GroupElement]):
        # start is the identity; each new level is s * (previous level), first hit = ShortLex min
        elems = list(start)
        words = [()]
        level = [(start[0].matrix, ())]
        seen = {start[0].key}
        depth = 0
        while level:
            depth += 1
            found: dict[tuple, tuple] = {}
            for i in range(self.rank):
                for m, word in level:
                    nm = self._lmul_matrix(i, m)
                    k = tuple(x for row in nm for x in row)
                    if k in seen or k in found:
                        continue
                    found[k] = (nm, (i + 1,) + word)
            seen.update(found)
            level = sorted(found.values(), key=lambda t: t[1])
            for m, word in level:
                g = GroupElement(self, m)
                g._length = depth
                elems.append(g)
                words.append(word)
        return elems, words

    def canonical_words(self) -> list[tuple[int, ...]]:
        self.enumerate()
        return list(self._caches["words"])

    def index_of(self, w: GroupElement) -> int:
        self.enumerate()
        self._check_same(w)
        return self._caches["index"][w.key]

    def lower_ideal(self, y: GroupElement) -> list[GroupElement]:
        """{x : x <= y}, sorted canonically; built from a reduced word without enumerating W."""
        self._check_same(y)
        word = self.reduced_word(y)
        ideal = {self.identity.key: self.identity}
        for i in reversed(word):
            for z in list(ideal.values()):
                sz = self.lmul(i, z)
                ideal.setdefault(sz.key, sz)
        out = list(ideal.values())
        out.sort(key=lambda z: (z.length, self.reduced_word(z)))
        return out


def build_system(ctype: CoxeterType | str, order_cap: int = DEFAULT_ORDER_CAP) -> CoxeterSystem:
    return CoxeterSystem(ctype, order_cap=order_cap)


def parse_word(text: str | Sequence[int]) -> tuple[int, ...]:
    """Words are space- or comma-separated 1-based generator indices; "" or "e" is the identity."""
    if not isinstance(text, str):
        return tuple(int(i) for i in text)
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(tok) for tok in re.split(r"[\s,]+", text) if tok)
    except ValueError:
        raise CoxeterError(f"cannot parse word {text!r}") from None


def format_word(word: Sequence[int]) -> str:
    return " ".join(map(str, word)) if word else "e"
