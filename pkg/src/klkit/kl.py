"""R-polynomials, Kazhdan-Lusztig polynomials and mu-coefficients.

Two independent routes are provided:

* :class:`KLEngine` runs the standard descent recursion one column
  ``y -> {P_{x,y}}_x`` at a time, vectorized over x with numpy.
* :func:`kl_oracle` solves the bar-invariance identity
  ``q^{l(y)-l(x)} bar(P_{x,y}) = sum_{x<=z<=y} R_{x,z} P_{z,y}``
  by descending induction on l(x). It shares only the R-polynomials.

Engines live over a Bruhat lower ideal. For groups within the order cap that
ideal is the whole group; otherwise single pairs use the ideal below y.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import groupby

import numpy as np

from .coxeter import CoxeterSystem, GroupElement
from .poly import IntPoly, LaurentPoly

_INT64_SAFE = 2**62


class KLInvariantError(AssertionError):
    """A computed table violates a theorem that holds for every Weyl group."""


class OracleInconsistency(ArithmeticError):
    """The bar-invariance solve found a coefficient mismatch."""


class KLEngine:
    def __init__(self, system: CoxeterSystem, elements: list[GroupElement],
                 policy: str = "smallest"):
        if policy not in ("smallest", "largest"):
            raise ValueError("policy must be 'smallest' or 'largest'")
        self.system = system
        self.policy = policy
        self.elements = elements
        n = self.n = len(elements)
        self.index = {w.key: i for i, w in enumerate(elements)}
        self.lengths = np.array([w.length for w in elements], dtype=np.int64)
        rank = system.rank
        # lmul[s, x] = index of s*x, or n when s*x lies outside the ideal
        lmul = np.full((rank, n + 1), n, dtype=np.int64)
        for i in range(rank):
            for x, w in enumerate(elements):
                lmul[i, x] = self.index.get(_key(system._lmul_matrix(i, w.matrix)), n)
        self.lmul = lmul
        lens_ext = np.append(self.lengths, np.iinfo(np.int64).max)
        self.ldesc = lens_ext[lmul[:, :n]] < self.lengths[None, :]
        self.desc_choice = np.full(n, -1, dtype=np.int64)
        for y in range(n):
            d = np.flatnonzero(self.ldesc[:, y])
            if d.size:
                self.desc_choice[y] = d[0] if policy == "smallest" else d[-1]
        self.max_len = int(self.lengths.max()) if n else 0
        self.width = self.max_len // 2 + 2
        self._leq = None
        self._cols: list = [None] * n
        self._colmax = [0] * n
        self._mu: list = [None] * n
        self._r: dict[tuple[int, int], IntPoly] = {}
        self._lock = threading.RLock()

    # -- Bruhat ------------------------------------------------------------

    @property
    def leq(self) -> np.ndarray:
        """Boolean matrix ``leq[x, y]`` = x <= y, by the lifting recursion column by column."""
        if self._leq is None:
            with self._lock:
                if self._leq is None:
                    n = self.n
                    leq = np.zeros((n, n), dtype=bool)
                    for y in range(n):
                        s = self.desc_choice[y]
                        if s < 0:
                            leq[y, y] = True
                            continue
                        sy = self.lmul[s, y]
                        down = self.ldesc[s]
                        # sx < x: x <= y iff sx <= sy;  otherwise x <= y iff x <= sy
                        perm = np.where(down, self.lmul[s, :n], 0)
                        leq[:, y] = np.where(down, leq[perm, sy], leq[:, sy])
                    self._leq = leq
        return self._leq

    # -- KL columns --------------------------------------------------------

    def column(self, y: int) -> np.ndarray:
        """Array of shape (n + 1, width); row x holds the coefficients of P_{x,y}."""
        col = self._cols[y]
        if col is None:
            self.ensure(np.flatnonzero(self.leq[:, y]))
            col = self._cols[y]
        return col

    def ensure(self, targets, threads: int = 1):
        todo = sorted(int(y) for y in targets if self._cols[int(y)] is None)
        if not todo:
            return
        with self._lock:
            needed = np.zeros(self.n, dtype=bool)
            leq = self.leq
            for y in todo:
                needed |= leq[:, y]
            order = [y for y in np.flatnonzero(needed) if self._cols[y] is None]
            if threads <= 1:
                for y in order:
                    self._compute(y)
                return
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for _, stratum in groupby(order, key=lambda y: self.lengths[y]):
                    list(pool.map(self._compute, list(stratum)))

    def _compute(self, y: int):
        n, width = self.n, self.width
        s = self.desc_choice[y]
        if s < 0:
            col = np.zeros((n + 1, width), dtype=np.int64)
            col[y, 0] = 1
            self._store(y, col)
            return
        v = self.lmul[s, y]
        pv = self._cols[v]
        mus = [(z, m) for z, m in self.mu_list(v) if self.ldesc[s, z]]
        bound = 2 * self._colmax[v] + sum(abs(m) * self._colmax[z] for z, m in mus)
        dtype = np.int64 if bound < _INT64_SAFE else object
        pv = pv.astype(dtype, copy=False)
        down = self.ldesc[s][:, None]
        a = pv[self.lmul[s, :n]]  # P_{sx, v}
        b = pv[:n]                # P_{x, v}
        body = np.where(down, a + _shift(b, 1), _shift(a, 1) + b)
        ly = self.lengths[y]
        for z, m in mus:
            k = int(ly - self.lengths[z]) // 2
            body = body - m * _shift(self._cols[z][:n].astype(dtype, copy=False), k)
        col = np.zeros((n + 1, width), dtype=dtype)
        col[:n] = body
        self._check_column(y, col)
        self._store(y, col)

    def _store(self, y: int, col: np.ndarray):
        self._colmax[y] = int(abs(col).max()) if col.size else 0
        self._cols[y] = col

    def _check_column(self, y: int, col: np.ndarray):
        body = col[:self.n]
        if (body < 0).any():
            x = int(np.argwhere(body < 0)[0][0])
            raise KLInvariantError(f"negative coefficient in P(x={x}, y={y})")
        support = (body != 0).any(axis=1)
        if not np.array_equal(support, self.leq[:, y]):
            x = int(np.flatnonzero(support != self.leq[:, y])[0])
            raise KLInvariantError(f"support of P(., y={y}) disagrees with Bruhat order at x={x}")
        if (body[support, 0] != 1).any():
            raise KLInvariantError(f"constant term != 1 in column y={y}")
        gaps = self.lengths[y] - self.lengths
        degs = np.arange(self.width)
        too_high = (2 * degs[None, :] >= gaps[:, None]) & (np.arange(self.n) != y)[:, None]
        if (body[too_high] != 0).any():
            x = int(np.argwhere((body != 0) & too_high)[0][0])
            raise KLInvariantError(f"degree bound violated for P(x={x}, y={y})")

    def mu_list(self, v: int) -> list[tuple[int, int]]:
        """Pairs (z, mu(z, v)) with z < v and mu nonzero."""
        hit = self._mu[v]
        if hit is None:
            col = self._cols[v] if self._cols[v] is not None else self.column(v)
            gaps = self.lengths[v] - self.lengths
            cand = np.flatnonzero((gaps > 0) & (gaps % 2 == 1))
            vals = col[cand, (gaps[cand] - 1) // 2]
            hit = [(int(z), int(m)) for z, m in zip(cand, vals) if m]
            self._mu[v] = hit
        return hit

    def poly(self, x: int, y: int) -> IntPoly:
        return IntPoly(int(c) for c in self.column(y)[x])

    def mu(self, x: int, y: int) -> int:
        gap = int(self.lengths[y] - self.lengths[x])
        if gap <= 0 or gap % 2 == 0:
            return 0
        return int(self.column(y)[x, (gap - 1) // 2])

    # -- R-polynomials -----------------------------------------------------

    def r_poly(self, x: int, y: int) -> IntPoly:
        """R_{x,y} by the standard recursion on a left descent of y; memoized."""
        if x == self.n:
            return IntPoly()
        key = (x, y)
        hit = self._r.get(key)
        if hit is not None:
            return hit
        if x == y:
            res = IntPoly([1])
        elif not self.leq[x, y]:
            res = IntPoly()
        else:
            s = self.desc_choice[y]
            sy = int(self.lmul[s, y])
            sx = int(self.lmul[s, x])
            if self.ldesc[s, x]:
                res = self.r_poly(sx, sy)
            else:
                res = IntPoly([-1, 1]) * self.r_poly(x, sy) + self.r_poly(sx, sy).shift(1)
        self._r[key] = res
        return res


def _key(m):
    return tuple(x for row in m for x in row)


def _shift(arr: np.ndarray, k: int) -> np.ndarray:
    if k == 0:
        return arr
    if (arr[:, arr.shape[1] - k:] != 0).any():
        raise KLInvariantError("polynomial degree exceeded table width")
    out = np.zeros_like(arr)
    out[:, k:] = arr[:, :arr.shape[1] - k]
    return out


def get_engine(system: CoxeterSystem, y: GroupElement | None = None,
               policy: str = "smallest") -> KLEngine:
    """Engine over the whole group when within the cap, else over the ideal below y."""
    caches = system._caches
    if system.order <= system.order_cap:
        key = ("kl-engine", policy)
        with system._lock:
            eng = caches.get(key)
            if eng is None:
                eng = caches[key] = KLEngine(system, system.enumerate(), policy)
        return eng
    if y is None:
        system.check_cap("full KL table")
    key = ("kl-ideal-engine", policy, y.key)
    with system._lock:
        eng = caches.get(key)
        if eng is None:
            eng = caches[key] = KLEngine(system, system.lower_ideal(y), policy)
    return eng


def _indices(engine: KLEngine, x: GroupElement, y: GroupElement) -> tuple[int, int] | None:
    xi = engine.index.get(x.key)
    yi = engine.index.get(y.key)
    if yi is None:
        raise KeyError("y is not in the engine's ideal")
    return (xi, yi) if xi is not None else None


def r_polynomial(system: CoxeterSystem, x: GroupElement, y: GroupElement) -> IntPoly:
    system._check_same(x, y)
    eng = get_engine(system, y)
    idx = _indices(eng, x, y)
    return IntPoly() if idx is None else eng.r_poly(*idx)


def kl_polynomial(system: CoxeterSystem, x: GroupElement, y: GroupElement,
                  policy: str = "smallest") -> IntPoly:
    system._check_same(x, y)
    eng = get_engine(system, y, policy)
    idx = _indices(eng, x, y)
    return IntPoly() if idx is None else eng.poly(*idx)


def mu(system: CoxeterSystem, x: GroupElement, y: GroupElement) -> int:
    system._check_same(x, y)
    eng = get_engine(system, y)
    idx = _indices(eng, x, y)
    return 0 if idx is None else eng.mu(*idx)


def kl_oracle(system: CoxeterSystem, y: GroupElement) -> dict[GroupElement, IntPoly]:
    """{x: P_{x,y}} for x <= y, from bar-invariance and the degree bound alone."""
    eng = get_engine(system, y)
    yi = eng.index[y.key]
    below = [int(x) for x in np.flatnonzero(eng.leq[:, yi])]
    below.sort(key=lambda x: -eng.lengths[x])
    ly = int(eng.lengths[yi])
    known: dict[int, IntPoly] = {}
    for x in below:
        if x == yi:
            known[x] = IntPoly([1])
            continue
        d = ly - int(eng.lengths[x])
        rhs = IntPoly()
        for z, pz in known.items():
            if eng.leq[x, z]:
                rhs = rhs + eng.r_poly(x, z) * pz
        # q^d bar(P) - P = rhs, with deg P < d/2 on the left and the mirror part above d/2
        p = IntPoly(-rhs.coefficient(k) for k in range((d + 1) // 2))
        lhs = LaurentPoly.from_intpoly(p).bar().shift(d) - p
        if lhs != rhs:
            raise OracleInconsistency(
                f"bar-invariance fails for x={eng.elements[x]!r}, y={y!r}: {lhs} != {rhs}")
        known[x] = p
    return {eng.elements[x]: p for x, p in known.items()}


@dataclass
class KLTable:
    """All P_{x,y} of a group in canonical order, with R and mu lookups."""

    system: CoxeterSystem
    engine: KLEngine
    elements: list[GroupElement] = field(init=False)

    def __post_init__(self):
        self.elements = self.engine.elements

    def __len__(self):
        return len(self.elements)

    def _ix(self, w) -> int:
        return w if isinstance(w, (int, np.integer)) else self.engine.index[w.key]

    def __getitem__(self, pair) -> IntPoly:
        x, y = pair
        return self.engine.poly(self._ix(x), self._ix(y))

    def r(self, x, y) -> IntPoly:
        return self.engine.r_poly(self._ix(x), self._ix(y))

    def mu(self, x, y) -> int:
        return self.engine.mu(self._ix(x), self._ix(y))

    def leq(self, x, y) -> bool:
        return bool(self.engine.leq[self._ix(x), self._ix(y)])

    def length(self, x) -> int:
        return int(self.engine.lengths[self._ix(x)])

    def matrix(self) -> list[list[IntPoly]]:
        n = len(self.elements)
        return [[self.engine.poly(x, y) for y in range(n)] for x in range(n)]

    def value_at_one(self) -> np.ndarray:
        """Integer matrix of P_{x,y}(1)."""
        n = len(self.elements)
        out = np.zeros((n, n), dtype=object)
        for y in range(n):
            out[:, y] = self.engine.column(y)[:n].sum(axis=1)
        return out


def kl_table(system: CoxeterSystem, threads: int = 1, policy: str = "smallest") -> KLTable:
    system.check_cap("full KL table")
    eng = get_engine(system, None, policy)
    eng.ensure(range(eng.n), threads=threads)
    return KLTable(system, eng)
