"""Finite-dimensional modules over a based path algebra.

A module is a vector space per vertex and one matrix per arrow, mapping the
source space to the target space (column-vector convention). Graded
subspaces are dicts ``vertex -> Subspace``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy.polys.matrices import DomainMatrix

from .. import linalg as la
from .algebra import BasedAlgebra, Path


@dataclass
class FDModule:
    algebra: BasedAlgebra
    dims: dict[str, int]
    action: dict[str, DomainMatrix]
    # optional labels for basis vectors per vertex, purely informational
    labels: dict[str, list[str]] = field(default_factory=dict, repr=False)

    @property
    def vertices(self) -> list[str]:
        return self.algebra.vertices

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, arrows: tuple[str, ...], source: str) -> DomainMatrix:
        """Action of a path given in traversal order, starting from ``source``."""
        m = la.eye(self.dims[source])
        for name in arrows:
            m = la.matmul(self.action[name], m)
        return m

    def check_relations(self) -> bool:
        pres = self.algebra.presentation
        for a in pres.arrows:
            if self.action[a.name].shape != (self.dims[a.target], self.dims[a.source]):
                return False
        for rel in pres.relations:
            src, tgt = pres.endpoints(rel[0][1])
            total = la.zeros(self.dims[tgt], self.dims[src])
            for c, path in rel:
                pm = self.path_matrix(path, src)
                if 0 not in pm.shape:
                    total = total + pm * la.qq(c)
            if not la.is_zero(total):
                return False
        return True

    # -- graded subspaces ------------------------------------------------

    def zero_subspace(self) -> dict[str, la.Subspace]:
        return {v: la.Subspace(self.dims[v]) for v in self.vertices}

    def full_subspace(self, vertices=None) -> dict[str, la.Subspace]:
        vertices = self.vertices if vertices is None else vertices
        return {v: la.Subspace(self.dims[v], la.eye(self.dims[v]) if v in vertices
                               else None) for v in self.vertices}

    def generate(self, gens: dict[str, la.Subspace]) -> dict[str, la.Subspace]:
        """Smallest submodule containing the given graded subspace."""
        sub = {v: gens.get(v, la.Subspace(self.dims[v])) for v in self.vertices}
        pres = self.algebra.presentation
        changed = True
        while changed:
            changed = False
            for a in pres.arrows:
                src = sub[a.source]
                if src.dim == 0:
                    continue
                img = la.matmul(self.action[a.name], src.basis_columns())
                new = sub[a.target] + la.Subspace(self.dims[a.target], img.transpose())
                if new.dim > sub[a.target].dim:
                    sub[a.target] = new
                    changed = True
        return sub

    def radical(self) -> dict[str, la.Subspace]:
        """Sum of the images of all arrows (the arrow ideal times M)."""
        out = self.zero_subspace()
        for a in self.algebra.presentation.arrows:
            if self.dims[a.source] and self.dims[a.target]:
                img = self.action[a.name]
                out[a.target] = out[a.target] + la.Subspace(
                    self.dims[a.target], img.transpose())
        return out

    def submodule(self, sub: dict[str, la.Subspace]) -> FDModule:
        action = {}
        for a in self.algebra.presentation.arrows:
            img = la.matmul(self.action[a.name], sub[a.source].basis_columns())
            action[a.name] = sub[a.target].coords(img)
        return FDModule(self.algebra, {v: sub[v].dim for v in self.vertices}, action)

    def quotient(self, sub: dict[str, la.Subspace]) -> FDModule:
        action = {}
        for a in self.algebra.presentation.arrows:
            action[a.name] = la.matmul(
                la.matmul(sub[a.target].projection(), self.action[a.name]),
                sub[a.source].section())
        return FDModule(self.algebra, {v: self.dims[v] - sub[v].dim for v in self.vertices},
                        action)

    def top(self) -> FDModule:
        return self.quotient(self.radical())

    def top_multiplicities(self) -> dict[str, int]:
        rad = self.radical()
        return {v: self.dims[v] - rad[v].dim for v in self.vertices}


def direct_sum(mods: list[FDModule]) -> FDModule:
    alg = mods[0].algebra
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.vertices}
    action = {a.name: la.block_diag([m.action[a.name] for m in mods])
              for a in alg.presentation.arrows}
    return FDModule(alg, dims, action)


def projective(alg: BasedAlgebra, i: str) -> FDModule:
    """``A e_i``: residue paths from i, arrows acting by extending the path."""
    basis = alg.paths_from(i)
    pos = {v: {p: k for k, p in enumerate(ps)} for v, ps in basis.items()}
    action = {}
    for a in alg.presentation.arrows:
        rows, cols = len(basis[a.target]), len(basis[a.source])
        m = [[la.qq(0)] * cols for _ in range(rows)]
        for k, p in enumerate(basis[a.source]):
            arrow_path = Path(a.source, a.target, (a.name,))
            for r, c in alg.multiply(arrow_path, p).items():
                m[pos[a.target][r]][k] += c
        action[a.name] = la.matrix(m, rows, cols)
    dims = {v: len(ps) for v, ps in basis.items()}
    labels = {v: [p.label() for p in ps] for v, ps in basis.items()}
    return FDModule(alg, dims, action, labels)


def simple(alg: BasedAlgebra, i: str) -> FDModule:
    dims = {v: int(v == i) for v in alg.vertices}
    action = {a.name: la.zeros(dims[a.target], dims[a.source]) for a in alg.presentation.arrows}
    return FDModule(alg, dims, action)


def trace_ideal(alg: BasedAlgebra, i: str, through: set[str] | list[str]) -> dict[str, la.Subspace]:
    """The subspace ``sum_{j in through} A e_j A e_i`` of ``A e_i``."""
    p = projective(alg, i)
    return p.generate(p.full_subspace(set(through)))


def std_quotient(alg: BasedAlgebra, i: str, through) -> FDModule:
    """``A e_i / sum_{j in through} A e_j A e_i``."""
    p = projective(alg, i)
    return p.quotient(p.generate(p.full_subspace(set(through))))


@dataclass
class EndAlgebra:
    basis: list[dict[str, DomainMatrix]]
    radical: list[dict[str, DomainMatrix]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def radical_dimension(self) -> int:
        return len(self.radical)


def _compose(f: dict, g: dict, verts) -> dict:
    return {v: la.matmul(f[v], g[v]) for v in verts}


def end_algebra(m: FDModule) -> EndAlgebra:
    """Module endomorphisms by a linear solve; radical = kernel of the regular trace form."""
    verts = m.vertices
    offsets, n = {}, 0
    for v in verts:
        offsets[v] = n
        n += m.dims[v] ** 2

    def var(v, r, c):
        return offsets[v] + r * m.dims[v] + c

    eqs = []
    for a in m.algebra.presentation.arrows:
        x = la.entries(m.action[a.name])
        du, dv = m.dims[a.source], m.dims[a.target]
        # X phi_u - phi_v X = 0, entrywise
        for r in range(dv):
            for c in range(du):
                row = [la.qq(0)] * n
                for k in range(du):
                    if x[r][k]:
                        row[var(a.source, k, c)] += x[r][k]
                for k in range(dv):
                    if x[k][c]:
                        row[var(a.target, r, k)] -= x[k][c]
                eqs.append(row)
    system = la.matrix(eqs, len(eqs), n)
    ns = la.nullspace(system) if eqs else la.eye(n)
    vecs = la.entries(ns)

    def unflatten(vec) -> dict:
        out = {}
        for v in verts:
            d = m.dims[v]
            out[v] = la.matrix([vec[offsets[v] + r * d: offsets[v] + (r + 1) * d]
                                for r in range(d)], d, d)
        return out

    basis = [unflatten(vec) for vec in vecs]
    k = len(basis)
    if k == 0:
        return EndAlgebra([], [])
    flat_basis = la.matrix(vecs, k, n).transpose()  # n x k, columns = basis elements
    _, piv_rows = la.rref(flat_basis.transpose())
    square = flat_basis.extract(list(piv_rows), list(range(k)))
    square_inv = square.inv()

    def coords(f: dict):
        flat = []
        for v in verts:
            for row in la.entries(f[v]):
                flat.extend(row)
        col = la.matrix([[flat[p]] for p in piv_rows], k, 1)
        return la.entries(la.matmul(square_inv, col))

    # left regular representation: L_i[:, j] = coords(b_i b_j)
    regular = []
    for bi in basis:
        cols = [coords(_compose(bi, bj, verts)) for bj in basis]
        regular.append(la.matrix([[cols[j][r][0] for j in range(k)] for r in range(k)], k, k))
    gram = [[_trace(la.matmul(regular[i], regular[j])) for j in range(k)] for i in range(k)]
    rad_vecs = la.entries(la.nullspace(la.matrix(gram, k, k)))
    radical = []
    for cvec in rad_vecs:
        f = {v: la.zeros(m.dims[v], m.dims[v]) for v in verts}
        for c, b in zip(cvec, basis):
            if c:
                f = {v: f[v] + b[v] * c if m.dims[v] else f[v] for v in verts}
        radical.append(f)
    return EndAlgebra(basis, radical)


def _trace(mat: DomainMatrix):
    rows = la.entries(mat)
    return sum((rows[i][i] for i in range(len(rows))), la.qq(0))


def end_dimensions(m: FDModule) -> tuple[int, int]:
    e = end_algebra(m)
    return e.dimension, e.radical_dimension


def bar_module(m: FDModule) -> FDModule:
    """``M / rad(End M) M``."""
    e = end_algebra(m)
    gens = m.zero_subspace()
    for f in e.radical:
        for v in m.vertices:
            if m.dims[v]:
                gens[v] = gens[v] + la.Subspace(m.dims[v], f[v].transpose())
    return m.quotient(m.generate(gens))
