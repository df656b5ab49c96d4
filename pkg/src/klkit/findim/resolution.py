"""Minimal projective resolutions, Ext Poincare series and projective dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy.polys.matrices import DomainMatrix

from .. import linalg as la
from ..poly import IntPoly
from .algebra import BasedAlgebra
from .modules import FDModule, direct_sum, projective, simple

DEFAULT_RESOLUTION_CAP = 20


class ResolutionTruncated(RuntimeError):
    def __init__(self, cap: int, resolution: ProjResolution):
        super().__init__(f"minimal resolution did not terminate within {cap} terms")
        self.cap = cap
        self.resolution = resolution


@dataclass
class ProjResolution:
    """``... -> P_1 -> P_0 -> M -> 0`` with term k = sum_j P_j^{terms[k][j]}."""

    module: FDModule
    terms: list[dict[str, int]] = field(default_factory=list)
    # differentials[k]: P_k -> P_{k-1} (k >= 1); differentials[0]: P_0 -> M, per vertex
    differentials: list[dict[str, DomainMatrix]] = field(default_factory=list)
    projectives: list[FDModule] = field(default_factory=list)
    kernel_dims: list[tuple[int, ...]] = field(default_factory=list)
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def multiplicity(self, k: int, j: str) -> int:
        return self.terms[k][j] if k < len(self.terms) else 0

    def euler_characteristic(self) -> tuple[int, ...]:
        verts = self.module.vertices
        out = [0] * len(verts)
        for k, p in enumerate(self.projectives):
            for idx, v in enumerate(verts):
                out[idx] += (-1) ** k * p.dims[v]
        return tuple(out)


def projective_cover(n: FDModule) -> tuple[FDModule, dict[str, int], dict[str, DomainMatrix]]:
    """The projective cover P -> N, built on a complement of rad N at each vertex."""
    alg = n.algebra
    rad = n.radical()
    pieces, mult = [], {}
    gens = []  # (vertex j, generator column in N_j)
    for j in alg.vertices:
        comp = rad[j].complement_indices()
        mult[j] = len(comp)
        for c in comp:
            gens.append((j, c))
            pieces.append(projective(alg, j))
    if not pieces:
        zero = FDModule(alg, {v: 0 for v in alg.vertices},
                        {a.name: la.zeros(0, 0) for a in alg.presentation.arrows})
        return zero, mult, {v: la.zeros(n.dims[v], 0) for v in alg.vertices}
    cover = direct_sum(pieces)
    # map each basis path p of P_j (copy for generator g) to p . g in N
    phi = {}
    for v in alg.vertices:
        cols = []
        for j, c in gens:
            for p in alg.paths_from(j)[v]:
                vec = n.path_matrix(p.arrows, j)
                cols.append([row[c] for row in la.entries(vec)] if n.dims[v] else [])
        phi[v] = la.matrix([[col[r] for col in cols] for r in range(n.dims[v])],
                           n.dims[v], len(cols))
    return cover, mult, phi


def minimal_resolution(m: FDModule, cap: int = DEFAULT_RESOLUTION_CAP,
                       raise_on_truncation: bool = True) -> ProjResolution:
    res = ProjResolution(m)
    current = m
    embed = None  # inclusion of `current` into the previous projective, per vertex
    for k in range(cap + 1):
        cover, mult, phi = projective_cover(current)
        res.terms.append(mult)
        res.projectives.append(cover)
        if embed is None:
            res.differentials.append(phi)
        else:
            res.differentials.append({v: la.matmul(embed[v], phi[v]) for v in m.vertices})
        kernel = {v: la.Subspace(cover.dims[v], la.nullspace(phi[v])
                                 if cover.dims[v] else None) for v in m.vertices}
        res.kernel_dims.append(tuple(kernel[v].dim for v in m.vertices))
        if all(kernel[v].dim == 0 for v in m.vertices):
            return res
        embed = {v: kernel[v].basis_columns() for v in m.vertices}
        current = cover.submodule(kernel)
    res.truncated = True
    if raise_on_truncation:
        raise ResolutionTruncated(cap, res)
    return res


def ext_series(m: FDModule | ProjResolution, j: str, cap: int = DEFAULT_RESOLUTION_CAP) -> IntPoly:
    """Poincare series of Ext(M, L_j): coefficient k = multiplicity of P_j in term k."""
    res = m if isinstance(m, ProjResolution) else minimal_resolution(m, cap)
    if res.truncated:
        raise ResolutionTruncated(cap, res)
    return IntPoly(t[j] for t in res.terms)


def projective_dimension(alg: BasedAlgebra, i: str, cap: int = DEFAULT_RESOLUTION_CAP) -> int:
    return minimal_resolution(simple(alg, i), cap).length


def derived_order(alg: BasedAlgebra, cap: int = DEFAULT_RESOLUTION_CAP):
    """Projective dimensions and the order generated by i < j when
    pd(j) = pd(i) + 1 and Ext^1(L_j, L_i) != 0.

    Returns ``(pd, leq)`` with ``leq[i][j]`` true when i <= j.
    """
    res = {v: minimal_resolution(simple(alg, v), cap) for v in alg.vertices}
    pd = {v: r.length for v, r in res.items()}
    verts = alg.vertices
    leq = {i: {j: i == j for j in verts} for i in verts}
    for i in verts:
        for j in verts:
            if pd[j] == pd[i] + 1 and res[j].multiplicity(1, i):
                leq[i][j] = True
    for k in verts:  # transitive closure
        for i in verts:
            if leq[i][k]:
                for j in verts:
                    if leq[k][j]:
                        leq[i][j] = True
    return pd, leq
