"""Quivers with homogeneous relations and the finite-dimensional algebras they present.

Paths are arrow-name tuples in traversal order. ``p o q`` means: traverse q,
then p. The left module ``A e_i`` is spanned by the residue paths starting at i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FsPath
from typing import NamedTuple

from .. import linalg as la


class PresentationError(ValueError):
    pass


class NotFiniteDimensional(PresentationError):
    def __init__(self, degree: int):
        super().__init__(f"algebra has nonzero paths in degree {degree}; "
                         "not finite-dimensional within maxDeg")
        self.degree = degree


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "e_" + self.source if not self.arrows else "".join(
            a if len(a) == 1 else f"[{a}]" for a in self.arrows)


Term = tuple[Fraction, tuple[str, ...]]


@dataclass
class AlgebraPresentation:
    vertices: list[str]
    arrows: list[Arrow]
    relations: list[list[Term]] = field(default_factory=list)

    def __post_init__(self):
        self.vertices = [str(v) for v in self.vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex")
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows]
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("arrow names must be unique")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise PresentationError(f"arrow {a.name} has an unknown endpoint")
        self.arrow = {a.name: a for a in self.arrows}
        self.relations = [[(Fraction(c), tuple(p)) for c, p in rel] for rel in self.relations]
        for k, rel in enumerate(self.relations):
            self._check_relation(k, rel)

    def _check_relation(self, k: int, rel: list[Term]):
        if not rel:
            raise PresentationError(f"relation {k} is empty")
        shapes = set()
        for _, path in rel:
            if not path:
                raise PresentationError(f"relation {k} contains a trivial path")
            shapes.add((*self.endpoints(path), len(path)))
        if len(shapes) != 1:
            raise PresentationError(
                f"relation {k} is not homogeneous (terms differ in source, target or length)")
        if next(iter(shapes))[2] < 2:
            raise PresentationError(f"relation {k} has length < 2; ideal is not admissible")

    def endpoints(self, path: tuple[str, ...]) -> tuple[str, str]:
        for name in path:
            if name not in self.arrow:
                raise PresentationError(f"unknown arrow {name!r}")
        for a, b in zip(path, path[1:]):
            if self.arrow[a].target != self.arrow[b].source:
                raise PresentationError(f"arrows {a} and {b} do not compose")
        return self.arrow[path[0]].source, self.arrow[path[-1]].target

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    @classmethod
    def from_json(cls, obj: dict) -> AlgebraPresentation:
        try:
            arrows = [Arrow(str(a["name"]), str(a["from"]), str(a["to"])) for a in obj["arrows"]]
            rels = [[(Fraction(str(t.get("coeff", "1"))), tuple(t["path"])) for t in rel]
                    for rel in obj.get("relations", [])]
            return cls(list(obj["vertices"]), arrows, rels)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, PresentationError):
                raise
            raise PresentationError(f"malformed presentation: {exc}") from exc

    @classmethod
    def load(cls, path) -> AlgebraPresentation:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": [[{"coeff": str(c), "path": list(p)} for c, p in rel]
                          for rel in self.relations],
        }


_DATA = FsPath(__file__).resolve().parent.parent / "data"


def preset(name: str) -> AlgebraPresentation:
    """Shipped presentations: ``"sl2"`` (regular block of category O for sl2),
    ``"loop_x2"`` (one loop with x^2 = 0) and ``"semisimple2"`` (two vertices, no arrows)."""
    return AlgebraPresentation.load(_DATA / f"{name}.json")


class BasedAlgebra:
    """A presentation together with a residue-path basis and its multiplication."""

    def __init__(self, pres: AlgebraPresentation, max_deg: int = 32):
        self.presentation = pres
        self.vertices = pres.vertices
        self._reduce: dict[int, dict[tuple[str, str], tuple]] = {}
        self.basis_by_degree: list[list[Path]] = []
        self._build(max_deg)
        self.basis: list[Path] = [p for layer in self.basis_by_degree for p in layer]
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.dimension = len(self.basis)
        self.top_degree = len(self.basis_by_degree) - 1
        self._nf_cache: dict[tuple[str, ...], dict[Path, object]] = {}

    @property
    def degree_dims(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.basis_by_degree)

    def paths_of_length(self, d: int) -> dict[tuple[str, str], list[tuple[str, ...]]]:
        """All paths of length d in the free path algebra, grouped by (source, target)."""
        groups: dict[tuple[str, str], list[tuple[str, ...]]] = {}
        if d == 0:
            return groups
        frontier = [(a.name,) for a in self.presentation.arrows]
        for _ in range(d - 1):
            frontier = [p + (b.name,) for p in frontier for b in self.presentation.arrows
                        if self.presentation.arrow[p[-1]].target == b.source]
        for p in sorted(frontier):
            groups.setdefault(self.presentation.endpoints(p), []).append(p)
        return groups

    def _build(self, max_deg: int):
        pres = self.presentation
        self.basis_by_degree.append([Path(v, v, ()) for v in pres.vertices])
        prev_ideal: dict[tuple[str, str], list[dict[tuple, Fraction]]] = {}
        for d in range(1, max_deg + 1):
            groups = self.paths_of_length(d)
            gens: dict[tuple[str, str], list[dict]] = {}
            for rel in pres.relations:
                if len(rel[0][1]) == d:
                    vec: dict = {}
                    for c, p in rel:
                        vec[p] = vec.get(p, 0) + c
                    gens.setdefault(pres.endpoints(rel[0][1]), []).append(vec)
            # I_d = R_d + arrows * I_{d-1} + I_{d-1} * arrows
            for (src, tgt), vecs in prev_ideal.items():
                for vec in vecs:
                    for b in pres.arrows:
                        if b.source == tgt:
                            gens.setdefault((src, b.target), []).append(
                                {p + (b.name,): c for p, c in vec.items()})
                        if b.target == src:
                            gens.setdefault((b.source, tgt), []).append(
                                {(b.name,) + p: c for p, c in vec.items()})
            layer: list[Path] = []
            ideal: dict[tuple[str, str], list[dict]] = {}
            reduce: dict[tuple[str, str], tuple] = {}
            for st in sorted(groups, key=lambda st: (pres.vertex_index(st[0]),
                                                     pres.vertex_index(st[1]))):
                paths = groups[st]
                pos = {p: k for k, p in enumerate(paths)}
                rows = [[vec.get(p, 0) for p in paths] for vec in gens.get(st, [])]
                sub = la.Subspace(len(paths), la.matrix(rows, len(rows), len(paths)))
                ideal[st] = [{paths[j]: la.to_fraction(c) for j, c in enumerate(row) if c}
                             for row in la.entries(sub.basis)]
                residue = [paths[j] for j in sub.complement_indices()]
                layer.extend(Path(st[0], st[1], p) for p in residue)
                reduce[st] = (pos, sub)
            self._reduce[d] = reduce
            if not layer:
                return
            self.basis_by_degree.append(layer)
            prev_ideal = ideal
        raise NotFiniteDimensional(max_deg)

    def normal_form(self, arrows: tuple[str, ...], source: str | None = None) -> dict[Path, object]:
        """Expand a path (traversal order) in the residue basis; trivial paths need ``source``."""
        if not arrows:
            return {Path(source, source, ()): la.qq(1)}
        hit = self._nf_cache.get(arrows)
        if hit is not None:
            return hit
        d = len(arrows)
        src, tgt = self.presentation.endpoints(arrows)
        out: dict[Path, object] = {}
        if d <= self.top_degree:
            pos, sub = self._reduce[d][(src, tgt)]
            paths = list(pos)
            vec = la.matrix([[int(p == arrows)] for p in paths], len(paths), 1)
            proj = la.matmul(sub.projection(), vec)
            comp = sub.complement_indices()
            for k, row in enumerate(la.entries(proj)):
                if row[0]:
                    out[Path(src, tgt, paths[comp[k]])] = row[0]
        self._nf_cache[arrows] = out
        return out

    def multiply(self, p: Path, q: Path) -> dict[Path, object]:
        """``p o q`` (traverse q, then p) in the residue basis."""
        if q.target != p.source:
            return {}
        if not q.arrows:
            return {p: la.qq(1)}
        if not p.arrows:
            return {q: la.qq(1)}
        return self.normal_form(q.arrows + p.arrows)

    def structure_constants(self) -> dict[tuple[int, int], dict[int, object]]:
        out = {}
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                prod = self.multiply(p, q)
                if prod:
                    out[i, j] = {self.basis_index[r]: c for r, c in prod.items()}
        return out

    def paths_from(self, i: str) -> dict[str, list[Path]]:
        """Residue basis of ``A e_i`` grouped by target vertex."""
        out: dict[str, list[Path]] = {v: [] for v in self.vertices}
        for p in self.basis:
            if p.source == i:
                out[p.target].append(p)
        return out


def build_algebra(pres: AlgebraPresentation, max_deg: int = 32) -> BasedAlgebra:
    return BasedAlgebra(pres, max_deg=max_deg)
