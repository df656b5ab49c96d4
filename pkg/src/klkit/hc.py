"""Evaluate ``sum_k d_k a_{ki} a_{kj}`` on Kazhdan-Lusztig-Vogan data read from a file.

Here ``a_{ij}(t) = t^{l(j)-l(i)} p_{ij}(t^-2)`` with l the orbit dimension and
``d_k = (1 - t^2)^{dim a_k}``. KLV polynomials are inputs; nothing here computes them.
The formula is only expected to hold for equal-rank groups; datasets carry no
rank information, so that hypothesis is the caller's responsibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .coxeter import CoxeterSystem
from .poly import IntPoly, LaurentPoly

_DATA = Path(__file__).resolve().parent / "data"


class KLVError(ValueError):
    pass


@dataclass(frozen=True)
class Param:
    id: str
    orbit_dim: int
    dim_a: int


@dataclass
class KLVDataset:
    params: list[Param]
    polys: dict[tuple[str, str], IntPoly] = field(default_factory=dict)

    def __post_init__(self):
        ids = [p.id for p in self.params]
        if len(set(ids)) != len(ids):
            raise KLVError("duplicate parameter id")
        self.by_id = {p.id: p for p in self.params}
        for (i, j), p in self.polys.items():
            if i not in self.by_id or j not in self.by_id:
                raise KLVError(f"polynomial ({i}, {j}) refers to an unknown parameter")
            if p and self.by_id[i].orbit_dim > self.by_id[j].orbit_dim:
                raise KLVError(f"p({i}, {j}) is nonzero but orbit dimension decreases")
        for prm in self.params:
            if self.poly(prm.id, prm.id) != IntPoly([1]):
                raise KLVError(f"p({prm.id}, {prm.id}) must be 1")

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.params]

    def poly(self, i: str, j: str) -> IntPoly:
        return self.polys.get((i, j), IntPoly())

    @classmethod
    def from_json(cls, obj: dict) -> KLVDataset:
        try:
            params = []
            for p in obj["params"]:
                od, da = p["orbitDim"], p["dimA"]
                if not (isinstance(od, int) and isinstance(da, int)) or od < 0 or da < 0:
                    raise KLVError(f"parameter {p.get('id')!r}: dimensions must be "
                                   "non-negative integers")
                params.append(Param(str(p["id"]), od, da))
            polys: dict[tuple[str, str], IntPoly] = {}
            for entry in obj.get("polys", []):
                key = (str(entry["from"]), str(entry["to"]))
                if key in polys:
                    raise KLVError(f"duplicate polynomial for {key}")
                coeffs = entry["coeffs"]
                if not all(isinstance(c, int) for c in coeffs):
                    raise KLVError(f"coefficients of {key} must be integers")
                polys[key] = IntPoly(coeffs)
        except (KeyError, TypeError) as exc:
            raise KLVError(f"malformed KLV dataset: {exc!r}") from exc
        return cls(params, polys)

    def to_json(self) -> dict:
        return {
            "params": [{"id": p.id, "orbitDim": p.orbit_dim, "dimA": p.dim_a}
                       for p in self.params],
            "polys": [{"from": i, "to": j, "coeffs": list(p.coeffs)}
                      for (i, j), p in self.polys.items() if p],
        }


def load_klv(path) -> KLVDataset:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise KLVError(f"{path}: not valid JSON ({exc})") from exc
    return KLVDataset.from_json(obj)


def sample_sl2r() -> KLVDataset:
    """Hand-encoded rank-one sample: two discrete series on closed orbits, one principal series."""
    return load_klv(_DATA / "sl2r_klv.json")


def weyl_dataset(system: CoxeterSystem) -> KLVDataset:
    """Category-O data of a Weyl group as a dataset: orbit dim = length, all dim a = 0."""
    from .kl import kl_table
    from .coxeter import format_word

    table = kl_table(system)
    words = system.canonical_words()
    ids = [format_word(w) for w in words]
    params = [Param(ids[i], table.length(i), 0) for i in range(len(ids))]
    polys = {}
    for x in range(len(ids)):
        for y in range(len(ids)):
            p = table[x, y]
            if p:
                polys[ids[x], ids[y]] = p
    return KLVDataset(params, polys)


def a_tilde(ds: KLVDataset, i: str, j: str) -> LaurentPoly:
    p = ds.poly(i, j)
    if not p:
        return LaurentPoly()
    shift = ds.by_id[j].orbit_dim - ds.by_id[i].orbit_dim
    return LaurentPoly.from_terms({shift - 2 * m: c for m, c in enumerate(p.coeffs) if c})


def d_tilde(ds: KLVDataset, k: str) -> IntPoly:
    return IntPoly([1, 0, -1]) ** ds.by_id[k].dim_a


@dataclass
class HCResult:
    ids: list[str]
    table: dict[tuple[str, str], LaurentPoly]
    warnings: list[str]

    def matrix(self) -> list[list[LaurentPoly]]:
        return [[self.table[i, j] for j in self.ids] for i in self.ids]


def weighted_ext_table(ds: KLVDataset) -> HCResult:
    ids = ds.ids
    a = {(i, j): a_tilde(ds, i, j) for i in ids for j in ids}
    d = {k: d_tilde(ds, k) for k in ids}
    table: dict[tuple[str, str], LaurentPoly] = {}
    warnings = []
    for i in ids:
        for j in ids:
            total = LaurentPoly()
            for k in ids:
                if a[k, i] and a[k, j]:
                    total = total + d[k] * a[k, i] * a[k, j]
            table[i, j] = total
            if any(c < 0 for c in total.coeffs):
                warnings.append(f"({i}, {j}): negative coefficient in {total}")
            if not total.is_polynomial():
                warnings.append(f"({i}, {j}): negative exponent in {total}")
    return HCResult(ids, table, warnings)


def diagonal_constant_terms(ds: KLVDataset, result: HCResult) -> dict[str, dict]:
    """Per parameter: does RHS_ii have constant term 1, and are all contributing a_{ki} (k != i)
    free of a constant term? Reported, never assumed."""
    out = {}
    for i in ds.ids:
        positive = all(
            min(a_tilde(ds, k, i).terms()) > 0 for k in ds.ids
            if k != i and a_tilde(ds, k, i))
        out[i] = {"constantTermOne": result.table[i, i].coefficient(0) == 1,
                  "offDiagonalStrictlyPositive": positive}
    return out
