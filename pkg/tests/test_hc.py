import json

import pytest

from klkit import IntPoly, LaurentPoly, build_system
from klkit.delorme import ext_ll_table
from klkit.hc import (KLVDataset, KLVError, a_tilde, weighted_ext_table, d_tilde,
                      diagonal_constant_terms, load_klv, sample_sl2r, weyl_dataset)


def dataset(params, polys):
    return KLVDataset.from_json({
        "params": [{"id": i, "orbitDim": od, "dimA": da} for i, od, da in params],
        "polys": [{"from": i, "to": j, "coeffs": c} for i, j, c in polys],
    })


def test_sample_loads():
    ds = sample_sl2r()
    assert ds.ids == ["ds+", "ds-", "ps"]
    assert [(p.orbit_dim, p.dim_a) for p in ds.params] == [(0, 0), (0, 0), (1, 1)]
    assert ds.poly("ds+", "ps") == IntPoly([1])
    assert ds.poly("ds+", "ds-") == IntPoly()


def test_sample_table():
    res = weighted_ext_table(sample_sl2r())
    t = res.table
    one = LaurentPoly(0, [1])
    assert t["ds+", "ds+"] == t["ds-", "ds-"] == one
    assert t["ps", "ps"] == LaurentPoly(0, [1, 0, 1])
    assert t["ds+", "ps"] == t["ds-", "ps"] == LaurentPoly(1, [1])
    assert t["ds+", "ds-"] == LaurentPoly()
    assert res.warnings == []


def test_twist_and_weight_factors():
    ds = sample_sl2r()
    assert a_tilde(ds, "ps", "ps") == LaurentPoly(0, [1])
    assert a_tilde(ds, "ds+", "ps") == LaurentPoly(1, [1])
    assert a_tilde(ds, "ps", "ds+") == LaurentPoly()
    assert d_tilde(ds, "ds+") == IntPoly([1])
    assert d_tilde(ds, "ps") == IntPoly([1, 0, -1])
    two = dataset([("k", 0, 2)], [("k", "k", [1])])
    assert d_tilde(two, "k") == IntPoly([1, 0, -2, 0, 1])


def test_validation_errors():
    with pytest.raises(KLVError):
        dataset([("i", 0, 0)], [])
    with pytest.raises(KLVError):
        dataset([("i", 0, 0)], [("i", "i", [1]), ("i", "j", [1])])
    with pytest.raises(KLVError):
        dataset([("i", 0, -1)], [("i", "i", [1])])
    with pytest.raises(KLVError):
        dataset([("i", 1, 0), ("j", 0, 0)], [("i", "i", [1]), ("j", "j", [1]), ("i", "j", [1])])
    with pytest.raises(KLVError):
        KLVDataset.from_json({"params": [{"id": "i"}]})


def test_empty_dataset():
    res = weighted_ext_table(dataset([], []))
    assert res.ids == [] and res.table == {} and res.warnings == []


def test_warnings():
    neg = weighted_ext_table(dataset([("k", 0, 2)], [("k", "k", [1])]))
    assert any("negative coefficient" in w for w in neg.warnings)
    exps = weighted_ext_table(dataset([("i", 0, 0), ("j", 1, 0)],
                                     [("i", "i", [1]), ("j", "j", [1]), ("i", "j", [1, 1])]))
    assert any("negative exponent" in w for w in exps.warnings)


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_weyl_data_reduces_to_ext_between_simples(name):
    system = build_system(name)
    res = weighted_ext_table(weyl_dataset(system))
    expected = ext_ll_table(system)
    got = res.matrix()
    assert all(got[i][j] == LaurentPoly.from_intpoly(expected[i][j])
               for i in range(len(expected)) for j in range(len(expected)))
    assert res.warnings == []


@pytest.mark.parametrize("ds", [sample_sl2r(), weyl_dataset(build_system("B2"))])
def test_symmetry_and_diagonal_report(ds):
    res = weighted_ext_table(ds)
    for i in ds.ids:
        for j in ds.ids:
            assert res.table[i, j] == res.table[j, i]
    report = diagonal_constant_terms(ds, res)
    for i, row in report.items():
        if row["offDiagonalStrictlyPositive"]:
            assert row["constantTermOne"]


def test_json_round_trip(tmp_path):
    ds = sample_sl2r()
    path = tmp_path / "klv.json"
    path.write_text(json.dumps(ds.to_json()))
    again = load_klv(path)
    assert again.to_json() == ds.to_json()
    path.write_text("{not json")
    with pytest.raises(KLVError):
        load_klv(path)
