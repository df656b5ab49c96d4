import pytest

from klkit import IntPoly, build_system
from klkit.delorme import (TransitionMatrix, characters_matrix, delorme_poly, delorme_table,
                           ext_ll_table, ext_series_ll, kl_inversion_matrix, verify_kl_structure,
                           verma_in_simples)
from klkit.kl import kl_table

TYPES = ["A1", "A1xA1", "A2", "B2", "G2", "A3", "B3"]


def test_delorme_examples():
    a1 = build_system("A1")
    e, s = a1.enumerate()
    assert delorme_poly(a1, e, s) == IntPoly([0, 1])
    assert delorme_poly(a1, s, s) == IntPoly([1])
    assert delorme_poly(a1, s, e) == IntPoly()
    a3 = build_system("A3")
    y = a3.from_word([2, 1, 3, 2])
    assert delorme_poly(a3, a3.identity, y) == IntPoly([0, 0, 1, 0, 1])


def test_characters_examples():
    a1 = characters_matrix(build_system("A1"))
    assert a1.entries == [[1, -1], [0, 1]]
    assert verma_in_simples(build_system("A1")).entries == [[1, 1], [0, 1]]
    a2 = characters_matrix(build_system("A2"))
    assert a2[0, 5] == -1
    assert all(a2[i, i] == 1 for i in range(6))


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_verma_multiplicities_non_negative(name):
    inv = verma_in_simples(build_system(name))
    assert all(v >= 0 for row in inv.entries for v in row)


def test_ext_ll_examples():
    a1 = build_system("A1")
    e, s = a1.enumerate()
    assert ext_series_ll(a1, s, s) == IntPoly([1, 0, 1])
    assert ext_series_ll(a1, e, s) == IntPoly([0, 1])
    assert ext_series_ll(a1, e, e) == IntPoly([1])


@pytest.mark.parametrize("name", TYPES)
def test_twist_values(name):
    system = build_system(name)
    dt = delorme_table(system)
    n = len(dt.a)
    for x in range(n):
        for y in range(n):
            gap = dt.kl.length(y) - dt.kl.length(x)
            p = dt.kl[x, y]
            assert dt.a[x][y](1) == p(1)
            assert dt.a[x][y](-1) == (-1) ** gap * p(1)


@pytest.mark.parametrize("name", TYPES)
def test_characters_matrix_inversion(name):
    system = build_system(name)
    chars = characters_matrix(system)
    inv = chars.inverse()
    ident = TransitionMatrix.identity(chars.elements)
    assert chars.is_unitriangular()
    assert all(isinstance(v, int) for row in inv.entries for v in row)
    assert chars @ inv == ident and inv @ chars == ident
    assert inv.inverse() == chars
    assert inv == verma_in_simples(system)


@pytest.mark.parametrize("name", TYPES)
def test_inverse_matches_kl_inversion(name):
    system = build_system(name)
    assert characters_matrix(system).inverse() == kl_inversion_matrix(system)


def test_signed_inversion_variant_is_not_the_inverse():
    # inserting (-1)^{l(y)-l(x)} into P_{w0 y, w0 x}(1) already fails in A1: it would give M_s = L_s - L_e
    system = build_system("A1")
    table = kl_table(system)
    w0 = system.longest_element()
    flip = [table._ix(system.multiply(w0, w)) for w in table.elements]
    signed = [[(-1) ** (table.length(y) - table.length(x)) * table[flip[y], flip[x]](1)
               for y in range(2)] for x in range(2)]
    assert signed != characters_matrix(system).inverse().entries


@pytest.mark.parametrize("name", TYPES)
def test_ext_ll_properties(name):
    system = build_system(name)
    table = ext_ll_table(system)
    dt = delorme_table(system)
    n = len(table)
    for x in range(n):
        assert table[0][x] == dt.a[0][x]
        for y in range(n):
            p = table[x][y]
            assert p == table[y][x]
            assert (p.coefficient(0) == 1) == (x == y)
            assert all(c >= 0 for c in p.coeffs)
    elems = dt.elements
    for x in range(0, n, 3):
        for y in range(0, n, 2):
            assert ext_series_ll(system, elems[x], elems[y]) == table[x][y]


@pytest.mark.parametrize("name", TYPES)
def test_structural_report(name):
    report = verify_kl_structure(build_system(name))
    assert report["pass"]
    assert set(report["properties"]) == {"1", "2", "3", "4"}
    n = build_system(name).order
    assert report["pairs"] == n * n


def test_non_unitriangular_matrix_detected():
    a1 = build_system("A1")
    bad = TransitionMatrix(a1.enumerate(), [[1, 0], [1, 1]])
    assert not bad.is_unitriangular()
    with pytest.raises(ValueError):
        bad.inverse()
