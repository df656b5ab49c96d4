import pytest

from klkit import IntPoly, build_system
from klkit.coxeter import CoxeterSystem, OrderCapExceeded
from klkit.kl import kl_oracle, kl_polynomial, kl_table, mu, r_polynomial

ORACLE_TYPES = ["A1", "A1xA1", "A2", "B2", "G2", "A3", "B3"]
ONE = IntPoly([1])


@pytest.fixture(scope="module", params=ORACLE_TYPES)
def table(request):
    return kl_table(build_system(request.param))


def test_r_polynomial_examples():
    a1 = build_system("A1")
    e, s = a1.enumerate()
    assert r_polynomial(a1, e, s) == IntPoly([-1, 1])
    assert r_polynomial(a1, s, s) == ONE
    assert r_polynomial(a1, s, e) == IntPoly()


def test_kl_examples():
    a2 = build_system("A2")
    assert kl_polynomial(a2, a2.identity, a2.longest_element()) == ONE
    a3 = build_system("A3")
    y = a3.from_word([2, 1, 3, 2])
    assert kl_polynomial(a3, a3.identity, y) == IntPoly([1, 1])
    assert kl_polynomial(a3, a3.from_word([2]), y) == IntPoly([1, 1])
    assert kl_polynomial(a3, y, y) == ONE
    assert kl_polynomial(a3, y, a3.identity) == IntPoly()
    assert mu(a3, a3.identity, y) == 0
    a1 = build_system("A1")
    assert mu(a1, a1.identity, a1.from_word([1])) == 1
    assert mu(a1, a1.identity, a1.identity) == 0


def test_oracle_examples():
    a2 = build_system("A2")
    vals = kl_oracle(a2, a2.longest_element())
    assert len(vals) == 6 and set(vals.values()) == {ONE}
    a3 = build_system("A3")
    vals = kl_oracle(a3, a3.from_word([2, 1, 3, 2]))
    assert vals[a3.identity] == IntPoly([1, 1])
    assert vals[a3.from_word([2])] == IntPoly([1, 1])


def test_a1_table():
    t = kl_table(build_system("A1"))
    assert t[0, 0] == t[1, 1] == t[0, 1] == ONE
    assert t[1, 0] == IntPoly()


def test_a2_all_comparable_pairs_are_one():
    t = kl_table(build_system("A2"))
    vals = [t[x, y] for x in range(6) for y in range(6) if t.leq(x, y)]
    # comparable pairs in S3: 6 above e, 4 above each s_i, 2 above each length-2 element, 1
    assert len(vals) == 6 + 4 + 4 + 2 + 2 + 1
    assert set(vals) == {ONE}


def test_a3_nonconstant_pairs():
    # singular Schubert varieties of S4 sit at 3412 = s2s1s3s2 and 4231 = s1s2s3s2s1
    a3 = build_system("A3")
    t = kl_table(a3)
    found = {(a3.reduced_word(t.elements[x]), a3.reduced_word(t.elements[y]))
             for x in range(24) for y in range(24) if t[x, y].degree > 0}
    assert found == {((), (2, 1, 3, 2)), ((2,), (2, 1, 3, 2)),
                     ((), (1, 2, 3, 2, 1)), ((1,), (1, 2, 3, 2, 1)),
                     ((3,), (1, 2, 3, 2, 1)), ((1, 3), (1, 2, 3, 2, 1))}
    assert all(t[x, y] in (ONE, IntPoly([1, 1])) for x in range(24) for y in range(24)
               if t.leq(x, y))


def test_oracle_equivalence(table):
    system = table.system
    for y in table.elements:
        oracle = kl_oracle(system, y)
        for x in table.elements:
            assert table[x, y] == oracle.get(x, IntPoly())


def test_support_degree_and_constant_term(table):
    n = len(table)
    for x in range(n):
        for y in range(n):
            p = table[x, y]
            assert bool(p) == table.leq(x, y)
            if p:
                assert p.coefficient(0) == 1
                assert all(c >= 0 for c in p.coeffs)
                if x != y:
                    assert 2 * p.degree < table.length(y) - table.length(x)
                else:
                    assert p == ONE


def test_r_polynomial_shape(table):
    n = len(table)
    for x in range(n):
        for y in range(n):
            r = table.r(x, y)
            if not table.leq(x, y):
                assert r == IntPoly()
                continue
            d = table.length(y) - table.length(x)
            assert r.degree == d
            assert r.coefficient(d) == 1
            assert r.coefficient(0) == (-1) ** d


def test_r_polynomial_inversion(table):
    n = len(table)
    for x in range(n):
        for y in range(n):
            total = IntPoly()
            for z in range(n):
                if table.leq(x, z) and table.leq(z, y):
                    sign = (-1) ** (table.length(x) + table.length(z))
                    total = total + (table.r(x, z) * table.r(z, y)).scale(sign)
            assert total == (ONE if x == y else IntPoly())


def test_mu_is_top_coefficient(table):
    n = len(table)
    for x in range(n):
        for y in range(n):
            d = table.length(y) - table.length(x)
            expected = table[x, y].coefficient((d - 1) // 2) if d > 0 and d % 2 else 0
            assert table.mu(x, y) == expected


@pytest.mark.parametrize("name", ORACLE_TYPES)
def test_choice_independence(name):
    a = kl_table(CoxeterSystem(name), policy="smallest").matrix()
    b = kl_table(CoxeterSystem(name), policy="largest").matrix()
    assert a == b


def test_thread_count_does_not_change_results():
    one = kl_table(CoxeterSystem("A4"), threads=1).matrix()
    many = kl_table(CoxeterSystem("A4"), threads=4).matrix()
    assert one == many


def test_single_pair_beyond_whole_group_cap():
    system = CoxeterSystem("A5", order_cap=100)
    w0 = system.longest_element()
    assert kl_polynomial(system, system.identity, w0) == ONE
    with pytest.raises(OrderCapExceeded):
        kl_table(system)


def test_single_pair_agrees_with_table():
    big = CoxeterSystem("B3", order_cap=10)
    full = kl_table(build_system("B3"))
    for y in full.elements[::7]:
        y_big = big.from_matrix(y.matrix)
        for x in full.elements[::5]:
            assert kl_polynomial(big, big.from_matrix(x.matrix), y_big) == full[x, y]
