import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiext import semigroup as sg
from semiext.enumeration import enumerate_semigroups
from semiext.errors import CapExceededError, ClosureError, InputError
from semiext.extension import (
    analyze_extension,
    analyze_lattice_extension,
    build_extension,
    check_closure,
    extension_nm_clifford,
    hasse_covers,
    is_regular_in_upsilon,
    join_of,
    non_regular_witness,
    power,
    product,
    product_literal,
    tensor_product,
)
from semiext.semigroup import CayleyTable
from semiext.upfamily import (
    delta3,
    enumerate_space,
    in_space,
    is_subfamily,
    named_lambda4_elements,
    point,
    up_closure,
)

VEE = sg.vee()
F = up_closure([{1, 2}], 3)
L = up_closure([{1, 2}, {0, 1}, {0, 2}], 3)
A22 = up_closure([{1, 2}], 3)
B22 = up_closure([{1, 0}, {2, 0}], 3)

SMALL = [t for n in (1, 2, 3) for t in enumerate_semigroups(n, "all")]
ORDER4 = [sg.chain(4), sg.left_zero(4), sg.right_zero(4), sg.bush(1, 1, 1), sg.diamond()]


def literal_set_product(a_set, b_set, t):
    return {t(x, y) for x in a_set for y in b_set}


def elems(m):
    return {x for x in range(8) if m >> x & 1}


# -- products -------------------------------------------------------------------


def test_witness_products_on_vee():
    assert product(F, F, VEE) == up_closure([{0, 1, 2}], 3)
    assert product(F, F, VEE) != F
    assert power(F, 3, VEE) == product(F, F, VEE)
    assert product(L, L, VEE) == up_closure([{0}], 3)
    assert product(L, L, VEE) != L
    assert power(L, 3, VEE) == product(L, L, VEE)


def test_noncommuting_linked_pair():
    ab = product(A22, B22, VEE)
    ba = product(B22, A22, VEE)
    assert {0} in ab
    assert {0} not in ba


def test_left_zero_products():
    t = sg.left_zero(2)
    for a in enumerate_space("upsilon", 2):
        for b in enumerate_space("upsilon", 2):
            assert product(a, b, t) == a


def test_chain_two_product_matches_oracle():
    a = up_closure([{0}, {1}], 2)
    b = up_closure([{0, 1}], 2)
    got = product(a, b, sg.chain(2))
    assert got == product_literal(a, b, sg.chain(2))
    assert got == up_closure([{0}], 2)


def test_tensor_examples():
    assert tensor_product(F, F, VEE) == up_closure([{0, 1, 2}], 3)
    a = up_closure([{0}, {1}], 2)
    assert tensor_product(a, up_closure([{1}], 2), sg.chain(2)) == a


def test_width_mismatch():
    with pytest.raises(InputError):
        product(point(0, 2), point(0, 3), sg.chain(3))
    with pytest.raises(InputError):
        tensor_product(point(0, 2), point(0, 2), sg.chain(3))


@pytest.mark.parametrize("t", SMALL, ids=repr)
def test_minimal_product_matches_literal_definition(t):
    space = enumerate_space("upsilon", t.order)
    for a in space:
        for b in space:
            assert product(a, b, t) == product_literal(a, b, t)


def test_literal_oracle_is_capped():
    with pytest.raises(CapExceededError):
        product_literal(point(0, 4), point(0, 4), sg.chain(4))


@pytest.mark.parametrize("t", SMALL + ORDER4, ids=repr)
def test_tensor_is_contained_in_product(t):
    space = enumerate_space("upsilon", t.order)
    if len(space) > 20:
        space = space[::9]
    for a in space:
        for b in space:
            ten = tensor_product(a, b, t)
            assert is_subfamily(ten, product(a, b, t))
            # the tensor product is generated by elementwise set products
            for ma in a.minimal:
                for mb in b.minimal:
                    assert literal_set_product(elems(ma), elems(mb), t) in ten


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_product_equals_tensor_on_linear_bases(n):
    space = enumerate_space("upsilon", n)
    if n == 4:
        space = space[::5]
    for t in enumerate_semigroups(n, "linear"):
        for a in space:
            for b in space:
                assert product(a, b, t) == tensor_product(a, b, t)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL + ORDER4), st.data())
def test_product_is_monotone(t, data):
    space = enumerate_space("upsilon", t.order)
    a, a2, b, b2 = (data.draw(st.sampled_from(space)) for _ in range(4))
    if not (is_subfamily(a, a2) and is_subfamily(b, b2)):
        a2 = up_closure(a.minimal + a2.minimal, t.order)
        b2 = up_closure(b.minimal + b2.minimal, t.order)
    assert is_subfamily(product(a, b, t), product(a2, b2, t))


@pytest.mark.parametrize("t", SMALL + ORDER4, ids=repr)
def test_principal_embedding(t):
    n = t.order
    for x in range(n):
        for y in range(n):
            assert product(point(x, n), point(y, n), t) == point(t(x, y), n)
    e = build_extension(t, "upsilon" if n <= 3 else "lambda")
    assert e.embedding_witness() is None


# -- tabulated extensions -------------------------------------------------------


@pytest.mark.parametrize("t", SMALL, ids=repr)
def test_table_agrees_with_direct_product_on_upsilon(t):
    e = build_extension(t, "upsilon")
    tab = e.table()
    for i, a in enumerate(e.carrier):
        for j, b in enumerate(e.carrier):
            assert e.carrier[tab[i, j]] == product(a, b, t)


@pytest.mark.parametrize("t", ORDER4, ids=repr)
@pytest.mark.parametrize("kind", ["phi", "n2", "lambda"])
def test_table_agrees_with_direct_product_order_four(t, kind):
    e = build_extension(t, kind)
    tab = e.table()
    rng = np.random.default_rng(0)
    k = len(e.carrier)
    for i, j in rng.integers(0, k, size=(300, 2)):
        assert e.carrier[tab[i, j]] == product(e.carrier[i], e.carrier[j], t)


@pytest.mark.parametrize("t", [sg.chain(5), sg.bush(2, 2), sg.left_zero(5)], ids=repr)
def test_table_agrees_on_lambda_five(t):
    e = build_extension(t, "lambda")
    rng = np.random.default_rng(1)
    k = len(e.carrier)
    for i, j in rng.integers(0, k, size=(200, 2)):
        assert e.carrier[e.product_index(int(i), int(j))] == product(e.carrier[i], e.carrier[j], t)


@pytest.mark.parametrize("t", SMALL, ids=repr)
def test_upsilon_three_is_associative(t):
    assert build_extension(t, "upsilon").associativity_witness() is None


@pytest.mark.parametrize("t", SMALL + ORDER4, ids=repr)
@pytest.mark.parametrize("kind", ["phi", "lambda"])
def test_subspaces_associative(t, kind):
    assert build_extension(t, kind).associativity_witness() is None


@pytest.mark.parametrize("t", SMALL + [u for u in enumerate_semigroups(4, "band")][::5] + ORDER4, ids=repr)
@pytest.mark.parametrize("kind", ["phi", "lambda", "n2", "beta"])
def test_closure_of_subspaces(t, kind):
    e = build_extension(t, kind)
    check_closure(e)
    tab = e.table()
    for i, j in itertools.product(range(len(e.carrier)), repeat=2):
        assert in_space(e.carrier[tab[i, j]], kind)


def test_closure_error_is_loud():
    e = build_extension(sg.chain(2), "phi")
    with pytest.raises(ClosureError):
        e.lookup(np.array([0], dtype=np.uint64))


def test_cayley_export_round_trips():
    e = build_extension(sg.chain(3), "lambda")
    c = CayleyTable.from_json(e.to_cayley())
    assert c.order == 4 and sg.is_semigroup(c)


# -- analysis -------------------------------------------------------------------


def test_extension_sizes():
    assert len(build_extension(sg.chain(2), "upsilon")) == 4
    assert len(build_extension(sg.chain(3), "lambda")) == 4
    e = build_extension(sg.chain(4), "lambda")
    r = analyze_extension(e)
    assert len(e) == 12 and r.semilattice and not r.linear


def test_analysis_examples():
    r = analyze_extension(build_extension(sg.chain(3), "upsilon"))
    assert r.band and r.commutative and r.semilattice

    e = build_extension(VEE, "upsilon")
    r = analyze_extension(e)
    assert not r.band
    w = e.carrier[r.witnesses["band"]]
    assert product(w, w, VEE) != w
    assert e.squares()[e.index(L)] == e.index(up_closure([{0}], 3))

    e = build_extension(VEE, "n2")
    i, j = e.commutativity_witness()
    a, b = e.carrier[i], e.carrier[j]
    assert product(a, b, VEE) != product(b, a, VEE)
    assert e.product(A22, B22) != e.product(B22, A22)
    assert analyze_extension(e).to_json(e)["witnesses"]["commutative"]


def test_regularity():
    assert not is_regular_in_upsilon(L, VEE)
    assert is_regular_in_upsilon(point(1, 3), VEE)
    t = sg.chain(2)
    for f in enumerate_space("phi", 2):
        assert is_regular_in_upsilon(f, t)
    e = build_extension(VEE, "lambda")
    w = non_regular_witness(e)
    assert w is not None and not is_regular_in_upsilon(e.carrier[w], VEE)
    for f in enumerate_space("upsilon", 3):
        if product(f, f, VEE) == f:
            assert is_regular_in_upsilon(f, VEE)


def test_clifford():
    holds, _ = extension_nm_clifford(build_extension(sg.chain(3), "phi"))
    assert holds
    e = build_extension(VEE, "phi")
    holds, w = extension_nm_clifford(e)
    assert not holds
    f = e.carrier[w]
    assert product(f, f, VEE) != f and power(f, 3, VEE) == power(f, 2, VEE)
    assert e.clifford_witness() == e.index(F)
    holds, w = extension_nm_clifford(build_extension(VEE, "lambda"))
    assert not holds
    with pytest.raises(InputError):
        e.clifford_witness(0, 2)


# -- lattices -------------------------------------------------------------------


def test_upsilon_two_is_boolean_lattice():
    m = sg.chain(2)
    r = analyze_lattice_extension(m, join_of(m), "upsilon")
    assert r.is_lattice
    e = build_extension(m, "upsilon")
    assert sg.are_isomorphic(CayleyTable.from_json(e.to_cayley()), sg.diamond())


def test_lambda_three_is_not_a_lattice():
    m = sg.chain(3)
    j = join_of(m)
    assert not analyze_lattice_extension(m, j, "lambda").is_lattice
    p1 = point(1, 3)
    d = delta3()
    assert product(d, p1, j) == p1 == product(d, p1, m)


def test_phi_three_is_not_a_lattice():
    m = sg.chain(3)
    j = join_of(m)
    assert not analyze_lattice_extension(m, j, "phi").is_lattice
    a = up_closure([{0, 1, 2}], 3)
    b = up_closure([{0, 2}], 3)
    assert product(a, b, j) == a == product(a, b, m)


def test_lattice_base_is_validated():
    with pytest.raises(InputError):
        analyze_lattice_extension(sg.chain(3), sg.chain(3), "phi")
    with pytest.raises(InputError):
        join_of(VEE)


# -- Hasse diagrams -------------------------------------------------------------


def test_hasse_lambda_three_is_a_chain():
    e = build_extension(sg.chain(3), "lambda")
    names = {point(0, 3): "0", point(1, 3): "1", point(2, 3): "2", delta3(): "D"}
    covers = {(names[e.carrier[i]], names[e.carrier[j]]) for i, j in hasse_covers(e)}
    assert covers == {("0", "1"), ("1", "D"), ("D", "2")}


def test_hasse_lambda_four():
    e = build_extension(sg.chain(4), "lambda")
    names = {f: k for k, f in named_lambda4_elements().items()}
    covers = {(names[e.carrier[i]], names[e.carrier[j]]) for i, j in hasse_covers(e)}
    assert covers == {
        ("⟨0⟩", "⟨1⟩"), ("⟨1⟩", "Δ3"), ("Δ3", "⟨2⟩"), ("⟨2⟩", "□2"),
        ("Δ3", "□0"), ("Δ3", "□1"),
        ("□0", "Δ1"), ("□0", "Δ2"), ("□1", "Δ2"), ("□1", "Δ0"),
        ("□2", "Δ1"), ("□2", "Δ0"),
        ("Δ0", "□3"), ("Δ1", "□3"), ("Δ2", "□3"), ("□3", "⟨3⟩"),
    }


@pytest.mark.parametrize("t,kind", [
    (sg.chain(2), "upsilon"), (sg.chain(4), "lambda"), (sg.chain(3), "phi"), (sg.chain(3), "upsilon"),
])
def test_hasse_matches_naive_covers(t, kind):
    e = build_extension(t, kind)
    tab = e.to_cayley()["table"]
    k = len(tab)

    def lt(i, j):
        return i != j and tab[i][j] == i

    naive = [(i, j) for i in range(k) for j in range(k)
             if lt(i, j) and not any(lt(i, z) and lt(z, j) for z in range(k))]
    assert sorted(hasse_covers(e)) == naive


def test_hasse_refuses_non_semilattice():
    with pytest.raises(InputError):
        hasse_covers(build_extension(VEE, "upsilon"))
