import pytest

from semiext import semigroup as sg
from semiext.enumeration import (
    classes_by_brute_force,
    count_labeled_by_brute_force,
    enumerate_lattices,
    enumerate_semigroups,
    semilattices_from_posets,
)
from semiext.errors import CapExceededError, InputError

# Isomorphism-class counts (OEIS A027851, A001426, A058112, A045988, A006966)
ALL = {1: 1, 2: 5, 3: 24}
COMMUTATIVE = {1: 1, 2: 3, 3: 12, 4: 58}
BANDS = {1: 1, 2: 3, 3: 10, 4: 46, 5: 251}
LINEAR = {1: 1, 2: 3, 3: 7, 4: 17, 5: 41}
SEMILATTICES = {1: 1, 2: 1, 3: 2, 4: 5, 5: 15, 6: 53, 7: 222}
LATTICES = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5}


@pytest.mark.parametrize("cls,counts", [
    ("all", ALL),
    ("commutative", COMMUTATIVE),
    ("band", BANDS),
    ("linear", LINEAR),
    ("semilattice", SEMILATTICES),
    ("lattice", LATTICES),
])
def test_class_counts(cls, counts):
    for n, expected in counts.items():
        assert len(enumerate_semigroups(n, cls)) == expected, (cls, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_matches_brute_force(n):
    assert enumerate_semigroups(n, "all") == classes_by_brute_force(n)


def test_all_of_order_four_above_default_cap():
    assert len(enumerate_semigroups(4, "all", cap=4)) == 188


def test_labeled_count_order_two():
    # of the 16 tables on two points, 8 are associative
    assert count_labeled_by_brute_force(2) == 8


@pytest.mark.parametrize("cls,pred", [
    ("commutative", sg.is_commutative),
    ("band", sg.is_band),
    ("linear", sg.is_linear),
    ("semilattice", sg.is_semilattice),
])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_subclasses_match_filtered_brute_force(cls, pred, n):
    expected = tuple(t for t in classes_by_brute_force(n) if pred(t))
    assert enumerate_semigroups(n, cls) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_semilattices_match_poset_oracle(n):
    assert enumerate_semigroups(n, "semilattice") == semilattices_from_posets(n)


def test_small_semilattice_classes():
    assert enumerate_semigroups(2, "semilattice") == (sg.canonical_form(sg.chain(2)),)
    three = set(enumerate_semigroups(3, "semilattice"))
    assert three == {sg.canonical_form(sg.chain(3)), sg.canonical_form(sg.vee())}


@pytest.mark.parametrize("cls", ["all", "commutative", "band", "linear", "semilattice"])
def test_representatives_are_canonical_and_in_class(cls):
    pred = {
        "all": lambda t: True,
        "commutative": sg.is_commutative,
        "band": sg.is_band,
        "linear": sg.is_linear,
        "semilattice": sg.is_semilattice,
    }[cls]
    for n in range(1, 4):
        for t in enumerate_semigroups(n, cls):
            assert sg.is_semigroup(t) and pred(t)
            assert sg.canonical_form(t) == t


def test_lattices_have_valid_joins():
    for n in range(1, 6):
        for pair in enumerate_lattices(n):
            m, j = pair.meet, pair.join
            assert sg.is_semilattice(j)
            for x in range(n):
                for y in range(n):
                    assert j(m(x, y), y) == y and m(j(x, y), y) == y


def test_caps_enforced():
    with pytest.raises(CapExceededError):
        enumerate_semigroups(4, "all")
    with pytest.raises(CapExceededError):
        enumerate_semigroups(8, "semilattice")
    with pytest.raises(CapExceededError):
        count_labeled_by_brute_force(4)
    assert len(enumerate_semigroups(2, "all", cap=2)) == 5


def test_cap_override_from_environment(monkeypatch):
    monkeypatch.setenv("SEMIEXT_MAX_ORDER", "2")
    with pytest.raises(CapExceededError):
        enumerate_semigroups(3, "band")
    monkeypatch.setenv("SEMIEXT_MAX_ORDER", "many")
    with pytest.raises(InputError):
        enumerate_semigroups(2, "band")


def test_unknown_class():
    with pytest.raises(InputError):
        enumerate_semigroups(2, "group")
