from itertools import product

import pytest

from msfuzz import (
    EmptyW,
    MSAlgebra,
    SizeCapExceeded,
    UnknownElement,
    build_lattice,
    check_ms_axioms,
    double_neg,
    enumerate_filters,
    enumerate_ms_operations,
    extended_filter_crisp,
    principal_filter,
    verify_derived_identities,
)
from msfuzz.verifier import lattice_catalog

from .conftest import chain
from .test_lattice_core import EXAMPLE4_COVERS, EXAMPLE4_ELS, PENTAGON

EXAMPLE4_NEG = {"0": "1", "t": "u", "x": "t", "y": "u", "z": "u", "u": "y", "1": "0"}


@pytest.fixture
def example4_lat():
    return build_lattice(EXAMPLE4_ELS, EXAMPLE4_COVERS)


def test_diamond_de_morgan_passes(diamond):
    report = check_ms_axioms(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"})
    assert report.ok


def test_example4_table_fails(example4_lat):
    report = check_ms_axioms(example4_lat, EXAMPLE4_NEG)
    assert not report.ok
    ddn = report.find("double-negation-above")
    assert not ddn.passed
    assert ddn.witness == {"element": "z", "double_negation": "y"}
    dm = report.find("meet-de-morgan")
    assert not dm.passed
    assert dm.witness == {"pair": ["x", "z"], "lhs": "t", "rhs": "u"}
    assert report.find("unit-negation").passed


def test_three_chain_table_passes():
    lat = chain(3)
    report = check_ms_axioms(lat, {"c0": "c2", "c1": "c0", "c2": "c0"})
    assert report.ok


def test_axioms_missing_entry(diamond):
    with pytest.raises(UnknownElement):
        check_ms_axioms(diamond, {"0": "1"})
    with pytest.raises(UnknownElement):
        check_ms_axioms(diamond, {"0": "1", "a": "zz", "b": "b", "1": "0"})


def test_validity_flag(diamond, example4_lat):
    assert MSAlgebra(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"}).is_valid
    assert not MSAlgebra(example4_lat, EXAMPLE4_NEG).is_valid


def test_subvariety_tags(diamond, three_chain_stone):
    de_morgan = MSAlgebra(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"})
    assert de_morgan.is_de_morgan and not de_morgan.is_stone
    _, stone, _ = three_chain_stone
    assert stone.is_stone and not stone.is_de_morgan


def test_derived_identities(diamond_ms):
    assert verify_derived_identities(diamond_ms).ok
    two = chain(2)
    ms = MSAlgebra(two, {"c0": "c1", "c1": "c0"})
    report = verify_derived_identities(ms)
    assert report.ok
    assert report.find("zero-negation").passed


def test_derived_identities_all_enumerated():
    for lat in lattice_catalog(4):
        for neg in enumerate_ms_operations(lat):
            ms = MSAlgebra(lat, neg)
            assert verify_derived_identities(ms).ok
            # antitone, and double negation is a closure
            for a in lat.elements:
                dd = double_neg(ms, a)
                assert lat.leq(a, dd)
                assert double_neg(ms, dd) == dd
                for b in lat.elements:
                    if lat.leq(a, b):
                        assert lat.leq(ms.negate(b), ms.negate(a))


def test_double_neg(diamond_ms, example4_lat):
    assert double_neg(diamond_ms, "a") == "a"
    assert double_neg(diamond_ms, "1") == "1"
    ms4 = MSAlgebra(example4_lat, EXAMPLE4_NEG)
    assert double_neg(ms4, "y") == "y"
    assert double_neg(ms4, "z") == "y"
    with pytest.raises(UnknownElement):
        double_neg(diamond_ms, "zz")


# -- crisp extended filters ---------------------------------------------------

def test_extended_filter_identity_w(diamond_ms):
    lat = diamond_ms.lattice
    for e in lat.elements:
        filt = principal_filter(lat, e)
        assert extended_filter_crisp(diamond_ms, filt, ["0"]).members == filt.members


def test_extended_filter_diamond(diamond_ms):
    lat = diamond_ms.lattice
    top = principal_filter(lat, "1")
    assert extended_filter_crisp(diamond_ms, top, ["a"]).members == {"b", "1"}
    assert extended_filter_crisp(diamond_ms, top, ["a", "b"]).members == {"1"}
    with pytest.raises(EmptyW):
        extended_filter_crisp(diamond_ms, top, [])
    with pytest.raises(UnknownElement):
        extended_filter_crisp(diamond_ms, top, ["zz"])


def all_w_subsets(lat):
    els = lat.elements
    for mask in range(1, 1 << len(els)):
        yield [els[i] for i in range(len(els)) if mask >> i & 1]


def test_extended_filter_laws():
    for lat in lattice_catalog(4):
        for neg in enumerate_ms_operations(lat):
            ms = MSAlgebra(lat, neg)
            filters = enumerate_filters(lat)
            for filt in filters:
                for w in all_w_subsets(lat):
                    ext = extended_filter_crisp(ms, filt, w)
                    assert filt.members <= ext.members
                    singletons = [
                        extended_filter_crisp(ms, filt, [x]).members for x in w
                    ]
                    assert ext.members == frozenset.intersection(*map(frozenset, singletons))
            # monotone in the filter, antitone in W
            for f1 in filters:
                for f2 in filters:
                    if f1.members <= f2.members:
                        for w in all_w_subsets(lat):
                            assert (
                                extended_filter_crisp(ms, f1, w).members
                                <= extended_filter_crisp(ms, f2, w).members
                            )
            for filt in filters:
                for w in all_w_subsets(lat):
                    for z in all_w_subsets(lat):
                        if set(z) <= set(w):
                            assert (
                                extended_filter_crisp(ms, filt, w).members
                                <= extended_filter_crisp(ms, filt, z).members
                            )


# -- operation enumeration ----------------------------------------------------

def brute_ms_operations(lat):
    """Oracle: full scan over every unary table."""
    out = []
    for images in product(lat.elements, repeat=lat.n):
        table = dict(zip(lat.elements, images))
        if check_ms_axioms(lat, table).ok:
            out.append(table)
    return out


def test_two_chain_operation_forced():
    lat = chain(2)
    assert enumerate_ms_operations(lat) == [{"c0": "c1", "c1": "c0"}]


def test_diamond_operations(diamond):
    ops = enumerate_ms_operations(diamond)
    assert {"0": "1", "a": "a", "b": "b", "1": "0"} in ops


@pytest.mark.parametrize("lat_index", range(5))
def test_enumeration_matches_brute_force(lat_index):
    lat = lattice_catalog(4)[lat_index]
    got = enumerate_ms_operations(lat)
    expected = brute_ms_operations(lat)
    assert got == expected  # same tables, same lexicographic order


def test_pentagon_needs_flag():
    lat = build_lattice(*PENTAGON, allow_nondistributive=True)
    ops = enumerate_ms_operations(lat)
    assert ops == brute_ms_operations(lat)


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_ms_operations(chain(4), max_elements=3)
