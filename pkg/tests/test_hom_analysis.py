from fractions import Fraction

import pytest

from msfuzz import (
    FuzzySet,
    GradeStructure,
    MissingGradeStructure,
    cokernel,
    cokernel_characterization,
    enumerate_fuzzy_filters,
    enumerate_ms_operations,
    grade_ms_hom_check,
    hom_report,
    inverse_class,
    is_prime_filter,
    kernel,
    kernel_characterization,
    upsilon,
)
from msfuzz.ms_algebra import MSAlgebra
from msfuzz.verifier import lattice_catalog

from .conftest import fuzzy, grades

HALF = Fraction(1, 2)
UNIVERSE3 = grades(0, HALF, 1)


def all_w_subsets(lat):
    els = lat.elements
    for mask in range(1, 1 << len(els)):
        yield tuple(els[i] for i in range(len(els)) if mask >> i & 1)


def test_hom_report_diamond_fixture(diamond_fixture):
    lat, _, chi = diamond_fixture
    rep = hom_report(lat, chi)
    assert rep.is_meet_hom and rep.is_join_hom and rep.is_lattice_hom


def test_hom_report_example4(example4_printed):
    lat, _, chi = example4_printed
    rep = hom_report(lat, chi)
    assert not rep.is_meet_hom  # not even a fuzzy filter
    assert not rep.is_join_hom
    assert rep.witness is not None


def test_fuzzy_filters_are_meet_homs():
    for lat in lattice_catalog(4):
        for chi in enumerate_fuzzy_filters(lat, UNIVERSE3):
            assert hom_report(lat, chi).is_meet_hom


def test_prime_characteristic_maps_are_join_homs(diamond):
    for members in ({"a", "1"}, {"b", "1"}):
        assert is_prime_filter(diamond, members).ok
        char = FuzzySet(
            diamond,
            tuple(Fraction(int(e in members)) for e in diamond.elements),
        )
        assert hom_report(diamond, char).is_join_hom


def test_kernel_cokernel(diamond_fixture, example4_printed, example4_corrected):
    lat, _, chi = example4_printed
    assert kernel(chi) == {"0"}
    assert cokernel(chi) == frozenset()
    _, _, corrected = example4_corrected
    assert cokernel(corrected) == {"1"}
    lat, _, chi = diamond_fixture
    assert cokernel(chi) == {"theta", "1"}
    constant = fuzzy(lat, 1, 1, 1, 1)
    assert kernel(constant) == frozenset()
    assert cokernel(constant) == set(lat.elements)


def test_kernel_characterization_examples(diamond_ms):
    lat = diamond_ms.lattice
    char_top = fuzzy(lat, 0, 0, 0, 1)
    assert kernel(upsilon(diamond_ms, char_top, ["0"])) == {"0", "a", "b"}
    assert kernel(upsilon(diamond_ms, char_top, ["a"])) == {"0", "a", "b"}
    assert kernel_characterization(diamond_ms, char_top, ["0"])
    assert kernel_characterization(diamond_ms, char_top, ["a"])
    # any reference element with positive image grade empties the kernel
    chi = fuzzy(lat, 0, HALF, HALF, 1)
    assert kernel(upsilon(diamond_ms, chi, ["a"])) == frozenset()


def test_cokernel_characterization_examples(diamond_fixture):
    lat, ms, chi = diamond_fixture
    assert cokernel(upsilon(ms, chi, ["1"])) == set(lat.elements)
    assert cokernel(upsilon(ms, chi, ["0", "xi"])) == cokernel(chi) == {"theta", "1"}
    assert cokernel_characterization(ms, chi, ["0", "xi"])
    assert cokernel_characterization(ms, chi, ["1"])


def test_characterizations_hold_everywhere():
    for lat in lattice_catalog(4):
        for neg in enumerate_ms_operations(lat):
            ms = MSAlgebra(lat, neg)
            for chi in enumerate_fuzzy_filters(lat, UNIVERSE3):
                for w in all_w_subsets(lat):
                    assert kernel_characterization(ms, chi, w)
                    assert cokernel_characterization(ms, chi, w)


def test_inverse_class(example4_printed, diamond_fixture):
    lat, ms, chi = example4_printed
    assert inverse_class(ms, chi, ["y"], "x") == {"0", "t", "x", "y"}
    lat, ms, chi = diamond_fixture
    assert inverse_class(ms, chi, ["0", "xi"], "xi") == {"0", "xi"}
    assert inverse_class(ms, chi, ["1"], "xi") == set(lat.elements)
    for theta in lat.elements:
        assert theta in inverse_class(ms, chi, ["0", "xi"], theta)


def test_grade_ms_hom_check(diamond_fixture, example4_printed):
    lat, ms, chi = diamond_fixture
    gs = GradeStructure.involutive(chi.grades)
    assert grade_ms_hom_check(ms, chi, gs) is True

    lat4, ms4, chi4 = example4_printed
    gs4 = GradeStructure.involutive(chi4.grades)
    # z'' = y but the grades of z and y differ, so the condition fails
    assert grade_ms_hom_check(ms4, chi4, gs4) is False


def test_grade_structure_errors(diamond_fixture):
    lat, ms, chi = diamond_fixture
    with pytest.raises(MissingGradeStructure):
        grade_ms_hom_check(ms, chi, GradeStructure())
    partial = GradeStructure(neg_grade={Fraction(1): Fraction(0)})
    with pytest.raises(MissingGradeStructure):
        grade_ms_hom_check(ms, chi, partial)


def test_identity_grade_structure(diamond_fixture):
    lat, ms, chi = diamond_fixture
    identity = GradeStructure(neg_grade={g: g for g in set(chi.grades)})
    assert grade_ms_hom_check(ms, chi, identity) is True
