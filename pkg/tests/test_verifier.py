import json
from fractions import Fraction
from itertools import permutations

import pytest

from msfuzz import (
    HypothesisUnmet,
    Instance,
    MSAlgebra,
    SearchConfig,
    SizeCapExceeded,
    THEOREM_SUITE,
    UnknownProperty,
    build_lattice,
    lattice_catalog,
    properties,
    run_property,
    search_counterexample,
    sweep,
)
from msfuzz.verifier import REQUIRED_IDS, fixture_instance

from .conftest import fuzzy, grades

HALF = Fraction(1, 2)
UNIVERSE2 = grades(0, 1)
UNIVERSE3 = grades(0, HALF, 1)

# thm-4.3 is honestly refutable (see test_search_thm_4_3_counterexample), so
# zero-failure assertions over lattices containing the diamond exclude it
SOUND_SUITE = tuple(pid for pid in THEOREM_SUITE if pid != "thm-4.3")


# -- catalog ---------------------------------------------------------------------

def brute_lattice_count(max_n):
    """Oracle: enumerate order relations on labeled elements directly.

    Every finite poset admits a linear extension, so scanning only
    relations compatible with a fixed element order reaches every
    isomorphism class; classes are separated with a full permutation
    scan.
    """
    seen = set()
    for n in range(1, max_n + 1):
        strict_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mask in range(1 << len(strict_pairs)):
            leq = [[i == j for j in range(n)] for i in range(n)]
            for k, (i, j) in enumerate(strict_pairs):
                if mask >> k & 1:
                    leq[i][j] = True
            # transitivity
            ok = True
            for k in range(n):
                for i in range(n):
                    for j in range(n):
                        if leq[i][k] and leq[k][j] and not leq[i][j]:
                            ok = False
            if not ok:
                continue
            try:
                lat = build_lattice(
                    [str(i) for i in range(n)],
                    [(str(i), str(j)) for i in range(n) for j in range(n)
                     if i != j and leq[i][j]],
                )
            except Exception:
                continue
            canon = min(
                tuple(sorted(
                    (perm[i], perm[j])
                    for i in range(n) for j in range(n)
                    if i != j and lat.leq(str(i), str(j))
                ))
                for perm in permutations(range(n))
            )
            seen.add((n, canon))
    return len(seen)


@pytest.mark.parametrize("max_n,expected", [(1, 1), (2, 2), (3, 3), (4, 5)])
def test_catalog_counts_match_direct_enumeration(max_n, expected):
    assert len(lattice_catalog(max_n)) == expected == brute_lattice_count(max_n)


def test_catalog_grows():
    assert len(lattice_catalog(5)) == 8
    assert len(lattice_catalog(6)) == 13


def test_catalog_members_are_valid_and_nonisomorphic():
    cat = lattice_catalog(5)
    for lat in cat:
        assert lat.distributive
    # pairwise distinct sizes-or-structures: compare invariants
    profiles = []
    for lat in cat:
        degrees = sorted(
            sum(lat.leq(a, b) for b in lat.elements) for a in lat.elements
        )
        profiles.append((lat.n, tuple(degrees)))
    assert len(set(profiles)) == len(cat)


def test_catalog_cap():
    with pytest.raises(SizeCapExceeded):
        lattice_catalog(9)


# -- registry --------------------------------------------------------------------

def test_registry_covers_required_ids():
    have = {rec.pid for rec in properties()}
    assert set(REQUIRED_IDS) <= have
    assert len(have) >= 25
    assert set(THEOREM_SUITE) <= have
    assert "thm-3.1-prime" not in THEOREM_SUITE
    assert "example-4.2-validity" not in THEOREM_SUITE


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        run_property("lemma-99", fixture_instance("diamond"))


def make_instance(lat, neg, universe=UNIVERSE3, w_sets=None, chis=None):
    from msfuzz import enumerate_fuzzy_filters

    ms = MSAlgebra(lat, neg)
    pool = tuple(chis) if chis is not None else tuple(
        enumerate_fuzzy_filters(lat, universe)
    )
    return Instance(ms=ms, chis=pool, grade_universe=universe, w_sets=w_sets)


def test_run_property_passes(diamond):
    inst = make_instance(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"})
    assert run_property("prop-2.1", inst) is None
    assert run_property("lemma-3.2.6", inst) is None
    assert run_property("thm-3.1-filter", inst) is None


def test_run_property_prime_refuted(diamond):
    chi = fuzzy(diamond, 0, 0, 0, 1)
    inst = make_instance(
        diamond, {"0": "1", "a": "a", "b": "b", "1": "0"},
        universe=UNIVERSE2, w_sets=(("0",),), chis=[chi],
    )
    witness = run_property("thm-3.1-prime", inst)
    assert witness is not None
    phi = witness.data["phi"]
    psi = witness.data["psi"]
    assert {phi.grades, psi.grades} == {grades(0, 1, 0, 1), grades(0, 0, 1, 1)}
    # replay
    assert run_property("thm-3.1-prime", witness.instance) is not None


def test_hypothesis_unmet(example4_printed):
    lat, ms, chi = example4_printed
    inst = Instance(ms=ms, chis=(chi,), grade_universe=UNIVERSE2)
    with pytest.raises(HypothesisUnmet):
        run_property("prop-2.1", inst)
    with pytest.raises(HypothesisUnmet):
        run_property("lemma-3.2.1", Instance(ms=None, chis=(), grade_universe=UNIVERSE2))


def test_example_fixture_property_ignores_instance(diamond):
    inst = make_instance(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"})
    witness = run_property("example-4.2-validity", inst)
    assert witness is not None
    assert witness.data["witness"] == {"element": "z", "double_negation": "y"}


# -- sweeping --------------------------------------------------------------------

def test_theorem_suite_statuses():
    cfg = SearchConfig(max_elements=3, grade_universe=UNIVERSE3)
    report = sweep(THEOREM_SUITE, cfg)
    for outcome in report.outcomes:
        assert outcome.failures == 0, outcome.pid
        assert outcome.skips == 0
        assert outcome.instances > 0


def test_sound_suite_exhaustive_up_to_five():
    cfg = SearchConfig(max_elements=5, grade_universe=UNIVERSE3)
    report = sweep(SOUND_SUITE, cfg)
    for outcome in report.outcomes:
        assert outcome.failures == 0, outcome.pid


def test_sweep_finds_known_refutations():
    cfg = SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    report = sweep(None, cfg)
    assert report.outcome("thm-3.1-prime").failures > 0
    assert report.outcome("lemma-3.2.1").failures == 0
    # the strong extension fails filterhood once W has two incomparable members
    assert report.outcome("thm-4.3").failures > 0


def test_sweep_witnesses_replay():
    cfg = SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    report = sweep(None, cfg)
    for outcome in report.outcomes:
        if outcome.first_witness is not None:
            again = run_property(outcome.pid, outcome.first_witness.instance)
            assert again is not None, outcome.pid


def test_sweep_determinism():
    cfg = SearchConfig(max_elements=4, grade_universe=UNIVERSE3)
    a = json.dumps(sweep(THEOREM_SUITE, cfg).to_dict(), indent=2)
    b = json.dumps(sweep(THEOREM_SUITE, cfg).to_dict(), indent=2)
    assert a == b


def test_randomized_mode_deterministic_per_seed():
    cfg = SearchConfig(max_elements=5, grade_universe=UNIVERSE2,
                       mode="randomized", seed=7, iterations=30)
    a = json.dumps(sweep(("lemma-3.2.1", "thm-3.8"), cfg).to_dict())
    b = json.dumps(sweep(("lemma-3.2.1", "thm-3.8"), cfg).to_dict())
    assert a == b
    other = SearchConfig(max_elements=5, grade_universe=UNIVERSE2,
                         mode="randomized", seed=8, iterations=30)
    assert sweep(("lemma-3.2.1",), other).outcome("lemma-3.2.1").failures == 0


def test_randomized_beyond_exhaustive_cap():
    cfg = SearchConfig(max_elements=6, grade_universe=UNIVERSE2,
                       mode="randomized", seed=2026, iterations=10)
    report = sweep(SOUND_SUITE, cfg)
    for outcome in report.outcomes:
        assert outcome.failures == 0, outcome.pid


def test_search():
    assert search_counterexample(
        "lemma-3.2.1", SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    ) is None
    witness = search_counterexample(
        "thm-3.1-prime", SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    )
    assert witness is not None
    lat = witness.instance.ms.lattice
    assert lat.n == 4
    mids = [e for e in lat.elements if e not in (lat.bottom, lat.top)]
    assert not lat.leq(mids[0], mids[1]) and not lat.leq(mids[1], mids[0])
    chi = witness.instance.chis[0]
    assert chi.grades == tuple(
        Fraction(int(e == lat.top)) for e in lat.elements
    )


def test_search_thm_4_3_counterexample():
    witness = search_counterexample(
        "thm-4.3", SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    )
    assert witness is not None
    assert run_property("thm-4.3", witness.instance) is not None


def test_search_fixture_property():
    witness = search_counterexample("example-4.2-validity")
    assert witness is not None
    assert witness.data["check"] == "double-negation-above"
    assert witness.data["witness"] == {"element": "z", "double_negation": "y"}


def test_invalid_tables_are_skipped_not_counted():
    cfg = SearchConfig(max_elements=3, grade_universe=UNIVERSE2,
                       require_valid=False)
    report = sweep(("prop-2.1",), cfg)
    outcome = report.outcome("prop-2.1")
    assert outcome.skips > 0
    assert outcome.failures == 0


def test_witness_document_roundtrip():
    witness = search_counterexample(
        "thm-3.1-prime", SearchConfig(max_elements=4, grade_universe=UNIVERSE2)
    )
    payload = witness.to_dict()
    from msfuzz import classify, document_to_objects, parse_algebra

    lat, ms, named = document_to_objects(parse_algebra(payload["document"]))
    assert ms is not None and ms.is_valid
    chis = tuple(fs for fs in named.values() if classify(lat, fs).is_filter)
    replay = Instance(ms=ms, chis=chis,
                      grade_universe=tuple(grades(0, 1)))
    assert run_property("thm-3.1-prime", replay) is not None
