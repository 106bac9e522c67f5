"""Executable registry of the algebraic laws, instance generators, and
exhaustive/randomized counterexample search.

Every law has a string id (``lemma-3.2.1`` and friends).  A law check
receives an Instance -- an algebra plus a pool of candidate fuzzy
filters and a grade universe -- and quantifies internally over the pool,
over reference subsets, and over element pairs, returning the first
violation as a replayable Witness or None.

Instances are generated from a catalog of all bounded distributive
lattices up to a size cap.  The catalog enumerates posets by repeatedly
attaching a maximal element, prunes by the number of down-sets, dedupes
by a canonical form of the order relation, and realizes each poset as
its lattice of down-sets (which is exactly the family of bounded
distributive lattices, one per poset).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Callable

from .errors import (
    HypothesisUnmet,
    SizeCapExceeded,
    UnknownProperty,
)
from .extensions import dense_elements, is_fixed_relative
from .file_format import document_from_objects, serialize_algebra
from .fuzzy_core import (
    FuzzySet,
    classify,
    enumerate_fuzzy_filters,
    fuzzy_union,
    is_prime_fuzzy_filter_bounded,
)
from .grades import ONE, ZERO, format_grade
from .hom_analysis import (
    cokernel_characterization,
    hom_report,
    kernel_characterization,
)
from .lattice_core import FiniteLattice, build_lattice, enumerate_filters, is_filter
from .ms_algebra import MSAlgebra, enumerate_ms_operations, extended_filter_crisp

MAX_ELEMENTS_CAP = 8


# ---------------------------------------------------------------------------
# instance catalog
# ---------------------------------------------------------------------------

def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _down_sets(down: tuple[int, ...]) -> list[int]:
    """All down-closed subsets of a poset given per-element down masks."""
    k = len(down)
    out = []
    for mask in range(1 << k):
        if all(down[i] & ~mask == 0 for i in _bits(mask)):
            out.append(mask)
    return out


def _canonical_poset(down: tuple[int, ...]) -> tuple:
    """Canonical encoding of a poset up to isomorphism.

    Elements are partitioned by an iterated degree invariant; the
    encoding is minimized over all partition-respecting relabelings.
    """
    k = len(down)
    if k == 0:
        return ()
    up = [0] * k
    for i in range(k):
        for j in _bits(down[i]):
            up[j] |= 1 << i
    inv: list[Any] = [
        (bin(down[i]).count("1"), bin(up[i]).count("1")) for i in range(k)
    ]
    for _ in range(2):
        inv = [
            (
                inv[i],
                tuple(sorted(inv[j] for j in _bits(down[i]) if j != i)),
                tuple(sorted(inv[j] for j in _bits(up[i]) if j != i)),
            )
            for i in range(k)
        ]
    groups: dict[Any, list[int]] = {}
    for i in range(k):
        groups.setdefault(inv[i], []).append(i)
    ordered_groups = [groups[key] for key in sorted(groups, key=repr)]

    best = None
    for perm_parts in product(*(permutations(g) for g in ordered_groups)):
        relabel = [0] * k
        pos = 0
        for part in perm_parts:
            for old in part:
                relabel[old] = pos
                pos += 1
        pairs = sorted(
            (relabel[j], relabel[i])
            for i in range(k)
            for j in _bits(down[i])
            if j != i
        )
        encoding = (k, tuple(pairs))
        if best is None or encoding < best:
            best = encoding
    return best


@lru_cache(maxsize=None)
def _poset_reps(max_lattice_size: int) -> tuple[tuple[int, ...], ...]:
    """Posets (up to iso) whose down-set lattice has at most the given size."""
    reps: dict[tuple, tuple[int, ...]] = {(): ()}
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        next_frontier = []
        for down in frontier:
            k = len(down)
            for d_mask in _down_sets(down):
                extended = down + (d_mask | (1 << k),)
                if len(_down_sets(extended)) > max_lattice_size:
                    continue
                canon = _canonical_poset(extended)
                if canon not in reps:
                    reps[canon] = extended
                    next_frontier.append(extended)
        frontier = next_frontier
    return tuple(reps[c] for c in sorted(reps, key=repr))


def _lattice_from_poset(down: tuple[int, ...]) -> FiniteLattice:
    ds = _down_sets(down)
    ds.sort(key=lambda m: (bin(m).count("1"), tuple(_bits(m))))
    names = {mask: f"e{i}" for i, mask in enumerate(ds)}
    covers = [
        (names[s], names[t])
        for s in ds
        for t in ds
        if s & ~t == 0 and bin(t).count("1") == bin(s).count("1") + 1
    ]
    return build_lattice([names[m] for m in ds], covers)


@lru_cache(maxsize=None)
def lattice_catalog(max_elements: int) -> tuple[FiniteLattice, ...]:
    """All bounded distributive lattices with at most ``max_elements``
    elements, one per isomorphism class, in deterministic order."""
    if max_elements > MAX_ELEMENTS_CAP:
        raise SizeCapExceeded(
            f"max_elements {max_elements} exceeds cap {MAX_ELEMENTS_CAP}"
        )
    lattices = [_lattice_from_poset(p) for p in _poset_reps(max_elements)]
    lattices = [lat for lat in lattices if lat.n <= max_elements]
    lattices.sort(key=lambda lat: (lat.n, lat.leq_table))
    return tuple(lattices)


@lru_cache(maxsize=None)
def _ms_operations(lat: FiniteLattice) -> tuple[dict, ...]:
    return tuple(enumerate_ms_operations(lat))


@lru_cache(maxsize=None)
def _filter_pool(lat: FiniteLattice, universe: tuple[Fraction, ...]
                 ) -> tuple[FuzzySet, ...]:
    return tuple(enumerate_fuzzy_filters(lat, universe))


# ---------------------------------------------------------------------------
# configuration, instances, witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    max_elements: int = 4
    grade_universe: tuple[Fraction, ...] = (ZERO, Fraction(1, 2), ONE)
    mode: str = "exhaustive"  # or "randomized"
    seed: int = 0
    iterations: int = 0
    require_valid: bool = True

    def __post_init__(self):
        if self.max_elements > MAX_ELEMENTS_CAP:
            raise SizeCapExceeded(
                f"max_elements {self.max_elements} exceeds cap {MAX_ELEMENTS_CAP}"
            )
        universe = tuple(sorted({Fraction(g) for g in self.grade_universe}))
        if ONE not in universe:
            raise ValueError("grade universe must contain 1")
        object.__setattr__(self, "grade_universe", universe)
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "max_elements": self.max_elements,
            "grade_universe": [format_grade(g) for g in self.grade_universe],
            "mode": self.mode,
            "require_valid": self.require_valid,
        }
        if self.mode == "randomized":
            out["seed"] = self.seed
            out["iterations"] = self.iterations
        return out


@dataclass(frozen=True)
class Instance:
    """What a law check runs against.

    ``chis`` is the pool of candidate fuzzy filters the check quantifies
    over; ``w_sets`` restricts the reference subsets (None means all
    nonempty subsets of the carrier).
    """

    ms: MSAlgebra | None
    chis: tuple[FuzzySet, ...]
    grade_universe: tuple[Fraction, ...]
    w_sets: tuple[tuple[str, ...], ...] | None = None


@dataclass(frozen=True)
class Witness:
    """A replayable refutation: rerunning the property on ``instance``
    reproduces the failure."""

    property_id: str
    instance: Instance
    detail: str
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        ms = self.instance.ms
        lat = ms.lattice
        named = {}
        for i, c in enumerate(self.instance.chis):
            named["chi" if i == 0 else f"chi{i + 1}"] = c
        doc = document_from_objects(lat, ms, named)
        out: dict[str, Any] = {
            "property": self.property_id,
            "detail": self.detail,
            "elements": list(lat.elements),
            "covers": [list(p) for p in lat.covers],
            "neg": {e: ms.neg[e] for e in lat.elements},
            "fuzzy": {
                name: {e: format_grade(g) for e, g in zip(lat.elements, c.grades)}
                for name, c in named.items()
            },
        }
        if self.instance.w_sets is not None:
            out["w_sets"] = [list(w) for w in self.instance.w_sets]
        if self.data:
            out["data"] = _jsonable(self.data)
        out["document"] = serialize_algebra(doc)
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_grade(value)
    if isinstance(value, FuzzySet):
        return {e: format_grade(g) for e, g in zip(value.carrier.elements, value.grades)}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    return value


# ---------------------------------------------------------------------------
# property registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyRecord:
    pid: str
    summary: str
    check: Callable[[Instance], Witness | None]
    requires_valid_ms: bool = True
    requires_filters: bool = True
    search_target: bool = False
    fixture: str | None = None


_REGISTRY: dict[str, PropertyRecord] = {}


def _law(pid: str, summary: str, **kwargs):
    def decorate(fn):
        _REGISTRY[pid] = PropertyRecord(pid, summary, fn, **kwargs)
        return fn

    return decorate


def properties() -> tuple[PropertyRecord, ...]:
    return tuple(_REGISTRY.values())


def _all_w_sets(inst: Instance) -> tuple[tuple[str, ...], ...]:
    if inst.w_sets is not None:
        return inst.w_sets
    els = inst.ms.lattice.elements
    n = len(els)
    return tuple(
        tuple(els[j] for j in range(n) if mask >> j & 1)
        for mask in range(1, 1 << n)
    )


def _upsilon_grades(ms: MSAlgebra, chi: FuzzySet, w: tuple[str, ...]
                    ) -> tuple[Fraction, ...]:
    dd = ms.dneg_table()
    base = max(chi.grades[dd[ms.lattice.element_index(x)]] for x in w)
    return tuple(max(g, base) for g in chi.grades)


def _omega_grades(ms: MSAlgebra, chi: FuzzySet, w: tuple[str, ...]
                  ) -> tuple[Fraction, ...]:
    lat = ms.lattice
    dd = ms.dneg_table()
    w_idx = [lat.element_index(x) for x in w]
    return tuple(
        max(chi.grades[lat.join_table[i][dd[v]]] for v in w_idx)
        for i in range(lat.n)
    )


def _fail(pid: str, inst: Instance, detail: str, *, chis=None, w=None, data=None
          ) -> Witness:
    restricted = Instance(
        ms=inst.ms,
        chis=tuple(chis) if chis is not None else inst.chis,
        grade_universe=inst.grade_universe,
        w_sets=(tuple(w),) if w is not None else inst.w_sets,
    )
    return Witness(pid, restricted, detail, data or {})


@_law(
    "prop-2.1",
    "derived identities: negation of joins, double negation over joins, "
    "triple negation collapse, bottom negates to top",
    requires_filters=False,
)
def _check_prop_2_1(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    neg = ms.neg_table
    n = lat.n
    for i in range(n):
        for j in range(n):
            jo = lat.join_table[i][j]
            if neg[jo] != lat.meet_table[neg[i]][neg[j]]:
                return _fail("prop-2.1", inst, "negation of join broke",
                             data={"pair": [lat.elements[i], lat.elements[j]]})
            if neg[neg[jo]] != lat.join_table[neg[neg[i]]][neg[neg[j]]]:
                return _fail("prop-2.1", inst, "double negation over join broke",
                             data={"pair": [lat.elements[i], lat.elements[j]]})
        if neg[neg[neg[i]]] != neg[i]:
            return _fail("prop-2.1", inst, "triple negation broke",
                         data={"element": lat.elements[i]})
    if ms.negate(lat.bottom) != lat.top:
        return _fail("prop-2.1", inst, "bottom does not negate to top")
    return None


@_law(
    "thm-2.3-extended-filter",
    "the crisp extension of a filter is a filter containing it",
    requires_filters=False,
)
def _check_thm_2_3(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for filt in enumerate_filters(lat):
        for w in _all_w_sets(inst):
            ext = extended_filter_crisp(ms, filt, w)
            verdict = is_filter(lat, ext.members)
            if not verdict.ok or not filt.members <= ext.members:
                return _fail(
                    "thm-2.3-extended-filter", inst,
                    "crisp extension is not a filter containing the source",
                    w=w,
                    data={"filter": sorted(filt.members), "result": sorted(ext.members)},
                )
    return None


@_law(
    "thm-3.1-filter",
    "the extension of a fuzzy filter is a fuzzy filter containing it",
)
def _check_thm_3_1_filter(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            if any(u < g for u, g in zip(ups, chi.grades)):
                return _fail("thm-3.1-filter", inst, "extension lost ground",
                             chis=[chi], w=w)
            if not classify(lat, FuzzySet(lat, ups)).is_filter:
                return _fail("thm-3.1-filter", inst,
                             "extension is not a fuzzy filter",
                             chis=[chi], w=w, data={"upsilon": list(ups)})
    return None


@_law(
    "thm-3.1-prime",
    "the extension of a fuzzy filter is a prime fuzzy filter "
    "(known-refutable; kept as a search target)",
    search_target=True,
)
def _check_thm_3_1_prime(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    universe = tuple(sorted(set(inst.grade_universe) | {ZERO, ONE}))
    pool = _filter_pool(lat, universe)
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = FuzzySet(lat, _upsilon_grades(ms, chi, w))
            if ups.is_constant():
                continue  # primality is only defined for proper filters
            prime, pair = is_prime_fuzzy_filter_bounded(
                lat, ups, universe, pool=pool
            )
            if not prime:
                phi, psi = pair
                return _fail(
                    "thm-3.1-prime", inst,
                    "extension is a non-prime fuzzy filter",
                    chis=[chi], w=w,
                    data={"phi": phi, "psi": psi, "upsilon": ups},
                )
    return None


@_law("lemma-3.2.1", "monotone in the reference subset")
def _check_lemma_3_2_1(inst: Instance):
    ms = inst.ms
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups_w = _upsilon_grades(ms, chi, w)
            members = list(w)
            for mask in range(1, 1 << len(members)):
                z = tuple(m for k, m in enumerate(members) if mask >> k & 1)
                ups_z = _upsilon_grades(ms, chi, z)
                if any(a > b for a, b in zip(ups_z, ups_w)):
                    return _fail("lemma-3.2.1", inst,
                                 "extension shrank when W grew",
                                 chis=[chi], w=w, data={"z": list(z)})
    return None


@_law("lemma-3.2.2", "monotone in the fuzzy filter")
def _check_lemma_3_2_2(inst: Instance):
    ms = inst.ms
    for chi1 in inst.chis:
        for chi2 in inst.chis:
            if not chi1.is_contained_in(chi2):
                continue
            for w in _all_w_sets(inst):
                u1 = _upsilon_grades(ms, chi1, w)
                u2 = _upsilon_grades(ms, chi2, w)
                if any(a > b for a, b in zip(u1, u2)):
                    return _fail("lemma-3.2.2", inst,
                                 "extension not monotone in the filter",
                                 chis=[chi1, chi2], w=w)
    return None


@_law("lemma-3.2.3",
      "no growth at points above the whole double-negation image")
def _check_lemma_3_2_3(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            w_idx = [lat.element_index(x) for x in w]
            for t in range(lat.n):
                if all(lat.leq_table[dd[v]][t] for v in w_idx):
                    if _upsilon_grades(ms, chi, w)[t] != chi.grades[t]:
                        return _fail("lemma-3.2.3", inst,
                                     "extension moved a dominating point",
                                     chis=[chi], w=w,
                                     data={"theta": lat.elements[t]})
    return None


@_law("lemma-3.2.4",
      "for injective filters, an unmoved point dominates the image")
def _check_lemma_3_2_4(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        if len(set(chi.grades)) != lat.n:
            continue
        for w in _all_w_sets(inst):
            w_idx = [lat.element_index(x) for x in w]
            ups = _upsilon_grades(ms, chi, w)
            for t in range(lat.n):
                if ups[t] == chi.grades[t]:
                    if not all(lat.leq_table[dd[v]][t] for v in w_idx):
                        return _fail("lemma-3.2.4", inst,
                                     "unmoved point fails to dominate",
                                     chis=[chi], w=w,
                                     data={"theta": lat.elements[t]})
    return None


@_law("lemma-3.2.5",
      "a reference element double-negating to the top forces the constant one")
def _check_lemma_3_2_5(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    top_i = lat.element_index(lat.top)
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            if any(dd[lat.element_index(x)] == top_i for x in w):
                if any(g != ONE for g in _upsilon_grades(ms, chi, w)):
                    return _fail("lemma-3.2.5", inst,
                                 "extension missed the constant one",
                                 chis=[chi], w=w)
    return None


@_law("lemma-3.2.6",
      "extension over the whole carrier, or over the top alone, is constant one")
def _check_lemma_3_2_6(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        for w in (tuple(lat.elements), (lat.top,)):
            if any(g != ONE for g in _upsilon_grades(ms, chi, w)):
                return _fail("lemma-3.2.6", inst,
                             "extension over a unit-reaching subset is not one",
                             chis=[chi], w=w)
    return None


@_law("lemma-3.2.7",
      "a point of grade one comes from the filter or from the image")
def _check_lemma_3_2_7(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            for t in range(lat.n):
                if ups[t] == ONE:
                    if chi.grades[t] != ONE and all(
                        chi.grades[dd[lat.element_index(x)]] != ONE for x in w
                    ):
                        return _fail("lemma-3.2.7", inst,
                                     "grade one appeared from nowhere",
                                     chis=[chi], w=w,
                                     data={"theta": lat.elements[t]})
    return None


@_law("prop-3.3.1", "extension of a union is the join of the extensions")
def _check_prop_3_3_1(inst: Instance):
    ms = inst.ms
    for chi1 in inst.chis:
        for chi2 in inst.chis:
            union = fuzzy_union(chi1, chi2)
            for w in _all_w_sets(inst):
                lhs = tuple(
                    max(a, b) for a, b in zip(
                        _upsilon_grades(ms, chi1, w), _upsilon_grades(ms, chi2, w)
                    )
                )
                if lhs != _upsilon_grades(ms, union, w):
                    return _fail("prop-3.3.1", inst,
                                 "union and extension do not commute",
                                 chis=[chi1, chi2], w=w)
    return None


@_law("prop-3.3.2", "the extension maps meets to minima")
def _check_prop_3_3_2(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            for i in range(lat.n):
                for j in range(lat.n):
                    if ups[lat.meet_table[i][j]] != min(ups[i], ups[j]):
                        return _fail("prop-3.3.2", inst,
                                     "extension broke the meet equality",
                                     chis=[chi], w=w,
                                     data={"pair": [lat.elements[i],
                                                    lat.elements[j]]})
    return None


@_law("def-3.4-consistency",
      "both fixedness routes agree, and the canonical subsets never move "
      "a fuzzy filter")
def _check_def_3_4(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    bot_i = lat.element_index(lat.bottom)
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            pointwise = _upsilon_grades(ms, chi, w) == chi.grades
            if pointwise != is_fixed_relative(ms, chi, w):
                return _fail("def-3.4-consistency", inst,
                             "fixedness routes disagree", chis=[chi], w=w)
        canonical = [(lat.bottom,)]
        a_set = tuple(lat.elements[i] for i in range(lat.n) if dd[i] == bot_i)
        if a_set:
            canonical.append(a_set)
        c_set = tuple(
            lat.elements[i] for i in range(lat.n) if chi.grades[dd[i]] == ZERO
        )
        if c_set:
            canonical.append(c_set)
        for w in canonical:
            if not is_fixed_relative(ms, chi, w):
                return _fail("def-3.4-consistency", inst,
                             "a canonical subset moved the filter",
                             chis=[chi], w=w)
    return None


@_law("prop-3.6", "fixedness is inherited by nonempty subsets of W")
def _check_prop_3_6(inst: Instance):
    ms = inst.ms
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            if _upsilon_grades(ms, chi, w) != chi.grades:
                continue
            members = list(w)
            for mask in range(1, 1 << len(members)):
                z = tuple(m for k, m in enumerate(members) if mask >> k & 1)
                if _upsilon_grades(ms, chi, z) != chi.grades:
                    return _fail("prop-3.6", inst,
                                 "fixedness not inherited by a subset",
                                 chis=[chi], w=w, data={"z": list(z)})
    return None


@_law("prop-3.7", "a union of fixed filters is fixed")
def _check_prop_3_7(inst: Instance):
    ms = inst.ms
    for chi1 in inst.chis:
        for chi2 in inst.chis:
            union = fuzzy_union(chi1, chi2)
            for w in _all_w_sets(inst):
                if (_upsilon_grades(ms, chi1, w) == chi1.grades
                        and _upsilon_grades(ms, chi2, w) == chi2.grades):
                    if _upsilon_grades(ms, union, w) != union.grades:
                        return _fail("prop-3.7", inst,
                                     "union of fixed filters moved",
                                     chis=[chi1, chi2], w=w)
    return None


@_law("thm-3.8", "singleton extensions evaluate to a two-way maximum")
def _check_thm_3_8(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w_i, w_el in enumerate(lat.elements):
            ups = _upsilon_grades(ms, chi, (w_el,))
            expect = tuple(
                max(g, chi.grades[dd[w_i]]) for g in chi.grades
            )
            if ups != expect:
                return _fail("thm-3.8", inst,
                             "singleton extension is not the two-way maximum",
                             chis=[chi], w=(w_el,))
    return None


@_law("cor-3.9",
      "a singleton extension value differing from the image grade is the "
      "original grade")
def _check_cor_3_9(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w_i, w_el in enumerate(lat.elements):
            image_grade = chi.grades[dd[w_i]]
            ups = _upsilon_grades(ms, chi, (w_el,))
            for t in range(lat.n):
                if ups[t] != image_grade and ups[t] != chi.grades[t]:
                    return _fail("cor-3.9", inst,
                                 "dichotomy of singleton extension broke",
                                 chis=[chi], w=(w_el,),
                                 data={"theta": lat.elements[t]})
    return None


@_law("cor-3.10",
      "a singleton extension at its own reference point is the image grade")
def _check_cor_3_10(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w_i, w_el in enumerate(lat.elements):
            ups = _upsilon_grades(ms, chi, (w_el,))
            if ups[w_i] != chi.grades[dd[w_i]]:
                return _fail("cor-3.10", inst,
                             "extension at the reference point is off",
                             chis=[chi], w=(w_el,))
    return None


@_law("def-4.1-consistency",
      "the strong extension fixes the bottom singleton, grows the source, "
      "and keeps the unit")
def _check_def_4_1(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    top_i = lat.element_index(lat.top)
    for chi in inst.chis:
        if _omega_grades(ms, chi, (lat.bottom,)) != chi.grades:
            return _fail("def-4.1-consistency", inst,
                         "strong extension over the bottom moved the filter",
                         chis=[chi], w=(lat.bottom,))
        for w in _all_w_sets(inst):
            omg = _omega_grades(ms, chi, w)
            if any(o < g for o, g in zip(omg, chi.grades)):
                return _fail("def-4.1-consistency", inst,
                             "strong extension lost ground", chis=[chi], w=w)
            if omg[top_i] != ONE:
                return _fail("def-4.1-consistency", inst,
                             "strong extension lost the unit", chis=[chi], w=w)
    return None


@_law("upsilon-subset-omega", "the extension sits inside the strong extension")
def _check_upsilon_subset_omega(inst: Instance):
    ms = inst.ms
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            omg = _omega_grades(ms, chi, w)
            if any(u > o for u, o in zip(ups, omg)):
                return _fail("upsilon-subset-omega", inst,
                             "extension escaped the strong extension",
                             chis=[chi], w=w)
    return None


@_law("thm-4.3",
      "the strong extension of a fuzzy filter is a fuzzy filter "
      "(refutable for reference subsets with two or more elements: separate "
      "maxima need not commute with the meet)")
def _check_thm_4_3(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            omg = FuzzySet(lat, _omega_grades(ms, chi, w))
            if not classify(lat, omg).is_filter:
                return _fail("thm-4.3", inst,
                             "strong extension is not a fuzzy filter",
                             chis=[chi], w=w, data={"omega": omg})
    return None


@_law("remark-4.4",
      "for join-homomorphic filters the two extensions coincide")
def _check_remark_4_4(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        if not hom_report(lat, chi).is_join_hom:
            continue
        for w in _all_w_sets(inst):
            if _upsilon_grades(ms, chi, w) != _omega_grades(ms, chi, w):
                return _fail("remark-4.4", inst,
                             "extensions split despite join-homomorphism",
                             chis=[chi], w=w)
    return None


@_law("thm-4.7",
      "the extension evaluates through any dense element of the image")
def _check_thm_4_7(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            image = sorted({dd[lat.element_index(x)] for x in w})
            dense = dense_elements(chi, [lat.elements[i] for i in image])
            ups = _upsilon_grades(ms, chi, w)
            for d in dense.members:
                gd = chi(d)
                for t in range(lat.n):
                    if ups[t] != max(chi.grades[t], gd):
                        return _fail("thm-4.7", inst,
                                     "dense-element evaluation is off",
                                     chis=[chi], w=w,
                                     data={"dense": d,
                                           "theta": lat.elements[t]})
    return None


@_law("thm-4.8",
      "the strong extension hits a join exactly when that join is dense "
      "among the candidate joins")
def _check_thm_4_8(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            w_idx = [lat.element_index(x) for x in w]
            omega_row = _omega_grades(ms, chi, w)
            for t in range(lat.n):
                joins = [lat.join_table[t][dd[v]] for v in w_idx]
                dense = dense_elements(chi, [lat.elements[j] for j in joins])
                for v, j in zip(w_idx, joins):
                    lhs = chi.grades[j] == omega_row[t]
                    rhs = lat.elements[j] in dense.members
                    if lhs != rhs:
                        return _fail("thm-4.8", inst,
                                     "dense reading of the strong extension "
                                     "broke",
                                     chis=[chi], w=w,
                                     data={"theta": lat.elements[t],
                                           "w": lat.elements[v]})
    return None


@_law("thm-5.1",
      "join-homomorphic filters extend to lattice homomorphisms, and the "
      "grade-level double negation is inherited")
def _check_thm_5_1(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    dd = ms.dneg_table()
    for chi in inst.chis:
        if hom_report(lat, chi).is_join_hom:
            for w in _all_w_sets(inst):
                ups = FuzzySet(lat, _upsilon_grades(ms, chi, w))
                if not hom_report(lat, ups).is_lattice_hom:
                    return _fail("thm-5.1", inst,
                                 "extension is not a lattice homomorphism",
                                 chis=[chi], w=w)
        if all(chi.grades[dd[i]] == chi.grades[i] for i in range(lat.n)):
            for w in _all_w_sets(inst):
                ups = _upsilon_grades(ms, chi, w)
                if any(ups[dd[i]] != ups[i] for i in range(lat.n)):
                    return _fail("thm-5.1", inst,
                                 "double-negation compatibility not inherited",
                                 chis=[chi], w=w)
    return None


@_law("prop-5.2",
      "kernel of the extension: killed by the source and the whole image "
      "killed")
def _check_prop_5_2(inst: Instance):
    ms = inst.ms
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            if not kernel_characterization(ms, chi, w):
                return _fail("prop-5.2", inst,
                             "kernel characterization broke", chis=[chi], w=w)
    return None


@_law("prop-5.3",
      "cokernel of the extension: unit grade at the source or in the image")
def _check_prop_5_3(inst: Instance):
    ms = inst.ms
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            if not cokernel_characterization(ms, chi, w):
                return _fail("prop-5.3", inst,
                             "cokernel characterization broke", chis=[chi], w=w)
    return None


def _fibers(grades: tuple[Fraction, ...]) -> list[list[int]]:
    by_value: dict[Fraction, list[int]] = {}
    for i, g in enumerate(grades):
        by_value.setdefault(g, []).append(i)
    return list(by_value.values())


@_law("lemma-5.4-meet", "fibers of the extension are meet-closed")
def _check_lemma_5_4_meet(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            for fiber in _fibers(ups):
                members = set(fiber)
                for i in fiber:
                    for j in fiber:
                        if lat.meet_table[i][j] not in members:
                            return _fail(
                                "lemma-5.4-meet", inst,
                                "a fiber is not meet-closed",
                                chis=[chi], w=w,
                                data={"pair": [lat.elements[i],
                                               lat.elements[j]]},
                            )
    return None


@_law("lemma-5.4-join",
      "for join-homomorphic filters, fibers of the extension are join-closed")
def _check_lemma_5_4_join(inst: Instance):
    ms = inst.ms
    lat = ms.lattice
    for chi in inst.chis:
        if not hom_report(lat, chi).is_join_hom:
            continue
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            for fiber in _fibers(ups):
                members = set(fiber)
                for i in fiber:
                    for j in fiber:
                        if lat.join_table[i][j] not in members:
                            return _fail(
                                "lemma-5.4-join", inst,
                                "a fiber is not join-closed",
                                chis=[chi], w=w,
                                data={"pair": [lat.elements[i],
                                               lat.elements[j]]},
                            )
    return None


@_law(
    "example-4.2-validity",
    "the shipped seven-element fixture has a valid negation table "
    "(known-refutable; its table breaks two axioms)",
    requires_valid_ms=False,
    requires_filters=False,
    search_target=True,
    fixture="example4_printed",
)
def _check_example_4_2(inst: Instance):
    report = inst.ms.axiom_report
    if report.ok:
        return None
    failed = report.failed()
    pick = next(
        (c for c in failed if c.check_id == "double-negation-above"), failed[0]
    )
    return _fail("example-4.2-validity", inst,
                 "negation table violates the axioms",
                 data={"check": pick.check_id, "witness": dict(pick.witness or {})})


THEOREM_SUITE: tuple[str, ...] = tuple(
    rec.pid for rec in _REGISTRY.values()
    if not rec.search_target and rec.fixture is None
)

REQUIRED_IDS: tuple[str, ...] = (
    "prop-2.1", "thm-2.3-extended-filter",
    "thm-3.1-filter", "thm-3.1-prime",
    "lemma-3.2.1", "lemma-3.2.2", "lemma-3.2.3", "lemma-3.2.4",
    "lemma-3.2.5", "lemma-3.2.6", "lemma-3.2.7",
    "prop-3.3.1", "prop-3.3.2",
    "def-3.4-consistency", "prop-3.6", "prop-3.7",
    "thm-3.8", "cor-3.9", "cor-3.10",
    "def-4.1-consistency", "upsilon-subset-omega", "thm-4.3", "remark-4.4",
    "thm-4.7", "thm-4.8",
    "thm-5.1", "prop-5.2", "prop-5.3",
    "lemma-5.4-meet", "lemma-5.4-join",
    "example-4.2-validity",
)


def _registry_self_check() -> None:
    missing = [pid for pid in REQUIRED_IDS if pid not in _REGISTRY]
    if missing:
        from .errors import InternalInvariantError

        raise InternalInvariantError(f"unregistered law ids: {missing}")


_registry_self_check()


# ---------------------------------------------------------------------------
# running properties
# ---------------------------------------------------------------------------

def fixture_instance(name: str) -> Instance:
    from .file_format import document_to_objects
    from .fixtures import load_fixture

    lat, ms, named = document_to_objects(load_fixture(name))
    chis = tuple(
        fs for fs in named.values() if classify(lat, fs).is_filter
    )
    universe = tuple(sorted(
        {g for fs in named.values() for g in fs.grades} | {ZERO, ONE}
    ))
    return Instance(ms=ms, chis=chis, grade_universe=universe)


def run_property(pid: str, instance: Instance) -> Witness | None:
    """Deterministic verdict for one law on one instance; None means pass."""
    record = _REGISTRY.get(pid)
    if record is None:
        raise UnknownProperty(f"no law registered under {pid!r}")
    if record.fixture is not None:
        instance = fixture_instance(record.fixture)
    if instance.ms is None:
        raise HypothesisUnmet(pid, "instance has no negation table")
    if record.requires_valid_ms and not instance.ms.is_valid:
        raise HypothesisUnmet(pid, "negation table violates the axioms")
    if record.requires_filters and not instance.chis:
        raise HypothesisUnmet(pid, "no fuzzy filters available on the instance")
    return record.check(instance)


# ---------------------------------------------------------------------------
# sweeping and searching
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyOutcome:
    pid: str
    instances: int
    passes: int
    failures: int
    skips: int
    first_witness: Witness | None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.pid,
            "instances": self.instances,
            "passes": self.passes,
            "failures": self.failures,
            "skips": self.skips,
        }
        if self.first_witness is not None:
            out["first_witness"] = self.first_witness.to_dict()
        return out


@dataclass(frozen=True)
class SweepReport:
    config: SearchConfig
    outcomes: tuple[PropertyOutcome, ...]
    stats: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(o.failures == 0 for o in self.outcomes)

    def outcome(self, pid: str) -> PropertyOutcome:
        for o in self.outcomes:
            if o.pid == pid:
                return o
        raise KeyError(pid)

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "ok": self.ok,
            "properties": [o.to_dict() for o in self.outcomes],
            "stats": dict(sorted(self.stats.items())),
        }


def _all_neg_tables(lat: FiniteLattice) -> list[dict[str, str]]:
    if lat.n ** lat.n > 4 ** 4:
        raise SizeCapExceeded(
            "require_valid=False enumerates every table; too many here"
        )
    out = []
    for images in product(lat.elements, repeat=lat.n):
        out.append(dict(zip(lat.elements, images)))
    return out


def _instance_stream(cfg: SearchConfig):
    if cfg.mode == "exhaustive":
        for lat in lattice_catalog(cfg.max_elements):
            tables = (
                _ms_operations(lat) if cfg.require_valid else _all_neg_tables(lat)
            )
            pool = _filter_pool(lat, cfg.grade_universe)
            for neg in tables:
                yield Instance(MSAlgebra(lat, dict(neg)), pool, cfg.grade_universe)
    else:
        rng = random.Random(cfg.seed)
        # not every distributive lattice carries a valid negation
        candidates = [
            lat for lat in lattice_catalog(cfg.max_elements) if _ms_operations(lat)
        ]
        for _ in range(cfg.iterations):
            lat = rng.choice(candidates)
            neg = rng.choice(_ms_operations(lat))
            pool = _filter_pool(lat, cfg.grade_universe)
            yield Instance(MSAlgebra(lat, dict(neg)), pool, cfg.grade_universe)


def _neg_closure_stats(inst: Instance) -> tuple[int, int]:
    """How often fibers of the extension are closed under negation.

    Observational only: the meet/join closure of fibers is a law, the
    negation closure is not claimed anywhere and is merely counted.
    """
    ms = inst.ms
    lat = ms.lattice
    neg = ms.neg_table
    closed = total = 0
    for chi in inst.chis:
        for w in _all_w_sets(inst):
            ups = _upsilon_grades(ms, chi, w)
            for fiber in _fibers(ups):
                members = set(fiber)
                total += 1
                if all(neg[i] in members for i in fiber):
                    closed += 1
    return closed, total


def sweep(pids=None, cfg: SearchConfig | None = None) -> SweepReport:
    """Run a set of laws over the whole instance space of a config."""
    cfg = cfg or SearchConfig()
    if pids is None:
        selected = [r.pid for r in _REGISTRY.values() if r.fixture is None]
    else:
        selected = list(pids)
        for pid in selected:
            if pid not in _REGISTRY:
                raise UnknownProperty(f"no law registered under {pid!r}")

    counts = {
        pid: {"instances": 0, "passes": 0, "failures": 0, "skips": 0,
              "witness": None}
        for pid in selected
    }
    closed = total = 0

    fixture_pids = [p for p in selected if _REGISTRY[p].fixture is not None]
    stream_pids = [p for p in selected if _REGISTRY[p].fixture is None]

    for pid in fixture_pids:
        row = counts[pid]
        row["instances"] += 1
        witness = run_property(pid, fixture_instance(_REGISTRY[pid].fixture))
        if witness is None:
            row["passes"] += 1
        else:
            row["failures"] += 1
            row["witness"] = row["witness"] or witness

    for inst in _instance_stream(cfg):
        for pid in stream_pids:
            row = counts[pid]
            try:
                witness = run_property(pid, inst)
            except HypothesisUnmet:
                row["skips"] += 1
                continue
            row["instances"] += 1
            if witness is None:
                row["passes"] += 1
            else:
                row["failures"] += 1
                row["witness"] = row["witness"] or witness
        c, t = _neg_closure_stats(inst)
        closed += c
        total += t

    outcomes = tuple(
        PropertyOutcome(pid, row["instances"], row["passes"], row["failures"],
                        row["skips"], row["witness"])
        for pid, row in counts.items()
    )
    stats = {
        "inverse_class_neg_closed": closed,
        "inverse_class_fibers": total,
    }
    return SweepReport(cfg, outcomes, stats)


def search_counterexample(pid: str, cfg: SearchConfig | None = None
                          ) -> Witness | None:
    """First witness refuting one law within the config bounds, or None."""
    cfg = cfg or SearchConfig()
    record = _REGISTRY.get(pid)
    if record is None:
        raise UnknownProperty(f"no law registered under {pid!r}")
    if record.fixture is not None:
        return run_property(pid, fixture_instance(record.fixture))
    for inst in _instance_stream(cfg):
        try:
            witness = run_property(pid, inst)
        except HypothesisUnmet:
            continue
        if witness is not None:
            return witness
    return None
