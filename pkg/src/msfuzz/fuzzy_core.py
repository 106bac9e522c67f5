"""Fuzzy sets with exact rational grades, classification, level cuts,
bounded enumeration, and the grade-universe-bounded primality check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CarrierMismatch,
    GradeOutOfRange,
    InternalInvariantError,
    NotProper,
    SizeCapExceeded,
)
from .grades import ONE, ZERO, ensure_grade
from .lattice_core import FiniteLattice
from .report import Check, VerificationReport

FUZZY_ENUM_CAP = 64  # bound on |elements| * |grade universe|


@dataclass(frozen=True)
class FuzzySet:
    """Total map from carrier elements to grades, stored in element order."""

    carrier: FiniteLattice
    grades: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.grades) != self.carrier.n:
            raise GradeOutOfRange("grade tuple does not cover the carrier")
        for g in self.grades:
            ensure_grade(g)

    @classmethod
    def from_mapping(cls, carrier: FiniteLattice, mapping) -> "FuzzySet":
        missing = [e for e in carrier.elements if e not in mapping]
        if missing:
            raise GradeOutOfRange(f"missing grades for {missing}")
        return cls(carrier, tuple(Fraction(mapping[e]) for e in carrier.elements))

    def __call__(self, e: str) -> Fraction:
        return self.grades[self.carrier.element_index(e)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.carrier.elements, self.grades))

    def is_contained_in(self, other: "FuzzySet") -> bool:
        _same_carrier(self, other)
        return all(a <= b for a, b in zip(self.grades, other.grades))

    def is_constant(self) -> bool:
        return len(set(self.grades)) <= 1


@dataclass(frozen=True)
class FuzzyClassification:
    is_sublattice: bool
    is_ideal: bool
    is_filter: bool
    is_proper: bool
    witness: tuple[str, str] | None = None


def _same_carrier(a: FuzzySet, b: FuzzySet) -> None:
    if a.carrier != b.carrier:
        raise CarrierMismatch("fuzzy sets live on different carriers")


def fuzzy_union(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    """Pointwise maximum."""
    _same_carrier(a, b)
    return FuzzySet(a.carrier, tuple(max(x, y) for x, y in zip(a.grades, b.grades)))


def fuzzy_intersection(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    """Pointwise minimum."""
    _same_carrier(a, b)
    return FuzzySet(a.carrier, tuple(min(x, y) for x, y in zip(a.grades, b.grades)))


def _filter_by_definition(lat: FiniteLattice, g: tuple[Fraction, ...]) -> bool:
    if g[lat.element_index(lat.top)] != ONE:
        return False
    n = lat.n
    for i in range(n):
        for j in range(n):
            if g[lat.meet_table[i][j]] < min(g[i], g[j]):
                return False
            if g[lat.join_table[i][j]] < max(g[i], g[j]):
                return False
    return True


def _ideal_by_definition(lat: FiniteLattice, g: tuple[Fraction, ...]) -> bool:
    if g[lat.element_index(lat.bottom)] != ONE:
        return False
    n = lat.n
    for i in range(n):
        for j in range(n):
            if g[lat.meet_table[i][j]] < max(g[i], g[j]):
                return False
            if g[lat.join_table[i][j]] < min(g[i], g[j]):
                return False
    return True


def classify(lat: FiniteLattice, chi: FuzzySet) -> FuzzyClassification:
    """Classify a fuzzy set as sublattice / ideal / filter / proper.

    Filters are decided by the two-clause characterization (unit grade 1
    and meets mapped to minima); the three-clause definition is evaluated
    as well and any disagreement raises, since the two are provably
    equivalent.  Dually for ideals.  The reported witness is the first
    pair breaking the filter meet equality, scanning in element order.
    """
    if chi.carrier != lat:
        raise CarrierMismatch("fuzzy set does not live on the given lattice")
    g = chi.grades
    n = lat.n

    sublattice = True
    for i in range(n):
        for j in range(n):
            lo = min(g[i], g[j])
            if g[lat.meet_table[i][j]] < lo or g[lat.join_table[i][j]] < lo:
                sublattice = False
                break
        if not sublattice:
            break

    meet_witness = None
    meet_equal = True
    for i in range(n):
        for j in range(n):
            if g[lat.meet_table[i][j]] != min(g[i], g[j]):
                meet_equal = False
                meet_witness = (lat.elements[i], lat.elements[j])
                break
        if not meet_equal:
            break
    filter_char = g[lat.element_index(lat.top)] == ONE and meet_equal

    join_equal = all(
        g[lat.join_table[i][j]] == min(g[i], g[j])
        for i in range(n) for j in range(n)
    )
    ideal_char = g[lat.element_index(lat.bottom)] == ONE and join_equal

    if filter_char != _filter_by_definition(lat, g):
        raise InternalInvariantError(
            "filter definition and characterization disagree"
        )
    if ideal_char != _ideal_by_definition(lat, g):
        raise InternalInvariantError(
            "ideal definition and characterization disagree"
        )

    return FuzzyClassification(
        is_sublattice=sublattice,
        is_ideal=ideal_char,
        is_filter=filter_char,
        is_proper=not chi.is_constant(),
        witness=None if filter_char else meet_witness,
    )


def fuzzy_filter_report(lat: FiniteLattice, chi: FuzzySet, name: str = "chi"
                        ) -> VerificationReport:
    """Per-clause filter diagnosis with exact witnesses, for validation output."""
    g = chi.grades
    n = lat.n
    checks: list[Check] = []

    top_grade = g[lat.element_index(lat.top)]
    checks.append(Check(
        f"fuzzy.{name}.unit", top_grade == ONE,
        "" if top_grade == ONE else f"grade of {lat.top!r} is {top_grade}, not 1",
    ))

    witness = None
    for i in range(n):
        for j in range(n):
            got = g[lat.meet_table[i][j]]
            want = min(g[i], g[j])
            if got != want:
                witness = {
                    "pair": [lat.elements[i], lat.elements[j]],
                    "lhs": str(got),
                    "rhs": str(want),
                }
                break
        if witness:
            break
    checks.append(Check(
        f"fuzzy.{name}.meet-equality", witness is None,
        "" if witness is None else
        "grade of a meet differs from the minimum of the grades",
        witness,
    ))

    cls = classify(lat, chi)
    checks.append(Check(f"fuzzy.{name}.is-filter", cls.is_filter))
    return VerificationReport(f"fuzzy-filter:{name}", tuple(checks))


def level_cut(mu: FuzzySet, t: Fraction) -> frozenset[str]:
    """Elements with grade at least ``t``."""
    ensure_grade(t)
    lat = mu.carrier
    return frozenset(e for e, g in zip(lat.elements, mu.grades) if g >= t)


def enumerate_fuzzy_filters(lat: FiniteLattice, grade_universe,
                            cap: int = FUZZY_ENUM_CAP) -> list[FuzzySet]:
    """All fuzzy filters with grades drawn from a finite universe.

    Deterministic: maps are produced in lexicographic order over element
    positions with grades ascending.  Pruned by isotonicity and by the
    meet equality on already-assigned prefixes.
    """
    universe = sorted(set(Fraction(g) for g in grade_universe))
    for g in universe:
        ensure_grade(g)
    if ONE not in universe:
        raise ValueError("grade universe must contain 1")
    if lat.n * len(universe) > cap:
        raise SizeCapExceeded(
            f"|elements| * |grades| = {lat.n * len(universe)} exceeds cap {cap}"
        )

    n = lat.n
    top_i = lat.element_index(lat.top)
    grades: list[Fraction | None] = [None] * n
    out: list[FuzzySet] = []

    def consistent(i: int) -> bool:
        gi = grades[i]
        for j in range(n):
            gj = grades[j]
            if gj is None:
                continue
            if lat.leq_table[i][j] and gi > gj:
                return False
            if lat.leq_table[j][i] and gj > gi:
                return False
            m = lat.meet_table[i][j]
            if grades[m] is not None and grades[m] != min(gi, gj):
                return False
        return True

    def backtrack(pos: int) -> None:
        if pos == n:
            candidate = FuzzySet(lat, tuple(grades))
            if classify(lat, candidate).is_filter:
                out.append(candidate)
            return
        options = [ONE] if pos == top_i else universe
        for g in options:
            grades[pos] = g
            if consistent(pos):
                backtrack(pos + 1)
            grades[pos] = None

    backtrack(0)
    return out


def is_prime_fuzzy_filter_bounded(lat: FiniteLattice, chi: FuzzySet,
                                  grade_universe=None, cap: int = FUZZY_ENUM_CAP,
                                  pool=None):
    """Bounded primality: no pair of fuzzy filters over the universe has
    intersection inside ``chi`` while neither factor is inside it.

    The universe defaults to the grades of ``chi`` plus {0, 1} and is
    always widened to include them.  A negative verdict is conclusive; a
    positive one is relative to the universe.  Returns (bool, witness
    pair or None).  ``pool`` short-circuits the filter enumeration when
    the caller already holds it for the same lattice and universe.
    """
    cls = classify(lat, chi)
    if not cls.is_filter:
        raise NotProper("primality is defined for fuzzy filters only")
    if not cls.is_proper:
        raise NotProper("primality is defined for proper (non-constant) filters")
    universe = set(chi.grades) | {ZERO, ONE}
    if grade_universe is not None:
        universe |= {Fraction(g) for g in grade_universe}
    if pool is None:
        pool = enumerate_fuzzy_filters(lat, sorted(universe), cap=cap)
    for phi in pool:
        phi_in = phi.is_contained_in(chi)
        for psi in pool:
            if not fuzzy_intersection(phi, psi).is_contained_in(chi):
                continue
            if phi_in or psi.is_contained_in(chi):
                continue
            return False, (phi, psi)
    return True, None
