"""Extension operators on fuzzy filters over an MS-algebra.

Two pointwise operators over a nonempty reference subset W:

    upsilon(theta) = max(chi(theta), max over w in W of chi(w''))
    omega(theta)   = max over w in W of chi(theta join w'')

where '' is double negation.  Both are raw evaluators: they accept
invalid negation tables and non-filter grade maps on purpose, so flawed
instances still evaluate to their exact grades; the law suite in the
verifier applies them only to validated instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CarrierMismatch, EmptyW, InternalInvariantError, UnknownElement
from .fuzzy_core import FuzzySet
from .ms_algebra import MSAlgebra


@dataclass(frozen=True)
class ExtensionResult:
    """Both extensions of one (chi, W) pair, plus the shared base grade."""

    source: FuzzySet
    subset: tuple[str, ...]
    upsilon: FuzzySet
    omega: FuzzySet
    base_grade: Fraction


@dataclass(frozen=True)
class DenseElements:
    """Argmax of a grade map restricted to a subset.

    ``members`` is the primary notion: the elements of W attaining the
    maximal grade.  ``level_cut`` is the carrier-wide cut at that grade,
    reported alongside because the threshold reading admits elements
    outside W as well.
    """

    members: frozenset[str]
    threshold: Fraction
    level_cut: frozenset[str]


@dataclass(frozen=True)
class CanonicalFixedSet:
    """One canonical reference subset relative to which chi cannot grow."""

    name: str
    members: frozenset[str]
    note: str = ""


def _w_indices(ms: MSAlgebra, w_subset) -> list[int]:
    lat = ms.lattice
    idx = sorted({lat.element_index(w) for w in w_subset})
    if not idx:
        raise EmptyW("reference subset W is empty")
    return idx


def _base_grade(ms: MSAlgebra, chi: FuzzySet, w_idx) -> Fraction:
    dd = ms.dneg_table()
    return max(chi.grades[dd[w]] for w in w_idx)


def extend(ms: MSAlgebra, chi: FuzzySet, w_subset) -> ExtensionResult:
    """Compute both extensions at once."""
    lat = ms.lattice
    if chi.carrier != lat:
        raise CarrierMismatch("grade map does not live on the algebra's lattice")
    w_idx = _w_indices(ms, w_subset)
    dd = ms.dneg_table()
    base = _base_grade(ms, chi, w_idx)
    ups = tuple(max(g, base) for g in chi.grades)
    omg = tuple(
        max(chi.grades[lat.join_table[i][dd[w]]] for w in w_idx)
        for i in range(lat.n)
    )
    return ExtensionResult(
        source=chi,
        subset=tuple(lat.elements[i] for i in w_idx),
        upsilon=FuzzySet(lat, ups),
        omega=FuzzySet(lat, omg),
        base_grade=base,
    )


def upsilon(ms: MSAlgebra, chi: FuzzySet, w_subset) -> FuzzySet:
    """Pointwise max of chi with the best grade of a double-negated
    reference element."""
    return extend(ms, chi, w_subset).upsilon


def omega(ms: MSAlgebra, chi: FuzzySet, w_subset) -> FuzzySet:
    """Pointwise best grade of the join with a double-negated reference
    element; contains upsilon whenever chi is a fuzzy filter."""
    return extend(ms, chi, w_subset).omega


def is_fixed_relative(ms: MSAlgebra, chi: FuzzySet, w_subset) -> bool:
    """True when the extension does not move chi.

    Computed both as pointwise equality of upsilon with chi and as
    base grade <= min grade; the two routes must agree.
    """
    res = extend(ms, chi, w_subset)
    pointwise = res.upsilon.grades == chi.grades
    via_base = res.base_grade <= min(chi.grades)
    if pointwise != via_base:
        raise InternalInvariantError("fixedness routes disagree")
    return pointwise


def fixed_witness_sets(ms: MSAlgebra, chi: FuzzySet) -> list[CanonicalFixedSet]:
    """The canonical subsets that never move a fuzzy filter.

    Returns the bottom singleton, the elements whose double negation is
    bottom, and the elements whose double negation has grade zero.  Empty
    sets are kept in the list but flagged, since extensions require a
    nonempty W.
    """
    lat = ms.lattice
    dd = ms.dneg_table()
    bot_i = lat.element_index(lat.bottom)

    a_members = frozenset(
        lat.elements[i] for i in range(lat.n) if dd[i] == bot_i
    )
    c_members = frozenset(
        lat.elements[i] for i in range(lat.n) if chi.grades[dd[i]] == 0
    )
    out = [
        CanonicalFixedSet("bottom", frozenset({lat.bottom})),
        CanonicalFixedSet("double-negation-bottom", a_members,
                          "" if a_members else "empty: skipped"),
        CanonicalFixedSet("zero-grade-double-negation", c_members,
                          "" if c_members else "empty: skipped"),
    ]
    return out


def dense_elements(mu: FuzzySet, w_subset) -> DenseElements:
    """Argmax of mu within W, with the threshold and its carrier-wide cut."""
    lat = mu.carrier
    idx = sorted({lat.element_index(w) for w in w_subset})
    if not idx:
        raise EmptyW("reference subset W is empty")
    threshold = max(mu.grades[i] for i in idx)
    members = frozenset(lat.elements[i] for i in idx if mu.grades[i] == threshold)
    cut = frozenset(e for e, g in zip(lat.elements, mu.grades) if g >= threshold)
    return DenseElements(members, threshold, cut)


def upsilon_via_dense(ms: MSAlgebra, chi: FuzzySet, w_subset, theta: str
                      ) -> tuple[Fraction, str]:
    """Evaluate upsilon at one point through a dense element certificate.

    Picks the first (in element order) argmax element of chi over the
    double-negation image of W and returns (grade, certificate).  The
    grade is cross-checked against the direct evaluation.
    """
    lat = ms.lattice
    w_idx = _w_indices(ms, w_subset)
    dd = ms.dneg_table()
    image = sorted({dd[w] for w in w_idx})
    dense = dense_elements(chi, [lat.elements[i] for i in image])
    certificate = min(dense.members, key=lat.element_index)
    value = max(chi(theta), chi(certificate))
    direct = upsilon(ms, chi, w_subset)(theta)
    if value != direct:
        raise InternalInvariantError(
            f"dense-element evaluation {value} differs from direct {direct}"
        )
    return value, certificate


def omega_dense_equivalence(ms: MSAlgebra, chi: FuzzySet, w_subset,
                            theta: str, w: str) -> bool:
    """Shared truth value of the two sides of the dense-element reading
    of omega at one point:

        omega(theta) equals chi(theta join w'')
        iff theta join w'' attains the maximal grade among
        {theta join v'' : v in W}.

    The equivalence itself is asserted; the common verdict is returned.
    """
    lat = ms.lattice
    w_idx = _w_indices(ms, w_subset)
    if lat.element_index(w) not in w_idx:
        raise UnknownElement(f"{w!r} is not a member of W")
    dd = ms.dneg_table()
    t = lat.element_index(theta)
    join_elements = [lat.elements[lat.join_table[t][dd[v]]] for v in w_idx]
    this_join = lat.elements[lat.join_table[t][dd[lat.element_index(w)]]]
    lhs = omega(ms, chi, w_subset)(theta) == chi(this_join)
    rhs = this_join in dense_elements(chi, join_elements).members
    if lhs != rhs:
        raise InternalInvariantError("dense-element equivalence broke")
    return lhs
