"""The unary negation of MS-algebras: axioms, derived identities,
crisp extended filters, and exhaustive enumeration of negation tables.

``check_ms_axioms`` is a report producer rather than a constructor guard:
instances with broken tables must still load so that the raw evaluators
can reproduce their arithmetic.  Validity is a flag on the algebra; the
theorem machinery requires it, the evaluators do not.
"""

from __future__ import annotations

from .errors import EmptyW, SizeCapExceeded, UnknownElement
from .lattice_core import FilterSet, FiniteLattice, is_filter
from .report import Check, VerificationReport

MS_ENUM_CAP = 8


class MSAlgebra:
    """A finite lattice with a unary negation table.

    ``is_valid`` records whether the table satisfies all three axioms:
    negation swaps top to bottom, negation of a meet is the join of the
    negations, and every element sits below its double negation.
    """

    __slots__ = ("lattice", "neg", "neg_table", "_dneg", "is_valid", "axiom_report")

    def __init__(self, lattice: FiniteLattice, neg: dict[str, str]):
        self.lattice = lattice
        missing = [e for e in lattice.elements if e not in neg]
        if missing:
            raise UnknownElement(f"negation table missing entries for {missing}")
        for a, b in neg.items():
            lattice.element_index(a)
            lattice.element_index(b)
        self.neg = {e: neg[e] for e in lattice.elements}
        self.neg_table = tuple(lattice.element_index(neg[e]) for e in lattice.elements)
        self._dneg = tuple(self.neg_table[i] for i in self.neg_table)
        self.axiom_report = check_ms_axioms(lattice, neg)
        self.is_valid = self.axiom_report.ok

    def __eq__(self, other):
        if not isinstance(other, MSAlgebra):
            return NotImplemented
        return self.lattice == other.lattice and self.neg_table == other.neg_table

    def __hash__(self):
        return hash((self.lattice, self.neg_table))

    def __repr__(self):
        tag = "valid" if self.is_valid else "invalid"
        return f"MSAlgebra({self.lattice!r}, {tag})"

    def negate(self, e: str) -> str:
        return self.lattice.elements[self.neg_table[self.lattice.element_index(e)]]

    def dneg_table(self) -> tuple[int, ...]:
        """Index table of double negation."""
        return self._dneg

    @property
    def is_de_morgan(self) -> bool:
        """Valid and double negation is the identity."""
        return self.is_valid and all(self._dneg[i] == i for i in range(self.lattice.n))

    @property
    def is_stone(self) -> bool:
        """Valid and every negation joins with its double negation to the top."""
        lat = self.lattice
        top_i = lat.element_index(lat.top)
        return self.is_valid and all(
            lat.join_table[self.neg_table[i]][self._dneg[i]] == top_i
            for i in range(lat.n)
        )


def double_neg(ms: MSAlgebra, e: str) -> str:
    """Double negation of one element."""
    return ms.negate(ms.negate(e))


def check_ms_axioms(lat: FiniteLattice, neg: dict[str, str]) -> VerificationReport:
    """Check the three defining axioms, reporting a witness per failure."""
    n = lat.n
    table = [0] * n
    for e in lat.elements:
        if e not in neg:
            raise UnknownElement(f"negation table missing entry for {e!r}")
        table[lat.element_index(e)] = lat.element_index(neg[e])
    for target in neg.values():
        lat.element_index(target)

    checks: list[Check] = []

    top_i = lat.element_index(lat.top)
    bot_i = lat.element_index(lat.bottom)
    ok = table[top_i] == bot_i
    checks.append(Check(
        "unit-negation", ok,
        "" if ok else f"negation of {lat.top!r} is {lat.elements[table[top_i]]!r}, "
                      f"not {lat.bottom!r}",
    ))

    witness = None
    for i in range(n):
        for j in range(n):
            lhs = table[lat.meet_table[i][j]]
            rhs = lat.join_table[table[i]][table[j]]
            if lhs != rhs:
                witness = {
                    "pair": [lat.elements[i], lat.elements[j]],
                    "lhs": lat.elements[lhs],
                    "rhs": lat.elements[rhs],
                }
                break
        if witness:
            break
    checks.append(Check(
        "meet-de-morgan", witness is None,
        "" if witness is None else "negation of a meet differs from join of negations",
        witness,
    ))

    witness = None
    for i in range(n):
        dd = table[table[i]]
        if not lat.leq_table[i][dd]:
            witness = {"element": lat.elements[i], "double_negation": lat.elements[dd]}
            break
    checks.append(Check(
        "double-negation-above", witness is None,
        "" if witness is None else
        f"{witness['element']} is not below its double negation {witness['double_negation']}",
        witness,
    ))

    return VerificationReport("ms-axioms", tuple(checks))


def verify_derived_identities(ms: MSAlgebra) -> VerificationReport:
    """Identities forced by the axioms; a failure here means a bug.

    Checked for all pairs: negation of a join is the meet of negations,
    double negation distributes over join, triple negation collapses,
    and the bottom negates to the top.
    """
    lat = ms.lattice
    neg = ms.neg_table
    n = lat.n
    checks: list[Check] = []

    def scan_pairs(pred):
        for i in range(n):
            for j in range(n):
                if not pred(i, j):
                    return {"pair": [lat.elements[i], lat.elements[j]]}
        return None

    w = scan_pairs(lambda i, j: neg[lat.join_table[i][j]] == lat.meet_table[neg[i]][neg[j]])
    checks.append(Check("join-de-morgan", w is None, "", w))

    w = scan_pairs(
        lambda i, j: neg[neg[lat.join_table[i][j]]] == lat.join_table[neg[neg[i]]][neg[neg[j]]]
    )
    checks.append(Check("double-negation-join", w is None, "", w))

    w = None
    for i in range(n):
        if neg[neg[neg[i]]] != neg[i]:
            w = {"element": lat.elements[i]}
            break
    checks.append(Check("triple-negation", w is None, "", w))

    ok = neg[lat.element_index(lat.bottom)] == lat.element_index(lat.top)
    checks.append(Check("zero-negation", ok,
                        "" if ok else f"negation of {lat.bottom!r} is not {lat.top!r}"))

    return VerificationReport("derived-identities", tuple(checks))


def extended_filter_crisp(ms: MSAlgebra, filt: FilterSet, w_subset) -> FilterSet:
    """Crisp extension: elements whose join with every double-negated
    reference element lands in the filter.  Always a filter containing
    the input (this needs only distributivity, not a valid table)."""
    lat = ms.lattice
    w_idx = [lat.element_index(w) for w in w_subset]
    if not w_idx:
        raise EmptyW("reference subset W is empty")
    inside = [lat.elements[i] in filt.members for i in range(lat.n)]
    dd = ms.dneg_table()
    members = set()
    for i in range(lat.n):
        if all(inside[lat.join_table[i][dd[w]]] for w in w_idx):
            members.add(lat.elements[i])
    result = FilterSet(lat, frozenset(members))
    assert is_filter(lat, result.members).ok and filt.members <= result.members
    return result


def enumerate_ms_operations(lat: FiniteLattice, max_elements: int = MS_ENUM_CAP
                            ) -> list[dict[str, str]]:
    """All negation tables satisfying the axioms, in lexicographic order.

    Backtracks over elements in input order.  The top element is pinned
    to the bottom, and partially assigned tables are pruned with
    antitonicity (a <= b forces neg(b) <= neg(a), a consequence of the
    meet axiom) plus the meet and double-negation axioms where all the
    participating entries are already assigned.
    """
    n = lat.n
    if n > max_elements:
        raise SizeCapExceeded(f"{n} elements exceeds cap {max_elements}")
    top_i = lat.element_index(lat.top)
    bot_i = lat.element_index(lat.bottom)
    leq = lat.leq_table
    meet = lat.meet_table
    join = lat.join_table

    assignment = [-1] * n
    results: list[dict[str, str]] = []

    def consistent(i: int) -> bool:
        ai = assignment[i]
        for j in range(n):
            aj = assignment[j]
            if aj < 0:
                continue
            if leq[i][j] and not leq[aj][ai]:
                return False
            if leq[j][i] and not leq[ai][aj]:
                return False
            m = meet[i][j]
            if assignment[m] >= 0 and assignment[m] != join[ai][aj]:
                return False
        for j in range(n):
            aj = assignment[j]
            if aj >= 0 and assignment[aj] >= 0 and not leq[j][assignment[aj]]:
                return False
        return True

    def backtrack(pos: int) -> None:
        if pos == n:
            table = {lat.elements[i]: lat.elements[assignment[i]] for i in range(n)}
            if check_ms_axioms(lat, table).ok:
                results.append(table)
            return
        candidates = [bot_i] if pos == top_i else range(n)
        for cand in candidates:
            assignment[pos] = cand
            if consistent(pos):
                backtrack(pos + 1)
            assignment[pos] = -1

    backtrack(0)
    return results
