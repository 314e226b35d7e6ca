"""The theorem harness: presented algebras versus reference root systems.

Reference dimensions always come from root counting on the datum, never from
a second presentation, so the two sides of every comparison are independent.
"""

from __future__ import annotations

from .quotient import (
    PreconditionViolation,
    quotient_dimensions,
    z_grading_report,
)
from .rootdata import (
    distinguished_simple_system,
    enumerate_simple_systems,
    positive_roots,
)
from .serre import presentation


def reference_multiplicities(system):
    """Weight -> multiplicity table of the positive roots (all ones)."""
    return {coords: 1 for coords in positive_roots(system).values()}


def highest_root_height(system):
    return max(sum(c) for c in positive_roots(system).values())


def default_height_cap(system):
    """Generous default: twice the highest root height plus two."""
    return 2 * highest_root_height(system) + 2


def expected_total_dimension(datum):
    rank = distinguished_simple_system(datum).rank
    return rank + len(datum.even_roots) + len(datum.odd_roots)


class VerificationReport:
    """Comparison of a presented algebra against the reference root system."""

    def __init__(self, datum, system, passed, mismatches, expected_total, got_total, notes=()):
        self.datum_name = datum.name
        self.system = system
        self.passed = passed
        self.mismatches = mismatches  # list of (weight, expected dim, got dim)
        self.expected_total = expected_total
        self.got_total = got_total
        self.notes = list(notes)

    def to_json(self):
        return {
            "datum": self.datum_name,
            "simpleRoots": [repr(b) for b in self.system.roots],
            "pass": self.passed,
            "mismatches": [
                {"nu": list(w), "expected": e, "got": g} for w, e, g in self.mismatches
            ],
            "expectedTotal": self.expected_total,
            "gotTotal": self.got_total,
            "notes": self.notes,
        }

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} total={self.got_total if self.got_total is not None else '?'}"

    def __repr__(self):
        return f"<VerificationReport {self.datum_name} {self.summary()}>"


def verify_presentation(datum, system, max_height=None):
    """Build the presentation, run the graded quotient and compare: surviving
    weights must be exactly the positive roots with multiplicity one, and the
    total dimension must match the root count."""
    ref = reference_multiplicities(system)
    cap = max_height or default_height_cap(system)
    pres = presentation(datum, system)
    report = quotient_dimensions(pres, cap, excess_guard=ref)
    notes = []
    mismatches = []
    if not report.closed:
        notes.append(report.warning or "no closure within the height cap")
    surviving = report.surviving_weights()
    for w, q in sorted(surviving.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        expected = ref.get(w, 0)
        if q != expected:
            mismatches.append((w, expected, q))
    for w in sorted(ref, key=lambda w: (sum(w), w)):
        if w not in surviving:
            mismatches.append((w, 1, 0))
    expected_total = expected_total_dimension(datum)
    got_total = report.total_dim
    passed = report.closed and not mismatches and got_total == expected_total
    result = VerificationReport(datum, system, passed, mismatches, expected_total, got_total, notes)
    result.quotient_report = report
    result.presentation = pres
    return result


class NecessityResult:
    """Outcome of deleting one higher order element from a presentation."""

    def __init__(self, necessary, first_excess, provenance, nodes):
        self.necessary = necessary
        self.first_excess = first_excess  # weight where the excess first appears
        self.provenance = provenance
        self.nodes = nodes

    def __bool__(self):
        return self.necessary

    def to_json(self):
        return {
            "provenance": self.provenance,
            "nodes": list(self.nodes),
            "necessary": self.necessary,
            "firstExcessWeight": list(self.first_excess) if self.first_excess else None,
        }


def necessity_test(datum, system, relation_index, max_height=None):
    """True iff removing the addressed higher order element (and its mirror)
    lets some weight exceed its reference multiplicity within the cap."""
    pres = presentation(datum, system)
    element = pres.e_side[relation_index]
    if element.provenance == "standard":
        raise PreconditionViolation(
            f"element {relation_index} is a standard Serre element, not higher order"
        )
    cap = max_height or default_height_cap(system)
    reduced = pres.without_element(relation_index)
    ref = reference_multiplicities(system)
    report = quotient_dimensions(reduced, cap, excess_guard=ref)
    excesses = []
    for w, (_, _, q) in report.per_weight.items():
        if q > ref.get(w, 0):
            excesses.append(w)
    excesses.sort(key=lambda w: (sum(w), w))
    first = excesses[0] if excesses else None
    return NecessityResult(bool(excesses), first, element.provenance, element.nodes)


def necessity_survey(datum, system, max_height=None):
    """Necessity of every higher order element of the presentation."""
    pres = presentation(datum, system)
    out = []
    for idx, el in enumerate(pres.e_side):
        if el.provenance == "standard":
            continue
        out.append(necessity_test(datum, system, idx, max_height=max_height))
    return out


def verify_all_borels(datum, max_height=None):
    """One report per enumerated simple system."""
    return [
        verify_presentation(datum, system, max_height=max_height)
        for system in enumerate_simple_systems(datum)
    ]


def compare_z_grading(datum, system, d, max_height=None):
    """Table k -> (dim g_k, dim L_k, equal?) for the grading at node d.

    The g side is the presented algebra's grading; the L side is recomputed
    from the positive roots by the coefficient of alpha_d (rank plus both
    signs of the zero-coefficient roots at k = 0).
    """
    result = verify_presentation(datum, system, max_height=max_height)
    if not result.passed:
        raise PreconditionViolation(
            f"z-grading comparison requires a passing verification for {datum.name}"
        )
    grading = z_grading_report(result.presentation, d, report=result.quotient_report)
    ref = {0: system.rank}
    for coords in positive_roots(system).values():
        k = coords[d - 1]
        if k == 0:
            ref[0] += 2
        else:
            ref[k] = ref.get(k, 0) + 1
    table = {}
    for k in sorted(set(grading.dims) | set(ref)):
        g = grading.dims.get(k, 0)
        l = ref.get(k, 0)
        table[k] = (g, l, g == l)
    return table
