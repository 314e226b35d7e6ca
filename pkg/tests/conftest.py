"""Shared helpers for the test suite."""

from itertools import permutations

from superserre.cartan_dynkin import build_diagram, cartan_matrix


# family, constructor kwargs, expected total dimension (rank + root count)
FAMILY_MATRIX = [
    ("A", dict(m=1, n=0), 8),
    ("A", dict(m=1, n=1), 15),
    ("A", dict(m=2, n=1), 24),
    ("B", dict(m=0, n=1), 5),
    ("B", dict(m=0, n=2), 14),
    ("B", dict(m=1, n=1), 12),
    ("B", dict(m=1, n=2), 25),
    ("C", dict(n=3), 19),
    ("D", dict(m=2, n=1), 17),
    ("D", dict(m=2, n=2), 32),
    ("F4", {}, 40),
    ("G3", {}, 31),
    ("D21a", {}, 17),
]


def diagram_shape(diag):
    """Canonical relabelling-invariant fingerprint of a decorated diagram.

    Arrows are kept as directed data, signs are dropped (they are checked
    separately where the reference tables pin them), labels are kept for
    labelled diagrams.
    """
    best = None
    n = diag.size
    for perm in permutations(range(n)):
        nodes = tuple(diag.nodes[perm.index(k)] for k in range(n))
        remap = {old: new for old, new in zip(range(n), perm)}
        edges = []
        for (i, j), e in diag.edges.items():
            a, b = remap[i], remap[j]
            arrow = remap[e.arrow_towards] if e.arrow_towards is not None else None
            label = e.b_label.render() if e.b_label is not None else None
            edges.append((min(a, b), max(a, b), e.count, arrow, label))
        key = (nodes, tuple(sorted(edges)))
        if best is None or key < best:
            best = key
    return best


def shape_of(datum, system):
    return diagram_shape(build_diagram(cartan_matrix(datum, system)))


def make_shape(colors, edges):
    """Build a fingerprint from a literal description.

    `edges` is a list of (i, j, count, arrow_or_None, label_or_None).
    """
    from superserre.cartan_dynkin import DynkinDiagram, Edge
    from superserre.scalars import parse_scalar

    e = {}
    for i, j, count, arrow, label in edges:
        e[(min(i, j), max(i, j))] = Edge(
            count, arrow, 0, parse_scalar(label) if label is not None else None
        )
    return diagram_shape(DynkinDiagram(colors, e, labelled=any(x[4] for x in edges)))
