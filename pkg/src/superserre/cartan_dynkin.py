"""Cartan data (A, Theta) and sign-decorated Dynkin diagrams.

The Cartan matrix is A = D^{-1} B where B is the Gram matrix of the simple
roots and D rescales rows: d_i = (a_i, a_i)/2 for non-isotropic roots and
d_i = l_m^2 / 2^kappa for isotropic ones, kappa = 0 exactly in type B.
The sign matrix keeps the signs of the Gram entries, which the diagram
glyphs alone do not determine.
"""

from __future__ import annotations

import json

from .scalars import Scalar, parse_scalar
from .rootdata import InconsistencyError

WHITE, GREY, BLACK = "white", "grey", "black"


class CartanDataError(InconsistencyError):
    """A constructed Cartan matrix violates its invariants."""


class CartanData:
    """B, D, A together with theta, kappa, l_m^2 and the sign matrix."""

    def __init__(self, family, b, d, theta, kappa, lm2, parities):
        self.family = family
        self.rank = len(b)
        self.b = b
        self.d = d
        self.theta = frozenset(theta)
        self.kappa = kappa
        self.lm2 = lm2
        self.parities = tuple(parities)
        self.a = [[b[i][j] / d[i] for j in range(self.rank)] for i in range(self.rank)]
        self.sgn = [
            [0 if b[i][j].is_zero() else b[i][j].sign_at_positive_sample()
             for j in range(self.rank)]
            for i in range(self.rank)
        ]
        self._validate()

    def is_isotropic(self, i):
        """1-based index; isotropic simple roots have b_ii = 0."""
        return self.b[i - 1][i - 1].is_zero()

    def _validate(self):
        r = self.rank
        for i in range(r):
            aii = self.a[i][i]
            if self.b[i][i].is_zero():
                if not aii.is_zero():
                    raise CartanDataError(f"a_{i+1}{i+1} = {aii} at an isotropic root")
            else:
                if aii != Scalar(2):
                    raise CartanDataError(f"a_{i+1}{i+1} = {aii}, expected 2")
                for j in range(r):
                    if j == i:
                        continue
                    try:
                        v = self.a[i][j].as_integer()
                    except ValueError:
                        raise CartanDataError(
                            f"a_{i+1}{j+1} = {self.a[i][j]} is not an integer"
                        ) from None
                    if v > 0:
                        raise CartanDataError(f"a_{i+1}{j+1} = {v} is positive")

    def a_integer(self, i, j):
        """Integer value of a_ij (1-based); raises CartanDataError otherwise."""
        try:
            return self.a[i - 1][j - 1].as_integer()
        except ValueError:
            raise CartanDataError(f"a_{i}{j} = {self.a[i-1][j-1]} is not an integer") from None

    def to_json(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "B": [[x.render() for x in row] for row in self.b],
            "D": [x.render() for x in self.d],
            "A": [[x.render() for x in row] for row in self.a],
            "theta": sorted(self.theta),
            "kappa": self.kappa,
            "lm2": self.lm2.render(),
            "sgn": self.sgn,
        }


def minimal_square_length(datum):
    """l_m^2 of the root datum.

    For D(2,1;a) this is the minimum of the parameter-independent values
    |(beta, beta)| > 0 (always 4, from the roots +-2e1); the same value is
    used for specialised members so that specialising the parameter commutes
    with every construction built on top of the Cartan matrix.
    """
    if datum.family == "D21a":
        return Scalar(4)
    best = None
    for beta in datum.all_roots:
        v = datum.form_value(beta, beta)
        if v.is_zero():
            continue
        q = abs(v.as_fraction())
        if best is None or q < best:
            best = q
    if best is None:
        raise CartanDataError(f"{datum.name} has no non-isotropic roots")
    return Scalar(best)


def cartan_matrix(datum, system):
    """CartanData of a simple system."""
    r = system.rank
    roots = system.roots
    b = [[datum.form_value(roots[i], roots[j]) for j in range(r)] for i in range(r)]
    lm2 = minimal_square_length(datum)
    kappa = 0 if datum.family == "B" else 1
    iso_d = lm2 / Scalar(2 ** kappa)
    d = []
    for i in range(r):
        if b[i][i].is_zero():
            d.append(iso_d)
        else:
            d.append(b[i][i] / 2)
    parities = tuple(1 if datum.is_odd(roots[i]) else 0 for i in range(r))
    return CartanData(datum.family, b, d, system.theta, kappa, lm2, parities)


class Edge:
    __slots__ = ("count", "arrow_towards", "sign", "b_label")

    def __init__(self, count, arrow_towards, sign, b_label=None):
        self.count = count
        self.arrow_towards = arrow_towards  # 0-based node index or None
        self.sign = sign
        self.b_label = b_label  # Scalar, populated for D(2,1;a) only

    def __eq__(self, other):
        return (
            isinstance(other, Edge)
            and (self.count, self.arrow_towards, self.sign, self.b_label)
            == (other.count, other.arrow_towards, other.sign, other.b_label)
        )

    def __repr__(self):
        bits = [f"count={self.count}", f"sign={self.sign}"]
        if self.arrow_towards is not None:
            bits.append(f"arrow->{self.arrow_towards}")
        if self.b_label is not None:
            bits.append(f"label={self.b_label.render()}")
        return "Edge(" + ", ".join(bits) + ")"


class DynkinDiagram:
    """Colored nodes and decorated edges; node indices are 0-based."""

    def __init__(self, nodes, edges, labelled=False):
        self.nodes = tuple(nodes)
        self.edges = dict(edges)  # (i, j) with i < j -> Edge
        self.labelled = labelled  # True for D(2,1;a)-type diagrams

    @property
    def size(self):
        return len(self.nodes)

    def edge(self, i, j):
        return self.edges.get((min(i, j), max(i, j)))

    def count(self, i, j):
        e = self.edge(i, j)
        return e.count if e else 0

    def arrow(self, i, j):
        e = self.edge(i, j)
        return e.arrow_towards if e else None

    def sign(self, i, j):
        e = self.edge(i, j)
        return e.sign if e else 0

    def b_label(self, i, j):
        e = self.edge(i, j)
        return e.b_label if e else None

    def neighbours(self, i):
        return [j for j in range(self.size) if j != i and self.count(i, j)]

    def is_connected(self):
        if not self.nodes:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.neighbours(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.size

    def __eq__(self, other):
        return (
            isinstance(other, DynkinDiagram)
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.labelled == other.labelled
        )

    def __repr__(self):
        return f"DynkinDiagram(nodes={list(self.nodes)}, edges={self.edges})"


def build_diagram(cd, family=None):
    """Decorated Dynkin diagram of a Cartan datum.

    For D(2,1;a) the nodes are joined by one line wherever a_ij != 0 and the
    line carries the Gram entry normalised so that the shortest parameter-free
    root has square length 2 (the convention of the reference tables).
    """
    family = family or cd.family
    r = cd.rank
    colors = []
    for i in range(1, r + 1):
        if cd.is_isotropic(i):
            colors.append(GREY)
        elif i in cd.theta:
            colors.append(BLACK)
        else:
            colors.append(WHITE)
    edges = {}
    if family == "D21a":
        scale = Scalar(2) / cd.lm2
        for i in range(r):
            for j in range(i + 1, r):
                if cd.a[i][j].is_zero():
                    continue
                edges[(i, j)] = Edge(1, None, cd.sgn[i][j], cd.b[i][j] * scale)
        return DynkinDiagram(colors, edges, labelled=True)

    for i in range(r):
        for j in range(i + 1, r):
            both_grey = colors[i] == GREY and colors[j] == GREY
            if both_grey:
                n = abs(cd.a_integer(i + 1, j + 1))
            else:
                n = max(abs(cd.a_integer(i + 1, j + 1)), abs(cd.a_integer(j + 1, i + 1)))
            if n == 0:
                continue
            arrow = None
            if n > 1 and not both_grey:
                targets = set()
                for s, t in ((i, j), (j, i)):
                    if colors[s] == GREY:
                        continue
                    val = -cd.a_integer(s + 1, t + 1)
                    targets.add(t if val == 1 else s)
                if len(targets) != 1:
                    raise CartanDataError(
                        f"inconsistent arrow between nodes {i} and {j}: {targets}"
                    )
                arrow = targets.pop()
            edges[(i, j)] = Edge(n, arrow, cd.sgn[i][j])
    return DynkinDiagram(colors, edges, labelled=False)


def full_subdiagrams(diag, k):
    """All k-node full sub-diagrams (induced edges, arrows and labels kept).

    Returns triples (node subset, induced diagram, connected flag); node
    subsets are 0-based and sorted, disconnected subsets are included.
    """
    if k > diag.size:
        raise ValueError(f"k = {k} exceeds the diagram size {diag.size}")
    from itertools import combinations

    out = []
    for subset in combinations(range(diag.size), k):
        relabel = {v: t for t, v in enumerate(subset)}
        nodes = [diag.nodes[v] for v in subset]
        edges = {}
        for (i, j), e in diag.edges.items():
            if i in relabel and j in relabel:
                a, bb = relabel[i], relabel[j]
                arrow = relabel[e.arrow_towards] if e.arrow_towards is not None else None
                key = (min(a, bb), max(a, bb))
                edges[key] = Edge(e.count, arrow, e.sign, e.b_label)
        sub = DynkinDiagram(nodes, edges, labelled=diag.labelled)
        out.append((subset, sub, sub.is_connected()))
    return out


# -- serialization -------------------------------------------------------------


def diagram_to_json_dict(diag):
    edges = []
    for (i, j), e in sorted(diag.edges.items()):
        edges.append(
            {
                "i": i,
                "j": j,
                "count": e.count,
                "arrowTowards": e.arrow_towards,
                "sign": e.sign,
                "bLabel": e.b_label.render() if e.b_label is not None else None,
            }
        )
    return {"nodes": list(diag.nodes), "edges": edges, "labelled": diag.labelled}


def diagram_from_json_dict(data):
    edges = {}
    for e in data["edges"]:
        label = e.get("bLabel")
        edges[(e["i"], e["j"])] = Edge(
            e["count"],
            e.get("arrowTowards"),
            e.get("sign", 0),
            parse_scalar(label) if label is not None else None,
        )
    return DynkinDiagram(data["nodes"], edges, labelled=data.get("labelled", False))


def parse_diagram(text):
    return diagram_from_json_dict(json.loads(text))


_NODE_GLYPH = {WHITE: "O", GREY: "(X)", BLACK: "(*)"}
_BAR = {1: "-", 2: "=", 3: "#"}


def _path_order(diag):
    """Node order if the diagram is a simple path, else None."""
    if diag.size == 1:
        return [0]
    deg = [len(diag.neighbours(v)) for v in range(diag.size)]
    health = diag.is_connected() and all(d <= 2 for d in deg) and deg.count(1) == 2
    if not health:
        return None
    start = min(v for v in range(diag.size) if deg[v] == 1)
    order = [start]
    prev = None
    while len(order) < diag.size:
        nxt = [u for u in diag.neighbours(order[-1]) if u != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _edge_ascii(diag, i, j):
    e = diag.edge(i, j)
    bar = _BAR[e.count]
    decorations = []
    if e.b_label is not None:
        decorations.append("{" + e.b_label.render() + "}")
    elif e.sign:
        decorations.append("[-]" if e.sign < 0 else "[+]")
    middle = "".join(decorations) or bar
    left = "<" if e.arrow_towards == i else bar
    right = ">" if e.arrow_towards == j else bar
    return f"{bar}{left}{middle}{right}{bar}"


def _diagram_ascii(diag):
    order = _path_order(diag)
    if order is not None:
        parts = [_NODE_GLYPH[diag.nodes[order[0]]]]
        for a, b in zip(order, order[1:]):
            parts.append(_edge_ascii(diag, a, b))
            parts.append(_NODE_GLYPH[diag.nodes[b]])
        return "".join(parts)
    lines = ["nodes: " + " ".join(f"{v}:{_NODE_GLYPH[c]}" for v, c in enumerate(diag.nodes))]
    for (i, j), _ in sorted(diag.edges.items()):
        lines.append(f"  {i} {_edge_ascii(diag, i, j)} {j}")
    return "\n".join(lines)


_LATEX_NODE = {WHITE: r"\bigcirc", GREY: r"\otimes", BLACK: r"\bullet"}


def _diagram_latex(diag):
    order = _path_order(diag)

    def edge_tex(i, j):
        e = diag.edge(i, j)
        core = {1: "-", 2: "=", 3: r"\equiv"}[e.count]
        if e.arrow_towards == j:
            core = core + ">"
        elif e.arrow_towards == i:
            core = "<" + core
        if e.b_label is not None:
            core += "^{" + e.b_label.render() + "}"
        return r"\;" + core + r"\;"

    if order is not None:
        parts = [_LATEX_NODE[diag.nodes[order[0]]]]
        for a, b in zip(order, order[1:]):
            parts.append(edge_tex(a, b))
            parts.append(_LATEX_NODE[diag.nodes[b]])
        return "$" + "".join(parts) + "$"
    lines = [
        "% nodes: " + " ".join(f"{v}:{diag.nodes[v]}" for v in range(diag.size))
    ]
    for (i, j), _ in sorted(diag.edges.items()):
        lines.append(f"$ {i} {edge_tex(i, j)} {j} $")
    return "\n".join(lines)


def serialize_diagram(diag, fmt):
    """Render a diagram as 'ascii', 'json' or 'latex'; json round-trips."""
    if fmt == "json":
        return json.dumps(diagram_to_json_dict(diag), sort_keys=True)
    if fmt == "ascii":
        return _diagram_ascii(diag)
    if fmt == "latex":
        return _diagram_latex(diag)
    raise ValueError(f"unknown diagram format {fmt!r}; use ascii, json or latex")
