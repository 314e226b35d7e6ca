"""The positive part of the presented algebra, built weight by weight.

Two engines agree on every weight:

* `IdealWordEngine` spans the ideal generated by the relation set inside the
  free Lie superalgebra directly (left-normed ad-words on generators acting
  on the relation elements), with exact linear algebra on the associative
  word expansion of each multidegree component.  This is the reference
  implementation behind `ideal_component`; it is quadratic in the component
  sizes and is used on small weights and in cross-validation tests.

* `quotient_dimensions` runs a graded covering construction: each height
  level of the quotient is built from the previous one by imposing the
  rewritten relation elements together with the super-Jacobi consistency
  relations and even-square constraints.  All linear algebra happens in
  quotient coordinates, so components stay tiny even when the ambient free
  components are huge.  Reported ideal ranks are free dimension minus
  quotient dimension.
"""

from __future__ import annotations

from .freelie import (
    _Echelon,
    component,
    content_height,
    content_parity,
    expand_terms,
    free_dimension,
    generator_bracket_word,
    lower_terms,
    tree_content,
)
from .scalars import ONE, Scalar, ZERO


class EngineError(RuntimeError):
    """Internal consistency violation in the quotient engine."""


class PreconditionViolation(ValueError):
    """An operation was called outside its stated precondition."""


def _unit(r, i):
    return tuple(1 if j == i - 1 else 0 for j in range(r))


def _weight_sub(nu, i):
    out = list(nu)
    out[i - 1] -= 1
    return tuple(out)


# -- reference engine: ideal spanned inside the free algebra -------------------


class IdealWordEngine:
    """Left-normed ad-word spans of the ideal, one word-space echelon per
    multidegree.  Exact over the Scalar field; intended for small weights."""

    def __init__(self, parities, elements):
        self.parities = tuple(parities)
        self.r = len(self.parities)
        self.by_weight = {}
        for el in elements:
            terms = el.terms if hasattr(el, "terms") else el
            vec = expand_terms(terms, self.parities)
            if not vec:
                continue
            nu = tree_content(next(iter(terms)), self.r)
            self.by_weight.setdefault(nu, []).append(vec)
        self._memo = {}

    def echelon(self, nu):
        got = self._memo.get(nu)
        if got is not None:
            return got
        ech = _Echelon()
        if content_height(nu) >= 2:
            for i in range(1, self.r + 1):
                if nu[i - 1] == 0:
                    continue
                mu = _weight_sub(nu, i)
                sub = self.echelon(mu)
                p_mu = content_parity(mu, self.parities)
                for vec, _ in sub.rows.values():
                    row = generator_bracket_word(i, vec, self.parities[i - 1], p_mu)
                    ech.insert(row, None)
            for vec in self.by_weight.get(nu, ()):
                ech.insert(dict(vec), None)
        self._memo[nu] = ech
        return ech

    def rank(self, nu):
        return self.echelon(nu).rank


def ideal_component(elements, nu, parities):
    """Matrix whose rows span the nu-component of the ideal generated by the
    given homogeneous elements, written in the canonical basis of the free
    component (one dense row per spanning vector)."""
    engine = IdealWordEngine(parities, elements)
    ech = engine.echelon(tuple(nu))
    comp = component(parities, tuple(nu))
    rows = []
    for vec, _ in ech.rows.values():
        coords = comp.coordinates_of_word_vector(vec)
        rows.append([coords.get(k, ZERO) for k in range(comp.dimension)])
    return rows


# -- covering engine -------------------------------------------------------------


class _SymEchelon:
    """Relation echelon over integer-indexed candidate symbols.

    Stored rows have support >= their pivot, so the ascending reduction
    sweep terminates; `read_off` resolves every pivot into an expression in
    non-pivot symbols.
    """

    def __init__(self):
        self.rows = {}

    def insert(self, row):
        while row:
            hits = sorted(s for s in row if s in self.rows)
            if not hits:
                break
            s = hits[0]
            c = row[s]
            for q, v in self.rows[s].items():
                nv = row.get(q, ZERO) - c * v
                if nv.is_zero():
                    row.pop(q, None)
                else:
                    row[q] = nv
        if not row:
            return None
        p = min(row)
        inv = row[p].inverse()
        self.rows[p] = {q: c * inv for q, c in row.items()}
        return p

    def read_off(self):
        expr = {}
        for p in sorted(self.rows, reverse=True):
            acc = {}
            for q, c in self.rows[p].items():
                if q == p:
                    continue
                sub = expr.get(q)
                if sub is None:
                    v = acc.get(q, ZERO) - c
                    if v.is_zero():
                        acc.pop(q, None)
                    else:
                        acc[q] = v
                else:
                    for s, w in sub.items():
                        v = acc.get(s, ZERO) - c * w
                        if v.is_zero():
                            acc.pop(s, None)
                        else:
                            acc[s] = v
            expr[p] = acc
        return expr


def _vadd(dst, src, c=ONE):
    for k, v in src.items():
        nv = dst.get(k, ZERO) + c * v
        if nv.is_zero():
            dst.pop(k, None)
        else:
            dst[k] = nv
    return dst


class GradedQuotientReport:
    """Per-weight dimensions of the presented positive part."""

    def __init__(self, rank, per_weight, max_height_reached, closed, warning=None):
        self.rank = rank
        self.per_weight = per_weight  # content -> (free_dim, ideal_rank, quotient_dim)
        self.max_height_reached = max_height_reached
        self.closed = closed
        self.warning = warning

    @property
    def positive_dimension(self):
        return sum(q for _, _, q in self.per_weight.values())

    @property
    def total_dim(self):
        if not self.closed:
            return None
        return 2 * self.positive_dimension + self.rank

    def surviving_weights(self):
        return {nu: q for nu, (_, _, q) in self.per_weight.items() if q > 0}

    def to_json(self):
        weights = [
            {"nu": list(nu), "free": f, "idealRank": i, "dim": q}
            for nu, (f, i, q) in sorted(self.per_weight.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]
        data = {"weights": weights, "total": self.total_dim, "closed": self.closed}
        if self.warning:
            data["warning"] = self.warning
        return data


class CoveringEngine:
    """Graded quotient of the free Lie superalgebra by a homogeneous ideal,
    constructed level by level in quotient coordinates.

    Level h+1 is presented on the graded super wedge of the computed
    truncation: one symbol per pair of basis elements of total height h+1
    (with super antisymmetry built in and squares of even elements absent).
    The relations are the rewritten relation elements of that height and the
    super-Jacobi boundaries of all basis triples; because H_2 of a free Lie
    superalgebra vanishes, these span the whole kernel of the pair space
    onto the quotient component, so the construction is exact.
    """

    def __init__(self, parities, elements):
        self.parities = tuple(parities)
        self.r = len(self.parities)
        self.relations = []
        for el in elements:
            terms = el.terms if hasattr(el, "terms") else dict(el)
            nu = tree_content(next(iter(terms)), self.r)
            self.relations.append((nu, terms))
        self.weight_of = []
        self.parity_of = []
        self.basis_at = {}  # weight -> list of ids
        self.level_ids = {}  # height -> list of ids
        self.products = {}  # canonical (x, y) with x <= y -> vec over ids
        self._rho_memo = {}
        self.completed = 0
        self._init_level1()

    def _new_basis(self, weight, parity):
        bid = len(self.weight_of)
        self.weight_of.append(weight)
        self.parity_of.append(parity)
        self.basis_at.setdefault(weight, []).append(bid)
        return bid

    def _init_level1(self):
        ids = [
            self._new_basis(_unit(self.r, i), self.parities[i - 1])
            for i in range(1, self.r + 1)
        ]
        self.level_ids[1] = ids
        self.completed = 1

    def _height(self, bid):
        return content_height(self.weight_of[bid])

    def _koszul(self, x, y):
        return Scalar(-1 if (self.parity_of[x] and self.parity_of[y]) else 1)

    def product(self, x, y):
        """[x, y] in basis coordinates; total height must be completed."""
        if self._height(x) + self._height(y) > self.completed:
            raise EngineError("product beyond the completed level")
        if x == y and self.parity_of[x] == 0:
            return {}
        if x <= y:
            return self.products[(x, y)]
        sign = self._koszul(x, y)
        return {b: -sign * c for b, c in self.products[(y, x)].items()}

    # -- rewriting -------------------------------------------------------------

    def rho(self, tree):
        """Image of a bracket monomial in basis coordinates (height <= completed)."""
        got = self._rho_memo.get(tree)
        if got is not None:
            return got
        if isinstance(tree, int):
            out = {self.level_ids[1][tree - 1]: ONE}
        else:
            u, v = tree
            out = {}
            for x, cx in self.rho(u).items():
                for y, cy in self.rho(v).items():
                    _vadd(out, self.product(x, y), cx * cy)
        self._rho_memo[tree] = out
        return out

    # -- pair symbols at the level being built ----------------------------------

    def _sym(self, x, y):
        """Canonical pair-symbol vector of [x, y] at the current level."""
        if x == y:
            if self.parity_of[x] == 0:
                return {}
            return {(x, x): ONE}
        if x < y:
            return {(x, y): ONE}
        sign = self._koszul(x, y)
        return {(y, x): -sign}

    def _sym_vec_right(self, x, yvec):
        out = {}
        for y, c in yvec.items():
            _vadd(out, self._sym(x, y), c)
        return out

    def _sym_vec_left(self, xvec, y):
        out = {}
        for x, c in xvec.items():
            _vadd(out, self._sym(x, y), c)
        return out

    def rho_pair(self, terms):
        """Pair-symbol vector of a relation element at the current level."""
        out = {}
        for tree, coeff in terms.items():
            coeff = coeff if isinstance(coeff, Scalar) else Scalar(coeff)
            u, v = tree  # relation elements have height >= 2
            for x, cx in self.rho(u).items():
                vec = self._sym_vec_right(x, self.rho(v))
                _vadd(out, vec, coeff * cx)
        return out

    # -- level construction -------------------------------------------------------

    def build_level(self, h_next):
        """Construct level h_next = completed + 1; returns per-weight new dims."""
        if h_next != self.completed + 1:
            raise EngineError("levels must be built in order")
        # pair symbols (x, y), x < y or x = y odd, of total height h_next
        symbols = {}
        for hx in range(1, h_next // 2 + 1):
            hy = h_next - hx
            for x in self.level_ids.get(hx, []):
                for y in self.level_ids.get(hy, []):
                    if hx == hy and y < x:
                        continue
                    if x == y and self.parity_of[x] == 0:
                        continue
                    w = tuple(a + b for a, b in zip(self.weight_of[x], self.weight_of[y]))
                    symbols.setdefault(w, []).append((x, y))
        for w in symbols:
            symbols[w].sort()
        relations = {w: [] for w in symbols}

        def push(vec):
            if not vec:
                return
            x, y = next(iter(vec))
            w = tuple(a + b for a, b in zip(self.weight_of[x], self.weight_of[y]))
            relations[w].append(vec)

        # super-Jacobi boundaries of basis triples:
        #   [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
        by_height = self.level_ids
        for hx in range(1, h_next - 1):
            for hy in range(1, h_next - hx):
                hz = h_next - hx - hy
                if hz < 1:
                    continue
                for x in by_height.get(hx, []):
                    for y in by_height.get(hy, []):
                        for z in by_height.get(hz, []):
                            vec = self._sym_vec_right(x, self.product(y, z))
                            _vadd(vec, self._sym_vec_left(self.product(x, y), z), -ONE)
                            sign = self._koszul(x, y)
                            _vadd(vec, self._sym_vec_right(y, self.product(x, z)), -sign)
                            push(vec)
        # relation elements of this height
        for nu, terms in self.relations:
            if content_height(nu) == h_next:
                push(self.rho_pair(terms))

        new_dims = {}
        for w in sorted(symbols):
            syms = symbols[w]
            index = {s: k for k, s in enumerate(syms)}
            ech = _SymEchelon()
            for vec in relations[w]:
                row = {index[s]: c for s, c in vec.items()}
                ech.insert(row)
            expr = ech.read_off()
            new_ids = {}
            parity = content_parity(w, self.parities)
            for k in range(len(syms)):
                if k not in expr:
                    new_ids[k] = self._new_basis(w, parity)
            for k, (x, y) in enumerate(syms):
                if k in expr:
                    value = {new_ids[q]: c for q, c in expr[k].items()}
                else:
                    value = {new_ids[k]: ONE}
                self.products[(x, y)] = value
            dim = len(new_ids)
            new_dims[w] = dim
            if dim > free_dimension(self.parities, w):
                raise EngineError(
                    f"covering produced dimension {dim} > free dimension at {w}"
                )
        self.level_ids[h_next] = [
            bid
            for w in sorted(new_dims)
            for bid in self.basis_at.get(w, [])
            if self._height(bid) == h_next
        ]
        self.completed = h_next
        return new_dims


def quotient_dimensions(presentation, max_height, excess_guard=None):
    """Iterate heights until an entire level dies or the cap is reached.

    At each height the engine visits exactly the multidegrees reachable from
    surviving lower weights; the report keeps, per visited multidegree with a
    nonzero free component, the free dimension, the ideal rank and the
    quotient dimension.

    `excess_guard` optionally maps weights to allowed dimensions: the levels
    stop as soon as some weight exceeds its allowance (the quotient can only
    keep growing above a strict excess, so callers comparing against
    reference multiplicities lose nothing by stopping there).
    """
    if max_height < 1:
        raise ValueError("maxHeight must be >= 1")
    parities = presentation.parities
    engine = CoveringEngine(parities, presentation.e_side)
    per_weight = {}
    r = len(parities)
    for i in range(1, r + 1):
        per_weight[_unit(r, i)] = (1, 0, 1)
    closed = False
    guard_hit = None
    h = 1
    while h < max_height:
        h += 1
        dims = engine.build_level(h)
        alive = 0
        for w, q in sorted(dims.items()):
            free = free_dimension(parities, w)
            if free:
                per_weight[w] = (free, free - q, q)
            alive += q
            if excess_guard is not None and q > excess_guard.get(w, 0) and guard_hit is None:
                guard_hit = w
        if alive == 0:
            closed = True
            break
        if guard_hit is not None:
            break
    warning = None
    if guard_hit is not None:
        warning = (
            f"stopped at height {h}: weight {guard_hit} exceeds its reference multiplicity"
        )
    elif not closed:
        warning = (
            f"no closure within the height cap {max_height}: "
            "the presented algebra may be infinite dimensional"
        )
    return GradedQuotientReport(r, per_weight, h, closed, warning)


def total_dimension(report, rank):
    """2 * dim n+ + rank; the report must be closed."""
    if not report.closed:
        raise PreconditionViolation("total dimension needs a closed report")
    return 2 * report.positive_dimension + rank


class ZGradingReport:
    """Dimensions of the Z-grading layers determined by deg(e_d) = 1."""

    def __init__(self, d, dims):
        self.d = d
        self.dims = dims  # k >= 0 -> dimension; negative side mirrors

    def to_json(self):
        return {"d": self.d, "dims": {str(k): v for k, v in sorted(self.dims.items())}}


def z_grading_report(presentation, d, report=None, max_height=None):
    """Layer dimensions for the grading with deg(e_d) = -deg(f_d) = 1.

    Layer 0 contains the Cartan subalgebra and both signs of the positive
    weights with d-coordinate zero; layer k > 0 collects the surviving
    weights with d-coordinate k.
    """
    if report is None:
        if max_height is None:
            raise ValueError("need a quotient report or a height cap")
        report = quotient_dimensions(presentation, max_height)
    if not report.closed:
        raise PreconditionViolation("z-grading needs a closed quotient report")
    r = presentation.rank
    dims = {0: r}
    for nu, (_, _, q) in report.per_weight.items():
        if q == 0:
            continue
        k = nu[d - 1]
        if k == 0:
            dims[0] += 2 * q
        else:
            dims[k] = dims.get(k, 0) + q
    top = max(dims)
    dims[top + 1] = 0
    return ZGradingReport(d, dims)


# -- lowering stability ---------------------------------------------------------


class StabilityEntry:
    __slots__ = ("element_index", "provenance", "i", "in_span", "how")

    def __init__(self, element_index, provenance, i, in_span, how):
        self.element_index = element_index
        self.provenance = provenance
        self.i = i
        self.in_span = in_span
        self.how = how  # "zero" | "span" | "ideal" | "violation"


class StabilityReport:
    def __init__(self, entries):
        self.entries = entries

    @property
    def violations(self):
        return [e for e in self.entries if not e.in_span]

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "ok": self.ok,
            "entries": [
                {
                    "element": e.element_index,
                    "provenance": e.provenance,
                    "i": e.i,
                    "stable": e.in_span,
                    "how": e.how,
                }
                for e in self.entries
            ],
        }


def check_lowering_stability(presentation):
    """Machine check that the lowering operators keep the relation set inside
    the ideal it generates: for every e-side element s and every i, the
    positive part of [f_i, s] lies in the Scalar span of the e-side elements
    of the matching weight (zero counts) or, failing that, in that weight's
    component of the ideal generated by the e side.

    The second case occurs for quartic elements over an isotropic node t,
    where lowering produces a multiple of [e_t, [e_t, e_k]] =
    [[e_t, e_t], e_k] / 2, an ideal element that is not itself in the
    emitted relation set.
    """
    cd = presentation.cartan
    parities = presentation.parities
    r = presentation.rank
    entries = []
    by_weight = {}
    for el in presentation.e_side:
        by_weight.setdefault(el.content, []).append(el)

    lowered_all = {}
    max_h = 1
    for idx, el in enumerate(presentation.e_side):
        for i in range(1, r + 1):
            lowered, _ = lower_terms(cd, i, el.terms)
            lowered_all[(idx, i)] = lowered
            if lowered:
                max_h = max(max_h, content_height(el.content) - 1)

    engine = CoveringEngine(parities, presentation.e_side)
    closed = False
    h = 1
    while h < max_h and not closed:
        h += 1
        dims = engine.build_level(h)
        closed = not any(dims.values())

    for idx, el in enumerate(presentation.e_side):
        for i in range(1, r + 1):
            lowered = lowered_all[(idx, i)]
            vec = expand_terms(lowered, parities)
            if not vec:
                entries.append(StabilityEntry(idx, el.provenance, i, True, "zero"))
                continue
            nu = _weight_sub(el.content, i)
            ech = _Echelon()
            for t in by_weight.get(nu, []):
                ech.insert(expand_terms(t.terms, parities), None)
            residual = dict(vec)
            ech.reduce(residual, None)
            if not residual:
                entries.append(StabilityEntry(idx, el.provenance, i, True, "span"))
                continue
            if content_height(nu) > engine.completed and closed:
                # all levels above the closure are zero
                entries.append(StabilityEntry(idx, el.provenance, i, True, "ideal"))
                continue
            image = {}
            for tree, coeff in lowered.items():
                _vadd(image, engine.rho(tree), coeff)
            how = "ideal" if not image else "violation"
            entries.append(StabilityEntry(idx, el.provenance, i, not image, how))
    return StabilityReport(entries)
