"""The free Lie superalgebra on generators e_1..e_r over Q or Q(a).

Bracket monomials are binary trees whose leaves are 1-based generator
indices.  Each multidegree component is finite dimensional; its canonical
basis consists of the standard bracketings of Lyndon words together with the
squares [u, u] of odd Lyndon monomials.  Normal forms are computed through
the faithful expansion into the free associative superalgebra (words with
integer coefficients), which turns equality checks and basis coordinates
into exact linear algebra on small components.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import ONE, Scalar, ZERO


class GradingError(ValueError):
    """Raised when an expression mixes multidegrees."""


# -- trees ------------------------------------------------------------------
# A tree is either an int (1-based generator index) or a pair (left, right).


def is_leaf(tree):
    return isinstance(tree, int)


def tree_content(tree, r):
    nu = [0] * r
    stack = [tree]
    while stack:
        t = stack.pop()
        if is_leaf(t):
            nu[t - 1] += 1
        else:
            stack.extend(t)
    return tuple(nu)


def tree_height(tree):
    if is_leaf(tree):
        return 1
    return tree_height(tree[0]) + tree_height(tree[1])


def content_parity(nu, parities):
    return sum(n for n, p in zip(nu, parities) if p) & 1


def content_height(nu):
    return sum(nu)


def tree_render(tree, letter="e"):
    if is_leaf(tree):
        return f"{letter}{tree}"
    return f"[{tree_render(tree[0], letter)},{tree_render(tree[1], letter)}]"


def left_normed_tree(word):
    """[[..[e_{w1}, e_{w2}], ...], e_{wh}] for a word of generator indices."""
    tree = word[0]
    for i in word[1:]:
        tree = (tree, i)
    return tree


# -- associative expansion ----------------------------------------------------


def expand_tree(tree, parities):
    """Image of a bracket monomial in the free associative superalgebra.

    Returns a dict word-tuple -> int; the supercommutator [x, y] is
    xy - (-1)^{|x||y|} yx with parities read off the leaf content.
    """
    if is_leaf(tree):
        return {(tree,): 1}
    left = expand_tree(tree[0], parities)
    right = expand_tree(tree[1], parities)
    if not left or not right:
        return {}
    r = len(parities)
    pl = content_parity(tree_content(tree[0], r), parities)
    pr = content_parity(tree_content(tree[1], r), parities)
    sign = -1 if (pl and pr) else 1
    out = {}
    for wl, cl in left.items():
        for wr, cr in right.items():
            w = wl + wr
            out[w] = out.get(w, 0) + cl * cr
            w = wr + wl
            out[w] = out.get(w, 0) - sign * cl * cr
    return {w: c for w, c in out.items() if c}


def expand_terms(terms, parities):
    """Expansion of a Scalar-linear combination of trees; dict word -> Scalar."""
    out = {}
    for tree, coeff in terms.items():
        if not isinstance(coeff, Scalar):
            coeff = Scalar(coeff)
        if coeff.is_zero():
            continue
        for w, c in expand_tree(tree, parities).items():
            v = out.get(w, ZERO) + coeff * c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
    return out


def word_concat_product(x, y):
    out = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            w = wx + wy
            v = out.get(w, ZERO) + cx * cy
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
    return out


def word_bracket(x, y, px, py):
    """Supercommutator of two word vectors of parities px, py."""
    out = word_concat_product(x, y)
    sign = Scalar(-1 if (px and py) else 1)
    for w, c in word_concat_product(y, x).items():
        v = out.get(w, ZERO) - sign * c
        if v.is_zero():
            out.pop(w, None)
        else:
            out[w] = v
    return out


def generator_bracket_word(i, vec, parity_i, parity_vec):
    """[e_i, vec] on word vectors: prefix minus Koszul-signed suffix."""
    out = {}
    sign = Scalar(-1 if (parity_i and parity_vec) else 1)
    for w, c in vec.items():
        u = (i,) + w
        v = out.get(u, ZERO) + c
        if v.is_zero():
            out.pop(u, None)
        else:
            out[u] = v
        u = w + (i,)
        v = out.get(u, ZERO) - sign * c
        if v.is_zero():
            out.pop(u, None)
        else:
            out[u] = v
    return out


# -- Lyndon words and the canonical basis --------------------------------------


def _all_words(content):
    """Distinct arrangements of the multiset, in lexicographic order."""
    word = []
    for i, k in enumerate(content, start=1):
        word.extend([i] * k)
    if not word:
        return []
    out = [tuple(word)]
    n = len(word)
    while True:
        # standard next-permutation step
        k = n - 2
        while k >= 0 and word[k] >= word[k + 1]:
            k -= 1
        if k < 0:
            return out
        m = n - 1
        while word[m] <= word[k]:
            m -= 1
        word[k], word[m] = word[m], word[k]
        word[k + 1:] = reversed(word[k + 1:])
        out.append(tuple(word))


def _is_lyndon(word):
    # strictly smallest among its rotations (hence aperiodic)
    n = len(word)
    for k in range(1, n):
        if word[k:] + word[:k] <= word:
            return False
    return True


@lru_cache(maxsize=None)
def lyndon_words(content):
    return tuple(w for w in _all_words(content) if _is_lyndon(w))


def standard_bracketing(word):
    """Standard factorization bracketing of a Lyndon word."""
    if len(word) == 1:
        return word[0]
    for k in range(1, len(word)):
        if _is_lyndon(word[k:]):
            return (standard_bracketing(word[:k]), standard_bracketing(word[k:]))
    raise AssertionError(f"no standard factorization for {word}")


def _halved(content):
    if any(k & 1 for k in content):
        return None
    return tuple(k // 2 for k in content)


def tuple_content(word, r):
    nu = [0] * r
    for i in word:
        nu[i - 1] += 1
    return tuple(nu)


def super_lyndon_basis(content, parities):
    """Canonical basis trees: standard bracketings of Lyndon words plus the
    squares [u, u] of odd-parity Lyndon monomials of half the multidegree."""
    trees = [standard_bracketing(w) for w in lyndon_words(content)]
    half = _halved(content)
    if half is not None and any(half):
        for w in lyndon_words(half):
            if content_parity(half, parities) == 1:
                t = standard_bracketing(w)
                trees.append((t, t))
    return trees


def _mobius(n):
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _multinomial(content):
    from math import factorial

    out = factorial(sum(content))
    for k in content:
        out //= factorial(k)
    return out


@lru_cache(maxsize=None)
def lyndon_count(content):
    """Number of Lyndon words with the given letter content (Witt formula)."""
    h = content_height(content)
    if h == 0:
        return 0
    from math import gcd

    g = 0
    for k in content:
        g = gcd(g, k)
    total = 0
    for d in range(1, g + 1):
        if g % d == 0:
            total += _mobius(d) * _multinomial(tuple(k // d for k in content))
    return total // h


@lru_cache(maxsize=None)
def _free_dimension_cached(parities, content):
    if content_height(content) == 0:
        return 0
    n = lyndon_count(content)
    half = _halved(content)
    if half is not None and any(half) and content_parity(half, parities) == 1:
        n += lyndon_count(half)
    return n


def free_dimension(parities, content):
    """Dimension of the multidegree component of the free Lie superalgebra:
    Lyndon words of the content plus, when the half content is odd, Lyndon
    words of the half content (the squares)."""
    return _free_dimension_cached(tuple(parities), tuple(content))


# -- per-component linear algebra -----------------------------------------------


class _Echelon:
    """Sparse echelon over Scalar keyed by lexicographically minimal support.

    Every stored row has its pivot as the minimum of its support, so an
    ascending reduction sweep terminates; rows optionally carry coordinate
    bookkeeping.
    """

    def __init__(self):
        self.rows = {}  # pivot -> (vec, coords)

    def reduce(self, vec, coords):
        while vec:
            hits = sorted(w for w in vec if w in self.rows)
            if not hits:
                return
            w = hits[0]
            rvec, rcoords = self.rows[w]
            c = vec[w]
            for u, v in rvec.items():
                nv = vec.get(u, ZERO) - c * v
                if nv.is_zero():
                    vec.pop(u, None)
                else:
                    vec[u] = nv
            if coords is not None:
                for j, v in rcoords.items():
                    nv = coords.get(j, ZERO) - c * v
                    if nv.is_zero():
                        coords.pop(j, None)
                    else:
                        coords[j] = nv

    def insert(self, vec, coords):
        """Reduce and, if independent, store; returns the new pivot or None."""
        self.reduce(vec, coords)
        if not vec:
            return None
        pivot = min(vec)
        inv = vec[pivot].inverse()
        vec = {w: c * inv for w, c in vec.items()}
        if coords is not None:
            coords = {j: c * inv for j, c in coords.items()}
        self.rows[pivot] = (vec, coords)
        return pivot

    @property
    def rank(self):
        return len(self.rows)


class FreeComponent:
    """One multidegree component with its canonical basis and solver."""

    def __init__(self, parities, content):
        if content_height(content) < 1:
            raise GradingError("components exist for height >= 1 only")
        self.parities = tuple(parities)
        self.content = tuple(content)
        self.parity = content_parity(content, parities)
        self.basis = super_lyndon_basis(self.content, self.parities)
        self._echelon = _Echelon()
        for k, tree in enumerate(self.basis):
            vec = {w: Scalar(c) for w, c in expand_tree(tree, self.parities).items()}
            if self._echelon.insert(vec, {k: ONE}) is None:
                raise AssertionError(f"dependent canonical basis at {content}")
        if len(self.basis) != free_dimension(self.parities, self.content):
            raise AssertionError(f"basis size mismatch at {content}")

    @property
    def dimension(self):
        return len(self.basis)

    def coordinates_of_word_vector(self, vec):
        """Coordinates over the canonical basis of a Lie element given by its
        associative expansion; raises if the vector is not a Lie element."""
        vec = dict(vec)
        coords = {}
        self._echelon.reduce(vec, coords)
        if vec:
            raise ValueError(f"vector is not in the Lie component {self.content}")
        return {j: -c for j, c in coords.items() if not c.is_zero()}

    def normalize_terms(self, terms):
        r = len(self.content)
        for tree in terms:
            if tree_content(tree, r) != self.content:
                raise GradingError(
                    f"term {tree_render(tree)} has multidegree "
                    f"{tree_content(tree, r)}, expected {self.content}"
                )
        vec = expand_terms(terms, self.parities)
        return LiePolynomial(self, self.coordinates_of_word_vector(vec))


_component_cache = {}


def component(parities, content):
    key = (tuple(parities), tuple(content))
    comp = _component_cache.get(key)
    if comp is None:
        comp = _component_cache[key] = FreeComponent(*key)
    return comp


class LiePolynomial:
    """Exact combination of canonical basis monomials of one multidegree."""

    __slots__ = ("component", "coords")

    def __init__(self, comp, coords):
        self.component = comp
        self.coords = {j: c for j, c in coords.items() if not c.is_zero()}

    @property
    def content(self):
        return self.component.content

    def is_zero(self):
        return not self.coords

    def terms(self):
        return {self.component.basis[j]: c for j, c in self.coords.items()}

    def expand(self):
        return expand_terms(self.terms(), self.component.parities)

    def __add__(self, other):
        if other.component is not self.component:
            raise GradingError("cannot add across multidegrees")
        coords = dict(self.coords)
        for j, c in other.coords.items():
            v = coords.get(j, ZERO) + c
            if v.is_zero():
                coords.pop(j, None)
            else:
                coords[j] = v
        return LiePolynomial(self.component, coords)

    def scale(self, k):
        k = k if isinstance(k, Scalar) else Scalar(k)
        return LiePolynomial(self.component, {j: c * k for j, c in self.coords.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, LiePolynomial)
            and self.component is other.component
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.component.content, tuple(sorted(self.coords.items()))))

    def __repr__(self):
        if not self.coords:
            return "0"
        parts = []
        for j in sorted(self.coords):
            c = self.coords[j]
            parts.append(f"({c.render()})*{tree_render(self.component.basis[j])}")
        return " + ".join(parts)


def normalize(terms, parities):
    """Canonical form of a homogeneous bracket expression.

    `terms` maps trees to coefficients (Scalar, int or Fraction); all trees
    must share one multidegree.
    """
    clean = {}
    for t, c in terms.items():
        c = c if isinstance(c, Scalar) else Scalar(c)
        if not c.is_zero():
            clean[t] = c
    if not clean:
        raise GradingError("cannot normalize the empty expression without a multidegree")
    r = len(parities)
    contents = {tree_content(t, r) for t in clean}
    if len(contents) > 1:
        raise GradingError(f"inhomogeneous expression: multidegrees {sorted(contents)}")
    return component(parities, contents.pop()).normalize_terms(clean)


def bracket(x, y):
    """Super bracket of two LiePolynomials; multidegrees add."""
    comp_x, comp_y = x.component, y.component
    if comp_x.parities != comp_y.parities:
        raise GradingError("mismatched generator parities")
    nu = tuple(a + b for a, b in zip(comp_x.content, comp_y.content))
    target = component(comp_x.parities, nu)
    vec = word_bracket(x.expand(), y.expand(), comp_x.parity, comp_y.parity)
    return LiePolynomial(target, target.coordinates_of_word_vector(vec))


def generator(parities, i):
    comp = component(parities, tuple(1 if j == i - 1 else 0 for j in range(len(parities))))
    return LiePolynomial(comp, {0: ONE})


# -- lowering operators ----------------------------------------------------------


def lower_terms(cd, i, terms):
    """Action of ad f_i on a positive-part element of the auxiliary algebra.

    `terms` maps trees to Scalars (one common multidegree).  Returns a pair
    (dict tree -> Scalar at multidegree nu - alpha_i, cartan coefficient).
    Convention: [f_i, e_j] = delta_ij H_i with [H_i, y] =
    -(-1)^{p_i} (sum_j a_ij nu(y)_j) y, so that lower(i, e_i) = (0, 1) and
    lower(i, [e_i, e_j]) = (-a_ij e_j, 0) for even e_i.
    """
    parities = cd.parities
    r = cd.rank
    p_i = parities[i - 1]

    def kappa(nu):
        acc = ZERO
        for j in range(r):
            if nu[j]:
                acc = acc + cd.a[i - 1][j] * nu[j]
        return acc if p_i else -acc

    def add(out, tree, c):
        if c.is_zero():
            return
        v = out.get(tree, ZERO) + c
        if v.is_zero():
            out.pop(tree, None)
        else:
            out[tree] = v

    memo = {}

    def go(tree):
        got = memo.get(tree)
        if got is not None:
            return got
        if is_leaf(tree):
            res = ({}, ONE if tree == i else ZERO)
            memo[tree] = res
            return res
        u, v = tree
        du, hu = go(u)
        dv, hv = go(v)
        pu = content_parity(tree_content(u, r), parities)
        out = {}
        for t, c in du.items():
            add(out, (t, v), c)
        if not hu.is_zero():
            add(out, v, hu * kappa(tree_content(v, r)))
        sign = Scalar(-1 if (p_i and pu) else 1)
        for t, c in dv.items():
            add(out, (u, t), sign * c)
        if not hv.is_zero():
            add(out, u, -(sign * hv * kappa(tree_content(u, r))))
        res = (out, ZERO)
        memo[tree] = res
        return res

    out = {}
    h_coeff = ZERO
    for tree, coeff in terms.items():
        coeff = coeff if isinstance(coeff, Scalar) else Scalar(coeff)
        d, h = go(tree)
        for t, c in d.items():
            v = out.get(t, ZERO) + coeff * c
            if v.is_zero():
                out.pop(t, None)
            else:
                out[t] = v
        h_coeff = h_coeff + coeff * h
    return out, h_coeff


# -- brute-force dimension oracle ---------------------------------------------


def _tree_shapes(h):
    if h == 1:
        return [None]  # a single leaf slot
    out = []
    for k in range(1, h):
        for left in _tree_shapes(k):
            for right in _tree_shapes(h - k):
                out.append((k, left, right))
    return out


def _fill(shape, word):
    if shape is None:
        return word[0]
    k, left, right = shape
    return (_fill(left, word[:k]), _fill(right, word[k:]))


class _SignedUnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.dead = [False] * n

    def find(self, x):
        if self.parent[x] == x:
            return x, self.sign[x]
        root, s = self.find(self.parent[x])
        self.parent[x] = root
        self.sign[x] *= s
        return root, self.sign[x]

    def union(self, x, y, s):
        """Impose m_x = s * m_y."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if sx != s * sy:
                self.dead[rx] = True
            return
        # m_x = sx*rx and m_y = sy*ry, so rx = (s*sy/sx)*ry with sx in {1,-1}
        self.parent[rx] = ry
        self.sign[rx] = s * sy * sx
        self.dead[ry] = self.dead[ry] or self.dead[rx]


def span_dimension_by_identities(parities, content):
    """Independent oracle: dimension of the multidegree component computed as
    the span of all bracket monomials modulo super antisymmetry and the super
    Jacobi identity only (no normal-form theory involved).

    Antisymmetry instances are folded into a signed union-find over monomial
    trees; Jacobi instances become sparse rows whose exact rank is subtracted.
    """
    h = content_height(content)
    r = len(content)
    monomials = []
    for shape in _tree_shapes(h):
        for word in _all_words(content):
            monomials.append(_fill(shape, word))
    monomials = sorted(set(monomials), key=repr)
    index = {m: k for k, m in enumerate(monomials)}
    uf = _SignedUnionFind(len(monomials))

    def par(tree):
        return content_parity(tree_content(tree, r), parities)

    def node_swaps(tree):
        if is_leaf(tree):
            return
        u, v = tree
        koszul = -1 if (par(u) and par(v)) else 1
        yield (v, u), -koszul
        for sub, s in node_swaps(u):
            yield (sub, v), s
        for sub, s in node_swaps(v):
            yield (u, sub), s

    for m in monomials:
        for other, s in node_swaps(m):
            uf.union(index[m], index[other], s)

    columns = {}
    for k in range(len(monomials)):
        root, _ = uf.find(k)
        if not uf.dead[root] and root not in columns:
            columns[root] = len(columns)
    if not columns:
        return 0

    def to_row(entries):
        row = {}
        for tree, coeff in entries:
            root, s = uf.find(index[tree])
            if uf.dead[root]:
                continue
            col = columns[root]
            row[col] = row.get(col, 0) + coeff * s
        return {c: v for c, v in row.items() if v}

    def jacobi_rows(tree, context):
        if is_leaf(tree):
            return
        u, v = tree
        if not is_leaf(v):
            y, z = v
            s = -1 if (par(u) and par(y)) else 1
            yield [
                (context((u, (y, z))), 1),
                (context(((u, y), z)), -1),
                (context((y, (u, z))), -s),
            ]
        yield from jacobi_rows(u, lambda t, _v=v: context((t, _v)))
        yield from jacobi_rows(v, lambda t, _u=u: context((_u, t)))

    rows = []
    seen = set()
    for m in monomials:
        for entries in jacobi_rows(m, lambda t: t):
            row = to_row(entries)
            if row:
                key = tuple(sorted(row.items()))
                if key not in seen:
                    seen.add(key)
                    rows.append(row)

    pivots = {}
    rank = 0
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items()}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            f = row[col]
            for c, v in piv.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(columns) - rank
