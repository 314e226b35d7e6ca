"""Root systems of the simple contragredient Lie superalgebras.

Families: A(m,n), B(0,n), B(m,n) m>0, C(n) n>2, D(m,n) m>1, F(4), G(3) and
the one-parameter family D(2,1;a).  Provides the invariant bilinear form,
distinguished simple systems, odd reflections and the enumeration of simple
systems (one per conjugacy class of Borel subalgebras).

Basis symbols are strings: "e1", "e2", ... for the epsilons, "d1", "d2", ...
for the deltas, and a single "d" in F(4), G(3) and D(2,1;a).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .scalars import ALPHA, ONE, Scalar


class ParameterError(ValueError):
    """Family parameters outside the allowed range."""


class PreconditionError(ValueError):
    """An operation precondition is violated (e.g. reflecting at a
    non-isotropic simple root)."""


class InconsistencyError(RuntimeError):
    """A simple system fails to generate exactly half of the roots."""


FAMILIES = ("A", "B", "C", "D", "F4", "G3", "D21a")


class WeightVector:
    """Formal Q-combination of basis symbols; immutable and hashable."""

    __slots__ = ("_d", "_key")

    def __init__(self, data=()):
        d = {}
        items = data.items() if isinstance(data, dict) else data
        for sym, c in items:
            c = Fraction(c)
            if c:
                d[sym] = d.get(sym, Fraction(0)) + c
                if not d[sym]:
                    del d[sym]
        self._d = d
        self._key = tuple(sorted(d.items()))

    def coefficient(self, sym):
        return self._d.get(sym, Fraction(0))

    def symbols(self):
        return set(self._d)

    def items(self):
        return self._key

    def is_zero(self):
        return not self._d

    def __add__(self, other):
        d = dict(self._d)
        for s, c in other._d.items():
            d[s] = d.get(s, Fraction(0)) + c
        return WeightVector(d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WeightVector({s: -c for s, c in self._d.items()})

    def scale(self, k):
        k = Fraction(k)
        return WeightVector({s: c * k for s, c in self._d.items()})

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if not self._key:
            return "0"
        parts = []
        for s, c in self._key:
            if c == 1:
                parts.append(f"+{s}")
            elif c == -1:
                parts.append(f"-{s}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}*{s}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def to_json(self):
        return {s: str(c) for s, c in self._key}


def wv(data):
    return WeightVector(data)


class RootDatum:
    """A root system with its bilinear form.

    alpha is None for the generic D(2,1;a) (scalars live in Q(a)) and a
    Fraction for a specialised member; it is ignored for other families.
    """

    def __init__(self, family, m, n, symbols, even_roots, odd_roots, form, alpha=None):
        self.family = family
        self.m = m
        self.n = n
        self.symbols = tuple(symbols)
        self.even_roots = frozenset(even_roots)
        self.odd_roots = frozenset(odd_roots)
        self._form = form  # dict (sym, sym) -> Scalar, symmetric closure applied
        self.alpha = alpha
        isotropic = {b for b in self.odd_roots if self.form_value(b, b).is_zero()}
        for b in self.even_roots:
            if self.form_value(b, b).is_zero():
                raise InconsistencyError(f"isotropic even root {b} in {self.name}")
        self.isotropic_roots = frozenset(isotropic)

    @property
    def name(self):
        if self.family == "A":
            return f"A({self.m},{self.n})"
        if self.family == "B":
            return f"B({self.m},{self.n})"
        if self.family == "C":
            return f"C({self.n})"
        if self.family == "D":
            return f"D({self.m},{self.n})"
        if self.family == "D21a":
            return "D(2,1;a)" if self.alpha is None else f"D(2,1;{self.alpha})"
        return {"F4": "F(4)", "G3": "G(3)"}[self.family]

    @property
    def all_roots(self):
        return self.even_roots | self.odd_roots

    def is_odd(self, root):
        if root in self.odd_roots:
            return True
        if root in self.even_roots:
            return False
        raise TypeError(f"{root} is not a root of {self.name}")

    def form_value(self, lam, mu):
        """Bilinear extension of the tabulated symbol pairings."""
        foreign = (lam.symbols() | mu.symbols()) - set(self.symbols)
        if foreign:
            raise TypeError(f"foreign basis symbols {sorted(foreign)} for {self.name}")
        acc = Scalar(0)
        for s, c in lam.items():
            for t, d in mu.items():
                v = self._form.get((s, t))
                if v is not None:
                    acc = acc + v * Scalar(c * d)
        return acc


def bilinear(datum, lam, mu):
    return datum.form_value(lam, mu)


def _diag_form(pairs):
    form = {}
    for sym, value in pairs:
        form[(sym, sym)] = value
    return form


def build_root_datum(family, m=None, n=None, alpha=None):
    """Construct the root datum of a family; parameters are validated."""
    if family == "A":
        if m is None or n is None or m < 0 or n < 0 or (m, n) == (0, 0):
            raise ParameterError("A(m,n) needs m,n >= 0 and (m,n) != (0,0)")
        eps = [f"e{i}" for i in range(1, m + 2)]
        dts = [f"d{j}" for j in range(1, n + 2)]
        form = _diag_form([(s, ONE) for s in eps] + [(s, -ONE) for s in dts])
        even = set()
        for a, b in product(range(m + 1), repeat=2):
            if a != b:
                even.add(wv({eps[a]: 1, eps[b]: -1}))
        for a, b in product(range(n + 1), repeat=2):
            if a != b:
                even.add(wv({dts[a]: 1, dts[b]: -1}))
        odd = set()
        for a in range(m + 1):
            for b in range(n + 1):
                odd.add(wv({eps[a]: 1, dts[b]: -1}))
                odd.add(wv({eps[a]: -1, dts[b]: 1}))
        return RootDatum("A", m, n, eps + dts, even, odd, form)

    if family == "B":
        if m is None or n is None or m < 0 or n < 1:
            raise ParameterError("B(m,n) needs m >= 0 and n >= 1")
        eps = [f"e{i}" for i in range(1, m + 1)]
        dts = [f"d{j}" for j in range(1, n + 1)]
        form = _diag_form([(s, ONE) for s in eps] + [(s, -ONE) for s in dts])
        even, odd = set(), set()
        for a in range(m):
            for b in range(m):
                if a != b:
                    for sa, sb in product((1, -1), repeat=2):
                        even.add(wv({eps[a]: sa, eps[b]: sb}))
            for s in (1, -1):
                even.add(wv({eps[a]: s}))
        for a in range(n):
            for b in range(n):
                if a != b:
                    for sa, sb in product((1, -1), repeat=2):
                        even.add(wv({dts[a]: sa, dts[b]: sb}))
            for s in (1, -1):
                even.add(wv({dts[a]: 2 * s}))
                odd.add(wv({dts[a]: s}))
        for a in range(m):
            for b in range(n):
                for sa, sb in product((1, -1), repeat=2):
                    odd.add(wv({eps[a]: sa, dts[b]: sb}))
        return RootDatum("B", m, n, eps + dts, even, odd, form)

    if family == "C":
        if n is None or n <= 2:
            raise ParameterError("C(n) needs n > 2")
        eps = ["e1"]
        dts = [f"d{j}" for j in range(1, n)]
        form = _diag_form([("e1", ONE)] + [(s, -ONE) for s in dts])
        even, odd = set(), set()
        for a in range(n - 1):
            for b in range(n - 1):
                if a != b:
                    for sa, sb in product((1, -1), repeat=2):
                        even.add(wv({dts[a]: sa, dts[b]: sb}))
            for s in (1, -1):
                even.add(wv({dts[a]: 2 * s}))
            for sa, sb in product((1, -1), repeat=2):
                odd.add(wv({"e1": sa, dts[a]: sb}))
        return RootDatum("C", None, n, eps + dts, even, odd, form)

    if family == "D":
        if m is None or n is None or m <= 1 or n < 1:
            raise ParameterError("D(m,n) needs m > 1 and n >= 1")
        eps = [f"e{i}" for i in range(1, m + 1)]
        dts = [f"d{j}" for j in range(1, n + 1)]
        form = _diag_form([(s, ONE) for s in eps] + [(s, -ONE) for s in dts])
        even, odd = set(), set()
        for a in range(m):
            for b in range(m):
                if a != b:
                    for sa, sb in product((1, -1), repeat=2):
                        even.add(wv({eps[a]: sa, eps[b]: sb}))
        for a in range(n):
            for b in range(n):
                if a != b:
                    for sa, sb in product((1, -1), repeat=2):
                        even.add(wv({dts[a]: sa, dts[b]: sb}))
            for s in (1, -1):
                even.add(wv({dts[a]: 2 * s}))
        for a in range(m):
            for b in range(n):
                for sa, sb in product((1, -1), repeat=2):
                    odd.add(wv({eps[a]: sa, dts[b]: sb}))
        return RootDatum("D", m, n, eps + dts, even, odd, form)

    if family == "F4":
        syms = ["e1", "e2", "e3", "d"]
        form = _diag_form([("e1", Scalar(2)), ("e2", Scalar(2)), ("e3", Scalar(2)), ("d", Scalar(-6))])
        even, odd = set(), set()
        for a in range(3):
            for s in (1, -1):
                even.add(wv({syms[a]: s}))
            for b in range(a + 1, 3):
                for sa, sb in product((1, -1), repeat=2):
                    even.add(wv({syms[a]: sa, syms[b]: sb}))
        even.add(wv({"d": 1}))
        even.add(wv({"d": -1}))
        half = Fraction(1, 2)
        for s1, s2, s3, sd in product((1, -1), repeat=4):
            odd.add(wv({"e1": s1 * half, "e2": s2 * half, "e3": s3 * half, "d": sd * half}))
        return RootDatum("F4", None, None, syms, even, odd, form)

    if family == "G3":
        syms = ["e1", "e2", "e3", "d"]
        form = _diag_form([("e1", ONE), ("e2", ONE), ("e3", ONE), ("d", Scalar(-2))])
        even, odd = set(), set()
        for a in range(3):
            for b in range(3):
                if a != b:
                    even.add(wv({syms[a]: 1, syms[b]: -1}))
                    odd.add(wv({"d": 1, syms[a]: 1, syms[b]: -1}))
                    odd.add(wv({"d": -1, syms[a]: 1, syms[b]: -1}))
        for k in range(3):
            rest = [x for x in range(3) if x != k]
            for s in (1, -1):
                even.add(wv({syms[k]: 2 * s, syms[rest[0]]: -s, syms[rest[1]]: -s}))
        even.add(wv({"d": 2}))
        even.add(wv({"d": -2}))
        odd.add(wv({"d": 1}))
        odd.add(wv({"d": -1}))
        return RootDatum("G3", None, None, syms, even, odd, form)

    if family == "D21a":
        if alpha is not None:
            alpha = Fraction(alpha)
            if alpha in (Fraction(0), Fraction(-1)):
                raise ParameterError("D(2,1;a) needs a outside {0, -1}")
        a_val = ALPHA if alpha is None else Scalar(alpha)
        syms = ["e1", "e2", "d"]
        form = _diag_form([("e1", ONE), ("e2", a_val), ("d", -(ONE + a_val))])
        even = {wv({s: 2 * sg}) for s in syms for sg in (1, -1)}
        odd = set()
        for s1, s2, sd in product((1, -1), repeat=3):
            odd.add(wv({"d": sd, "e1": s1, "e2": s2}))
        return RootDatum("D21a", 2, 1, syms, even, odd, form, alpha=alpha)

    raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


class SimpleSystem:
    """An ordered simple system; theta is derived from root parity."""

    def __init__(self, datum, roots):
        roots = tuple(roots)
        for b in roots:
            if b not in datum.all_roots:
                raise PreconditionError(f"{b} is not a root of {datum.name}")
        self.datum = datum
        self.roots = roots
        self.theta = frozenset(i + 1 for i, b in enumerate(roots) if datum.is_odd(b))

    @property
    def rank(self):
        return len(self.roots)

    def key(self):
        return frozenset(self.roots)

    def isotropic_indices(self):
        return [i + 1 for i, b in enumerate(self.roots)
                if self.datum.form_value(b, b).is_zero()]

    def __eq__(self, other):
        return isinstance(other, SimpleSystem) and self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return f"SimpleSystem({self.datum.name}, {list(self.roots)})"


def distinguished_simple_system(datum):
    """The simple system with exactly one odd simple root."""
    f = datum.family
    if f == "A":
        m, n = datum.m, datum.n
        roots = [wv({f"e{i}": 1, f"e{i+1}": -1}) for i in range(1, m + 1)]
        roots.append(wv({f"e{m+1}": 1, "d1": -1}))
        roots += [wv({f"d{j}": 1, f"d{j+1}": -1}) for j in range(1, n + 1)]
    elif f == "B" and datum.m == 0:
        n = datum.n
        roots = [wv({f"d{j}": 1, f"d{j+1}": -1}) for j in range(1, n)]
        roots.append(wv({f"d{n}": 1}))
    elif f == "B":
        m, n = datum.m, datum.n
        roots = [wv({f"d{j}": 1, f"d{j+1}": -1}) for j in range(1, n)]
        roots.append(wv({f"d{n}": 1, "e1": -1}))
        roots += [wv({f"e{i}": 1, f"e{i+1}": -1}) for i in range(1, m)]
        roots.append(wv({f"e{m}": 1}))
    elif f == "C":
        n = datum.n
        roots = [wv({"e1": 1, "d1": -1})]
        roots += [wv({f"d{j}": 1, f"d{j+1}": -1}) for j in range(1, n - 1)]
        roots.append(wv({f"d{n-1}": 2}))
    elif f == "D":
        m, n = datum.m, datum.n
        roots = [wv({f"d{j}": 1, f"d{j+1}": -1}) for j in range(1, n)]
        roots.append(wv({f"d{n}": 1, "e1": -1}))
        roots += [wv({f"e{i}": 1, f"e{i+1}": -1}) for i in range(1, m)]
        roots.append(wv({f"e{m-1}": 1, f"e{m}": 1}))
    elif f == "F4":
        half = Fraction(1, 2)
        roots = [
            wv({"e1": half, "e2": half, "e3": half, "d": half}),
            wv({"e1": -1}),
            wv({"e1": 1, "e2": -1}),
            wv({"e2": 1, "e3": -1}),
        ]
    elif f == "G3":
        roots = [
            wv({"d": 1, "e1": -1, "e3": 1}),
            wv({"e1": 1, "e2": -1}),
            wv({"e2": 2, "e1": -1, "e3": -1}),
        ]
    elif f == "D21a":
        roots = [wv({"d": 1, "e1": -1, "e2": -1}), wv({"e1": 2}), wv({"e2": 2})]
    else:
        raise ParameterError(f"unknown family {f!r}")
    system = SimpleSystem(datum, roots)
    if len(system.theta) != 1:
        raise InconsistencyError(f"distinguished system of {datum.name} has theta {set(system.theta)}")
    return system


def odd_reflection(datum, system, t):
    """Reflect the simple system at the isotropic simple root alpha_t (1-based).

    s_t(alpha_t) = -alpha_t; s_t(alpha_i) = alpha_i + alpha_t when the two
    roots pair non-trivially, and alpha_i otherwise.
    """
    if not 1 <= t <= system.rank:
        raise PreconditionError(f"index {t} out of range 1..{system.rank}")
    at = system.roots[t - 1]
    if not datum.form_value(at, at).is_zero():
        raise PreconditionError(f"alpha_{t} = {at} is not isotropic")
    new = []
    for i, ai in enumerate(system.roots):
        if i == t - 1:
            new.append(-at)
        elif not datum.form_value(ai, at).is_zero():
            new.append(ai + at)
        else:
            new.append(ai)
    return SimpleSystem(datum, new)


def enumerate_simple_systems(datum):
    """Closure of the distinguished system under odd reflections.

    Systems are deduplicated by set equality of their simple roots; the
    breadth-first order (distinguished system first) is deterministic.
    """
    start = distinguished_simple_system(datum)
    seen = {start.key()}
    out = [start]
    frontier = [start]
    while frontier:
        next_frontier = []
        for system in frontier:
            for t in system.isotropic_indices():
                refl = odd_reflection(datum, system, t)
                if refl.key() not in seen:
                    seen.add(refl.key())
                    out.append(refl)
                    next_frontier.append(refl)
        frontier = next_frontier
    return out


def _solve_coordinates(system, vector):
    """Exact coordinates of `vector` in the basis of simple roots, or None."""
    syms = sorted({s for b in system.roots for s, _ in b.items()} | set(vector.symbols()))
    r = system.rank
    rows = [[b.coefficient(s) for b in system.roots] + [vector.coefficient(s)] for s in syms]
    pivots = []
    row = 0
    for col in range(r):
        p = next((k for k in range(row, len(rows)) if rows[k][col] != 0), None)
        if p is None:
            continue
        rows[row], rows[p] = rows[p], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for k in range(len(rows)):
            if k != row and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[row])]
        pivots.append(col)
        row += 1
    sol = [Fraction(0)] * r
    for idx, col in enumerate(pivots):
        sol[col] = rows[idx][r]
    for k in range(row, len(rows)):
        if rows[k][r] != 0:
            return None
    return tuple(sol)


def root_coordinates(system, root):
    """Integer coordinates of a root in the simple basis (roots span a lattice)."""
    sol = _solve_coordinates(system, root)
    if sol is None:
        raise InconsistencyError(f"{root} is not in the span of {system!r}")
    if any(c.denominator != 1 for c in sol):
        raise InconsistencyError(f"{root} has non-integral coordinates {sol}")
    return tuple(int(c) for c in sol)


def positive_roots(system):
    """Roots that are N-combinations of the simple system; exactly half of all."""
    datum = system.datum
    pos = {}
    for root in datum.all_roots:
        coords = root_coordinates(system, root)
        if all(c >= 0 for c in coords) and any(coords):
            pos[root] = coords
    if 2 * len(pos) != len(datum.all_roots):
        raise InconsistencyError(
            f"{system!r} generates {len(pos)} positive roots out of {len(datum.all_roots)}"
        )
    return pos


def positive_root_set(system):
    return set(positive_roots(system))
