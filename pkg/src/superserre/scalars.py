"""Exact field arithmetic over Q and over Q(a), the rational functions in one
indeterminate `a`.

Everything downstream (Gram matrices, Cartan matrices, relation coefficients,
linear algebra) is computed in this field, so there is no floating point
anywhere in the package.  Plain rationals are the degree-zero special case.
"""

from __future__ import annotations

from fractions import Fraction


class AlphaDomainError(ValueError):
    """Raised when the deformation parameter is specialised to 0 or -1."""


class PoleError(ZeroDivisionError):
    """Raised when a substitution makes a denominator vanish."""


FORBIDDEN_ALPHA = (Fraction(0), Fraction(-1))


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Dense univariate polynomial over Q, coefficients by ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(Fraction(c) for c in coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (Fraction(0),) * (n - len(a))
        b = b + (Fraction(0),) * (n - len(b))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return Poly(out)

    def scale(self, k):
        return Poly(c * k for c in self.coeffs)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(rem) >= len(d):
            k = len(rem) - len(d)
            f = rem[-1] / d[-1]
            quo[k] = f
            for i, c in enumerate(d):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        return Poly(quo), Poly(rem)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def evaluate(self, a0):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * a0 + c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


def _poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


_ONE_POLY = Poly([1])


class Scalar:
    """Element of Q(a) in canonical form: gcd(num, den) = 1, den monic.

    Rationals embed as degree-zero numerators over denominator 1, so equality
    and hashing agree with rational equality on that subfield.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if isinstance(num, Scalar):
            if den is not None:
                raise TypeError("cannot re-wrap a Scalar with a denominator")
            self.num, self.den = num.num, num.den
            return
        num = num if isinstance(num, Poly) else Poly([Fraction(num)])
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, Poly):
            den = Poly([Fraction(den)])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(a)")
        if num.is_zero():
            self.num, self.den = Poly(), _ONE_POLY
            return
        g = _poly_gcd(num, den)
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_fraction(q):
        return Scalar(Poly([Fraction(q)]))

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den == _ONE_POLY

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def as_integer(self):
        q = self.as_fraction()
        if q.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return int(q)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.num, s.den = -self.num, self.den
        return s

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(a)")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Scalar(other) / self

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(a)")
        return Scalar(self.den, self.num)

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.as_fraction())
        return hash((self.num, self.den))

    # -- specialisation ----------------------------------------------------

    def evaluate_at(self, a0):
        """Substitute a := a0 exactly; a0 must avoid {0, -1} and all poles."""
        a0 = Fraction(a0)
        d = self.den.evaluate(a0)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes at a = {a0}")
        if a0 in FORBIDDEN_ALPHA:
            raise AlphaDomainError(
                f"a = {a0} is excluded: the parameter ranges over C \\ {{0, -1}}"
            )
        return self.num.evaluate(a0) / d

    def sign_at_positive_sample(self):
        """Sign in {-1, 0, +1} taken at a positive sample value of `a`.

        All Gram-matrix entries arising here keep a constant sign on a > 0,
        so any positive sample gives the same answer; samples are advanced
        past accidental zeros of non-zero functions.
        """
        if self.is_zero():
            return 0
        for a0 in (Fraction(1), Fraction(2), Fraction(3), Fraction(5)):
            d = self.den.evaluate(a0)
            if d == 0:
                continue
            v = self.num.evaluate(a0) / d
            if v != 0:
                return 1 if v > 0 else -1
        raise ValueError(f"could not determine the sign of {self}")

    # -- text form ---------------------------------------------------------

    def render(self):
        """Fixed textual grammar: rationals as 'p/q', e.g. '-(1+a)/a'."""
        num, den = _render_poly(self.num), _render_poly(self.den)
        if self.den == _ONE_POLY:
            return num
        if _needs_parens(self.num) and not _is_wrapped(num):
            num = f"({num})"
        if _needs_parens(self.den) or den.startswith("-"):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return self.render()


ZERO = Scalar(0)
ONE = Scalar(1)
ALPHA = Scalar(Poly([0, 1]))


def _needs_parens(p):
    return sum(1 for c in p.coeffs if c != 0) > 1


def _is_wrapped(text):
    """True for '(...)' or '-(...)' with the parentheses spanning everything."""
    if text.startswith("-("):
        body = text[1:]
    elif text.startswith("("):
        body = text
    else:
        return False
    if not body.endswith(")"):
        return False
    depth = 0
    for k, ch in enumerate(body):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(body) - 1:
            return False
    return True


def _render_poly(p):
    if p.is_zero():
        return "0"
    # ascending powers, leading minus pulled out when every term is negative
    negate = all(c <= 0 for c in p.coeffs)
    coeffs = [-c for c in p.coeffs] if negate else list(p.coeffs)
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mon = "a" if k == 1 else f"a^{k}"
            if c == 1:
                term = mon
            elif c == -1:
                term = f"-{mon}"
            else:
                term = f"{c}*{mon}"
            parts.append(term)
    text = parts[0]
    for t in parts[1:]:
        text += t if t.startswith("-") else "+" + t
    if negate:
        text = f"-({text})" if len(parts) > 1 else f"-{text}"
    return text


# -- parser for the same grammar ------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text.replace(" ", "")
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            raise ValueError(f"expected {ch!r} at {self.pos} in {self.text!r}")
        self.pos += 1

    def parse(self):
        v = self.expr()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.peek()
            self.pos += 1
            f = self.factor()
            v = v * f if op == "*" else v / f
        return v

    def factor(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.factor()
        if self.peek() == "+":
            self.pos += 1
            return self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            out = ONE
            for _ in range(n):
                out = out * v
            return out
        return v

    def atom(self):
        if self.peek() == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        if self.peek() == "a":
            self.pos += 1
            return ALPHA
        return Scalar(self.integer())

    def integer(self):
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at {start} in {self.text!r}")
        return int(self.text[start:self.pos])


def parse_scalar(text):
    """Inverse of Scalar.render for the fixed grammar ('a' is the parameter)."""
    return _Parser(text).parse()
