"""Homogeneous polynomials in x, y, z with exact rational coefficients.

Monomials are exponent triples (i, j, k).  The canonical monomial order is
graded lexicographic with x > y > z: within one degree, triples compare
lexicographically descending, so x^d comes first and z^d last.  The same
order indexes coefficient vectors everywhere in the package and fixes the
term order of printed polynomials, which keeps reports reproducible and
re-parseable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .errors import NonHomogeneousError, PolyParseError
from .projgeom import ProjPoint

Monomial = tuple[int, int, int]

VARIABLES = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomials_of_degree(d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in canonical order; C(d+2, 2) of them."""
    out = []
    for i in range(d, -1, -1):
        for j in range(d - i, -1, -1):
            out.append((i, j, d - i - j))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(d))}


def vector_length(d: int) -> int:
    return comb(d + 2, 2)


@dataclass(frozen=True)
class CoeffVector:
    """Coefficient vector of one graded piece, in canonical monomial order."""

    degree: int
    entries: tuple[Fraction | int, ...]

    def __post_init__(self):
        if len(self.entries) != vector_length(self.degree):
            raise ValueError(
                f"degree {self.degree} needs {vector_length(self.degree)} entries, "
                f"got {len(self.entries)}"
            )


class HomogPoly:
    """Immutable homogeneous polynomial; zero polynomials carry a nominal degree."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, Fraction | int]):
        clean: dict[Monomial, Fraction] = {}
        for mon, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            if sum(mon) != degree:
                raise NonHomogeneousError(degree, sum(mon))
            clean[mon] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("HomogPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "HomogPoly":
        return cls(degree, {})

    @classmethod
    def variable(cls, name: str) -> "HomogPoly":
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
        mon = tuple(int(v == name) for v in VARIABLES)
        return cls(1, {mon: Fraction(1)})

    @classmethod
    def linear_form(cls, a, b, c) -> "HomogPoly":
        return cls(1, {(1, 0, 0): Fraction(a), (0, 1, 0): Fraction(b), (0, 0, 1): Fraction(c)})

    @classmethod
    def monomial(cls, mon: Monomial, coeff=1) -> "HomogPoly":
        return cls(sum(mon), {mon: Fraction(coeff)})

    @classmethod
    def from_vector(cls, vec: CoeffVector) -> "HomogPoly":
        mons = monomials_of_degree(vec.degree)
        return cls(vec.degree, {m: c for m, c in zip(mons, vec.entries) if c})

    # -- views --------------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mon: Monomial) -> Fraction:
        return self._terms.get(mon, Fraction(0))

    def to_vector(self) -> CoeffVector:
        idx = monomial_index(self.degree)
        entries = [Fraction(0)] * vector_length(self.degree)
        for m, c in self._terms.items():
            entries[idx[m]] = c
        return CoeffVector(self.degree, tuple(entries))

    def int_vector(self) -> list[int]:
        """Dense integer coefficient vector (denominators cleared)."""
        from math import gcd

        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        idx = monomial_index(self.degree)
        entries = [0] * vector_length(self.degree)
        for m, c in self._terms.items():
            entries[idx[m]] = int(c * den)
        return entries

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise NonHomogeneousError(self.degree, other.degree)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return HomogPoly(self.degree, out)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomogPoly":
        if isinstance(other, (int, Fraction)):
            return HomogPoly(self.degree, {m: c * other for m, c in self._terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                prev = out.get(m)
                out[m] = c1 * c2 if prev is None else prev + c1 * c2
        return HomogPoly(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "HomogPoly":
        if e < 0:
            raise ValueError("negative power")
        result = HomogPoly(0, {(0, 0, 0): Fraction(1)})
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        return (
            isinstance(other, HomogPoly)
            and self._terms == other._terms
            and (self.degree == other.degree or not self._terms)
        )

    def __hash__(self):
        return hash((self.degree if self._terms else -1, frozenset(self._terms.items())))

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, var: str | int) -> "HomogPoly":
        """Formal partial derivative; degree drops by one (zero stays zero)."""
        v = VARIABLES.index(var) if isinstance(var, str) else var
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[v]
            if e:
                mm = list(m)
                mm[v] = e - 1
                out[tuple(mm)] = c * e
        return HomogPoly(max(self.degree - 1, 0), out)

    def evaluate(self, point: ProjPoint | Sequence[int]) -> Fraction:
        """Exact value at the integer representative of ``point``.

        A zero value is independent of the chosen representative; nonzero
        values scale with it and are only meaningful as "not zero".
        """
        x, y, z = point.coords if isinstance(point, ProjPoint) else point
        total = Fraction(0)
        for (i, j, k), c in self._terms.items():
            total += c * x**i * y**j * z**k
        return total

    def order_at(self, point: ProjPoint | Sequence[int]) -> int:
        """Order of vanishing at a point: the least total order of a
        non-vanishing partial derivative (0 when the value itself is nonzero).

        Walks successive derivative layers in all three variables; for a
        nonzero polynomial some partial of order <= degree is a nonzero
        constant, so the walk terminates.
        """
        if self.is_zero():
            raise ValueError("the zero polynomial vanishes to every order")
        layer: dict[Monomial, HomogPoly] = {(0, 0, 0): self}
        order = 0
        while True:
            if any(g.evaluate(point) != 0 for g in layer.values()):
                return order
            nxt: dict[Monomial, HomogPoly] = {}
            for alpha, g in layer.items():
                for v in range(3):
                    beta = list(alpha)
                    beta[v] += 1
                    beta = tuple(beta)
                    if beta not in nxt:
                        nxt[beta] = g.partial(v)
            layer = nxt
            order += 1

    # -- text ----------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, reverse=True):
            c = self._terms[m]
            mon = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(VARIABLES, m) if e
            )
            mag = abs(c)
            coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mon and mag == 1:
                body = mon
            elif mon:
                body = f"{coeff}*{mon}"
            else:
                body = coeff
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HomogPoly({self})"


def multiply(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    return f * g


def order_at(f: HomogPoly, point: ProjPoint | Sequence[int]) -> int:
    return f.order_at(point)


# ---------------------------------------------------------------------------
# Parser: integer/rational coefficients, variables x y z, operators + - * / ^,
# parentheses, and implicit multiplication by juxtaposition ("2x", "xy(x+y)").


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    # expression := term (('+' | '-') term)*
    def expression(self) -> dict:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        total = _scale(self.term(), sign)
        while True:
            op = self.peek()
            if op not in ("+", "-"):
                break
            self.take()
            sign = -1 if op == "-" else 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            total = _add(total, _scale(self.term(), sign))
        return total

    # term := factor (('*' | '/')? factor)*
    def term(self) -> dict:
        result = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                result = _mul(result, self.factor())
            elif ch == "/":
                self.take()
                divisor = self.factor()
                const = _as_constant(divisor)
                if const is None:
                    raise self.error("division is only allowed by a nonzero constant")
                if const == 0:
                    raise self.error("division by zero")
                result = _scale(result, Fraction(1, 1) / const)
            elif ch.isdigit() or ch.isalpha() or ch == "(":
                result = _mul(result, self.factor())  # implicit multiplication
            else:
                break
        return result

    # factor := base ('^' integer)?
    def factor(self) -> dict:
        base = self.base()
        if self.peek() == "^":
            self.take()
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise self.error("expected an integer exponent after '^'")
            e = int(self.text[start:self.pos])
            out = {(0, 0, 0): Fraction(1)}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def base(self) -> dict:
        ch = self.peek()
        if ch == "(":
            self.take()
            inner = self.expression()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return {(0, 0, 0): Fraction(int(self.text[start:self.pos]))}
        if ch in VARIABLES:
            self.take()
            mon = tuple(int(v == ch) for v in VARIABLES)
            return {mon: Fraction(1)}
        if ch.isalpha():
            raise self.error(f"unknown variable {ch!r} (only x, y, z)")
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {ch!r}")


def _add(f: dict, g: dict) -> dict:
    out = dict(f)
    for m, c in g.items():
        out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


def _scale(f: dict, s) -> dict:
    if s == 1:
        return f
    if s == 0:
        return {}
    return {m: c * s for m, c in f.items()}


def _mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            prev = out.get(m)
            out[m] = c1 * c2 if prev is None else prev + c1 * c2
    return {m: c for m, c in out.items() if c}


def _as_constant(f: dict) -> Fraction | None:
    if not f:
        return Fraction(0)
    if set(f) == {(0, 0, 0)}:
        return f[(0, 0, 0)]
    return None


def parse(text: str) -> HomogPoly:
    """Parse polynomial text into a homogeneous polynomial.

    Raises :class:`PolyParseError` with the offending position for syntax
    errors and :class:`NonHomogeneousError` naming two mixed degrees when
    the expanded polynomial is not homogeneous.  The zero polynomial parses
    to degree 0.
    """
    p = _Parser(text)
    poly = p.expression()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error(f"unexpected trailing input {text[p.pos:]!r}")
    degrees = {sum(m) for m in poly}
    if len(degrees) > 1:
        a, b = sorted(degrees)[:2]
        raise NonHomogeneousError(a, b)
    degree = degrees.pop() if degrees else 0
    return HomogPoly(degree, poly)
