"""Exact projective geometry over the rationals.

Points and lines in the projective plane are primitive integer triples up
to sign: gcd of the absolute values is 1 and the first nonzero coordinate
is positive.  Incidence is an exact zero dot product, intersection is a
cross product, and the census of an arrangement counts, for every pairwise
intersection point, how many of the arrangement's lines pass through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import (
    DuplicateLineError,
    IdenticalLinesError,
    InternalCheckError,
    PencilError,
    ZeroTripleError,
)


def normalize_triple(raw: Sequence[int | Fraction]) -> tuple[int, int, int]:
    """Scale a nonzero rational triple to the canonical primitive integer form.

    Rational entries are admitted and cleared to integers first; the result
    has coprime entries and a positive first nonzero coordinate, so the map
    is idempotent and constant on projective equivalence classes up to sign.
    """
    if len(raw) != 3:
        raise ZeroTripleError(f"expected a coordinate triple, got {len(raw)} entries")
    den = 1
    for v in raw:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    x, y, z = (int(v * den) if isinstance(v, Fraction) else v * den for v in raw)
    if x == 0 and y == 0 and z == 0:
        raise ZeroTripleError("projective coordinates cannot all be zero")
    g = gcd(gcd(abs(x), abs(y)), abs(z))
    x, y, z = x // g, y // g, z // g
    for v in (x, y, z):
        if v:
            if v < 0:
                x, y, z = -x, -y, -z
            break
    return (x, y, z)


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Point of the rational projective plane, canonically normalized."""

    coords: tuple[int, int, int]

    def __init__(self, x: int | Fraction, y: int | Fraction, z: int | Fraction):
        object.__setattr__(self, "coords", normalize_triple((x, y, z)))

    @property
    def x(self) -> int:
        return self.coords[0]

    @property
    def y(self) -> int:
        return self.coords[1]

    @property
    def z(self) -> int:
        return self.coords[2]

    def at_infinity(self) -> bool:
        return self.coords[2] == 0

    def __str__(self):
        return "({}:{}:{})".format(*self.coords)


@dataclass(frozen=True, order=True)
class ProjLine:
    """Line a*x + b*y + c*z = 0, coefficients canonically normalized."""

    coeffs: tuple[int, int, int]

    def __init__(self, a: int | Fraction, b: int | Fraction, c: int | Fraction):
        object.__setattr__(self, "coeffs", normalize_triple((a, b, c)))

    def __str__(self):
        a, b, c = self.coeffs
        parts = []
        for coef, var in ((a, "x"), (b, "y"), (c, "z")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            term = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, term))
        out = ""
        for i, (sign, term) in enumerate(parts):
            if i == 0:
                out = term if sign == "+" else "-" + term
            else:
                out += f" {sign} {term}"
        return out


def incident(p: ProjPoint, line: ProjLine) -> bool:
    """Exact incidence: the dot product of the two triples vanishes."""
    (x, y, z), (a, b, c) = p.coords, line.coeffs
    return a * x + b * y + c * z == 0


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines (cross product, normalized)."""
    if l1.coeffs == l2.coeffs:
        raise IdenticalLinesError(f"cannot intersect a line with itself: {l1}")
    (a1, b1, c1), (a2, b2, c2) = l1.coeffs, l2.coeffs
    return ProjPoint(b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)


class Arrangement:
    """Ordered list of pairwise distinct lines not all through one point.

    Duplicate lines are rejected rather than merged (a silent merge would
    corrupt multiplicity counts), and a pencil - all lines through a common
    point - is rejected because its census is degenerate.
    """

    __slots__ = ("lines",)

    def __init__(self, lines: Iterable[ProjLine]):
        lines = tuple(lines)
        seen = set()
        for ln in lines:
            if ln.coeffs in seen:
                raise DuplicateLineError(f"duplicate line {ln}")
            seen.add(ln.coeffs)
        if len(lines) < 3:
            raise PencilError("an arrangement needs at least 3 lines not through one point")
        if _coeff_rank(lines) < 3:
            raise PencilError("all lines pass through one common point")
        object.__setattr__(self, "lines", lines)

    def __setattr__(self, *a):
        raise AttributeError("Arrangement is immutable")

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)


def _coeff_rank(lines: Sequence[ProjLine]) -> int:
    """Rank of the n x 3 coefficient matrix; 2 or less means a pencil."""
    rows = [list(l.coeffs) for l in lines]
    rank = 0
    for c in range(3):
        pr = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        lead = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                f = Fraction(rows[i][c], lead)
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass(frozen=True)
class Census:
    """All pairwise intersection points with their line multiplicities.

    ``points`` is sorted lexicographically on normalized coordinates;
    ``t_vector`` maps each multiplicity to the number of points attaining it.
    """

    points: tuple[tuple[ProjPoint, int], ...]
    t_vector: dict[int, int]

    @property
    def total(self) -> int:
        return len(self.points)

    def count_at_least(self, k: int) -> int:
        return sum(1 for _, m in self.points if m >= k)


def census(arrangement: Arrangement) -> Census:
    """Intersect all line pairs, deduplicate, and count incident lines.

    Verifies the pair-count identity sum_p C(mult_p, 2) = C(n, 2) before
    returning; each unordered pair of distinct lines meets in exactly one
    point, so a violation means a counting bug.
    """
    lines = arrangement.lines
    seen: set[tuple[int, int, int]] = set()
    pts: list[ProjPoint] = []
    for l1, l2 in combinations(lines, 2):
        p = intersect(l1, l2)
        if p.coords not in seen:
            seen.add(p.coords)
            pts.append(p)
    counted = []
    for p in sorted(pts):
        mult = sum(1 for ln in lines if incident(p, ln))
        counted.append((p, mult))
    pairs = sum(comb(m, 2) for _, m in counted)
    expected = comb(len(lines), 2)
    if pairs != expected:
        raise InternalCheckError(
            f"pair-count identity violated: sum C(m,2) = {pairs}, C({len(lines)},2) = {expected}"
        )
    tv: dict[int, int] = {}
    for _, m in counted:
        tv[m] = tv.get(m, 0) + 1
    return Census(tuple(counted), dict(sorted(tv.items())))


def points_of_multiplicity_at_least(arrangement: Arrangement | Census, k: int) -> list[ProjPoint]:
    """Census points on at least ``k`` lines, in canonical sorted order."""
    if k < 2:
        raise ValueError("intersection multiplicity is at least 2")
    c = arrangement if isinstance(arrangement, Census) else census(arrangement)
    return [p for p, m in c.points if m >= k]
