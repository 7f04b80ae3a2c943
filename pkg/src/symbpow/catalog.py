"""Built-in arrangement data and arrangement-file ingestion.

The ``A25-2`` entry carries the 25-line rational simplicial arrangement
whose 49 triple-or-higher intersection points drive the main containment
computation, together with recorded reference data: the expected census
counts, the expected list of the 49 points, and three reference octic
generators as published for this configuration.  Reference data is input
to be *verified*, never trusted: the engine recomputes everything from the
line equations and reports where the reference data disagrees.

Sign patterns like "y +/- 2x +/- 6z" expand with + before -, leftmost sign
varying slowest, so line and point indices are stable across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ArrangementFileError, UnknownEntryError
from .polyring import HomogPoly, parse
from .projgeom import Arrangement, ProjLine, ProjPoint

BUILTIN_NAMES = ("A25-2", "three-coordinate-points")


@dataclass(frozen=True)
class ExpectedData:
    """Reference values recorded for a catalog entry; verified, not trusted."""

    total_points: int | None = None
    triple_plus_count: int | None = None
    points: tuple[ProjPoint, ...] = ()
    generator_texts: tuple[str, ...] = ()

    def generators(self) -> tuple[HomogPoly, ...]:
        return tuple(parse(t) for t in self.generator_texts)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lines: tuple[ProjLine, ...]
    support_threshold: int = 3  # census multiplicity cutoff defining the support
    expected: ExpectedData | None = None

    def arrangement(self) -> Arrangement:
        return Arrangement(self.lines)

    def line_product(self) -> HomogPoly:
        """Product of all line forms; vanishes at p to order = multiplicity."""
        prod = HomogPoly(0, {(0, 0, 0): Fraction(1)})
        for ln in self.lines:
            prod = prod * HomogPoly.linear_form(*ln.coeffs)
        return prod


def _signs(n: int):
    """Sign tuples for n +/- slots: + before -, leftmost varying slowest."""
    if n == 0:
        return [()]
    return [(s,) + rest for s in (1, -1) for rest in _signs(n - 1)]


def _a25_2_lines() -> tuple[ProjLine, ...]:
    lines: list[ProjLine] = [ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1)]
    for (s,) in _signs(1):
        lines.append(ProjLine(1, s, 0))            # x +/- y
    for (s,) in _signs(1):
        lines.append(ProjLine(1, 0, 6 * s))        # x +/- 6z
    for (s,) in _signs(1):
        lines.append(ProjLine(0, 1, 6 * s))        # y +/- 6z
    for (s,) in _signs(1):
        lines.append(ProjLine(1, 0, 18 * s))       # x +/- 18z
    for (s,) in _signs(1):
        lines.append(ProjLine(0, 1, 18 * s))       # y +/- 18z
    for s1, s2 in _signs(2):
        lines.append(ProjLine(2 * s1, 1, 6 * s2))  # y +/- 2x +/- 6z
    for s1, s2 in _signs(2):
        lines.append(ProjLine(s1, 1, 12 * s2))     # y +/- x +/- 12z
    for s1, s2 in _signs(2):
        lines.append(ProjLine(s1, 2, 6 * s2))      # 2y +/- x +/- 6z
    return tuple(lines)


def _a25_2_expected_points() -> tuple[ProjPoint, ...]:
    pts: list[ProjPoint] = [ProjPoint(0, 0, 1)]
    affine = [
        (0, 12), (12, 0), (6, 6), (6, 18), (3, 0), (0, 3), (6, 0), (0, 6),
        (2, 2), (18, 6), (18, 18), (18, 30), (30, 18),
    ]
    for x, y in affine:
        slots = int(x != 0) + int(y != 0)
        for signs in _signs(slots):
            it = iter(signs)
            sx = next(it) if x else 1
            sy = next(it) if y else 1
            pts.append(ProjPoint(sx * x, sy * y, 1))
    pts += [
        ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(1, -1, 0), ProjPoint(1, 1, 0),
        ProjPoint(1, -2, 0), ProjPoint(1, 2, 0), ProjPoint(-2, 1, 0), ProjPoint(2, 1, 0),
    ]
    return tuple(pts)


# Reference octics recorded for A25-2, kept exactly as published (implicit
# multiplication and all).  They are expected data: the generators command
# verifies each against the recomputed degree-8 piece and reports mismatches.
_A25_2_REFERENCE_OCTICS = (
    "yz(3553x^6-15102x^4y^2+11549x^2y^4+y^6+385x^4z^2-560x^2y^2z^2"
    "-189y^4z^2+6300x^2z^4+6804y^2z^4-14665z^6)",
    "xz(-11426x^6+4001x^4y^2-4002x^2y^4+y^6-15874x^4z^2+360x^2y^2z^2"
    "+15748y^4z^2-4374x^2z^4-4050y^2z^4-6568z^6)",
    "xy(x+y)(x-y)(1819x^4+267x^2y^2+1819y^4+2404x^2z^2+2404y^2z^2+z^4)",
)


def builtin(name: str) -> CatalogEntry:
    """Built-in catalog entry by name; see ``BUILTIN_NAMES``."""
    if name == "A25-2":
        return CatalogEntry(
            name="A25-2",
            lines=_a25_2_lines(),
            support_threshold=3,
            expected=ExpectedData(
                total_points=85,
                triple_plus_count=49,
                points=tuple(sorted(_a25_2_expected_points())),
                generator_texts=_A25_2_REFERENCE_OCTICS,
            ),
        )
    if name == "three-coordinate-points":
        return CatalogEntry(
            name="three-coordinate-points",
            lines=(ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1)),
            support_threshold=2,
            expected=ExpectedData(
                total_points=3,
                triple_plus_count=0,
                points=tuple(sorted(
                    (ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1))
                )),
                generator_texts=("x*y", "x*z", "y*z"),
            ),
        )
    raise UnknownEntryError(
        f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}"
    )


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_line_record(record: str, lineno: int) -> ProjLine:
    tokens = record.split()
    if len(tokens) == 3 and all(_RATIONAL.match(t) for t in tokens):
        try:
            return ProjLine(*(Fraction(t) for t in tokens))
        except Exception as exc:
            raise ArrangementFileError(str(exc), lineno)
    try:
        poly = parse(record)
    except Exception as exc:
        raise ArrangementFileError(f"cannot parse record {record!r}: {exc}", lineno)
    if poly.degree != 1 or poly.is_zero():
        raise ArrangementFileError(
            f"record {record!r} is not a linear form", lineno)
    return ProjLine(
        poly.coefficient((1, 0, 0)),
        poly.coefficient((0, 1, 0)),
        poly.coefficient((0, 0, 1)),
    )


def load_arrangement(path: str | Path) -> CatalogEntry:
    """Read an arrangement file: one line record per text line.

    A record is either three whitespace-separated rationals "a b c" (the
    coefficients of a x + b y + c z = 0) or a linear-form expression such
    as "x+6z".  '#' starts a comment; blank lines are skipped.  Duplicate
    lines and pencils are rejected with the offending line number where
    possible.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ArrangementFileError(f"cannot read {path}: {exc}")
    lines: list[ProjLine] = []
    seen: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        record = raw.split("#", 1)[0].strip()
        if not record:
            continue
        ln = _parse_line_record(record, lineno)
        if ln.coeffs in seen:
            raise ArrangementFileError(
                f"duplicate line {ln} (first seen on line {seen[ln.coeffs]})", lineno)
        seen[ln.coeffs] = lineno
        lines.append(ln)
    if not lines:
        raise ArrangementFileError(f"{path} contains no line records")
    entry = CatalogEntry(name=path.stem, lines=tuple(lines))
    entry.arrangement()  # validates distinctness and the pencil condition
    return entry


def serialize_arrangement(entry: CatalogEntry) -> str:
    """Entry as file text that ``load_arrangement`` reads back unchanged."""
    out = [f"# arrangement {entry.name}: {len(entry.lines)} lines"]
    for ln in entry.lines:
        out.append("{} {} {}".format(*ln.coeffs))
    return "\n".join(out) + "\n"
