import random
from fractions import Fraction
from math import comb

import pytest

from symbpow import catalog
from symbpow.errors import (
    DuplicateLineError,
    IdenticalLinesError,
    PencilError,
    ZeroTripleError,
)
from symbpow.projgeom import (
    Arrangement,
    ProjLine,
    ProjPoint,
    census,
    incident,
    intersect,
    normalize_triple,
    points_of_multiplicity_at_least,
)


def test_normalize_examples():
    assert normalize_triple((0, -24, -2)) == (0, 12, 1)
    assert normalize_triple((1, 0, 0)) == (1, 0, 0)
    assert normalize_triple((-6, 6, -1)) == (6, -6, 1)


def test_normalize_idempotent():
    rng = random.Random(21)
    for _ in range(100):
        t = tuple(rng.randint(-20, 20) for _ in range(3))
        if t == (0, 0, 0):
            continue
        once = normalize_triple(t)
        assert normalize_triple(once) == once


def test_normalize_rational_input():
    assert normalize_triple((Fraction(1, 2), Fraction(0), Fraction(1))) == (1, 0, 2)


def test_normalize_zero_triple_rejected():
    with pytest.raises(ZeroTripleError):
        normalize_triple((0, 0, 0))


def test_intersect_examples():
    assert intersect(ProjLine(1, 0, 0), ProjLine(0, 1, 0)) == ProjPoint(0, 0, 1)
    assert intersect(ProjLine(1, 0, -6), ProjLine(0, 1, -6)) == ProjPoint(6, 6, 1)
    assert intersect(ProjLine(1, 1, 0), ProjLine(0, 0, 1)) == ProjPoint(1, -1, 0)


def test_intersect_identical_lines_rejected():
    with pytest.raises(IdenticalLinesError):
        intersect(ProjLine(1, 0, 0), ProjLine(-2, 0, 0))


def test_intersect_symmetric_and_incident():
    rng = random.Random(22)
    for _ in range(100):
        a = ProjLine(*(rng.randint(-9, 9) or 1 for _ in range(3)))
        b = ProjLine(*(rng.randint(-9, 9) or 1 for _ in range(3)))
        if a.coeffs == b.coeffs:
            continue
        p = intersect(a, b)
        assert p == intersect(b, a)
        assert incident(p, a) and incident(p, b)


def test_incident_examples():
    assert incident(ProjPoint(0, 0, 1), ProjLine(1, 0, 0))
    assert incident(ProjPoint(1, 0, 0), ProjLine(0, 0, 1))
    assert not incident(ProjPoint(0, 12, 1), ProjLine(0, 1, -6))


def test_arrangement_rejects_duplicates():
    with pytest.raises(DuplicateLineError):
        Arrangement([ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(-3, 0, 0)])


def test_arrangement_rejects_pencils():
    # all three lines pass through (0:0:1)
    with pytest.raises(PencilError):
        Arrangement([ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(1, 1, 0)])
    with pytest.raises(PencilError):
        Arrangement([ProjLine(1, 0, 0), ProjLine(0, 1, 0)])


def test_census_triangle():
    arr = Arrangement([ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1)])
    c = census(arr)
    assert c.total == 3
    assert c.t_vector == {2: 3}
    assert points_of_multiplicity_at_least(c, 3) == []


def test_census_a25_2_reproduces_expected_counts():
    entry = catalog.builtin("A25-2")
    c = census(entry.arrangement())
    assert c.total == 85
    assert c.t_vector == {2: 36, 3: 28, 4: 15, 6: 6}
    triple_plus = points_of_multiplicity_at_least(c, 3)
    assert len(triple_plus) == 49
    assert sum(1 for p in triple_plus if p.at_infinity()) == 8
    assert sum(1 for p in triple_plus if not p.at_infinity()) == 41
    assert tuple(triple_plus) == entry.expected.points  # already sorted


def test_census_a25_2_all_points():
    entry = catalog.builtin("A25-2")
    c = census(entry.arrangement())
    assert len(points_of_multiplicity_at_least(c, 2)) == 85


def test_pair_count_identity_on_random_arrangements():
    rng = random.Random(23)
    built = 0
    while built < 100:
        n = rng.randint(3, 8)
        lines = []
        seen = set()
        while len(lines) < n:
            t = tuple(rng.randint(-5, 5) for _ in range(3))
            if t == (0, 0, 0):
                continue
            ln = ProjLine(*t)
            if ln.coeffs not in seen:
                seen.add(ln.coeffs)
                lines.append(ln)
        try:
            arr = Arrangement(lines)
        except PencilError:
            continue
        c = census(arr)
        assert sum(comb(m, 2) for _, m in c.points) == comb(n, 2)
        built += 1


def test_points_of_multiplicity_sorted_and_validated():
    entry = catalog.builtin("A25-2")
    c = census(entry.arrangement())
    pts = points_of_multiplicity_at_least(c, 3)
    assert pts == sorted(pts)
    with pytest.raises(ValueError):
        points_of_multiplicity_at_least(c, 1)


def test_line_text_rendering():
    assert str(ProjLine(2, 1, 6)) == "2*x + y + 6*z"
    assert str(ProjLine(0, 1, -6)) == "y - 6*z"
    assert str(ProjPoint(0, -12, -1)) == "(0:12:1)"
