import pytest

from symbpow.catalog import (
    BUILTIN_NAMES,
    builtin,
    load_arrangement,
    serialize_arrangement,
)
from symbpow.errors import ArrangementFileError, UnknownEntryError
from symbpow.projgeom import ProjLine, ProjPoint, census


def test_builtin_names():
    assert set(BUILTIN_NAMES) == {"A25-2", "three-coordinate-points"}
    with pytest.raises(UnknownEntryError):
        builtin("A25-3")


def test_a25_2_lines():
    entry = builtin("A25-2")
    assert len(entry.lines) == 25
    assert len(set(entry.lines)) == 25
    # the two-sign family y +/- 2x +/- 6z expands to four distinct lines
    family = {ln.coeffs for ln in entry.lines if sorted(map(abs, ln.coeffs)) == [1, 2, 6]}
    assert len(family) == 8  # y+-2x+-6z together with 2y+-x+-6z


def test_a25_2_expected_points():
    entry = builtin("A25-2")
    pts = entry.expected.points
    assert len(pts) == 49
    assert ProjPoint(0, 0, 1) in pts
    assert sum(1 for p in pts if p.at_infinity()) == 8
    assert entry.expected.total_points == 85
    assert entry.expected.triple_plus_count == 49


def test_a25_2_reference_octics_parse():
    gens = builtin("A25-2").expected.generators()
    assert [g.degree for g in gens] == [8, 8, 8]


def test_a25_2_line_product():
    f = builtin("A25-2").line_product()
    assert f.degree == 25


def test_three_coordinate_points_entry():
    entry = builtin("three-coordinate-points")
    assert entry.support_threshold == 2
    assert len(entry.lines) == 3
    assert sorted(str(g) for g in entry.expected.generators()) == ["x*y", "x*z", "y*z"]
    assert str(entry.line_product()) == "x*y*z"
    c = census(entry.arrangement())
    assert c.total == 3 and c.t_vector == {2: 3}


def test_load_arrangement_triples(tmp_path):
    f = tmp_path / "triangle.txt"
    f.write_text("# a triangle\n1 0 0\n0 1 0\n\n0 0 1  # the line at infinity\n")
    entry = load_arrangement(f)
    assert entry.name == "triangle"
    assert entry.lines == (ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1))


def test_load_arrangement_linear_forms(tmp_path):
    f = tmp_path / "forms.txt"
    f.write_text("x+6z\ny - 6z\nx\ny\n")
    entry = load_arrangement(f)
    assert ProjLine(1, 0, 6) in entry.lines
    assert ProjLine(0, 1, -6) in entry.lines


def test_load_arrangement_rational_coefficients(tmp_path):
    f = tmp_path / "q.txt"
    f.write_text("1/2 0 1\n0 1 0\n1 0 0\n")
    entry = load_arrangement(f)
    assert entry.lines[0] == ProjLine(1, 0, 2)


def test_load_arrangement_duplicate_rejected(tmp_path):
    f = tmp_path / "dup.txt"
    f.write_text("x\ny\n2x\n")
    with pytest.raises(ArrangementFileError) as exc:
        load_arrangement(f)
    assert exc.value.line_number == 3


def test_load_arrangement_pencil_rejected(tmp_path):
    f = tmp_path / "pencil.txt"
    f.write_text("x\ny\nx+y\n")
    with pytest.raises(Exception):
        load_arrangement(f)


def test_load_arrangement_bad_record(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("x\ny\nx^2+y*z\n")
    with pytest.raises(ArrangementFileError) as exc:
        load_arrangement(f)
    assert exc.value.line_number == 3


def test_load_arrangement_empty_rejected(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("# nothing here\n\n")
    with pytest.raises(ArrangementFileError):
        load_arrangement(f)


def test_serialize_round_trip(tmp_path):
    for name in BUILTIN_NAMES:
        entry = builtin(name)
        f = tmp_path / f"{name}.txt"
        f.write_text(serialize_arrangement(entry))
        loaded = load_arrangement(f)
        assert loaded.lines == entry.lines


def test_full_a25_2_file_equals_builtin(tmp_path):
    # a file listing all 25 expanded forms reproduces the builtin lines
    entry = builtin("A25-2")
    text = "\n".join(str(ln) for ln in entry.lines)
    f = tmp_path / "a252.txt"
    f.write_text(text + "\n")
    loaded = load_arrangement(f)
    assert set(loaded.lines) == set(entry.lines)
