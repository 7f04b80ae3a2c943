import random
from math import comb

import pytest

from symbpow import catalog
from symbpow.errors import GeneratorSetUnverifiedError, WitnessRejection
from symbpow.fatpoints import (
    FatScheme,
    GeneratorSet,
    certify_witness,
    check_containment,
    conditions_matrix,
    els_spot_check,
    initial_degree,
    minimal_generators,
    ordinary_power_piece,
    reverse_containment_check,
    symbolic_piece,
)
from symbpow.polyring import HomogPoly, parse, vector_length
from symbpow.projgeom import ProjPoint

from .oracles import brute_symbolic_dim, oracle_rank


COORD_POINTS = [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)]


def test_fatscheme_validation_and_scaling():
    s = FatScheme(COORD_POINTS, 1)
    assert s.multiplicities == (1, 1, 1)
    assert s.scaled(3).multiplicities == (3, 3, 3)
    assert s.conditions_count() == 3
    assert s.scaled(2).conditions_count() == 9
    with pytest.raises(ValueError):
        FatScheme([ProjPoint(1, 0, 0), ProjPoint(-1, 0, 0)], 1)
    with pytest.raises(ValueError):
        FatScheme(COORD_POINTS, 0)


def test_conditions_row_count(a25):
    scheme = a25["scheme"]
    assert len(conditions_matrix(scheme, 8)) == 49
    assert len(conditions_matrix(scheme.scaled(3), 10)) == 49 * comb(4, 2)


def test_symbolic_piece_degree8_is_three_dimensional(a25):
    piece = symbolic_piece(a25["scheme"], 8)
    assert piece.dim == 3
    # every kernel element vanishes at every support point
    for g in piece.polynomials():
        assert all(g.evaluate(p) == 0 for p in a25["scheme"].points)


def test_symbolic_piece_degree7_empty(a25):
    assert symbolic_piece(a25["scheme"], 7).dim == 0


def test_symbolic_piece_dim_equals_cols_minus_rank(a25):
    rows = conditions_matrix(a25["scheme"], 8)
    assert symbolic_piece(a25["scheme"], 8).dim == vector_length(8) - oracle_rank(rows)


def test_symbolic_piece_three_fat_points_contains_xyz():
    s = FatScheme(COORD_POINTS, 2)
    piece = symbolic_piece(s, 3)
    assert piece.dim == 1
    assert piece.contains_poly(parse("x*y*z"))


def test_symbolic_piece_matches_brute_force_conditions():
    """Chart-reduced conditions agree with full three-variable conditions."""
    rng = random.Random(41)
    for _ in range(12):
        pts = []
        seen = set()
        while len(pts) < rng.randint(2, 4):
            t = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(0, 2))
            if t == (0, 0, 0):
                continue
            p = ProjPoint(*t)
            if p.coords not in seen:
                seen.add(p.coords)
                pts.append(p)
        mults = [rng.randint(1, 3) for _ in pts]
        scheme = FatScheme(pts, mults)
        d = rng.randint(1, 5)
        piece = symbolic_piece(scheme, d)
        assert piece.dim == brute_symbolic_dim(
            [p.coords for p in scheme.points], scheme.multiplicities, d)
        for g in piece.polynomials():
            for p, m in zip(scheme.points, scheme.multiplicities):
                assert g.order_at(p) >= m


def test_symbolic_piece_monotone_in_multiplicity():
    s1 = FatScheme(COORD_POINTS, 1)
    s2 = FatScheme(COORD_POINTS, 2)
    big = symbolic_piece(s1, 4)
    for v in symbolic_piece(s2, 4).basis:
        assert big.contains(v)


def test_initial_degree():
    assert initial_degree(FatScheme(COORD_POINTS, 1)) == 2
    assert initial_degree(FatScheme(COORD_POINTS, 2)) == 3
    assert initial_degree(FatScheme([ProjPoint(0, 0, 1)], 1)) == 1


def test_initial_degree_a25(a25):
    assert initial_degree(a25["scheme"]) == 8
    assert initial_degree(a25["scheme"].scaled(3)) == 21


def test_ordinary_power_piece_three_points(three_points):
    gens = three_points["gens"]
    empty = ordinary_power_piece(gens, 2, 3)
    assert empty.dim == 0 and empty.spanning_count == 0
    six = ordinary_power_piece(gens, 2, 4)
    assert six.dim == 6 and six.spanning_count == 6


def test_ordinary_power_piece_a25_degree25(a25_gens):
    piece = ordinary_power_piece(a25_gens, 2, 25)
    assert piece.spanning_count == 330  # 6 products x 55 monomials
    assert piece.dim == 204


def test_minimal_generators_a25_cap12(a25):
    extraction = minimal_generators(a25["scheme"], 12)
    gens = extraction.generators
    assert gens.degrees == (8, 8, 8)
    assert extraction.all_equal()
    dims = {row.degree: row.symbolic_dim for row in extraction.agreement}
    assert [dims[d] for d in range(8, 13)] == [3, 9, 18, 29, 42]


def test_minimal_generators_three_points(three_points):
    gens = three_points["gens"]
    assert sorted(str(g) for g in gens.gens) == ["x*y", "x*z", "y*z"]
    assert three_points["extraction"].all_equal()


def test_minimal_generators_single_point():
    scheme = FatScheme([ProjPoint(0, 0, 1)], 1)
    extraction = minimal_generators(scheme, 2)
    assert sorted(str(g) for g in extraction.generators.gens) == ["x", "y"]


def test_check_containment_trivial_holds(three_points):
    verdict = check_containment(three_points["scheme"], three_points["gens"], 1, 1)
    assert verdict.holds


def test_check_containment_three_points_fails_with_xyz(three_points):
    verdict = check_containment(three_points["scheme"], three_points["gens"], 2, 2)
    assert not verdict.holds
    cert = verdict.certificate
    assert str(cert.witness) == "x*y*z"
    assert cert.witness_degree == 3
    assert cert.power_rank == 0 and cert.adjoined_rank == 1
    assert all(po.actual >= po.required for po in cert.point_orders)


def test_check_containment_requires_verified_generators(three_points):
    loose = GeneratorSet.from_polys([parse("x*y"), parse("x*z"), parse("y*z")])
    with pytest.raises(GeneratorSetUnverifiedError):
        check_containment(three_points["scheme"], loose, 2, 2)


def test_check_containment_a25_m3_r2_fails_at_degree_21(a25, a25_gens):
    verdict = check_containment(a25["scheme"], a25_gens, 3, 2)
    assert not verdict.holds
    cert = verdict.certificate
    assert cert.witness_degree == 21
    assert cert.power_rank == 105
    assert cert.adjoined_rank == 106
    assert cert.power_spanning_size == 126
    assert min(po.actual for po in cert.point_orders) >= 3
    # the scan stopped at the first failing degree
    assert verdict.scan[-1].degree == 21
    assert verdict.scan[-1].contained is False


def test_witness_is_product_of_21_lines(a25, a25_gens):
    """The emitted witness factors as the product of all arrangement lines
    except the four x +/- 6z, y +/- 6z."""
    verdict = check_containment(a25["scheme"], a25_gens, 3, 2)
    witness = verdict.certificate.witness
    entry = a25["entry"]
    dropped = {(1, 0, 6), (1, 0, -6), (0, 1, 6), (0, 1, -6)}
    prod = HomogPoly(0, {(0, 0, 0): 1})
    for ln in entry.lines:
        if ln.coeffs not in dropped:
            prod = prod * HomogPoly.linear_form(*ln.coeffs)
    pv = prod.int_vector()
    wv = witness.int_vector()
    from symbpow.linalg import in_span

    assert in_span(pv, [wv])  # equal up to a rational scalar


def test_certify_witness_rejects_insufficient_order(a25, a25_gens):
    with pytest.raises(WitnessRejection) as exc:
        certify_witness(parse("z^25"), a25["scheme"], a25_gens, 3, 2)
    assert exc.value.reason == "insufficient-order"
    assert exc.value.details["point"] == [0, 0, 1]


def test_certify_witness_rejects_generator_product(a25, a25_gens):
    fg = a25_gens.gens[0] * a25_gens.gens[1]
    with pytest.raises(WitnessRejection) as exc:
        certify_witness(fg, a25["scheme"], a25_gens, 3, 2)
    assert exc.value.reason == "in-power-span"


def test_certify_witness_rejects_zero(a25, a25_gens):
    with pytest.raises(WitnessRejection) as exc:
        certify_witness(HomogPoly.zero(3), a25["scheme"], a25_gens, 3, 2)
    assert exc.value.reason == "zero-polynomial"


def test_certify_witness_accepts_emitted_witness(a25, a25_gens):
    verdict = check_containment(a25["scheme"], a25_gens, 3, 2)
    cert = certify_witness(verdict.certificate.witness, a25["scheme"], a25_gens, 3, 2)
    assert cert.to_dict() == verdict.certificate.to_dict()


def test_reverse_containment_samples(a25, a25_gens):
    table = reverse_containment_check(a25_gens, a25["scheme"], 2, 2, (16, 17))
    assert table == {16: True, 17: True}
    table3 = reverse_containment_check(a25_gens, a25["scheme"], 3, 2, (16,))
    assert table3 == {16: False}


def test_reverse_containment_trivial():
    scheme = FatScheme(COORD_POINTS, 1)
    gens = minimal_generators(scheme, 4).generators
    assert reverse_containment_check(gens, scheme, 1, 1, (2, 3)) == {2: True, 3: True}


def test_els_spot_check_three_points(three_points):
    table = els_spot_check(three_points["scheme"], three_points["gens"], 1, (3, 4))
    assert table == {3: True, 4: True}


def test_els_spot_check_a25_r1(a25, a25_gens):
    table = els_spot_check(a25["scheme"], a25_gens, 1, (15, 16))
    assert table == {15: True, 16: True}


def test_graded_piece_polynomials_round_trip(a25):
    piece = symbolic_piece(a25["scheme"], 8)
    for g, v in zip(piece.polynomials(), piece.basis):
        assert g.int_vector() == list(v)


def test_verdict_serialization(three_points):
    verdict = check_containment(three_points["scheme"], three_points["gens"], 2, 2)
    d = verdict.to_dict()
    assert d["holds"] is False
    assert d["certificate"]["witness"] == "x*y*z"
    assert d["scan"][-1]["degree"] == 3
