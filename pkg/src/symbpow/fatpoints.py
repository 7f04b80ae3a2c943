"""Graded pieces of fat-point ideals and power-containment certification.

A fat-point scheme assigns a multiplicity to each support point.  The
degree-d piece of its ideal is the kernel of a conditions matrix: for a
point p with multiplicity m, a degree-d form F lies in the piece iff all
partial derivatives of F of total order below m vanish at p.  Because F is
homogeneous, it suffices to differentiate in the two coordinates other
than a fixed nonzero coordinate of p (the affine chart at p), which gives
exactly C(m+1, 2) rows per point instead of C(m+2, 3); the full-derivative
characterization lives, independently, in
:meth:`symbpow.polyring.HomogPoly.order_at` and is what certificates use.

Symbolic powers of the radical ideal of the support are realized by
scaling all multiplicities: in characteristic zero the m-th symbolic power
consists of the forms vanishing to order at least m at every point.
Ordinary powers are spans of r-fold products of a verified generating set
times monomials.  A containment verdict is degree-bounded when positive
and carries an exact two-part certificate when negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Callable, Iterable, Sequence

from .errors import GeneratorSetUnverifiedError, WitnessRejection
from .linalg import IntSpan, MatrixRecorder, kernel_of_int_rows, span_of
from .polyring import (
    HomogPoly,
    Monomial,
    monomial_index,
    monomials_of_degree,
    vector_length,
)
from .projgeom import ProjPoint

# Points in the plane have codimension 2; the uniform containment theorem
# guarantees I^(m) inside I^r whenever m >= 2r.
ELS_CODIMENSION = 2

Progress = Callable[[str], None] | None


@dataclass(frozen=True)
class FatScheme:
    """Finite set of points with multiplicities, sorted canonically."""

    points: tuple[ProjPoint, ...]
    multiplicities: tuple[int, ...]

    def __init__(self, points: Iterable[ProjPoint], multiplicities: Iterable[int] | int = 1):
        pts = tuple(points)
        mults = (
            (multiplicities,) * len(pts)
            if isinstance(multiplicities, int)
            else tuple(multiplicities)
        )
        if len(mults) != len(pts):
            raise ValueError("one multiplicity per point required")
        if len(set(pts)) != len(pts):
            raise ValueError("support points must be pairwise distinct")
        if not pts:
            raise ValueError("empty support")
        if any(m < 1 for m in mults):
            raise ValueError("multiplicities must be >= 1")
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        object.__setattr__(self, "points", tuple(pts[i] for i in order))
        object.__setattr__(self, "multiplicities", tuple(mults[i] for i in order))

    def scaled(self, m: int) -> "FatScheme":
        """Scheme with every multiplicity multiplied by ``m``."""
        return FatScheme(self.points, tuple(m * mi for mi in self.multiplicities))

    def conditions_count(self) -> int:
        return sum(comb(m + 1, 2) for m in self.multiplicities)

    def __len__(self):
        return len(self.points)


def _local_multi_indices(p: ProjPoint, m: int) -> list[Monomial]:
    """Derivative multi-indices of order < m in the chart coordinates at p.

    The chart variable is the first nonzero coordinate of p; indices run
    over the remaining two variables in graded-lex order, C(m+1, 2) in all.
    """
    pivot = next(i for i in range(3) if p.coords[i])
    others = [i for i in range(3) if i != pivot]
    out: list[Monomial] = []
    for total in range(m):
        for a in range(total, -1, -1):
            alpha = [0, 0, 0]
            alpha[others[0]] = a
            alpha[others[1]] = total - a
            out.append(tuple(alpha))
    return out


def _falling(n: int, k: int) -> int:
    f = 1
    for i in range(k):
        f *= n - i
    return f


def _derivative_row(p: ProjPoint, d: int, alpha: Monomial) -> list[int]:
    """Evaluations at p of the alpha-partial of every degree-d monomial."""
    a, b, c = alpha
    x, y, z = p.coords
    row = []
    for (i, j, k) in monomials_of_degree(d):
        if i < a or j < b or k < c:
            row.append(0)
        else:
            coef = _falling(i, a) * _falling(j, b) * _falling(k, c)
            row.append(coef * x ** (i - a) * y ** (j - b) * z ** (k - c))
    return row


def conditions_matrix(scheme: FatScheme, d: int) -> list[list[int]]:
    """Integer vanishing-conditions matrix for the degree-d piece.

    Rows are ordered point by point (points already canonical in the
    scheme) and, within a point, by graded-lex derivative multi-index, so
    the matrix is reproducible.
    """
    rows: list[list[int]] = []
    for p, m in zip(scheme.points, scheme.multiplicities):
        for alpha in _local_multi_indices(p, m):
            rows.append(_derivative_row(p, d, alpha))
    return rows


class GradedPiece:
    """Degree-d slice of an ideal: an exact basis plus membership queries."""

    def __init__(self, degree: int, basis: Sequence[Sequence[int]],
                 spanning_count: int | None = None):
        self.degree = degree
        self.basis = [list(v) for v in basis]
        self.spanning_count = spanning_count  # spanning-set size before reduction
        self.record_handle: dict | None = None
        self._span: IntSpan | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _ensure_span(self) -> IntSpan:
        if self._span is None:
            self._span = span_of(self.basis, vector_length(self.degree))
        return self._span

    def contains(self, vec: Sequence[int]) -> bool:
        if not self.basis:
            return all(v == 0 for v in vec)
        return self._ensure_span().contains(vec)

    def contains_poly(self, f: HomogPoly) -> bool:
        if f.is_zero():
            return True
        if f.degree != self.degree:
            return False
        return self.contains(f.int_vector())

    def polynomials(self) -> list[HomogPoly]:
        mons = monomials_of_degree(self.degree)
        return [
            HomogPoly(self.degree, {m: c for m, c in zip(mons, v) if c})
            for v in self.basis
        ]


def symbolic_piece(scheme: FatScheme, d: int,
                   recorder: MatrixRecorder | None = None) -> GradedPiece:
    """Degree-d piece of the fat-point ideal, as the conditions-matrix kernel."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    rows = conditions_matrix(scheme, d)
    ncols = vector_length(d)
    piece = GradedPiece(d, kernel_of_int_rows(rows, ncols))
    if recorder is not None:
        piece.record_handle = recorder.record(
            "conditions", rows, ncols,
            degree=d, points=len(scheme), conditions=len(rows))
    return piece


def initial_degree(scheme: FatScheme, recorder: MatrixRecorder | None = None) -> int:
    """Least degree with a nonzero ideal piece.

    Nonzero-ness is upward closed (multiply a nonzero member by a variable),
    so the scan runs downward from the first degree where the monomial count
    exceeds the number of conditions - there the piece is nonzero
    unconditionally - and stops at the first empty piece below.
    """
    rows = scheme.conditions_count()
    d = 0
    while vector_length(d) <= rows:
        d += 1
    while d > 0:
        piece = symbolic_piece(scheme, d - 1, recorder)
        if piece.dim == 0:
            return d
        d -= 1
    return 0


@dataclass(frozen=True)
class GeneratorSet:
    """Homogeneous generators, optionally verified against a scheme.

    ``verified_to`` is the largest degree through which the generated ideal
    was checked to agree slice-by-slice with the scheme's ideal; ``complete``
    records that every checked slice agreed.
    """

    gens: tuple[HomogPoly, ...]
    scheme: FatScheme | None = None
    verified_to: int | None = None
    complete: bool = False

    @classmethod
    def from_polys(cls, polys: Iterable[HomogPoly]) -> "GeneratorSet":
        return cls(tuple(polys))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.gens)

    def max_degree(self) -> int:
        return max(self.degrees) if self.gens else 0

    def __len__(self):
        return len(self.gens)


def _sparse_int_terms(f: HomogPoly) -> list[tuple[Monomial, int]]:
    """Terms of ``f`` scaled to integers and stripped to primitive content."""
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = [(m, int(c * den)) for m, c in f.terms.items()]
    g = 0
    for _, c in terms:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        terms = [(m, c // g) for m, c in terms]
    return terms


def ordinary_power_piece(gens: GeneratorSet, r: int, d: int,
                         recorder: MatrixRecorder | None = None) -> GradedPiece:
    """Degree-d slice of the r-th power of the ideal generated by ``gens``.

    Spans all products of r generators (with repetition) times the
    monomials filling the degree up to d; the returned basis is the echelon
    of that spanning set.  Empty when every product already exceeds d.
    """
    if r < 1:
        raise ValueError("power must be >= 1")
    ncols = vector_length(d)
    idx = monomial_index(d)
    spanning: list[list[int]] = []
    for combo in combinations_with_replacement(gens.gens, r):
        prod = combo[0]
        for g in combo[1:]:
            prod = prod * g
        rest = d - prod.degree
        if rest < 0 or prod.is_zero():
            continue
        terms = _sparse_int_terms(prod)
        for mu in monomials_of_degree(rest):
            vec = [0] * ncols
            for (i, j, k), c in terms:
                vec[idx[(i + mu[0], j + mu[1], k + mu[2])]] = c
            spanning.append(vec)
    span = span_of(spanning, ncols)
    piece = GradedPiece(d, span.basis(), spanning_count=len(spanning))
    if recorder is not None:
        piece.record_handle = recorder.record(
            "power-span", spanning, ncols, degree=d, power=r,
            spanning=len(spanning))
    return piece


def _shifted_by_variables(basis: Sequence[Sequence[int]], d_from: int,
                          span: IntSpan) -> None:
    """Insert x*v, y*v, z*v for every degree-``d_from`` basis vector v."""
    idx = monomial_index(d_from + 1)
    mons = monomials_of_degree(d_from)
    ncols = vector_length(d_from + 1)
    for v in basis:
        for shift in range(3):
            vec = [0] * ncols
            for mon, c in zip(mons, v):
                if c:
                    mm = list(mon)
                    mm[shift] += 1
                    vec[idx[tuple(mm)]] = c
            span.insert(vec)


@dataclass(frozen=True)
class AgreementRow:
    """One degree of the generated-ideal vs vanishing-ideal comparison."""

    degree: int
    ideal_dim: int
    symbolic_dim: int

    @property
    def equal(self) -> bool:
        return self.ideal_dim == self.symbolic_dim


@dataclass(frozen=True)
class GeneratorExtraction:
    generators: GeneratorSet
    agreement: tuple[AgreementRow, ...]

    def all_equal(self) -> bool:
        return all(row.equal for row in self.agreement)


def minimal_generators(scheme: FatScheme, degree_cap: int,
                       progress: Progress = None,
                       recorder: MatrixRecorder | None = None) -> GeneratorExtraction:
    """Extract minimal generators of the scheme's ideal up to ``degree_cap``.

    Ascending in degree, the new generators at degree d are a basis
    extension of the ideal piece beyond (linear forms) x (piece at d-1).
    The returned agreement table compares, for every degree through the
    cap, the slice of the ideal generated so far with the full piece; the
    two agree at every degree exactly when the extracted set generates the
    ideal through the cap.
    """
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    alpha = initial_degree(scheme, recorder)
    gens: list[HomogPoly] = []
    agreement: list[AgreementRow] = []
    # Below the initial degree both slices are zero: emptiness at alpha - 1
    # was verified by the scan and propagates downward.
    for d in range(0, min(alpha, degree_cap + 1)):
        agreement.append(AgreementRow(d, 0, 0))
    ideal_prev: list[list[int]] | None = None
    for d in range(alpha, degree_cap + 1):
        piece = symbolic_piece(scheme, d, recorder)
        span = IntSpan(vector_length(d))
        if ideal_prev:
            _shifted_by_variables(ideal_prev, d - 1, span)
        new_here = 0
        mons = monomials_of_degree(d)
        for v in piece.basis:
            if span.insert(v):
                new_here += 1
                gens.append(HomogPoly(d, {m: c for m, c in zip(mons, v) if c}))
        agreement.append(AgreementRow(d, span.rank, piece.dim))
        ideal_prev = span.basis()
        if progress:
            progress(
                f"degree {d}: piece dim {piece.dim}, ideal dim {span.rank}, "
                f"new generators {new_here}"
            )
    complete = all(row.equal for row in agreement)
    gset = GeneratorSet(tuple(gens), scheme=scheme, verified_to=degree_cap,
                        complete=complete)
    return GeneratorExtraction(gset, tuple(agreement))


# ---------------------------------------------------------------------------
# Certificates and verdicts.


@dataclass(frozen=True)
class PointOrder:
    point: ProjPoint
    required: int
    actual: int

    def to_dict(self) -> dict:
        return {"point": list(self.point.coords), "required": self.required,
                "actual": self.actual}


@dataclass(frozen=True)
class WitnessCertificate:
    """Exact two-part certificate that one form separates I^(m) from I^r.

    The symbolic half lists the vanishing order at every support point
    (computed by iterated derivatives in all three variables, independently
    of the conditions matrices).  The power half gives the spanning-set
    size of the degree slice of I^r together with its rank and the rank
    after adjoining the witness; non-membership is the rank increase.
    """

    m: int
    r: int
    witness: HomogPoly
    point_orders: tuple[PointOrder, ...]
    power_spanning_size: int
    power_rank: int
    adjoined_rank: int
    generator_degrees: tuple[int, ...]
    generators_verified_to: int | None

    @property
    def witness_degree(self) -> int:
        return self.witness.degree

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "witness": str(self.witness),
            "witness_degree": self.witness_degree,
            "point_orders": [po.to_dict() for po in self.point_orders],
            "power_spanning_size": self.power_spanning_size,
            "power_rank": self.power_rank,
            "adjoined_rank": self.adjoined_rank,
            "generator_degrees": list(self.generator_degrees),
            "generators_verified_to": self.generators_verified_to,
        }


@dataclass(frozen=True)
class ScanRow:
    degree: int
    symbolic_dim: int
    new_generators: int
    contained: bool


@dataclass(frozen=True)
class ContainmentVerdict:
    """Outcome of a symbolic-vs-ordinary containment check.

    A negative verdict is unconditional: it embeds a witness certificate.
    A positive verdict only covers minimal generators of the symbolic
    power up to ``degree_cap``.
    """

    holds: bool
    m: int
    r: int
    degree_cap: int
    scan: tuple[ScanRow, ...]
    certificate: WitnessCertificate | None = None

    def to_dict(self) -> dict:
        out = {
            "holds": self.holds,
            "m": self.m,
            "r": self.r,
            "degree_cap": self.degree_cap,
            "scan": [
                {"degree": s.degree, "symbolic_dim": s.symbolic_dim,
                 "new_generators": s.new_generators, "contained": s.contained}
                for s in self.scan
            ],
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def _require_verified(gens: GeneratorSet, scheme: FatScheme, cap: int) -> None:
    if gens.scheme != scheme or not gens.complete or (gens.verified_to or -1) < cap:
        raise GeneratorSetUnverifiedError(
            "generating set not verified to generate the ideal degree-wise up to "
            f"degree {cap}; extract it with minimal_generators over the same scheme"
        )


def certify_witness(witness: HomogPoly, scheme: FatScheme, gens: GeneratorSet,
                    m: int, r: int,
                    recorder: MatrixRecorder | None = None) -> WitnessCertificate:
    """Certify that ``witness`` lies in I^(m) but outside the slice of I^r.

    Raises :class:`WitnessRejection` at the first failed condition: a point
    where the vanishing order falls short of m times its multiplicity, or
    membership of the witness in the degree slice of I^r.
    """
    if witness.is_zero():
        raise WitnessRejection("zero-polynomial", "the zero polynomial certifies nothing")
    orders: list[PointOrder] = []
    for p, mult in zip(scheme.points, scheme.multiplicities):
        required = m * mult
        actual = witness.order_at(p)
        orders.append(PointOrder(p, required, actual))
        if actual < required:
            raise WitnessRejection(
                "insufficient-order",
                f"vanishing order {actual} < required {required} at {p}",
                {"point": list(p.coords), "required": required, "actual": actual},
            )
    power = ordinary_power_piece(gens, r, witness.degree, recorder)
    wvec = witness.int_vector()
    inside = power.contains(wvec)
    if recorder is not None:
        recorder.record_membership(power.record_handle, wvec, inside)
    if inside:
        raise WitnessRejection(
            "in-power-span",
            f"witness lies in the degree-{witness.degree} slice of the power ideal "
            f"(rank stays {power.dim} after adjoining it)",
            {"power_rank": power.dim, "degree": witness.degree},
        )
    return WitnessCertificate(
        m=m,
        r=r,
        witness=witness,
        point_orders=tuple(orders),
        power_spanning_size=power.spanning_count or 0,
        power_rank=power.dim,
        adjoined_rank=power.dim + 1,
        generator_degrees=gens.degrees,
        generators_verified_to=gens.verified_to,
    )


def check_containment(scheme: FatScheme, gens: GeneratorSet, m: int, r: int,
                      degree_cap: int | None = None,
                      progress: Progress = None,
                      recorder: MatrixRecorder | None = None) -> ContainmentVerdict:
    """Decide I^(m) inside I^r for the scheme's ideal, up to a degree cap.

    Walks the minimal generators of the m-th symbolic power in ascending
    degree and tests each against the matching slice of I^r.  The first
    generator outside yields an unconditional FAILS verdict with its full
    certificate; if none fails, HOLDS is reported for the cap.  The default
    cap is m times the largest generator degree plus 2 (a heuristic margin,
    not a completeness bound).

    Requires ``gens`` to be verified (via :func:`minimal_generators`)
    against the same scheme through the cap.
    """
    if m < 1 or r < 1:
        raise ValueError("m and r must be >= 1")
    if degree_cap is None:
        degree_cap = m * gens.max_degree() + 2
    _require_verified(gens, scheme, degree_cap)
    scaled = scheme.scaled(m)
    scan: list[ScanRow] = []
    alpha = initial_degree(scaled, recorder)
    prev_basis: list[list[int]] | None = None
    for d in range(alpha, degree_cap + 1):
        piece = symbolic_piece(scaled, d, recorder)
        span = IntSpan(vector_length(d))
        if prev_basis:
            _shifted_by_variables(prev_basis, d - 1, span)
        new_gens: list[list[int]] = []
        for v in piece.basis:
            if span.insert(v):
                new_gens.append(v)
        if progress:
            progress(f"degree {d}: symbolic dim {piece.dim}, new generators {len(new_gens)}")
        if new_gens:
            power = ordinary_power_piece(gens, r, d, recorder)
            mons = monomials_of_degree(d)
            for v in new_gens:
                inside = power.contains(v)
                if recorder is not None:
                    recorder.record_membership(power.record_handle, v, inside)
                if not inside:
                    wpoly = HomogPoly(d, {mo: c for mo, c in zip(mons, v) if c})
                    cert = certify_witness(wpoly, scheme, gens, m, r, recorder)
                    scan.append(ScanRow(d, piece.dim, len(new_gens), False))
                    return ContainmentVerdict(False, m, r, degree_cap, tuple(scan), cert)
        scan.append(ScanRow(d, piece.dim, len(new_gens), True))
        prev_basis = piece.basis
    return ContainmentVerdict(True, m, r, degree_cap, tuple(scan))


def reverse_containment_check(gens: GeneratorSet, scheme: FatScheme, m: int, r: int,
                              degrees: Sequence[int],
                              recorder: MatrixRecorder | None = None) -> dict[int, bool]:
    """Slice-wise test of I^r inside I^(m): True per degree iff included.

    Inclusion of a span inside a conditions-matrix kernel is decided by
    annihilation: every basis vector of the power slice must be killed by
    every condition row.
    """
    results: dict[int, bool] = {}
    scaled = scheme.scaled(m)
    for d in degrees:
        power = ordinary_power_piece(gens, r, d, recorder)
        rows = conditions_matrix(scaled, d)
        if recorder is not None:
            recorder.record("conditions", rows, vector_length(d),
                            degree=d, points=len(scaled), conditions=len(rows))
        ok = True
        for v in power.basis:
            for row in rows:
                if sum(a * b for a, b in zip(row, v)) != 0:
                    ok = False
                    break
            if not ok:
                break
        results[d] = ok
    return results


def els_spot_check(scheme: FatScheme, gens: GeneratorSet, r: int,
                   degrees: Sequence[int],
                   recorder: MatrixRecorder | None = None,
                   progress: Progress = None) -> dict[int, bool]:
    """Sampled slices of the uniform containment I^(er) inside I^r, e = 2.

    True at degree d iff the degree-d piece of I^(2r) lies inside the
    degree-d slice of I^r.  This samples the containment at the given
    degrees; it does not prove the full ideal containment.
    """
    m = ELS_CODIMENSION * r
    scaled = scheme.scaled(m)
    results: dict[int, bool] = {}
    for d in degrees:
        if progress:
            progress(f"sampling degree {d} (multiplicities x{m})")
        piece = symbolic_piece(scaled, d, recorder)
        power = ordinary_power_piece(gens, r, d, recorder)
        ok = True
        for v in piece.basis:
            inside = power.contains(v)
            if recorder is not None:
                recorder.record_membership(power.record_handle, v, inside)
            if not inside:
                ok = False
                break
        results[d] = ok
    return results
