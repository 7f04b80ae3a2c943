"""Command-line front end and report emitter.

Four subcommands: ``census``, ``generators``, ``certify``, ``selftest``.
Reports go to stdout, either as human-readable text or (with ``--json``)
as a single JSON document; certificates are embedded in full in both
forms, so any emitted witness can be pasted back in via ``--witness``.
Progress and phase timings go to stderr only, keeping stdout byte-identical
across runs on identical inputs.

Exit codes: 0 on success (and verdict match when ``--expect`` is given),
1 on a verdict mismatch, 2 on input errors, 3 on internal invariant
violations.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations
from math import comb
from pathlib import Path

from . import catalog, fatpoints, linalg, polyring, projgeom
from .errors import (
    InputDataError,
    InternalCheckError,
    SymbpowError,
    UnknownEntryError,
    WitnessRejection,
)

LINES_PRODUCT = "__lines-product__"


# ---------------------------------------------------------------------------
# Helpers.


class _Phases:
    """Wall-clock phase timer; reports to stderr only."""

    def __init__(self):
        self.entries: list[tuple[str, float]] = []
        self._t0 = time.perf_counter()

    def done(self, name: str):
        t = time.perf_counter()
        self.entries.append((name, t - self._t0))
        self._t0 = t

    def emit(self):
        for name, dt in self.entries:
            print(f"timing: {name} = {dt:.3f}s", file=sys.stderr)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _resolve_source(source: str) -> catalog.CatalogEntry:
    if source in catalog.BUILTIN_NAMES:
        return catalog.builtin(source)
    if Path(source).exists():
        return catalog.load_arrangement(source)
    raise UnknownEntryError(
        f"{source!r} is neither a builtin ({', '.join(catalog.BUILTIN_NAMES)}) "
        "nor an existing file"
    )


def _support_scheme(entry: catalog.CatalogEntry,
                    cens: projgeom.Census) -> fatpoints.FatScheme:
    pts = [p for p, m in cens.points if m >= entry.support_threshold]
    return fatpoints.FatScheme(pts, 1)


def _render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return _render_text(report)


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in report["inputs"].items():
        lines.append(f"{k}: {v}")
    lines.append(f"engine: {report['engine']}")
    lines.append("")
    _render_block(report["results"], lines, indent="")
    return "\n".join(lines) + "\n"


def _render_block(obj, lines: list[str], indent: str):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{indent}{k}:")
                _render_block(v, lines, indent + "  ")
            else:
                lines.append(f"{indent}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                _render_block(item, lines, indent)
                lines.append("")
            else:
                lines.append(f"{indent}{_flat(item)}")
    else:
        lines.append(f"{indent}{_flat(obj)}")


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _maybe_validate_modular(engine: str, recorder: linalg.MatrixRecorder) -> str:
    """Run the modular cross-check over recorded matrices when requested."""
    if engine != "modular":
        return "exact"
    for entry in recorder.matrices:
        rows, ncols = entry["rows"], entry["ncols"]
        span = linalg.span_of(rows, ncols)
        linalg.validate_modular(rows, ncols, span.rank, span.pivots())
        for q in entry["memberships"]:
            expect = q["answer"]
            for p in linalg.MODULAR_PRIMES[:1]:
                rk, _ = linalg.modular_rank_pivots(rows, ncols, p)
                if rk != span.rank:
                    continue  # unlucky prime for this matrix
                rk2, _ = linalg.modular_rank_pivots(rows + [q["query"]], ncols, p)
                modular_in = rk2 == rk
                if expect and not modular_in:
                    raise linalg.EngineDisagreementError(
                        f"membership true exactly but false mod {p}")
    return "exact+modular-verified"


# ---------------------------------------------------------------------------
# census


def cmd_census(args) -> tuple[dict, int]:
    phases = _Phases()
    entry = _resolve_source(args.source)
    arr = entry.arrangement()
    cens = projgeom.census(arr)
    phases.done("census")
    triple_plus = projgeom.points_of_multiplicity_at_least(cens, 3)
    results = {
        "lines": len(arr),
        "total_points": cens.total,
        "t_vector": {str(k): v for k, v in cens.t_vector.items()},
        "triple_plus_count": len(triple_plus),
        "triple_plus_at_infinity": sum(1 for p in triple_plus if p.at_infinity()),
        "triple_plus_points": [str(p) for p in triple_plus],
        "pair_count_identity": {
            "sum_over_points": sum(comb(m, 2) for _, m in cens.points),
            "line_pairs": comb(len(arr), 2),
        },
    }
    exp = entry.expected
    if exp is not None and exp.total_points is not None:
        results["expected"] = {
            "total_points_match": cens.total == exp.total_points,
            "triple_plus_count_match": len(triple_plus) == exp.triple_plus_count,
            "point_set_match": (
                tuple(sorted(triple_plus)) == exp.points
                if entry.support_threshold == 3 else None
            ),
        }
    recorder = linalg.MatrixRecorder()
    engine = _maybe_validate_modular(args.engine, recorder)
    report = {
        "command": "census",
        "inputs": {"source": args.source},
        "engine": engine,
        "results": results,
    }
    phases.emit()
    return report, 0


# ---------------------------------------------------------------------------
# generators


def _extract_generators(entry, scheme, cap, recorder):
    extraction = fatpoints.minimal_generators(
        scheme, cap, progress=_progress, recorder=recorder)
    return extraction


def _expected_generator_report(entry, scheme, extraction, recorder):
    """Verify recorded reference generators against the recomputed ideal."""
    exp = entry.expected
    if exp is None or not exp.generator_texts:
        return None
    refs = exp.generators()
    per_gen = []
    pieces: dict[int, fatpoints.GradedPiece] = {}
    all_vanish = True
    all_inside = True
    for text, poly in zip(exp.generator_texts, refs):
        bad = next(
            (p for p in scheme.points if poly.evaluate(p) != 0), None)
        vanishes = bad is None
        piece = pieces.get(poly.degree)
        if piece is None:
            piece = fatpoints.symbolic_piece(scheme, poly.degree, recorder)
            pieces[poly.degree] = piece
        inside = vanishes and piece.contains_poly(poly)
        all_vanish &= vanishes
        all_inside &= inside
        record = {
            "degree": poly.degree,
            "vanishes_at_all_support_points": vanishes,
            "in_recomputed_piece": inside,
        }
        if bad is not None:
            record["first_non_vanishing_point"] = str(bad)
        per_gen.append(record)
    spans_match = False
    if all_inside:
        degrees = {g.degree for g in refs}
        if len(degrees) == 1:
            d = degrees.pop()
            ref_vecs = [g.int_vector() for g in refs]
            span = linalg.span_of(ref_vecs, polyring.vector_length(d))
            computed = [g for g in extraction.generators.gens if g.degree == d]
            spans_match = (
                span.rank == len(refs)
                and all(span.contains(g.int_vector()) for g in computed)
                and len(computed) == len(refs)
            )
    return {
        "reference_generators": per_gen,
        "all_vanish": all_vanish,
        "span_equality_with_computed": spans_match,
    }


def cmd_generators(args) -> tuple[dict, int]:
    phases = _Phases()
    recorder = linalg.MatrixRecorder()
    entry = _resolve_source(args.source)
    cens = projgeom.census(entry.arrangement())
    scheme = _support_scheme(entry, cens)
    phases.done("census")
    extraction = _extract_generators(entry, scheme, args.cap, recorder)
    phases.done("generators")
    gens = extraction.generators
    results = {
        "support_points": len(scheme),
        "support_threshold": entry.support_threshold,
        "degree_cap": args.cap,
        "generator_count": len(gens),
        "generator_degrees": list(gens.degrees),
        "generators": [str(g) for g in gens.gens],
        "agreement": [
            {"degree": row.degree, "ideal_dim": row.ideal_dim,
             "symbolic_dim": row.symbolic_dim, "equal": row.equal}
            for row in extraction.agreement
        ],
        "generates_ideal_up_to_cap": extraction.all_equal(),
    }
    expected = _expected_generator_report(entry, scheme, extraction, recorder)
    if expected is not None:
        results["expected_data"] = expected
    engine = _maybe_validate_modular(args.engine, recorder)
    phases.done("validation")
    report = {
        "command": "generators",
        "inputs": {"source": args.source, "cap": args.cap},
        "engine": engine,
        "results": results,
    }
    phases.emit()
    return report, 0


# ---------------------------------------------------------------------------
# certify


def _load_witness(spec_text: str, entry: catalog.CatalogEntry) -> polyring.HomogPoly:
    if spec_text == LINES_PRODUCT:
        return entry.line_product()
    p = Path(spec_text)
    if p.exists() and p.is_file():
        spec_text = p.read_text(encoding="utf-8").strip()
    return polyring.parse(spec_text)


def cmd_certify(args) -> tuple[dict, int]:
    phases = _Phases()
    recorder = linalg.MatrixRecorder()
    entry = _resolve_source(args.source)
    cens = projgeom.census(entry.arrangement())
    scheme = _support_scheme(entry, cens)
    phases.done("census")

    if args.witness is not None and args.degrees:
        raise InputDataError("--witness and --degrees are mutually exclusive")

    witness = None
    if args.witness is not None:
        witness = _load_witness(args.witness, entry)

    degrees = None
    if args.degrees:
        try:
            degrees = sorted({int(t) for t in args.degrees.split(",") if t.strip()})
        except ValueError:
            raise InputDataError(f"--degrees expects comma-separated integers, got {args.degrees!r}")

    # Generator extraction must be verified through every degree the run
    # will touch; start from a small cap and re-extract if the target grows.
    probe_cap = fatpoints.initial_degree(scheme) + 4
    extraction = fatpoints.minimal_generators(
        scheme, probe_cap, progress=_progress, recorder=recorder)
    maxdeg = extraction.generators.max_degree()
    if args.cap is not None:
        cap = args.cap
    else:
        cap = args.m * maxdeg + 2
    needed = cap
    if witness is not None:
        needed = max(needed, witness.degree)
    if degrees:
        needed = max(needed, max(degrees))
    if needed > probe_cap:
        extraction = fatpoints.minimal_generators(
            scheme, needed, progress=_progress, recorder=recorder)
    gens = extraction.generators
    phases.done("generators")

    inputs = {"source": args.source, "m": args.m, "r": args.r, "cap": cap}
    results: dict = {
        "support_points": len(scheme),
        "generator_degrees": list(gens.degrees),
        "generators_verified_to": gens.verified_to,
        "generated_ideal_complete": gens.complete,
    }

    if degrees is not None:
        inputs["degrees"] = degrees
        table = fatpoints.reverse_containment_check(
            gens, scheme, args.m, args.r, degrees, recorder=recorder)
        results["mode"] = "reverse-sample"
        results["reverse_inclusions"] = {str(d): table[d] for d in degrees}
        verdict = "holds" if all(table.values()) else "fails"
        results["verdict"] = verdict
    elif witness is not None:
        inputs["witness_degree"] = witness.degree
        results["mode"] = "witness-certify"
        try:
            cert = fatpoints.certify_witness(
                witness, scheme, gens, args.m, args.r, recorder=recorder)
            results["verdict"] = "fails"
            results["certificate"] = cert.to_dict()
        except WitnessRejection as rej:
            results["verdict"] = "witness-rejected"
            results["rejection"] = {
                "reason": rej.reason,
                "message": str(rej),
                "details": rej.details,
            }
    else:
        results["mode"] = "containment-scan"
        verdict = fatpoints.check_containment(
            scheme, gens, args.m, args.r, degree_cap=cap,
            progress=_progress, recorder=recorder)
        results["verdict"] = "fails" if not verdict.holds else "holds"
        results["scan"] = verdict.to_dict()["scan"]
        if verdict.certificate is not None:
            results["certificate"] = verdict.certificate.to_dict()
        else:
            results["holds_up_to_degree"] = verdict.degree_cap
    phases.done("certify")

    engine = _maybe_validate_modular(args.engine, recorder)
    report = {
        "command": "certify",
        "inputs": inputs,
        "engine": engine,
        "results": results,
    }
    exit_code = 0
    if args.expect is not None and results["verdict"] != args.expect:
        exit_code = 1
    phases.emit()
    return report, exit_code


# ---------------------------------------------------------------------------
# selftest


def _random_arrangement(rng: random.Random) -> projgeom.Arrangement:
    while True:
        n = rng.randint(3, 8)
        lines = []
        seen = set()
        for _ in range(n):
            while True:
                triple = tuple(rng.randint(-5, 5) for _ in range(3))
                if triple == (0, 0, 0):
                    continue
                ln = projgeom.ProjLine(*triple)
                if ln.coeffs not in seen:
                    seen.add(ln.coeffs)
                    lines.append(ln)
                    break
        try:
            return projgeom.Arrangement(lines)
        except SymbpowError:
            continue


def _random_int_matrix(rng: random.Random, n: int) -> list[list[int]]:
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]


def cmd_selftest(args) -> tuple[dict, int]:
    phases = _Phases()
    recorder = linalg.MatrixRecorder()
    rng = random.Random(20250809)
    properties: list[dict] = []

    def prop(name: str, passed: bool, **details):
        properties.append({"name": name, "passed": bool(passed), **details})
        _progress(f"selftest: {name}: {'pass' if passed else 'FAIL'}")

    # Pair-count identity on random arrangements (census checks it internally).
    ok = True
    checked = 0
    for _ in range(100):
        arr = _random_arrangement(rng)
        cens = projgeom.census(arr)
        lhs = sum(comb(m, 2) for _, m in cens.points)
        ok &= lhs == comb(len(arr), 2)
        checked += 1
    prop("pair-count-identity", ok, arrangements=checked)
    phases.done("pair-count")

    # Engine equivalence: canonical RREF equality on random integer matrices.
    ok = True
    for _ in range(100):
        m = linalg.RatMatrix(_random_int_matrix(rng, 8))
        a = linalg.rref(m)
        b = linalg.rref_fraction_free(m)
        ok &= a.pivots == b.pivots and a.matrix == b.matrix
    entry = catalog.builtin("A25-2")
    cens = projgeom.census(entry.arrangement())
    scheme = _support_scheme(entry, cens)
    rows8 = fatpoints.conditions_matrix(scheme, 8)
    recorder.record("conditions", rows8, polyring.vector_length(8), degree=8)
    nav = linalg.naive_rank_pivots(rows8, polyring.vector_length(8))
    ff = linalg.span_of(rows8, polyring.vector_length(8))
    ok &= nav == (ff.rank, ff.pivots())
    prop("engine-agreement", ok, random_matrices=100)
    phases.done("engines")

    # Vanishing-order additivity on products of arrangement lines.
    ok = True
    pts = [p for p, _ in cens.points]
    for _ in range(25):
        l1, l2 = rng.sample(list(entry.lines), 2)
        f = polyring.HomogPoly.linear_form(*l1.coeffs)
        g = polyring.HomogPoly.linear_form(*l2.coeffs)
        p = rng.choice(pts)
        ok &= (f * g).order_at(p) == f.order_at(p) + g.order_at(p)
    prop("order-additivity", ok, samples=25)
    phases.done("orders")

    # Containment spot checks guaranteed by the uniform theorem (e = 2).
    tri = catalog.builtin("three-coordinate-points")
    tri_cens = projgeom.census(tri.arrangement())
    tri_scheme = _support_scheme(tri, tri_cens)
    tri_gens = fatpoints.minimal_generators(tri_scheme, 6, recorder=recorder).generators
    els_tri = fatpoints.els_spot_check(tri_scheme, tri_gens, 1, (3, 4), recorder=recorder)
    gens = fatpoints.minimal_generators(scheme, 16, recorder=recorder).generators
    els_z = fatpoints.els_spot_check(scheme, gens, 1, (15, 16), recorder=recorder)
    prop("els-spot-check", all(els_tri.values()) and all(els_z.values()),
         sampled={"three-coordinate-points(r=1)": els_tri, "A25-2(r=1)": els_z})
    phases.done("els")

    # Reverse containment sanity: I^r inside I^(m) iff m <= r, sampled.
    rev1 = fatpoints.reverse_containment_check(gens, scheme, 1, 1, (8, 9), recorder=recorder)
    rev2 = fatpoints.reverse_containment_check(gens, scheme, 2, 2, (16,), recorder=recorder)
    rev3 = fatpoints.reverse_containment_check(gens, scheme, 3, 2, (16,), recorder=recorder)
    prop("reverse-containment-sanity",
         all(rev1.values()) and all(rev2.values()) and not any(rev3.values()),
         sampled={"m=1,r=1": rev1, "m=2,r=2": rev2, "m=3,r=2": rev3})
    phases.done("reverse")

    # Incidence invariants over all line pairs of the builtin arrangement.
    ok = True
    for l1, l2 in combinations(entry.lines, 2):
        p = projgeom.intersect(l1, l2)
        ok &= p == projgeom.intersect(l2, l1)
        ok &= projgeom.incident(p, l1) and projgeom.incident(p, l2)
    prop("incidence-invariants", ok, pairs=comb(len(entry.lines), 2))

    # Census reproduction against the recorded expected data.
    triple_plus = projgeom.points_of_multiplicity_at_least(cens, 3)
    exp = entry.expected
    prop("census-reproduction",
         cens.total == exp.total_points
         and len(triple_plus) == exp.triple_plus_count
         and tuple(sorted(triple_plus)) == exp.points,
         total=cens.total, triple_plus=len(triple_plus))

    # Generator extraction shape: three octics generating through the cap.
    extraction = fatpoints.minimal_generators(scheme, 12, recorder=recorder)
    prop("generator-extraction",
         extraction.generators.degrees == (8, 8, 8) and extraction.all_equal(),
         degrees=list(extraction.generators.degrees))
    phases.done("generators")

    try:
        engine = _maybe_validate_modular(args.engine, recorder)
        if args.engine == "modular":
            prop("modular-validation", True, matrices=len(recorder.matrices))
    except InternalCheckError as exc:
        prop("modular-validation", False, error=str(exc))
        engine = "exact"
    phases.done("validation")

    all_pass = all(p["passed"] for p in properties)
    report = {
        "command": "selftest",
        "inputs": {},
        "engine": engine,
        "results": {"properties": properties, "all_passed": all_pass},
    }
    phases.emit()
    return report, 0 if all_pass else 3


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symbpow",
        description=(
            "Exact analysis of rational line arrangements: census of "
            "intersection points, minimal generators of the ideal of the "
            "triple-or-higher points, and certified containment checks "
            "between symbolic and ordinary powers of that ideal."
        ),
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
        p.add_argument("--engine", choices=("exact", "modular"), default="exact",
                       help="'modular' re-validates every exact answer modulo "
                            "word-sized primes")

    p = sub.add_parser("census", help="intersection points and multiplicities")
    p.add_argument("source", help="builtin name or arrangement file")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("generators", help="minimal generators of the support ideal")
    p.add_argument("source")
    p.add_argument("--cap", type=int, default=12, help="degree cap (default 12)")
    common(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("certify", help="containment verdicts and witness certificates")
    p.add_argument("source")
    p.add_argument("-m", type=int, required=True, help="symbolic power")
    p.add_argument("-r", type=int, required=True, help="ordinary power")
    p.add_argument("--cap", type=int, default=None,
                   help="degree cap (default: m * max generator degree + 2)")
    p.add_argument("--witness", nargs="?", const=LINES_PRODUCT, default=None,
                   metavar="EXPR|FILE",
                   help="certify this witness instead of scanning; bare --witness "
                        "uses the product of all arrangement lines")
    p.add_argument("--degrees", default=None,
                   help="comma-separated degrees: sample the reverse containment "
                        "(ordinary power slice inside symbolic power slice)")
    p.add_argument("--expect", choices=("holds", "fails"), default=None,
                   help="exit 1 unless the verdict matches")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("selftest", help="run the invariant suite")
    common(p)
    p.set_defaults(func=cmd_selftest)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except InputDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3
    except SymbpowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(report, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
