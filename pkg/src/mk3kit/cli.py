"""Command-line front end.

Every subcommand emits a single JSON document (survey emits CSV) on stdout or
to --out.  Integers are serialized as decimal strings so arbitrary-precision
values survive any JSON consumer, and output is key-sorted so identical runs
are byte-identical.  Exit codes: 0 success, 1 negative verdict under
--strict, 2 usage error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import brauer, cohomology, counting, lattice, localsolve, rational, zeta
from .forms import FamilyParams, Mk3Form, TriprojPoint, expand_family, is_nondegenerate, is_smooth_mod_p

SCHEMA_VERSION = 1
SLOW_LEVELS = 6  # extension degrees >= this require --slow

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_COMPUTE = 3


class UsageError(ValueError):
    pass


def _encode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _emit(payload: dict, out_path: str | None) -> None:
    payload = {"schema": SCHEMA_VERSION, **_encode(payload)}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_ints(raw: str, expected: int, what: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(tok) for tok in raw.split(","))
    except ValueError as exc:
        raise UsageError(f"--{what}: expected comma-separated integers") from exc
    if len(parts) != expected:
        raise UsageError(f"--{what}: expected {expected} integers, got {len(parts)}")
    return parts


def _form_from_args(args) -> Mk3Form:
    if getattr(args, "family", None) and getattr(args, "coeffs", None):
        raise UsageError("give either --family or --coeffs, not both")
    if getattr(args, "family", None):
        A, m, C, k = _parse_ints(args.family, 4, "family")
        return expand_family(FamilyParams(A, m, C, k))
    if getattr(args, "coeffs", None):
        return Mk3Form(*_parse_ints(args.coeffs, 5, "coeffs"))
    raise UsageError("one of --family A,m,C,k or --coeffs a,b,c,d,e is required")


def _add_form_flags(sub):
    sub.add_argument("--family", help="A,m,C,k of the product family")
    sub.add_argument("--coeffs", help="a,b,c,d,e of the symmetric form")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mk3", description=__doc__)
    parser.add_argument("--strict", action="store_true",
                        help="exit 1 on negative verdicts")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("smooth", help="exhaustive smoothness of the reduction mod p")
    _add_form_flags(s)
    s.add_argument("--p", type=int, required=True)

    s = subs.add_parser("nondegen", help="non-degeneracy of the form")
    _add_form_flags(s)

    s = subs.add_parser("count", help="count points over F_{p^n}")
    _add_form_flags(s)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--symmetry", action="store_true", help="orbit-reduced sweep")
    s.add_argument("--resume", help="checkpoint state file")
    s.add_argument("--slow", action="store_true",
                   help=f"allow n >= {SLOW_LEVELS} (multi-hour)")

    s = subs.add_parser("zeta", help="Frobenius characteristic polynomial from counts")
    s.add_argument("--p", type=int, default=7)
    s.add_argument("--counts", help="comma-separated point counts N_1,N_2,...")
    s.add_argument("--counts-file", help="JSON file with {'p':..., 'counts':[...]}")

    s = subs.add_parser("picard-bound", help="upper bound for the geometric Picard number")
    s.add_argument("--p", type=int, default=7)
    s.add_argument("--counts", help="comma-separated point counts")
    s.add_argument("--counts-file")

    s = subs.add_parser("lattice", help="Gram matrices, determinants, half classes")
    s.add_argument("--which", choices=["S", "Sprime"], default="S")
    s.add_argument("--gram-file", help="plain text matrix file")

    s = subs.add_parser("h1", help="Tate cohomology of a lattice involution")
    s.add_argument("--builtin", choices=["picW-S", "picW-Sprime", "picU"])
    s.add_argument("--sigma-file", help="plain text matrix file with the involution")

    s = subs.add_parser("local", help="adelic solvability certificates for the family member")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--factor-bound", type=int, default=10**7)

    s = subs.add_parser("bm", help="Brauer-Manin obstruction verdict for k = ell^2")
    s.add_argument("--ell", type=int, required=True)

    s = subs.add_parser("ec", help="elliptic fiber seed point and its multiples")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--multiples", type=int, default=10)

    s = subs.add_parser("orbit", help="orbit of a seed under involutions and symmetries")
    _add_form_flags(s)
    s.add_argument("--seed", required=True,
                   help="x/r,y/s,z/t with integer entries, e.g. 5,5,1/0")
    s.add_argument("--height-bound", type=int, default=10**6)
    s.add_argument("--steps", type=int, default=200)

    s = subs.add_parser("integral", help="complete integral point list")
    _add_form_flags(s)

    s = subs.add_parser("survey", help="progression and obstruction counts (CSV)")
    s.add_argument("--M", type=int, required=True, action="append",
                   help="bound; repeatable")
    s.add_argument("--modulus", type=int, default=1, help="progression modulus P'")

    return parser


def _parse_counts(args) -> zeta.TraceData:
    if args.counts and args.counts_file:
        raise UsageError("give either --counts or --counts-file")
    if args.counts:
        counts = tuple(int(t) for t in args.counts.split(","))
        return zeta.TraceData(args.p, counts)
    if args.counts_file:
        with open(args.counts_file) as fh:
            data = json.load(fh)
        return zeta.TraceData(int(data.get("p", args.p)),
                              tuple(int(c) for c in data["counts"]))
    raise UsageError("point counts are required (--counts or --counts-file)")


def _parse_seed(raw: str) -> TriprojPoint:
    pairs = []
    for tok in raw.split(","):
        if "/" in tok:
            num, den = tok.split("/")
            pairs.append((int(num), int(den)))
        else:
            pairs.append((int(tok), 1))
    if len(pairs) != 3:
        raise UsageError("--seed needs three coordinates")
    return TriprojPoint(tuple(pairs))


def _run_count(args) -> tuple[dict, bool]:
    form = _form_from_args(args)
    if args.n >= SLOW_LEVELS and not args.slow:
        fibers = (args.p ** args.n + 1) ** 2
        raise UsageError(
            f"n={args.n} sweeps ~{fibers:.2e} fibers (hours of work); rerun with --slow"
        )
    job = counting.CountJob(form, args.p, args.n, threads=args.threads,
                            use_symmetry=args.symmetry, checkpoint_path=args.resume)
    N = counting.count_points(job)
    return {"p": args.p, "n": args.n, "N": N}, True


def _run_zeta(args) -> tuple[dict, bool]:
    data = _parse_counts(args)
    f = zeta.charpoly_from_counts(data)
    return {
        "p": data.p,
        "charpoly_descending": list(f.descending()),
        "functional_equation_sign": "+1",
        "unit_root_count": zeta.count_unit_roots(f),
    }, True


def _run_picard(args) -> tuple[dict, bool]:
    data = _parse_counts(args)
    return {"p": data.p, "picard_upper_bound": zeta.picard_upper_bound(data)}, True


def _run_lattice(args) -> tuple[dict, bool]:
    if args.gram_file:
        with open(args.gram_file) as fh:
            lat = lattice.parse_gram(fh.read())
    else:
        lat = lattice.builtin_gram_S() if args.which == "S" else lattice.builtin_gram_Sprime()
    reports = lattice.half_class_scan(lat) if lat.rank <= 20 else []
    return {
        "names": list(lat.names),
        "det": lattice.det(lat),
        "snf": lattice.snf(lat.gram),
        "half_classes": [
            {"vector": list(r.vector), "self_intersection": r.self_intersection,
             "verdict": r.verdict}
            for r in reports
        ],
    }, True


def _run_h1(args) -> tuple[dict, bool]:
    if bool(args.builtin) == bool(args.sigma_file):
        raise UsageError("give exactly one of --builtin or --sigma-file")
    if args.builtin:
        mod = {
            "picW-S": cohomology.sigma_picW_caseS,
            "picW-Sprime": cohomology.sigma_picW_caseSprime,
            "picU": cohomology.sigma_picU,
        }[args.builtin]()
    else:
        with open(args.sigma_file) as fh:
            rows = [[int(t) for t in line.split()] for line in fh if line.strip()]
        mod = cohomology.InvolutionModule.from_matrix(rows)
    return {"rank": mod.rank, "group": list(cohomology.h1(mod))}, True


def _run_local(args) -> tuple[dict, bool]:
    verdict = localsolve.adelic_verdict(args.k, trial_bound=args.factor_bound)
    return verdict.to_dict(), verdict.verdict == "exists"


def _run_bm(args) -> tuple[dict, bool]:
    verdict = brauer.bm_verdict(args.ell)
    return verdict.to_dict(), verdict.status == "obstructed"


def _run_ec(args) -> tuple[dict, bool]:
    curve, seed = rational.seed_point(args.ell)
    infinite = rational.infinite_order_certificate(curve, seed)
    multiples = []
    Q = seed
    for n in range(1, args.multiples + 1):
        entry = {"n": n, "U": Q[0], "V": Q[1]}
        try:
            x, y = rational.weierstrass_to_fiber(Q, 6, curve.m)
            entry["fiber"] = [x, y]
        except rational.ExceptionalLocusError as exc:
            entry["fiber_error"] = str(exc)
        multiples.append(entry)
        Q = rational.ec_add(curve, Q, seed)
    return {
        "m": curve.m,
        "curve": f"V^2 = U^3 + {curve.alpha}*U^2 + {curve.beta}*U",
        "seed": [seed[0], seed[1]],
        "infinite_order": infinite,
        "multiples": multiples,
    }, True


def _run_orbit(args) -> tuple[dict, bool]:
    form = _form_from_args(args)
    seed = _parse_seed(args.seed)
    state = rational.orbit_explore(form, seed, args.height_bound, args.steps)
    points = sorted(
        ",".join(f"{a}/{b}" for a, b in pt.pairs) for pt in state.points
    )
    return {
        "points": points,
        "count": len(points),
        "steps": state.steps,
        "truncated_by_height": state.truncated_by_height,
        "fibers_per_axis": list(state.fibers_per_axis()),
    }, True


def _run_integral(args) -> tuple[dict, bool]:
    form = _form_from_args(args)
    points = sorted(rational.integral_points_complete(form))
    return {"points": [list(pt) for pt in points], "count": len(points)}, True


def _run_survey(args, out_path) -> bool:
    lines = ["M,count_local,count_obstructed"]
    for M in args.M:
        local, obstructed = brauer.survey_counts(M, args.modulus)
        lines.append(f"{M},{local},{obstructed}")
    _emit_text("\n".join(lines) + "\n", out_path)
    return True


def _run_smooth(args) -> tuple[dict, bool]:
    form = _form_from_args(args)
    smooth = is_smooth_mod_p(form, args.p)
    return {"p": args.p, "smooth": smooth}, smooth


def _run_nondegen(args) -> tuple[dict, bool]:
    form = _form_from_args(args)
    ok = is_nondegenerate(form)
    return {"coeffs": list(form.coefficients()), "nondegenerate": ok}, ok


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    handlers = {
        "smooth": _run_smooth,
        "nondegen": _run_nondegen,
        "count": _run_count,
        "zeta": _run_zeta,
        "picard-bound": _run_picard,
        "lattice": _run_lattice,
        "h1": _run_h1,
        "local": _run_local,
        "bm": _run_bm,
        "ec": _run_ec,
        "orbit": _run_orbit,
        "integral": _run_integral,
    }
    try:
        if args.command == "survey":
            positive = _run_survey(args, args.out)
        else:
            payload, positive = handlers[args.command](args)
            _emit(payload, args.out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.strict and not positive:
        return EXIT_NEGATIVE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
