"""Command-line front end.

Every command reads JSON specs, computes, and writes a JSON object with
lexicographically sorted keys to stdout (or TSV with --format tsv).
Validation failures exit with status 2 and a machine-readable error object
on stderr, carrying the library's stable error codes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import lcp as lcp_mod
from .codes import (
    CertStep,
    LinearCode,
    Matrix,
    encode_messages,
    is_lcp,
    min_distance,
    rank,
    verify_lcp_conditions,
)
from .curve import Divisor, KummerCurve, curve_from_json, parse_place
from .errors import KummerError, UsageError
from .field import field_from_json
from .nonspecial import (
    DivisorFamily,
    classify,
    nonspecial_effective_g,
    nonspecial_g,
    nonspecial_gminus1,
    separable_family,
    support_feasibility,
    unit_multiplicity_family,
)
from .semigroup import QTuple, dim_by_formula


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "tsv":
        for key in sorted(obj):
            val = obj[key]
            if not isinstance(val, str):
                val = json.dumps(val, sort_keys=True)
            sys.stdout.write(f"{key}\t{val}\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load_json(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"input file {path} does not exist")
    return json.loads(p.read_text())


def _load_curve(path: str) -> KummerCurve:
    return curve_from_json(_load_json(path))


def _load_divisor(curve: KummerCurve, path: str) -> Divisor:
    return Divisor.from_json(curve, _load_json(path))


def _tuple_from_args(curve: KummerCurve, args) -> QTuple:
    if getattr(args, "tuple", None) == "all-ramified" or not getattr(args, "places", None):
        return QTuple.all_ramified(curve)
    places = [parse_place(curve, s) for s in args.places.split(",")]
    return QTuple.of(curve, places)


def _alpha_from_args(args) -> list[int]:
    return [int(v) for v in args.alpha.split(",")]


def cmd_curve_info(args) -> dict:
    curve = _load_curve(args.curve)
    places = curve.rational_places()
    split = curve.split_x_values()
    return {
        "genus": curve.genus(),
        "m": curve.m,
        "q": curve.field.q,
        "deg_f": curve.deg_f,
        "rational_places": len(places),
        "totally_ramified": [p.id() for p in curve.totally_ramified_places()],
        "split_x_count": len(split),
        "max_code_length": curve.m * len(split),
        "partial": not curve.has_rational_infinity,
    }


def cmd_curve_places(args) -> dict:
    curve = _load_curve(args.curve)
    places = curve.rational_places()
    return {
        "count": len(places),
        "places": [p.id() for p in places],
        "partial": not curve.has_rational_infinity,
    }


def cmd_dim(args) -> dict:
    curve = _load_curve(args.curve)
    qtuple = _tuple_from_args(curve, args)
    alpha = _alpha_from_args(args)
    cls = classify(qtuple, alpha)
    return {
        "dim": dim_by_formula(qtuple, alpha),
        "degree": cls.degree,
        "classification": cls.verdict,
    }


def cmd_nonspecial_check(args) -> dict:
    curve = _load_curve(args.curve)
    qtuple = _tuple_from_args(curve, args)
    if args.necessary_only:
        return support_feasibility(qtuple).to_json()
    alpha = _alpha_from_args(args)
    out = {
        "gminus1": nonspecial_gminus1(qtuple, alpha),
        "g": nonspecial_g(qtuple, alpha),
        "classification": classify(qtuple, alpha).to_json(),
    }
    if all(0 <= a <= curve.m - 1 for a in alpha):
        out["effective_g"] = nonspecial_effective_g(qtuple, alpha)
    return out


def cmd_nonspecial_enumerate(args) -> dict:
    curve = _load_curve(args.curve)
    if args.family == "separable":
        if args.all_alpha0:
            fams = [separable_family(curve, a0) for a0 in range(curve.m)]
            return {"families": [f.to_json() for f in fams]}
        if args.alpha0 is None:
            raise UsageError("--alpha0 or --all-alpha0 required for the separable family")
        return separable_family(curve, args.alpha0).to_json()
    qtuple = _tuple_from_args(curve, args)
    fam = unit_multiplicity_family(curve, qtuple)
    if isinstance(fam, DivisorFamily):
        return fam.to_json()
    return fam.to_json()


def cmd_lcp_build(args) -> dict:
    curve = _load_curve(args.curve)
    E = _load_divisor(curve, args.E) if args.E else None
    E2 = _load_divisor(curve, args.E2) if args.E2 else None
    eval_x = [int(v) for v in args.eval_x.split(",")] if args.eval_x else None
    result = lcp_mod.build(curve, args.construction, args.s, E, E2, eval_x)
    return result.to_json()


def cmd_lcp_verify(args) -> dict:
    obj = _load_json(args.result)
    curve = curve_from_json(obj["curve"])
    field = curve.field
    G = Divisor.from_json(curve, obj["G"])
    H = Divisor.from_json(curve, obj["H"])
    d_places = [parse_place(curve, s) for s in obj["D"]]
    certificates = [CertStep.from_json(c) for c in obj["certificates"]]
    codes = []
    for cj in obj["codes"]:
        gen = Matrix(field, np.asarray(cj["generator"], dtype=np.int64))
        codes.append(LinearCode(field, gen, int(cj["N"]), int(cj["k"])))
    report = is_lcp(codes[0], codes[1])
    conditions = verify_lcp_conditions(curve, d_places, G, H, certificates)
    stored_ranks_ok = (
        rank(codes[0].generator) == codes[0].k and rank(codes[1].generator) == codes[1].k
    )
    return {
        "verdict": "LCP" if report.verdict else "NOT_LCP",
        "rank_of_stack": report.rank_of_stack,
        "stored_ranks_ok": stored_ranks_ok,
        "conditions_pass": conditions.passed,
        "conditions": conditions.to_json(),
    }


def cmd_code_info(args) -> dict:
    obj = _load_json(args.code)
    field = field_from_json(obj["field"])
    gen = Matrix(field, np.asarray(obj["generator"], dtype=np.int64))
    code = LinearCode(field, gen, int(obj["N"]), int(obj["k"]))
    out = {
        "N": code.N,
        "k": code.k,
        "q": field.q,
        "rank": rank(gen),
    }
    if args.sample:
        rng = np.random.default_rng(args.seed)
        msgs = rng.integers(0, field.q, size=(args.sample, code.k), dtype=np.int64)
        words = encode_messages(code, msgs)
        weights = np.count_nonzero(words, axis=1)
        nonzero = weights[np.any(msgs != 0, axis=1)]
        out["sampled_min_weight"] = int(nonzero.min()) if nonzero.size else None
    else:
        d = min_distance(code)
        out["min_distance"] = d.to_json()
    return out


def make_parser() -> _Parser:
    parser = _Parser(prog="kummerlcp", description=__doc__)
    parser.add_argument("--format", choices=["json", "tsv"], default="json")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subcommands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-info", help="genus, place counts and ramification data")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_curve_info)

    p = sub.add_parser("curve-places", help="enumerate rational places")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_curve_places)

    p = sub.add_parser("dim", help="Riemann-Roch dimension of a divisor on a tuple")
    p.add_argument("--curve", required=True)
    p.add_argument("--places", help="comma-separated place ids binding alpha")
    p.add_argument("--tuple", choices=["all-ramified"], dest="tuple")
    p.add_argument("--alpha", required=True, help="comma-separated integers")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("nonspecial-check", help="small-degree non-specialness checks")
    p.add_argument("--curve", required=True)
    p.add_argument("--places")
    p.add_argument("--tuple", choices=["all-ramified"], dest="tuple")
    p.add_argument("--alpha")
    p.add_argument("--necessary-only", action="store_true")
    p.set_defaults(fn=cmd_nonspecial_check)

    p = sub.add_parser("nonspecial-enumerate", help="explicit degree-(g-1) families")
    p.add_argument("--curve", required=True)
    p.add_argument("--family", choices=["separable", "unit"], required=True)
    p.add_argument("--alpha0", type=int)
    p.add_argument("--all-alpha0", action="store_true")
    p.add_argument("--places")
    p.add_argument("--tuple", choices=["all-ramified"], dest="tuple")
    p.set_defaults(fn=cmd_nonspecial_enumerate)

    p = sub.add_parser("lcp-build", help="build and verify an LCP of AG codes")
    p.add_argument("--curve", required=True)
    p.add_argument("--construction", choices=["1", "2", "R"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--E")
    p.add_argument("--E2")
    p.add_argument("--eval-x", dest="eval_x")
    p.set_defaults(fn=cmd_lcp_build)

    p = sub.add_parser("lcp-verify", help="re-check a serialized LCP result")
    p.add_argument("--result", required=True)
    p.set_defaults(fn=cmd_lcp_verify)

    p = sub.add_parser("code-info", help="parameters of a serialized code")
    p.add_argument("--code", required=True)
    p.add_argument("--sample", type=int, default=0,
                   help="sample this many random codewords instead of exhausting")
    p.set_defaults(fn=cmd_code_info)

    return parser


_VALUE_FLAGS = {"--alpha", "--eval-x"}


def _preprocess(argv: list[str]) -> list[str]:
    # let --alpha -2,2,3 survive argparse by folding the value into the flag
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(_preprocess(sys.argv[1:] if argv is None else list(argv)))
        out = args.fn(args)
    except KummerError as exc:
        sys.stderr.write(json.dumps(exc.payload(), sort_keys=True) + "\n")
        return 2
    _emit(out, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
