"""Command-line front end with JSON output and deterministic seeds.

Exit codes: 0 success, 2 usage error, 3 failed exact check, 4 violated
precondition (genericity, pattern, sum-freeness, and the like).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import (GenericityError, NilconeError, NotSumFreeError,
                     PatternError, ShapeError, SingularMatrixError)
from .groups import ParabolicShape, random_nilpotent
from .linalg import Matrix
from .normalform import genericity_minors, is_generic, normal_form_B, normal_form_P, normal_form_U
from .quiver import eval_f_phi
from .quotients import verify_relations
from .semiinv import det_k, evaluate, invariants_n3, verify_semiinvariance, weight_of
from .serialize import (datum_from_json, matrix_from_json, matrix_to_json,
                        morphism_from_json)
from .toric import (BlockPair, dual_cone, semigroup_generators, toric_cone,
                    toric_exponents)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3
EXIT_PRECONDITION = 4

_PRECONDITION_ERRORS = (GenericityError, PatternError, NotSumFreeError,
                        ShapeError, SingularMatrixError)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _parse_blocks(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ShapeError(f"bad block list {text!r}") from exc


def _cmd_eval_invariant(args) -> int:
    datum = datum_from_json(_load_json(args.datum))
    matrix = matrix_from_json(_load_json(args.matrix))
    value = evaluate(matrix, datum)
    _emit({
        "value": str(value),
        "weight": list(weight_of(datum, matrix.rows).coords),
        "size": datum.size,
    })
    return EXIT_OK


def _cmd_normal_form(args) -> int:
    matrix = matrix_from_json(_load_json(args.matrix))
    n = matrix.rows
    if args.group == "parabolic":
        if not args.blocks:
            raise ShapeError("--blocks is required for the parabolic group")
        shape = ParabolicShape(n, _parse_blocks(args.blocks))
        h, cert = normal_form_P(matrix, shape, seed=args.seed)
        minors = genericity_minors(matrix, ParabolicShape.borel(n))
    elif args.group == "borel":
        h, cert = normal_form_B(matrix, seed=args.seed)
        minors = genericity_minors(matrix, ParabolicShape.borel(n))
    else:
        h, cert = normal_form_U(matrix, seed=args.seed)
        minors = genericity_minors(matrix, ParabolicShape.borel(n))
    _emit({
        "H": matrix_to_json(h),
        "g": matrix_to_json(cert.g),
        "minors": [str(m) for m in minors],
        "seed": args.seed,
    })
    return EXIT_OK


def _cmd_genericity_check(args) -> int:
    matrix = matrix_from_json(_load_json(args.matrix))
    shape = (ParabolicShape(matrix.rows, _parse_blocks(args.blocks))
             if args.blocks else ParabolicShape.borel(matrix.rows))
    minors = genericity_minors(matrix, shape)
    _emit({
        "generic": all(m != 0 for m in minors),
        "minors": [str(m) for m in minors],
        "blocks": list(shape.blocks),
    })
    return EXIT_OK


def _cmd_toric_cone(args) -> int:
    cone = toric_cone(args.n, args.bound)
    payload = {"n": args.n, "generators": [list(g) for g in cone.generators]}
    dual = dual_cone(cone)
    payload["dual"] = [list(g) for g in dual.generators]
    payload["hilbert"] = [list(g) for g in semigroup_generators(cone)]
    _emit(payload)
    return EXIT_OK


def _cmd_toric_exponents(args) -> int:
    bp = BlockPair(_parse_blocks(args.a), _parse_blocks(args.aprime), args.n)
    exponents = toric_exponents(bp)
    _emit({"n": args.n, "a": list(bp.a), "aprime": list(bp.a_prime),
           "exponents": list(exponents.h)})
    return EXIT_OK


def _cmd_eval_quiver_si(args) -> int:
    phi = morphism_from_json(_load_json(args.morphism))
    matrix = matrix_from_json(_load_json(args.matrix))
    _emit({"value": str(eval_f_phi(matrix, phi))})
    return EXIT_OK


def _cmd_verify_relations(args) -> int:
    report = verify_relations(args.n, args.trials, args.seed)
    _emit(report.to_dict())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cmd_verify_all(args) -> int:
    n = args.n
    seed = args.seed
    rng = random.Random(seed)
    checks: list[dict] = []

    def record(label: str, ok: bool) -> None:
        checks.append({"label": label, "ok": bool(ok)})

    for k in range(1, n):
        record(f"det_{k} weight law", verify_semiinvariance(
            det_k(n, k), n, seed=rng.randrange(2 ** 32), matrices=5, elements=4))
    if n == 3:
        rel = verify_relations(3, max(args.trials, 25), rng.randrange(2 ** 32))
        for item in rel.to_dict()["checks"]:
            record(item["label"], item["ok"])
        f31, f1, f2, d1 = invariants_n3()
        record("weights of f_{3,1} and det_1 agree", f31.weight == d1.weight)
    if n >= 4:
        rel = verify_relations(n, max(args.trials // 2, 10), rng.randrange(2 ** 32))
        for item in rel.to_dict()["checks"]:
            record(item["label"], item["ok"])
    cone = toric_cone(n)
    for k in range(1, n):
        bp = BlockPair((k,), (k,), n)
        record(f"cone contains the det_{k} exponents",
               cone.contains(toric_exponents(bp).h))
    nf_ok = True
    for _ in range(3):
        sample = random_nilpotent(n, rng.randrange(2 ** 32))
        if not is_generic(sample, ParabolicShape.borel(n)):
            continue
        h, cert = normal_form_B(sample, seed=rng.randrange(2 ** 32))
        nf_ok = nf_ok and cert.g @ sample == h @ cert.g
    record("normal form certificates hold", nf_ok)
    ok = all(item["ok"] for item in checks)
    _emit({"n": n, "seed": seed, "checks": checks, "ok": ok})
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilcone",
        description="Exact invariants and normal forms of nilpotent matrices "
                    "under triangular conjugation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-invariant", help="evaluate a block-determinantal invariant")
    p.add_argument("--datum", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_eval_invariant)

    p = sub.add_parser("normal-form", help="normal form plus conjugating witness")
    p.add_argument("--group", choices=["borel", "unipotent", "parabolic"], required=True)
    p.add_argument("--blocks", default=None, help="comma-separated block sizes")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("genericity-check", help="corner-minor genericity test")
    p.add_argument("--matrix", required=True)
    p.add_argument("--blocks", default=None)
    p.set_defaults(func=_cmd_genericity_check)

    p = sub.add_parser("toric-cone", help="exponent cone, dual, and lattice generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=_cmd_toric_cone)

    p = sub.add_parser("toric-exponents", help="exponents of a sum-free toric invariant")
    p.add_argument("--a", required=True)
    p.add_argument("--aprime", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_toric_exponents)

    p = sub.add_parser("eval-quiver-si", help="evaluate a morphism-datum invariant")
    p.add_argument("--morphism", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_eval_quiver_si)

    p = sub.add_parser("verify-relations", help="exact quotient-relation suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_relations)

    p = sub.add_parser("verify-all", help="one-shot verification suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_all)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _PRECONDITION_ERRORS as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_PRECONDITION
    except NilconeError as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_CHECK_FAILED
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
