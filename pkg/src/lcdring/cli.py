"""Command-line front end.

Exit codes: 0 success, 1 a re-verified report differs, 2 parse error,
3 precondition violation, 4 internal oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from typing import Any

import numpy as np

from . import construct as cs
from . import cyclic
from .code import DEFAULT_BUDGET, FieldCode, RingCode, format_code, parse_code, read_code
from .errors import InternalError, LcdError, ParseError, PreconditionError
from .gf import Field, parse_field
from .ring import Ring
from .weighing import (
    WeighingMatrix,
    load_fixture,
    paley_conference,
    paley_hadamard,
    paley_skew_conference,
    read_weighing,
    skew_double,
)

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


# -- argument helpers --


def resolve_weighing(spec: str) -> WeighingMatrix:
    """Fixture name, file path, or one of paley:q, skew-paley:q, hadamard:q, double:<spec>."""
    if spec.startswith("double:"):
        return skew_double(resolve_weighing(spec[len("double:"):]))
    kind, _, arg = spec.partition(":")
    makers = {"paley": paley_conference, "skew-paley": paley_skew_conference, "hadamard": paley_hadamard}
    if kind in makers and arg:
        try:
            q = int(arg)
        except ValueError:
            raise ParseError(f"bad order in {spec!r}") from None
        return makers[kind](q)
    if os.path.exists(spec):
        return read_weighing(spec)
    try:
        return load_fixture(spec)
    except FileNotFoundError:
        raise ParseError(f"unknown weighing matrix {spec!r}") from None


def parse_row(algebra: Field | Ring, text: str) -> np.ndarray:
    toks = [t.strip() for t in text.split(",") if t.strip()]
    if isinstance(algebra, Ring):
        return np.array([algebra.parse(t).triple for t in toks], dtype=np.int64)
    try:
        return np.array([algebra.coerce(int(t)) for t in toks], dtype=np.int64)
    except ValueError:
        raise ParseError(f"bad row {text!r}") from None


def parse_inline_matrix(algebra: Field | Ring, text: str) -> np.ndarray:
    """Rows separated by ';', entries by ','; a file path or bundled code name is also accepted."""
    if ";" not in text and "," not in text:
        C = _load_code(text)
        return C.gen
    rows = [parse_row(algebra, r) for r in text.split(";") if r.strip()]
    if len({r.shape for r in rows}) != 1:
        raise ParseError("ragged matrix")
    return np.array(rows, dtype=np.int64)


def _load_code(name: str) -> FieldCode | RingCode:
    if os.path.exists(name):
        return read_code(name)
    from importlib import resources

    res = resources.files("lcdring.data").joinpath(f"{name}.code")
    if not res.is_file():
        raise ParseError(f"no code file {name!r}")
    return parse_code(res.read_text())


def parse_scalar(algebra: Field | Ring, text: str):
    if isinstance(algebra, Ring):
        return algebra.parse(text).triple
    try:
        return algebra.coerce(int(text))
    except ValueError:
        raise ParseError(f"bad field element {text!r}") from None


def parse_params(tokens: list[str]) -> dict[str, str]:
    params = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key:
            raise ParseError(f"expected key=value, got {tok!r}")
        params[key] = value
    return params


def _algebra(params: dict, args) -> Field | Ring:
    ring = params.get("ring") or getattr(args, "ring", None)
    field = params.get("field") or getattr(args, "field", None)
    if ring:
        return Ring(parse_field(ring))
    if field:
        return parse_field(field)
    raise ParseError("a field=<spec> or ring=<spec> parameter is required")


def _field(params: dict, args) -> Field:
    A = _algebra(params, args)
    return A.field if isinstance(A, Ring) else A


def _flag(params: dict, key: str) -> bool:
    return params.get(key, "").lower() in ("1", "true", "yes", "any")


# -- recipes shared by the construct subcommand and job files --


def run_recipe(recipe: str, params: dict[str, str], args) -> Any:
    budget, workers = args.budget, args.workers
    if recipe in ("weighing", "weighing_code", "skew_weighing_code"):
        F = _field(params, args)
        W = resolve_weighing(params["W"])
        alpha = parse_scalar(F, params.get("alpha", "1"))
        if "beta" in params:
            return cs.skew_weighing_code(F, alpha, parse_scalar(F, params["beta"]), W, budget, workers)
        return cs.weighing_code(F, alpha, W, budget, workers)
    if recipe == "lift":
        F = _field(params, args)
        W = resolve_weighing(params["W"])
        alpha = parse_scalar(F, params.get("alpha", "1"))
        C = FieldCode(F, cs.weighing_generator(F, alpha, W))
        return cs.analyze(cs.lift_to_R(C), budget, workers, "lift", {"q": F.q, "W": repr(W), "alpha": alpha})
    if recipe == "double_circulant":
        A = _algebra(params, args)
        return cs.double_circulant(A, parse_scalar(A, params["lambda"]), parse_row(A, params["row"]),
                                   budget, workers, require_unit=not _flag(params, "any_lambda"))
    if recipe == "bordered_circulant":
        A = _algebra(params, args)
        return cs.bordered_circulant(A, parse_scalar(A, params["alpha"]), parse_scalar(A, params["omega"]),
                                     parse_scalar(A, params["lambda"]), parse_row(A, params["row"]),
                                     budget, workers, require_unit=not _flag(params, "any_lambda"))
    if recipe == "symmetric":
        A = _algebra(params, args)
        return cs.symmetric_code(A, parse_inline_matrix(A, params["A"]), budget, workers)
    if recipe == "raw":
        A = _algebra(params, args)
        return cs.raw_systematic(A, parse_inline_matrix(A, params["B"]), budget, workers)
    if recipe == "lcd_expand":
        A = _algebra(params, args)
        P = parse_inline_matrix(A, params["P"])
        scalars = [int(s) for s in params["scalars"].split(",")] if "scalars" in params else None
        return cs.lcd_expand(A, P, params.get("case", "plain"), scalars, budget, workers,
                             five_block=_flag(params, "five_block"))
    if recipe == "mds":
        return mds_report(int(params["q"]), int(params["mu"]), budget)
    if recipe == "selfdual_bound":
        C = _load_code(params.get("P", "golay24"))
        return cs.selfdual_to_lcd_bound(C.F, C.gen, budget, workers)
    if recipe == "analyze":
        return cs.analyze(_load_code(params["file"]), budget, workers)
    if recipe == "table":
        primes = [int(p) for p in params["p"].split(",")] if "p" in params else None
        return cs.run_table(int(params["table"]), primes, budget=budget, workers=workers)
    raise ParseError(f"unknown recipe {recipe!r}")


def mds_report(q: int, mu: int, budget: int = DEFAULT_BUDGET) -> dict:
    g, C = cyclic.mds_lcd_generator(q, mu)
    d, exact, how = cyclic.mds_distance(q, mu, budget)
    n, k, d_expected = cyclic.mds_expected(q, mu)
    return {
        "recipe": "mds", "q": q, "mu": mu, "generator": cyclic.format_poly(g),
        "n": C.n, "k": C.k, "d": d, "d_exact": exact, "certificate": how,
        "lcd": C.is_lcd(), "self_reciprocal": cyclic.is_self_reciprocal_up_to_scalar(g),
        "singleton": C.n - C.k + 1, "mds": d == C.n - C.k + 1,
        "expected": [n, k, d_expected],
    }


# -- rendering --


def to_document(result: Any) -> Any:
    if isinstance(result, cs.ConstructionReport):
        doc = result.to_dict()
        doc["code"] = format_code(result.code)
        return doc
    if isinstance(result, cs.BoundEntry):
        return {"recipe": "selfdual_bound", "n": result.n, "k": result.k, "q": result.q,
                "d_lower": result.d_lower, "d_exact": result.d_exact,
                "singleton": result.singleton, "witness": result.witness}
    return result


def _human(result: Any) -> str:
    if isinstance(result, cs.ConstructionReport):
        return human_report(result)
    if isinstance(result, cs.BoundEntry):
        return (f"LCD[{result.n},{result.k}]_{result.q} >= {result.d_lower} "
                f"(singleton {result.singleton}); witness {result.witness}")
    if isinstance(result, list):
        return cs.format_table_rows(result)
    if isinstance(result, dict) and result.get("recipe") == "mds":
        return (f"[{result['n']},{result['k']},{result['d']}]_{result['q']} g = {result['generator']} "
                f"lcd={result['lcd']} mds={result['mds']} exact={result['d_exact']} ({result['certificate']})")
    return json.dumps(result, default=_json_default)


def human_report(rep: cs.ConstructionReport) -> str:
    v = rep.verdicts
    exact = "" if rep.d[1] else " (upper bound)"
    lines = [f"{rep.recipe}: {rep.params_str()}{exact}",
             f"  lcd={v['lcd']} self_dual={v['self_dual']} formally_self_dual={v.get('formally_self_dual')}"]
    if isinstance(rep.code, RingCode):
        lines.append(f"  components k={list(rep.code.ks)} free={v['free']} hull_dims={v['hull_dims']}"
                     f" d_hamming={v.get('d_hamming')}")
    if rep.gray is not None:
        g = rep.gray
        gexact = "" if g.d[1] else " (not enumerated)"
        lines.append(f"  gray: {g.params_str()}{gexact} lcd={g.lcd} formally_self_dual={g.fsd}")
    for diag in rep.extra.get("diagnostics", []):
        lines.append(f"  note: {diag}")
    for flag in rep.flags:
        lines.append(f"  FLAG: {flag}")
    return "\n".join(lines)


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"not serialisable: {type(x)}")


def emit(result: Any, args, out=None) -> None:
    out = out or sys.stdout
    if args.output == "structured":
        out.write(json.dumps(to_document(result), default=_json_default, sort_keys=True) + "\n")
    else:
        out.write(_human(result) + "\n")


# -- subcommands --


def cmd_analyze(args) -> int:
    emit(cs.analyze(read_code(args.file), args.budget, args.workers), args)
    return EXIT_OK


def cmd_tables(args) -> int:
    primes = [int(p) for p in args.p.split(",")] if args.p else None
    rows = cs.run_table(args.table, primes, budget=args.budget, workers=args.workers,
                        spectrum=not args.no_spectrum)
    emit(rows, args)
    return EXIT_OK


def cmd_construct(args) -> int:
    emit(run_recipe(args.recipe, parse_params(args.params), args), args)
    return EXIT_OK


def cmd_gray(args) -> int:
    C = read_code(args.file)
    if not isinstance(C, RingCode):
        raise ParseError("gray needs a ring code file")
    sys.stdout.write(format_code(C.gray_image()))
    return EXIT_OK


def cmd_search(args) -> int:
    F = parse_field(args.field) if args.field else None
    if F is None:
        raise ParseError("--field is required")
    W = resolve_weighing(args.W)
    alphas = [int(a) for a in args.alpha.split(",")] if args.alpha else None
    betas = [int(b) for b in args.beta.split(",")] if args.beta else None
    rows = cs.table_search(W, F, args.construction, alphas, betas, args.budget, args.workers)
    if args.output == "structured":
        emit(rows, args)
    else:
        for r in rows:
            ex = "" if r["d_exact"] else " (upper bound)"
            print(f"alpha={r['alpha']} beta={r['beta']} d={r['d']}{ex} lcd={r['lcd']}")
    return EXIT_OK


def cmd_mds(args) -> int:
    emit(mds_report(args.q, args.mu, args.budget), args)
    return EXIT_OK


def cmd_run_jobs(args) -> int:
    with open(args.jobfile) as fh:
        text = fh.read()
    status = EXIT_OK
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        recipe, *rest = shlex.split(line)
        result = run_recipe(recipe, parse_params(rest), args)
        if args.output == "human":
            print(f"[{lineno}] {recipe}")
        emit(result, args)
    return status


_VERDICT_KEYS = ("n", "k", "log_q_size", "d", "d_exact", "lcd", "self_dual", "formally_self_dual", "hull_dim")


def cmd_verify(args) -> int:
    """Re-ingest structured reports (one JSON document per line) and recompute them."""
    status = EXIT_OK
    with open(args.report) as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad report line: {exc}") from None
            if "code" not in doc:
                continue
            fresh = cs.analyze(parse_code(doc["code"]), args.budget, args.workers).to_dict()
            diffs = [k for k in _VERDICT_KEYS if k in doc and doc[k] != fresh.get(k)]
            name = doc.get("recipe", "?")
            if diffs:
                status = EXIT_MISMATCH
                print(f"{name}: MISMATCH in {', '.join(diffs)}")
            else:
                print(f"{name}: ok")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='field spec, e.g. "5" or "3^2:1,0,1"')
    common.add_argument("--ring", help="base field spec of R")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of projective codewords to enumerate")
    common.add_argument("--output", choices=("human", "structured"), default="human")
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="lcdring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="verdicts and distance of a code file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tables", parents=[common], help="rebuild a weighing-matrix table (1-4)")
    p.add_argument("table", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--p", help="comma-separated primes to keep")
    p.add_argument("--no-spectrum", action="store_true", help="skip the spectrum of mismatched cells")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("construct", parents=[common], help="run one recipe: construct RECIPE key=value ...")
    p.add_argument("recipe")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("gray", parents=[common], help="print the Gray image of a ring code file")
    p.add_argument("file")
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("search", parents=[common], help="(alpha, beta) scan over a weighing matrix")
    p.add_argument("W", help="fixture name, file, paley:q, skew-paley:q, hadamard:q or double:<spec>")
    p.add_argument("--construction", choices=("i", "ii"), default="ii")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("mds", parents=[common], help="MDS LCD cyclic code of length q+1")
    p.add_argument("q", type=int)
    p.add_argument("mu", type=int)
    p.set_defaults(func=cmd_mds)

    p = sub.add_parser("run-jobs", parents=[common], help="run every line of a job file")
    p.add_argument("jobfile")
    p.set_defaults(func=cmd_run_jobs)

    p = sub.add_parser("verify", parents=[common], help="recompute structured reports")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget < 1:
        print("error: --budget must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (ParseError, KeyError, OSError) as exc:
        msg = f"missing parameter {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"parse error: {msg}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalError as exc:
        print(f"internal oracle disagreement ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except LcdError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
