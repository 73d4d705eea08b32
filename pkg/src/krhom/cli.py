"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 precondition or hypothesis
failure (JSON diagnosis on stdout), 3 parse error, 4 retries exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .cliques import added_edges, maximal_krfree_completion
from .edgelist import format_edgelist, parse_edgelist
from .errors import HypothesisViolation, ParseError, PreconditionError, RetriesExhausted
from .extraction import ExtractionParams, compute_params, dumps, extract, verify_report
from .homomorphism import min_hom_image_bruteforce
from .props import run_proposition_suite

EXIT_OK, EXIT_VERIFY, EXIT_HYPOTHESIS, EXIT_PARSE, EXIT_RETRIES = 0, 1, 2, 3, 4

_RATIONAL = re.compile(r"\d+(/\d+)?")


def rational(text: str) -> Fraction:
    """Parse ``p/q`` (or an integer) exactly; decimals are refused."""
    if not _RATIONAL.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"expected a rational 'p/q', got {text!r}")
    value = Fraction(text.strip())
    if value <= 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edgelist(text).graph


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, payload: dict) -> int:
    sys.stdout.write(dumps(payload))
    return code


# generate ----------------------------------------------------------------

def _generated(args):
    fam = args.family
    if fam == "cycle":
        return gen.cycle(args.n), f"C_{args.n}"
    if fam == "complete":
        return gen.complete(args.n), f"K_{args.n}"
    if fam == "empty":
        return gen.empty(args.n), f"empty graph on {args.n} vertices"
    if fam == "turan":
        return gen.turan(args.n, args.parts), f"Turan graph T({args.n},{args.parts})"
    if fam == "andrasfai":
        return gen.andrasfai(args.k), f"Andrasfai graph And({args.k})"
    if fam == "kneser":
        return gen.kneser(args.n, args.k), f"Kneser graph KG({args.n},{args.k})"
    if fam == "petersen":
        return gen.petersen(), "Petersen graph"
    if fam == "named":
        return gen.named_graph(args.name), args.name
    if fam == "join":
        return gen.join(gen.named_graph(args.left), gen.named_graph(args.right)), f"{args.left} v {args.right}"
    if fam == "blowup":
        h = gen.named_graph(args.pattern)
        sizes = args.sizes if args.sizes else [args.size] * h.n
        return gen.blow_up(h, sizes)[0], f"blow-up of {args.pattern} with sizes {sizes}"
    if fam == "goddard-lyle":
        h = gen.named_graph(args.pattern)
        if args.eps is not None:
            a, b = gen.balanced_sizes(args.r, args.eps, h, min_n=args.min_n)
        else:
            a, b = args.apex_size, args.size
        g = gen.goddard_lyle(args.r, h, [a] * (args.r - 3), [b] * h.n)
        return g, f"K_{args.r - 3} (apex parts {a}) joined with {args.pattern} blown up by {b}"
    raise PreconditionError(f"unknown family {fam}")


def cmd_generate(args) -> int:
    g, desc = _generated(args)
    _emit(format_edgelist(g, desc), args.out)
    return EXIT_OK


# complete / extract / verify ----------------------------------------------

def cmd_complete(args) -> int:
    g = _read_graph(args.input)
    done = maximal_krfree_completion(g, args.r, order=args.order, seed=args.seed)
    extra = added_edges(g, done)
    _emit(format_edgelist(done, f"maximal K_{args.r}-free completion; {len(extra)} edges added"), args.out)
    print(f"added {len(extra)} edges", file=sys.stderr)
    return EXIT_OK


def cmd_extract(args) -> int:
    g = _read_graph(args.input)
    m_override = g.n if args.full_sample else args.m_override
    params = ExtractionParams(
        r=args.r, eps=args.eps, m_override=m_override, max_retries=args.max_retries,
        seed=args.seed, auto_complete=args.auto_complete, minimize=args.minimize,
    )
    try:
        report = extract(g, params)
    except RetriesExhausted as exc:
        return _fail(EXIT_RETRIES, {"error": "retries_exhausted", "message": str(exc), "diagnosis": exc.report})
    except HypothesisViolation as exc:
        return _fail(EXIT_HYPOTHESIS, {"error": "hypothesis_violation", "message": str(exc),
                                       "diagnosis": exc.report})
    _emit(report.dumps(), args.report_out)
    if args.report_out and args.report_out != "-":
        print(f"quotient on {report.quotient.n} vertices, {len(report.classes)} classes, "
              f"{report.retries_used} retries", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.input)
    try:
        data = json.loads(Path(args.report).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"report is not valid JSON: {exc}") from None
    result = verify_report(g, data)
    for name, ok, detail in result.checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail and not ok else ""))
    return EXIT_OK if result.ok else EXIT_VERIFY


# oracle / props -----------------------------------------------------------

def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    k_max = args.k_max if args.k_max is not None else g.n
    found = min_hom_image_bruteforce(g, args.r, k_max)
    if found is None:
        print(json.dumps({"k": None, "k_max": k_max}))
        return EXIT_HYPOTHESIS
    h, hom = found
    print(f"k={h.n}")
    print(json.dumps(hom.to_json(), sort_keys=True))
    return EXIT_OK


def cmd_props(args) -> int:
    g = _read_graph(args.input)
    s = run_proposition_suite(g, args.r, args.eps, random_sets=args.random_sets, seed=args.seed)
    print(f"{'check':<20}{'checked':>10}{'violations':>12}{'greedy_stuck':>14}")
    first = None
    for name, c in s.rows():
        print(f"{name:<20}{c.checked:>10}{c.violations:>12}{c.greedy_stuck:>14}")
        if first is None and c.first_counterexample is not None:
            first = (name, c.first_counterexample)
    if first is not None:
        print(f"first counterexample ({first[0]}): {json.dumps(first[1])}")
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_params(args) -> int:
    b = compute_params(args.r, args.eps)
    print(json.dumps({"m": b.m, "T_log2": b.t_log2, "L": b.l_symbolic}))
    return EXIT_OK


# sweep --------------------------------------------------------------------

SWEEP_HEADER = ["family", "n", "r", "eps", "m", "seed", "success", "retries", "quotient_size"]


def sweep_row(job) -> list:
    family, r, eps, m, seed, max_retries, minimize = job
    g = gen.named_graph(family)
    params = ExtractionParams(r=r, eps=eps, m_override=m, seed=seed,
                              max_retries=max_retries, minimize=minimize)
    try:
        rep = extract(g, params)
    except (RetriesExhausted, HypothesisViolation) as exc:
        return [family, g.n, r, str(eps), m, seed, 0, exc.report["attempts"] - 1, ""]
    return [family, g.n, r, str(eps), rep.m, seed, 1, rep.retries_used, rep.quotient.n]


def cmd_sweep(args) -> int:
    jobs = [
        (args.family, args.r, eps, m, seed, args.max_retries, args.minimize)
        for eps in args.eps
        for m in (args.m or [None])
        for seed in range(args.seed_start, args.seed_start + args.seeds)
    ]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(sweep_row, jobs))
    else:
        rows = [sweep_row(j) for j in jobs]
    fh = open(args.csv_out, "w", newline="") if args.csv_out and args.csv_out != "-" else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="krhom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a test graph as an edge list")
    g.add_argument("--out", default=None)
    fams = g.add_subparsers(dest="family", required=True)
    for name in ("cycle", "complete", "empty"):
        fams.add_parser(name).add_argument("n", type=int)
    p = fams.add_parser("turan")
    p.add_argument("n", type=int)
    p.add_argument("parts", type=int)
    fams.add_parser("andrasfai").add_argument("k", type=int)
    p = fams.add_parser("kneser")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    fams.add_parser("petersen")
    fams.add_parser("named").add_argument("name")
    p = fams.add_parser("join")
    p.add_argument("left")
    p.add_argument("right")
    p = fams.add_parser("blowup")
    p.add_argument("pattern")
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--sizes", type=int, nargs="+")
    p = fams.add_parser("goddard-lyle")
    p.add_argument("r", type=int)
    p.add_argument("pattern")
    p.add_argument("--apex-size", type=int, default=1)
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--eps", type=rational, help="solve for balanced sizes in F(r, eps)")
    p.add_argument("--min-n", type=int, default=1)
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("complete", help="maximal K_r-free completion")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", choices=["lex", "random"], default="lex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("extract", help="compute a bounded K_r-free homomorphic image")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=rational, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-override", type=int, default=None)
    p.add_argument("--full-sample", action="store_true", help="use X = V (same as --m-override n)")
    p.add_argument("--max-retries", type=int, default=50)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--auto-complete", action="store_true")
    p.add_argument("--report-out", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="independently re-check an extraction report")
    p.add_argument("input")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force minimum K_r-free homomorphic image (n <= 14)")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k-max", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("props", help="check the common-neighbourhood propositions exhaustively")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=rational, required=True)
    p.add_argument("--random-sets", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("params", help="sample size and size bounds for (r, eps)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=rational, required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("sweep", help="success rates and quotient sizes as CSV")
    p.add_argument("--family", required=True, help="named graph, e.g. 'C5*20'")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=rational, nargs="+", required=True)
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--seed-start", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=1)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv-out", default=None)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        return _fail(EXIT_HYPOTHESIS, {"error": "precondition", "message": str(exc)})
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
