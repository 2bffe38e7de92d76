"""Command-line front end.

Exit codes: 0 the property holds at every requested degree, 1 it fails
somewhere, 2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from .complex import (
    BUILTIN_NAMES,
    FacetFileError,
    PseudomanifoldKind,
    builtin,
    dual_graph,
    format_facets,
    load,
    one_skeleton_graph,
    pseudomanifold_status,
)
from .gorenstein import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    IdealizedAlgebra,
    NotLevelError,
    even_cycle_presentation,
    wlp_tilde_degree,
)
from .graph import components, is_bipartite
from .lefschetz import (
    AlgebraModel,
    CriterionNotApplicable,
    DegreeVerdict,
    Method,
    WlpReport,
    classify,
    criterion_degree1,
    criterion_top_degree,
    cross_validate,
    socle,
    trivial_degree,
    wlp_full,
    wlp_in_degree_by_rank,
)
from .random_complexes import punctured_surfaces, random_complex, random_complexes

log = logging.getLogger("simplicial_wlp")

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_complex(args):
    if args.builtin and args.input:
        raise UsageError("give either an input file or --builtin, not both")
    if args.builtin:
        try:
            return builtin(args.builtin)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
    if args.input:
        try:
            return load(args.input)
        except FacetFileError as exc:
            raise UsageError(f"{args.input}: {exc}") from None
        except (OSError, ValueError) as exc:
            raise UsageError(f"{args.input}: {exc}") from None
    raise UsageError("an input file or --builtin NAME is required")


def _fmt(seq) -> str:
    return "(" + ",".join(map(str, seq)) + ")"


def cmd_info(args) -> int:
    cx = _load_complex(args)
    alg = AlgebraModel(cx)
    status = pseudomanifold_status(cx)
    soc = socle(alg)
    g = one_skeleton_graph(cx)
    summ = components(g)
    print(f"n: {cx.n}")
    print(f"dim: {cx.dim}")
    print(f"facets: {len(cx.facets)}")
    print(f"f-vector: {_fmt(cx.f_vector())}")
    print(f"Hilbert series: {alg.hilbert_series()}")
    print(f"pure: {'yes' if cx.is_pure() else 'no'}")
    line = f"pseudomanifold: {status.kind.value}"
    if status.kind is PseudomanifoldKind.WITH_BOUNDARY:
        line += f" ({len(status.boundary_ridges)} boundary ridges)"
    elif status.reason:
        line += f" ({status.reason})"
    print(line)
    print(f"socle degree: {soc.degree} ({'level' if soc.level else 'not level'})")
    print(f"1-skeleton: {g.vertex_count} vertices, {len(g.edges)} edges, "
          f"{len(summ.components)} components, b_G = {summ.bipartite_count}")
    if cx.is_pure():
        dg = dual_graph(cx)
        print(f"dual graph: {dg.vertex_count} vertices, {len(dg.edges)} edges, "
              f"{'bipartite' if is_bipartite(dg) else 'not bipartite'}")
    return EXIT_HOLDS


def _criterion_for(cx, alg, i: int) -> DegreeVerdict:
    if i == 0 or i == alg.top_degree:
        return trivial_degree(alg, i)
    deg1 = criterion_degree1(cx)
    if i == 1:
        return deg1
    if deg1.certificate.get("implies_all_degrees"):
        dim_from, dim_to = alg.dim(i), alg.dim(i + 1)
        return DegreeVerdict(i, dim_from, dim_to, classify(dim_to, dim_from, dim_to),
                             Method.PROPAGATED, dim_to, {"from_degree": 1})
    if i == cx.dim:
        return criterion_top_degree(cx)
    raise CriterionNotApplicable(f"no combinatorial criterion for degree {i}")


def _print_verdicts(verdicts, out=None):
    out = out or sys.stdout
    for v in verdicts:
        rank = "-" if v.rank is None else v.rank
        print(f"degree {v.degree}: {v.dim_from} -> {v.dim_to}  {v.verdict.value:17s} "
              f"[{v.method.value}, rank {rank}]", file=out)


def cmd_check(args) -> int:
    cx = _load_complex(args)
    alg = AlgebraModel(cx)
    top = alg.top_degree
    if args.degree is not None:
        if not 0 <= args.degree <= top:
            raise UsageError(f"degree {args.degree} outside 0..{top}")
        degrees = [args.degree]
    else:
        degrees = list(range(top + 1))

    primary: list[DegreeVerdict] = []
    disagreements = []
    full = wlp_full(alg, seed=args.seed) if args.method != "criterion" and args.degree is None else None
    for i in degrees:
        by_rank = None
        if args.method in ("rank", "both"):
            by_rank = full.by_degree(i) if full is not None else wlp_in_degree_by_rank(alg, i, args.seed)
        by_crit = None
        if args.method in ("criterion", "both"):
            try:
                by_crit = _criterion_for(cx, alg, i)
            except CriterionNotApplicable as exc:
                if args.method == "criterion" or args.degree is not None:
                    raise UsageError(str(exc)) from None
        if by_rank is not None and by_crit is not None and by_rank.verdict is not by_crit.verdict:
            disagreements.append((i, by_rank.verdict.value, by_crit.verdict.value))
        primary.append(by_rank if by_rank is not None else by_crit)
        if args.method == "both" and by_crit is not None and by_rank is not None:
            primary[-1].certificate = dict(primary[-1].certificate or {},
                                           criterion=by_crit.to_json())

    report = WlpReport(cx, primary)
    if args.json:
        payload = report.to_json()
        if args.method == "both":
            payload["disagreements"] = [list(d) for d in disagreements]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_verdicts(primary)
        print(f"WLP {'holds' if report.wlp else 'fails'} at the requested degrees")
        if args.method == "both":
            print("methods agree" if not disagreements else f"DISAGREEMENT: {disagreements}")
    if disagreements:
        log.error("rank and criterion disagree: %s", disagreements)
        return EXIT_INTERNAL
    return EXIT_HOLDS if report.wlp else EXIT_FAILS


def cmd_idealize(args) -> int:
    cx = _load_complex(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    try:
        alg = IdealizedAlgebra(AlgebraModel(cx))
    except NotLevelError as exc:
        raise UsageError(str(exc)) from None
    presentation = None
    if args.presentation:
        n = cx.n
        if n % 2 or n < 4 or cx != builtin(f"cycle({n})"):
            raise UsageError("--presentation is only available for even cycles on >= 4 vertices")
        presentation = even_cycle_presentation(n // 2)
    log.info("idealize seed=%d trials=%d", args.seed, args.trials)
    verdicts = [wlp_tilde_degree(alg, i, trials=args.trials, seed=args.seed)
                for i in range(alg.d + 1)]
    holds = all(v.holds for v in verdicts)
    if args.json:
        payload = {"schema": 1, "hilbert_function": list(alg.hilbert_function()),
                   "socle_degree": alg.d + 1, "degrees": [v.to_json() for v in verdicts],
                   "wlp": holds}
        if presentation is not None:
            payload["presentation"] = [str(g) for g in presentation.generators]
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"Hilbert function: {_fmt(alg.hilbert_function())}")
        print(f"random forms: {args.trials} trials, seed {args.seed}")
        for v in verdicts:
            print(f"degree {v.degree}: {v.dim_from} -> {v.dim_to}  {v.verdict:5s} "
                  f"(max rank {v.max_rank}, {v.confidence})")
        if presentation is not None:
            print(f"# {len(presentation.generators)} generators in "
                  f"{', '.join(presentation.variables)}")
            sys.stdout.write(presentation.to_text())
    return EXIT_HOLDS if holds else EXIT_FAILS


def cmd_generate(args) -> int:
    if args.kind == "punctured-surface":
        cxs = punctured_surfaces(args.count, args.seed)
    else:
        rng = random.Random(args.seed)
        cxs = [random_complex(rng, args.max_vertices) for _ in range(args.count)]
    for k, cx in enumerate(cxs):
        if k:
            print()
        print(f"# complex {k} (seed {args.seed})")
        sys.stdout.write(format_facets(cx))
    return EXIT_HOLDS


def cmd_validate(args) -> int:
    start = time.perf_counter()
    log.info("validate seed=%d count=%d max-vertices=%d", args.seed, args.count, args.max_vertices)
    cxs = random_complexes(args.count, args.seed, args.max_vertices)
    checks = 0
    failures = []
    for cx in cxs:
        cv = cross_validate(cx)
        checks += len(cv.checks)
        if not cv.ok:
            failures.append((cx, cv.disagreements))
    elapsed = time.perf_counter() - start
    print(f"complexes: {len(cxs)}  checks: {checks}  disagreements: {len(failures)}  "
          f"seed: {args.seed}  time: {elapsed:.2f}s")
    for cx, msgs in failures:
        print(f"  {cx!r}: {'; '.join(msgs)}")
    return EXIT_INTERNAL if failures else EXIT_HOLDS


def _add_input(p):
    p.add_argument("input", nargs="?", help="facet file")
    p.add_argument("--builtin", metavar="NAME",
                   help=f"named complex: {', '.join(BUILTIN_NAMES)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplicial-wlp",
        description="Weak Lefschetz Property of Artinian algebras from simplicial complexes.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="combinatorial summary of a complex")
    _add_input(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", help="decide WLP of A(complex)")
    _add_input(p)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--degree", type=int)
    which.add_argument("--all", action="store_true", help="every degree (default)")
    p.add_argument("--method", choices=("rank", "criterion", "both"), default="rank")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=None, help="seed for the modular rank prefilter")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("idealize", help="WLP of the Nagata idealization")
    _add_input(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--presentation", action="store_true",
                   help="print the quadric presentation (even cycles only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_idealize)

    p = sub.add_parser("generate", help="print random complexes in facet-file format")
    p.add_argument("--kind", choices=("random", "punctured-surface"), default="random")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="cross-validate rank against the criteria")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CriterionNotApplicable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, ArithmeticError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
