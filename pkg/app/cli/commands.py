"""
Command handlers for the `pmchrom` CLI.

Graph-producing commands write canonical Graph JSON (stdout or -o).
Analysis commands print a summary on stdout; -o writes their JSON document
to a file and --json prints it in place of the summary.

Exit codes: 0 success, 1 semantic negative, 2 input or usage error.
"""

import sys
from argparse import Namespace

from pydantic import BaseModel, TypeAdapter

from app.analyser.arithmetic import (
    barycentric_refinement,
    cartesian_simplex_product,
    cross_polytope,
    product_closure_report,
    sphere_from_spec,
    zykov_join,
)
from app.analyser.coloring import (
    chromatic_number_exact,
    dsatur_coloring,
    forest_coloring,
    greedy_coloring,
    verify_coloring,
)
from app.analyser.duality import (
    classify_complementary_dual,
    complementary_dual,
    dual_graph,
    fisk_join_check,
    fisk_variety,
    forest_peel,
)
from app.analyser.graph_core import (
    complete_graph,
    cycle_graph,
    dimension,
    path_graph,
    wheel_graph,
)
from app.analyser.recognition import describe_witness, is_pseudomanifold
from app.cli.parser import build_parser
from app.core.config import get_config
from app.core.errors import PseudomanifoldInputError
from app.core.logger_config import get_logger
from app.service.bounds_service import (
    SphereDecomposition,
    check_bounds,
    probe_corpus,
    table1_report,
    verify_sphere_prediction,
)
from app.service.corpus_service import pseudomanifold_corpus, random_join_corpus
from app.store.graph_io import read_graph, to_document, write_graph, write_text
from app.store.models import (
    BoundsReport,
    ChromaticValue,
    DualClassDocument,
    FiskDocument,
    FiskJoinDocument,
    ForestPeelDocument,
    ProbeRow,
    ProductClosureReport,
    SphereSpec,
    SpherePrediction,
)

logger = get_logger(__name__)

# Sphere specs the predictions report walks through: (cycles, suspensions)
PREDICTION_SPECS = (([4], 0), ([5], 0), ([4], 1), ([5], 1), ([4, 4], 0), ([5, 5], 0), ([4, 4], 1))
PRODUCT_PAIRS = ((4, 4), (4, 5))


def _dump(document: BaseModel | list) -> str:
    if isinstance(document, BaseModel):
        return document.model_dump_json(indent=2) + "\n"
    item_type = type(document[0]) if document else BaseModel
    return TypeAdapter(list[item_type]).dump_json(document, indent=2).decode() + "\n"


def _emit(args: Namespace, document: BaseModel | list, summary: str) -> None:
    text = _dump(document)
    if args.output:
        write_text(text, args.output)
    if args.json:
        write_text(text)
    else:
        write_text(summary.rstrip("\n") + "\n")


# ============================================================
# Graph-producing commands
# ============================================================

def cmd_construct(args: Namespace) -> int:
    if args.kind == "sphere":
        graph = sphere_from_spec(SphereSpec(cycle_lengths=args.cycles, suspension_count=args.suspend))
    elif args.kind == "cross-polytope":
        if args.k is None:
            raise PseudomanifoldInputError("construct cross-polytope needs --k")
        graph = cross_polytope(args.k)
    else:
        if args.n is None:
            raise PseudomanifoldInputError(f"construct {args.kind} needs --n")
        builders = {"cycle": cycle_graph, "complete": complete_graph, "wheel": wheel_graph, "path": path_graph}
        graph = builders[args.kind](args.n)
    write_graph(graph, args.output)
    return 0


def cmd_join(args: Namespace) -> int:
    write_graph(zykov_join(read_graph(args.left), read_graph(args.right)), args.output)
    return 0


def cmd_product(args: Namespace) -> int:
    write_graph(cartesian_simplex_product(read_graph(args.left), read_graph(args.right)), args.output)
    return 0


def cmd_refine(args: Namespace) -> int:
    write_graph(barycentric_refinement(read_graph(args.input)), args.output)
    return 0


def cmd_dual(args: Namespace) -> int:
    D = dual_graph(read_graph(args.input))
    if args.peel is None:
        write_graph(D.to_graph(), args.output)
        return 0
    peel = forest_peel(D, strategy=args.peel)
    document = ForestPeelDocument(
        strategy=args.peel,
        facets=[f.label for f in D.facets],
        forests=[list(forest) for forest in peel.forests],
    )
    summary = f"{len(D.facets)} facets, {len(D.adjacency)} dual edges\n"
    summary += f"{len(peel.forests)} forests ({args.peel}): sizes " + " ".join(str(s) for s in peel.sizes)
    _emit(args, document, summary)
    return 0


def cmd_codual(args: Namespace) -> int:
    graph = read_graph(args.input)
    if not args.classify:
        write_graph(complementary_dual(graph, args.vertices), args.output)
        return 0
    result = classify_complementary_dual(graph, args.vertices)
    document = DualClassDocument(
        kind=result.kind.value, dimension=result.dimension, apex=result.apex, subgraph=to_document(result.subgraph),
    )
    summary = result.kind.value
    if result.dimension is not None:
        summary += f" (dimension {result.dimension}" + (f", apex {result.apex})" if result.apex else ")")
    _emit(args, document, summary)
    return 0


# ============================================================
# Analysis commands
# ============================================================

def cmd_verify(args: Namespace) -> int:
    graph = read_graph(args.input)
    d = dimension(graph) if args.dim is None else args.dim
    certificate = is_pseudomanifold(graph, d, jobs=args.jobs)
    if certificate.accepted:
        summary = f"accept: {graph.order} vertices certified at d={d}"
    else:
        summary = f"reject at d={d}: {describe_witness(graph, certificate)}"
    _emit(args, certificate, summary)
    return 0 if certificate.accepted else 1


def cmd_chromatic(args: Namespace) -> int:
    graph = read_graph(args.input)
    if args.exact:
        result = chromatic_number_exact(graph, budget=args.budget, jobs=args.jobs, deterministic=args.deterministic)
        lower, upper = result.lower, result.upper
    else:
        lower, upper = dimension(graph) + 1, dsatur_coloring(graph).palette_size
    exact = lower if lower == upper else None
    document = ChromaticValue(exact=exact, lower=lower, upper=upper)
    summary = str(exact) if exact is not None else f"{lower}..{upper}"
    _emit(args, document, summary)
    return 0 if exact is not None or not args.exact else 1


def cmd_color(args: Namespace) -> int:
    graph = read_graph(args.input)
    exact_missed = False
    if args.method == "exact":
        result = chromatic_number_exact(graph, budget=args.budget, jobs=args.jobs, deterministic=args.deterministic)
        coloring, exact_missed = result.coloring, result.timed_out
    elif args.method == "greedy":
        coloring = greedy_coloring(graph, args.order or list(graph.vertices))
    elif args.method == "dsatur":
        coloring = dsatur_coloring(graph)
    else:
        coloring = forest_coloring(graph, is_pseudomanifold(graph, dimension(graph), jobs=args.jobs))
    proper = verify_coloring(graph, coloring)
    lines = [f"{coloring.palette_size} colors ({args.method}), proper: {'yes' if proper else 'no'}"]
    if exact_missed:
        lines.append("budget exhausted: palette is an upper bound")
    lines += [f"{v} {c}" for v, c in sorted(coloring.assignment.items())]
    _emit(args, coloring, "\n".join(lines))
    return 0 if proper and not exact_missed else 1


def cmd_fisk(args: Namespace) -> int:
    graph = read_graph(args.input)
    if args.join_check:
        check = fisk_join_check(graph, read_graph(args.join_check))
        document = FiskJoinDocument(left=to_document(check.left), right=to_document(check.right), agree=check.agree)
        summary = (
            f"O(K + K'): {check.left.order} vertices, {check.left.size} edges\n"
            f"K + O(K') u O(K) + K': {check.right.order} vertices, {check.right.size} edges\n"
            f"agree: {'yes' if check.agree else 'no'}"
        )
        _emit(args, document, summary)
        return 0 if check.agree else 1

    variety = fisk_variety(graph)
    document = FiskDocument(odd_simplices=[x.label for x in variety.odd_simplices], subgraph=to_document(variety.subgraph))
    lines = [
        f"{len(variety.odd_simplices)} odd simplices at d={variety.dimension}; "
        f"generated subgraph: {variety.subgraph.order} vertices, {variety.subgraph.size} edges"
    ]
    lines += [x.label for x in variety.odd_simplices]
    _emit(args, document, "\n".join(lines))
    return 0


def _bound_lines(report: BoundsReport) -> list[str]:
    value = report.chromatic
    lines = [f"d = {report.dimension}", f"X = {value.exact}" if value.exact is not None else f"X in [{value.lower}, {value.upper}]"]
    for b in report.applicable_bounds + report.conjecture_probes:
        verdict = {True: "holds", False: "FAILS", None: "undecided"}[b.holds]
        lines.append(f"{b.name} ({b.source}): X {b.relation} {b.value} {verdict}")
    return lines


def cmd_bounds(args: Namespace) -> int:
    graph = read_graph(args.input)
    decomposition = None
    if args.sphere_spec:
        if not args.remainder:
            raise PseudomanifoldInputError("--sphere-spec needs --remainder")
        spec = SphereSpec(cycle_lengths=args.sphere_spec, suspension_count=args.sphere_suspend)
        decomposition = SphereDecomposition(spec, read_graph(args.remainder))
    report = check_bounds(graph, decomposition=decomposition, budget=args.budget, jobs=args.jobs)
    _emit(args, report, "\n".join(_bound_lines(report)))
    return 0 if report.all_hold else 1


def _report_table1(args: Namespace) -> int:
    report = table1_report(budget=args.budget, jobs=args.jobs)
    header = ("d", "k", "S^k", "dim K'", "X(S^k)", "X(K')max", "X(K)max", "X(K)", "exact X(S^k)", "2(d-k)")
    rows = [
        (r.d, r.k, r.sphere, r.remainder_dimension, r.sphere_chromatic, r.remainder_chromatic_max,
         r.chromatic_max, r.ceiling, "?" if r.recomputed_sphere_chromatic is None else r.recomputed_sphere_chromatic,
         r.caption_remainder_max)
        for r in report.rows
    ]
    widths = [max(len(str(row[i])) for row in (header, *rows)) for i in range(len(header))]
    lines = ["  ".join(str(cell).rjust(w) for cell, w in zip(row, widths)) for row in (header, *rows)]
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, report, "\n".join(lines))
    return 0


def _report_predictions(args: Namespace) -> int:
    predictions: list[SpherePrediction] = []
    for cycles, suspensions in PREDICTION_SPECS:
        spec = SphereSpec(cycle_lengths=cycles, suspension_count=suspensions)
        predictions.append(verify_sphere_prediction(spec, budget=args.budget, jobs=args.jobs))
    lines = []
    for p in predictions:
        name = "+".join(f"C{n}" for n in p.spec.cycle_lengths) + "+S0" * p.spec.suspension_count
        flag = " DIVERGENT" if p.divergent else ""
        lines.append(f"{name} (k={p.dimension}, {p.parity}): printed {p.printed_value}, "
                     f"proof trace {p.proof_trace_value}, exact {p.exact_value}{flag}")
    _emit(args, predictions, "\n".join(lines))
    return 0


def _report_product(args: Namespace) -> int:
    reports: list[ProductClosureReport] = [
        product_closure_report(cycle_graph(m, prefix="a"), cycle_graph(n, prefix="b")) for m, n in PRODUCT_PAIRS
    ]
    lines = [
        f"(C{m} x C{n})_1: {r.product_vertices} vertices, certified at {r.certified_dimension}, "
        f"claimed {r.left_dimension + r.right_dimension + 1}" + (" DISCREPANCY" if r.discrepancy else "")
        for (m, n), r in zip(PRODUCT_PAIRS, reports)
    ]
    _emit(args, reports, "\n".join(lines))
    return 0


def _report_probe(args: Namespace) -> int:
    entries = pseudomanifold_corpus() + random_join_corpus(seed=args.seed, count=args.count)
    rows: list[ProbeRow] = probe_corpus(entries, budget=args.budget, jobs=args.jobs)
    lines = []
    for row in rows:
        value = row.report.chromatic
        x = value.exact if value.exact is not None else f"[{value.lower}, {value.upper}]"
        failing = [b.name for b in row.report.applicable_bounds if b.holds is False]
        lines.append(f"{row.name}: d={row.report.dimension} X={x} forest={row.forest_palette}"
                     + (f" FAILS {failing}" if failing else ""))
    _emit(args, rows, "\n".join(lines))
    return 0 if all(row.report.all_hold for row in rows) else 1


def cmd_report(args: Namespace) -> int:
    handlers = {
        "table1": _report_table1,
        "predictions": _report_predictions,
        "product": _report_product,
        "probe": _report_probe,
    }
    return handlers[args.topic](args)


HANDLERS = {
    "construct": cmd_construct,
    "join": cmd_join,
    "product": cmd_product,
    "refine": cmd_refine,
    "verify": cmd_verify,
    "chromatic": cmd_chromatic,
    "color": cmd_color,
    "dual": cmd_dual,
    "codual": cmd_codual,
    "fisk": cmd_fisk,
    "bounds": cmd_bounds,
    "report": cmd_report,
}


def _apply_config(args: Namespace) -> None:
    """Fill unset global flags from the PM_ settings."""
    config = get_config()
    args.jobs = args.jobs if args.jobs is not None else config.jobs
    budget = args.budget if args.budget is not None else config.time_budget_secs
    args.budget = budget if budget > 0 else None
    args.seed = args.seed if args.seed is not None else config.seed
    args.deterministic = args.deterministic if args.deterministic is not None else config.deterministic


def run(argv: list[str] | None = None) -> int:
    """Parse argv, dispatch, and map failures onto the exit-code contract."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        _apply_config(args)
        return HANDLERS[args.command](args)
    except ValueError as e:
        # PseudomanifoldInputError and pydantic ValidationError both land here
        logger.error("%s failed: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception("%s crashed", args.command)
        print(f"error: internal failure in {args.command}: {e!r}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
