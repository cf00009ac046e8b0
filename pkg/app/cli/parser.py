import argparse


def _int_list(text: str) -> list[int]:
    """`4,4` and `4` both parse; empty pieces are skipped."""
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _ExtendInts(argparse.Action):
    """Flatten `--cycles 4,4 5` into [4, 4, 5]."""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, [n for chunk in values for n in chunk])


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON document (or graph) to this file")
    common.add_argument("--json", action="store_true", help="print the JSON document instead of the summary")
    common.add_argument("--jobs", type=int, help="worker threads for certification and exact coloring")
    common.add_argument("--budget", type=float, help="exact-solver time limit in seconds (0 = unlimited)")
    common.add_argument("--seed", type=int, help="seed for randomized corpora")
    common.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="re-derive exact witnesses sequentially so they do not depend on --jobs",
    )
    return common


def _graph_input(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", nargs="?", default="-", help="Graph JSON or edge list (default: stdin)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="pmchrom",
        description="Construct, certify and color discrete pseudomanifolds.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser("construct", parents=[common], help="build a graph")
    construct.add_argument(
        "kind", choices=["sphere", "cross-polytope", "cycle", "complete", "wheel", "path"],
    )
    construct.add_argument(
        "--cycles", type=_int_list, nargs="+", action=_ExtendInts, default=[],
        help="sphere cycle lengths (each >= 4), comma- or space-separated",
    )
    construct.add_argument("--suspend", type=int, default=0, help="number of S^0 factors after the cycles")
    construct.add_argument("--k", type=int, help="cross-polytope dimension")
    construct.add_argument("--n", type=int, help="vertex count for cycle, complete, wheel rim and path")

    join = commands.add_parser("join", parents=[common], help="Zykov join of two graphs")
    join.add_argument("left")
    join.add_argument("right")

    product = commands.add_parser("product", parents=[common], help="Cartesian simplex product")
    product.add_argument("left")
    product.add_argument("right")

    refine = commands.add_parser("refine", parents=[common], help="Barycentric refinement")
    _graph_input(refine)

    verify = commands.add_parser("verify", parents=[common], help="certify a d-pseudomanifold")
    _graph_input(verify)
    verify.add_argument("--dim", type=int, help="target dimension (default: clique dimension)")

    chromatic = commands.add_parser("chromatic", parents=[common], help="chromatic number")
    _graph_input(chromatic)
    chromatic.add_argument("--exact", action="store_true", help="run the exact solver instead of the bound interval")

    color = commands.add_parser("color", parents=[common], help="vertex coloring")
    _graph_input(color)
    color.add_argument("--method", choices=["exact", "greedy", "dsatur", "forest"], default="exact")
    color.add_argument("--order", nargs="+", help="vertex order for --method greedy (default: label order)")

    dual = commands.add_parser("dual", parents=[common], help="facet dual graph")
    _graph_input(dual)
    dual.add_argument("--peel", choices=["bfs", "dfs"], help="print the forest peel of the dual graph instead")

    codual = commands.add_parser("codual", parents=[common], help="complementary dual of a vertex set")
    _graph_input(codual)
    codual.add_argument("--vertices", nargs="*", default=[], required=True)
    codual.add_argument("--classify", action="store_true", help="print the classification instead of the graph")

    fisk = commands.add_parser("fisk", parents=[common], help="Fisk variety")
    _graph_input(fisk)
    fisk.add_argument("--join-check", metavar="OTHER", help="compare both sides of the join formula with OTHER")

    bounds = commands.add_parser("bounds", parents=[common], help="chromatic bounds report")
    _graph_input(bounds)
    bounds.add_argument(
        "--sphere-spec", type=_int_list, nargs="+", action=_ExtendInts,
        help="cycle lengths of the sphere factor, comma- or space-separated",
    )
    bounds.add_argument("--sphere-suspend", type=int, default=0)
    bounds.add_argument("--remainder", help="graph file of the remainder K'")

    report = commands.add_parser("report", parents=[common], help="reproduction reports")
    report.add_argument("topic", choices=["table1", "predictions", "product", "probe"])
    report.add_argument("--count", type=int, default=5, help="random joins added to the probe corpus")

    return parser
