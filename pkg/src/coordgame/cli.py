"""Command-line interface.

Subcommands wrap the library: ``census`` (equilibrium-partition catalogue),
``equilibria`` (classes of one graph), ``simulate`` (raw trajectories),
``basin`` (consensus basin estimate), ``sweep`` (grid experiment with CSV
output), and ``connectivity`` (exact connectedness probability). Identical
command, flags and seed produce byte-identical artifacts regardless of
--workers. Exit code 2 signals usage errors.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import catalogue, dynamics, experiments, formats
from .graphs import Graph
from .seeding import default_seed, substream


@contextmanager
def _open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fp:
            yield fp


def _parse_grid(spec: str) -> list[float]:
    """Either a comma list ("1,2.5,4") or lo:hi:count ("1:12:15")."""
    if ":" in spec:
        lo_s, hi_s, count_s = spec.split(":")
        lo, hi, count = float(lo_s), float(hi_s), int(count_s)
        if count < 1:
            raise ValueError("grid count must be >= 1")
        if count == 1:
            return [lo]
        stride = (hi - lo) / (count - 1)
        return [lo + i * stride for i in range(count)]
    return [float(tok) for tok in spec.split(",") if tok]


def _parse_ints(spec: str) -> list[int]:
    return [int(tok) for tok in spec.split(",") if tok]


def _graph_arg(text: str) -> Graph:
    return formats.parse_graph6(text)


def _cmd_census(args) -> int:
    summary = catalogue.build_census(args.max_n, workers=args.workers)
    with _open_out(args.output) as fp:
        fp.write(formats.census_to_json(summary))
    if args.classes_table:
        with open(args.classes_table, "w", newline="") as fp:
            formats.write_class_count_table(summary, fp)
    if args.parts_table:
        with open(args.parts_table, "w", newline="") as fp:
            formats.write_part_count_table(summary, fp)
    return 0


def _cmd_equilibria(args) -> int:
    g = _graph_arg(args.graph6)
    if not g.is_connected():
        raise ValueError("equilibria enumeration expects a connected graph")
    classes = catalogue.enumerate_equilibrium_partitions(g)
    with _open_out(args.output) as fp:
        if args.format == "dot":
            for vec in classes:
                fp.write(formats.emit_partition_dot(g, vec))
        else:
            import json

            fp.write(
                json.dumps(
                    {
                        "graph6": formats.emit_graph6(g),
                        "order": g.order,
                        "classes": [list(vec) for vec in classes],
                    },
                    indent=2,
                )
                + "\n"
            )
    return 0


def _cmd_simulate(args) -> int:
    import json

    g = _graph_arg(args.graph6)
    if args.init is not None:
        init = tuple(_parse_ints(args.init))
        if len(init) != g.order:
            raise ValueError(
                f"--init needs {g.order} entries, got {len(init)}"
            )
    else:
        init = None
    c = args.strategies if args.strategies is not None else g.order
    outcomes = []
    for trial in range(args.trials):
        rng = substream(args.seed, trial)
        start = init if init is not None else dynamics.random_profile(g, c, rng)
        outcome = dynamics.run(g, start, rng, args.max_steps, args.window)
        doc = formats.outcome_to_dict(outcome)
        doc["trial"] = trial
        doc["initial"] = list(start)
        outcomes.append(doc)
    with _open_out(args.output) as fp:
        fp.write(json.dumps(outcomes, indent=2) + "\n")
    return 0


def _cmd_basin(args) -> int:
    g = _graph_arg(args.graph6)
    est = experiments.estimate_basin(
        g,
        trials=args.trials,
        c=args.strategies,
        max_steps=args.max_steps,
        window=args.window,
        seed=args.seed,
    )
    with _open_out(args.output) as fp:
        fp.write(formats.basin_to_json(est))
    return 0


def _cmd_sweep(args) -> int:
    if (args.mean_degrees is None) == (args.densities is None):
        raise ValueError("give exactly one of --mean-degrees or --densities")
    if args.mean_degrees is not None:
        values = _parse_grid(args.mean_degrees)
        parameter = "mean_degree"
    else:
        values = _parse_grid(args.densities)
        parameter = "density"
    records = experiments.basin_sweep(
        orders=_parse_ints(args.orders),
        values=values,
        graphs_per_cell=args.graphs_per_cell,
        trials_per_graph=args.trials,
        c=args.strategies,
        seed=args.seed,
        parameter=parameter,
        connected_only=args.connected_only,
        max_steps=args.max_steps,
        window=args.window,
        workers=args.workers,
    )
    with _open_out(args.output) as fp:
        formats.write_sweep_csv(records, fp)
    if args.heatmap:
        cells = experiments.summarize_heatmap(records, bin_width=args.bin_width)
        with open(args.heatmap, "w", newline="") as fp:
            formats.write_heatmap_csv(cells, fp)
    return 0


def _cmd_connectivity(args) -> int:
    value = experiments.connectedness_probability(args.n, args.p)
    with _open_out(args.output) as fp:
        fp.write(formats.fmt_float(value) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coordgame",
        description="Coordination games with neutral options on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
        if seed:
            p.add_argument(
                "--seed",
                type=int,
                default=default_seed(),
                help="master RNG seed (env COORDGAME_SEED overrides the default)",
            )

    p = sub.add_parser("census", help="catalogue equilibrium partitions up to an order")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--classes-table", default=None, help="CSV: graphs by class count")
    p.add_argument("--parts-table", default=None, help="CSV: partitions by part count")
    common(p, seed=False)
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("equilibria", help="equilibrium partition classes of one graph")
    p.add_argument("--graph6", required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    common(p, seed=False)
    p.set_defaults(handler=_cmd_equilibria)

    p = sub.add_parser("simulate", help="run best-response trajectories on one graph")
    p.add_argument("--graph6", required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--init", default=None, help="comma-separated initial profile")
    p.add_argument("--strategies", type=int, default=None, help="strategy count (default: order)")
    p.add_argument("--max-steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
    p.add_argument("--window", type=int, default=dynamics.DEFAULT_WINDOW)
    common(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("basin", help="estimate the consensus basin of one graph")
    p.add_argument("--graph6", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--strategies", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
    p.add_argument("--window", type=int, default=dynamics.DEFAULT_WINDOW)
    common(p)
    p.set_defaults(handler=_cmd_basin)

    p = sub.add_parser("sweep", help="basin sweep over orders x connectivity grid")
    p.add_argument("--orders", required=True, help="comma list, e.g. 20,50")
    p.add_argument("--mean-degrees", default=None, help="comma list or lo:hi:count")
    p.add_argument("--densities", default=None, help="comma list or lo:hi:count")
    p.add_argument("--graphs-per-cell", type=int, required=True)
    p.add_argument("--trials", type=int, required=True, help="trials per graph")
    p.add_argument("--strategies", type=int, default=None)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--max-steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
    p.add_argument("--window", type=int, default=dynamics.DEFAULT_WINDOW)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--heatmap", default=None, help="also write a heatmap CSV here")
    p.add_argument("--bin-width", type=float, default=1.0)
    common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("connectivity", help="exact P(G(n, p) connected)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    common(p, seed=False)
    p.set_defaults(handler=_cmd_connectivity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"coordgame: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
