"""Serialization: graph6, DOT, and the CSV/JSON artifact formats.

graph6 follows the standard encoding: a size header (one byte for n <= 62,
'~' plus three bytes for larger n), then the upper adjacency triangle in
column order, packed six bits per printable character offset by 63. All CSV
output uses a fixed column order, a header row, '\n' line endings, and floats
at 17 significant digits.
"""

from __future__ import annotations

import csv
import json
from typing import Sequence

from .catalogue import CensusSummary
from .experiments import BasinEstimate, HeatmapCell, SweepRecord
from .graphs import Graph

G6_MAX_ORDER = 258_047


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the failing byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _triangle_bits(g: Graph):
    for j in range(1, g.order):
        for i in range(j):
            yield g.masks[i] >> j & 1


def emit_graph6(g: Graph) -> str:
    if g.order > G6_MAX_ORDER:
        raise ValueError(f"graph6 supports at most {G6_MAX_ORDER} vertices")
    n = g.order
    if n <= 62:
        head = chr(63 + n)
    else:
        head = "~" + "".join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))
    chars = []
    group = 0
    width = 0
    for bit in _triangle_bits(g):
        group = group << 1 | bit
        width += 1
        if width == 6:
            chars.append(chr(63 + group))
            group = width = 0
    if width:
        chars.append(chr(63 + (group << (6 - width))))
    return head + "".join(chars)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (optional '>>graph6<<' prefix tolerated)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    data = [ord(ch) - 63 for ch in s]
    for pos, val in enumerate(data):
        if not 0 <= val <= 63:
            raise Graph6Error(f"invalid graph6 character {s[pos]!r}", pos)
    if data[0] <= 62:
        n = data[0]
        body = data[1:]
        head_len = 1
    else:
        if len(data) < 4:
            raise Graph6Error("truncated extended size header", len(data))
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
        head_len = 4
    if n < 1:
        raise Graph6Error(f"graph6 order {n} out of range", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error(
            f"payload too short: need {need} characters, got {len(body)}",
            head_len + len(body),
        )
    if len(body) > need:
        raise Graph6Error("trailing characters after graph6 payload", head_len + need)
    masks = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if body[bit // 6] >> (5 - bit % 6) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            bit += 1
    return Graph(n, masks)


def emit_partition_dot(g: Graph, labels: Sequence[int]) -> str:
    """Undirected DOT with one dashed cluster per part."""
    if len(labels) != g.order:
        raise ValueError("labels must cover every vertex")
    lines = ["graph {"]
    for lab in sorted(set(labels)):
        lines.append(f"  subgraph cluster_{lab} {{")
        lines.append("    style=dashed;")
        for v in range(g.order):
            if labels[v] == lab:
                lines.append(f"    v{v};")
        lines.append("  }")
    for u, v in g.edges():
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- floats and CSV conventions ----------------------------------------------

def fmt_float(x: float) -> str:
    return format(x, ".17g")


SWEEP_COLUMNS = (
    "graph_seed",
    "n",
    "edges",
    "edge_density",
    "mean_degree",
    "trial",
    "outcome",
    "cluster_number",
    "steps",
    "period",
)


def write_sweep_csv(records: Sequence[SweepRecord], fp) -> None:
    w = csv.writer(fp, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in records:
        w.writerow(
            (
                r.graph_seed,
                r.order,
                r.edges,
                fmt_float(r.edge_density),
                fmt_float(r.mean_degree),
                r.trial,
                r.outcome,
                r.cluster_number,
                r.steps,
                r.period,
            )
        )


HEATMAP_COLUMNS = (
    "n",
    "degree_low",
    "degree_high",
    "count",
    "equilibrium_frequency",
    "mean_cluster_number",
)


def write_heatmap_csv(cells: Sequence[HeatmapCell], fp) -> None:
    w = csv.writer(fp, lineterminator="\n")
    w.writerow(HEATMAP_COLUMNS)
    for cell in cells:
        w.writerow(
            (
                cell.order,
                fmt_float(cell.degree_low),
                fmt_float(cell.degree_high),
                cell.count,
                fmt_float(cell.equilibrium_frequency),
                fmt_float(cell.mean_cluster_number),
            )
        )


# -- census artifacts ---------------------------------------------------------

def census_to_json(summary: CensusSummary) -> str:
    doc = {
        "max_order": summary.max_order,
        "graphs": [
            {
                "order": e.graph.order,
                "graph6": emit_graph6(e.graph),
                "classes": [list(vec) for vec in e.classes],
            }
            for e in summary.entries
        ],
        "graphs_by_class_count": {
            str(n): row for n, row in summary.graphs_by_class_count().items()
        },
        "partitions_by_part_count": {
            str(n): row for n, row in summary.partitions_by_part_count().items()
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def write_class_count_table(summary: CensusSummary, fp) -> None:
    """Rows: per graph order, how many graphs admit k partition classes."""
    rows = summary.graphs_by_class_count()
    width = len(rows[1])
    w = csv.writer(fp, lineterminator="\n")
    w.writerow(["graph_size"] + [str(k) for k in range(1, width + 1)])
    for n in sorted(rows):
        w.writerow([n] + rows[n])
    w.writerow(["total"] + summary.class_count_totals())


def write_part_count_table(summary: CensusSummary, fp) -> None:
    """Rows: per graph order, how many partition classes have d parts."""
    rows = summary.partitions_by_part_count()
    width = len(rows[1])
    w = csv.writer(fp, lineterminator="\n")
    w.writerow(["graph_size"] + [str(d) for d in range(1, width + 1)])
    for n in sorted(rows):
        w.writerow([n] + rows[n])
    w.writerow(["total"] + summary.part_count_totals())


# -- misc JSON ----------------------------------------------------------------

def basin_to_json(est: BasinEstimate) -> str:
    doc = {
        "trials": est.trials,
        "consensus_fraction": est.consensus_fraction,
        "stderr": est.stderr,
        "outcome_histogram": est.outcome_histogram,
        "component_count": est.component_count,
    }
    if est.consensus_predictions is not None:
        doc["consensus_predictions"] = est.consensus_predictions
    return json.dumps(doc, indent=2) + "\n"


def outcome_to_dict(outcome) -> dict:
    doc = {
        "kind": outcome.kind,
        "steps": outcome.steps,
        "cluster_number": outcome.cluster_number,
    }
    if outcome.partition is not None:
        doc["partition"] = list(outcome.partition.to_labels())
    if outcome.kind == "cycle":
        doc["period"] = outcome.period
        doc["deterministic"] = outcome.deterministic
        if outcome.false_positive_bound is not None:
            doc["false_positive_bound"] = outcome.false_positive_bound
    return doc
