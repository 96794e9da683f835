"""Rendering of tables and reports (markdown grid, JSON, CSV)."""

from __future__ import annotations

import csv
import io
import json

from .abelian import ORDER_8_GROUPS
from .subgroups import ISO_TYPES, IsoType
from .tau import BraceTable, PairClass, ResidueClass

GROUP_NAMES = {"8": "Z_8", "4x2": "Z_4xZ_2", "2x2x2": "Z_2xZ_2xZ_2"}
TYPE_NAMES = {
    IsoType.C8: "Z_8",
    IsoType.C4xC2: "Z_4xZ_2",
    IsoType.C2xC2xC2: "Z_2xZ_2xZ_2",
    IsoType.D8: "D_8",
    IsoType.Q8: "Q_8",
}


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    def line(cells):
        return "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"
    sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
    return "\n".join([line(header), sep] + [line(r) for r in rows]) + "\n"


def render_brace_table(table: BraceTable) -> str:
    """E down the side, F across the top, with row and column margins."""
    header = ["E \\ F"] + [TYPE_NAMES[t] for t in ISO_TYPES] + ["total"]
    rows = []
    for E in table.groups:
        rows.append(
            [GROUP_NAMES.get(E, E)]
            + [str(table.cells[(E, t)]) for t in ISO_TYPES]
            + [str(table.row_sums()[E])]
        )
    cols = table.column_sums()
    rows.append(["total"] + [str(cols[t]) for t in ISO_TYPES] + [f"**{table.total}**"])
    return f"Left braces of size 8p, {table.residue.label}\n\n" + _grid(header, rows)


def brace_table_from_dict(d: dict) -> BraceTable:
    residue = ResidueClass(d["residue_class"])
    cells = {}
    for E in (G.label for G in ORDER_8_GROUPS):
        for t in ISO_TYPES:
            cells[(E, t)] = d["cells"][E][t.value]
    return BraceTable(residue, cells)


def render_distribution(dist: dict[IsoType, int]) -> str:
    rows = [[TYPE_NAMES[t], str(n)] for t, n in dist.items()]
    return _grid(["Type", "Number"], rows)


def pair_row(c: PairClass, index: int) -> dict:
    H = c.subgroup.hol
    tau = c.representative
    return {
        "index": index,
        "E": c.group.label,
        "F": c.iso_type.value,
        "image_order": c.image_order,
        "kernel_order": c.kernel_order,
        "kernel_type": c.kernel_type,
        "orbit_size": c.orbit_size,
        "tau": {H.render(g): v for g, v in zip(c.subgroup.members, tau.values)},
    }
