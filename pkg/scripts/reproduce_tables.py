"""Write the brace count tables for the three residue classes of p mod 8.

Also prints where the computed table departs from the published one.

    python3 scripts/reproduce_tables.py [--out results]
"""

import argparse
import json
from pathlib import Path

from brace8p.abelian import ORDER_8_GROUPS
from brace8p.config import TableConfig, with_overrides
from brace8p.report import render_brace_table, render_csv, render_json
from brace8p.subgroups import ISO_TYPES
from brace8p.tau import ResidueClass, brace_table, report_rows

PUBLISHED = Path(__file__).resolve().parents[1] / "tests" / "golden" / "published_tables.json"


def diff_published(table, published):
    pub = published[table.residue.name]
    out = []
    for E in ORDER_8_GROUPS:
        for i, t in enumerate(ISO_TYPES):
            ours, theirs = table.cell(E, t), pub["cells"][E.label][i]
            if ours != theirs:
                out.append(f"  ({E.label}, {t.value}): computed {ours}, published {theirs}")
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args(argv)
    cfg = with_overrides(TableConfig(), out_dir=args.out)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    published = json.loads(PUBLISHED.read_text())

    for r in cfg.residues:
        residue = ResidueClass.from_residue(r)
        table = brace_table(residue)
        stem = cfg.out_dir / f"braces_{residue.name}"
        (stem.with_suffix(".md")).write_text(render_brace_table(table))
        (stem.with_suffix(".json")).write_text(render_json(table.to_dict()))
        (stem.with_suffix(".csv")).write_text(render_csv(report_rows(residue)))
        print(render_brace_table(table))
        diffs = diff_published(table, published)
        if diffs:
            print("differs from the published table at:")
            print("\n".join(diffs))
        print()


if __name__ == "__main__":
    main()
