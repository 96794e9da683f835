"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .abelian import Z8, parse_group
from .errors import CapacityError, UnsupportedPrimeError
from .holomorph import holomorph
from .oracle import DEFAULT_ALLOWLIST, HolN, are_conjugate_N, cross_check, embed_as_codes
from .report import (
    GROUP_NAMES,
    pair_row,
    render_brace_table,
    render_csv,
    render_distribution,
    render_json,
)
from .subgroups import class_distribution, closure, iso_type, regular_classes
from .tau import ResidueClass, brace_table, check_prime, embed_pair, find_tau, pair_orbits, report_rows

SUPPORTED_GROUPS = ("8", "4x2", "2x2x2")


class UsageError(Exception):
    pass


def _group(text: str):
    E = parse_group(text)
    if E.label not in SUPPORTED_GROUPS:
        raise UsageError(f"unsupported group {text!r}; choose from {', '.join(SUPPORTED_GROUPS)}")
    return E


def cmd_classify(args) -> tuple[str, int]:
    residue = ResidueClass.from_residue(args.residue)
    table = brace_table(residue)
    if args.format == "json":
        return render_json({"table": table.to_dict(), "rows": report_rows(residue)}), 0
    if args.format == "csv":
        return render_csv(report_rows(residue)), 0
    return render_brace_table(table), 0


def cmd_holomorph(args) -> tuple[str, int]:
    E = _group(args.group)
    classes = regular_classes(E)
    dist = class_distribution(E)
    if args.format == "json":
        payload = {
            "E": E.label,
            "classes": [
                {
                    "iso_type": iso_type(c.representative).value,
                    "orbit_size": c.size,
                    "members": [c.representative.hol.render(g) for g in c.representative.members],
                }
                for c in classes
            ],
            "distribution": {t.value: n for t, n in dist.items()},
        }
        return render_json(payload), 0
    if args.format == "csv":
        rows = [{"E": E.label, "class": i, "iso_type": iso_type(c.representative).value,
                 "orbit_size": c.size} for i, c in enumerate(classes)]
        return render_csv(rows), 0
    out = [f"Hol({GROUP_NAMES[E.label]}): {len(classes)} conjugacy classes of regular subgroups\n"]
    for i, c in enumerate(classes):
        out.append(f"\n[{i}] {iso_type(c.representative).value}, orbit length {c.size}\n")
        out.append("".join("    " + line + "\n" for line in c.representative.dump().splitlines()))
    out.append("\n" + render_distribution(dist))
    return "".join(out), 0


def cmd_pairs(args) -> tuple[str, int]:
    E = _group(args.group)
    residue = ResidueClass.from_residue(args.residue) if args.residue else None
    rows = []
    for i, c in enumerate(pair_orbits(E)):
        if residue is not None and c.image_order > residue.max_image_order:
            continue
        rows.append(pair_row(c, i))
    if args.format == "json":
        return render_json(rows), 0
    if args.format == "csv":
        flat = [{**r, "tau": ";".join(f"{k}={v}" for k, v in r["tau"].items())} for r in rows]
        return render_csv(flat), 0
    lines = [f"{len(rows)} pair orbits (F, tau) for E = {GROUP_NAMES[E.label]}\n"]
    for r in rows:
        lines.append(
            f"[{r['index']}] F={r['F']} d={r['image_order']} kernel={r['kernel_order']}"
            f" ({r['kernel_type']}) orbit={r['orbit_size']}\n"
        )
    return "".join(lines), 0


def _allowlist(text: str | None) -> tuple[int, ...]:
    if not text:
        return DEFAULT_ALLOWLIST
    return tuple(int(t) for t in text.split(","))


def cmd_oracle(args) -> tuple[str, int]:
    check_prime(args.p)
    if args.p not in _allowlist(args.allowlist):
        raise CapacityError(f"p={args.p} is not on the oracle allowlist")
    groups = [_group(g) for g in args.groups.split(",")]
    reports = cross_check(args.p, groups, workers=args.workers)
    ok = all(r["match"] for r in reports)
    if args.format == "json":
        text = render_json(reports)
    elif args.format == "csv":
        text = render_csv([{k: r[k] for k in ("p", "E", "oracle_classes", "predicted", "match")}
                           for r in reports])
    else:
        text = "".join(
            f"p={r['p']} E={r['E']}: oracle {r['oracle_classes']}, predicted {r['predicted']}"
            f" -> {'match' if r['match'] else 'MISMATCH ' + ', '.join(r['mismatches'])}\n"
            for r in reports
        )
    return text, 0 if ok else 1


def _render_4tuple(p: int, t) -> str:
    m, k, a, s = t
    H = holomorph(Z8)
    k_txt = "-1" if k == p - 1 else str(k)
    a_txt, s_txt = H.render(H.code(a, s))[1:-1].split(", ")
    return f"(m, {k_txt}, {a_txt}, {s_txt})"


def example1(p: int = 5):
    """F = <(2,5)> x <(1,7)> in Hol(Z_8) with the characters killing <(2,5)> and <(7,3)>."""
    H = holomorph(Z8)
    f4, f2 = H.parse("(2, 5)"), H.parse("(1, 7)")
    F = closure(H, [f4, f2])
    tau1 = find_tau(F, closure(H, [f4]).members, image_order=2)
    tau2 = find_tau(F, closure(H, [H.mul(f4, f2)]).members, image_order=2)
    G1 = embed_pair(p, tau1, zeta=p - 1)
    G2 = embed_pair(p, tau2, zeta=p - 1)
    return F, tau1, tau2, G1, G2


def cmd_example1(args) -> tuple[str, int]:
    p = args.p
    check_prime(p)
    F, tau1, tau2, G1, G2 = example1(p)
    N = HolN(p, Z8)
    conj = are_conjugate_N(N, embed_as_codes(p, Z8, G1), embed_as_codes(p, Z8, G2))
    out = [f"F = <(2, 5)> x <(1, 7)> in Hol(Z_8), type {iso_type(F).value}, p = {p}\n"]
    for name, G in (("G_1", G1), ("G_2", G2)):
        patterns = sorted({(0,) + t[1:] for t in G}, key=lambda t: (t[3], t[2]))
        out.append(f"{name} = {{ " + ", ".join(_render_4tuple(p, t) for t in patterns) + " }\n")
    out.append(f"G_1 and G_2 conjugate under Aut(N): {conj}\n")
    return "".join(out), 1 if conj else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="brace8p", description="Left braces of size 8p.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("classify", help="brace counts by residue of p mod 8")
    p.add_argument("--residue", type=int, required=True, help="p mod 8: 1, 3, 5 or 7")
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("holomorph", help="regular subgroup classes of Hol(E)")
    p.add_argument("--group", required=True, help="8, 4x2 or 2x2x2")
    fmt(p)
    p.set_defaults(func=cmd_holomorph)

    p = sub.add_parser("pairs", help="dump the pair orbits (F, tau)")
    p.add_argument("--group", required=True)
    p.add_argument("--residue", type=int, default=None)
    fmt(p)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("oracle", help="brute-force cross-check in Hol(Z_p x E)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--groups", default="8,4x2",
                   help="comma separated; 2x2x2 is the long run (about 10-20 s per prime)")
    p.add_argument("--allowlist", default=None, help="comma separated primes")
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default from BRACE8P_WORKERS, else 1)")
    p.set_defaults(func=cmd_oracle)
    p.add_argument("--format", choices=("table", "json", "csv"), default="json")

    p = sub.add_parser("example1", help="the two non-conjugate braces built on Z_4 x Z_2 in Hol(Z_8)")
    p.add_argument("--p", type=int, default=5)
    p.set_defaults(func=cmd_example1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text, code = args.func(args)
    except (UsageError, UnsupportedPrimeError, CapacityError, ValueError) as exc:
        print(f"brace8p {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
