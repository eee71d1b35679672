"""Command-line front end: analyze tables, search matchings, render factors.

Four subcommands: analyze (classification, Green summary, per-D-class block
report, matching verdict), matching (find/count permutation or involution
matchings), factors (egg-box grids with subband blocks on the diagonal) and
gen (write generated tables).  All commands take --json for a byte-stable
machine-readable report, --budget MS for search time limits, and --cap N to
raise the per-operation size guards.

Exit codes: 0 found/ok, 1 definitively absent, 2 input error, 3 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from itertools import accumulate
from pathlib import Path

from .errors import NotOrthodoxError, SemigroupError, TableFormatError
from .factors import h_quotient_band, maximal_rect_subbands, principal_factors, similarity_check
from .green import green_classes
from .matching import (
    DEFAULT_BRUTE_CAP,
    DEFAULT_INVOLUTION_CAP,
    HallCertificate,
    Matching,
    SearchExhausted,
    count_permutation_matchings,
    decide_orthodox_matching,
    find_involution_matching,
    find_permutation_matching,
    hall_brute_force,
    verify_matching,
)
from .structure import classify, idempotents, inverses_of_set
from .table import (
    DEFAULT_SIZE_CAP,
    BoolStructureMatrix,
    MulTable,
    direct_product,
    full_transformation,
    parse_table,
    rectangular_band,
    rees_matrix,
    render_table,
)


def _load(path) -> MulTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def render_matching(table: MulTable, m: Matching) -> str:
    lines = [f"kind: {m.kind}", f"provenance: {m.provenance}"]
    for a in range(table.n):
        lines.append(f"{table.element_name(a)} -> {table.element_name(m.f[a])}")
    return "\n".join(lines)


def _count_noun(k: int) -> str:
    return "1 element" if k == 1 else f"{k} elements"


def render_certificate(table: MulTable, cert: HallCertificate) -> str:
    a_names = " ".join(table.element_name(a) for a in cert.violating_set)
    b_names = " ".join(table.element_name(b) for b in cert.image)
    return (
        "no permutation matching: Hall's condition fails\n"
        f"A ({_count_noun(len(cert.violating_set))}): {a_names}\n"
        f"V(A) ({_count_noun(len(cert.image))}): {b_names if cert.image else '(empty)'}"
    )


def _matching_json(table: MulTable, m: Matching) -> dict:
    check = verify_matching(table, m.f, require_involution=m.kind == "involution")
    if not check.ok:
        raise RuntimeError(f"refusing to report an unverified matching: {check.reason}")
    return {"kind": m.kind, "provenance": m.provenance, "map": list(m.f)}


def _certificate_json(cert: HallCertificate) -> dict:
    return {"violating_set": list(cert.violating_set), "image": list(cert.image)}


def _render_egg_box(band, dec) -> list:
    """Text grid of one band: H-class sizes, '*' on idempotent cells.

    With a decomposition the rows and columns are reordered so each subband
    occupies a diagonal block, and block boundaries are drawn.
    """
    sizes = Counter(band.h_map.values())
    r_ord = list(dec.r_order) if dec is not None else list(range(band.m))
    l_ord = list(dec.l_order) if dec is not None else list(range(band.n))
    row_groups = [s.m for s in dec.subbands] if dec is not None else [band.m]
    col_groups = [s.n for s in dec.subbands] if dec is not None else [band.n]
    cells = [
        [f"{sizes[(i, lam)]}{'*' if band.p.entries[lam][i] else ''}" for lam in l_ord]
        for i in r_ord
    ]
    width = max(len(c) for row in cells for c in row)
    row_breaks = set(accumulate(row_groups[:-1]))
    col_breaks = set(accumulate(col_groups[:-1]))
    lines = []
    for ri, row in enumerate(cells):
        if ri in row_breaks:
            sep = []
            for ci in range(len(l_ord)):
                if ci in col_breaks:
                    sep.append("+")
                sep.append("-" * width)
            lines.append("-".join(sep))
        out = []
        for ci, tok in enumerate(row):
            if ci in col_breaks:
                out.append("|")
            out.append(tok.ljust(width))
        lines.append(" ".join(out).rstrip())
    return lines


def _d_class_reports(table: MulTable, with_grid: bool = False) -> list:
    g = green_classes(table)
    idem = set(idempotents(table))
    reports = []
    for pf in principal_factors(table):
        members = g.d_classes[pf.d_class]
        entry = {
            "d_class": pf.d_class,
            "size": len(members),
            "regular": any(a in idem for a in members),
            "band": None,
            "subbands": None,
            "similar": None,
            "note": None,
        }
        grid = None
        if entry["regular"]:
            band = h_quotient_band(pf)
            entry["band"] = [band.m, band.n]
            try:
                dec = maximal_rect_subbands(band)
            except NotOrthodoxError as exc:
                e, f = exc.witness
                entry["note"] = (
                    f"subbands unavailable: idempotent cells {e} and {f} "
                    "have a non-idempotent product"
                )
                if with_grid:
                    grid = _render_egg_box(band, None)
            else:
                entry["subbands"] = [[s.m, s.n] for s in dec.subbands]
                entry["similar"] = similarity_check(dec).pairwise_similar
                if with_grid:
                    grid = _render_egg_box(band, dec)
        else:
            entry["note"] = "no idempotent: not a regular D-class"
        if with_grid:
            entry["grid"] = grid
        reports.append(entry)
    return reports


def _matching_verdict(table: MulTable, flags) -> dict:
    if flags.orthodox:
        decision = decide_orthodox_matching(table)
        if decision.exists:
            return {
                "exists": True,
                "matching": _matching_json(table, decision.matching),
                "certificate": None,
                "involution_status": "involution_found",
            }
        res = find_permutation_matching(table)
        if not isinstance(res, HallCertificate):
            raise RuntimeError("block similarity and bipartite matching verdicts disagree")
        return {
            "exists": False,
            "matching": None,
            "certificate": _certificate_json(res),
            "involution_status": "none_exists",
        }
    res = find_permutation_matching(table)
    if isinstance(res, Matching):
        status = "involution_found" if res.is_involution_map() else "not_searched"
        return {
            "exists": True,
            "matching": _matching_json(table, res),
            "certificate": None,
            "involution_status": status,
        }
    return {
        "exists": False,
        "matching": None,
        "certificate": _certificate_json(res),
        "involution_status": "none_exists",
    }


def _flags_dict(flags) -> dict:
    return {
        "regular": flags.regular,
        "orthodox": flags.orthodox,
        "inverse": flags.inverse,
        "band": flags.band,
        "rectangular_band": flags.rectangular_band,
        "completely_regular": flags.completely_regular,
        "completely_simple": flags.completely_simple,
        "combinatorial": flags.combinatorial,
        "group": flags.group,
        "self_inverse": flags.self_inverse,
        "has_zero": flags.has_zero,
    }


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    table = _load(args.file)
    flags = classify(table)
    g = green_classes(table)
    report = {
        "command": "analyze",
        "input": str(args.file),
        "elements": table.n,
        "names": list(table.names) if table.names is not None else None,
        "classification": _flags_dict(flags),
        "green_summary": {
            "r_classes": len(g.r_classes),
            "l_classes": len(g.l_classes),
            "h_classes": len(g.h_classes),
            "d_classes": len(g.d_classes),
        },
        "d_class_reports": _d_class_reports(table),
        "matching_verdict": _matching_verdict(table, flags),
    }
    elapsed = time.perf_counter() - started
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    true_flags = [k for k, val in report["classification"].items() if val]
    print(f"input: {args.file} ({table.n} elements)")
    print("classification: " + (", ".join(true_flags) if true_flags else "(no flags)"))
    gs = report["green_summary"]
    print(
        f"green: {gs['r_classes']} R-classes, {gs['l_classes']} L-classes, "
        f"{gs['h_classes']} H-classes, {gs['d_classes']} D-classes"
    )
    for entry in report["d_class_reports"]:
        bits = [f"D-class {entry['d_class']}: {entry['size']} elements"]
        bits.append("regular" if entry["regular"] else "not regular")
        if entry["band"] is not None:
            bits.append(f"band {entry['band'][0]}x{entry['band'][1]}")
        if entry["subbands"] is not None:
            bits.append("blocks " + " + ".join(f"{m}x{n}" for m, n in entry["subbands"]))
            bits.append(f"similar: {'yes' if entry['similar'] else 'no'}")
        if entry["note"]:
            bits.append(entry["note"])
        print(", ".join(bits))
    verdict = report["matching_verdict"]
    if verdict["exists"]:
        m = verdict["matching"]
        print(f"matching: exists ({m['kind']}, {m['provenance']})")
    else:
        print("matching: none exists")
        cert = verdict["certificate"]
        a_names = " ".join(table.element_name(a) for a in cert["violating_set"])
        b_names = " ".join(table.element_name(b) for b in cert["image"])
        print(f"certificate: A = {{{a_names}}}  V(A) = {{{b_names}}}")
    print(f"involution: {verdict['involution_status']}")
    print(f"time: {elapsed:.3f} s")
    return 0


def _emit_matching_result(args, table, base, m=None, cert=None, search=None,
                          count=None) -> None:
    if args.json:
        report = dict(base)
        report["matching"] = _matching_json(table, m) if m is not None else None
        report["certificate"] = _certificate_json(cert) if cert is not None else None
        report["search"] = (
            {"complete": search.complete, "nodes": search.nodes} if search is not None else None
        )
        if count is not None:
            report["count"] = count.count
            report["exact"] = count.exact
        print(json.dumps(report, indent=2))
        return
    if count is not None:
        print(f"count = {count.count}" if count.exact else f"count >= {count.count}")
    elif m is not None:
        print(render_matching(table, m))
    elif cert is not None:
        print(render_certificate(table, cert))
    elif search is not None:
        if search.complete:
            print(f"no involution matching: search complete ({search.nodes} nodes)")
        else:
            print(f"involution search budget exhausted ({search.nodes} nodes)")


def cmd_matching(args) -> int:
    table = _load(args.file)
    cap = args.cap
    base = {
        "command": "matching",
        "input": str(args.file),
        "mode": "count" if args.count is not None else
                ("involution" if args.involution else "permutation"),
        "method": args.method,
    }

    if args.count is not None:
        if args.count < 1:
            print("error: --count needs a positive limit", file=sys.stderr)
            return 2
        res = count_permutation_matchings(
            table, limit=args.count, max_size=cap if cap is not None else DEFAULT_BRUTE_CAP
        )
        _emit_matching_result(args, table, base, count=res)
        return 0 if res.count > 0 else 1

    if args.involution:
        if args.method in ("hall", "brute"):
            print(f"error: --involution cannot use method {args.method}", file=sys.stderr)
            return 2
        flags = classify(table)
        if args.method == "orthodox" or (args.method == "auto" and flags.orthodox):
            decision = decide_orthodox_matching(table)
            if decision.exists:
                _emit_matching_result(args, table, base, m=decision.matching)
                return 0
            cert = find_permutation_matching(table)
            if not isinstance(cert, HallCertificate):
                raise RuntimeError("block similarity and bipartite matching verdicts disagree")
            _emit_matching_result(args, table, base, cert=cert)
            return 1
        res = find_involution_matching(
            table,
            cap=cap if cap is not None else DEFAULT_INVOLUTION_CAP,
            budget_ms=args.budget,
        )
        if isinstance(res, Matching):
            _emit_matching_result(args, table, base, m=res)
            return 0
        _emit_matching_result(args, table, base, search=res)
        return 1 if res.complete else 3

    method = args.method
    if method == "auto":
        method = "orthodox" if classify(table).orthodox else "hall"
    if method == "orthodox":
        decision = decide_orthodox_matching(table)
        if decision.exists:
            _emit_matching_result(args, table, base, m=decision.matching)
            return 0
        cert = find_permutation_matching(table)
        if not isinstance(cert, HallCertificate):
            raise RuntimeError("block similarity and bipartite matching verdicts disagree")
        _emit_matching_result(args, table, base, cert=cert)
        return 1
    if method == "hall":
        res = find_permutation_matching(table)
        if isinstance(res, Matching):
            _emit_matching_result(args, table, base, m=res)
            return 0
        _emit_matching_result(args, table, base, cert=res)
        return 1
    # brute: subset enumeration decides, bipartite matching then exhibits
    res = hall_brute_force(table, max_size=cap if cap is not None else DEFAULT_BRUTE_CAP)
    if res.holds:
        m = find_permutation_matching(table)
        if not isinstance(m, Matching):
            raise RuntimeError("subset enumeration and bipartite matching verdicts disagree")
        _emit_matching_result(args, table, base, m=m)
        return 0
    image = tuple(sorted(inverses_of_set(table, res.witness)))
    cert = HallCertificate(violating_set=tuple(res.witness), image=image)
    _emit_matching_result(args, table, base, cert=cert)
    return 1


def cmd_factors(args) -> int:
    table = _load(args.file)
    reports = _d_class_reports(table, with_grid=True)
    if args.json:
        print(json.dumps({
            "command": "factors",
            "input": str(args.file),
            "elements": table.n,
            "d_classes": reports,
        }, indent=2))
        return 0
    print(f"input: {args.file} ({table.n} elements, {len(reports)} D-classes)")
    for entry in reports:
        print()
        head = f"D-class {entry['d_class']}: {entry['size']} elements"
        if entry["band"] is not None:
            head += f", band {entry['band'][0]}x{entry['band'][1]}"
        print(head)
        if entry["grid"] is not None:
            for line in entry["grid"]:
                print("  " + line)
        if entry["subbands"] is not None:
            print("  blocks: " + ", ".join(f"{m}x{n}" for m, n in entry["subbands"]))
            print(f"  similar: {'yes' if entry['similar'] else 'no'}")
        if entry["note"]:
            print("  " + entry["note"])
    return 0


def _parse_structure_matrix(text: str) -> BoolStructureMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise TableFormatError("empty structure matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise TableFormatError("structure matrix file must start with 'rows cols'")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError:
        raise TableFormatError("structure matrix header is not two integers") from None
    if rows < 1 or cols < 1 or len(lines) - 1 != rows:
        raise TableFormatError(f"expected {rows} matrix rows, got {len(lines) - 1}")
    entries = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != cols or any(t not in ("0", "1") for t in toks):
            raise TableFormatError(f"matrix row must be {cols} entries of 0/1: {ln!r}")
        entries.append([t == "1" for t in toks])
    return BoolStructureMatrix(entries)


def cmd_gen(args) -> int:
    if args.kind == "rect":
        table = rectangular_band(args.m, args.n)
    elif args.kind == "rees":
        table = rees_matrix(_parse_structure_matrix(Path(args.matrixfile).read_text(encoding="utf-8")))
    elif args.kind == "tn":
        if args.cap is not None and args.n >= 1 and args.n ** args.n <= args.cap:
            table = full_transformation(args.n, max_rank=args.n)
        else:
            table = full_transformation(args.n)
    else:
        s = _load(args.f1)
        t = _load(args.f2)
        table = direct_product(
            s, t, max_size=args.cap if args.cap is not None else DEFAULT_SIZE_CAP
        )
    Path(args.out).write_text(render_table(table), encoding="utf-8")
    if args.json:
        print(json.dumps({
            "command": "gen",
            "kind": args.kind,
            "out": str(args.out),
            "elements": table.n,
        }, indent=2))
    else:
        print(f"wrote {args.out}: {table.n} elements")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable report")
    common.add_argument("--budget", type=float, metavar="MS", default=None,
                        help="wall-clock budget for searches, in milliseconds")
    common.add_argument("--cap", type=int, metavar="N", default=None,
                        help="override per-operation size guards")
    parser = argparse.ArgumentParser(
        prog="semigroup-match",
        description="Analyze finite semigroups and their matchings onto inverses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common],
                        help="classification, Green structure, matching verdict")
    pa.add_argument("file", help="multiplication table file")

    pm = sub.add_parser("matching", parents=[common],
                        help="find or count matchings onto inverses")
    pm.add_argument("file", help="multiplication table file")
    mode = pm.add_mutually_exclusive_group()
    mode.add_argument("--involution", action="store_true",
                      help="require f(f(a)) = a")
    mode.add_argument("--count", type=int, metavar="LIMIT", default=None,
                      help="count matchings, stopping at LIMIT")
    pm.add_argument("--method", choices=["auto", "hall", "orthodox", "brute"],
                    default="auto", help="decision procedure (default: auto)")

    pf = sub.add_parser("factors", parents=[common],
                        help="egg-box grids and subband blocks per D-class")
    pf.add_argument("file", help="multiplication table file")

    pg = sub.add_parser("gen", help="generate a table file")
    gsub = pg.add_subparsers(dest="kind", required=True)
    g_rect = gsub.add_parser("rect", parents=[common], help="rectangular band")
    g_rect.add_argument("m", type=int)
    g_rect.add_argument("n", type=int)
    g_rect.add_argument("out")
    g_rees = gsub.add_parser("rees", parents=[common],
                             help="combinatorial semigroup over a 0/1 structure matrix")
    g_rees.add_argument("matrixfile", help="first line 'rows cols', then rows of 0/1")
    g_rees.add_argument("out")
    g_tn = gsub.add_parser("tn", parents=[common], help="full transformation semigroup")
    g_tn.add_argument("n", type=int)
    g_tn.add_argument("out")
    g_prod = gsub.add_parser("product", parents=[common], help="direct product of two tables")
    g_prod.add_argument("f1")
    g_prod.add_argument("f2")
    g_prod.add_argument("out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "matching":
            return cmd_matching(args)
        if args.command == "factors":
            return cmd_factors(args)
        return cmd_gen(args)
    except (SemigroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
