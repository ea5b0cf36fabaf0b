"""Command-line front end: analyze, census, lengths, verify, conjecture-scan.

Exit codes: 0 success, 2 usage error, 3 agreement failure, 4 inconclusive
oracle result under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

from . import __version__
from .checker import conjecture_scan, cor46_verdict, cor47_verdict, theorem_verdict
from .field import is_squarefree, parse_element
from .oracle import hf_witness_search, length_set
from .order import QuadraticOrder, make_order, parse_order, picard_order, seminormal, spec_map_bijective
from .residue import ENUMERATION_CAP

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_INCONCLUSIVE = 0, 2, 3, 4

log = logging.getLogger("hfquad")


class UsageError(Exception):
    pass


@dataclass
class CensusRow:
    d: int
    f: int
    D: int
    h: int
    unit_index: int
    s: int
    pic_order: int
    spec_bijective: bool
    saturated: bool
    seminormal: bool
    primes: list[dict] = dc_field(default_factory=list)
    verdict_theorem: bool = False
    verdict_cor47: bool | None = None
    verdict_cor46: bool | None = None
    oracle_result: str = "not run"  # witness | none | inconclusive | not run
    oracle_witness: str | None = None
    agree_cor47: bool | None = None
    agree_cor46: bool | None = None
    agree_oracle: bool | None = None

    def agreement_failures(self) -> list[str]:
        return [n for n in ("agree_cor47", "agree_cor46", "agree_oracle") if getattr(self, n) is False]


CSV_FIELDS = [
    "d", "f", "D", "h", "unit_index", "s", "pic_order", "spec_bijective", "saturated", "seminormal",
    "primes", "verdict_theorem", "verdict_cor47", "verdict_cor46", "oracle_result", "oracle_witness",
    "agree_cor47", "agree_cor46", "agree_oracle",
]  # fmt: skip


def _primes_csv(primes: list[dict]) -> str:
    # p:variant:k:alpha:vals(|-separated):local_hf, entries joined by ';'
    out = []
    for r in primes:
        vals = "|".join(str(v) for v in r["atom_valuations"] or [])
        out.append(f"{r['p']}:{r['variant']}:{r['k']}:{r['alpha']}:{vals}:{r['local_hf']}")
    return ";".join(out)


def _parse_primes_csv(text: str) -> list[dict]:
    def opt_int(s):
        return None if s == "None" else int(s)

    out = []
    for item in filter(None, text.split(";")):
        p, variant, k, alpha, vals, lhf = item.split(":")
        out.append(
            {
                "p": int(p),
                "variant": variant,
                "k": opt_int(k),
                "alpha": opt_int(alpha),
                "atom_valuations": [int(v) for v in vals.split("|")] if vals else None,
                "local_hf": None if lhf == "None" else lhf == "True",
            }
        )
    return out


def census_row(d: int, f: int, oracle_bound: int = 0, length_cap: int = 64) -> CensusRow:
    o = make_order(d, f)
    v = theorem_verdict(o)
    pic = picard_order(o)
    row = CensusRow(
        d=d,
        f=f,
        D=o.field.D,
        h=pic.h,
        unit_index=pic.unit_index,
        s=pic.s,
        pic_order=pic.pic_order,
        spec_bijective=spec_map_bijective(o),
        saturated=bool(v.cond_ii),
        seminormal=seminormal(o),
        primes=[
            {"p": r.p, "variant": r.variant, "k": r.k, "alpha": r.alpha,
             "atom_valuations": r.atom_valuations, "local_hf": r.local_hf}
            for r in v.cond_iii
        ],  # fmt: skip
        verdict_theorem=v.overall,
    )
    if f >= 2:
        row.verdict_cor47 = cor47_verdict(o).overall
        row.agree_cor47 = row.verdict_cor47 == row.verdict_theorem
        if row.seminormal:
            row.verdict_cor46 = cor46_verdict(o).overall
            row.agree_cor46 = row.verdict_cor46 == row.verdict_theorem
    if oracle_bound:
        res = hf_witness_search(o, oracle_bound, length_cap)
        if res.found:
            row.oracle_result = "witness"
            row.oracle_witness = str(res.witness)
            row.agree_oracle = not row.verdict_theorem
        elif row.verdict_theorem:
            row.oracle_result = "none"
            row.agree_oracle = True
        else:
            row.oracle_result = "inconclusive"
    return row


def _row_job(args):
    return census_row(*args)


def run_census(ds, fs, *, threads: int = 1, oracle_bound: int = 0, length_cap: int = 64):
    """Rows for squarefree d (d != 0, 1) and f in fs, sorted by (d, f); plus the skipped d."""
    skipped = [d for d in ds if d in (0, 1) or not is_squarefree(d)]
    jobs = [(d, f, oracle_bound, length_cap) for d in ds if d not in skipped for f in fs]
    if threads > 1 and jobs:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(_row_job, jobs, chunksize=8))
    else:
        rows = [_row_job(j) for j in jobs]
    rows.sort(key=lambda r: (r.d, r.f))
    return rows, skipped


def _header(command: str, params: dict) -> dict:
    return {"tool": "hfquad", "version": __version__, "command": command, "parameters": params}


def format_report(header: dict, rows: list[CensusRow], summary: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({**header, "summary": summary, "rows": [asdict(r) for r in rows]}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write("# " + json.dumps({**header, "summary": summary}) + "\n")
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS)
    w.writeheader()
    for r in rows:
        rec = asdict(r)
        rec["primes"] = _primes_csv(r.primes)
        w.writerow(rec)
    return buf.getvalue()


def read_report(path_or_text: str | Path) -> tuple[dict, list[CensusRow]]:
    """Inverse of format_report for either format."""
    p = Path(path_or_text) if not str(path_or_text).lstrip().startswith(("{", "#")) else None
    text = p.read_text() if p is not None else str(path_or_text)
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        rows = [CensusRow(**r) for r in data.pop("rows")]
        return data, rows
    first, rest = text.split("\n", 1)
    meta = json.loads(first[2:])

    def conv(name, value):
        if name == "primes":
            return _parse_primes_csv(value)
        if name in ("oracle_result", "oracle_witness"):
            return value or None
        if value == "":
            return None
        if name in ("d", "f", "D", "h", "unit_index", "s", "pic_order"):
            return int(value)
        return value == "True"

    rows = [CensusRow(**{k: conv(k, v) for k, v in rec.items()}) for rec in csv.DictReader(io.StringIO(rest))]
    return meta, rows


def _parse_range(text: str) -> range:
    try:
        a, b = text.split(":")
        return range(int(a), int(b) + 1)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; expected a:b") from exc


def _order_from_args(args) -> QuadraticOrder:
    try:
        if args.order:
            return parse_order(args.order)
        if args.d is None:
            raise UsageError("need --d (and optionally --f) or --order")
        return make_order(args.d, args.f)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj, args, text: str) -> None:
    out = json.dumps(obj, indent=1, default=str) if args.json else text
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


def cmd_analyze(args) -> int:
    o = _order_from_args(args)
    v = theorem_verdict(o)
    pic = picard_order(o)
    report = _header("analyze", {"d": o.d, "f": o.f})
    report["verdict"] = v.to_dict()
    report["picard"] = asdict(pic)
    report["profiles"] = [p.to_dict() for p in v.profiles]
    if o.f >= 2:
        report["cor47"] = cor47_verdict(o).to_dict()
        report["cor46"] = cor46_verdict(o).to_dict() if seminormal(o) else None
    lines = [
        f"order {o}  (D={o.field.D})",
        f"  h={pic.h}  unit_index={pic.unit_index}  s={pic.s}  |Pic(O)|={pic.pic_order}",
        f"  (i)  h <= 2: {v.cond_i}",
        f"  (ii) saturated: {v.cond_ii}",
    ]
    for r in v.cond_iii:
        if r.passed is None:
            lines.append(f"  (iii) p={r.p} {r.variant}: {r.note}")
        else:
            lines.append(
                f"  (iii) p={r.p} {r.variant}: k={r.k} alpha={r.alpha} principal={r.principal} "
                f"valuations={r.atom_valuations} local_hf={r.local_hf} -> {r.passed}"
            )
    lines.append(f"  half-factorial: {v.overall}" + (f"  [{v.witness}]" if v.witness else ""))
    if o.f >= 2:
        c46 = report["cor46"]["overall"] if report["cor46"] else "n/a (not seminormal)"
        lines.append(f"  cor47: {report['cor47']['overall']}  cor46: {c46}")
    _emit(report, args, "\n".join(lines))
    return EXIT_OK


def cmd_census(args) -> int:
    ds = _parse_range(args.d_range)
    fs = _parse_range(args.f_range)
    if not args.formula_only and fs and max(fs) > ENUMERATION_CAP:
        raise UsageError(f"f above the enumeration cap {ENUMERATION_CAP} needs --formula-only")
    if fs and min(fs) < 1:
        raise UsageError("conductors must be positive")
    params = {
        "d_range": args.d_range,
        "f_range": args.f_range,
        "oracle_bound": args.oracle_bound,
        "length_cap": args.length_cap,
        "threads": args.threads,
        "format": args.format,
    }
    rows, skipped = run_census(ds, fs, threads=args.threads, oracle_bound=args.oracle_bound, length_cap=args.length_cap)
    failures = [(r.d, r.f, r.agreement_failures()) for r in rows if r.agreement_failures()]
    inconclusive = [(r.d, r.f) for r in rows if r.oracle_result == "inconclusive"]
    summary = {
        "orders": len(rows),
        "half_factorial": sum(r.verdict_theorem for r in rows),
        "skipped_d": len(skipped),
        "agreement_failures": len(failures),
        "inconclusive": len(inconclusive),
    }
    text = format_report(_header("census", params), rows, summary, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(json.dumps(summary), file=sys.stderr)
    for d, f, names in failures:
        print(f"DISAGREE d={d} f={f}: {', '.join(names)}", file=sys.stderr)
    if failures:
        return EXIT_DISAGREE
    if args.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _format_tree(trace: list) -> str:
    return "\n".join(f"  {x} = ({a}) * ({z})" for x, a, z in trace)


def cmd_lengths(args) -> int:
    o = _order_from_args(args)
    try:
        x = parse_element(o.field, args.x)
        tr: list | None = [] if args.trace else None
        ls = length_set(o, x, args.length_cap, trace=tr)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = ls.to_dict()
    text = f"L({report['element']}) = {{{', '.join(map(str, report['lengths']))}}}  elasticity {report['elasticity']}"
    if ls.partial:
        text += "  (partial: length cap reached)"
    if tr:
        report["trace"] = [list(t) for t in tr]
        text += "\n" + _format_tree(tr)
    _emit(report, args, text)
    return EXIT_INCONCLUSIVE if args.strict and ls.partial else EXIT_OK


def cmd_verify(args) -> int:
    o = _order_from_args(args)
    v = theorem_verdict(o)
    res = hf_witness_search(o, args.norm_bound, args.length_cap)
    if res.found:
        status = "AGREE" if not v.overall else "DISAGREE"
    else:
        status = "AGREE" if v.overall else "INCONCLUSIVE"
    report = _header("verify", {"d": o.d, "f": o.f, "norm_bound": args.norm_bound, "length_cap": args.length_cap})
    report.update({"theorem": v.overall, "oracle": res.to_dict(), "status": status})
    wit = f"witness {res.witness} (norm {abs(res.witness.norm())}) L={sorted(res.lengths)}" if res.found else f"no witness up to norm {args.norm_bound}"
    _emit(report, args, f"{o}: theorem half-factorial={v.overall}; oracle {wit}; {status}")
    if status == "DISAGREE":
        return EXIT_DISAGREE
    if status == "INCONCLUSIVE" and args.strict:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_conjecture_scan(args) -> int:
    ds = [d for d in _parse_range(args.d_range) if d not in (0, 1) and is_squarefree(d)]
    orders = [make_order(d, f) for d in ds for f in range(1, args.f_max + 1)]
    pairs = conjecture_scan(orders)
    report = _header("conjecture-scan", {"d_range": args.d_range, "f_max": args.f_max})
    report["orders"] = len(orders)
    report["violations"] = [{"O": str(a), "over": str(b)} for a, b in pairs]
    lines = [f"{len(orders)} orders scanned, {len(pairs)} half-factorial orders with a non-half-factorial overorder"]
    lines += [f"  {a}  inside  {b}" for a, b in pairs]
    _emit(report, args, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--norm-bound", type=int, default=10**4)
    common.add_argument("--length-cap", type=int, default=64)
    common.add_argument("--strict", action="store_true", help="exit 4 on inconclusive oracle results")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    order_args = argparse.ArgumentParser(add_help=False)
    order_args.add_argument("--d", type=int)
    order_args.add_argument("--f", type=int, default=1)
    order_args.add_argument("--order", help="'d=<int>,f=<int>'")

    p = argparse.ArgumentParser(prog="hfquad", description="Half-factoriality of orders in quadratic fields.")
    p.add_argument("--version", action="version", version=f"hfquad {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common, order_args], help="verdict, Picard data and local profiles")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("census", parents=[common], help="all three characterizations over a grid")
    c.add_argument("--d-range", default="-30:30")
    c.add_argument("--f-range", default="2:12")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--formula-only", action="store_true", help="allow f above the enumeration cap")
    c.add_argument("--oracle-bound", type=int, default=0, help="also run the witness search to this norm (0: skip)")
    c.set_defaults(func=cmd_census)

    l = sub.add_parser("lengths", parents=[common, order_args], help="set of lengths of one element")  # noqa: E741
    l.add_argument("--x", required=True, help="element as 'a+b*w'")
    l.add_argument("--trace", action="store_true", help="print the factor tree")
    l.set_defaults(func=cmd_lengths)

    v = sub.add_parser("verify", parents=[common, order_args], help="theorem verdict against the witness search")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("conjecture-scan", parents=[common], help="half-factorial orders with non-half-factorial overorders")
    s.add_argument("--d-range", default="-20:20")
    s.add_argument("--f-max", type=int, default=30)
    s.set_defaults(func=cmd_conjecture_scan)
    return p


def _join_ranges(argv: list[str]) -> list[str]:
    # "--d-range -20:20" would otherwise read -20:20 as an option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--d-range", "--f-range"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_ranges(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hfquad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
