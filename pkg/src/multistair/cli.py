"""Command-line interface: `multistair <command> ...`."""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from .classify import (CrossReport, InconclusiveError, SearchBudget, classify_by_form,
                       positive_roots, run_comparisons)
from .diagram import (Diagram, DiagramError, ResourceCapError, enumerate_diagrams,
                      iter_double_partitions, parse_double_partition, parse_json_diagram,
                      parse_partition, star)
from .nilpotent import fixed_space_finiteness, parse_graded_dims
from .oracle import FiniteFieldConfig, dim_vector, oracle_row
from .quiver import build_quiver, export_dot, export_json
from .tables import classify_by_table
from .tits import minimal_nullroots, tits_form

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_DISAGREE, EXIT_INCONCLUSIVE, EXIT_CAP = 0, 1, 2, 3, 4, 5


def parse_diagram(text: str, flat: bool = False) -> Diagram:
    """Partition "(3,6)", double partition "(2,|3|,2)" or JSON {"k", "boxes"}."""
    s = text.strip()
    if s.startswith("{"):
        return parse_json_diagram(s)
    if flat or "|" in s:
        return parse_double_partition(s).to_diagram()
    return parse_partition(s)


def _box(b) -> str:
    return "(" + ",".join(map(str, b)) + ")"


def _pairs(pairs) -> str:
    return " ".join(f"{_box(lab)}:{a}" for lab, a in pairs)


def _emit(args, data: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _budget(args) -> SearchBudget:
    return SearchBudget.from_env(entry_bound_wp=args.wp_bound, entry_bound_wnn=args.wnn_bound,
                                 node_cap=args.node_cap)


# ------------------------------------------------------------ commands


def cmd_classify(args) -> int:
    d = parse_diagram(args.diagram, args.flat)
    b = _budget(args)
    start = time.perf_counter()
    data: dict = {"input": args.diagram, "diagram": d.to_json()}
    lines = [f"diagram: {args.diagram} ({d.n} boxes, k={d.k})"]
    form = table = None
    if not args.table_only:
        form = classify_by_form(d, b)
        data["form"] = form.to_json()
        lines.append(f"form:  {form.kind.value}  {json.dumps(form.certificate, sort_keys=True)}")
    if not args.form_only:
        table = classify_by_table(d)
        data["table"] = table.to_json()
        lines.append(f"table: {table.kind.value}  ({table.certificate['rule']})")
    if form is not None and table is not None:
        data["agree"] = form.kind is table.kind
        lines.append(f"agree: {'yes' if data['agree'] else 'NO'}")
    data["bounds"] = b.bounds_json()
    if args.timing:
        data["seconds"] = round(time.perf_counter() - start, 6)
        lines.append(f"time:  {data['seconds']:.3f}s")
    _emit(args, data, lines)
    return EXIT_DISAGREE if data.get("agree") is False else EXIT_OK


def _flat_diagrams(max_boxes: int, max_ground: int) -> list[Diagram]:
    seen = set()
    out = []
    for p in iter_double_partitions(max_boxes, max_ground):
        if len(p.lam) < 2 or len(p.mu) < 2 or p.x < 2:
            continue
        key = min((p.lam, p.mu), (p.mu, p.lam))
        if key not in seen:
            seen.add(key)
            out.append(p.to_diagram())
    return out


def cmd_verify_tables(args) -> int:
    b = _budget(args)
    start = time.perf_counter()
    diagrams = _flat_diagrams(args.max_boxes, args.max_ground) if args.flat else None
    if args.flat and args.k != 3:
        raise DiagramError("--flat needs --k 3")
    if diagrams is None:
        diagrams = [d for n in range(1, args.max_boxes + 1)
                    for d in enumerate_diagrams(args.k, n, up_to_symmetry=True)]
    report = CrossReport(args.k, args.max_boxes)
    census = Counter()
    for c in run_comparisons(diagrams, b, args.jobs):
        report.checked += 1
        census[c.table.kind.value] += 1
        if c.form is None:
            report.inconclusive.append(c)
        elif not c.agrees:
            report.disagreements.append(c)
    data = report.to_json()
    data["census"] = dict(sorted(census.items()))
    data["flat"] = bool(args.flat)
    lines = [f"k={args.k} max_boxes={args.max_boxes}{' flat' if args.flat else ''}: "
             f"{report.checked} diagrams, {len(report.disagreements)} disagreements, "
             f"{len(report.inconclusive)} inconclusive",
             "census: " + ", ".join(f"{k}={v}" for k, v in sorted(census.items()))]
    for c in report.disagreements:
        lines.append(f"  DISAGREE {' '.join(_box(x) for x in c.diagram.sorted_boxes())}: "
                     f"form={c.form.kind.value} table={c.table.kind.value}")
    for c in report.inconclusive:
        lines.append(f"  INCONCLUSIVE {c.diagram.sorted_boxes()}: {c.error}")
    if args.timing:
        data["seconds"] = round(time.perf_counter() - start, 6)
        lines.append(f"time: {data['seconds']:.2f}s")
    _emit(args, data, lines)
    if report.disagreements:
        return EXIT_DISAGREE
    if report.inconclusive and not args.allow_inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_roots(args) -> int:
    d = parse_diagram(args.diagram, args.flat)
    f = tits_form(d)
    roots = sorted(positive_roots(f, _budget(args)))
    data = {"input": args.diagram, "labels": [list(x) for x in f.labels],
            "count": len(roots), "roots": [list(r) for r in roots]}
    lines = [f"{len(roots)} positive roots (coordinates in box order "
             f"{' '.join(_box(x) for x in f.labels)})"]
    lines += [" ".join(map(str, r)) for r in roots]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_nullroot(args) -> int:
    if args.star:
        d = star(args.k)
        label = f"star k={args.k}"
    elif args.diagram:
        d = parse_diagram(args.diagram, args.flat)
        label = args.diagram
    else:
        raise DiagramError("give a diagram or --star")
    f = tits_form(d)
    res = minimal_nullroots(f, args.wp_bound or 6, node_cap=_budget(args).node_cap)
    vecs = [[[list(f.labels[i]), a] for i, a in enumerate(v) if a] for v in res.minimal]
    data = {"input": label, "bound": res.bound, "complete": res.complete,
            "unique": len(res.minimal) == 1, "nullroots": vecs}
    if not res.minimal:
        lines = [f"no positive nullroot with entries <= {res.bound}"]
    else:
        lines = [_pairs(v) for v in vecs]
        if len(vecs) > 1:
            lines.insert(0, f"{len(vecs)} incomparable minimal nullroots")
    if not res.complete:
        lines.append("note: form takes values <= -1 in the box; list may be incomplete")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_quiver(args) -> int:
    d = parse_diagram(args.diagram, args.flat)
    q = build_quiver(d)
    if args.json:
        print(export_json(q))
    else:
        sys.stdout.write(export_dot(q))
    return EXIT_OK


def cmd_finiteness(args) -> int:
    g = parse_graded_dims(args.dims)
    v = fixed_space_finiteness(g, _budget(args))
    data = {"input": g.to_json(), **v.to_json()}
    lines = [f"{v.kind}: {v.rule}"]
    if "vector" in v.certificate:
        lines.append("witness " + _pairs(v.certificate["vector"]) + f"  q = {v.certificate['value']}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    d = parse_diagram(args.diagram, args.flat)
    dv = dim_vector(d, [int(x) for x in args.dv.split(",")])
    c = FiniteFieldConfig(args.q, point_cap=args.point_cap, apply_cap=args.apply_cap)
    row = oracle_row(d, dv, c)
    _emit(args, row, [f"points={row['points']} iso_classes={row['iso_classes']} over F_{args.q}"])
    return EXIT_OK


# ------------------------------------------------------------ parser


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--wp-bound", type=int, default=None, help="entry bound for weak positivity (6)")
    p.add_argument("--wnn-bound", type=int, default=None, help="entry bound for weak non-negativity (12)")
    p.add_argument("--node-cap", type=int, default=None, help="search node cap")


def _add_input(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("diagram", help='partition "(3,6)", double partition "(2,|3|,2)" or JSON')
    p.add_argument("--flat", action="store_true", help="read input as a double partition")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multistair",
                                 description="Representation types of multi-graded staircase algebras.")
    ap.add_argument("--json", action="store_true", help="JSON output (and JSON diagram input)")
    ap.add_argument("--timing", action="store_true", help="include wall-clock time")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="form and table verdicts")
    _add_input(p)
    _add_budget(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--form-only", action="store_true")
    g.add_argument("--table-only", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-tables", help="cross-validate both classifiers")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-boxes", type=int, required=True)
    p.add_argument("--flat", action="store_true", help="proper flat double partitions only (k=3)")
    p.add_argument("--max-ground", type=int, default=7, help="ground length bound with --flat")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-inconclusive", action="store_true")
    _add_budget(p)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("roots", help="positive roots of a weakly positive form")
    _add_input(p)
    _add_budget(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("nullroot", help="minimal positive nullroots")
    p.add_argument("diagram", nargs="?")
    p.add_argument("--flat", action="store_true")
    p.add_argument("--star", action="store_true", help="the (k+1)-box star")
    p.add_argument("--k", type=int, default=4)
    _add_budget(p)
    p.set_defaults(func=cmd_nullroot)

    p = sub.add_parser("quiver", help="bound quiver as DOT (default) or JSON")
    _add_input(p)
    p.add_argument("--dot", action="store_true", help="DOT output (default)")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("finiteness", help="finiteness for fixed graded dimensions")
    p.add_argument("dims", help='JSON {"k": 3, "dims": [[[1,1,1], 2], ...]}')
    _add_budget(p)
    p.set_defaults(func=cmd_finiteness)

    p = sub.add_parser("oracle", help="brute-force point and orbit counts over F_q")
    _add_input(p)
    p.add_argument("--dv", required=True, help="comma-separated dimensions in sorted box order")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--point-cap", type=int, default=2_000_000)
    p.add_argument("--apply-cap", type=int, default=10_000_000)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # accept global flags after the subcommand as well
    hoisted = [a for a in argv if a in ("--json", "--timing")]
    rest = [a for a in argv if a not in ("--json", "--timing")]
    args = ap.parse_args(hoisted + rest)
    try:
        return args.func(args)
    except (DiagramError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
