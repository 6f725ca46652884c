"""Command-line interface.

Exit codes: 0 success or "holds", 1 a definite negative answer (identity
fails, not a member, no model, reproduction discrepancy), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import (
    FiniteGroupoid,
    TableFormatError,
    format_table,
    in_variety,
    load_table,
    satisfies,
)
from .atlas import (
    MAIN_NODES,
    SYMMETRIC_NODES,
    UnknownVarietyError,
    all_witnesses,
    build_poset,
    get_variety,
    verify_claims,
)
from .atlas.poset import PosetReport, dot
from .search import SearchProblem, SizeGuardError, count_models, enumerate_models
from .terms import (
    ParseError,
    classify_identities,
    generate_associative_identities,
    generate_associative_terms,
    parse_identity,
    render_identity,
    render_term,
)


class InputError(Exception):
    pass


def _read_identity(arg: str):
    text = arg
    if arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text()
        except OSError as e:
            raise InputError(f"cannot read {arg[1:]}: {e.strerror}") from None
    return parse_identity(text)


def _read_algebra(path: str) -> FiniteGroupoid:
    if path.startswith("witness:"):
        name = path.split(":", 1)[1]
        for rec in all_witnesses():
            if rec.name == name:
                return rec.table
        raise InputError(f"no embedded witness named {name!r}")
    try:
        return load_table(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _rows(g: FiniteGroupoid) -> list[str]:
    return [" ".join(map(str, r)) for r in g.table]


def _write_report(path: str | None, doc: dict):
    if path:
        Path(path).write_text(dumps(doc))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _failure_text(rep) -> str:
    values = ", ".join(f"{k}={v}" for k, v in rep.assignment.items())
    return (f"fails: {render_identity(rep.identity, pretty=True)} at {values or '(no variables)'}: "
            f"lhs={rep.lhs_value}, rhs={rep.rhs_value}")


# --------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    g = _read_algebra(args.algebra)
    ident = _read_identity(args.identity)
    rep = satisfies(g, ident)
    if rep.holds:
        print(f"holds: {render_identity(ident, pretty=True)}")
        return 0
    print(_failure_text(rep))
    return 1


def cmd_member(args) -> int:
    g = _read_algebra(args.algebra)
    v = get_variety(args.variety)
    rep = in_variety(g, v)
    if rep.holds:
        print(f"member of {v.name}")
        return 0
    print(f"not a member of {v.name}")
    print(_failure_text(rep))
    return 1


def cmd_search(args) -> int:
    must_satisfy = [_read_identity(s) for s in args.satisfy]
    in_I = True
    if args.variety:
        v = get_variety(args.variety)
        must_satisfy = list(v.identities) + must_satisfy
        in_I = v.relative_to_I
    must_fail = [_read_identity(s) for s in args.fail]
    limit = args.limit
    if limit is None and not args.all:
        limit = 1
    problem = SearchProblem(args.size, tuple(must_satisfy), tuple(must_fail), in_I,
                            args.up_to_iso, limit)
    out = enumerate_models(problem, jobs=args.jobs)
    for g in out.models:
        print(format_table(g))
    state = "exhausted" if out.exhausted else "stopped at limit"
    print(f"# {len(out.models)} model(s) of size {args.size}, {state}; "
          f"{out.stats.nodes} nodes, {out.stats.tables_tested} complete tables")
    return 0 if out.models else 1


def cmd_count(args) -> int:
    v = get_variety(args.variety)
    print(count_models(args.size, v, args.up_to_iso, jobs=args.jobs))
    return 0


def classification_doc() -> dict:
    terms = generate_associative_terms()
    identities = generate_associative_identities()
    classes = classify_identities(identities)
    labels = [f"{i}{ab}" for i in range(1, 7) for ab in "ab"]
    return {
        "terms": [{"label": lab, "term": render_term(t)} for lab, t in zip(labels, terms)],
        "identity_count": len(identities),
        "class_count": len(classes),
        "classes": [
            {
                "sigma": c.sigma_label,
                "canonical": render_identity(c.canonical),
                "size": len(c.members),
                "members": [render_identity(m) for m in c.members],
            }
            for c in classes
        ],
    }


def cmd_classify(args) -> int:
    doc = classification_doc()
    print(f"{len(doc['terms'])} terms, {doc['identity_count']} identities, "
          f"{doc['class_count']} classes")
    for c in doc["classes"]:
        label = c["sigma"] or "-"
        print(f"  {label:>4}  {c['size']:2d}  {render_identity(parse_identity(c['canonical']), pretty=True)}")
    print(f"  total {sum(c['size'] for c in doc['classes'])}")
    _write_report(args.report, {"tool": "zlab", "version": __version__, **doc})
    return 0


def poset_doc(rep: PosetReport) -> dict:
    doc = {
        "nodes": rep.nodes,
        "budget": rep.budget,
        "pool_size": rep.pool_size,
        "hasse_edges": [list(e) for e in rep.hasse_edges],
        "equivalent": rep.equivalent,
        "discrepancies": rep.discrepancies,
        "discovered": rep.discovered,
        "relation": rep.relation,
    }
    if rep.drawn_edges is not None:
        diff = rep.edge_differences()
        doc["drawn_diagram"] = {
            "matches": rep.matches_drawing,
            "missing": [list(e) for e in diff["missing"]],
            "extra": [list(e) for e in diff["extra"]],
        }
    return doc


def _print_poset(rep: PosetReport):
    print(f"nodes: {', '.join(rep.nodes)} (pool of {rep.pool_size} models, budget {rep.budget})")
    print("hasse edges:")
    for a, b in rep.hasse_edges:
        print(f"  {a} < {b}")
    for group in rep.equivalent:
        print(f"indistinguishable: {' = '.join(group)}")
    if rep.drawn_edges is not None:
        diff = rep.edge_differences()
        if rep.matches_drawing:
            print("edges agree with the reference diagram")
        else:
            print(f"differs from the reference diagram: missing {diff['missing']}, extra {diff['extra']}")
    subs = [d for d in rep.discovered if d["computed"] == "subset"]
    if subs:
        print("inclusions beyond the stated relations:")
        for d in subs:
            print(f"  {d['lower']} <= {d['upper']}")
    if rep.discrepancies:
        print("DISCREPANCIES:")
        for d in rep.discrepancies:
            print(f"  {d['lower']} vs {d['upper']}: expected {d['expected']}, computed {d['computed']}")
    else:
        print("no discrepancies")


def cmd_poset(args) -> int:
    nodes = [n.strip() for n in args.nodes.split(",")] if args.nodes else list(MAIN_NODES)
    nodes = [get_variety(n).name for n in nodes]
    rep = build_poset(nodes, args.budget, jobs=args.jobs)
    _print_poset(rep)
    if args.dot:
        Path(args.dot).write_text(dot(rep))
    _write_report(args.report, {"tool": "zlab", "version": __version__, **poset_doc(rep)})
    return 1 if rep.discrepancies else 0


def reproduction_doc(budget: int, deep_budget: int, jobs: int = 1) -> tuple[dict, list]:
    """Machine report plus (id, status, elapsed) rows for the human summary."""
    timings = []
    t0 = time.perf_counter()
    classification = classification_doc()
    ok = classification["class_count"] == 14 and all(c["sigma"] for c in classification["classes"])
    entries = [{"id": "classification", "cite": "Proposition 2.7",
                "status": "pass" if ok else "fail",
                "detail": f"{len(classification['terms'])} terms, {classification['identity_count']} "
                          f"identities, {classification['class_count']} classes"}]
    timings.append(("classification", entries[0]["status"], time.perf_counter() - t0))

    for rec in all_witnesses():
        t0 = time.perf_counter()
        check = rec.verify()
        entries.append({
            "id": f"witness-{rec.name}", "cite": rec.source,
            "status": "pass" if check.ok else "fail",
            "detail": "; ".join(check.problems()) or
                      f"in {', '.join(rec.in_varieties)}; not in {', '.join(rec.not_in)}",
            "table": _rows(rec.table),
        })
        timings.append((entries[-1]["id"], entries[-1]["status"], time.perf_counter() - t0))

    ledger = verify_claims(budget, deep_budget, jobs=jobs)
    for r in ledger.results:
        entry = {"id": r.id, "cite": r.cite, "kind": r.kind, "statement": r.statement,
                 "status": r.status, "detail": r.detail}
        if r.evidence_size is not None:
            entry["evidence_size"] = r.evidence_size
        if r.table is not None:
            entry["table"] = _rows(r.table)
        entries.append(entry)
        timings.append((r.id, r.status, r.elapsed))

    posets = []
    for name, nodes in (("main", MAIN_NODES), ("symmetric", SYMMETRIC_NODES)):
        t0 = time.perf_counter()
        rep = build_poset(nodes, budget, jobs=jobs)
        status = "pass" if not rep.discrepancies else "fail"
        entries.append({"id": f"poset-{name}", "cite": "Thm 4.2(b)" if name == "main" else "Thm 5.8",
                        "status": status, "detail": f"{len(rep.discrepancies)} discrepancies"})
        posets.append({"name": name, **poset_doc(rep)})
        timings.append((f"poset-{name}", status, time.perf_counter() - t0))

    overall = all(e["status"] == "pass" for e in entries)
    doc = {
        "tool": "zlab",
        "version": __version__,
        "budget": budget,
        "deep_budget": deep_budget,
        "overall_pass": overall,
        "entries": entries,
        "classification": classification,
        "posets": posets,
    }
    return doc, timings


def cmd_reproduce(args) -> int:
    start = time.perf_counter()
    doc, timings = reproduction_doc(args.budget, args.deep_budget, args.jobs)
    width = max(len(t[0]) for t in timings)
    for ident, status, elapsed in timings:
        print(f"{ident:<{width}}  {status:<19}  {elapsed:7.3f}s")
    for p in doc["posets"]:
        dd = p.get("drawn_diagram")
        if dd and not dd["matches"]:
            print(f"note: {p['name']} poset differs from the reference diagram "
                  f"(missing {dd['missing']}, extra {dd['extra']})")
    passed = sum(e["status"] == "pass" for e in doc["entries"])
    print(f"{passed}/{len(doc['entries'])} entries pass; overall "
          f"{'PASS' if doc['overall_pass'] else 'FAIL'} in {time.perf_counter() - start:.1f}s")
    _write_report(args.report, doc)
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for rec in all_witnesses():
            (out / f"{rec.name}.tbl").write_text(f"# {rec.source}\n" + format_table(rec.table))
    return 0 if doc["overall_pass"] else 1


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"zlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="check one identity in a finite algebra")
    s.add_argument("--algebra", required=True, help="table file, or witness:NAME")
    s.add_argument("--identity", required=True, help="identity text or @FILE")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("member", help="variety membership of a finite algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("--variety", required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("search", help="find models of a given size")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--satisfy", action="append", default=[])
    s.add_argument("--fail", action="append", default=[])
    s.add_argument("--variety")
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--limit", type=int)
    s.add_argument("--all", action="store_true", help="print every model instead of the first")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("count", help="count models of a variety")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--variety", required=True)
    s.add_argument("--up-to-iso", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("classify", help="classify the identities of associative type")
    s.add_argument("--report")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("poset", help="inclusion poset and Hasse edges")
    s.add_argument("--nodes", help="comma-separated variety names")
    s.add_argument("--budget", type=int, default=3)
    s.add_argument("--report")
    s.add_argument("--dot", help="write the Hasse edges as a DOT graph")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_poset)

    s = sub.add_parser("reproduce", help="verify every recorded claim")
    s.add_argument("--budget", type=int, default=3)
    s.add_argument("--deep-budget", type=int, default=4)
    s.add_argument("--report")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--witness-dir", help="export embedded witness tables here")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (InputError, ParseError, TableFormatError, UnknownVarietyError, SizeGuardError) as e:
        print(f"zlab: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"zlab: error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
