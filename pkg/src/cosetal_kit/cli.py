"""Command-line interface.

Every command prints tab-separated rows on stdout. Exit status is 0 on
success, 1 on bad input and 2 when a theorem check fails (or a golden
report no longer matches).
"""
from __future__ import annotations

import argparse
import difflib
import sys
from pathlib import Path

from .actions import wact_poset
from .classify import classify, summary_rows
from .cohomology import baer_sum, cohomology_group
from .errors import CosetalError, InputError, InvariantsDiffer, TheoremCheckFailed
from .extensions import extract_invariants, hom_set_labelled, morphism_condition, z1_group
from .io import dumps, extension_to_dict, load_extension, monoid_to_dict, resolve_monoid, save
from .limits import limits
from .oracle import oracle_enumerate_cosetal_extensions, oracle_enumerate_factor_sets
from .products import twisted_extension


def _emit(rows, out):
    for row in rows:
        print("\t".join(str(x) for x in row), file=out)


def _fmt(table) -> str:
    return ";".join(",".join(str(x) for x in row) for row in table)


def cmd_validate(args, out):
    m = resolve_monoid(args.monoid)
    _emit(
        [
            ("name", m.name),
            ("size", m.size),
            ("identity", m.label(m.identity)),
            ("commutative", m.is_commutative),
            ("group", m.is_group),
            ("idempotents", ",".join(m.label(e) for e in m.idempotents)),
        ],
        out,
    )
    return 0


def cmd_wact(args, out):
    P = wact_poset(resolve_monoid(args.H), resolve_monoid(args.N))
    rows = [("index", "relation", "action")]
    for i, p in enumerate(P.elements):
        rows.append((i, p.relation.label(), _fmt(p.action.table)))
    rows += [("cover", i, j) for i, j in P.covers()]
    _emit(rows, out)
    return 0


def cmd_cohomology(args, out):
    P = wact_poset(resolve_monoid(args.H), resolve_monoid(args.N))
    picks = range(len(P.elements)) if args.pair is None else [args.pair]
    rows = [("pair", "H2_order", "Z1_order", "representatives")]
    dump = []
    for i in picks:
        if not 0 <= i < len(P.elements):
            raise InputError(f"pair index {i} out of range 0..{len(P.elements) - 1}")
        p = P.elements[i]
        g = cohomology_group(p)
        rows.append((i, g.order, z1_group(p).order, " | ".join(_fmt(c) for c in g.classes)))
        dump.append({
            "pair": i,
            "relation": [list(x) for x in p.relation.partitions],
            "action": [list(r) for r in p.action.table],
            "order": g.order,
            "addition": [list(r) for r in g.add],
            "representatives": [[list(r) for r in c] for c in g.classes],
        })
    _emit(rows, out)
    if args.out:
        save({"schema": "cosetal-kit/1", "cohomology": dump}, args.out)
    return 0


def cmd_classify(args, out):
    H, N = resolve_monoid(args.H), resolve_monoid(args.N)
    report = classify(H, N, with_oracle=False if args.no_oracle else None)
    text = dumps(report)
    _emit(summary_rows(report), out)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.figures:
        from .plotting import render_figures

        for p in render_figures(report, args.figures):
            _emit([("figure", p)], out)
    status = 0 if report["ok"] else 2
    if args.golden:
        golden = Path(args.golden)
        if not golden.exists():
            golden.write_text(text, encoding="utf-8")
            _emit([("golden", "written", golden)], out)
        else:
            old = golden.read_text(encoding="utf-8")
            if old == text:
                _emit([("golden", "match", golden)], out)
            else:
                diff = difflib.unified_diff(
                    old.splitlines(True), text.splitlines(True), str(golden), "current"
                )
                sys.stderr.writelines(diff)
                _emit([("golden", "differs", golden)], out)
                status = 2
    return status


def cmd_hom(args, out):
    e1, e2 = load_extension(args.ext1), load_extension(args.ext2)
    i1, i2 = extract_invariants(e1), extract_invariants(e2)
    homs = hom_set_labelled(e1, e2, i1, i2)
    rows = [("condition", morphism_condition(i1, i2)), ("count", len(homs))]
    rows += [("morphism", ",".join(map(str, star)), ",".join(map(str, f.image))) for star, f in homs]
    _emit(rows, out)
    return 0


def cmd_baer(args, out):
    e1, e2 = load_extension(args.ext1), load_extension(args.ext2)
    i1, i2 = extract_invariants(e1), extract_invariants(e2)
    if i1.pair != i2.pair:
        raise InvariantsDiffer("Baer sum needs extensions with the same (E, [phi])")
    group = cohomology_group(i1.pair)
    c = baer_sum(group, i1.cls, i2.cls)
    ext = twisted_extension(i1.pair, group.classes[c])
    _emit([("class", i1.cls, i2.cls, c), ("G_size", ext.G.size)], out)
    if args.out:
        save(extension_to_dict(ext, monoid_to_dict(ext.G)), args.out)
    return 0


def cmd_oracle(args, out):
    H, N = resolve_monoid(args.H), resolve_monoid(args.N)
    P = wact_poset(H, N)
    rows = [("pair", i, "raw_factor_sets", len(oracle_enumerate_factor_sets(p))) for i, p in enumerate(P.elements)]
    buckets = oracle_enumerate_cosetal_extensions(H, N)
    rows.append(("iso_classes", len(buckets)))
    for b in buckets:
        inv = b.invariants
        rows.append(("bucket", P.elements.index(inv.pair), inv.cls, b.representative.G.size, b.size))
    _emit(rows, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosetal-kit", description=__doc__.splitlines()[0])
    p.add_argument("--max-size", type=int, default=None, help="raise or lower the enumeration caps")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a monoid file")
    s.add_argument("monoid")
    s.set_defaults(fn=cmd_validate)

    for name, fn, help_ in (
        ("wact", cmd_wact, "list the poset of compatible pairs"),
        ("cohomology", cmd_cohomology, "second cohomology of every compatible pair"),
        ("classify", cmd_classify, "full classification report"),
        ("oracle", cmd_oracle, "brute-force oracle counts"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("H", help="fixture name or monoid file")
        s.add_argument("N", help="fixture name or monoid file")
        s.set_defaults(fn=fn)
        if name == "cohomology":
            s.add_argument("--pair", type=int, default=None)
            s.add_argument("--out", default=None)
        if name == "classify":
            s.add_argument("--out", default=None, help="write the JSON report here")
            s.add_argument("--figures", default=None, help="directory for PNG figures")
            s.add_argument("--golden", default=None, help="write on first run, diff afterwards")
            s.add_argument("--no-oracle", action="store_true")

    s = sub.add_parser("hom", help="morphisms between two cosetal extensions")
    s.add_argument("ext1")
    s.add_argument("ext2")
    s.set_defaults(fn=cmd_hom)

    s = sub.add_parser("baer", help="Baer sum of two cosetal extensions")
    s.add_argument("ext1")
    s.add_argument("ext2")
    s.add_argument("--out", default=None, help="write the sum as an extension file")
    s.set_defaults(fn=cmd_baer)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    caps = {} if args.max_size is None else {"max_enum_size": args.max_size, "max_oracle_h": args.max_size}
    try:
        with limits(**caps):
            return args.fn(args, out)
    except TheoremCheckFailed as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return 2
    except (InputError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CosetalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
