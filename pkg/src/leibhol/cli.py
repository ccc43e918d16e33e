"""Command-line front end.

Exit codes: 0 success, 1 a mathematical answer in the negative (not
Leibniz, not isomorphic, a mismatched expectation), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from . import catalog, expectations as ex
from .algebra import NotLeibnizError, identity_flags, opposite
from .derivations import (
    antiderivation_space,
    biderivation_space,
    derivation_space,
    inner_derivations,
    lie_derivation_space,
)
from .fields import FieldError, field_from_spec
from .holomorph import BIDER, CLASSICAL, LIE, MISRA, NotLieError, build
from .io import ParseError, emit_algebra, emit_map, parse_algebra, parse_map
from .iso import FieldNotFiniteError, fingerprint, search_isomorphism, verify_homomorphism

OK, NEGATIVE, USAGE = 0, 1, 2

WORKERS_ENV = "LEIBHOL_WORKERS"


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_algebra(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _flag_lines(L) -> list:
    return [f"{k}: {'yes' if v else 'no'}" for k, v in identity_flags(L).as_dict().items()]


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    L = _load(args.file)
    print("\n".join(_flag_lines(L)))
    return OK if identity_flags(L).right_leibniz else NEGATIVE


def cmd_invariants(args) -> int:
    L = _load(args.file)
    try:
        fp = fingerprint(L)
    except NotLeibnizError as exc:
        print(exc, file=sys.stderr)
        return NEGATIVE
    doc = fp.as_dict()
    width = max(map(len, doc))
    for k, v in doc.items():
        if isinstance(v, dict):
            v = ", ".join(name for name, on in v.items() if on) or "-"
        elif isinstance(v, list):
            v = " > ".join(map(str, v))
        print(f"{k.ljust(width)}  {'-' if v is None else v}")
    print(json.dumps(doc, sort_keys=True))
    return OK


_SPACES = {
    "der": ("Der", derivation_space),
    "ader": ("ADer", antiderivation_space),
    "bider": ("Bider", biderivation_space),
    "lieder": ("DerLie", lie_derivation_space),
    "inn": ("Inn", inner_derivations),
}


def _matrix_text(m, indent="    ") -> str:
    rows = m.to_strings()
    w = max((len(c) for r in rows for c in r), default=1)
    return "\n".join(indent + "[" + " ".join(c.rjust(w) for c in r) + "]" for r in rows)


def cmd_spaces(args) -> int:
    L = _load(args.file)
    chosen = [k for k in _SPACES if getattr(args, k)] or list(_SPACES)
    try:
        for k in chosen:
            title, fn = _SPACES[k]
            S = fn(L)
            print(f"{title}: dim {S.dim}")
            if k == "bider":
                for t, (d, D) in enumerate(S.pairs(), 1):
                    print(f"  basis {t}: d =\n{_matrix_text(d)}\n  D =\n{_matrix_text(D)}")
            else:
                for t, m in enumerate(S.matrices(), 1):
                    print(f"  basis {t}:\n{_matrix_text(m)}")
    except NotLeibnizError as exc:
        print(exc, file=sys.stderr)
        return NEGATIVE
    return OK


def cmd_holomorph(args) -> int:
    L = _load(args.file)
    if args.op:
        L = opposite(L)
    try:
        H = build(L, args.kind)
    except (NotLeibnizError, NotLieError) as exc:
        print(exc, file=sys.stderr)
        return NEGATIVE
    _write(emit_algebra(H.algebra), args.output)
    flags = "\n".join(_flag_lines(H.algebra))
    print(flags, file=sys.stdout if args.output not in (None, "-") else sys.stderr)
    return OK


def cmd_iso(args) -> int:
    A, B = _load(args.a), _load(args.b)
    if A.field != B.field:
        raise UsageError("the two algebras live over different fields")
    if args.map is not None:
        try:
            f = parse_map(_read(args.map), A.field)
        except ParseError as exc:
            raise UsageError(f"{args.map}: {exc}") from None
        if (f.target_dim, f.source_dim) != (B.dim, A.dim):
            raise UsageError(f"map must be {B.dim}x{A.dim}, got {f.target_dim}x{f.source_dim}")
        check = verify_homomorphism(A, B, f)
        if check.is_iso:
            print("isomorphism verified")
            return OK
        if check.is_hom:
            print("homomorphism, not bijective")
        else:
            pairs = ", ".join(f"[e{i},e{j}]" for i, j in check.failures)
            print(f"not a homomorphism: fails on {pairs}")
        return NEGATIVE
    try:
        out = search_isomorphism(A, B, max_nodes=args.max_nodes)
    except FieldNotFiniteError:
        print("unknown (field infinite)")
        return NEGATIVE
    if out.found:
        print("isomorphism found")
        sys.stdout.write(emit_map(out.witness))
        return OK
    if out.status == "none":
        print(f"none (exhausted): {out.reason}")
    else:
        print(f"unknown ({out.reason})")
    return NEGATIVE


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects k=v, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            e = catalog.entry(name)
            params = ",".join(f"{p}={e.defaults.get(p, '?')}" for p in e.params)
            print(f"{name:<12} dim {e.dim}" + (f"  [{params}]" if params else "") + (f"  {e.note}" if e.note else ""))
        return OK
    if not args.name:
        raise UsageError("catalog emit needs an algebra name")
    try:
        fld = field_from_spec(args.field)
        L = catalog.get(args.name, _parse_params(args.param), fld)
    except (catalog.CatalogError, catalog.ConstraintError, FieldError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    _write(emit_algebra(L), args.output)
    return OK


# ---------------------------------------------------------------------------
# reproduction report


def _evaluate_index(i: int) -> dict:
    return ex.evaluate(ex.expectations()[i]).as_dict()


def run_expectations(workers: int = 1) -> list:
    items = ex.expectations()
    if workers <= 1:
        return [ex.evaluate(e).as_dict() for e in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_index, range(len(items))))


def report_document(records: list) -> dict:
    counts = Counter(r["status"] for r in records)
    summary = {s: counts.get(s, 0) for s in (ex.MATCH, ex.MISMATCH, ex.FLAGGED)}
    summary["total"] = len(records)
    return {"records": records, "summary": summary, "exit_status": NEGATIVE if summary[ex.MISMATCH] else OK}


def _short(v, width=38) -> str:
    s = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
    return s if len(s) <= width else s[: width - 3] + "..."


def format_table(doc: dict) -> str:
    lines = []
    for r in doc["records"]:
        lines.append(f"{r['status'].upper():<8} {r['subject']:<22} {_short(r['quantity'], 44):<44} "
                     f"expected {_short(r['expected'])} computed {_short(r['computed'])}")
        if r["note"]:
            lines.append(f"{'':<8} {'':<22} note: {r['note']}")
    s = doc["summary"]
    lines.append(f"{s['total']} expectations: {s['match']} match, {s['mismatch']} mismatch, {s['flagged']} flagged")
    return "\n".join(lines) + "\n"


def cmd_reproduce(args) -> int:
    try:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer") from None
    doc = report_document(run_expectations(workers))
    sys.stdout.write(format_table(doc))
    if args.report:
        _write(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.report)
    return doc["exit_status"]


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leibhol", description="Right Leibniz algebras: derivation spaces, holomorphs, isomorphisms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="report which identities hold")
    s.add_argument("file")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("invariants", help="isomorphism invariants as a table and JSON")
    s.add_argument("file")
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("spaces", help="canonical bases of derivation-type spaces")
    s.add_argument("file")
    for k, (title, _) in _SPACES.items():
        s.add_argument(f"--{k}", action="store_true", help=f"print {title}")
    s.set_defaults(fn=cmd_spaces)

    s = sub.add_parser("holomorph", help="build a holomorph or semidirect product")
    s.add_argument("file")
    s.add_argument("--kind", required=True, choices=(LIE, CLASSICAL, MISRA, BIDER))
    s.add_argument("--op", action="store_true", help="use the opposite algebra")
    s.add_argument("-o", "--output", help="write the algebra here instead of stdout")
    s.set_defaults(fn=cmd_holomorph)

    s = sub.add_parser("iso", help="verify a map or search for an isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help="map file to verify")
    g.add_argument("--search", action="store_true", help="exhaustive search (finite fields only)")
    s.add_argument("--max-nodes", type=int, default=None)
    s.set_defaults(fn=cmd_iso)

    s = sub.add_parser("catalog", help="list or emit built-in algebras")
    s.add_argument("action", choices=("list", "emit"))
    s.add_argument("name", nargs="?")
    s.add_argument("--param", action="append", metavar="K=V")
    s.add_argument("--field", default="Q", help="Q or F<p>, e.g. F5")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("reproduce", help="recompute every recorded classification result")
    s.add_argument("--report", help="write the JSON report here")
    s.set_defaults(fn=cmd_reproduce)
    return p


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"leibhol: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
