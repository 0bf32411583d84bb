"""Command line interface: ``confrep {dims,rep,content,xi,catalog,check}``.

Exit codes: 0 success, 1 a check suite failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import checks, cohomology, mcg
from .freegroup import content, parse_word
from .johnson import xi

PRODUCT_HELP = (
    "product of catalog entries such as 'T1*T2^-1'; factors compose like maps, "
    "so 'T1*T2' applies T2 first (the representation is a left action)"
)


class UsageError(Exception):
    pass


def _q(x) -> str:
    return str(Fraction(x))


def _emit(rows: list[list], header: list[str], fmt: str, meta: dict) -> str:
    out = io.StringIO()
    if fmt == "json":
        out.write(json.dumps({"meta": meta, "header": header}, sort_keys=True) + "\n")
        for r in rows:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        for k, v in meta.items():
            out.write(f"# {k}: {v}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for k, v in meta.items():
            out.write(f"# {k}: {v}\n")
        table = [header] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[j]) for r in table) for j in range(len(header))]
        for r in table:
            out.write("  ".join(c.rjust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")
    return out.getvalue()


def _catalog(args) -> mcg.TwistCatalog:
    if args.catalog:
        cat = mcg.load_catalog(args.catalog)
        if args.g is not None and cat.genus != args.g:
            raise UsageError(f"catalog has genus {cat.genus}, --g is {args.g}")
        return cat
    if args.g is None:
        raise UsageError("need --g or --catalog")
    try:
        return mcg.bundled_catalog(args.g)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None


def _product(cat: mcg.TwistCatalog, expr: str) -> mcg.MappingClass:
    try:
        return mcg.product(cat, expr)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _nonneg(name: str, value: int):
    if value is not None and value < 0:
        raise UsageError(f"{name} must be non-negative, got {value}")


def cmd_dims(args) -> str:
    for name in ("g", "imax", "nmax"):
        _nonneg("--" + name, getattr(args, name))
    table = cohomology.dims_table(args.g, args.imax, args.nmax)
    header = ["i"] + [f"n={n}" for n in range(args.nmax + 1)]
    rows = [[i] + row for i, row in enumerate(table)]
    meta = {"command": "dims", "g": args.g, "entry": "dim H^i(C_n(Sigma_{g,1}); Q)"}
    return _emit(rows, header, args.format, meta)


def cmd_rep(args) -> str:
    for name in ("i", "n"):
        _nonneg("--" + name, getattr(args, name))
    cat = _catalog(args)
    mc = _product(cat, args.phi)
    basis = cohomology.slice_basis(cat.genus, args.i, args.n)
    mat = cohomology.act(mc, basis)
    header = ["basis"] + [str(m) for m in basis.monomials]
    rows = [[str(m)] + [_q(x) for x in row] for m, row in zip(basis.monomials, mat.tolist())]
    meta = {
        "command": "rep",
        "phi": args.phi,
        "g": cat.genus,
        "slice": f"({args.i},({args.n}))",
        "convention": "columns are images of basis elements; the basis is ours, only the isomorphism class is canonical",
    }
    return _emit(rows, header, args.format, meta)


def cmd_content(args) -> str:
    try:
        w = parse_word(args.word, args.n)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    return str(content(w)) + "\n"


def cmd_xi(args) -> str:
    cat = _catalog(args)
    mc = _product(cat, args.phi)
    rows = [[f"e{i}", str(b)] for i, b in enumerate(xi(mc.phi), start=1)]
    return _emit(rows, ["e", "xi"], args.format, {"command": "xi", "phi": args.phi, "g": cat.genus})


def cmd_catalog(args) -> str:
    cat = _catalog(args)
    rows = []
    for name in cat.names():
        e = cat.entries[name]
        cls = " ".join(map(str, e.homology_class)) if e.homology_class is not None else "-"
        rows.append([name, "valid", cls, e.note])
    return _emit(rows, ["entry", "status", "class", "note"], args.format, {"command": "catalog", "g": cat.genus})


def cmd_check(args) -> tuple[str, int]:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    lines = [f"# confrep check seed={args.seed}"]
    failed = False
    for name in names:
        kwargs = {}
        if name in ("nonsymplectic", "tau", "homomorphism") and args.g is not None:
            kwargs["g"] = args.g
        if name in ("nonsymplectic", "tau") and args.L is not None:
            kwargs["bound"] = args.L
        try:
            res = checks.SUITES[name](args.seed, **kwargs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        lines.append(res.line())
        failed |= not res.ok
    return "\n".join(lines) + "\n", 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="confrep",
        description="Rational cohomology of configuration spaces of Sigma_{g,1} as mapping class group representations.",
        epilog="Products: " + PRODUCT_HELP + ".",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    def cat_opts(sp, g_required=False):
        sp.add_argument("--g", type=int, required=g_required, help="genus (selects the bundled catalog)")
        sp.add_argument("--catalog", help="catalog file (default: bundled catalog for --g)")

    d = sub.add_parser("dims", help="table of dim H^i(C_n)")
    d.add_argument("--g", type=int, required=True)
    d.add_argument("--imax", type=int, default=4)
    d.add_argument("--nmax", type=int, default=4)
    fmt(d)

    r = sub.add_parser("rep", help="matrix of a mapping class on H^i(C_n)", epilog=PRODUCT_HELP)
    r.add_argument("--phi", required=True, help=PRODUCT_HELP)
    cat_opts(r)
    r.add_argument("--i", type=int, required=True)
    r.add_argument("--n", type=int, required=True)
    fmt(r)

    c = sub.add_parser("content", help="content of a word")
    c.add_argument("--word", required=True, help="tokens a<j> or a<j>^-1, '1' for the empty word")
    c.add_argument("--n", type=int, default=None, help="rank (default: largest generator index)")

    x = sub.add_parser("xi", help="xi of a catalog product", epilog=PRODUCT_HELP)
    x.add_argument("--phi", required=True, help=PRODUCT_HELP)
    cat_opts(x)
    fmt(x)

    k = sub.add_parser("catalog", help="load and validate a twist catalog")
    cat_opts(k)
    fmt(k)

    ch = sub.add_parser("check", help="run verification suites")
    ch.add_argument("--suite", default="all", choices=["all"] + list(checks.SUITES))
    ch.add_argument("--seed", type=int, default=0)
    ch.add_argument("--g", type=int, default=None)
    ch.add_argument("--L", type=int, default=None, help="search bound for nonsymplectic/tau")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "content" and args.n is None:
            toks = [t.partition("^")[0] for t in args.word.split() if t != "1"]
            try:
                args.n = max((int(t[1:]) for t in toks), default=0)
            except ValueError:
                raise UsageError(f"bad word {args.word!r}") from None
        code = 0
        if args.command == "check":
            text, code = cmd_check(args)
        else:
            text = {"dims": cmd_dims, "rep": cmd_rep, "content": cmd_content, "xi": cmd_xi, "catalog": cmd_catalog}[
                args.command
            ](args)
    except UsageError as exc:
        print(f"confrep: error: {exc}", file=sys.stderr)
        return 2
    except (mcg.CatalogError, mcg.BoundaryNotFixed, mcg.NotSymplectic, OSError) as exc:
        print(f"confrep: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
