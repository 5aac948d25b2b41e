"""Command-line interface: ``projkh``.

Exit codes: 0 ok, 1 contradiction, 2 resource limit, 3 bad input.
All output is JSON unless ``--pretty`` is given.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..chaincx import ConstructionError, Flavor
from ..projdiag import DiagramError
from ..rescube import ResourceError

EXIT_OK, EXIT_CONTRADICTION, EXIT_RESOURCE, EXIT_BAD_INPUT = 0, 1, 2, 3


class BadInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _params(text: str) -> tuple[int, int]:
    try:
        vals = tuple(int(x) for x in text.replace(":", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers like 4,3, got {text!r}")
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers like 4,3, got {text!r}")
    return vals


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a:b, got {text!r}")
    if a > b:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return a, b


def _flip(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"flip must be a comma list of components, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="projkh", description="Khovanov-type homology of braid closures in S^3 and RP^3.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="homology table of a family member")
    c.add_argument("--family", required=True, choices=["T1", "T2", "Tni", "Sni", "T1pq", "T2pq"])
    c.add_argument("--params", required=True, type=_params, help="p,q or n,i")
    c.add_argument("--flavor", default="deformed", choices=["kh", "deformed", "lee"])
    c.add_argument("--window", type=_window, help="homological window a:b")
    c.add_argument("--flip", type=_flip, default=(), help="extra components to reverse")
    c.add_argument("--rational", action="store_true", help="skip torsion (faster)")
    c.add_argument("--out", type=Path, help="write JSON here instead of stdout")
    c.add_argument("--pretty", action="store_true", help="print a q-by-h grid")
    c.add_argument("--no-cache", action="store_true")

    s = sub.add_parser("s", help="s-invariant of T(d;p,q)")
    s.add_argument("--family", default="T2", choices=["T1", "T2", "T1pq", "T2pq"])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--no-cross-check", action="store_true",
                   help="skip the explicit Lee cycle cross-check (T2 only)")
    s.add_argument("--pretty", action="store_true")

    b = sub.add_parser("bound", help="slice-genus bound")
    b.add_argument("--d", type=int, required=True, choices=[1, 2])
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--sigma", type=int, required=True)
    b.add_argument("--pretty", action="store_true")

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--claims", default="all",
                   help="all, or a comma list of: les, rank, prop_s, question, s3, structure, genus")
    v.add_argument("--max-n", type=int, default=5)
    v.add_argument("--deep", action="store_true", help="also run n = max-n + 1 (slow)")
    v.add_argument("--threads", type=int, help="worker processes (default PROJKH_THREADS or 1)")
    v.add_argument("--out", type=Path, help="write the JSON report here")
    v.add_argument("--no-cache", action="store_true")
    v.add_argument("--snf-count", type=int, default=100)
    v.add_argument("--corrupt-signs", action="store_true",
                   help="negative control: flip one edge sign in every complex")
    v.add_argument("--pretty", action="store_true", help="one line per check")

    f = sub.add_parser("families", help="describe the link families")
    f.add_argument("--list", action="store_true")
    return ap


def _emit(obj, pretty_text: str | None, args, out: Path | None = None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=None if out is None else 1)
    if out is not None:
        out.write_text(text + "\n")
    if getattr(args, "pretty", False) and pretty_text is not None:
        print(pretty_text)
    elif out is None:
        print(text)


def cmd_compute(args) -> int:
    from ..exactalg.homology import filtered_homology, homology
    from ..chaincx import assemble
    from .cache import TableCache, cache_key
    from .families import FamilySpec, family_diagram

    spec = FamilySpec(args.family, args.params, args.flip)
    d = family_diagram(spec)
    flavor = Flavor.parse(args.flavor)
    meta = {"family": spec.family, "params": list(spec.params), "hash": d.hash,
            "ambient": d.ambient, "flip": list(spec.flip)}
    cache = TableCache(enabled=not args.no_cache)
    kind = "filtered" if flavor is Flavor.LEE else ("rat" if args.rational else "int")
    key = cache_key(d.hash, flavor.value, args.window, kind)
    obj = cache.get(key)
    if obj is None:
        cx = assemble(d, flavor, window=args.window)
        if flavor is Flavor.LEE:
            obj = filtered_homology(cx).to_json()
        else:
            tab = homology(cx, integral=not args.rational, link=meta)
            obj = tab.to_json()
        cache.put(key, obj)
    if flavor is Flavor.LEE:
        obj = dict(obj, link=meta, flavor="lee")
        text = "\n".join(f"h={h}: dim {dim}, filtration levels {lv}"
                         for h, dim, lv in obj["degrees"])
    else:
        from ..exactalg.homology import HomologyTable
        tab = HomologyTable.from_json(obj)
        tab.link = meta
        if args.window:
            tab = HomologyTable(tab.flavor, {k: v for k, v in tab.cells.items()
                                             if args.window[0] <= k[0] <= args.window[1]}, meta)
        obj = tab.to_json()
        text = f"{spec.label} [{flavor.value}] in {d.ambient}\n{tab.pretty()}"
    _emit(obj, text, args, args.out)
    return EXIT_OK


def cmd_s(args) -> int:
    from ..invariants import s_formula_t1, s_formula_t2, s_t1, s_t2
    fam = "T2" if args.family in ("T2", "T2pq") else "T1"
    if fam == "T2":
        res = s_t2(args.p, args.q, cross_check=not args.no_cross_check)
        formula = s_formula_t2(args.p, args.q)
    else:
        res = s_t1(args.p, args.q)
        formula = s_formula_t1(args.p, args.q)
    obj = {"family": fam, "p": args.p, "q": args.q, "formula": formula, **res.to_json()}
    val = res.value if res.value is not None else f"indeterminate {res.bracket}"
    _emit(obj, f"s(T({fam[1]};{args.p},{args.q})) = {val} via {res.method} "
               f"(closed formula {formula})", args)
    if res.value is not None and res.value != formula:
        return EXIT_CONTRADICTION
    return EXIT_OK


def cmd_bound(args) -> int:
    from ..invariants import GenusBoundQuery, genus_bound
    gb = genus_bound(GenusBoundQuery(args.d, args.s, args.sigma))
    obj = gb.to_json()
    _emit(obj, f"2g >= {obj['two_g_at_least']}  (g >= {gb.genus}), {gb.status}", args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SuiteConfig, run_suite
    cfg = SuiteConfig(claims=SuiteConfig.parse_claims(args.claims), max_n=args.max_n,
                      deep=args.deep, threads=args.threads, use_cache=not args.no_cache,
                      sign_mode="corrupt" if args.corrupt_signs else "solved",
                      snf_count=args.snf_count)
    if args.max_n < 1:
        raise BadInput("--max-n must be at least 1")
    progress = (lambda r: print(r.line(), flush=True)) if args.pretty else None
    report = run_suite(cfg, progress=progress)
    obj = report.to_json()
    if args.out:
        args.out.write_text(json.dumps(obj, sort_keys=True, indent=1, default=str) + "\n")
    if args.pretty:
        print(f"summary: {obj['summary']}  exit {report.exit_code}  {obj['runtime']}s")
    elif not args.out:
        print(json.dumps(obj, sort_keys=True, default=str))
    return report.exit_code


def cmd_families(args) -> int:
    from .families import DESCRIPTIONS, FAMILIES
    obj = {"families": [{"name": f, "description": DESCRIPTIONS[f]} for f in FAMILIES]}
    text = "\n".join(f"{f:5}  {DESCRIPTIONS[f]}" for f in FAMILIES)
    print(text if args.list else json.dumps(obj, sort_keys=True))
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "s": cmd_s, "bound": cmd_bound, "verify": cmd_verify,
            "families": cmd_families}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ResourceError as exc:
        print(json.dumps({"error": "resource", "message": str(exc)}), file=sys.stderr)
        return EXIT_RESOURCE
    except ConstructionError as exc:
        print(json.dumps({"error": "contradiction", "message": str(exc)}), file=sys.stderr)
        return EXIT_CONTRADICTION
    except (BadInput, DiagramError, ValueError) as exc:
        print(json.dumps({"error": "bad input", "message": str(exc)}), file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
