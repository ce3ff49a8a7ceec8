"""Command line: evaluate polynomials, enumerate lattice sets, run verification suites.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage errors.
Set HAHNPOLY_WORKERS to run grid suites in several processes.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Sequence

from . import hahn1d as h1
from . import hahnmd as hm
from . import verify as vf
from .exact import is_undefined
from .lattice import LatticeParams


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _params(args):
    """Params1D for two ell entries, LatticeParams otherwise; None if --ell is absent."""
    if args.ell is None:
        if args.N is not None:
            raise UsageError("--N needs --ell")
        return None
    if args.N is None:
        raise UsageError("--ell needs --N")
    d = len(args.ell) - 1
    if args.d is not None and args.d != d:
        raise UsageError(f"--d {args.d} does not match {len(args.ell)} ell entries")
    try:
        if d == 1:
            return h1.Params1D(args.ell[0], args.ell[1], args.N)
        return LatticeParams(args.ell, args.N)
    except ValueError as e:
        raise UsageError(str(e))


def _params_obj(p) -> dict:
    if isinstance(p, h1.Params1D):
        return {"ell": [p.ell1, p.ell2], "N": p.N}
    return {"ell": list(p.ell), "N": p.N}


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    p = _params(args)
    if p is None:
        raise UsageError("eval needs --ell and --N")
    out = {"command": "eval", "params": _params_obj(p), "normalization": args.normalization}
    if isinstance(p, h1.Params1D):
        if args.n is None:
            raise UsageError("one-variable eval needs --n")
        if args.normalization != "Q":
            raise UsageError("one-variable eval supports the Q normalization only")
        try:
            poly = h1.hahn_sQ(args.n, p)
        except h1.OutOfRangeError as e:
            raise UsageError(str(e))
        out["index"] = args.n
        points = [(x,) for x in p.support()]
    else:
        if args.nu is None:
            raise UsageError("multivariate eval needs --nu")
        try:
            h = hm.hahn_md(args.nu, p, hm.Normalization(args.normalization))
            poly = h.poly
        except (ValueError, h1.OutOfRangeError) as e:
            raise UsageError(str(e))
        out["index"] = list(args.nu)
        points = list(p.V)
    if is_undefined(poly):
        out["undefined"] = poly.reason
        _dump(out)
        return 0
    if args.values:
        out["values"] = [{"x": list(x), "value": str(poly.eval(x))} for x in points]
    else:
        out["poly"] = poly.to_json_obj()
        out["text"] = poly.format()
    _dump(out)
    return 0


def _suite_params(args):
    p = _params(args)
    if p is not None:
        return [p], _params_obj(p)
    name = args.grid or vf.DEFAULT_GRID.get(args.suite)
    if name not in vf.GRIDS:
        raise UsageError(f"unknown grid {name!r}; choose from {', '.join(sorted(vf.GRIDS))}")
    return vf.GRIDS[name](), {"grid": name}


def cmd_verify(args) -> int:
    start = time.perf_counter()
    suite = args.suite
    if suite == "conjecture":
        if args.n is not None or args.ell1 is not None or args.ell2 is not None:
            if None in (args.n, args.ell1, args.ell2):
                raise UsageError("conjecture needs all of --n, --ell1, --ell2, or none")
            if not 1 <= args.n <= min(args.ell1, args.ell2):
                raise UsageError("need 1 <= n <= min(ell1, ell2)")
            checks = vf.conjecture_1d(args.n, args.ell1, args.ell2)
            params = {"n": args.n, "ell1": args.ell1, "ell2": args.ell2}
        else:
            checks = vf.conjecture_grid()
            params = {"grid": "n<=4, ell<=5"}
    elif suite == "poisson":
        p = _params(args)
        if p is None:
            checks = [c for ell in (1, 2, 3) for c in vf.poisson_triangle(ell)]
            params = {"grid": "triangle l<=3"}
        else:
            ell = getattr(p, "ell", ())
            if len(set(ell)) != 1 or len(ell) != 3 or p.N != 2 * ell[0]:
                raise UsageError("poisson needs the triangle case --ell l,l,l --N 2l")
            checks, params = vf.poisson_triangle(ell[0]), _params_obj(p)
    else:
        plist, params = _suite_params(args)
        try:
            checks = vf.run_suite(suite, plist)
        except KeyError as e:
            raise UsageError(str(e.args[0]))
    elapsed = 0 if args.no_timing else int((time.perf_counter() - start) * 1000)
    report = {"command": f"verify {suite}", "params": params,
              "checks": [c.to_obj() for c in checks], "elapsed_ms": elapsed}
    if args.failures_only:
        report["checks"] = [c for c in report["checks"] if c["status"] == vf.FAIL]
    _dump(report)
    return 1 if any(c.status == vf.FAIL for c in checks) else 0


def cmd_domain(args) -> int:
    p = _params(args)
    if p is None:
        raise UsageError("domain needs --ell and --N")
    if isinstance(p, h1.Params1D):
        p = LatticeParams((p.ell1, p.ell2), p.N)
    if args.set == "V":
        rows = p.V
    elif args.set == "H":
        rows = p.H
    elif args.set == "CH":
        rows = p.CH
    else:
        if args.nu is None:
            raise UsageError("--set zeros needs --nu")
        try:
            poly = hm.sQ_nu_poly(args.nu, p)
        except (ValueError, h1.OutOfRangeError) as e:
            raise UsageError(str(e))
        if is_undefined(poly):
            raise UsageError(f"polynomial is undefined: {poly.reason}")
        rows = hm.lattice_zeros(poly, p)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow([f"x{i + 1}" for i in range(p.d)])
    w.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hahnpoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def lattice_flags(sp):
        sp.add_argument("--d", type=int, help="dimension; inferred from --ell when omitted")
        sp.add_argument("--ell", type=_ints, help="l_1,...,l_{d+1}")
        sp.add_argument("--N", type=int)

    e = sub.add_parser("eval", help="print a polynomial as JSON")
    lattice_flags(e)
    e.add_argument("--n", type=int, help="degree (one variable)")
    e.add_argument("--nu", type=_ints, help="multi-index (several variables)")
    e.add_argument("--normalization", choices=["Q", "H", "hat"], default="Q")
    e.add_argument("--values", action="store_true", help="print values on the domain instead")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("suite", choices=vf.SUITES)
    lattice_flags(v)
    v.add_argument("--grid", help=f"parameter grid: {', '.join(sorted(vf.GRIDS))}")
    v.add_argument("--n", type=int)
    v.add_argument("--ell1", type=int)
    v.add_argument("--ell2", type=int)
    v.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")
    v.add_argument("--failures-only", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("domain", help="print a lattice set as CSV")
    lattice_flags(d)
    d.add_argument("--set", choices=["V", "H", "CH", "zeros"], required=True)
    d.add_argument("--nu", type=_ints)
    d.set_defaults(func=cmd_domain)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"hahnpoly: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
