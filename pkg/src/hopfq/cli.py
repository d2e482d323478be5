"""Command-line interface: operator rendering, verification sweeps, tables.

Subcommands:
  hamiltonian  render a quantum (or naively ordered) Hamiltonian
  verify       run a verification suite, exit 0 on pass / 1 on failure
  tables       emit amplitude / degree-slice / factorization-count tables

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .disk import (disk_potential, hurwitz_match_report, hurwitz_oracle,
                   integer_hbar_check, p1_partition_function,
                   schroedinger_check, verify_printed_expansion)
from .fock import NormalOrderedOperator, naive_hamiltonian
from .hamiltonians import (hamiltonian, verify_commutativity,
                           verify_eigenvectors)
from .kp import (kp_bilinear_check, kp_equation_check, kp_hierarchy_check,
                 tau_from_disk)
from .partitions import partitions_of, render as render_partition
from .scalars import ExactScalar


def _parse_rational(text):
    if text is None or text == "symbolic":
        return None
    return Fraction(text)


def _eps_value(args):
    """Rational eps from --eps, or the exact square root of --hbar."""
    if args.eps is not None:
        return args.eps
    if args.hbar is not None:
        h = Fraction(args.hbar)
        num, den = h.numerator, h.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            raise ValueError("--hbar must be the square of a rational; "
                             "use --eps for other values")
        return Fraction(rn, rd)
    return None


def default_cache_dir():
    env = os.environ.get("HOPFQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hopfq"


# ---------------------------------------------------------------------------
# operator cache


def cached_hamiltonian(n, W, cache_dir, use_cache=True):
    """Generate (or reload) the Hamiltonian for (n, W); caches include a
    version header and stale-version files are ignored."""
    if not use_cache or cache_dir is None:
        return hamiltonian(n, W)
    path = Path(cache_dir) / f"hamiltonian_{n}_{W}.json"
    if path.exists():
        try:
            payload = json.loads(path.read_text())
            if (payload.get("code_version") == __version__
                    and payload.get("n") == n and payload.get("W") == W):
                return NormalOrderedOperator.from_json(payload["terms"])
        except (ValueError, KeyError):
            pass
    op = hamiltonian(n, W)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(
        {"n": n, "W": W, "code_version": __version__, "terms": op.to_json()}))
    return op


def _verify_cache_sample(cache_dir, rng):
    """Reload one random cached operator and re-verify it against fresh
    generation; silently passes when the cache is empty."""
    files = sorted(Path(cache_dir).glob("hamiltonian_*_*.json")) \
        if cache_dir and Path(cache_dir).exists() else []
    if not files:
        return True
    path = rng.choice(files)
    payload = json.loads(path.read_text())
    if payload.get("code_version") != __version__:
        return True
    fresh = hamiltonian(payload["n"], payload["W"])
    return NormalOrderedOperator.from_json(payload["terms"]) == fresh


# ---------------------------------------------------------------------------
# subcommands


def cmd_hamiltonian(args):
    if args.n < -1:
        print("error: n must be >= -1", file=sys.stderr)
        return 2
    if args.naive:
        op = naive_hamiltonian(args.n, args.weight)
    else:
        op = cached_hamiltonian(args.n, args.weight, args.cache_dir,
                                use_cache=not args.no_cache)
    if args.format == "json":
        print(json.dumps({"n": args.n, "W": args.weight,
                          "naive": bool(args.naive), "terms": op.to_json()},
                         indent=2))
    else:
        print(op.render())
    return 0


def _suite_tasks(args):
    """(name, callable) pairs for the requested verification suite."""
    N, K, W = args.N, args.K, args.weight

    def commute():
        rep = verify_commutativity(N, W)
        return not rep["failures"], rep

    def eigen():
        rep = verify_eigenvectors(K, min(W, 8))
        return not rep["failures"], rep

    def disk():
        issues = []
        ok = verify_printed_expansion(issues)
        ok = ok and integer_hbar_check(min(W, 6))
        ok = ok and all(schroedinger_check(k, min(W, 6)) for k in range(K + 1))
        return ok, {"printed_expansion_issues": [str(i) for i in issues]}

    def hirota():
        pot = disk_potential(min(W, 8), 4)
        report = {}
        ok = True
        for label, active in [("none", set()), ("t0", {0}), ("t0t1", {0, 1})]:
            tau = tau_from_disk(pot, active, 0, Fraction(1))
            checks = {
                "bilinear1": kp_bilinear_check(1, tau),
                "bilinear2": kp_bilinear_check(2, tau),
                "kp_equation": kp_equation_check(tau),
            }
            hier = kp_hierarchy_check(tau, y_order=1)
            checks["hierarchy_y1"] = not hier["failures"]
            report[label] = checks
            ok = ok and all(checks.values())
        return ok, report

    def fermion():
        from .fermion import (FermionVector, boson_fermion_map,
                              dressed_fermion_check, state_for_partition_label)
        from .partitions import partitions_upto
        from .schur import schur
        ok = all(
            boson_fermion_map(FermionVector.basis(state_for_partition_label(lam)))
            == schur(lam)
            for lam in partitions_upto(min(W, 6)))
        ok = ok and all(dressed_fermion_check(Fraction(j, 2), 3)
                        for j in (-3, -1, 1, 3))
        return ok, {}

    def hurwitz():
        rep = hurwitz_match_report(min(args.n if args.n is not None else 5, 5),
                                   min(args.m, 6))
        return not rep["mismatches"], rep

    def p1():
        try:
            p1_partition_function(min(W, 4), K)
            return True, {}
        except AssertionError as ex:
            return False, {"error": str(ex)}

    table = {"commute": commute, "eigen": eigen, "disk": disk,
             "hirota": hirota, "fermion": fermion, "hurwitz": hurwitz,
             "p1": p1}
    if args.suite == "all":
        return sorted(table.items())
    return [(args.suite, table[args.suite])]


def cmd_verify(args):
    rng = random.Random(args.seed)
    tasks = _suite_tasks(args)
    results = {}
    if args.jobs and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [(name, pool.submit(fn)) for name, fn in tasks]
            for name, fut in futures:  # deterministic collection order
                results[name] = fut.result()
    else:
        for name, fn in tasks:
            results[name] = fn()
    if not args.no_cache:
        cache_ok = _verify_cache_sample(args.cache_dir, rng)
        results["cache_sample"] = (cache_ok, {})
    report = {name: {"passed": ok, "detail": _jsonable(detail)}
              for name, (ok, detail) in results.items()}
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if all(ok for ok, _ in results.values()) else 1


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


# ---------------------------------------------------------------------------
# tables


def _emit_rows(header, rows, fmt):
    if fmt == "json":
        print(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    elif fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    elif fmt == "latex":
        print("\\begin{tabular}{" + "l" * len(header) + "}")
        print(" & ".join(header) + " \\\\ \\hline")
        for row in rows:
            print(" & ".join(str(x) for x in row) + " \\\\")
        print("\\end{tabular}")
    else:
        widths = [max(len(str(x)) for x in [h] + [r[i] for r in rows])
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))


def cmd_tables(args):
    fmt = args.format
    if args.what == "disk":
        pot = disk_potential(args.weight, args.K)
        rows = []
        for n in range(args.weight + 1):
            for lam in partitions_of(n):
                amp = pot.amplitudes[lam]
                rows.append([render_partition(lam), amp.prefactor.render()]
                            + [e.render() for e in amp.exponents])
        _emit_rows(["partition", "prefactor"]
                   + [f"t{k}_exponent" for k in range(args.K + 1)], rows, fmt)
    elif args.what == "p1":
        D = args.degree if args.degree is not None else min(args.weight, 4)
        slices = p1_partition_function(D, args.K)
        rows = []
        eps_val = _eps_value(args)
        for d in sorted(slices):
            for lam, coeff, exponents in slices[d]:
                c = coeff.substitute(eps=eps_val) if eps_val is not None else coeff
                exps = tuple(e.substitute(eps=eps_val, u0=args.u0)
                             if (eps_val is not None or args.u0 is not None)
                             else e for e in exponents)
                rows.append([d, render_partition(lam), c.render()]
                            + [e.render() for e in exps])
        _emit_rows(["degree", "partition", "coefficient"]
                   + [f"t{k}_exponent" for k in range(args.K + 1)], rows, fmt)
    elif args.what == "hurwitz":
        n = args.n if args.n is not None else 3
        rows = []
        for m in range(args.m + 1):
            for mu in partitions_of(n):
                rows.append([n, m, render_partition(mu),
                             str(hurwitz_oracle(n, m, mu))])
        _emit_rows(["n", "m", "cycle_type", "count_over_nfact"], rows, fmt)
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hopfq",
        description="Exact quantized-Hopf-hierarchy engine: operators, "
                    "verification sweeps, and tables.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--weight", type=int, default=8,
                       help="truncation weight W (default 8)")
        p.add_argument("--N", type=int, default=5,
                       help="largest Hamiltonian index for sweeps")
        p.add_argument("--K", type=int, default=3,
                       help="number of t-slots / eigenvalue index bound")
        p.add_argument("--u0", type=_parse_rational, default=None,
                       help="rational value for u0 ('symbolic' to keep)")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--hbar", type=_parse_rational, default=None,
                           help="rational value for hbar")
        group.add_argument("--eps", type=_parse_rational, default=None,
                           help="rational value for eps")
        p.add_argument("--format", choices=["text", "json", "csv", "latex"],
                       default="text")
        p.add_argument("--cache-dir", type=Path, default=default_cache_dir())
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-cache", action="store_true")

    ph = sub.add_parser("hamiltonian", help="render a Hamiltonian operator")
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--naive", action="store_true",
                    help="naive symbol ordering (no corrections)")
    common(ph)
    ph.set_defaults(func=cmd_hamiltonian)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=["commute", "eigen", "disk", "hirota",
                                      "fermion", "hurwitz", "p1", "all"])
    pv.add_argument("--n", type=int, default=None,
                    help="symmetric-group degree bound (hurwitz)")
    pv.add_argument("--m", type=int, default=6,
                    help="transposition-count bound (hurwitz)")
    common(pv)
    pv.set_defaults(func=cmd_verify)

    pt = sub.add_parser("tables", help="emit a table")
    pt.add_argument("what", choices=["disk", "p1", "hurwitz"])
    pt.add_argument("--degree", type=int, default=None,
                    help="maximal stable-map degree (p1)")
    pt.add_argument("--n", type=int, default=None)
    pt.add_argument("--m", type=int, default=4)
    common(pt)
    pt.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
