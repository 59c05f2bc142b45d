"""Command-line surface: analyze, reduce, bounds, generate, enumerate, verify.

Exit codes: 0 success, 1 verification failure, 2 input (parse) error,
3 usage/parameter error.  Desk-scale limits may be overridden with the
``CNFSTRUCT_LIMITS`` environment variable (``key=value`` pairs separated by
commas, e.g. ``n=10``); effective limits are echoed in every report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import bounds, classify, dimacs, enumeration, reduce as reduce_mod, transform
from .core import measures
from .errors import CnfstructError, DimacsSyntaxError, ParameterOutOfRange, TautologicalClause
from .matching import delta_star, surplus

SCHEMA_VERSION = 1

ANALYZE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "input_digest", "measures", "surplus", "class_flags", "limits"],
    "properties": {
        "schema_version": {"type": "integer"},
        "input_digest": {"type": "string"},
        "measures": {
            "type": "object",
            "required": ["n", "c", "delta", "delta_star", "ell", "minvdeg", "nfc", "varmvd"],
        },
        "surplus": {
            "type": "object",
            "required": ["value", "witness"],
        },
        "class_flags": {"type": "object"},
        "limits": {"type": "object"},
    },
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 3, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _env_limits() -> dict:
    out = {}
    raw = os.environ.get("CNFSTRUCT_LIMITS", "")
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise ParameterOutOfRange(f"bad CNFSTRUCT_LIMITS entry {part!r}")
    return out


def _read_input(path: str):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def _tri(flag) -> str:
    return "skipped" if flag is None else ("yes" if flag else "no")


def cmd_analyze(args) -> int:
    text = _read_input(args.path)
    F = dimacs.parse_dimacs(text)
    n_limit = args.limit_n
    m = measures(F)
    s = surplus(F)
    report = classify.classify_report(F, n_limit=n_limit)
    flags = {
        "sat": report.sat,
        "hitting": report.hitting,
        "unsat_hitting": report.unsat_hitting,
        "mu": report.mu,
        "smu": report.smu,
        "marginal_mu": report.marginal_mu,
        "lean": report.lean,
        "matching_lean": report.matching_lean,
        "vmu": report.vmu,
        "sed": report.sed,
        "mlcr": report.mlcr,
    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "input_digest": hashlib.sha256(text.encode()).hexdigest(),
        "measures": {
            "n": m.n,
            "c": m.c,
            "delta": m.delta,
            "delta_star": delta_star(F),
            "ell": m.ell,
            "minvdeg": None if m.n == 0 else int(m.minvdeg),
            "nfc": m.nfc,
            "varmvd": sorted(m.varmvd),
        },
        "surplus": {
            "value": s.value,
            "witness": sorted(s.witness) if s.witness is not None else None,
        },
        "class_flags": {k: _tri(v) for k, v in flags.items()},
        "limits": dict(report.size_limits_used),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    mm = payload["measures"]
    for key in ("n", "c", "delta", "delta_star", "ell"):
        print(f"{key} {mm[key]}")
    print(f"minvdeg {'inf' if mm['minvdeg'] is None else mm['minvdeg']}")
    print(f"varmvd {' '.join(str(v) for v in mm['varmvd'])}")
    print(f"nfc {mm['nfc']}")
    w = payload["surplus"]["witness"]
    print(f"surplus {payload['surplus']['value']}")
    print(f"surplus_witness {' '.join(str(v) for v in w) if w else '-'}")
    print("flags " + " ".join(f"{k}={_tri(v)}" for k, v in flags.items()))
    print("limits " + " ".join(f"{k}={v}" for k, v in payload["limits"].items()))
    return 0


def cmd_reduce(args) -> int:
    text = _read_input(args.path)
    F = dimacs.parse_dimacs(text)
    trace = reduce_mod.autarky_reduce(
        F, want_witnesses=args.witnesses, witness_n_limit=args.witness_limit
    )
    out = dimacs.write_dimacs(trace.result)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    summary = {
        "duplicates_removed": trace.duplicates_removed,
        "empty_clause_shortcut": trace.empty_clause_shortcut,
        "steps": [
            {
                "kind": "kernel" if isinstance(st, reduce_mod.KernelStep) else "surplus",
                "removed": st.removed,
                **(
                    {"variables": sorted(st.variables)}
                    if isinstance(st, reduce_mod.SurplusStep)
                    else {"autarky": {str(v): st.autarky[v] for v in st.autarky}}
                ),
                **(
                    {
                        "witness": {str(v): st.witness[v] for v in st.witness}
                        if st.witness is not None
                        else None
                    }
                    if isinstance(st, reduce_mod.SurplusStep) and args.witnesses
                    else {}
                ),
            }
            for st in trace.steps
        ],
        "result_clauses": trace.result.total(),
    }
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "trace": summary}, sort_keys=True))
    else:
        print(f"trace: {json.dumps(summary, sort_keys=True)}", file=sys.stderr)
    return 0


def _parse_range(spec: str) -> range:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return range(int(lo), int(hi) + 1)
    k = int(spec)
    return range(k, k + 1)


def cmd_bounds(args) -> int:
    ks = _parse_range(args.range)
    if args.prefix:
        try:
            prefix = bounds.BoundsFunction(int(a) for a in args.prefix.split(","))
        except (ValueError, CnfstructError) as exc:
            print(f"invalid prefix: {exc}", file=sys.stderr)
            return 3
        rows = [(k, bounds.potprec_eval(prefix, k)) for k in ks]
        name = "potprec"
    else:
        fn = {
            "nm": bounds.nm,
            "nm1": bounds.nm1,
            "i": bounds.nm_i,
            "iprime": bounds.nm_iprime,
            "h": bounds.nm_h,
            "na": bounds.nA,
            "s2": bounds.s2,
            "jumps": lambda k: int(bounds.is_jump(k)),
        }[args.seq]
        rows = [(k, fn(k)) for k in ks]
        name = args.seq
    if args.json:
        print(json.dumps({"seq": name, "values": {str(k): v for k, v in rows}}, sort_keys=True))
    else:
        for k, v in rows:
            print(f"{k}\t{v}")
    return 0


def cmd_generate(args) -> int:
    fam = args.family
    try:
        if fam == "A":
            F = transform.gen_A(args.params[0])
        elif fam == "Dt":
            F = transform.gen_Dt(args.params[0])
        elif fam == "M":
            F = transform.gen_M(args.params[0])
        elif fam == "F3":
            F = transform.gen_F3()
        elif fam == "F4":
            F = transform.gen_F4()
        elif fam == "def6":
            F = transform.gen_def6_witness()
        elif fam == "uclash":
            if args.delta is None or args.vars is None:
                print("uclash needs --delta and --vars", file=sys.stderr)
                return 3
            F = transform.gen_uclash(args.delta, args.vars)
        elif fam == "vmu-sharp":
            F = transform.gen_vmu_sharp(args.params[0])
        elif fam == "mlean-highdeg":
            F = transform.gen_mlean_highdeg(args.params[0], args.params[1])
        elif fam == "fsue-chain":
            F = transform.gen_fsue_chain(args.params[0])
        else:
            print(f"unknown family {fam!r}", file=sys.stderr)
            return 3
    except IndexError:
        print(f"family {fam!r} is missing parameters", file=sys.stderr)
        return 3
    text = dimacs.write_dimacs(F)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args) -> int:
    cat = enumeration.enum_uclash(args.n, cap=args.cap)
    paths = enumeration.save_catalog(cat, args.out_dir)
    print(
        f"n={cat.var_count} entries={len(cat.entries)} partial={cat.partial} "
        f"files={paths[0]} {paths[1]}"
    )
    return 0


def _parse_limits(spec: str | None) -> dict:
    out = {}
    for part in (spec or "").split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise ParameterOutOfRange(f"bad limits entry {part!r}")
    return out


def cmd_verify(args) -> int:
    from . import verify as verify_mod

    limits = {**_env_limits(), **_parse_limits(args.limits)}
    if limits:
        print("limits " + " ".join(f"{k}={v}" for k, v in sorted(limits.items())))
    checks = verify_mod.run_suite(args.suite, seed=args.seed, limits=limits)
    failures = [c for c in checks if not c.ok]
    for c in checks:
        print(f"{'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}")
    if args.json:
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "limits": limits,
                    "failures": [c.name for c in failures],
                    "checks": [
                        {"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks
                    ],
                },
                sort_keys=True,
            )
        )
    return 1 if failures else 0


def _build_parser() -> _Parser:
    p = _Parser(prog="cnfstruct", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="measures and class flags of a DIMACS file")
    a.add_argument("path", help="input path or - for stdin")
    a.add_argument("--json", action="store_true")
    a.add_argument(
        "--limits",
        dest="limit_n",
        type=lambda s: int(s.split("=")[1]) if "=" in s else int(s),
        default=_env_limits().get("n", classify.DEFAULT_N_LIMIT),
        metavar="n=INT",
        help="variable limit for SAT-backed class flags",
    )
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", help="autarky-reduction pipeline")
    r.add_argument("path")
    r.add_argument("--witnesses", action="store_true")
    r.add_argument("--witness-limit", type=int, default=14)
    r.add_argument("--out")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bounds", help="integer sequence tables")
    b.add_argument("range", help="k or lo..hi")
    b.add_argument(
        "--seq", choices=["nm", "nm1", "i", "iprime", "h", "na", "s2", "jumps"], default="nm"
    )
    b.add_argument("--prefix", help="a1,a2,...: evaluate the improvement operator instead")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    g = sub.add_parser("generate", help="emit a named family as DIMACS")
    g.add_argument(
        "family",
        choices=["A", "Dt", "M", "F3", "F4", "def6", "uclash", "vmu-sharp", "mlean-highdeg", "fsue-chain"],
    )
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--delta", type=int)
    g.add_argument("--vars", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("enumerate", help="catalog unsatisfiable hitting clause-sets")
    e.add_argument("n", type=int)
    e.add_argument("--cap", type=int)
    e.add_argument("--out-dir", default=".")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument(
        "suite",
        choices=["tables", "generators", "catalogs", "reduction", "roundtrip", "all"],
    )
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--limits", help="key=value overrides, e.g. fuzz=1000")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DimacsSyntaxError, TautologicalClause, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ParameterOutOfRange, CnfstructError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
