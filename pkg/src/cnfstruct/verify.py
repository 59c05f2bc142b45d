"""Verification suites: the acceptance-grade checks behind ``cnfstruct verify``.

Each check returns a named pass/fail result with a one-line detail; suites
group them.  Randomised checks are seeded and deterministic.  Runtime targets
are part of the checks themselves and are measured after a warm-up of the
compiled kernels, so one-time JIT compilation does not count.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from . import bounds, dimacs, enumeration, transform
from .classify import hitting_unsat_check, is_hitting, is_satisfiable, is_vmu
from .core import (
    MultiClauseSet,
    as_multi,
    clause,
    degrees,
    measures,
    variables,
)
from .matching import is_matching_lean, surplus
from .reduce import SurplusStep, autarky_reduce, verify_autarky

FUZZ_INSTANCES = 10_000
FUZZ_MAX_VARS = 40
FUZZ_SAT_LIMIT = 14


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


_warmed = False


def _warmup() -> None:
    """Touch every JIT kernel once so compile time stays out of the timings."""
    global _warmed
    if _warmed:
        return
    from .matching import delta_star, matching_lean_kernel

    tiny = MultiClauseSet.from_clauses([(1, 2), (-1,), (2,)])
    delta_star(tiny)
    surplus(tiny)
    matching_lean_kernel(tiny)
    bounds.nm_rec_table(16)
    bounds.potprec_table(bounds.BoundsFunction([2]), 16)
    enumeration.canonical_form(transform.gen_A(2))
    _warmed = True


def check_nm_values_and_recursion() -> CheckResult:
    """Spot values of the degree bound plus closed form == recursion to 10^4."""
    _warmup()
    t0 = time.perf_counter()
    spots = {1: 2, 2: 4, 3: 5, 4: 6, 5: 8, 11: 14, 12: 16, 26: 30, 27: 32, 57: 62, 58: 64}
    bad = [k for k, v in spots.items() if bounds.nm(k) != v or bounds.nm_rec(k) != v]
    K = 10**4
    tab = bounds.nm_rec_table(K)
    closed = np.array([0] + [bounds.nm(k) for k in range(1, K + 1)], np.int64)
    agree = np.array_equal(tab, closed)
    dt = time.perf_counter() - t0
    ok = not bad and agree and dt < 5.0
    return CheckResult(
        "nm-values-and-recursion-agreement",
        ok,
        f"spot mismatches={bad}, recursion agreement to {K}: {agree}, {dt:.2f}s (< 5s)",
    )


_INDEX_TABLE = {
    # k: (nm, i, i', h)
    2: (4, 2, 1, 2),
    3: (5, 3, 1, 2),
    4: (6, 4, 1, 2),
    5: (8, 4, 2, 4),
    6: (9, 5, 2, 4),
    7: (10, 5, 3, 5),
    8: (11, 6, 3, 5),
    9: (12, 6, 4, 6),
    10: (13, 7, 4, 6),
    11: (14, 8, 4, 6),
    12: (16, 8, 5, 8),
}


def check_nm_index_table() -> CheckResult:
    """Rows (nm, i, i', h) for k = 2..12 plus recomputed step columns."""
    _warmup()
    bad = []
    for k, row in _INDEX_TABLE.items():
        got = (bounds.nm(k), bounds.nm_i(k), bounds.nm_iprime(k), bounds.nm_h(k))
        if got != row:
            bad.append((k, got, row))
    for k in range(2, 12):
        d = (
            bounds.nm(k + 1) - bounds.nm(k),
            bounds.nm_i(k + 1) - bounds.nm_i(k),
            bounds.nm_iprime(k + 1) - bounds.nm_iprime(k),
            bounds.nm_h(k + 1) - bounds.nm_h(k),
        )
        expect = tuple(
            _INDEX_TABLE[k + 1][i] - _INDEX_TABLE[k][i] for i in range(4)
        )
        if d != expect:
            bad.append((k, "delta", d, expect))
        if bounds.nm_i(k) - bounds.nm_h(k) not in (0, 1, 2):
            bad.append((k, "i-h", bounds.nm_i(k) - bounds.nm_h(k)))
    return CheckResult("nm-index-table", not bad, f"mismatches={bad!r}")


def check_nm1_values() -> CheckResult:
    """nm1 values to 30, and deviation set from nm up to 10^4."""
    _warmup()
    t0 = time.perf_counter()
    expect30 = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16, 18, 19, 20, 21, 22,
                23, 24, 25, 26, 27, 28, 29, 30, 32, 32, 34, 35]
    got30 = [bounds.nm1(k) for k in range(1, 31)]
    K = 10**4
    tab = bounds.nm1_table(K)
    deviations = [k for k in range(1, K + 1) if tab[k] != bounds.nm(k)]
    expected_dev = [2**m - m + 1 for m in range(3, 14)]
    dt = time.perf_counter() - t0
    ok = got30 == expect30 and deviations == expected_dev and dt < 60.0
    return CheckResult(
        "nm1-values-and-deviation-set",
        ok,
        f"first-30 ok: {got30 == expect30}, deviations ok: {deviations == expected_dev}, "
        f"{dt:.2f}s (< 60s)",
    )


def _random_valid_prefix(rng: random.Random, max_len: int = 40) -> bounds.BoundsFunction:
    p = rng.randint(1, max_len)
    extra = 0
    vals = []
    for i in range(1, p + 1):
        if i > 1:
            extra += rng.choice((0, 0, 1))
        vals.append(bounds.nm(i) + (extra if i > 1 else 0))
    return bounds.BoundsFunction(vals)


def check_potprec_laws(seed: int = 0) -> CheckResult:
    """Fixed point on [2] to 2000; intensive/idempotent/monotone on random prefixes."""
    _warmup()
    K, KP = 2000, 500
    tab = bounds.potprec_table(bounds.BoundsFunction([2]), K)
    fixed = all(tab[k] == bounds.nm(k) for k in range(1, K + 1))
    rng = random.Random(seed)
    bad = []
    for trial in range(100):
        f = _random_valid_prefix(rng)
        vals = bounds.potprec_table(f, KP)
        # intensive: result <= input wherever the input is finite
        for k in range(1, min(len(f), KP) + 1):
            if vals[k] > f(k):
                bad.append((trial, "intensive", k))
                break
        # idempotent: re-running on the truncated output reproduces it
        g = bounds.BoundsFunction(vals[1 : KP + 1])
        vals2 = bounds.potprec_table(g, KP)
        if not np.array_equal(vals, vals2):
            bad.append((trial, "idempotent"))
        # monotone: pointwise-larger input gives pointwise-larger output
        bigger = bounds.BoundsFunction(
            [f(1)] + [f(k) + rng.choice((0, 1)) for k in range(2, len(f) + 1)]
        )
        if not all(
            bounds.potprec_table(bigger, KP)[k] >= vals[k] for k in range(1, KP + 1)
        ):
            bad.append((trial, "monotone"))
        if bad:
            break
    ok = fixed and not bad
    return CheckResult(
        "potprec-fixed-point-and-kernel-laws",
        ok,
        f"fixed point to {K}: {fixed}, law violations={bad!r}",
    )


def check_potp_spot_values() -> CheckResult:
    _warmup()
    f = bounds.BoundsFunction([2, 4, 5])
    results = (
        bounds.potp(f, 4, 7) == frozenset(),
        bounds.potp(f, 4, 6) == frozenset({(2, 4), (3, 3)}),
        bounds.potp(bounds.nm, 6, 9) == frozenset({(4, 5)}),
    )
    return CheckResult("potp-spot-values", all(results), f"checks={results}")


def check_jump_set() -> CheckResult:
    """Step-2 positions of nm up to 10^4 equal the closed set; steps are 1 or 2."""
    _warmup()
    K = 10**4
    steps = [bounds.nm(k + 1) - bounds.nm(k) for k in range(1, K + 1)]
    jumps = [k for k, d in enumerate(steps, start=1) if d == 2]
    ok = set(steps) <= {1, 2} and jumps == bounds.jump_set(K)
    return CheckResult(
        "jump-set", ok, f"steps in {{1,2}}: {set(steps) <= {1, 2}}, positions ok: {jumps == bounds.jump_set(K)}"
    )


def check_s2_sandwich() -> CheckResult:
    """k+1 <= s2(k) <= nm(k) for k up to 10^4."""
    _warmup()
    K = 10**4
    bad = [
        k
        for k in range(1, K + 1)
        if not (k + 1 <= bounds.s2(k) <= bounds.nm(k))
    ]
    return CheckResult("factorial-two-adic-sandwich", not bad, f"violations={bad[:5]!r}")


def _certify(name, F, expect: dict, bad: list) -> None:
    m = measures(F)
    got = {
        "delta": m.delta,
        "minvdeg": None if m.n == 0 else int(m.minvdeg),
        "nfc": m.nfc,
    }
    for key, val in expect.items():
        if key in got:
            if got[key] != val:
                bad.append((name, key, got[key], val))
        elif key == "sigma":
            s = surplus(F).value
            if s != val:
                bad.append((name, key, s, val))
        elif key == "n":
            if m.n != val:
                bad.append((name, key, m.n, val))
        else:
            raise KeyError(key)


def check_generators() -> CheckResult:
    """Measure and class certification of the named generator families."""
    _warmup()
    from .classify import is_marginal_mu, is_mlcr, is_mu, is_saturated_mu

    t0 = time.perf_counter()
    bad: list = []
    for n in range(1, 5):
        A = transform.gen_A(n)
        _certify(f"A({n})", A, {"delta": 2**n - n, "minvdeg": 2**n, "nfc": 2**n, "sigma": 2**n - n}, bad)
        if not (is_hitting(A) and hitting_unsat_check(A)):
            bad.append((f"A({n})", "uhit"))
        if n <= 3 and not (is_saturated_mu(A) and is_marginal_mu(A)):
            bad.append((f"A({n})", "saturated+marginal"))
    for n in range(2, 6):
        D = transform.gen_Dt(n)
        _certify(f"Dt({n})", D, {"delta": 2, "minvdeg": 4, "sigma": 2}, bad)
        if not is_saturated_mu(D):
            bad.append((f"Dt({n})", "smu"))
        if not enumeration._is_nonsingular(D):
            bad.append((f"Dt({n})", "nonsingular"))
        if is_hitting(D) != (n in (2, 3)):
            bad.append((f"Dt({n})", "hitting-iff-n-2-3"))
    for n in range(1, 7):
        M = transform.gen_M(n)
        _certify(f"M({n})", M, {"delta": 1, "minvdeg": n + 1, "nfc": n + 1, "sigma": 1}, bad)
        if not is_matching_lean(M):
            bad.append((f"M({n})", "matching-lean"))
        # one variable gives the full unsatisfiable family; larger n sit
        # strictly between n and 2^n clauses, hence satisfiable and critical
        if n >= 2 and (not is_satisfiable(M) or not is_mlcr(M)):
            bad.append((f"M({n})", "sat+mlcr"))
    F3 = transform.gen_F3()
    _certify("F3", F3, {"delta": 3, "minvdeg": 5, "n": 3}, bad)
    if not (is_hitting(F3) and hitting_unsat_check(F3)):
        bad.append(("F3", "uhit"))
    F4 = transform.gen_F4()
    _certify("F4", F4, {"delta": 4, "minvdeg": 6, "nfc": 6}, bad)
    if not (is_hitting(F4) and hitting_unsat_check(F4)):
        bad.append(("F4", "uhit"))
    D6 = transform.gen_def6_witness()
    _certify("def6", D6, {"delta": 6, "minvdeg": 8, "nfc": 8, "n": 4}, bad)
    if not (is_hitting(D6) and hitting_unsat_check(D6)):
        bad.append(("def6", "uhit-dyadic-sum-1"))
    for k in (1, 2, 3, 5, 6, 9, 12):
        for n in range(bounds.nA(k), bounds.nA(k) + 7):
            U = transform.gen_uclash(k, n)
            _certify(f"uclash({k},{n})", U, {"delta": k, "n": n}, bad)
            if not (is_hitting(U) and hitting_unsat_check(U)):
                bad.append((f"uclash({k},{n})", "uhit"))
    if not is_mu(transform.gen_uclash(3, 4)):
        bad.append(("uclash(3,4)", "mu"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30.0
    return CheckResult(
        "generator-certification", ok, f"violations={bad[:6]!r}, {dt:.2f}s (< 30s)"
    )


def check_sharpness_chain() -> CheckResult:
    """The degree-bound-attaining family: delta = surplus = k, minvdeg = nm(k)."""
    _warmup()
    bad = []
    for k in range(1, 21):
        F = transform.gen_vmu_sharp(k)
        m = measures(F)
        s = surplus(F).value
        if not (m.delta == k and s == k and m.minvdeg == bounds.nm(k)):
            bad.append((k, m.delta, s, m.minvdeg))
        if is_satisfiable(F):
            bad.append((k, "satisfiable"))
        if k <= 8 and not is_vmu(F):
            bad.append((k, "vmu"))
    return CheckResult("sharpness-chain", not bad, f"violations={bad!r}")


def check_mlean_construction() -> CheckResult:
    """Matching-lean families with high positive literal degrees."""
    _warmup()
    bad = []
    for k in range(1, 7):
        for K in range(1, 9):
            F = transform.gen_mlean_highdeg(k, K)
            m = measures(F)
            if m.delta != k:
                bad.append((k, K, "delta", m.delta))
            if not is_matching_lean(F):
                bad.append((k, K, "matching-lean"))
            if any(degrees(F, v)[0] < K for v in variables(F)):
                bad.append((k, K, "posdeg"))
            if k >= 2 and is_satisfiable(F):
                bad.append((k, K, "unsat"))
    return CheckResult("matching-lean-construction", not bad, f"violations={bad!r}")


def check_desk_tables() -> CheckResult:
    """Catalog-backed degree/full-clause tables and dual-enumerator agreement."""
    _warmup()
    t0 = time.perf_counter()
    minvals = [enumeration.desk_minnmh(k, 4) for k in range(1, 7)]
    maxvals = [enumeration.desk_maxsmarh(k, 4) for k in range(1, 7)]
    ok_min = minvals == [2, 4, 5, 6, 8, 8]
    ok_max = maxvals == [2, 4, 4, 6, 8, 8]
    cat3 = enumeration.cached_catalog(3)
    oracle = enumeration.enum_uclash_subsets(3)
    mine = frozenset(e.clauses for e in cat3.entries)
    dual = mine == oracle and len(cat3.entries) == len(oracle)
    partials = [enumeration.cached_catalog(n).partial for n in range(1, 5)]
    dt = time.perf_counter() - t0
    ok = ok_min and ok_max and dual and not any(partials) and dt < 600.0
    return CheckResult(
        "desk-enumeration-tables",
        ok,
        f"minvdeg={minvals}, nfc={maxvals}, dual n=3 agree: {dual}, "
        f"partial={partials}, {dt:.1f}s (< 600s)",
    )


def check_catalog_invariants() -> CheckResult:
    """The ten structural invariants over every catalog entry with n <= 4."""
    _warmup()
    bad = []
    jumps = set(bounds.jump_set(64))
    dt_forms = {
        enumeration.canonical_form(transform.gen_Dt(2)),
        enumeration.canonical_form(transform.gen_Dt(3)),
    }
    dual = frozenset(
        e.clauses for e in enumeration.cached_catalog(3).entries
    ) == enumeration.enum_uclash_subsets(3)
    if not dual:
        bad.append(("n=3", "dual-enumerators"))
    for n in range(1, 5):
        for e in enumeration.cached_catalog(n).entries:
            S = e.clauses
            tag = (n, e.delta, e.minvdeg)
            if not (is_hitting(S) and hitting_unsat_check(S) and e.delta >= 1):
                bad.append((tag, "uhit"))
            refined = any(
                degrees(S, v)[2] <= bounds.nm(e.delta)
                and degrees(S, v)[0] <= e.delta
                and degrees(S, v)[1] <= e.delta
                for v in variables(S)
            )
            if not refined:
                bad.append((tag, "degree-pair-bound"))
            if not (1 <= e.sigma <= e.delta and e.minvdeg <= bounds.nm(e.sigma)):
                bad.append((tag, "surplus-bound"))
            if e.minvdeg > bounds.nm1(e.delta):
                bad.append((tag, "improved-bound"))
            if e.nfc == e.minvdeg and e.nfc % 2 != 0:
                bad.append((tag, "full-clause-parity"))
            if (e.sigma == 1) != (e.minvdeg == 2):
                bad.append((tag, "sigma1-iff-minvdeg2"))
            if e.minvdeg == 3 and e.sigma != 2:
                bad.append((tag, "minvdeg3-sigma2"))
            if e.sigma == 2 and e.minvdeg not in (3, 4):
                bad.append((tag, "sigma2-minvdeg34"))
            if e.sigma == e.delta and not is_vmu(S):
                bad.append((tag, "sed-implies-vmu"))
            if e.delta == 2 and e.nonsingular and S not in dt_forms:
                bad.append((tag, "delta2-nonsingular-type"))
            if (
                e.delta not in jumps
                and e.minvdeg == bounds.nm(e.delta)
                and len(measures(S).varmvd) < 2
            ):
                bad.append((tag, "two-minimal-variables"))
    return CheckResult("catalog-invariants", not bad, f"violations={bad[:8]!r}")


def fuzz_instance(rng: random.Random, max_vars: int = FUZZ_MAX_VARS) -> MultiClauseSet:
    """One random multi-clause-set: mixed density, short clauses, occasional
    empty clauses and duplicate occurrences."""
    n = rng.randint(1, max_vars)
    ratio = rng.choice((0.6, 1.0, 1.8, 3.0, 4.5))
    c = max(1, int(n * ratio * rng.uniform(0.7, 1.3)))
    out = []
    if rng.random() < 0.03:
        out.append(())
    for _ in range(c):
        k = rng.randint(1, min(5, n))
        vs = rng.sample(range(1, n + 1), k)
        out.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    if len(out) > 1 and rng.random() < 0.2:
        out.append(out[rng.randrange(len(out))])
    return MultiClauseSet.from_clauses(out)


def check_reduction_pipeline(seed: int = 0, instances: int = FUZZ_INSTANCES) -> CheckResult:
    """Fuzzed pipeline: postcondition everywhere, SAT preserved at small n,
    plus the named satisfiable witness example."""
    _warmup()
    rng = random.Random(seed)
    t0 = time.perf_counter()
    bad = []
    surplus_steps = 0
    for i in range(instances):
        F = fuzz_instance(rng)
        trace = autarky_reduce(F)
        R = trace.result
        nR = len(variables(R))
        if trace.empty_clause_shortcut:
            if R != MultiClauseSet({(): 1}):
                bad.append((i, "bot-shortcut"))
        elif nR == 0:
            if R.total() != 0:
                bad.append((i, "nonempty-variable-free-result"))
        else:
            s = surplus(R).value
            if not (s >= 1 and measures(R).minvdeg <= bounds.nm(s)):
                bad.append((i, "postcondition"))
        surplus_steps += sum(1 for st in trace.steps if isinstance(st, SurplusStep))
        if len(variables(F)) <= FUZZ_SAT_LIMIT:
            if is_satisfiable(F.clause_set()) != is_satisfiable(R.clause_set()):
                bad.append((i, "sat-preservation"))
        if bad:
            break
    mlcr = MultiClauseSet.from_clauses(
        [clause([1, 2]), clause([-1, 2, -3]), clause([-2, 3]), clause([1, -2, -3])]
    )
    tr = autarky_reduce(mlcr, want_witnesses=True)
    steps = [st for st in tr.steps if isinstance(st, SurplusStep)]
    mlcr_ok = (
        tr.result.total() == 0
        and len(steps) == 1
        and steps[0].variables == frozenset({1, 2, 3})
        and steps[0].witness is not None
        and verify_autarky(mlcr, steps[0].witness)
    )
    dt = time.perf_counter() - t0
    ok = not bad and mlcr_ok and dt < 300.0
    return CheckResult(
        "reduction-pipeline-fuzz",
        ok,
        f"instances={instances}, violations={bad!r}, witness example ok: {mlcr_ok}, "
        f"surplus steps hit: {surplus_steps}, {dt:.1f}s (< 300s)",
    )


def _roundtrip_families():
    for n in range(5):
        yield f"A({n})", transform.gen_A(n)
    for n in range(2, 6):
        yield f"Dt({n})", transform.gen_Dt(n)
    for n in range(1, 7):
        yield f"M({n})", transform.gen_M(n)
    yield "F3", transform.gen_F3()
    yield "F4", transform.gen_F4()
    yield "def6", transform.gen_def6_witness()
    for k in (1, 2, 5, 9):
        yield f"uclash({k})", transform.gen_uclash(k, bounds.nA(k) + 2)
    for k in range(1, 21):
        yield f"vmu-sharp({k})", transform.gen_vmu_sharp(k)
    for k in range(1, 7):
        yield f"mlean-highdeg({k},4)", transform.gen_mlean_highdeg(k, 4)
    for n in range(7):
        yield f"fsue-chain({n})", transform.gen_fsue_chain(n)


def check_roundtrip() -> CheckResult:
    """parse(write(F)) == F and byte-stable re-serialisation, catalogs included."""
    _warmup()
    bad = []
    items = list(_roundtrip_families())
    for n in range(1, 5):
        for i, e in enumerate(enumeration.cached_catalog(n).entries):
            items.append((f"catalog-n{n}#{i}", e.clauses))
    # a multiplicity-carrying case as well
    items.append(("multi", MultiClauseSet({(): 2, (1,): 3, (-1, 2): 1})))
    for name, F in items:
        M = as_multi(F)
        text = dimacs.write_dimacs(M)
        back = dimacs.parse_dimacs(text)
        if back != M:
            bad.append((name, "value"))
        elif dimacs.write_dimacs(back) != text:
            bad.append((name, "bytes"))
    return CheckResult(
        "dimacs-round-trip", not bad, f"cases={len(items)}, violations={bad[:5]!r}"
    )


SUITES = {
    "tables": (
        check_nm_values_and_recursion,
        check_nm_index_table,
        check_nm1_values,
        check_potprec_laws,
        check_potp_spot_values,
        check_jump_set,
        check_s2_sandwich,
    ),
    "generators": (
        check_generators,
        check_sharpness_chain,
        check_mlean_construction,
    ),
    "catalogs": (
        check_desk_tables,
        check_catalog_invariants,
    ),
    "reduction": (check_reduction_pipeline,),
    "roundtrip": (check_roundtrip,),
}


def run_suite(name: str, seed: int = 0, limits: dict | None = None) -> list:
    """Run one suite (or 'all'); limits may shrink the fuzz corpus (key 'fuzz')."""
    limits = limits or {}
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        for fn in SUITES[suite]:
            if fn is check_reduction_pipeline:
                out.append(fn(seed=seed, instances=limits.get("fuzz", FUZZ_INSTANCES)))
            elif fn is check_potprec_laws:
                out.append(fn(seed=seed))
            else:
                out.append(fn())
    return out
