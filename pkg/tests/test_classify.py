"""Decision predicates: worked examples, oracle agreement, class inclusions."""

import random

import pytest

from cnfstruct.classify import (
    classify_report,
    hitting_unsat_check,
    implies,
    is_hitting,
    is_lean,
    is_marginal_mu,
    is_mlcr,
    is_mu,
    is_satisfiable,
    is_saturated_mu,
    is_sed,
    is_vmu,
    removable_literals_hitting,
    satisfying_assignment,
)
from cnfstruct.core import (
    apply_assignment,
    clause,
    measures,
    restrict,
    variables,
)
from cnfstruct.errors import NotHitting, NotUnsatHitting
from cnfstruct.matching import is_matching_lean, minimal_surplus_witness, surplus
from cnfstruct.transform import gen_A, gen_Dt, gen_F4, gen_M, gen_fsue_chain

from conftest import brute_has_autarky, cs, random_mcs


def test_sat_examples():
    for n in range(4):
        assert not is_satisfiable(gen_A(n))
    assert is_satisfiable(frozenset())
    assert not is_satisfiable(cs(()))
    assert is_satisfiable(cs([1, 2], [-1, 2, -3], [-2, 3], [1, -2, -3]))
    phi = satisfying_assignment(cs([1, 2], [-2]))
    assert phi is not None and phi.satisfies(clause([1, 2])) and phi.satisfies(clause([-2]))


def test_sat_agrees_with_brute_force():
    from itertools import product

    rng = random.Random(21)
    for _ in range(150):
        F = random_mcs(rng, max_vars=5, max_clauses=9, allow_bot=False).clause_set()
        vs = sorted(variables(F))
        brute = any(
            all(any((x > 0) == bool(bits[vs.index(abs(x))]) for x in C) for C in F)
            for bits in product((0, 1), repeat=len(vs))
        )
        assert is_satisfiable(F) == brute


def test_hitting_examples():
    assert is_hitting(gen_Dt(3)) and hitting_unsat_check(gen_Dt(3))
    assert not is_hitting(gen_Dt(4))
    assert is_hitting(gen_F4()) and hitting_unsat_check(gen_F4())
    assert is_hitting(cs(())) and hitting_unsat_check(cs(()))
    assert not hitting_unsat_check(cs([1], [-1, 2]))
    with pytest.raises(NotHitting):
        hitting_unsat_check(cs([1], [2]))


def test_dyadic_criterion_agrees_with_solver():
    rng = random.Random(22)
    checked = 0
    pool = [gen_A(n) for n in range(1, 4)] + [gen_Dt(2), gen_Dt(3), gen_F4()]
    while checked < 60:
        F = random_mcs(rng, max_vars=12, max_clauses=10, allow_bot=False).clause_set()
        if not is_hitting(F):
            # drop clauses until hitting, keeping things interesting
            Fl = list(F)
            rng.shuffle(Fl)
            kept = []
            for C in Fl:
                if all(any(-x in D for x in C) for D in kept):
                    kept.append(C)
            F = frozenset(kept)
        if not F:
            continue
        checked += 1
        assert hitting_unsat_check(F) == (not is_satisfiable(F))
    for F in pool:
        assert hitting_unsat_check(F) == (not is_satisfiable(F))


def test_mu_examples():
    assert is_mu(cs([1, 2], [-1], [-2]))
    assert not is_mu(cs((), [1]))
    for n in range(1, 4):
        assert is_mu(gen_A(n))
    assert not is_saturated_mu(cs([1, 2], [-1], [-2]))
    assert is_saturated_mu(cs([1, 2], [-1, 2], [-2]))
    for n in (2, 3, 4, 5):
        assert is_saturated_mu(gen_Dt(n))


def test_marginal_examples():
    S = cs([1, 2], [-1, 2], [-2])
    pairs = removable_literals_hitting(S)
    assert sorted(pairs) == [(clause([-1, 2]), 2), (clause([1, 2]), 2)]
    assert not is_marginal_mu(S)
    assert is_marginal_mu(gen_A(2)) and removable_literals_hitting(gen_A(2)) == []
    assert is_marginal_mu(gen_A(3)) and is_saturated_mu(gen_A(3))
    with pytest.raises(NotUnsatHitting):
        removable_literals_hitting(cs([1], [-1, 2]))


def test_removable_literals_match_direct_definition():
    for F in (gen_A(2), gen_A(3), gen_Dt(3), gen_F4(), cs([1, 2], [-1, 2], [-2])):
        listed = set(removable_literals_hitting(F))
        for C in F:
            for x in C:
                shrunk = (F - {C}) | {clause(y for y in C if y != x)}
                assert is_mu(shrunk) == ((C, x) in listed)


def test_lean_examples():
    assert is_lean(cs([1], [-2], [-1, 2], [1, -2])) is True
    assert is_lean(cs([1], [-1], [2])) is False
    assert is_lean(frozenset()) is True and is_lean(cs(())) is True
    # union of two lean clause-sets is lean
    assert is_lean(cs([1], [-1], [2], [-2])) is True
    assert is_lean(gen_A(4), n_limit=3) is None


def test_lean_vs_autarky_enumeration():
    rng = random.Random(23)
    for _ in range(60):
        F = random_mcs(rng, max_vars=5, max_clauses=8)
        assert is_lean(F) == (not brute_has_autarky(F))


def test_vmu_examples():
    assert is_vmu(cs([1], [-2], [-1, 2], [1, -2]))
    assert not is_vmu(cs((), [1], [-1]))
    for F in (gen_A(2), gen_Dt(3), cs([1, 2], [-1], [-2])):
        assert is_mu(F) and is_vmu(F)


def test_vmu_minimal_subset_characterisation():
    # cross-check, not the decision path: membership holds iff F is itself a
    # full-variable unsat subset of positive deficiency and every minimal
    # such subset is minimally unsatisfiable
    from itertools import combinations

    rng = random.Random(24)
    for _ in range(40):
        F = random_mcs(rng, max_vars=4, max_clauses=7).clause_set()
        vs = variables(F)
        U = []
        for r in range(len(F) + 1):
            for sub in combinations(sorted(F), r):
                S = frozenset(sub)
                if variables(S) == vs and len(S) - len(vs) >= 1 and not is_satisfiable(S):
                    U.append(S)
        minimal = [S for S in U if not any(T < S for T in U)]
        alt = (F in U) and all(is_mu(S) for S in minimal)
        assert is_vmu(F) == alt


def test_sed_examples():
    for n in range(1, 4):
        assert is_sed(gen_A(n))
    F = cs([1, 2, 3], [1, 2, -3], [1, -2], [-1, 2], [-1, -2])
    assert is_mu(F) and measures(F).delta == 2 and surplus(F).value == 1
    assert not is_sed(F)
    assert is_sed(frozenset()) and not is_sed(cs(()))


def test_mlcr_examples():
    assert is_mlcr(cs([1, 2], [-1, 2, -3], [-2, 3], [1, -2, -3]))
    for n in (2, 3, 4):
        assert is_mlcr(gen_M(n))
    assert not is_mlcr(gen_A(2))  # full with c = 2^n, unsatisfiable
    assert not is_mlcr(cs(()))
    # full satisfiable clause-sets with n < c < 2^n are exactly the full members
    full = cs([1, 2, 3], [-1, 2, 3], [1, -2, 3], [1, 2, -3], [-1, -2, 3])
    assert is_mlcr(full)
    assert not is_mlcr(cs([1, 2], [-1, 2]))  # c = n: matching satisfiable


def test_mlcr_witness_condition_matches_subset_definition():
    rng = random.Random(25)
    for _ in range(80):
        F = random_mcs(rng, max_vars=5, max_clauses=7)
        vs = variables(F)
        if not vs:
            continue
        sig = surplus(F).value
        from itertools import combinations

        proper_hit = any(
            measures(restrict(F, V)).delta == sig
            for r in range(1, len(vs))
            for V in combinations(sorted(vs), r)
        )
        assert (minimal_surplus_witness(F) == vs) == (not proper_hit)


def test_classification_ladder():
    instances = [
        gen_A(1), gen_A(2), gen_A(3), gen_Dt(2), gen_Dt(3), gen_Dt(4),
        gen_F4(), gen_fsue_chain(3), cs([1, 2], [-1], [-2]),
    ]
    rng = random.Random(26)
    instances += [random_mcs(rng, max_vars=5, max_clauses=7).clause_set() for _ in range(40)]
    for F in instances:
        if len(variables(F)) > 8:
            continue
        uhit = is_hitting(F) and hitting_unsat_check(F)
        smu = is_saturated_mu(F)
        mu = is_mu(F)
        vmu = is_vmu(F)
        lean = is_lean(F)
        mlean = is_matching_lean(F)
        assert not uhit or smu
        assert not smu or mu
        assert not mu or vmu
        assert not vmu or lean
        assert not lean or mlean


def test_smu_splitting_stays_mu():
    from cnfstruct.core import PartialAssignment

    smu_instances = [gen_A(2), gen_A(3), gen_Dt(2), gen_Dt(3), gen_Dt(5),
                     cs([1, 2], [-1, 2], [-2]), gen_fsue_chain(4)]
    for F in smu_instances:
        assert is_saturated_mu(F)
        for v in sorted(variables(F)):
            for e in (0, 1):
                image = apply_assignment(PartialAssignment({v: e}), F)
                assert is_mu(image.clause_set()), (F, v, e)


def test_implication():
    assert implies(cs([1], [-1, 2]), clause([2]))
    assert not implies(cs([1]), clause([2]))
    assert implies(cs(()), clause([5]))


def test_classify_report_consistency_and_skips():
    rep = classify_report(gen_Dt(3))
    assert rep.sat is False and rep.hitting and rep.unsat_hitting
    assert rep.mu and rep.smu and rep.vmu and rep.lean and rep.matching_lean
    assert rep.sed and not rep.mlcr and not rep.marginal_mu
    rep = classify_report(gen_A(4), n_limit=3)
    assert rep.sat is None and rep.mu is None and rep.lean is None
    assert rep.hitting is True and rep.unsat_hitting is True
    assert rep.size_limits_used == {"n": 3}


def test_mu_delta1_minvdeg_two(catalogs):
    for n, cat in catalogs.items():
        for e in cat.entries:
            if e.delta == 1 and e.n > 0:
                assert e.minvdeg == 2
