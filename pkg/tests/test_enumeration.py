"""Catalog enumeration, canonical forms, persistence."""

import pytest

from cnfstruct.classify import hitting_unsat_check, is_hitting
from cnfstruct.core import clause, measures, variables
from cnfstruct.enumeration import (
    Catalog,
    canonical_form,
    desk_maxsmarh,
    desk_minnmh,
    enum_uclash,
    enum_uclash_subsets,
    load_catalog,
    save_catalog,
)
from cnfstruct.errors import ParameterOutOfRange, TooManyVariables
from cnfstruct.transform import gen_A, gen_Dt, gen_fsue_chain

from conftest import cs


def test_canonical_form_basics():
    assert canonical_form(gen_Dt(2)) == canonical_form(gen_A(2))
    F = gen_Dt(3)
    flipped = frozenset(clause(-x for x in C) for C in F)
    assert canonical_form(F) == canonical_form(flipped)
    renamed = frozenset(
        clause((4 if abs(x) == 1 else abs(x)) * (1 if x > 0 else -1) for x in C)
        for C in F
    )
    assert canonical_form(F) == canonical_form(renamed)
    assert canonical_form(frozenset()) == frozenset()
    assert canonical_form(cs(())) == cs(())
    with pytest.raises(TooManyVariables):
        canonical_form(gen_fsue_chain(7))


def test_canonical_form_is_idempotent_and_isomorphism_invariant():
    import random

    from conftest import random_mcs

    rng = random.Random(41)
    for _ in range(60):
        F = random_mcs(rng, max_vars=4, max_clauses=6, allow_bot=False).clause_set()
        cf = canonical_form(F)
        assert canonical_form(cf) == cf
        vs = sorted(variables(F))
        target = rng.sample(range(1, 12), len(vs))
        perm = dict(zip(vs, target))
        flip = {v: rng.choice((1, -1)) for v in vs}
        G = frozenset(
            clause(perm[abs(x)] * flip[abs(x)] * (1 if x > 0 else -1) for x in C)
            for C in F
        )
        assert canonical_form(G) == cf


def test_small_catalogs(catalogs):
    assert len(catalogs[1].entries) == 1
    assert catalogs[1].entries[0].clauses == canonical_form(gen_A(1))
    assert len(catalogs[2].entries) == 2
    forms = {e.clauses for e in catalogs[2].entries}
    assert canonical_form(gen_A(2)) in forms
    assert canonical_form(cs([2], [-1, -2], [-2, 1])) in forms
    assert len(catalogs[3].entries) == 11


def test_catalog_entries_are_uclash(catalogs):
    for n, cat in catalogs.items():
        assert not cat.partial
        for e in cat.entries:
            assert variables(e.clauses) == set(range(1, n + 1))
            assert is_hitting(e.clauses) and hitting_unsat_check(e.clauses)
            m = measures(e.clauses)
            assert (m.delta, int(m.minvdeg), m.nfc) == (e.delta, e.minvdeg, e.nfc)


def test_dual_enumerators_agree(catalogs):
    for n in (1, 2, 3):
        mine = frozenset(e.clauses for e in catalogs[n].entries)
        assert mine == enum_uclash_subsets(n)


def test_enumeration_guards():
    with pytest.raises(ParameterOutOfRange):
        enum_uclash(0)
    with pytest.raises(ParameterOutOfRange):
        enum_uclash(5)
    with pytest.raises(ParameterOutOfRange):
        enum_uclash_subsets(4)
    with pytest.raises(ParameterOutOfRange):
        desk_minnmh(1, 5)
    with pytest.raises(ParameterOutOfRange):
        desk_minnmh(0, 4)


def test_cap_gives_partial_catalog():
    cat = enum_uclash(3, cap=4)
    assert cat.partial
    assert 0 < len(cat.entries) <= 4


def test_desk_tables(catalogs):
    assert [desk_minnmh(k, 4) for k in range(1, 7)] == [2, 4, 5, 6, 8, 8]
    assert [desk_maxsmarh(k, 4) for k in range(1, 7)] == [2, 4, 4, 6, 8, 8]
    assert desk_minnmh(12, 4) >= 16
    assert desk_minnmh(13, 4) == 0  # no 4-variable entry reaches deficiency 13
    assert [desk_minnmh(k, 3) for k in range(1, 6)] == [2, 4, 5, 6, 8]


def test_catalog_persistence(tmp_path, catalogs):
    cat = catalogs[3]
    cnfs, meta = save_catalog(cat, tmp_path)
    assert cnfs.exists() and meta.exists()
    assert cnfs.read_text().count("c id ") == len(cat.entries)
    back = load_catalog(tmp_path, 3)
    assert isinstance(back, Catalog)
    assert [e.clauses for e in back.entries] == [e.clauses for e in cat.entries]
    assert [e.sigma for e in back.entries] == [e.sigma for e in cat.entries]


def test_load_catalog_detects_tampering(tmp_path, catalogs):
    import json

    save_catalog(catalogs[2], tmp_path)
    meta = tmp_path / "catalog-n2.meta.jsonl"
    lines = meta.read_text().splitlines()
    info = json.loads(lines[0])
    info["minvdeg"] += 1
    lines[0] = json.dumps(info, sort_keys=True)
    meta.write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError):
        load_catalog(tmp_path, 2)
