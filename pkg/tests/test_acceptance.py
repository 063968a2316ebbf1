"""Acceptance gate: twelve headline checks, one printed line each.

Every test computes its verdict, prints `criterion NN: PASS|FAIL` on the
real stdout so the line survives output capture, and then asserts.
"""

import sys

import pytest

from quiverheart import compare as cp
from quiverheart import cotorsion as ct
from quiverheart import heart as ht
from quiverheart import homkit as hk
from quiverheart.quiverrep import standard_module


def conclude(num, label, ok, detail=None):
    line = "criterion %02d: %s  %s" % (num, "PASS" if ok else "FAIL", label)
    print(line, file=sys.__stdout__, flush=True)
    assert ok, line + ("" if detail is None else "  %r" % (detail,))


def names(mods):
    return [m.name for m in mods]


def contained(gens, others):
    return all(hk.in_add(g, others) for g in gens)


@pytest.fixture(scope="module")
def all_pairs(pair_a2_1, pair_a2_2, pair61_1, pair61_2, pair61_3,
              pair62_1, pair62_2, pair62_3):
    return [pair_a2_1, pair_a2_2, pair61_1, pair61_2, pair61_3,
            pair62_1, pair62_2, pair62_3]


@pytest.fixture(scope="module")
def conflation_bank(ws_a2, ws61, ws62):
    return [(ws, [ht.random_conflation(ws, seed) for seed in range(100)])
            for ws in (ws_a2, ws61, ws62)]


def _conflations(bank, pair):
    for ws, confs in bank:
        if pair.workspace is ws:
            return confs
    raise AssertionError("no conflation bank for this pair")


def test_criterion_01_first_string_pair_heart(pair61_1):
    got = names(cp.heart_classes(pair61_1))
    conclude(1, "string fixture pair1 heart classes = {m2}",
             got == ["m2"], got)


def test_criterion_02_second_string_pair_facts(pair61_1, pair61_2):
    clauses = {}
    got = names(cp.heart_classes(pair61_2))
    clauses["heart_is_m1_m2"] = got == ["m1", "m2"]
    clauses["chain"] = (
        contained(pair61_1.w, pair61_1.u)
        and contained(pair61_1.u, pair61_1.w)
        and contained(pair61_1.u, pair61_2.u)
        and contained(pair61_2.u, pair61_2.v)
        and contained(pair61_2.v, pair61_1.v))
    clauses["round_trip"] = cp.prop53_check(cp.duo(pair61_1, pair61_2))
    clauses["serre_set"] = cp.ker_beta_members(
        cp.duo(pair61_2, pair61_1)) == (["m1"], ["m1"])
    conclude(2, "string fixture pair2 heart/chain/round-trip/serre set",
             all(clauses.values()), {**clauses, "heart_classes": got})


def test_criterion_03_cluster_tilting_pair(pair62_2):
    rep = cp.cluster_tilting_check(pair62_2)
    got = names(cp.heart_classes(pair62_2))
    conclude(3, "square fixture (tilt, tilt) certified; 7 heart classes",
             rep["ok"] and len(got) == 7, {"check": rep, "classes": got})


def test_criterion_04_image_of_m345(ws62, pair62_1):
    ok = ht.stably_isomorphic(pair62_1, ht.h_obj(pair62_1,
                                                 ws62.module("m345")),
                              ws62.module("m35"))
    conclude(4, "square fixture pair1 sends m345 to m35", ok)


def test_criterion_05_restricted_functor_exactness(pair62_1, pair62_2):
    fwd = cp.beta_exactness(cp.duo(pair62_2, pair62_1))
    back = cp.beta_exactness(cp.duo(pair62_1, pair62_2))
    witness_ok = bool(back.witnesses) and all(
        c.names == ("m35", "m3", "m234") and not c.mono
        for c in back.witnesses)
    conclude(5, "square fixture: 2->1 fully exact, 1->2 fails at "
                "m35 >--> m3 -->> m234",
             fwd.hypothesis and fwd.full_ok and not back.full_ok
             and witness_ok,
             {"fwd": (fwd.hypothesis, fwd.full_ok),
              "back": (back.hypothesis, back.full_ok),
              "witnesses": [c.names for c in back.witnesses]})


def test_criterion_06_outer_hearts_equivalent(pair62_1, pair62_3):
    hm = cp.hearts_match(pair62_1, pair62_3)
    lem = cp.lemma51_check(cp.duo(pair62_1, pair62_3))
    conclude(6, "square fixture hearts 1 and 3 match; nesting fails",
             hm.ok and lem.agree and not lem.lhs,
             {"match": hm.matching, "nesting": (lem.lhs, lem.rhs),
              "failing": lem.h_failures})


def test_criterion_07_half_exactness_battery(all_pairs, conflation_bank):
    failures = []
    for pair in all_pairs:
        confs = _conflations(conflation_bank, pair)
        for k, ses in enumerate(confs):
            if not ht.verify_half_exact(pair, ses):
                failures.append((pair.name, "half", k))
        for k, ses in enumerate(confs[:25]):
            if not ht.les_window(pair, ses).all_exact:
                failures.append((pair.name, "les", k))
    conclude(7, "every pair: 100 half exact conflations, 25 exact windows",
             not failures, failures)


def test_criterion_08_kernel_characterization(all_pairs):
    failures = []
    for pair in all_pairs:
        for m in pair.workspace.catalog():
            rep = ht.add_star_test(pair, m)
            if not rep.agree or rep.inconclusive:
                failures.append((pair.name, m.name, rep.via_h,
                                 rep.via_oracle, rep.inconclusive))
    conclude(8, "H vanishing matches the conflation oracle everywhere",
             not failures, failures)


def test_criterion_09_reflection_coreflection_commute(all_pairs):
    failures = []
    for pair in all_pairs:
        for m in pair.workspace.catalog():
            if not ct.eta_check(pair, m).ok:
                failures.append((pair.name, m.name))
    conclude(9, "plus and minus constructions commute everywhere",
             not failures, failures)


def test_criterion_10_micro_fixture(ws_a2, pair_a2_1, pair_a2_2):
    cat = ws_a2.catalog()
    certified = (ct.verify_pair(pair_a2_1, testset=cat)["ok"]
                 and ct.verify_pair(pair_a2_2, testset=cat)["ok"])
    zero = (cp.heart_classes(pair_a2_1) == []
            and cp.heart_classes(pair_a2_2) == [])
    rep = cp.twin_suite(cp.twin(pair_a2_1, pair_a2_2))
    conclude(10, "micro fixture: both pairs certified, hearts zero, "
                 "twin suite with inclusions",
             certified and zero and rep["ok"]
             and rep["component_inclusions"] is True, rep)


def test_criterion_11_vanishing_on_generators(all_pairs):
    failures = []
    for pair in all_pairs:
        alg = pair.algebra
        gens = list(pair.u) + list(pair.v)
        gens += [standard_module(alg, v, kind)
                 for v in alg.quiver.vertices
                 for kind in ("projective", "injective")]
        for g in gens:
            if not ht.heart_zero(pair, ht.h_obj(pair, g)):
                failures.append((pair.name, g.name))
    conclude(11, "H kills u-gens, v-gens, projectives and injectives",
             not failures, failures)


def test_criterion_12_construction_shapes(all_pairs):
    failures = []
    for pair in all_pairs:
        for m in pair.workspace.catalog():
            rep = ht.construction_checks(pair, m)
            if not rep["ok"]:
                failures.append((pair.name, m.name, rep))
    conclude(12, "construction diagrams: stable-Hom vanishing and "
                 "partial exactness",
             not failures, failures)
