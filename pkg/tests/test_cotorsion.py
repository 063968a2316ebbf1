import pytest

from quiverheart import cotorsion as ct
from quiverheart import homkit as hk
from quiverheart.quiverrep import (CheckError, conflation, direct_sum,
                                   factorize, identity_morphism, validate_ses)


def test_verify_pair_on_examples(pair61_1, pair61_2, pair61_3, pair_a2_1,
                                 pair_a2_2, ws61, ws_a2):
    for pair, ws in ((pair61_1, ws61), (pair61_2, ws61), (pair61_3, ws61),
                     (pair_a2_1, ws_a2), (pair_a2_2, ws_a2)):
        report = ct.verify_pair(pair, testset=ws.catalog())
        assert report["ok"], report["failures"]


def test_verify_pair_on_square_examples(pair62_1, pair62_2, pair62_3, ws62):
    for pair in (pair62_1, pair62_2, pair62_3):
        report = ct.verify_pair(pair, testset=ws62.catalog())
        assert report["ok"], report["failures"]


def test_verify_pair_rejects_bad_input(ws_a2):
    s1, s2 = ws_a2.module("s1"), ws_a2.module("s2")
    broken = ct.CotorsionPair(ws_a2, [s1], [s2], name="bad")
    report = ct.verify_pair(broken, testset=[])
    assert not report["orthogonal"]
    assert not report["ok"]
    unclosed = ct.CotorsionPair(ws_a2, [s1, s2], ws_a2.catalog(), name="bad2")
    report = ct.verify_pair(unclosed, testset=[])
    assert not report["u_closed"]


def test_special_sequences(pair61_1, ws61):
    m2 = ws61.module("m2")
    epi = ct.special_seq(pair61_1, m2, "epi")
    validate_ses(epi.seq.i, epi.seq.q)
    assert hk.is_isomorphic(epi.seq.mid, ws61.module("m213"))
    catalog = [(m.name, m) for m in ws61.catalog()]
    assert hk.decompose(epi.side, catalog) == [("m1", 1), ("m3", 1)]
    mono = ct.special_seq(pair61_1, m2, "mono")
    validate_ses(mono.seq.i, mono.seq.q)
    assert hk.is_isomorphic(mono.seq.mid, ws61.module("m2132"))
    assert hk.decompose(mono.side, catalog) == [("m213", 1)]


def test_special_sequences_simple_case(pair_a2_1, ws_a2):
    s1 = ws_a2.module("s1")
    epi = ct.special_seq(pair_a2_1, s1, "epi")
    assert hk.is_isomorphic(epi.seq.mid, ws_a2.module("p1"))
    assert hk.is_isomorphic(epi.side, ws_a2.module("s2"))


def test_construct_plus(pair61_1, ws61):
    m2 = ws61.module("m2")
    data = ct.construct(pair61_1, m2, "plus")
    validate_ses(data.coker_seq.i, data.coker_seq.q)
    # U_{m2} is already in W here, so the reflection changes nothing
    assert hk.stable_inverse(data.alpha, pair61_1.w) is not None
    assert data.bplus.total_dim == data.b.total_dim + data.coker_seq.quot.total_dim
    m1 = ws61.module("m1")
    data1 = ct.construct(pair61_1, m1, "plus")
    validate_ses(data1.coker_seq.i, data1.coker_seq.q)
    assert data1.coker_seq.quot.is_zero()


def test_construct_minus(pair61_1, ws61):
    m1 = ws61.module("m1")
    data = ct.construct(pair61_1, m1, "minus")
    validate_ses(data.ker_seq.i, data.ker_seq.q)
    assert hk.is_isomorphic(data.bminus, ws61.module("m123"))
    catalog = [(m.name, m) for m in ws61.catalog()]
    assert hk.decompose(data.ker_seq.sub, catalog) == [("m23", 1)]


def test_membership_gives_expected_hearts(pair61_1, pair61_2, ws61):
    def heart(pair):
        names = []
        for m in pair.workspace.catalog():
            mem = ct.membership(pair, m)
            if mem.plus and mem.minus and not hk.in_add(m, pair.w):
                names.append(m.name)
        return names

    assert heart(pair61_1) == ["m2"]
    assert heart(pair61_2) == ["m1", "m12", "m2"]


def test_membership_trivial_pair(pair_a2_1, ws_a2):
    # with u = projectives, B+ is everything and B- is add(proj)
    for m in ws_a2.catalog():
        mem = ct.membership(pair_a2_1, m)
        assert mem.plus
        assert mem.minus == hk.in_add(m, pair_a2_1.u)


def test_sigma_plus(pair61_1, ws61):
    m23, m123 = ws61.module("m23"), ws61.module("m123")
    f = hk.hom_basis(m23, m123)[0]
    out = ct.sigma_mor(pair61_1, f, "plus", verify_unique=True)
    db = ct.construct(pair61_1, m23, "plus")
    dc = ct.construct(pair61_1, m123, "plus")
    assert out.compose(db.alpha).equals(dc.alpha.compose(f))
    ident = identity_morphism(ws61.module("m2"))
    out = ct.sigma_mor(pair61_1, ident, "plus")
    bp = ct.construct(pair61_1, ws61.module("m2"), "plus")
    assert hk.stable_equal(out, identity_morphism(bp.bplus), pair61_1.w)


def test_sigma_minus(pair61_1, ws61):
    m23, m123 = ws61.module("m23"), ws61.module("m123")
    f = hk.hom_basis(m23, m123)[0]
    out = ct.sigma_mor(pair61_1, f, "minus", verify_unique=True)
    db = ct.construct(pair61_1, m23, "minus")
    dc = ct.construct(pair61_1, m123, "minus")
    assert dc.gamma.compose(out).equals(f.compose(db.gamma))
    ident = identity_morphism(ws61.module("m2"))
    out = ct.sigma_mor(pair61_1, ident, "minus")
    bm = ct.construct(pair61_1, ws61.module("m2"), "minus")
    assert hk.stable_equal(out, identity_morphism(bm.bminus), pair61_1.w)


def test_sigma_additive(pair61_2, ws61):
    m2132 = ws61.module("m2132")
    basis = hk.hom_basis(m2132, m2132)
    assert len(basis) == 2
    f, g = basis
    total = ct.sigma_mor(pair61_2, f.add(g), "plus")
    parts = ct.sigma_mor(pair61_2, f, "plus").add(
        ct.sigma_mor(pair61_2, g, "plus"))
    assert hk.stable_equal(total, parts, pair61_2.w)


def test_reflection_recognizes_its_own_output(pair61_1, ws61):
    for name in ("m1", "m2", "m23", "m32"):
        data = ct.construct(pair61_1, ws61.module(name), "plus")
        report = ct.verify_reflection(pair61_1, data.coker_seq)
        assert report.connecting_factors
        assert report.stable_iso
        data = ct.construct(pair61_1, ws61.module(name), "minus")
        report = ct.verify_coreflection(pair61_1, data.ker_seq)
        assert report.connecting_factors
        assert report.stable_iso


def test_coreflection_recognizes_equivalent_sequence(pair61_1, ws61):
    m23, m123 = ws61.module("m23"), ws61.module("m123")
    i = hk.hom_basis(m23, m123)[0]
    assert i.is_mono()
    fac = factorize(i)
    seq = conflation(i, fac.coker_out)
    report = ct.verify_coreflection(pair61_1, seq)
    assert report.connecting_factors
    assert report.stable_iso
    # comparison lands on gamma exactly
    data = ct.construct(pair61_1, seq.quot, "minus")
    assert seq.q.compose(report.comparison).equals(data.gamma)


def test_coreflection_rejects_wrong_middle(pair_a2_1, ws_a2):
    s1, s2 = ws_a2.module("s1"), ws_a2.module("s2")
    total, injs, projs = direct_sum([s2, s1])
    seq = conflation(injs[0], projs[1])
    report = ct.verify_coreflection(pair_a2_1, seq)
    assert not report.stable_iso


def test_eta(pair61_1, pair_a2_1, pair_a2_2, ws61, ws_a2):
    for pair, ws, names in (
            (pair61_1, ws61, ("m1", "m2", "m23")),
            (pair_a2_1, ws_a2, ("s1", "s2", "p1")),
            (pair_a2_2, ws_a2, ("s1", "s2", "p1"))):
        for name in names:
            report = ct.eta_check(pair, ws.module(name))
            assert report.ok, name
            assert report.eta is not None


def test_stable_vanishing_into_plus(pair61_1, ws61):
    # maps from the u side into any B+ vanish modulo W
    for name in ("m1", "m2", "m3", "m12"):
        data = ct.construct(pair61_1, ws61.module(name), "plus")
        for u in pair61_1.u:
            assert hk.stable_hom_dim(u, data.bplus, pair61_1.w) == 0


def test_stable_vanishing_out_of_minus(pair61_1, ws61):
    for name in ("m1", "m2", "m3", "m12"):
        data = ct.construct(pair61_1, ws61.module(name), "minus")
        for v in pair61_1.v:
            assert hk.stable_hom_dim(data.bminus, v, pair61_1.w) == 0
