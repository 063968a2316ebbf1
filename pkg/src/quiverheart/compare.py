"""Comparison of the hearts cut out by two cotorsion pairs.

The half exact functor of a second pair descends to the stable heart of a
first pair exactly when it kills add(W1).  This module certifies that
condition, evaluates the restricted functor on objects and morphisms,
measures how much exactness it preserves on sampled heart short exact
sequences, computes its kernel two independent ways, and verifies the
round-trip isomorphism available when the vanishing loci are nested.
Twin pairs get their own battery, and the last block packages Ext spaces
over a rigid class into a module-with-action gadget whose vanishing
detects membership.
"""

import itertools

import numpy as np
from dataclasses import dataclass, field

from . import exactla as la
from . import homkit as hk
from . import cotorsion as ct
from . import heart as ht
from .quiverrep import CheckError, Morphism, factorize, standard_module


def _dedup(mods):
    out = {}
    for m in mods:
        out.setdefault(m.digest(), m)
    return list(out.values())


def _same_algebra(p1, p2):
    if p1.algebra is not p2.algebra:
        raise CheckError("pairs live on different algebras")


def _kills(pair, gens):
    """Does the pair's H send every generator to a heart zero object?"""
    return all(ht.heart_zero(pair, ht.h_obj(pair, g)) for g in _dedup(gens))


def heart_classes(pair):
    """Catalog members in the heart with nonzero stable class, name order."""
    return [m for m in pair.workspace.catalog()
            if not ht.heart_zero(pair, m) and ht.in_heart(pair, m)]


def heart_members(pair):
    """All catalog members in the heart, including the stably zero ones."""
    return [m for m in pair.workspace.catalog() if ht.in_heart(pair, m)]


def _cls(pair, x):
    """Stable class of x as a display string over the catalog, W summands
    stripped; zero classes print as 0."""
    named = [(m.name, m) for m in pair.workspace.catalog()]
    parts = hk.decompose(x, named)
    if parts is None:
        return x.name or x.digest()[:8]
    ws = pair.workspace
    kept = sorted((n, k) for n, k in parts
                  if not hk.in_add(ws.module(n), pair.w))
    if not kept:
        return "0"
    return "+".join(n if k == 1 else "%d*%s" % (k, n) for n, k in kept)


@dataclass
class PairDuo:
    p1: object
    p2: object
    w1_condition: bool


def duo(p1, p2):
    """Pack two pairs on one algebra, recording whether the second pair's
    functor kills add(W1); that is the condition for it to descend to a
    functor out of the first stable heart."""
    _same_algebra(p1, p2)
    cond = _kills(p2, p1.w)
    return PairDuo(p1, p2, cond)


def beta(d, x):
    """The restricted comparison functor on a heart-1 object or morphism.

    Values are the second pair's H; endpoints are certified as heart-1
    members first, so the call only accepts input the functor is actually
    defined on.
    """
    if not d.w1_condition:
        raise CheckError("second functor does not kill W1; no restriction")
    if isinstance(x, (ht.HeartMor, Morphism)):
        rep = x.rep if isinstance(x, ht.HeartMor) else x
        ht.certify_heart(d.p1, rep.source)
        ht.certify_heart(d.p1, rep.target)
        return ht.h_mor(d.p2, rep)
    ht.certify_heart(d.p1, x)
    return ht.h_obj(d.p2, x)


@dataclass
class RouteReport:
    lhs: bool
    rhs: bool
    h_failures: list
    star_failures: list

    def __iter__(self):
        return iter((self.lhs, self.rhs))

    @property
    def agree(self):
        return self.lhs == self.rhs


def lemma51_check(d):
    """Two routes to the nesting of vanishing loci.

    lhs: the first pair's H kills every u2 and v2 generator.  rhs: the
    same generators pass the membership oracle of the first pair.  The
    routes are independent and must agree; per-generator failures are kept
    for reporting.
    """
    gens = _dedup(d.p2.u + d.p2.v)
    h_fail = [g.name for g in gens
              if not ht.heart_zero(d.p1, ht.h_obj(d.p1, g))]
    star_fail = []
    for g in gens:
        r = ht.add_star_test(d.p1, g)
        if r.inconclusive:
            raise CheckError("membership inconclusive for %s" % g.name)
        if not r.via_oracle:
            star_fail.append(g.name)
    return RouteReport(not h_fail, not star_fail, h_fail, star_fail)


@dataclass
class HeartSes:
    """A short exact sequence of the stable heart: k is the kernel
    inclusion of the heart epi e."""
    pair: object
    k: ht.HeartMor
    e: ht.HeartMor
    names: tuple


def heart_ses_sample(pair, classes=None):
    """Short exact sequences of the stable heart, exhausting the
    kernel-cokernel pairs of every Hom-basis morphism between the given
    heart objects.

    Each basis morphism f: A -> B contributes its image factorization from
    both sides: im f >--> B -->> coker f and ker f >--> A -->> im f, all
    assembled from heart kernel and cokernel data.  Stably zero morphisms
    and exact duplicates are dropped.
    """
    if classes is None:
        classes = heart_classes(pair)
    out = []
    seen = set()

    def push(k, e, names):
        key = (k.source.digest(), k.target.digest(), e.target.digest(),
               k.rep.vec().tobytes(), e.rep.vec().tobytes())
        if key not in seen:
            seen.add(key)
            out.append(HeartSes(pair, k, e, names))

    for a in classes:
        for b in classes:
            for f in hk.hom_basis(a, b):
                mu = ht.HeartMor(pair, f)
                if mu.is_stably_zero():
                    continue
                cobj, proj = ht.heart_kc(pair, mu, "cokernel")
                iobj, inc = ht.heart_kc(pair, proj, "kernel")
                push(inc, proj,
                     (_cls(pair, iobj), _cls(pair, b), _cls(pair, cobj)))
                kobj, kinc = ht.heart_kc(pair, mu, "kernel")
                e = ht.stable_factor(pair, f, inc.rep, "lift")
                if e is None:
                    raise CheckError("image corestriction missing for %s -> %s"
                                     % (a.name, b.name))
                push(kinc, ht.HeartMor(pair, e),
                     (_cls(pair, kobj), _cls(pair, a), _cls(pair, iobj)))
    return out


@dataclass
class SesCheck:
    names: tuple
    half: bool
    mono: bool
    epi: bool

    @property
    def full(self):
        return self.half and self.mono and self.epi


@dataclass
class BetaReport:
    hypothesis: bool
    checks: list
    half_ok: bool
    full_ok: bool

    @property
    def witnesses(self):
        return [c for c in self.checks if not c.full]


def beta_exactness(d, sample=None):
    """Push sampled heart-1 short exact sequences through the restricted
    functor.

    Middle exactness of the image must hold for every sample.  Kernel and
    cokernel preservation are recorded separately: they are only promised
    when the first vanishing locus sits inside the second (the hypothesis
    flag), and the failing samples are the interesting witnesses otherwise.
    """
    if sample is None:
        sample = heart_ses_sample(d.p1)
    hyp = _kills(d.p2, d.p1.u + d.p1.v)
    checks = []
    for s in sample:
        bk = ht.h_mor(d.p2, s.k.rep)
        be = ht.h_mor(d.p2, s.e.rep)
        half = ht.exact_at(d.p2, bk, be)
        mono, _ = ht.heart_mono_epi(d.p2, bk)
        _, epi = ht.heart_mono_epi(d.p2, be)
        checks.append(SesCheck(s.names, half, mono, epi))
    return BetaReport(hyp, checks,
                      all(c.half for c in checks),
                      all(c.full for c in checks))


def serre_check(d, sample=None):
    """Closure of the heart-1 subcategory cut out by the second pair's
    vanishing locus: on every sampled short exact sequence the middle term
    belongs iff both end terms do.  Membership runs through the
    independent oracle so the check does not lean on H."""
    if sample is None:
        sample = heart_ses_sample(d.p1)
    for s in sample:
        flags = []
        for x in (s.k.source, s.k.target, s.e.target):
            r = ht.add_star_test(d.p2, x)
            if r.inconclusive or not r.agree:
                raise CheckError("membership undecided on a sampled term")
            flags.append(r.via_oracle)
        sub, mid, quot = flags
        if mid != (sub and quot):
            return False
    return True


def ker_beta_members(d):
    """Heart-1 classes the restricted functor kills, two ways.

    h route: the value under the second pair is heart zero.  star route:
    the object passes the second pair's membership oracle.  Equality of
    the two name lists is the kernel characterization."""
    h_route, star_route = [], []
    for x in heart_classes(d.p1):
        if ht.heart_zero(d.p2, ht.h_obj(d.p2, x)):
            h_route.append(x.name)
        r = ht.add_star_test(d.p2, x)
        if r.inconclusive:
            raise CheckError("membership inconclusive for %s" % x.name)
        if r.via_oracle:
            star_route.append(x.name)
    return h_route, star_route


def prop53_check(d):
    """Round trip heart-1 -> heart-2 -> heart-1 against the identity.

    Needs the nesting W1 <= locus2 <= locus1, checked first.  For each
    heart-1 class B the comparison map glues the plus leg of the second
    pair with the stable inverse of its minus leg, both pushed through the
    first pair's H; the map must be stably invertible and natural in B
    over a full Hom-basis."""
    if not d.w1_condition or not _kills(d.p1, d.p2.u + d.p2.v):
        raise CheckError("nesting hypothesis fails; no round trip")
    classes = heart_classes(d.p1)
    rho = {}
    for b in classes:
        plus = ct.construct(d.p2, b, "plus")
        minus = ct.construct(d.p2, plus.bplus, "minus")
        hs = ht.h_mor(d.p1, plus.alpha)
        htm = ht.h_mor(d.p1, minus.gamma)
        tinv = hk.stable_inverse(htm.rep, d.p1.w)
        if tinv is None:
            return False
        r = tinv.compose(hs.rep)
        if hk.stable_inverse(r, d.p1.w) is None:
            return False
        rho[b.digest()] = r
    for a in classes:
        for b in classes:
            for f in hk.hom_basis(a, b):
                inner = ht.h_mor(d.p2, f).rep
                outer = ht.h_mor(d.p1, inner).rep
                lhs = rho[b.digest()].compose(ht.h_mor(d.p1, f).rep)
                rhs = outer.compose(rho[a.digest()])
                if not hk.stable_equal(lhs, rhs, d.p1.w):
                    return False
    return True


@dataclass
class HeartMatch:
    ok: bool
    matching: list
    dims1: dict
    dims2: dict


def hearts_match(pa, pb):
    """Do two stable hearts look alike: a bijection of nonzero classes
    preserving every pairwise stable Hom dimension."""
    ca, cb = heart_classes(pa), heart_classes(pb)
    da = {(x.name, y.name): hk.stable_hom_dim(x, y, pa.w)
          for x in ca for y in ca}
    db = {(x.name, y.name): hk.stable_hom_dim(x, y, pb.w)
          for x in cb for y in cb}
    if len(ca) != len(cb):
        return HeartMatch(False, [], da, db)

    def prof(cs, dd):
        out = {}
        for x in cs:
            row = tuple(sorted(dd[(x.name, y.name)] for y in cs))
            col = tuple(sorted(dd[(y.name, x.name)] for y in cs))
            out[x.name] = (dd[(x.name, x.name)], row, col)
        return out

    pa_prof, pb_prof = prof(ca, da), prof(cb, db)
    names_a = [x.name for x in ca]
    for perm in itertools.permutations(x.name for x in cb):
        if any(pa_prof[na] != pb_prof[nb] for na, nb in zip(names_a, perm)):
            continue
        if all(da[(na, ma)] == db[(nb, mb)]
               for na, nb in zip(names_a, perm)
               for ma, mb in zip(names_a, perm)):
            return HeartMatch(True, list(zip(names_a, perm)), da, db)
    return HeartMatch(False, [], da, db)


@dataclass
class TwinPair:
    p1: object
    p2: object
    wt: list
    cache: dict = field(default_factory=dict)


def twin(p1, p2):
    """Certify the twin condition three equivalent ways and collect the
    shared class V1 cap U2 from the catalog."""
    _same_algebra(p1, p2)
    nested_u = all(hk.in_add(u, p2.u) for u in p1.u)
    nested_v = all(hk.in_add(v, p1.v) for v in p2.v)
    ext = all(hk.ext1_dim(u, v) == 0 for u in p1.u for v in p2.v)
    if not (nested_u and nested_v and ext):
        raise CheckError("not a twin: u-nesting %s, v-nesting %s, "
                         "ext vanishing %s" % (nested_u, nested_v, ext))
    ws = p1.workspace
    wt = [m for m in ws.catalog()
          if hk.in_add(m, p1.v) and hk.in_add(m, p2.u)]
    return TwinPair(p1, p2, wt)


def twin_membership(tp, b):
    """(plus, minus) membership for the twin heart.

    plus: the minimal right approximation by the shared class is epi with
    kernel in add(v2).  minus: the minimal left approximation is mono with
    cokernel in add(u1)."""
    key = ("twin_member", b.digest())
    if key in tp.cache:
        return tp.cache[key]
    right = hk.minimal_approx(b, tp.wt, "right")
    plus = bool(right.map.is_epi()) and \
        hk.in_add(factorize(right.map).kernel, tp.p2.v)
    left = hk.minimal_approx(b, tp.wt, "left")
    minus = bool(left.map.is_mono()) and \
        hk.in_add(factorize(left.map).cokernel, tp.p1.u)
    tp.cache[key] = (plus, minus)
    return plus, minus


def twin_heart_members(tp):
    """Catalog members carried by both twin approximation sequences."""
    return [m for m in tp.p1.workspace.catalog()
            if twin_membership(tp, m) == (True, True)]


def _factoring_rows(x, y, gens):
    """Row vectors of the morphisms x -> y factoring through add(gens)."""
    c, _, _ = hk.sum_module(x.algebra, gens)
    return [h.compose(k).vec() for k in hk.hom_basis(x, c)
            for h in hk.hom_basis(c, y)]


def _coeff_space(cols, quot_rows, p):
    """Canonical row basis of {c : sum c_i cols[i] in span(quot_rows)}."""
    n = len(cols)
    if n == 0:
        return la.zeros(0, 0)
    a = np.array([np.asarray(c, dtype=np.int64).ravel() for c in cols],
                 dtype=np.int64)
    if quot_rows:
        a = np.vstack([a, np.array(quot_rows, dtype=np.int64)])
    if a.shape[1] == 0:
        return la.eye(n)
    ns = la.kernel_basis(a.T, p)
    if ns.shape[0] == 0:
        return la.zeros(0, n)
    return la.row_space(ns[:, :n], p)


def _subspace_leq(a, b, p):
    if a.shape[0] == 0:
        return True
    if b.shape[0] == 0:
        return not np.any(a % p)
    return la.rank(np.vstack([a, b]), p) == la.rank(b, p)


def twin_suite(tp, sample=None):
    """Battery for a twin pair.

    On every Hom-basis between twin heart members, the morphisms either
    functor kills are exactly those factoring through the shared class,
    compared as coefficient subspaces so the statement covers all linear
    combinations; faithfulness of the induced functors is the forward
    inclusion.  A vanishing twin heart must force each component heart
    into u2 respectively v1, and a vanishing component heart forces the
    twin heart to vanish.
    """
    members = sample if sample is not None else twin_heart_members(tp)
    for m in members:
        if twin_membership(tp, m) != (True, True):
            raise CheckError("%s is not a twin heart member" % m.name)
    nonzero = [m for m in members if not hk.in_add(m, tp.wt)]
    p = tp.p1.algebra.prime
    detects = True
    faithful = True
    for a in members:
        for b in members:
            basis = hk.hom_basis(a, b)
            if not basis:
                continue
            fspan = _coeff_space([f.vec() for f in basis],
                                 _factoring_rows(a, b, tp.wt), p)
            for pair in (tp.p1, tp.p2):
                cols = [ht.h_mor(pair, f).rep.vec() for f in basis]
                ha, hb = ht.h_obj(pair, a), ht.h_obj(pair, b)
                zspan = _coeff_space(cols, _factoring_rows(ha, hb, pair.w), p)
                if not np.array_equal(zspan, fspan):
                    detects = False
                if not _subspace_leq(zspan, fspan, p):
                    faithful = False
    heart_zero = not nonzero
    inclusions = None
    if heart_zero:
        inclusions = (all(hk.in_add(m, tp.p2.u) for m in heart_members(tp.p1))
                      and all(hk.in_add(m, tp.p1.v)
                              for m in heart_members(tp.p2)))
    remark = True
    if not heart_classes(tp.p1) or not heart_classes(tp.p2):
        remark = heart_zero
    return {
        "wt": [m.name for m in tp.wt],
        "members": [m.name for m in members],
        "nonzero_classes": [m.name for m in nonzero],
        "factoring_detects_vanishing": detects,
        "faithful": faithful,
        "twin_heart_zero": heart_zero,
        "component_inclusions": inclusions,
        "zero_component_forces_zero": remark,
        "ok": detects and faithful and inclusions is not False and remark,
    }


def cluster_tilting_check(pair):
    """Certify u = v as a cluster tilting class: rigid, and Ext vanishing
    against it from either side picks out exactly add(u) in the catalog."""
    gens = _dedup(pair.u + pair.v)
    same = all(hk.in_add(u, pair.v) for u in pair.u) and \
        all(hk.in_add(v, pair.u) for v in pair.v)
    rigid = all(hk.ext1_dim(a, b) == 0 for a in gens for b in gens)
    left_ok = right_ok = True
    for x in pair.workspace.catalog():
        member = hk.in_add(x, gens)
        if member != all(hk.ext1_dim(x, g) == 0 for g in gens):
            left_ok = False
        if member != all(hk.ext1_dim(g, x) == 0 for g in gens):
            right_ok = False
    ok = same and rigid and left_ok and right_ok
    return {"same_class": same, "rigid": rigid, "left_detects": left_ok,
            "right_detects": right_ok, "ok": ok}


def rigid_case_check(pair):
    """For a rigid class u inside v: v is the right Ext-orthogonal of u on
    the catalog, every object is a plus member, and the plus structure map
    is a stable isomorphism."""
    ws = pair.workspace
    rigid = all(hk.ext1_dim(a, b) == 0 for a in pair.u for b in pair.u)
    perp = [m for m in ws.catalog()
            if all(hk.ext1_dim(g, m) == 0 for g in pair.u)]
    v_is_perp = all(hk.in_add(m, pair.v) for m in perp) and \
        all(hk.in_add(v, perp) for v in pair.v)
    plus_all = True
    sigma_id = True
    for m in ws.catalog():
        if not ct.membership(pair, m).plus:
            plus_all = False
            continue
        alpha = ct.construct(pair, m, "plus").alpha
        if hk.stable_inverse(alpha, pair.w) is None:
            sigma_id = False
    ok = rigid and v_is_perp and plus_all and sigma_id
    return {"rigid": rigid, "v_is_perp": v_is_perp, "plus_all": plus_all,
            "sigma_plus_identity": sigma_id, "ok": ok}


@dataclass
class ExtModule:
    """Ext spaces over a fixed class, with the right action of its Hom
    bases as explicit matrices on class coordinates."""
    x: object
    gens: list
    dims: dict
    action: dict

    def is_zero(self):
        return all(d == 0 for d in self.dims.values())


def _ext_coords(res, picked, h, x):
    """Coordinates of the class of h over the picked basis, modulo maps
    extending to the cover middle."""
    p = h.source.algebra.prime
    rows = [pk.vec() for pk in picked]
    rows += [t.compose(res.seq.i).vec() for t in hk.hom_basis(res.mid, x)]
    if not rows:
        if not h.is_zero():
            raise CheckError("nonzero class in a zero Ext space")
        return np.zeros(0, dtype=np.int64)
    coords = la.in_span(h.vec(), np.array(rows, dtype=np.int64), p)
    if coords is None:
        raise CheckError("pullback left the Ext class space")
    return coords[:len(picked)]


def ext_restriction_module(m, x):
    """Ext^1(-, x) restricted to add(m), with its right Hom action.

    The class m must contain every indecomposable projective.  Returns
    per-generator Ext spaces and, for each ordered generator pair (i, j)
    and each Hom-basis element f: M_j -> M_i, the matrix sending class
    coordinates at M_i to class coordinates at M_j; pullback is
    precomposition with the syzygy lift of f, so morphisms factoring
    through projectives act as zero.
    """
    gens = sorted((g.name or g.digest(), g) for g in _dedup(m))
    alg = gens[0][1].algebra
    mods = [g for _, g in gens]
    for v in alg.quiver.vertices:
        if not hk.in_add(standard_module(alg, v, "projective"), mods):
            raise CheckError("restriction class misses the projective at %s"
                             % v)
    spaces = {name: hk.ext1_reps(g, x) for name, g in gens}
    dims = {name: len(picked) for name, (_, picked) in spaces.items()}
    action = {}
    for iname, gi in gens:
        res_i, picked_i = spaces[iname]
        for jname, gj in gens:
            res_j, picked_j = spaces[jname]
            mats = []
            for f in hk.hom_basis(gj, gi):
                om = ht.omega_mor(f)
                mat = np.zeros((len(picked_i), len(picked_j)),
                               dtype=np.int64)
                for r, h in enumerate(picked_i):
                    mat[r] = _ext_coords(res_j, picked_j, h.compose(om), x)
                mats.append(mat)
            action[(iname, jname)] = mats
    return ExtModule(x, gens, dims, action)


def g_functor(pair, x):
    """Ext restriction module of the pair's u class at the minus value
    of x.

    For u rigid inside v this vanishes exactly on the right Ext
    orthogonal of u; when u = v is cluster tilting the minus step is a
    stable identity and the gadget reduces to plain Ext against x.
    """
    minus = ct.construct(pair, x, "minus")
    return ext_restriction_module(pair.u, minus.bminus)
