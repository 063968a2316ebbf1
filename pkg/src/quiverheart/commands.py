"""Command handlers behind the service endpoints.

Every handler takes a resolved Workspace plus the request and returns a
list of check records.  Reports carry no timestamps and iterate in name
order throughout, so a fixed (workspace, command, seed) triple always
produces the same bytes.
"""

import os
from itertools import combinations

from . import compare as cp
from . import cotorsion as ct
from . import heart as ht
from . import homkit as hk
from .models import CheckRecord, Report, RunRequest
from .quiverrep import AlgebraError, CheckError, standard_module, validate_module
from .workspace import WorkspaceError, load_workspace, packaged_fixture


class UsageError(Exception):
    """Bad request shape: missing flags, unknown names, unreadable files."""


_WORKSPACES = {}
_PAIRS = {}


def resolve_workspace(spec):
    """A filesystem path, or the name of a bundled fixture."""
    if spec in _WORKSPACES:
        return _WORKSPACES[spec]
    try:
        ws = load_workspace(spec) if os.path.exists(spec) \
            else packaged_fixture(spec)
    except WorkspaceError as exc:
        raise UsageError(str(exc))
    _WORKSPACES[spec] = ws
    return ws


def _pair(ws, name):
    if name is None:
        raise UsageError("this command needs a pair name")
    key = (ws.digest(), name)
    if key not in _PAIRS:
        try:
            _PAIRS[key] = ct.CotorsionPair.from_workspace(ws, name)
        except WorkspaceError as exc:
            raise UsageError(str(exc))
    return _PAIRS[key]


def _objects(ws, req):
    names = req.objects or sorted(ws.modules)
    try:
        return [(n, ws.module(n)) for n in names]
    except WorkspaceError as exc:
        raise UsageError(str(exc))


def _cls(ws, x):
    """Decomposition of x over the catalog, as a printable class string."""
    if x.is_zero():
        return "0"
    parts = hk.decompose(x, [(n, ws.modules[n]) for n in sorted(ws.modules)])
    if parts is None:
        return "?dim" + repr(list(x.dim_vector()))
    return "+".join("%d*%s" % (m, n) if m > 1 else n for n, m in parts)


def _rec(name, status, **witnesses):
    return CheckRecord(name=name, status=status, witnesses=witnesses)


def _flag(name, good, **witnesses):
    return _rec(name, "pass" if good else "fail", **witnesses)


def cmd_check_algebra(ws, req):
    q = ws.algebra.quiver
    checks = [_rec("algebra", "pass", prime=ws.prime,
                   vertices=len(q.vertices), arrows=len(q.arrows),
                   relations=len(ws.algebra.relations))]
    for name in sorted(ws.modules):
        m = ws.modules[name]
        try:
            validate_module(m)
        except AlgebraError as exc:
            checks.append(_rec("module:" + name, "fail", error=str(exc)))
            continue
        checks.append(_rec("module:" + name, "pass", dim=m.total_dim,
                           indecomposable=hk.is_indecomposable(m)))
    return checks


def cmd_check_pair(ws, req):
    pair = _pair(ws, req.pair)
    rep = ct.verify_pair(pair, testset=ws.catalog())
    checks = [_flag(key, rep[key])
              for key in ("orthogonal", "projectives", "injectives",
                          "u_closed", "v_closed", "special")]
    checks.append(_flag("certified", rep["ok"], failures=rep["failures"]))
    return checks


def cmd_heart(ws, req):
    pair = _pair(ws, req.pair)
    members = [m.name for m in cp.heart_members(pair)]
    classes = [m.name for m in cp.heart_classes(pair)]
    return [_rec("members", "pass", objects=members),
            _rec("classes", "pass", objects=classes)]


def cmd_h_of(ws, req):
    pair = _pair(ws, req.pair)
    checks = []
    if req.from_pair or req.to_pair:
        if not (req.from_pair and req.to_pair):
            raise UsageError("morphism images need both --from and --to")
        src = ws.module(req.from_pair) if req.from_pair in ws.modules else None
        tgt = ws.module(req.to_pair) if req.to_pair in ws.modules else None
        if src is None or tgt is None:
            raise UsageError("--from/--to must name workspace modules here")
        for k, f in enumerate(hk.hom_basis(src, tgt)):
            mu = ht.h_mor(pair, f)
            checks.append(_rec("hom:%d" % k, "pass",
                               source=_cls(ws, mu.source),
                               target=_cls(ws, mu.target),
                               stably_zero=mu.is_stably_zero()))
        return checks
    for name, m in _objects(ws, req):
        value = ht.h_obj(pair, m)
        checks.append(_rec("object:" + name, "pass", value=_cls(ws, value),
                           heart_zero=ht.heart_zero(pair, value)))
    return checks


def cmd_membership(ws, req):
    pair = _pair(ws, req.pair)
    checks = []
    for name, m in _objects(ws, req):
        mem = ct.membership(pair, m)
        checks.append(_rec("object:" + name, "pass", plus=mem.plus,
                           minus=mem.minus, heart=mem.plus and mem.minus))
    return checks


def cmd_verify_halfexact(ws, req):
    pair = _pair(ws, req.pair)
    count = req.random or 100
    checks = []
    for k in range(count):
        ses = ht.random_conflation(ws, req.seed + k)
        ok = ht.verify_half_exact(pair, ses)
        checks.append(_flag("conflation:%d" % k, ok, sub=_cls(ws, ses.sub),
                            mid=_cls(ws, ses.mid), quot=_cls(ws, ses.quot)))
    return checks


def cmd_les(ws, req):
    pair = _pair(ws, req.pair)
    count = req.random or 25
    checks = []
    for k in range(count):
        ses = ht.random_conflation(ws, req.seed + k)
        for d in range(req.depth):
            rep = ht.les_window(pair, ses)
            checks.append(_flag("conflation:%d:window:%d" % (k, d),
                                rep.all_exact,
                                exactness=list(rep.exactness),
                                sub=_cls(ws, ses.sub), mid=_cls(ws, ses.mid),
                                quot=_cls(ws, ses.quot)))
            if d + 1 < req.depth:
                ses = ht.connecting(pair, ses).left_aux
    return checks


def cmd_kernel_char(ws, req):
    pair = _pair(ws, req.pair)
    checks = []
    for name, m in _objects(ws, req):
        rep = ht.add_star_test(pair, m, cap=req.oracle_cap)
        status = "pass" if rep.agree else "fail"
        if rep.inconclusive:
            status = "inconclusive"
        checks.append(_rec("object:" + name, status, via_h=rep.via_h,
                           via_oracle=rep.via_oracle, cap=rep.cap))
    return checks


def _duo(ws, req):
    if not (req.from_pair and req.to_pair):
        raise UsageError("this command needs --from and --to pair names")
    return cp.duo(_pair(ws, req.from_pair), _pair(ws, req.to_pair))


def cmd_compare(ws, req):
    d = _duo(ws, req)
    checks = [_flag("w1_condition", d.w1_condition)]
    if not d.w1_condition:
        return checks
    lem = cp.lemma51_check(d)
    checks.append(_flag("nesting_routes_agree", lem.agree,
                        h_route=lem.lhs, oracle_route=lem.rhs,
                        h_failures=lem.h_failures,
                        star_failures=lem.star_failures))
    hr, sr = cp.ker_beta_members(d)
    checks.append(_flag("kernel_routes_agree", hr == sr,
                        h_route=hr, star_route=sr))
    bex = cp.beta_exactness(d)
    bstatus = bex.full_ok or not bex.hypothesis
    checks.append(_flag("exactness", bstatus, hypothesis=bex.hypothesis,
                        half=bex.half_ok, full=bex.full_ok,
                        witnesses=[list(c.names) for c in bex.witnesses]))
    checks.append(_flag("serre_closure", cp.serre_check(d)))
    try:
        checks.append(_flag("round_trip", cp.prop53_check(d)))
    except CheckError as exc:
        checks.append(_rec("round_trip", "inconclusive", reason=str(exc)))
    return checks


def cmd_twin(ws, req):
    if not (req.from_pair and req.to_pair):
        raise UsageError("this command needs --from and --to pair names")
    p1 = _pair(ws, req.from_pair)
    p2 = _pair(ws, req.to_pair)
    try:
        tp = cp.twin(p1, p2)
    except CheckError as exc:
        return [_rec("twin_condition", "fail", reason=str(exc))]
    rep = cp.twin_suite(tp)
    checks = [_rec("twin_condition", "pass",
                   wt=[m.name for m in tp.wt]),
              _rec("members", "pass", objects=rep["members"]),
              _rec("classes", "pass", objects=rep["nonzero_classes"]),
              _flag("factoring_detects_vanishing",
                    rep["factoring_detects_vanishing"]),
              _flag("faithful", rep["faithful"]),
              _rec("twin_heart_zero", "pass", value=rep["twin_heart_zero"]),
              _flag("zero_component_forces_zero",
                    rep["zero_component_forces_zero"])]
    if rep["component_inclusions"] is not None:
        checks.append(_flag("component_inclusions",
                            rep["component_inclusions"]))
    checks.append(_flag("suite", rep["ok"]))
    return checks


def cmd_g_functor(ws, req):
    pair = _pair(ws, req.pair)
    checks = []
    for name, m in _objects(ws, req):
        g = cp.g_functor(pair, m)
        dims = {k: g.dims[k] for k in sorted(g.dims) if g.dims[k]}
        checks.append(_rec("object:" + name, "pass", dims=dims,
                           zero=g.is_zero()))
    return checks


def cmd_enumerate_pairs(ws, req):
    alg = ws.algebra
    cat = ws.catalog()
    projs = [standard_module(alg, v, "projective") for v in alg.quiver.vertices]
    base = sorted(m.name for m in cat if hk.in_add(m, projs))
    extras = sorted(m.name for m in cat if m.name not in base)
    seen = set()
    checks = []
    for size in range(min(req.max_extra, len(extras)) + 1):
        for extra in combinations(extras, size):
            ugens = [ws.modules[n] for n in sorted(base + list(extra))]
            v = [m for m in cat
                 if all(hk.ext1_dim(u, m) == 0 for u in ugens)]
            uu = [m for m in cat
                  if all(hk.ext1_dim(m, x) == 0 for x in v)]
            names = frozenset(m.name for m in uu)
            if names != frozenset(m.name for m in ugens) or names in seen:
                continue
            seen.add(names)
            pair = ct.CotorsionPair(ws, uu, v, name="candidate")
            if ct.verify_pair(pair, testset=cat)["ok"]:
                checks.append(_rec("pair:%d" % len(checks), "pass",
                                   u=sorted(names),
                                   v=sorted(m.name for m in v)))
    checks.append(_rec("count", "pass", value=len(checks)))
    return checks


HANDLERS = {
    "check-algebra": cmd_check_algebra,
    "check-pair": cmd_check_pair,
    "heart": cmd_heart,
    "h-of": cmd_h_of,
    "membership": cmd_membership,
    "verify-halfexact": cmd_verify_halfexact,
    "les": cmd_les,
    "kernel-char": cmd_kernel_char,
    "compare": cmd_compare,
    "twin": cmd_twin,
    "g-functor": cmd_g_functor,
    "enumerate-pairs": cmd_enumerate_pairs,
}


def execute(command, req: RunRequest) -> Report:
    if command not in HANDLERS:
        raise UsageError("unknown command %r" % command)
    ws = resolve_workspace(req.workspace)
    checks = HANDLERS[command](ws, req)
    ok = all(c.status == "pass" for c in checks)
    return Report(command=command, workspace=ws.digest(), seed=req.seed,
                  checks=checks, ok=ok)
