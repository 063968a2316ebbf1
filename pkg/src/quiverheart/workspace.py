"""Workspace files: an algebra plus named modules, subcategories and pairs.

The on-disk format is JSON with top level keys prime, quiver, relations,
modules, subcategories and pairs. Matrices are row-major lists of integers
mod p. Serialization is canonical (sorted keys, sorted generator lists,
compact separators) so that load -> serialize -> load is the identity and
reports that embed workspace digests are byte-stable.
"""

import json
from importlib import resources

from . import exactla as la
from .quiverrep import Algebra, AlgebraError, Module, Quiver


class WorkspaceError(Exception):
    """Malformed workspace input (missing keys, bad references, bad types)."""


class Workspace:
    def __init__(self, algebra, modules, subcategories, pairs):
        self.algebra = algebra
        self.modules = dict(modules)
        self.subcategories = {k: tuple(v) for k, v in subcategories.items()}
        self.pairs = dict(pairs)
        for sname, members in self.subcategories.items():
            for m in members:
                if m not in self.modules:
                    raise WorkspaceError(
                        "subcategory %s references unknown module %s" % (sname, m))
        for pname, (u, v) in self.pairs.items():
            if u not in self.subcategories or v not in self.subcategories:
                raise WorkspaceError(
                    "pair %s references unknown subcategory" % pname)

    @property
    def prime(self):
        return self.algebra.prime

    def catalog(self):
        """All named modules, in name order."""
        return [self.modules[k] for k in sorted(self.modules)]

    def module(self, name):
        if name not in self.modules:
            raise WorkspaceError("unknown module %r" % name)
        return self.modules[name]

    def subcat(self, name):
        if name not in self.subcategories:
            raise WorkspaceError("unknown subcategory %r" % name)
        return [self.modules[m] for m in self.subcategories[name]]

    def pair_subcats(self, name):
        if name not in self.pairs:
            raise WorkspaceError("unknown pair %r" % name)
        u, v = self.pairs[name]
        return self.subcat(u), self.subcat(v)

    def to_json(self):
        q = self.algebra.quiver
        quiver = {
            "vertices": list(q.vertices),
            "arrows": [{"name": n, "source": s, "target": t}
                       for n, s, t in q.arrows],
        }
        relations = [[{"coeff": int(c), "path": list(path)} for c, path in rel]
                     for rel in self.algebra.relations]
        modules = {}
        for name in sorted(self.modules):
            m = self.modules[name]
            dims = {v: m.dims[v] for v in q.vertices if m.dims[v]}
            maps = {}
            for arrow, _, _ in q.arrows:
                mat = m.maps[arrow]
                if mat.size and mat.any():
                    maps[arrow] = [[int(x) for x in row] for row in mat]
            modules[name] = {"dims": dims, "maps": maps}
        subcategories = {k: sorted(v) for k, v in self.subcategories.items()}
        pairs = {k: {"u": u, "v": v} for k, (u, v) in self.pairs.items()}
        return {
            "prime": self.prime,
            "quiver": quiver,
            "relations": relations,
            "modules": modules,
            "subcategories": subcategories,
            "pairs": pairs,
        }

    def canonical_bytes(self):
        return json.dumps(self.to_json(), sort_keys=True,
                          separators=(",", ":")).encode()

    def digest(self):
        return la.digest(self.canonical_bytes().decode())


def workspace_from_dict(data):
    if not isinstance(data, dict):
        raise WorkspaceError("workspace must be a JSON object")
    for key in ("prime", "quiver", "relations", "modules"):
        if key not in data:
            raise WorkspaceError("workspace is missing %r" % key)
    prime = data["prime"]
    if not isinstance(prime, int) or not la.is_prime(prime):
        raise WorkspaceError("prime must be a prime integer")
    qd = data["quiver"]
    try:
        quiver = Quiver(qd["vertices"],
                        [(a["name"], a["source"], a["target"])
                         for a in qd["arrows"]])
        relations = [[(t["coeff"], tuple(t["path"])) for t in rel]
                     for rel in data["relations"]]
        algebra = Algebra(quiver, relations, prime=prime)
    except (KeyError, TypeError) as exc:
        raise WorkspaceError("bad quiver/relation data: %s" % exc)
    modules = {}
    for name in sorted(data["modules"]):
        spec = data["modules"][name]
        try:
            modules[name] = Module(algebra, spec.get("dims", {}),
                                   spec.get("maps", {}), name=name)
        except AlgebraError as exc:
            raise WorkspaceError("module %s is invalid: %s" % (name, exc))
    subcategories = {}
    for sname, members in data.get("subcategories", {}).items():
        members = list(members)
        if len(set(members)) != len(members):
            raise WorkspaceError("subcategory %s lists a module twice" % sname)
        subcategories[sname] = sorted(members)
    pairs = {}
    for pname, spec in data.get("pairs", {}).items():
        try:
            pairs[pname] = (spec["u"], spec["v"])
        except (KeyError, TypeError):
            raise WorkspaceError("pair %s needs u and v subcategories" % pname)
    return Workspace(algebra, modules, subcategories, pairs)


def load_workspace(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise WorkspaceError("cannot read workspace: %s" % exc)
    except json.JSONDecodeError as exc:
        raise WorkspaceError("workspace is not valid JSON: %s" % exc)
    return workspace_from_dict(data)


def save_workspace(ws, path):
    with open(path, "wb") as fh:
        fh.write(ws.canonical_bytes())


def packaged_fixture(name):
    """Load one of the bundled example workspaces (a2, ex61, ex62)."""
    ref = resources.files("quiverheart") / "fixtures" / (name + ".json")
    try:
        data = json.loads(ref.read_text())
    except FileNotFoundError:
        raise WorkspaceError("no bundled workspace named %r" % name)
    return workspace_from_dict(data)
