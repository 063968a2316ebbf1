"""Bound quiver algebras and their finite dimensional representations.

A representation assigns a vector space over F_p to every vertex and a matrix
to every arrow; an arrow a: u -> w acts from the space at u to the space at w.
Paths are written in application order, so the path (a, b) means "first a,
then b" and requires target(a) == source(b).

The algebra is the path algebra modulo relations. Relations must be linear
combinations of parallel paths of length >= 2. Path classes are computed by
graded enumeration until every path of some length dies in the quotient; if
that never happens within the enumeration cap the relations are rejected.
"""

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la


class AlgebraError(Exception):
    """The quiver/relation data does not define a supported algebra."""


class CheckError(Exception):
    """A structural property that the theory guarantees failed to hold."""


MAX_PATH_CLASSES = 10000


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        self.arrows = tuple((str(n), str(s), str(t)) for n, s, t in arrows)
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        vset = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise AlgebraError("arrow %s has unknown endpoint" % name)
        self.arrow_by_name = {a[0]: a for a in self.arrows}
        self.arrows_from = {v: [] for v in self.vertices}
        self.arrows_into = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.arrows_from[a[1]].append(a)
            self.arrows_into[a[2]].append(a)

    def digest(self):
        return la.digest(list(self.vertices), [list(a) for a in self.arrows])


def _path_source(quiver, path):
    return quiver.arrow_by_name[path[0]][1]


def _path_target(quiver, path):
    return quiver.arrow_by_name[path[-1]][2]


class Algebra:
    """Path algebra of a quiver modulo an admissible relation ideal."""

    def __init__(self, quiver, relations, prime=la.DEFAULT_PRIME,
                 max_paths=MAX_PATH_CLASSES):
        if not la.is_prime(prime):
            raise AlgebraError("prime must be prime, got %r" % prime)
        self.quiver = quiver
        self.prime = prime
        self.relations = self._check_relations(relations)
        self._hom_cache = {}
        self._resolve_cache = {}
        self._misc_cache = {}
        self._build(max_paths)

    def _check_relations(self, relations):
        out = []
        for rel in relations:
            terms = []
            src = tgt = None
            for coeff, path in rel:
                path = tuple(str(a) for a in path)
                if len(path) < 2:
                    raise AlgebraError("relation terms must have length >= 2")
                for x, y in zip(path, path[1:]):
                    if self.quiver.arrow_by_name[x][2] != self.quiver.arrow_by_name[y][1]:
                        raise AlgebraError("relation path %r is not composable" % (path,))
                s = _path_source(self.quiver, path)
                t = _path_target(self.quiver, path)
                if src is None:
                    src, tgt = s, t
                elif (s, t) != (src, tgt):
                    raise AlgebraError("relation mixes non-parallel paths")
                coeff = int(coeff) % self.prime
                if coeff:
                    terms.append((coeff, path))
            if terms:
                out.append(tuple(terms))
        return tuple(out)

    def _build(self, max_paths):
        q = self.quiver
        p = self.prime
        # paths[(u, w)] keeps every enumerated path u -> w ordered by
        # (length, name sequence); the order fixes all canonical forms below.
        paths = {}
        for v in q.vertices:
            paths[(v, v)] = [()]
        by_length = {0: {v: [()] for v in q.vertices}}
        total = len(q.vertices)
        max_rel_len = max((max(len(t[1]) for t in rel) for rel in self.relations),
                          default=2)
        nilpotency = None
        length = 0
        while nilpotency is None:
            length += 1
            prev = by_length[length - 1]
            cur = {v: [] for v in q.vertices}
            for v in q.vertices:
                for path in prev[v]:
                    end = v if not path else _path_target(q, path)
                    for name, _, t in q.arrows_from[end]:
                        cur[v].append(path + (name,))
            for v in q.vertices:
                cur[v].sort()
                for path in cur[v]:
                    key = (v, _path_target(q, path))
                    paths.setdefault(key, []).append(path)
            by_length[length] = cur
            total += sum(len(c) for c in cur.values())
            if total > max_paths:
                raise AlgebraError(
                    "path enumeration exceeded %d classes; relations do not "
                    "look admissible" % max_paths)
            if length < 2:
                if sum(len(c) for c in cur.values()) == 0:
                    nilpotency = length
                continue
            red = self._ideal_reduction(paths, length, max_rel_len)
            died = True
            for v in q.vertices:
                for path in by_length[length][v]:
                    key = (v, _path_target(q, path))
                    if np.any(self._reduce_in(red[key], path, p)):
                        died = False
                        break
                if not died:
                    break
            if died:
                nilpotency = length
        self.nilpotency = nilpotency
        self._paths = {k: tuple(v) for k, v in paths.items()}
        self._red = self._ideal_reduction(paths, nilpotency, max_rel_len)
        self.classes = {}
        for key, plist in self._paths.items():
            cols, rmat, pivots = self._red[key]
            free = [i for i in range(len(cols)) if i not in set(pivots)]
            kept = [cols[i] for i in free if len(cols[i]) < nilpotency]
            if len(kept) != len(free):
                raise AlgebraError("inconsistent grading in relation ideal")
            self.classes[key] = tuple(kept)
        self.dim = sum(len(c) for c in self.classes.values())

    def _ideal_reduction(self, paths, horizon, max_rel_len):
        """rref of the span of alpha * r * beta per parallel block."""
        p = self.prime
        out = {}
        vectors = {key: [] for key in paths}
        for rel in self.relations:
            src = _path_source(self.quiver, rel[0][1])
            tgt = _path_target(self.quiver, rel[0][1])
            for (u, w), plist in paths.items():
                if w != src:
                    continue
                for alpha in plist:
                    for (x, z), slist in paths.items():
                        if x != tgt:
                            continue
                        for beta in slist:
                            if len(alpha) + max_rel_len + len(beta) > horizon:
                                continue
                            key = (u, z)
                            cols = paths[key]
                            vec = np.zeros(len(cols), dtype=np.int64)
                            for coeff, term in rel:
                                full = alpha + term + beta
                                vec[cols.index(full)] = (vec[cols.index(full)] + coeff) % p
                            if np.any(vec):
                                vectors[key].append(vec)
        for key, cols in paths.items():
            if vectors[key]:
                mat = np.array(vectors[key], dtype=np.int64)
                rmat, pivots = la.rref(mat, p)
            else:
                rmat, pivots = la.zeros(0, len(cols)), []
            out[key] = (list(cols), rmat, pivots)
        return out

    @staticmethod
    def _reduce_in(red, path, p):
        cols_list, rmat, pivots = red
        vec = np.zeros(len(cols_list), dtype=np.int64)
        vec[cols_list.index(path)] = 1
        for i, pc in enumerate(pivots):
            if vec[pc]:
                vec = np.mod(vec - vec[pc] * rmat[i], p)
        return vec

    def class_coords(self, u, w, path):
        """Coordinates of a path's class over the chosen basis of (u, w)."""
        basis = self.classes.get((u, w), ())
        coords = np.zeros(len(basis), dtype=np.int64)
        if len(path) >= self.nilpotency:
            return coords
        key = (u, w)
        if key not in self._paths or path not in self._paths[key]:
            raise AlgebraError("path %r not enumerated for (%s, %s)" % (path, u, w))
        red = self._red[key]
        vec = self._reduce_in(red, path, self.prime)
        for j, cls in enumerate(basis):
            coords[j] = vec[red[0].index(cls)]
        return coords

    def digest(self):
        key = "algebra_digest"
        if key not in self._misc_cache:
            rels = [[(c, list(path)) for c, path in rel] for rel in self.relations]
            flat = [[item[0]] + item[1] for rel in rels for item in rel]
            self._misc_cache[key] = la.digest(
                self.prime, self.quiver.digest(),
                [str(x) for row in flat for x in row])
        return self._misc_cache[key]


class Module:
    """A representation of the bound quiver, i.e. a finite dim'l module."""

    def __init__(self, algebra, dims, maps, name=None, validate=True):
        self.algebra = algebra
        q = algebra.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.maps = {}
        for arrow, s, t in q.arrows:
            m = maps.get(arrow)
            if m is None:
                m = la.zeros(self.dims[t], self.dims[s])
            self.maps[arrow] = la.normalize(m, algebra.prime)
        self.name = name
        self._digest = None
        if validate:
            validate_module(self)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def is_zero(self):
        return self.total_dim == 0

    def path_action(self, path):
        q = self.algebra.quiver
        if not path:
            raise ValueError("path_action needs a nonempty path")
        src = _path_source(q, path)
        m = la.eye(self.dims[src])
        for arrow in path:
            m = la.matmul(self.maps[arrow], m, self.algebra.prime)
        return m

    def digest(self):
        if self._digest is None:
            arrs = [self.maps[a[0]] for a in self.algebra.quiver.arrows]
            self._digest = la.digest(
                self.algebra.digest(),
                [self.dims[v] for v in self.algebra.quiver.vertices], arrs)
        return self._digest

    def renamed(self, name):
        m = Module(self.algebra, self.dims, self.maps, name=name, validate=False)
        m._digest = self._digest
        return m

    def __repr__(self):
        label = self.name or "module"
        return "<%s dim %s>" % (label, list(self.dim_vector()))


def validate_module(m):
    q = m.algebra.quiver
    p = m.algebra.prime
    for arrow, s, t in q.arrows:
        if m.maps[arrow].shape != (m.dims[t], m.dims[s]):
            raise AlgebraError("map for arrow %s has wrong shape" % arrow)
    for rel in m.algebra.relations:
        src = _path_source(q, rel[0][1])
        tgt = _path_target(q, rel[0][1])
        acc = la.zeros(m.dims[tgt], m.dims[src])
        for coeff, path in rel:
            acc = np.mod(acc + coeff * m.path_action(path), p)
        if np.any(acc):
            raise AlgebraError("relation does not annihilate the module")
    return True


class Morphism:
    def __init__(self, source, target, blocks, validate=True):
        self.source = source
        self.target = target
        p = source.algebra.prime
        q = source.algebra.quiver
        self.blocks = {}
        for v in q.vertices:
            b = blocks.get(v)
            if b is None:
                b = la.zeros(target.dims[v], source.dims[v])
            self.blocks[v] = la.normalize(b, p)
        if validate:
            validate_morphism(self)

    def compose(self, other):
        """self o other (apply `other` first)."""
        if other.target is not self.source and other.target.digest() != self.source.digest():
            raise ValueError("composition mismatch")
        p = self.source.algebra.prime
        blocks = {v: la.matmul(self.blocks[v], other.blocks[v], p)
                  for v in self.blocks}
        return Morphism(other.source, self.target, blocks, validate=False)

    def add(self, other):
        p = self.source.algebra.prime
        return Morphism(self.source, self.target,
                        {v: np.mod(self.blocks[v] + other.blocks[v], p)
                         for v in self.blocks}, validate=False)

    def sub(self, other):
        p = self.source.algebra.prime
        return Morphism(self.source, self.target,
                        {v: np.mod(self.blocks[v] - other.blocks[v], p)
                         for v in self.blocks}, validate=False)

    def scale(self, c):
        p = self.source.algebra.prime
        c = int(c) % p
        return Morphism(self.source, self.target,
                        {v: np.mod(self.blocks[v] * c, p) for v in self.blocks},
                        validate=False)

    def is_zero(self):
        return all(not np.any(b) for b in self.blocks.values())

    def equals(self, other):
        return all(np.array_equal(self.blocks[v], other.blocks[v])
                   for v in self.blocks)

    def vec(self):
        order = self.source.algebra.quiver.vertices
        parts = [self.blocks[v].reshape(-1) for v in order]
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts)

    @staticmethod
    def from_vec(source, target, vec):
        order = source.algebra.quiver.vertices
        blocks = {}
        at = 0
        for v in order:
            n = target.dims[v] * source.dims[v]
            blocks[v] = np.array(vec[at:at + n], dtype=np.int64).reshape(
                target.dims[v], source.dims[v])
            at += n
        return Morphism(source, target, blocks, validate=False)

    def is_mono(self):
        p = self.source.algebra.prime
        return all(la.rank(self.blocks[v], p) == self.source.dims[v]
                   for v in self.blocks)

    def is_epi(self):
        p = self.source.algebra.prime
        return all(la.rank(self.blocks[v], p) == self.target.dims[v]
                   for v in self.blocks)

    def is_iso(self):
        return (self.source.dim_vector() == self.target.dim_vector()
                and self.is_mono())

    def inverse(self):
        if not self.is_iso():
            raise CheckError("morphism is not invertible")
        p = self.source.algebra.prime
        blocks = {v: la.inverse(self.blocks[v], p) for v in self.blocks}
        return Morphism(self.target, self.source, blocks, validate=False)

    def __repr__(self):
        return "<morphism %r -> %r>" % (self.source, self.target)


def validate_morphism(f):
    p = f.source.algebra.prime
    for arrow, s, t in f.source.algebra.quiver.arrows:
        lhs = la.matmul(f.blocks[t], f.source.maps[arrow], p)
        rhs = la.matmul(f.target.maps[arrow], f.blocks[s], p)
        if not np.array_equal(lhs, rhs):
            raise AlgebraError("blocks do not commute with arrow %s" % arrow)
    return True


def zero_morphism(source, target):
    return Morphism(source, target, {}, validate=False)


def identity_morphism(m):
    return Morphism(m, m, {v: la.eye(m.dims[v]) for v in m.dims}, validate=False)


def standard_module(algebra, vertex, kind):
    """The simple, indecomposable projective or indecomposable injective
    module attached to a vertex."""
    q = algebra.quiver
    vertex = str(vertex)
    if vertex not in q.vertices:
        raise AlgebraError("unknown vertex %r" % vertex)
    p = algebra.prime
    if kind == "simple":
        return Module(algebra, {vertex: 1}, {}, name="S(%s)" % vertex)
    if kind == "projective":
        basis = {w: list(algebra.classes.get((vertex, w), ())) for w in q.vertices}
        dims = {w: len(basis[w]) for w in q.vertices}
        maps = {}
        for arrow, s, t in q.arrows:
            mat = la.zeros(dims[t], dims[s])
            for j, path in enumerate(basis[s]):
                coords = algebra.class_coords(vertex, t, path + (arrow,))
                for i, cls in enumerate(basis[t]):
                    mat[i, j] = coords[i]
            maps[arrow] = mat
        return Module(algebra, dims, maps, name="P(%s)" % vertex)
    if kind == "injective":
        basis = {u: list(algebra.classes.get((u, vertex), ())) for u in q.vertices}
        dims = {u: len(basis[u]) for u in q.vertices}
        maps = {}
        for arrow, s, t in q.arrows:
            # dual of pre-composition classes(t -> vertex) -> classes(s -> vertex)
            pre = la.zeros(len(basis[s]), len(basis[t]))
            for j, path in enumerate(basis[t]):
                coords = algebra.class_coords(s, vertex, (arrow,) + path)
                for i, cls in enumerate(basis[s]):
                    pre[i, j] = coords[i]
            maps[arrow] = np.mod(pre.T, p)
        return Module(algebra, dims, maps, name="I(%s)" % vertex)
    raise ValueError("kind must be simple, projective or injective")


def direct_sum(modules, name=None):
    """Direct sum with injection and projection morphisms."""
    if not modules:
        raise ValueError("direct_sum of nothing; pass a zero module instead")
    algebra = modules[0].algebra
    q = algebra.quiver
    dims = {v: sum(m.dims[v] for m in modules) for v in q.vertices}
    maps = {}
    for arrow, s, t in q.arrows:
        maps[arrow] = la.block_diag([m.maps[arrow] for m in modules], algebra.prime)
    total = Module(algebra, dims, maps, name=name, validate=False)
    injections = []
    projections = []
    for idx, m in enumerate(modules):
        inj = {}
        proj = {}
        for v in q.vertices:
            before = sum(mm.dims[v] for mm in modules[:idx])
            block = la.zeros(dims[v], m.dims[v])
            block[before:before + m.dims[v], :] = la.eye(m.dims[v])
            inj[v] = block
            proj[v] = block.T.copy()
        injections.append(Morphism(m, total, inj, validate=False))
        projections.append(Morphism(total, m, proj, validate=False))
    return total, injections, projections


def zero_module(algebra):
    return Module(algebra, {}, {}, name="0", validate=False)


@dataclass
class Factorization:
    kernel: Module
    ker_in: Morphism
    image: Module
    to_image: Morphism
    im_in: Morphism
    cokernel: Module
    coker_out: Morphism


def _quotient_matrix(rows_rref, pivots, n, p):
    """Projection F^n -> F^(n-r) with kernel exactly the row space given."""
    free = [c for c in range(n) if c not in set(pivots)]
    s = la.zeros(len(free), n)
    for k, fc in enumerate(free):
        s[k, fc] = 1
        for i, pc in enumerate(pivots):
            s[k, pc] = (-int(rows_rref[i, fc])) % p
    return s


def factorize(f):
    """Kernel, image and cokernel of a morphism, with canonical legs."""
    alg = f.source.algebra
    p = alg.prime
    q = alg.quiver
    ker_rows = {}
    im_rows = {}
    im_piv = {}
    for v in q.vertices:
        ker_rows[v] = la.kernel_basis(f.blocks[v], p)
        rows, piv = la.rref(f.blocks[v].T, p)
        im_rows[v] = rows
        im_piv[v] = piv

    ker_dims = {v: ker_rows[v].shape[0] for v in q.vertices}
    im_dims = {v: im_rows[v].shape[0] for v in q.vertices}
    cok_dims = {v: f.target.dims[v] - im_dims[v] for v in q.vertices}

    ker_in_blocks = {v: ker_rows[v].T.copy() for v in q.vertices}
    im_in_blocks = {v: im_rows[v].T.copy() for v in q.vertices}
    cok_blocks = {v: _quotient_matrix(im_rows[v], im_piv[v], f.target.dims[v], p)
                  for v in q.vertices}

    ker_maps = {}
    im_maps = {}
    cok_maps = {}
    for arrow, s, t in q.arrows:
        rhs = la.matmul(f.source.maps[arrow], ker_in_blocks[s], p)
        sol = la.solve_linear(ker_in_blocks[t], rhs, p)
        if sol is None:
            raise CheckError("kernel is not a subrepresentation")
        ker_maps[arrow] = sol
        rhs = la.matmul(f.target.maps[arrow], im_in_blocks[s], p)
        sol = la.solve_linear(im_in_blocks[t], rhs, p)
        if sol is None:
            raise CheckError("image is not a subrepresentation")
        im_maps[arrow] = sol
        rhs = la.matmul(cok_blocks[t], f.target.maps[arrow], p)
        sol = la.solve_linear(cok_blocks[s].T, rhs.T, p)
        if sol is None:
            raise CheckError("cokernel action is not well defined")
        cok_maps[arrow] = np.mod(sol.T, p)

    kernel = Module(alg, ker_dims, ker_maps, validate=False)
    image = Module(alg, im_dims, im_maps, validate=False)
    cokernel = Module(alg, cok_dims, cok_maps, validate=False)
    ker_in = Morphism(kernel, f.source, ker_in_blocks, validate=False)
    im_in = Morphism(image, f.target, im_in_blocks, validate=False)
    to_image_blocks = {}
    for v in q.vertices:
        sol = la.solve_linear(im_in_blocks[v], f.blocks[v], p)
        if sol is None:
            raise CheckError("image coordinates unsolvable")
        to_image_blocks[v] = sol
    to_image = Morphism(f.source, image, to_image_blocks, validate=False)
    coker_out = Morphism(f.target, cokernel, cok_blocks, validate=False)
    return Factorization(kernel, ker_in, image, to_image, im_in, cokernel, coker_out)


@dataclass
class Conflation:
    """A short exact sequence sub >--> mid -->> quot."""
    i: Morphism
    q: Morphism

    @property
    def sub(self):
        return self.i.source

    @property
    def mid(self):
        return self.i.target

    @property
    def quot(self):
        return self.q.target


def validate_ses(i, q, strict=True):
    ok = (i.target is q.source or i.target.digest() == q.source.digest())
    ok = ok and i.is_mono() and q.is_epi() and q.compose(i).is_zero()
    ok = ok and (i.source.total_dim + q.target.total_dim == i.target.total_dim)
    if not ok:
        if strict:
            raise CheckError("not a short exact sequence")
        return False
    return True


def conflation(i, q):
    validate_ses(i, q)
    return Conflation(i, q)


@dataclass
class Square:
    """A completed pushout or pullback square."""
    kind: str
    obj: Module
    leg_b: Morphism
    leg_c: Morphism
    _aux: Morphism = field(repr=False, default=None)
    _sum: tuple = field(repr=False, default=None)

    def induced(self, u, v):
        """Unique map given by the universal property.

        pushout: u: B -> X, v: C -> X with u f = v g, returns obj -> X.
        pullback: u: X -> B, v: X -> C with f u = g v, returns X -> obj.
        """
        p = self.obj.algebra.prime
        total, injs, projs = self._sum
        if self.kind == "pushout":
            comb = u.compose(projs[0]).add(v.compose(projs[1]))
            blocks = {}
            for vx in self.obj.algebra.quiver.vertices:
                sol = la.solve_linear(self._aux.blocks[vx].T, comb.blocks[vx].T, p)
                if sol is None:
                    raise CheckError("pushout induced map does not exist")
                blocks[vx] = np.mod(sol.T, p)
            out = Morphism(self.obj, u.target, blocks, validate=False)
            validate_morphism(out)
            return out
        comb = injs[0].compose(u).add(injs[1].compose(v))
        blocks = {}
        for vx in self.obj.algebra.quiver.vertices:
            sol = la.solve_linear(self._aux.blocks[vx], comb.blocks[vx], p)
            if sol is None:
                raise CheckError("pullback induced map does not exist")
            blocks[vx] = sol
        out = Morphism(u.source, self.obj, blocks, validate=False)
        validate_morphism(out)
        return out


def square_complete(f, g, kind):
    """Complete (f, g) to a pushout or pullback square.

    pushout: f: A -> B, g: A -> C; returns legs B -> D and C -> D.
    pullback: f: B -> D, g: C -> D; returns legs P -> B and P -> C.
    """
    if kind == "pushout":
        if f.source is not g.source and f.source.digest() != g.source.digest():
            raise ValueError("pushout needs a common source")
        total, injs, projs = direct_sum([f.target, g.target])
        stacked = injs[0].compose(f).sub(injs[1].compose(g))
        fac = factorize(stacked)
        proj = fac.coker_out
        return Square("pushout", fac.cokernel,
                      proj.compose(injs[0]), proj.compose(injs[1]),
                      _aux=proj, _sum=(total, injs, projs))
    if kind == "pullback":
        if f.target is not g.target and f.target.digest() != g.target.digest():
            raise ValueError("pullback needs a common target")
        total, injs, projs = direct_sum([f.source, g.source])
        stacked = f.compose(projs[0]).sub(g.compose(projs[1]))
        fac = factorize(stacked)
        incl = fac.ker_in
        return Square("pullback", fac.kernel,
                      projs[0].compose(incl), projs[1].compose(incl),
                      _aux=incl, _sum=(total, injs, projs))
    raise ValueError("kind must be pushout or pullback")


def radical_rows(m):
    """Row bases of rad M = sum of arrow images, per vertex."""
    q = m.algebra.quiver
    p = m.algebra.prime
    out = {}
    for v in q.vertices:
        stacks = [m.maps[a[0]].T for a in q.arrows_into[v] if m.dims[a[1]]]
        stacks = [s for s in stacks if s.size]
        if stacks:
            out[v] = la.row_space(np.vstack(stacks), p)
        else:
            out[v] = la.zeros(0, m.dims[v])
    return out


def top_projection(m):
    """The semisimple top M/rad M together with the quotient map."""
    p = m.algebra.prime
    rad = radical_rows(m)
    blocks = {}
    dims = {}
    for v in m.algebra.quiver.vertices:
        rows = rad[v]
        piv = list(la.rref(rows, p)[1]) if rows.size else []
        blocks[v] = _quotient_matrix(rows, piv, m.dims[v], p)
        dims[v] = blocks[v].shape[0]
    top = Module(m.algebra, dims, {}, validate=False)
    proj = Morphism(m, top, blocks, validate=False)
    validate_morphism(proj)
    return top, proj


def socle_inclusion(m):
    """The semisimple socle (vectors killed by every departing arrow)."""
    q = m.algebra.quiver
    p = m.algebra.prime
    blocks = {}
    dims = {}
    for v in q.vertices:
        stacks = [m.maps[a[0]] for a in q.arrows_from[v]]
        stacks = [s for s in stacks if s.shape[0]]
        if stacks:
            rows = la.kernel_basis(np.vstack(stacks), p)
        else:
            rows = la.eye(m.dims[v])
        blocks[v] = rows.T.copy()
        dims[v] = rows.shape[0]
    soc = Module(m.algebra, dims, {}, validate=False)
    incl = Morphism(soc, m, blocks, validate=False)
    validate_morphism(incl)
    return soc, incl
