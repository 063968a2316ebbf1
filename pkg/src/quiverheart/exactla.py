"""Exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p). Every
function returns freshly allocated arrays and never mutates its arguments.
Row reduction always eliminates with the leftmost available pivot, so all
canonical forms (rref, kernel bases, solutions) are deterministic: equal
inputs give byte-equal outputs.

No floats, no rationals, no sparse formats. p must be prime; arithmetic
relies on Fermat inversion x^(p-2).
"""

import hashlib

import numpy as np

DEFAULT_PRIME = 101


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def normalize(a, p=DEFAULT_PRIME):
    """Copy `a` as an int64 array with entries reduced mod p."""
    arr = np.array(a, dtype=np.int64)
    return np.mod(arr, p)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n):
    return np.eye(n, dtype=np.int64)


def inv_scalar(x, p=DEFAULT_PRIME):
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(x, p - 2, p)


def matmul(a, b, p=DEFAULT_PRIME):
    a = normalize(a, p)
    b = normalize(b, p)
    # int64 is safe: entries < p <= 2**15 and inner dimensions stay tiny
    return np.mod(a @ b, p)


def rref(a, p=DEFAULT_PRIME):
    """Reduced row echelon form.

    Returns (r, pivots) where pivots lists the pivot column of each nonzero
    row, in order. Zero rows are dropped from r.
    """
    r = normalize(a, p)
    if r.ndim != 2:
        raise ValueError("rref expects a 2d array")
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        r[row] = np.mod(r[row] * inv_scalar(r[row, col], p), p)
        for other in range(nrows):
            if other != row and r[other, col]:
                r[other] = np.mod(r[other] - r[other, col] * r[row], p)
        pivots.append(col)
        row += 1
    return r[:row].copy(), pivots


def rank(a, p=DEFAULT_PRIME):
    return len(rref(a, p)[1])


def solve_linear(a, b, p=DEFAULT_PRIME):
    """Solve a @ x = b for x, or return None when no solution exists.

    b may be a vector or a matrix of stacked right-hand columns. Free
    variables are set to 0, so the returned solution is canonical.
    """
    a = normalize(a, p)
    b = normalize(b, p)
    vector_rhs = b.ndim == 1
    if vector_rhs:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch in solve_linear")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug, p)
    x = zeros(n, b.shape[1])
    for i, col in enumerate(pivots):
        if col >= n:
            return None
        x[col] = r[i, n:]
    if vector_rhs:
        return x[:, 0].copy()
    return x


def kernel_basis(a, p=DEFAULT_PRIME):
    """Canonical basis of the right kernel {x : a @ x = 0}.

    Rows of the result are the basis vectors, themselves in reduced echelon
    form, so the output depends only on the kernel as a subspace.
    """
    a = normalize(a, p)
    if a.ndim != 2:
        raise ValueError("kernel_basis expects a 2d array")
    n = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return zeros(0, n)
    basis = zeros(len(free), n)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, fc])) % p
    canon, _ = rref(basis, p)
    return canon


def row_space(a, p=DEFAULT_PRIME):
    """Canonical basis (rref rows) of the row space of a."""
    return rref(a, p)[0]


def in_span(v, basis, p=DEFAULT_PRIME):
    """Coordinates of vector v over the given basis rows, or None.

    Solves c @ basis = v; the coordinate vector is canonical because
    solve_linear is.
    """
    basis = normalize(basis, p)
    v = normalize(v, p)
    if v.ndim != 1:
        raise ValueError("in_span expects a vector")
    if basis.shape[0] == 0:
        if np.any(v):
            return None
        return np.zeros(0, dtype=np.int64)
    c = solve_linear(basis.T, v, p)
    return c


def inverse(a, p=DEFAULT_PRIME):
    """Two-sided inverse of a square matrix, or None if singular."""
    a = normalize(a, p)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("inverse expects a square matrix")
    n = a.shape[0]
    x = solve_linear(a, eye(n), p)
    if x is None:
        return None
    if not np.array_equal(matmul(x, a, p), eye(n)):
        return None
    return x


def block_diag(blocks, p=DEFAULT_PRIME):
    blocks = [normalize(b, p) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def random_matrix(rows, cols, rng, p=DEFAULT_PRIME):
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def digest(*parts):
    """Stable content hash of ints, strings, arrays and nested sequences."""
    h = hashlib.sha256()

    def feed(obj):
        if isinstance(obj, np.ndarray):
            arr = np.ascontiguousarray(obj.astype(np.int64))
            h.update(b"A")
            h.update(str(arr.shape).encode())
            h.update(arr.tobytes())
        elif isinstance(obj, (int, np.integer)):
            h.update(b"I" + str(int(obj)).encode())
        elif isinstance(obj, str):
            h.update(b"S" + obj.encode())
        elif isinstance(obj, (list, tuple)):
            h.update(b"L" + str(len(obj)).encode())
            for item in obj:
                feed(item)
        elif obj is None:
            h.update(b"N")
        else:
            raise TypeError("cannot digest %r" % type(obj))

    for part in parts:
        feed(part)
    return h.hexdigest()
