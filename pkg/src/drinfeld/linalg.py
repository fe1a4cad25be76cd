"""Dense linear algebra over the prime field F_p.

Matrices are lists of row lists with integer entries reduced mod p.  Sizes
stay at desk scale (dimension <= ~64), so plain Gaussian elimination is
exact and fast enough everywhere it is used.
"""

from __future__ import annotations


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_vec(m, v, p):
    n = len(m)
    out = [0] * n
    for i, row in enumerate(m):
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out[i] = s % p
    return out


def mat_mul(a, b, p):
    rows, inner, cols = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    out = zeros(rows, cols)
    for i in range(rows):
        arow = a[i]
        orow = out[i]
        for j in range(cols):
            s = 0
            for x, y in zip(arow, bt[j]):
                if x and y:
                    s += x * y
            orow[j] = s % p
    return out


def mat_pow(m, k, p):
    n = len(m)
    result = identity(n)
    base = [row[:] for row in m]
    while k:
        if k & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return result


def _rref(m, p):
    """Row-reduce in place; returns list of pivot column indices."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p) if p > 2 else 1
        if inv != 1:
            m[r] = [(x * inv) % p for x in m[r]]
        else:
            m[r] = [x % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c] % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(m, p) -> int:
    if not m:
        return 0
    work = [row[:] for row in m]
    return len(_rref(work, p))


def kernel_basis(m, p):
    """Basis of the right kernel {v : m v = 0}, as a list of vectors."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    work = [row[:] for row in m]
    pivots = _rref(work, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-work[r][fc]) % p
        basis.append(v)
    return basis


def solve(m, target, p):
    """One solution v of m v = target, or None if inconsistent."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    work = [m[i][:] + [target[i] % p] for i in range(rows)]
    pivots = _rref(work, p)
    # A pivot in the augmented column means no solution.
    if cols in pivots:
        return None
    v = [0] * cols
    for r, pc in enumerate(pivots):
        v[pc] = work[r][cols] % p
    return v


def span_contains(basis_rref, pivots, v, p):
    """Membership test against a row-reduced basis built by span_append."""
    w = [x % p for x in v]
    for row, pc in zip(basis_rref, pivots):
        if w[pc]:
            f = w[pc]
            w = [(x - f * y) % p for x, y in zip(w, row)]
    return not any(w)


def span_append(basis_rref, pivots, v, p):
    """Reduce v against the span; if independent, absorb it and return True."""
    w = [x % p for x in v]
    for row, pc in zip(basis_rref, pivots):
        if w[pc]:
            f = w[pc]
            w = [(x - f * y) % p for x, y in zip(w, row)]
    for c, x in enumerate(w):
        if x:
            inv = pow(x, p - 2, p) if p > 2 else 1
            w = [(y * inv) % p for y in w]
            basis_rref.append(w)
            pivots.append(c)
            return True
    return False
