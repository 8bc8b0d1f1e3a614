"""Dense exact linear algebra over QQ or GF(p)."""

from __future__ import annotations


def _norm(x, mod):
    return x % mod if mod else x


def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot_columns).  Input is copied."""
    mod = field.modulus
    m = [[_norm(field(x), mod) for x in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.inv(m[r][c])
        m[r] = [_norm(x * inv, mod) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [_norm(a - f * b, mod) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, field, ncols=None):
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    mod = field.modulus
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, p in zip(red, pivots):
            x[p] = _norm(-row[f], mod)
        basis.append(x)
    return basis
