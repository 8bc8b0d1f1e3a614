"""Groebner-free reference computations by degree-wise linear algebra.

Every quantity here is obtained from spans of monomial multiples of the given
generators inside a single graded piece, so it shares no code path with the
Buchberger/Schreyer machinery it is used to check.
"""

from __future__ import annotations

from .linalg import nullspace, rank
from .ring import mono_mul, monomials_of_degree


def graded_basis(shifts, nvars, degree):
    """Basis (component, exps) of the degree-`degree` piece of ⊕ S(-shift)."""
    out = []
    for c, s in enumerate(shifts):
        if degree - s >= 0:
            out.extend((c, e) for e in monomials_of_degree(nvars, degree - s))
    return out


def _vec_degree(vec, shifts):
    c, e = next(iter(vec))
    return sum(e) + shifts[c]


def _multiples(vecs, shifts, nvars, degree, mod):
    rows = []
    for v in vecs:
        dv = _vec_degree(v, shifts)
        if dv > degree:
            continue
        for m in monomials_of_degree(nvars, degree - dv):
            rows.append({(c, mono_mul(e, m)): x for (c, e), x in v.items()})
    return rows


def _dense(rows, basis, field):
    index = {b: i for i, b in enumerate(basis)}
    out = []
    for r in rows:
        row = [field.zero] * len(basis)
        for k, x in r.items():
            row[index[k]] = x
        out.append(row)
    return out


def submodule_dim(vecs, shifts, nvars, degree, field) -> int:
    """dim_k of the degree piece of the submodule generated by `vecs`."""
    basis = graded_basis(shifts, nvars, degree)
    rows = _multiples([v for v in vecs if v], shifts, nvars, degree, field.modulus)
    if not rows or not basis:
        return 0
    return rank(_dense(rows, basis, field), field)


def quotient_dim(vecs, shifts, nvars, degree, field) -> int:
    """Hilbert function of F/N in one degree."""
    return len(graded_basis(shifts, nvars, degree)) - submodule_dim(vecs, shifts, nvars, degree, field)


def syzygy_dim(vecs, shifts, nvars, degree, field) -> int:
    """dim_k of the kernel of ⊕ S(-deg g_i) -> F in one degree."""
    vecs = [v for v in vecs if v]
    src_shifts = [_vec_degree(v, shifts) for v in vecs]
    src = graded_basis(src_shifts, nvars, degree)
    if not src:
        return 0
    target = graded_basis(shifts, nvars, degree)
    images = []
    for i, m in src:
        images.append({(c, mono_mul(e, m)): x for (c, e), x in vecs[i].items()})
    return len(src) - (rank(_dense(images, target, field), field) if target else 0)


def degree_element_in_span(vec, vecs, shifts, nvars, field) -> bool:
    """Membership of a homogeneous vector in the submodule, by linear algebra."""
    if not vec:
        return True
    d = _vec_degree(vec, shifts)
    basis = graded_basis(shifts, nvars, d)
    rows = _multiples([v for v in vecs if v], shifts, nvars, d, field.modulus)
    r0 = rank(_dense(rows, basis, field), field) if rows else 0
    return rank(_dense(rows + [vec], basis, field), field) == r0


def kernel_vectors(vecs, shifts, nvars, degree, field):
    """Explicit syzygies in one degree as dicts (i, exps) -> coeff."""
    vecs = [v for v in vecs if v]
    src_shifts = [_vec_degree(v, shifts) for v in vecs]
    src = graded_basis(src_shifts, nvars, degree)
    target = graded_basis(shifts, nvars, degree)
    images = [{(c, mono_mul(e, m)): x for (c, e), x in vecs[i].items()} for i, m in src]
    cols = _dense(images, target, field)
    matrix = [[cols[j][i] for j in range(len(src))] for i in range(len(target))]
    ns = nullspace(matrix, field, len(src))
    return [{src[j]: x for j, x in enumerate(v) if x != 0} for v in ns]
