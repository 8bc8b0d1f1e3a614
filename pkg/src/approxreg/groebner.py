"""Buchberger's algorithm for submodules of graded free modules.

Everything here works on raw vectors ``{(component, exponents): coeff}``.
Term orders are objects with a ``key(term)`` method whose *smaller* values
denote *larger* terms, so ``min`` finds leading terms and ``heapq`` pops the
largest remaining term first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from itertools import count

from .errors import NotHomogeneousError, RingMismatchError
from .ring import (
    FreeModuleElement,
    GradedFreeModule,
    Polynomial,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    poly_to_vec,
)

# --------------------------------------------------------------------------
# term orders


class TopOrder:
    """Term-over-position: shifted degree, then grevlex, then lower position wins."""

    def __init__(self, shifts):
        self.shifts = tuple(shifts)
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            c, e = term
            k = (-(sum(e) + self.shifts[c]),) + e[::-1] + (c,)
            self._cache[term] = k
        return k

    def degree(self, term):
        return sum(term[1]) + self.shifts[term[0]]


class SchreyerOrder:
    """Order on a free module with basis e_i induced by leading terms lead_i of a
    previous module: m*e_i > m'*e_j iff m*lead_i > m'*lead_j, ties broken by
    the smaller index."""

    def __init__(self, prev, leads):
        self.prev = prev
        self.leads = list(leads)
        self.shifts = tuple(prev.degree(t) for t in self.leads)
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            i, e = term
            c, lm = self.leads[i]
            k = self.prev.key((c, tuple([x + y for x, y in zip(e, lm)]))) + (i,)
            self._cache[term] = k
        return k

    def degree(self, term):
        return sum(term[1]) + self.shifts[term[0]]


class EliminationOrder:
    """Block order: the last ``nelim`` variables dominate, then ``base`` on the rest."""

    def __init__(self, base, nelim=1):
        self.base = base
        self.nelim = nelim
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            c, e = term
            n = len(e) - self.nelim
            k = (-sum(e[n:]),) + self.base.key((c, e[:n]))
            self._cache[term] = k
        return k

    def degree(self, term):
        return sum(term[1]) + self.base.shifts[term[0]]


class SplitPositionOrder:
    """Components below ``split`` dominate all components at or above it."""

    def __init__(self, base, split):
        self.base = base
        self.split = split
        self.shifts = base.shifts
        self._cache = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = (0 if term[0] < self.split else 1,) + self.base.key(term)
            self._cache[term] = k
        return k

    def degree(self, term):
        return self.base.degree(term)


# --------------------------------------------------------------------------
# reduction machinery


def leading_term(vec, order):
    return min(vec, key=order.key)


def _monic(vec, lt, field):
    lc = vec[lt]
    if lc == 1:
        return vec
    inv = field.inv(lc)
    mod = field.modulus
    if mod:
        return {t: c * inv % mod for t, c in vec.items()}
    return {t: c * inv for t, c in vec.items()}


@dataclass
class Reducer:
    index: int
    comp: int
    lm: tuple
    vec: dict
    tail: list = dc_field(repr=False)

    @classmethod
    def build(cls, index, vec, lt):
        tail = [(t, c) for t, c in vec.items() if t != lt]
        return cls(index, lt[0], lt[1], vec, tail)


class ReducerSet:
    """A list of monic vectors indexed by the component of their leading term."""

    def __init__(self, order, field):
        self.order = order
        self.field = field
        self.items: list[Reducer] = []
        self.by_comp: dict[int, list[Reducer]] = {}

    def add(self, vec) -> Reducer:
        lt = leading_term(vec, self.order)
        vec = _monic(vec, lt, self.field)
        r = Reducer.build(len(self.items), vec, lt)
        self.items.append(r)
        self.by_comp.setdefault(r.comp, []).append(r)
        return r

    def find(self, comp, e):
        for r in self.by_comp.get(comp, ()):
            if mono_divides(r.lm, e):
                return r
        return None

    def reduce(self, vec, full=True, quotients=None, skip=None):
        """Normal form of ``vec``; optionally record quotient triples
        ``(reducer index, monomial, coefficient)``."""
        mod = self.field.modulus
        key = self.order.key
        f = dict(vec)
        heap = [(key(t), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        push, pop = heapq.heappush, heapq.heappop
        by_comp = self.by_comp
        while heap:
            _, t = pop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            comp, e = t
            red = None
            for r in by_comp.get(comp, ()):
                if r is not skip and mono_divides(r.lm, e):
                    red = r
                    break
            if red is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    break
                continue
            m = tuple([x - y for x, y in zip(e, red.lm)])
            if quotients is not None:
                quotients.append((red.index, m, c))
            for (tc, te), tcoef in red.tail:
                nt = (tc, tuple([x + y for x, y in zip(te, m)]))
                old = f.get(nt)
                if old is None:
                    v = -c * tcoef
                    if mod:
                        v %= mod
                    f[nt] = v
                    push(heap, (key(nt), nt))
                else:
                    v = old - c * tcoef
                    if mod:
                        v %= mod
                    if v:
                        f[nt] = v
                    else:
                        del f[nt]
        return rem


def spoly(a: Reducer, b: Reducer, mod):
    """S-vector of two monic reducers with leading terms in the same component."""
    lcm = mono_lcm(a.lm, b.lm)
    ma, mb = mono_div(lcm, a.lm), mono_div(lcm, b.lm)
    out = {}
    for (c, e), v in a.tail:
        out[(c, mono_mul(e, ma))] = v
    for (c, e), v in b.tail:
        t = (c, mono_mul(e, mb))
        w = out.get(t, 0) - v
        if mod:
            w %= mod
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out, ma, mb


# --------------------------------------------------------------------------
# Buchberger


def buchberger_raw(vecs, order, field, rank_one=None):
    """Reduced Groebner basis of the submodule generated by raw vectors.

    Normal selection strategy (smallest lcm degree first) with the product
    criterion (rank one only) and the Gebauer-Moeller chain criterion.
    Returns a list of monic raw vectors sorted by decreasing leading term.
    """
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    if rank_one is None:
        rank_one = all(t[0] == 0 for v in vecs for t in v)
    mod = field.modulus
    rs = ReducerSet(order, field)
    active: list[bool] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []
    tick = count()

    def insert(vec):
        r = rs.add(vec)
        active.append(True)
        h = r.index
        hl, hc = r.lm, r.comp
        cands = [(i, mono_lcm(rs.items[i].lm, hl)) for i in range(h) if active[i] and rs.items[i].comp == hc]
        kept = []
        while cands:
            i, lcm = cands.pop()
            if rank_one and mono_coprime(rs.items[i].lm, hl):
                kept.append((i, lcm, True))
                continue
            if any(mono_divides(l2, lcm) for _, l2 in cands) or any(mono_divides(l2, lcm) for _, l2, _ in kept):
                continue
            kept.append((i, lcm, False))
        for key in list(pairs):
            i, j = key
            lcm = pairs[key][0]
            if rs.items[i].comp != hc or not mono_divides(hl, lcm):
                continue
            if mono_lcm(rs.items[i].lm, hl) != lcm and mono_lcm(rs.items[j].lm, hl) != lcm:
                del pairs[key]
        for i, lcm, coprime in kept:
            if coprime:
                continue
            pairs[(i, h)] = (lcm,)
            deg = order.degree((hc, lcm))
            heapq.heappush(heap, (deg, next(tick), (i, h)))
        for i in range(h):
            if active[i] and rs.items[i].comp == hc and mono_divides(hl, rs.items[i].lm):
                active[i] = False

    for v in sorted(vecs, key=lambda v: order.degree(leading_term(v, order))):
        h = rs.reduce(v)
        if h:
            insert(h)

    while heap:
        _, _, key = heapq.heappop(heap)
        if key not in pairs:
            continue
        del pairs[key]
        i, j = key
        s, _, _ = spoly(rs.items[i], rs.items[j], mod)
        if not s:
            continue
        h = rs.reduce(s)
        if h:
            insert(h)

    keep = [r for r, a in zip(rs.items, active) if a]
    # drop leading-term redundancy, then tail-reduce against the survivors
    keep.sort(key=lambda r: order.key((r.comp, r.lm)))
    final = ReducerSet(order, field)
    for r in keep:
        final.add(r.vec)
    out = []
    for r in final.items:
        tail = final.reduce({t: c for t, c in r.tail}, skip=r)
        tail[(r.comp, r.lm)] = r.vec[(r.comp, r.lm)]
        out.append(tail)
    return out


def normal_form_raw(vec, basis_vecs, order, field):
    rs = ReducerSet(order, field)
    for b in basis_vecs:
        if b:
            rs.add(b)
    return rs.reduce(vec)


# --------------------------------------------------------------------------
# public, module-level API


def default_order(module: GradedFreeModule):
    return TopOrder(module.shifts)


def _as_vec(x, module=None):
    if isinstance(x, FreeModuleElement):
        if module is not None and x.module != module:
            raise RingMismatchError("elements of different ambient modules")
        return x.terms
    if isinstance(x, Polynomial):
        if module is not None and (module.rank != 1 or module.ring != x.ring):
            raise RingMismatchError("polynomial given for a non-ideal ambient")
        return poly_to_vec(x)
    return x


def _ambient_of(items):
    for x in items:
        if isinstance(x, FreeModuleElement):
            return x.module
        if isinstance(x, Polynomial):
            return GradedFreeModule(x.ring, (0,))
    return None


def _wrap(vec, module, as_poly):
    if as_poly:
        return Polynomial(module.ring, {e: c for (_, e), c in vec.items()})
    return FreeModuleElement(module, vec)


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis together with its ambient module and order."""

    ambient: GradedFreeModule
    vecs: list
    order: object
    reduced: bool = True

    def __post_init__(self):
        self._reducers = None

    @property
    def reducers(self) -> ReducerSet:
        if self._reducers is None:
            rs = ReducerSet(self.order, self.ambient.ring.field)
            for v in self.vecs:
                rs.add(v)
            self._reducers = rs
        return self._reducers

    @property
    def generators(self):
        as_poly = self.ambient.rank == 1 and self.ambient.shifts == (0,)
        return [_wrap(v, self.ambient, as_poly) for v in self.vecs]

    def leading_terms(self):
        return [leading_term(v, self.order) for v in self.vecs]

    def reduce(self, x):
        return self.reducers.reduce(_as_vec(x))

    def contains(self, x) -> bool:
        return not self.reduce(x)

    def __len__(self):
        return len(self.vecs)

    def canonical(self):
        return frozenset(frozenset(v.items()) for v in self.vecs)


def normal_form(v, basis, order=None):
    """Fully reduced normal form of ``v`` against ``basis``.

    Accepts polynomials or free-module elements; the result has the same type
    as ``v``."""
    module = _ambient_of([v]) or _ambient_of(basis)
    for b in basis:
        bm = _ambient_of([b])
        if bm is not None and bm != module:
            raise RingMismatchError("basis element lives in a different ambient module")
    order = order or default_order(module)
    rem = normal_form_raw(_as_vec(v, module), [_as_vec(b, module) for b in basis], order, module.ring.field)
    return _wrap(rem, module, isinstance(v, Polynomial))


def buchberger(gens, order=None, ambient=None) -> GroebnerBasis:
    ambient = ambient or _ambient_of(gens)
    order = order or default_order(ambient)
    vecs = [_as_vec(g, ambient) for g in gens]
    return GroebnerBasis(ambient, buchberger_raw(vecs, order, ambient.ring.field), order)


def is_groebner_basis(vecs, order, field) -> bool:
    """Buchberger criterion: every S-vector reduces to zero."""
    rs = ReducerSet(order, field)
    for v in vecs:
        rs.add(v)
    items = rs.items
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a].comp != items[b].comp:
                continue
            s, _, _ = spoly(items[a], items[b], field.modulus)
            if s and rs.reduce(s):
                return False
    return True


# --------------------------------------------------------------------------
# syzygies


@dataclass
class SyzygyModule:
    """Relations among ``sources``: vectors (a_1..a_s) in the free module with
    shifts deg(g_i) such that sum a_i g_i = 0."""

    sources: list
    ambient: GradedFreeModule
    vecs: list

    @property
    def syzygies(self):
        return [FreeModuleElement(self.ambient, v) for v in self.vecs]

    def __len__(self):
        return len(self.vecs)


def syzygy_vectors(vecs, module: GradedFreeModule):
    """Generators of the syzygy module of homogeneous raw vectors.

    Computed from a Groebner basis of {(g_i, e_i)} in F + S^s under an order in
    which F-components dominate; basis elements with no F-part are the
    syzygies.  Zero inputs contribute the unit vector e_i.
    """
    field = module.ring.field
    l = module.rank
    shifts = list(module.shifts)
    aug = []
    out_zero = []
    for i, v in enumerate(vecs):
        if not v:
            out_zero.append({(i, (0,) * module.ring.nvars): field.one})
            shifts.append(0)
            continue
        degs = {sum(e) + module.shifts[c] for (c, e) in v}
        if len(degs) != 1:
            raise NotHomogeneousError("syzygies need homogeneous generators")
        shifts.append(degs.pop())
        w = dict(v)
        w[(l + i, (0,) * module.ring.nvars)] = field.one
        aug.append(w)
    order = SplitPositionOrder(TopOrder(shifts), l)
    gb = buchberger_raw(aug, order, field, rank_one=False)
    syz = []
    for g in gb:
        if all(c >= l for (c, _) in g):
            syz.append({(c - l, e): v for (c, e), v in g.items()})
    syz_shifts = tuple(shifts[l:])
    return syz + out_zero, GradedFreeModule(module.ring, syz_shifts)


def syzygies(gens) -> SyzygyModule:
    module = _ambient_of(gens)
    if module is None:
        raise ValueError("syzygies of an empty generator list")
    vecs = [_as_vec(g, module) for g in gens]
    syz, amb = syzygy_vectors(vecs, module)
    return SyzygyModule(list(gens), amb, syz)
