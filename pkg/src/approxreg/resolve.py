"""Minimal graded free resolutions, Betti tables and regularity.

Resolutions are built as Schreyer frames (iterated syzygies of Groebner bases
under induced orders) and then minimalized by cancelling unit entries.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .errors import NotFiniteLengthError, NotHomogeneousError, NotMinimalError, RingMismatchError
from .groebner import (
    ReducerSet,
    SchreyerOrder,
    leading_term,
    spoly,
    syzygy_vectors,
)
from .ideals import IdealHandle, SubmoduleHandle, whole_module
from .ring import (
    FreeModuleElement,
    GradedFreeModule,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
    vec_mul_poly,
)

MINUS_INFINITY = -math.inf
"""Regularity of the zero module; compares below every integer."""


def reg_max(*values):
    """``max`` that tolerates the zero-module sentinel and empty input."""
    vals = [v for v in values if v is not None]
    return max(vals) if vals else MINUS_INFINITY


# --------------------------------------------------------------------------
# presented modules


class PresentedModule:
    """The graded module target / relations.

    ``image`` modules (a submodule N of a free module, viewed as a module in
    its own right) keep a reference to N so that resolutions can reuse its
    Schreyer frame instead of re-presenting it.
    """

    def __init__(self, target: GradedFreeModule, relations=None, label=None):
        self.target = target
        if relations is None:
            relations = SubmoduleHandle(target, [])
        elif not isinstance(relations, SubmoduleHandle):
            relations = SubmoduleHandle(target, relations)
        if relations.ambient != target:
            raise RingMismatchError("relations live in a different free module")
        self.relations = relations
        self.label = label
        self._image_of = None
        self._resolution = None

    # constructors ---------------------------------------------------------
    @classmethod
    def quotient(cls, sub: SubmoduleHandle, label=None) -> PresentedModule:
        """F/N for a submodule N of F (S/I for an ideal)."""
        return cls(sub.ambient, sub, label)

    @classmethod
    def free(cls, module: GradedFreeModule, label=None) -> PresentedModule:
        return cls(module, None, label)

    @classmethod
    def image(cls, sub: SubmoduleHandle, label=None) -> PresentedModule:
        """N itself as a module, presented by the syzygies of its Groebner basis."""
        ring = sub.ring
        vecs = sub.gb.vecs
        sh = sub.ambient.shifts
        target = GradedFreeModule(ring, [min(sum(e) + sh[c] for (c, e) in v) for v in vecs])
        frame = schreyer_frame(vecs, sub.gb.order, sub.field, ring.nvars, max_levels=2)
        rel = frame[1].vecs if len(frame) > 1 else []
        mod = cls(target, SubmoduleHandle(target, rel, check=False), label)
        mod._image_of = sub
        return mod

    @classmethod
    def subquotient(cls, top: SubmoduleHandle, bottom: SubmoduleHandle, label=None) -> PresentedModule:
        """K/N for submodules N ⊆ K of the same free module."""
        top._same_ambient(bottom)
        ring = top.ring
        kv = top.gb.vecs
        sh = top.ambient.shifts
        target = GradedFreeModule(ring, [min(sum(e) + sh[c] for (c, e) in v) for v in kv])
        if not kv:
            return cls(target, None, label)
        syz, _ = syzygy_vectors(kv + list(bottom.vecs), top.ambient)
        s = len(kv)
        rel = []
        for z in syz:
            v = {(c, e): x for (c, e), x in z.items() if c < s}
            if v:
                rel.append(v)
        return cls(target, SubmoduleHandle(target, rel, check=False), label)

    # basic data -----------------------------------------------------------
    @property
    def ring(self):
        return self.target.ring

    def __repr__(self):
        name = self.label or "M"
        return f"<PresentedModule {name}: {self.target} / {len(self.relations.vecs)} relations>"

    def is_zero(self) -> bool:
        return self.relations.is_whole()

    def mod_ideal(self, ideal: IdealHandle, label=None) -> PresentedModule:
        """M / I·M."""
        extra = whole_module(self.target).scaled(ideal)
        return PresentedModule(self.target, self.relations + extra, label)

    def mod_element(self, f, label=None) -> PresentedModule:
        return self.mod_ideal(IdealHandle(self.ring, [f]), label)

    # Hilbert function from standard monomials ----------------------------
    def _leads(self):
        by_comp = {}
        for c, e in self.relations.gb.leading_terms():
            by_comp.setdefault(c, []).append(e)
        return by_comp

    def hilbert_function(self, degree: int) -> int:
        leads = self._leads()
        n = self.ring.nvars
        total = 0
        for c, shift in enumerate(self.target.shifts):
            ls = leads.get(c, [])
            for e in monomials_of_degree(n, degree - shift):
                if not any(mono_divides(l, e) for l in ls):
                    total += 1
        return total

    def is_finite_length(self) -> bool:
        leads = self._leads()
        n = self.ring.nvars
        for c in range(self.target.rank):
            ls = leads.get(c, [])
            if any(sum(l) == 0 for l in ls):
                continue
            for j in range(n):
                if not any(l[j] == sum(l) for l in ls):
                    return False
        return True

    def top_degree(self):
        """Largest degree with a nonzero graded piece (finite-length modules only)."""
        if not self.is_finite_length():
            raise NotFiniteLengthError(f"{self!r} does not have finite length")
        leads = self._leads()
        n = self.ring.nvars
        best = MINUS_INFINITY
        for c, shift in enumerate(self.target.shifts):
            ls = leads.get(c, [])
            if any(sum(l) == 0 for l in ls):
                continue
            bound = shift + sum(min(l[j] for l in ls if l[j] == sum(l)) - 1 for j in range(n))
            for d in range(bound, shift - 1, -1):
                if d <= best:
                    break
                if any(not any(mono_divides(l, e) for l in ls) for e in monomials_of_degree(n, d - shift)):
                    best = d
                    break
        return best


# --------------------------------------------------------------------------
# Schreyer frames


@dataclass
class FrameLevel:
    order: object
    vecs: list
    leads: list


def _sort_for_level(vecs, order, level, nvars):
    var = level % nvars
    decorated = []
    for v in vecs:
        lt = leading_term(v, order)
        decorated.append((lt[0], -lt[1][var], order.key(lt), v))
    decorated.sort(key=lambda d: d[:3])
    return [d[3] for d in decorated]


def schreyer_frame(gb_vecs, order, field, nvars, max_levels=None):
    """Iterated Schreyer syzygies of a Groebner basis.

    Level k holds the generators of the k-th syzygy module as vectors in the
    free module indexed by level k-1 (level 0 lives in the original ambient).
    Sorting each level by decreasing exponent of a fresh variable makes the
    leading terms lose one variable per level, so the frame has length at
    most nvars + 1.
    """
    levels = []
    current = [v for v in gb_vecs if v]
    level = 0
    mod = field.modulus
    while current and (max_levels is None or level < max_levels):
        current = _sort_for_level(current, order, level, nvars)
        rs = ReducerSet(order, field)
        for v in current:
            rs.add(v)
        items = rs.items
        leads = [(r.comp, r.lm) for r in items]
        levels.append(FrameLevel(order, [r.vec for r in items], leads))
        groups = {}
        for r in items:
            groups.setdefault(r.comp, []).append(r.index)
        syz = []
        for idxs in groups.values():
            for pos, i in enumerate(idxs):
                cands = []
                for j in idxs[pos + 1:]:
                    lcm = mono_lcm(items[i].lm, items[j].lm)
                    cands.append((tuple(a - b for a, b in zip(lcm, items[i].lm)), j))
                chosen = []
                for m, j in cands:
                    if any(mono_divides(m2, m) for m2, _ in chosen):
                        continue
                    if any(mono_divides(m2, m) and m2 != m for m2, _ in cands):
                        continue
                    chosen.append((m, j))
                for m, j in chosen:
                    s, ma, mb = spoly(items[i], items[j], mod)
                    quots = []
                    rem = rs.reduce(s, quotients=quots)
                    if rem:
                        raise AssertionError("Schreyer frame input is not a Groebner basis")
                    sig = {(i, ma): field.one}
                    t = (j, mb)
                    sig[t] = sig.get(t, 0) - 1
                    for k, mono, c in quots:
                        t = (k, mono)
                        v = sig.get(t, 0) - c
                        if mod:
                            v %= mod
                        if v:
                            sig[t] = v
                        else:
                            sig.pop(t, None)
                    if mod:
                        sig = {t: c % mod for t, c in sig.items() if c % mod}
                    syz.append(sig)
        order = SchreyerOrder(order, leads)
        current = syz
        level += 1
    return levels


# --------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    """Free modules F_0..F_l with differentials d_i: F_i -> F_{i-1}.

    ``differentials[i-1]`` lists the columns of d_i as raw vectors in F_{i-1}.
    """

    modules: list
    differentials: list
    minimal: bool = False

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def ranks(self):
        return [m.rank for m in self.modules]

    def differential(self, i):
        """Columns of d_i as free-module elements of F_{i-1}."""
        return [FreeModuleElement(self.modules[i - 1], v) for v in self.differentials[i - 1]]

    def composition_is_zero(self) -> bool:
        mod = self.modules[0].ring.field.modulus if self.modules else 0
        for i in range(1, len(self.differentials)):
            lower, upper = self.differentials[i - 1], self.differentials[i]
            for col in upper:
                acc = {}
                for (row, e), c in col.items():
                    for t, v in vec_mul_poly(lower[row], {e: c}, mod).items():
                        w = acc.get(t, 0) + v
                        if mod:
                            w %= mod
                        if w:
                            acc[t] = w
                        else:
                            acc.pop(t, None)
                if acc:
                    return False
        return True

    def has_unit_entries(self) -> bool:
        for cols in self.differentials:
            for col in cols:
                if any(sum(e) == 0 for (_, e) in col):
                    return True
        return False


def _minimalize(shifts, diffs, field):
    """Cancel unit entries.  ``shifts[k]`` are the shifts of F_k and
    ``diffs[k-1]`` the columns of d_k (dicts keyed by (row, exps))."""
    mod = field.modulus
    L = len(diffs)
    alive = [set(range(len(s))) for s in shifts]
    cols = [list(map(dict, d)) for d in diffs]
    for k in range(1, L + 1):
        cur = cols[k - 1]
        # rows of d_k that were cancelled while processing d_{k-1}
        dead_rows = set(range(len(shifts[k - 1]))) - alive[k - 1]
        if dead_rows:
            for c in range(len(cur)):
                if c in alive[k] and any(r in dead_rows for (r, _) in cur[c]):
                    cur[c] = {t: v for t, v in cur[c].items() if t[0] not in dead_rows}
        work = sorted(alive[k])
        while work:
            c = work.pop()
            if c not in alive[k]:
                continue
            col = cur[c]
            pivot = None
            for (r, e), u in col.items():
                if not any(e) and r in alive[k - 1]:
                    pivot = (r, e, u)
                    break
            if pivot is None:
                continue
            r, zero, u = pivot
            uinv = field.inv(u)
            for j in alive[k]:
                if j == c:
                    continue
                other = cur[j]
                arj = {e: v for (row, e), v in other.items() if row == r}
                if not arj:
                    continue
                if mod:
                    scale = {e: (-v * uinv) % mod for e, v in arj.items()}
                else:
                    scale = {e: -v * uinv for e, v in arj.items()}
                for t, v in vec_mul_poly(col, scale, mod).items():
                    w = other.get(t, 0) + v
                    if mod:
                        w %= mod
                    if w:
                        other[t] = w
                    else:
                        other.pop(t, None)
                work.append(j)
            alive[k].discard(c)
            alive[k - 1].discard(r)
    # compact
    new_index = [{old: new for new, old in enumerate(sorted(a))} for a in alive]
    new_shifts = [[s[i] for i in sorted(a)] for s, a in zip(shifts, alive)]
    new_diffs = []
    for k in range(1, L + 1):
        rows = new_index[k - 1]
        out = []
        for c in sorted(alive[k]):
            out.append({(rows[r], e): v for (r, e), v in cols[k - 1][c].items() if r in rows})
        new_diffs.append(out)
    while new_shifts and len(new_shifts) > 1 and not new_shifts[-1]:
        new_shifts.pop()
        new_diffs.pop()
    if new_shifts == [[]]:
        new_shifts, new_diffs = [[]], []
    return new_shifts, new_diffs


def _frame_to_lists(frame, base_shifts, drop_first):
    shifts = [list(base_shifts)]
    diffs = []
    for lvl in frame:
        sh = [lvl.order.degree(lt) for lt in lvl.leads]
        shifts.append(sh)
        diffs.append(lvl.vecs)
    if drop_first:
        if not frame:
            return [[]], []
        shifts = shifts[1:]
        diffs = diffs[1:]
    return shifts, diffs


def free_resolution(M: PresentedModule, minimize=True) -> Resolution:
    """Minimal graded free resolution of a presented module."""
    if M._resolution is not None and minimize:
        return M._resolution
    ring = M.ring
    field = ring.field
    if M._image_of is not None:
        sub = M._image_of
        frame = schreyer_frame(sub.gb.vecs, sub.gb.order, field, ring.nvars)
        shifts, diffs = _frame_to_lists(frame, sub.ambient.shifts, drop_first=True)
    else:
        for v in M.relations.vecs:
            if len({sum(e) + M.target.shifts[c] for (c, e) in v}) > 1:
                raise NotHomogeneousError("relations must be homogeneous")
        gb = M.relations.gb
        frame = schreyer_frame(gb.vecs, gb.order, field, ring.nvars)
        shifts, diffs = _frame_to_lists(frame, M.target.shifts, drop_first=False)
    if minimize:
        shifts, diffs = _minimalize(shifts, diffs, field)
    modules = [GradedFreeModule(ring, s) for s in shifts]
    res = Resolution(modules, diffs, minimal=minimize)
    if minimize:
        M._resolution = res
    return res


# --------------------------------------------------------------------------
# Betti tables


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}: (homological index, internal degree) -> count."""

    entries: dict = dc_field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def is_empty(self):
        return not self.entries

    def regularity(self):
        if not self.entries:
            return MINUS_INFINITY
        return max(j - i for (i, j) in self.entries)

    def projective_dimension(self):
        return max((i for i, _ in self.entries), default=MINUS_INFINITY)

    def totals(self):
        out = Counter()
        for (i, _), v in self.entries.items():
            out[i] += v
        return dict(out)

    def to_json_obj(self):
        return {"betti": [[i, j, v] for (i, j), v in sorted(self.entries.items())]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def to_text(self) -> str:
        """Fixed layout: header of homological indices, a totals row, then one
        row per j - i with '.' for zeros."""
        if not self.entries:
            return "       0\ntotal: 0\n"
        cols = range(0, max(i for i, _ in self.entries) + 1)
        rows = range(min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1)
        totals = self.totals()
        cells = [[str(self[(i, i + r)]) if self[(i, i + r)] else "." for i in cols] for r in rows]
        tot = [str(totals.get(i, 0)) for i in cols]
        width = max(len(s) for s in [str(i) for i in cols] + tot + [c for row in cells for c in row])
        label_w = max(len("total:"), max(len(f"{r}:") for r in rows))

        def line(label, items):
            return label.rjust(label_w) + " " + " ".join(s.rjust(width) for s in items)

        out = [line("", [str(i) for i in cols]), line("total:", tot)]
        for r, row in zip(rows, cells):
            out.append(line(f"{r}:", row))
        return "\n".join(s.rstrip() for s in out) + "\n"

    def __str__(self):
        return self.to_text()


def betti(res: Resolution) -> BettiTable:
    if not res.minimal or res.has_unit_entries():
        raise NotMinimalError("Betti numbers need a minimal resolution")
    entries = Counter()
    for i, F in enumerate(res.modules):
        for d in F.shifts:
            entries[(i, d)] += 1
    return BettiTable(dict(entries))


def _as_module(M):
    if isinstance(M, PresentedModule):
        return M
    if isinstance(M, SubmoduleHandle):
        return PresentedModule.image(M)
    raise TypeError(f"cannot treat {type(M).__name__} as a module")


def betti_table(M) -> BettiTable:
    return betti(free_resolution(_as_module(M)))


def regularity(M):
    """max{j - i : beta_{i,j} != 0}; MINUS_INFINITY for the zero module.

    Accepts a PresentedModule, or a submodule/ideal handle (treated as a module
    in its own right, not as the quotient)."""
    return betti_table(M).regularity()


def top_degree(M: PresentedModule):
    return _as_module(M).top_degree()


def module_hilbert_function(M, degree) -> int:
    return _as_module(M).hilbert_function(degree)


def free_module_dim(module: GradedFreeModule, degree: int) -> int:
    n = module.ring.nvars
    return sum(math.comb(degree - s + n - 1, n - 1) for s in module.shifts if degree >= s)
