"""Subspace and hyperplane arrangements and the module of derivations
tangent to a hyperplane arrangement."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce as _fold

from .combinations import LinearIdeal
from .errors import RingMismatchError
from .groebner import syzygy_vectors
from .ideals import IdealHandle, SubmoduleHandle, intersect_all
from .linalg import rank
from .ring import GradedFreeModule, PolynomialRing, poly_to_vec

CLASSIFY_CAP = 12


def _proportional(f, g, field):
    return rank([f.linear_coefficients(), g.linear_coefficients()], field) < 2


class HyperplaneArrangement:
    """d distinct hyperplanes through the origin, given by linear forms."""

    def __init__(self, ring: PolynomialRing, forms):
        forms = [ring.parse(f) if isinstance(f, str) else f for f in forms]
        for f in forms:
            if f.ring != ring:
                raise RingMismatchError("form over a different ring")
            if f.is_zero() or not f.is_linear_form():
                raise ValueError(f"{f} is not a nonzero linear form")
        for i, j in itertools.combinations(range(len(forms)), 2):
            if _proportional(forms[i], forms[j], ring.field):
                raise ValueError(f"forms {i} and {j} define the same hyperplane")
        self.ring = ring
        self.forms = tuple(forms)

    @property
    def d(self) -> int:
        return len(self.forms)

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    def defining_polynomial(self):
        return _fold(lambda a, b: a * b, self.forms, self.ring(1))

    def __len__(self):
        return len(self.forms)

    def __str__(self):
        return "{" + ", ".join(str(f) for f in self.forms) + "}"

    @classmethod
    def boolean(cls, ring):
        return cls(ring, ring.gens())

    @classmethod
    def random(cls, ring, d, rng, bound=10, max_tries=10000):
        """d random forms with integer coefficients in [-bound, bound]."""
        forms = []
        for _ in range(max_tries):
            if len(forms) == d:
                break
            f = ring.linear_form([rng.randint(-bound, bound) for _ in range(ring.nvars)])
            if f.is_zero() or any(_proportional(f, g, ring.field) for g in forms):
                continue
            forms.append(f)
        if len(forms) < d:
            raise RuntimeError("could not draw enough distinct hyperplanes")
        return cls(ring, forms)

    @classmethod
    def random_general(cls, ring, d, rng, bound=10, max_tries=1000):
        for _ in range(max_tries):
            A = cls.random(ring, d, rng, bound)
            if classify(A)["linearly_general"]:
                return A
        raise RuntimeError("could not draw a linearly general arrangement")


def deletion(A: HyperplaneArrangement, i: int) -> HyperplaneArrangement:
    if A.d < 2:
        raise ValueError("deletion needs at least two hyperplanes")
    if not 0 <= i < A.d:
        raise IndexError(f"hyperplane index {i} out of range")
    return HyperplaneArrangement(A.ring, A.forms[:i] + A.forms[i + 1 :])


def classify(A: HyperplaneArrangement) -> dict:
    field = A.ring.field
    vecs = [f.linear_coefficients() for f in A.forms]
    k = A.ring.nvars
    out = {"essential": rank(vecs, field) == k if vecs else False}
    if A.d > CLASSIFY_CAP:
        out["linearly_general"] = None
        return out
    if A.d < k:
        out["linearly_general"] = rank(vecs, field) == A.d
    else:
        out["linearly_general"] = all(
            rank([vecs[i] for i in sub], field) == k for sub in itertools.combinations(range(A.d), k)
        )
    return out


@dataclass
class DerivationModule:
    arrangement: HyperplaneArrangement
    submodule: SubmoduleHandle

    @property
    def ambient(self):
        return self.submodule.ambient

    @property
    def generators(self):
        return self.submodule.generators

    def contains(self, theta) -> bool:
        return self.submodule.contains(theta)

    def euler(self):
        ring = self.arrangement.ring
        return self.ambient.element(list(ring.gens()))

    def regularity(self):
        from .resolve import regularity

        return regularity(self.submodule)

    def betti_table(self):
        from .resolve import betti_table

        return betti_table(self.submodule)

    def is_tangent(self, theta) -> bool:
        """θ(F) ∈ (F), evaluated directly."""
        F = self.arrangement.defining_polynomial()
        ring = F.ring
        val = ring(0)
        for j, c in enumerate(theta.components()):
            val = val + c * F.diff(j)
        return IdealHandle(ring, [F]).contains(val)


def derivation_module(A: HyperplaneArrangement) -> DerivationModule:
    """Kernel of S^{n+1} -> S/(F), e_j ↦ ∂F/∂x_j, with all basis shifts 0."""
    ring = A.ring
    if A.d < 1:
        raise ValueError("empty arrangement")
    p = ring.field.modulus
    if p and p <= A.d:
        raise ValueError(f"characteristic {p} must exceed the number of hyperplanes {A.d}")
    F = A.defining_polynomial()
    k = ring.nvars
    gens = []
    for j in range(k):
        dj = F.diff(j)
        gens.append(poly_to_vec(dj))
    gens.append(poly_to_vec(F))
    # a zero partial still contributes its basis syzygy
    live = [i for i, g in enumerate(gens) if g]
    syz, _ = syzygy_vectors([gens[i] for i in live], GradedFreeModule(ring, (0,)))
    ambient = GradedFreeModule(ring, (0,) * k)
    out = []
    for z in syz:
        v = {}
        for (c, e), x in z.items():
            j = live[c]
            if j < k:
                v[(j, e)] = x
        if v:
            out.append(v)
    zero = ring.zero_exps()
    for j in range(k):
        if not gens[j]:
            out.append({(j, zero): ring.field.one})
    return DerivationModule(A, SubmoduleHandle(ambient, out))


def deletion_inclusions(A: HyperplaneArrangement, D=None) -> list:
    """For each i, whether f_i·D_i ⊆ D ⊆ D_i holds (exact membership)."""
    D = D or derivation_module(A)
    out = []
    for i, f in enumerate(A.forms):
        Di = derivation_module(deletion(A, i))
        scaled = Di.submodule.scaled(IdealHandle(A.ring, [f]))
        out.append(D.submodule.issubset(Di.submodule) and scaled.issubset(D.submodule))
    return out


def cone_check(A: HyperplaneArrangement, extra_names) -> bool:
    """D(A') = D(A)⊗S' ⊕ S'·∂/∂x_new for the cone over A in more variables."""
    ring = A.ring
    big = ring.extend(extra_names)
    k, K = ring.nvars, big.nvars
    index_map = list(range(k))
    cone = HyperplaneArrangement(big, [f.map_to(big, index_map) for f in A.forms])
    D = derivation_module(A)
    D_big = derivation_module(cone)
    pad = (0,) * (K - k)
    gens = [{(c, e + pad): x for (c, e), x in v.items()} for v in D.submodule.gb.vecs]
    zero = big.zero_exps()
    for j in range(k, K):
        gens.append({(j, zero): big.field.one})
    expected = SubmoduleHandle(D_big.ambient, gens)
    return expected == D_big.submodule


# --------------------------------------------------------------------------
# subspace arrangements


class SubspaceArrangement:
    def __init__(self, ring, components):
        comps = []
        for c in components:
            if not isinstance(c, LinearIdeal):
                c = LinearIdeal(ring, c)
            if c.ring != ring:
                raise RingMismatchError("component over a different ring")
            if any(c.ideal == other.ideal for other in comps):
                raise ValueError("components must be distinct")
            comps.append(c)
        if not comps:
            raise ValueError("need at least one component")
        self.ring = ring
        self.components = tuple(comps)

    def __len__(self):
        return len(self.components)

    @classmethod
    def random(cls, ring, d, rng, bound=10, max_tries=1000):
        from .combinations import random_linear_ideal

        comps = []
        for _ in range(max_tries):
            if len(comps) == d:
                break
            c = random_linear_ideal(ring, rng.randint(1, ring.nvars - 1 or 1), rng, bound)
            if not any(c.ideal == o.ideal for o in comps):
                comps.append(c)
        return cls(ring, comps)


def vanishing_ideal(A: SubspaceArrangement) -> IdealHandle:
    return intersect_all([c.ideal for c in A.components])


# --------------------------------------------------------------------------
# file format


def parse_arrangement_text(ring, text) -> HyperplaneArrangement:
    forms = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            forms.append(ring.parse(line))
    return HyperplaneArrangement(ring, forms)


def format_arrangement_text(A: HyperplaneArrangement) -> str:
    return "".join(f"{f}\n" for f in A.forms)
