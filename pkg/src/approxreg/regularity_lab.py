"""Finite parts, filter-regular elements, approximation systems and the
regularity bounds they certify.

Approximation morphisms are encoded structurally: the base module is F/N and
each approximant is F/N_i with N ⊆ N_i, so the projection is the canonical
surjection and its kernel is N_i/N.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from .errors import (
    GenericityError,
    NoBoundError,
    NotFilterRegularError,
    NotHomogeneousError,
    RingMismatchError,
    ZeroDivisorInputError,
)
from .ideals import (
    IdealHandle,
    SubmoduleHandle,
    annihilator,
    colon,
    colon_element,
    maximal_ideal,
    saturate,
)
from .linalg import rank as matrix_rank
from .resolve import (
    MINUS_INFINITY,
    PresentedModule,
    betti_table,
    reg_max,
    regularity,
)

# --------------------------------------------------------------------------
# reports


@dataclass
class Hypothesis:
    name: str
    holds: bool
    detail: str = ""

    def to_json_obj(self):
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


def _jsonable(x):
    if x == MINUS_INFINITY:
        return "-inf"
    return x


@dataclass
class VerificationReport:
    """Outcome of checking one theorem on one instance."""

    theorem: str
    hypotheses: list
    certified_bound: object
    actual_regularity: object
    ok: bool
    details: dict = dc_field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    def to_json_obj(self):
        obj = {
            "theorem": self.theorem,
            "hypotheses": [h.to_json_obj() for h in self.hypotheses],
            "certified_bound": _jsonable(self.certified_bound),
            "actual_regularity": _jsonable(self.actual_regularity),
            "ok": self.ok,
        }
        if self.details:
            obj["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


# --------------------------------------------------------------------------
# finite part and filter-regular elements


def _saturation(M: PresentedModule) -> SubmoduleHandle:
    sat = getattr(M, "_m_saturation", None)
    if sat is None:
        sat = saturate(M.relations, maximal_ideal(M.ring))
        M._m_saturation = sat
    return sat


def finite_part(M: PresentedModule) -> PresentedModule:
    """(0 :_M m^∞) = sat(N, m)/N for M = F/N, as a presented module."""
    label = f"H0({M.label})" if M.label else None
    return PresentedModule.subquotient(_saturation(M), M.relations, label)


def _as_form(z, ring):
    if isinstance(z, str):
        z = ring.parse(z)
    if z.ring != ring:
        raise RingMismatchError("form and module over different rings")
    return z


def is_filter_regular(z, M: PresentedModule) -> bool:
    """z is filter-regular on M iff it is a nonzerodivisor on F/sat(N, m)."""
    z = _as_form(z, M.ring)
    if z.is_zero():
        raise ZeroDivisorInputError("the zero form is never filter-regular")
    if not z.is_homogeneous():
        raise NotHomogeneousError("filter-regular test needs a homogeneous form")
    sat = _saturation(M)
    if sat.is_whole():
        return True
    return colon_element(sat, z) == sat


def random_linear_form(ring, rng, bound=100):
    field = ring.field
    while True:
        coeffs = [field.random_element(rng, bound) for _ in range(ring.nvars)]
        if any(c != 0 for c in coeffs):
            return ring.linear_form(coeffs)


@dataclass
class FilterRegularSequence:
    forms: list
    modules: list
    records: list  # per position: number of samples drawn before success

    def ideal(self, j) -> IdealHandle:
        """L_j = (z_0, ..., z_{j-1})."""
        return IdealHandle(self.modules[0].ring, self.forms[:j])


def find_filter_regular_sequence(modules, trials=50, rng=None) -> FilterRegularSequence:
    """n+1 linear forms spanning m, each filter-regular on every module modulo
    the previous forms; random sampling with exact certification."""
    if not modules:
        raise ValueError("need at least one module")
    ring = modules[0].ring
    if any(M.ring != ring for M in modules):
        raise RingMismatchError("modules over different rings")
    rng = rng or random.Random()
    forms, records = [], []
    for j in range(ring.nvars):
        L = IdealHandle(ring, forms)
        quotients = [M.mod_ideal(L) if forms else M for M in modules]
        for attempt in range(1, trials + 1):
            z = random_linear_form(ring, rng)
            vectors = [f.linear_coefficients() for f in forms + [z]]
            if matrix_rank(vectors, ring.field) < len(vectors):
                continue
            if all(is_filter_regular(z, Q) for Q in quotients):
                forms.append(z)
                records.append(attempt)
                break
        else:
            raise GenericityError(f"no filter-regular form found at position {j} in {trials} trials")
    return FilterRegularSequence(forms, list(modules), records)


def verify_hypersurface_identity(M: PresentedModule, x) -> VerificationReport:
    """reg(M) = max{reg(0:_M m^∞), reg(M/xM) - deg(x) + 1} for filter-regular x."""
    x = _as_form(x, M.ring)
    if not is_filter_regular(x, M):
        raise NotFilterRegularError(f"{x} is not filter-regular on the module")
    left = regularity(M)
    fp = finite_part(M)
    reg_fp = regularity(fp)
    top = fp.top_degree()
    quotient = M.mod_element(x)
    reg_q = regularity(quotient)
    right = reg_max(reg_fp, reg_q - x.degree() + 1)
    hyps = [
        Hypothesis("filter_regular", True, str(x)),
        Hypothesis("finite_part_reg_equals_top_degree", reg_fp == top, f"{reg_fp} vs {top}"),
    ]
    return VerificationReport(
        "hypersurface",
        hyps,
        right,
        left,
        left == right and reg_fp == top,
        {"reg_finite_part": reg_fp, "reg_quotient": reg_q, "deg_x": x.degree()},
    )


# --------------------------------------------------------------------------
# approximation systems


@dataclass
class ApproximationSystem:
    """Base module F/N with approximants F/N_i and annihilating ideals I_i."""

    base: PresentedModule
    approximants: list  # list of (PresentedModule, IdealHandle)
    t: int = 1

    @classmethod
    def from_submodules(cls, N: SubmoduleHandle, parts, t=1):
        base = PresentedModule.quotient(N)
        return cls(base, [(PresentedModule.quotient(Ni), Ii) for Ni, Ii in parts], t)

    @property
    def ring(self):
        return self.base.ring

    def ideal_sum(self) -> IdealHandle:
        ring = self.ring
        gens = []
        for _, I in self.approximants:
            gens.extend(I.vecs)
        return IdealHandle._from_vecs(maximal_ideal(ring).ambient, gens)


@dataclass
class CorMSystem:
    """Submodules M ⊆ M_i of a free module with I_i·M_i ⊆ M and ΣI_i = m."""

    module: SubmoduleHandle
    parts: list  # list of (SubmoduleHandle, IdealHandle)


@dataclass
class CoApproximationSystem:
    """Submodules with I_i·M ⊆ M_i ⊆ M and ΣI_i ⊇ m^t."""

    module: SubmoduleHandle
    parts: list
    t: int = 1


@dataclass
class ApproxVerdict:
    ok: bool
    t: object
    violations: list

    def __bool__(self):
        return self.ok


def _sum_ideal(ring, ideals):
    gens = []
    for I in ideals:
        gens.extend(I.vecs)
    return IdealHandle._from_vecs(maximal_ideal(ring).ambient, gens)


def _power_check(ring, ideals, t):
    return _sum_ideal(ring, ideals).contains_power_of_maximal(t)


def verify_approximation_system(sys) -> ApproxVerdict:
    """Check the structural invariants exactly; violations are returned, not raised."""
    if isinstance(sys, CoApproximationSystem):
        return _verify_coapprox(sys)
    if isinstance(sys, CorMSystem):
        return _verify_cor_m(sys)
    violations = []
    N = sys.base.relations
    for i, (Mi, Ii) in enumerate(sys.approximants):
        if Mi.target != sys.base.target:
            violations.append(f"approximant {i}: different free module")
            continue
        Ni = Mi.relations
        if Ii.is_unit():
            violations.append(f"approximant {i}: I_{i} is not proper")
        if not Ni.contains(N):
            violations.append(f"approximant {i}: N is not contained in N_{i} (no surjection)")
        if not N.contains(Ni.scaled(Ii)):
            violations.append(f"approximant {i}: I_{i}·ker is not zero")
    if sys.t < 1 or not _power_check(sys.ring, [I for _, I in sys.approximants], sys.t):
        violations.append(f"m^{sys.t} is not contained in the sum of the I_i")
    return ApproxVerdict(not violations, sys.t if not violations else None, violations)


def _verify_cor_m(sys: CorMSystem) -> ApproxVerdict:
    M = sys.module
    ring = M.ring
    violations = []
    for i, (Mi, Ii) in enumerate(sys.parts):
        if not Mi.contains(M):
            violations.append(f"part {i}: M is not contained in M_{i}")
        if not M.contains(Mi.scaled(Ii)):
            violations.append(f"part {i}: I_{i}·M_{i} is not contained in M")
    if _sum_ideal(ring, [I for _, I in sys.parts]) != maximal_ideal(ring):
        violations.append("the I_i do not sum to m")
    return ApproxVerdict(not violations, 1 if not violations else None, violations)


def _verify_coapprox(sys: CoApproximationSystem) -> ApproxVerdict:
    M = sys.module
    ring = M.ring
    violations = []
    for i, (Mi, Ii) in enumerate(sys.parts):
        if not M.contains(Mi):
            violations.append(f"part {i}: M_{i} is not contained in M")
        if not Mi.contains(M.scaled(Ii)):
            violations.append(f"part {i}: I_{i}·M is not contained in M_{i}")
    if sys.t < 1 or not _power_check(ring, [I for _, I in sys.parts], sys.t):
        violations.append(f"m^{sys.t} is not contained in the sum of the I_i")
    return ApproxVerdict(not violations, sys.t if not violations else None, violations)


def _max_generator_degree(M: PresentedModule):
    table = betti_table(M)
    return max((j for (i, j) in table.entries if i == 0), default=MINUS_INFINITY)


def certified_regularity_bound(sys, approximant_bounds=None, r=None) -> VerificationReport:
    """Smallest r the applicable theorem allows (or check a requested r).

    ApproximationSystem -> approximation theorem with generator-degree
    hypothesis; CorMSystem -> nested-submodule corollary; CoApproximationSystem
    -> co-approximation corollary.  The actual regularity is recorded too.
    """
    verdict = verify_approximation_system(sys)
    if not verdict.ok:
        raise NoBoundError("; ".join(verdict.violations))
    if isinstance(sys, ApproximationSystem):
        return _bound_regapprox(sys, approximant_bounds, r)
    if isinstance(sys, CorMSystem):
        return _bound_cor_m(sys, approximant_bounds, r)
    if isinstance(sys, CoApproximationSystem):
        return _bound_coapprox(sys, approximant_bounds, r)
    raise TypeError(f"unsupported system {type(sys).__name__}")


def _approximant_regs(mods, supplied):
    if supplied is not None:
        if len(supplied) != len(mods):
            raise ValueError("one bound per approximant is required")
        return list(supplied)
    return [regularity(m) for m in mods]


def _finish(theorem, hyps, bound, actual, r, details):
    if r is not None:
        if r < bound:
            raise NoBoundError(f"hypotheses of {theorem} fail for r = {r} (smallest admissible r is {bound})")
        bound = r
    return VerificationReport(theorem, hyps, bound, actual, actual <= bound, details)


def _bound_regapprox(sys, supplied, r):
    ring = sys.ring
    slack = (sys.t - 1) * ring.nvars
    regs = _approximant_regs([m for m, _ in sys.approximants], supplied)
    gen_deg = _max_generator_degree(sys.base)
    bound = reg_max(gen_deg + slack, reg_max(*regs) + 1 + slack)
    hyps = [
        Hypothesis("approximation_system", True, f"degree {sys.t}"),
        Hypothesis("generated_in_degree", True, f"max generator degree {gen_deg} <= r - {slack}"),
        Hypothesis("approximant_regularity", True, f"max reg(M_i) {reg_max(*regs)} <= r - {slack} - 1"),
    ]
    actual = regularity(sys.base)
    return _finish("regapprox", hyps, bound, actual, r, {"t": sys.t, "max_approximant_reg": reg_max(*regs)})


def _bound_cor_m(sys, supplied, r):
    regs = _approximant_regs([m for m, _ in sys.parts], supplied)
    bound = max(2, reg_max(*regs) + 1)
    hyps = [
        Hypothesis("nested_inclusions", True, "I_i M_i ⊆ M ⊆ M_i"),
        Hypothesis("ideals_sum_to_m", True),
        Hypothesis("approximant_regularity", True, f"max reg(M_i) {reg_max(*regs)} <= r - 1, r >= 2"),
    ]
    actual = regularity(sys.module)
    return _finish("cor_M", hyps, bound, actual, r, {"max_approximant_reg": reg_max(*regs)})


def _bound_coapprox(sys, supplied, r):
    ring = sys.module.ring
    slack = (sys.t - 1) * (ring.nvars - 1)
    regs = _approximant_regs([m for m, _ in sys.parts], supplied)
    bound = reg_max(*regs) + slack
    hyps = [
        Hypothesis("coapproximation_system", True, f"degree {sys.t}"),
        Hypothesis("approximant_regularity", True, f"max reg(M_i) {reg_max(*regs)} <= r - {slack}"),
    ]
    actual = regularity(sys.module)
    return _finish("coapprox", hyps, bound, actual, r, {"t": sys.t, "max_approximant_reg": reg_max(*regs)})


def verify_single_step(sys: ApproximationSystem, y, r=None) -> VerificationReport:
    """One application of the filter-regular hyperplane step: if y is
    filter-regular on M and every M_i, reg(M_i) <= r - t and
    reg(M/yM) <= r - t + 1, then reg(M) <= r.

    With ``r=None`` the smallest r meeting the regularity hypotheses is used.
    """
    verdict = verify_approximation_system(sys)
    if not verdict.ok:
        raise NoBoundError("; ".join(verdict.violations))
    y = _as_form(y, sys.ring)
    t = sys.t
    regs = [regularity(m) for m, _ in sys.approximants]
    reg_quot = regularity(sys.base.mod_element(y))
    if r is None:
        r = reg_max(reg_max(*regs) + t, reg_quot + t - 1)
    fr = is_filter_regular(y, sys.base) and all(is_filter_regular(y, m) for m, _ in sys.approximants)
    hyps = [
        Hypothesis("filter_regular", fr, str(y)),
        Hypothesis("approximant_regularity", reg_max(*regs) <= r - t, f"{reg_max(*regs)} <= {r - t}"),
        Hypothesis("hyperplane_section", reg_quot <= r - t + 1, f"{reg_quot} <= {r - t + 1}"),
    ]
    actual = regularity(sys.base)
    applicable = all(h.holds for h in hyps)
    return VerificationReport(
        "m_k_approx",
        hyps,
        r if applicable else None,
        actual,
        (actual <= r) if applicable else True,
        {"t": t},
    )


# --------------------------------------------------------------------------
# associated primes


@dataclass
class AssVerdict:
    prime: IdealHandle
    witness: object  # FreeModuleElement or None

    @property
    def confirmed(self):
        return self.witness is not None


@dataclass
class AssReport:
    module: PresentedModule
    verdicts: list
    exhausted: bool
    approximant_reports: list = dc_field(default_factory=list)

    @property
    def confirmed(self):
        return [v.prime for v in self.verdicts if v.confirmed]

    def unconfirmed(self):
        return [v.prime for v in self.verdicts if not v.confirmed]


def _witness(N: SubmoduleHandle, p: IdealHandle):
    """A generator f of (N : p) outside N whose annihilator modulo N is p."""
    from .ring import FreeModuleElement

    Q = colon(N, p)
    for f in Q.gb.vecs:
        if N.contains(f):
            continue
        if annihilator(N, f) == p:
            return FreeModuleElement(N.ambient, f)
    return None


def ass_containment_check(target, candidates, include_maximal=True) -> AssReport:
    """Confirm candidate associated primes by exact witnesses and check that
    saturating at the confirmed primes and m exhausts the module."""
    if isinstance(target, ApproximationSystem):
        report = ass_containment_check(target.base, candidates, include_maximal)
        report.approximant_reports = [
            ass_containment_check(m, candidates, include_maximal) for m, _ in target.approximants
        ]
        return report
    M = target
    N = M.relations
    ring = M.ring
    m = maximal_ideal(ring)
    primes = list(candidates)
    if include_maximal and not any(p == m for p in primes):
        primes.append(m)
    verdicts = [AssVerdict(p, _witness(N, p)) for p in primes]
    current = N
    for v in verdicts:
        if v.confirmed and not current.is_whole():
            current = saturate(current, v.prime)
    if not current.is_whole():
        current = saturate(current, m)
    return AssReport(M, verdicts, current.is_whole())


# --------------------------------------------------------------------------
# short exact sequences 0 -> A -> B -> B/A -> 0


def short_exact_sequence_check(A: SubmoduleHandle, B: SubmoduleHandle) -> dict:
    """The three regularity inequalities for 0 -> A -> B -> B/A -> 0."""
    if not B.contains(A):
        raise ValueError("A must be contained in B")
    ra = regularity(PresentedModule.image(A))
    rb = regularity(PresentedModule.image(B))
    rc = regularity(PresentedModule.subquotient(B, A))
    checks = {
        "reg_A": ra <= reg_max(rb, rc + 1),
        "reg_B": rb <= reg_max(ra, rc),
        "reg_C": rc <= reg_max(ra - 1, rb),
    }
    return {"reg": (ra, rb, rc), "checks": checks, "ok": all(checks.values())}
