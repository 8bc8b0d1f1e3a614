"""Diagonal actions of finite abelian groups: the graph ideal of the union of
the translates g·Δ(V), the Hilbert ideal, ρ, and the coset-span criterion."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import reduce as _fold

from ._lexer import TokenStream, tokenize
from .errors import ConfigurationError, ConsistencyError, NotFiniteLengthError
from .ideals import IdealHandle, intersect_all
from .linalg import nullspace, rank
from .ring import QQ, PolynomialRing, PrimeField, _is_prime

MIN_PRIME = 101
Z2N_MAX = 3


def _lcm(values):
    return _fold(lambda a, b: a * b // math.gcd(a, b), values, 1)


def default_field(divisors):
    """QQ when every divisor is at most 2, else the least prime p >= 101 with
    p ≡ 1 mod lcm(divisors)."""
    if all(d <= 2 for d in divisors):
        return QQ
    L = _lcm(divisors)
    p = MIN_PRIME
    while not (p % L == 1 and _is_prime(p)):
        p += 1
    return PrimeField(p)


def _root_of_unity(field, d):
    if d == 1:
        return field.one
    if field.modulus == 0:
        if d == 2:
            return field(-1)
        raise ConfigurationError(f"QQ has no primitive root of unity of order {d}")
    p = field.modulus
    if (p - 1) % d:
        raise ConfigurationError(f"GF({p}) has no primitive root of unity of order {d}")
    return pow(field.primitive_root(), (p - 1) // d, p)


class DiagonalAction:
    """G = ⊕ Z/d_i acting on variable j by the character with exponents chars[j]."""

    def __init__(self, divisors, names, chars, field=None):
        divisors = tuple(int(d) for d in divisors)
        if any(d < 1 for d in divisors):
            raise ConfigurationError("elementary divisors must be positive")
        if len(chars) != len(names):
            raise ConfigurationError("one character per variable is required")
        for c in chars:
            if len(c) != len(divisors):
                raise ConfigurationError(f"character {tuple(c)} has the wrong length")
        self.divisors = divisors
        self.names = tuple(names)
        self.chars = tuple(tuple(a % d for a, d in zip(c, divisors)) for c in chars)
        self.field = field or default_field(divisors)
        self.zetas = tuple(_root_of_unity(self.field, d) for d in divisors)
        self.ring = PolynomialRing(self.field, self.names)

    @property
    def order(self) -> int:
        return math.prod(self.divisors)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def elements(self):
        return list(itertools.product(*[range(d) for d in self.divisors]))

    def identity(self):
        return (0,) * len(self.divisors)

    def add(self, g, h):
        return tuple((a + b) % d for a, b, d in zip(g, h, self.divisors))

    def char_value(self, char, g):
        mod = self.field.modulus
        v = self.field.one
        for z, a, e in zip(self.zetas, char, g):
            k = a * e
            if mod:
                v = v * pow(z, k, mod) % mod
            else:
                v = v * z**k
        return v

    def values(self, g):
        """The diagonal matrix of g, as the tuple of its entries."""
        return tuple(self.char_value(c, g) for c in self.chars)

    def is_faithful(self) -> bool:
        one = tuple(self.field.one for _ in self.names)
        return sum(1 for g in self.elements() if self.values(g) == one) == 1

    def subgroup(self, gens):
        H = {self.identity()}
        frontier = list(H)
        while frontier:
            h = frontier.pop()
            for g in gens:
                k = self.add(h, g)
                if k not in H:
                    H.add(k)
                    frontier.append(k)
        return frozenset(H)

    def subgroups(self):
        out = []
        elems = self.elements()
        for k in range(0, min(3, len(elems)) + 1):
            for gens in itertools.combinations(elems, k):
                H = self.subgroup(gens)
                if H not in out:
                    out.append(H)
        full = frozenset(elems)
        if full not in out:
            out.append(full)
        return out

    def doubled_ring(self) -> PolynomialRing:
        ys = []
        for name in self.names:
            cand = "y" + name[1:] if name.startswith("x") else name + "_y"
            if cand in self.names or cand in ys:
                cand = name + "_y"
            ys.append(cand)
        return PolynomialRing(self.field, self.names + tuple(ys))

    def __repr__(self):
        return f"DiagonalAction(group={self.divisors}, chars={self.chars}, field={self.field})"


# --------------------------------------------------------------------------
# the graph B and its ideal


def _translate_ideal(action, ring2, g):
    """Ideal of g·Δ(V) = {(v, g v)}: (y_j - χ_j(g) x_j)."""
    n = action.nvars
    xs, ys = ring2.gens()[:n], ring2.gens()[n:]
    return IdealHandle(ring2, [ys[j] - ring2(action.field.to_fraction(c)) * xs[j] for j, c in enumerate(action.values(g))])


def translate_ideals(action):
    ring2 = action.doubled_ring()
    seen, out = set(), []
    for g in action.elements():
        v = action.values(g)
        if v not in seen:
            seen.add(v)
            out.append(_translate_ideal(action, ring2, g))
    return out


def graph_ideal(action: DiagonalAction) -> IdealHandle:
    """𝔟 = ⋂_g ideal(g·Δ(V)) in the doubled ring."""
    return intersect_all(translate_ideals(action))


def hilbert_ideal(b: IdealHandle, nvars=None) -> IdealHandle:
    """Set the second block of variables to zero in the reduced basis of 𝔟."""
    ring2 = b.ring
    n = nvars if nvars is not None else ring2.nvars // 2
    ring = PolynomialRing(ring2.field, ring2.names[:n])
    index_map = list(range(n)) + [None] * (ring2.nvars - n)
    gens = [p.map_to(ring, index_map) for p in b.groebner_polynomials()]
    return IdealHandle(ring, [g for g in gens if not g.is_zero()])


def rho(J: IdealHandle) -> int:
    """Least d such that every monomial of degree d lies in J."""
    ring = J.ring
    leads = [e for (_, e) in J.gb.leading_terms()]
    bound = 0
    for i in range(ring.nvars):
        pure = [e[i] for e in leads if sum(e) == e[i] and e[i] > 0]
        if not pure:
            raise NotFiniteLengthError(f"S/J is not of finite length: no power of {ring.names[i]} lies in J")
        bound += min(pure) - 1
    for d in range(1, bound + 2):
        if J.contains_power_of_maximal(d):
            return d
    raise AssertionError("unreachable: finite length bound exceeded")  # pragma: no cover


# --------------------------------------------------------------------------
# coset spans


def coset_span_ideal(action, ring2, g, H):
    """Vanishing ideal of Δ_{gH}(V) = Σ_{h∈gH} h·Δ(V)."""
    n = action.nvars
    xs, ys = ring2.gens()[:n], ring2.gens()[n:]
    gens = []
    for j, c in enumerate(action.chars):
        vals = {action.char_value(c, action.add(g, h)) for h in H}
        if len(vals) == 1:
            (v,) = vals
            gens.append(ys[j] - ring2(action.field.to_fraction(v)) * xs[j])
    return IdealHandle(ring2, gens)


def _span_vectors(action, g, H):
    n = action.nvars
    out = []
    for h in H:
        vals = action.values(action.add(g, h))
        for j in range(n):
            v = [action.field.zero] * (2 * n)
            v[j] = action.field.one
            v[n + j] = vals[j]
            out.append(v)
    return out


def span_intersection_is_zero(action, pairs) -> bool:
    """Direct linear algebra: ⋂ Δ_{g_i H_i}(V) = 0 in k^{2n}?"""
    field = action.field
    dim = 2 * action.nvars
    annihilators = []
    for g, H in pairs:
        annihilators.extend(nullspace(_span_vectors(action, g, H), field, dim))
    return (rank(annihilators, field) if annihilators else 0) == dim


def coset_criterion(action, pairs) -> bool:
    """Every character χ in V has i, j with χ(H_i) = χ(H_j) = 1 and χ(g_i) ≠ χ(g_j)."""
    one = action.field.one
    for chi in set(action.chars):
        trivial = [i for i, (_, H) in enumerate(pairs) if all(action.char_value(chi, h) == one for h in H)]
        vals = {action.char_value(chi, pairs[i][0]) for i in trivial}
        if len(vals) < 2:
            return False
    return True


def coset_span_intersection_test(action, pairs) -> bool:
    pairs = [(tuple(g), frozenset(map(tuple, H))) for g, H in pairs]
    verdict = coset_criterion(action, pairs)
    direct = span_intersection_is_zero(action, pairs)
    if verdict != direct:
        raise ConsistencyError(f"criterion says {verdict} but the span intersection says {direct}")
    return verdict


# --------------------------------------------------------------------------
# reports


@dataclass
class InvariantReport:
    action: DiagonalAction
    b: IdealHandle
    J: IdealHandle
    rho: object
    regularity_b: object
    group_order: int
    c_bound: object = None
    c_certificate: str = ""
    reduced_from: object = None
    checks: dict = dc_field(default_factory=dict)

    @property
    def chain_ok(self) -> bool:
        chain = [x for x in (self.rho, self.c_bound, self.group_order) if x is not None]
        return all(a <= b for a, b in zip(chain, chain[1:]))

    def to_json_obj(self):
        return {
            "group": list(self.action.divisors),
            "field": str(self.action.field.name if self.action.field.modulus == 0 else f"GF({self.action.field.modulus})"),
            "b": [str(p) for p in self.b.groebner_polynomials()],
            "hilbert_ideal": [str(p) for p in self.J.groebner_polynomials()],
            "rho": self.rho,
            "reg_b": self.regularity_b,
            "group_order": self.group_order,
            "c_bound": self.c_bound,
            "c_certificate": self.c_certificate,
            "reduced_from": list(self.reduced_from) if self.reduced_from else None,
            "chain_ok": self.chain_ok,
            "checks": dict(sorted(self.checks.items())),
        }


def invariant_report(action: DiagonalAction) -> InvariantReport:
    from .resolve import regularity

    b = graph_ideal(action)
    J = hilbert_ideal(b, action.nvars)
    try:
        r = rho(J)
    except NotFiniteLengthError:
        r = None
    distinct = len(translate_ideals(action))
    return InvariantReport(
        action, b, J, r, regularity(b), action.order, c_bound=distinct, c_certificate=f"intersection of {distinct} linear ideals"
    )


def _f2_reduce(action):
    """Faithful quotient of a (Z/2)^n action, as a (Z/2)^r action."""
    rows = [list(c) for c in action.chars]
    basis = []  # list of (pivot, vector)
    for r in rows:
        v = r[:]
        for p, b in basis:
            if v[p]:
                v = [(a + c) % 2 for a, c in zip(v, b)]
        if any(v):
            p = v.index(1)
            basis.append((p, v))
    # coordinates of each character in the echelon basis
    new_chars = []
    for r in rows:
        v, coords = r[:], []
        for p, b in basis:
            if v[p]:
                v = [(a + c) % 2 for a, c in zip(v, b)]
                coords.append(1)
            else:
                coords.append(0)
        new_chars.append(tuple(coords))
    return DiagonalAction((2,) * len(basis), action.names, new_chars, action.field)


def z2n_certificate(action: DiagonalAction, reduce_action=True) -> InvariantReport:
    """reg(𝔟) ≤ n+1 for (Z/2)^n together with the nested system built from
    the index-2 subgroups."""
    from .regularity_lab import CorMSystem, verify_approximation_system
    from .resolve import regularity

    if any(d != 2 for d in action.divisors):
        raise ConfigurationError("z2n_certificate needs a group (Z/2)^n")
    if action.field.modulus != 0:
        raise ConfigurationError("z2n_certificate works over QQ")
    if len(action.divisors) > Z2N_MAX:
        raise ConfigurationError(f"n is capped at {Z2N_MAX}")
    reduced_from = None
    if not action.is_faithful():
        if not reduce_action:
            raise ConfigurationError("action is not faithful")
        reduced_from = action.divisors
        action = _f2_reduce(action)
    n = len(action.divisors)
    b = graph_ideal(action)
    J = hilbert_ideal(b, action.nvars)
    try:
        r = rho(J)
    except NotFiniteLengthError:
        r = None
    reg_b = regularity(b)
    checks = {"reg_b_le_n_plus_1": reg_b <= n + 1}
    if n >= 1:
        ring2 = b.ring
        e = action.identity()
        parts, pairs = [], []
        for H in _index_two_subgroups(action):
            g = next(x for x in action.elements() if x not in H)
            psi_H = intersect_all([_translate_ideal(action, ring2, h) for h in H])
            psi_gH = intersect_all([_translate_ideal(action, ring2, action.add(g, h)) for h in H])
            parts.append((psi_H, coset_span_ideal(action, ring2, g, H)))
            parts.append((psi_gH, coset_span_ideal(action, ring2, e, H)))
            pairs.extend([(e, H), (g, H)])
        trivial_free = all(any(c) for c in action.chars)
        if trivial_free:
            checks["coset_intersection_zero"] = coset_span_intersection_test(action, pairs)
            verdict = verify_approximation_system(CorMSystem(b, parts))
            checks["nested_system_valid"] = verdict.ok
            checks["approximant_reg_le_n"] = all(regularity(J_i) <= n for J_i, _ in parts)
        else:
            checks["trivial_summand"] = True
    report = InvariantReport(action, b, J, r, reg_b, action.order, c_bound=n + 1,
                             c_certificate=f"index-2 subgroup system, n = {n}", reduced_from=reduced_from, checks=checks)
    return report


def _index_two_subgroups(action):
    order = action.order
    return [H for H in action.subgroups() if 2 * len(H) == order]


# --------------------------------------------------------------------------
# text format: group 2,2; vars x1,x2; char x1 = (1,0); char x2 = (0,1); [field GF(7);]


def parse_action_stream(ts: TokenStream, terminators=("EOF",), field_override=None) -> DiagonalAction:
    divisors, names, chars, field = None, None, {}, None

    def done():
        tok = ts.peek()
        return tok.kind == "EOF" or (tok.kind == "OP" and tok.text in terminators)

    while not done():
        kw = ts.expect_name("group", "vars", "char", "field")
        if kw.text == "group":
            divisors = [ts.expect_int()]
            while ts.at(","):
                ts.next()
                divisors.append(ts.expect_int())
        elif kw.text == "vars":
            names = [ts.expect_name().text]
            while ts.at(","):
                ts.next()
                names.append(ts.expect_name().text)
        elif kw.text == "char":
            name = ts.expect_name().text
            ts.expect("=")
            ts.expect("(")
            vec = [_signed_int(ts)]
            while ts.at(","):
                ts.next()
                vec.append(_signed_int(ts))
            ts.expect(")")
            chars[name] = tuple(vec)
        else:
            field = parse_field(ts)
        ts.expect(";")
    if divisors is None or names is None:
        raise ConfigurationError("an action needs 'group' and 'vars'")
    missing = [n for n in names if n not in chars]
    if missing:
        raise ConfigurationError(f"no character given for {', '.join(missing)}")
    unknown = [n for n in chars if n not in names]
    if unknown:
        raise ConfigurationError(f"character for unknown variable {', '.join(unknown)}")
    if field_override is not None:
        field = field_override
    return DiagonalAction(divisors, names, [chars[n] for n in names], field)


def _signed_int(ts):
    if ts.at("-"):
        ts.next()
        return -ts.expect_int()
    return ts.expect_int()


def parse_field(ts):
    tok = ts.expect_name("Q", "QQ", "GF")
    if tok.text in ("Q", "QQ"):
        return QQ
    ts.expect("(")
    p = ts.expect_int()
    ts.expect(")")
    try:
        return PrimeField(p)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def parse_action(text, field_override=None) -> DiagonalAction:
    return parse_action_stream(TokenStream(tokenize(text)), field_override=field_override)
