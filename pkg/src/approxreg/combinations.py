"""Ideals built from linear ideals by sums, products and intersections.

Expressions are small immutable trees.  ``grammar_degree`` gives the cost r
under the recursive class definition, ``decompose`` produces the approximant
ideals used to prove r-regularity, and ``enumerate_Cr`` lists a whole class
for tiny inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._lexer import SyntaxErrorAt, TokenStream, tokenize
from .errors import CapExceededError, RingMismatchError
from .ideals import IdealHandle, combine, intersect, unit_ideal, zero_ideal
from .linalg import rank
from .ring import parse_polynomial

ASS_ATOM_CAP = 12
ENUM_MAX_R = 3
ENUM_MAX_VARS = 3
ENUM_MAX_ATOMS = 4


class LinearIdeal:
    """An ideal generated by linearly independent linear forms."""

    def __init__(self, ring, forms):
        forms = [ring.parse(f) if isinstance(f, str) else f for f in forms]
        if not forms:
            raise ValueError("a linear ideal needs at least one form")
        for f in forms:
            if f.ring != ring:
                raise RingMismatchError("form over a different ring")
            if not f.is_linear_form():
                raise ValueError(f"{f} is not a linear form")
        if rank([f.linear_coefficients() for f in forms], ring.field) < len(forms):
            raise ValueError("linear forms are not independent")
        self.ring = ring
        self.forms = tuple(forms)
        self._ideal = None

    @property
    def ideal(self) -> IdealHandle:
        if self._ideal is None:
            self._ideal = IdealHandle(self.ring, list(self.forms))
        return self._ideal

    def __eq__(self, other):
        return isinstance(other, LinearIdeal) and self.ring == other.ring and self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __str__(self):
        return "(" + ",".join(str(f) for f in self.forms) + ")"

    __repr__ = __str__


class _GeneralAtom:
    """Atom over arbitrary homogeneous generators (no grammar degree)."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.forms = tuple(gens)
        self.ideal = IdealHandle(ring, list(gens))

    def __eq__(self, other):
        return isinstance(other, _GeneralAtom) and self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __str__(self):
        return "(" + ",".join(str(f) for f in self.forms) + ")"


# --------------------------------------------------------------------------
# expression trees


class CombinationExpr:
    __slots__ = ()

    def __add__(self, other):
        return Sum(self, other)

    def __mul__(self, other):
        return Product(self, other)

    def __xor__(self, other):
        return Meet(self, other)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=True, repr=False)
class _Const(CombinationExpr):
    value: int

    def __repr__(self):
        return "Unit" if self.value else "Zero"


Zero = _Const(0)
Unit = _Const(1)


@dataclass(frozen=True, eq=True)
class Atom(CombinationExpr):
    ideal: object  # LinearIdeal or _GeneralAtom


@dataclass(frozen=True, eq=True)
class Sum(CombinationExpr):
    left: CombinationExpr
    right: CombinationExpr


@dataclass(frozen=True, eq=True)
class Product(CombinationExpr):
    left: CombinationExpr
    right: CombinationExpr


@dataclass(frozen=True, eq=True)
class Meet(CombinationExpr):
    left: CombinationExpr
    right: CombinationExpr


_BINARY = (Sum, Product, Meet)


def atom(ring, *forms) -> Atom:
    return Atom(LinearIdeal(ring, forms))


def leaves(e):
    """Atom occurrences, left to right, with their paths ('l'/'r' strings)."""
    out = []

    def walk(node, path):
        if isinstance(node, Atom):
            out.append((path, node))
        elif isinstance(node, _BINARY):
            walk(node.left, path + "l")
            walk(node.right, path + "r")

    walk(e, "")
    return out


def support(e):
    """Distinct atoms, in order of first occurrence."""
    seen = []
    for _, a in leaves(e):
        if a not in seen:
            seen.append(a)
    return seen


def _ring_of(e):
    for _, a in leaves(e):
        return a.ideal.ring
    return None


# --------------------------------------------------------------------------
# evaluation and degree


def evaluate(e, ring=None, _memo=None) -> IdealHandle:
    """The ideal an expression denotes."""
    ring = ring or _ring_of(e)
    if ring is None:
        raise ValueError("expression without atoms needs an explicit ring")
    memo = {} if _memo is None else _memo
    if e in memo:
        return memo[e]
    if e is Zero or e == Zero:
        out = zero_ideal(ring)
    elif e == Unit:
        out = unit_ideal(ring)
    elif isinstance(e, Atom):
        if e.ideal.ring != ring:
            raise RingMismatchError("atoms over different rings")
        out = e.ideal.ideal
    else:
        a = evaluate(e.left, ring, memo)
        b = evaluate(e.right, ring, memo)
        if isinstance(e, Sum):
            out = combine("sum", a, b)
        elif isinstance(e, Product):
            out = combine("product", a, b)
        else:
            out = intersect(a, b)
    memo[e] = out
    return out


eval_expr = evaluate


def grammar_degree(e) -> int:
    if isinstance(e, _Const):
        return 0
    if isinstance(e, Atom):
        if not isinstance(e.ideal, LinearIdeal):
            raise ValueError("grammar degree needs linear atoms")
        return 1
    a, b = grammar_degree(e.left), grammar_degree(e.right)
    if isinstance(e, Sum):
        return max(a, b) if min(a, b) <= 1 else a + b - 1
    return a + b


def _sum(a, b):
    if a == Unit or b == Unit:
        return Unit
    if a == Zero:
        return b
    if b == Zero:
        return a
    return Sum(a, b)


def _product(a, b):
    if a == Zero or b == Zero:
        return Zero
    if a == Unit:
        return b
    if b == Unit:
        return a
    return Product(a, b)


def _meet(a, b):
    if a == Zero or b == Zero:
        return Zero
    if a == Unit:
        return b
    if b == Unit:
        return a
    return Meet(a, b)


_SMART = {Sum: _sum, Product: _product, Meet: _meet}


def simplify(e):
    """Remove Zero/Unit operands using the identities they satisfy."""
    if isinstance(e, _BINARY):
        return _SMART[type(e)](simplify(e.left), simplify(e.right))
    return e


# --------------------------------------------------------------------------
# decomposition


@dataclass
class DecompositionPair:
    atom: Atom
    path: str
    approximant: CombinationExpr
    verified: bool


def _approximant(e, path):
    """Replace the occurrence at `path` following the clause it sits in."""
    if isinstance(e, Atom):
        return Unit
    a, b = grammar_degree(e.left), grammar_degree(e.right)
    side, rest = path[0], path[1:]
    if isinstance(e, Sum) and min(a, b) <= 1:
        low = e.left if a <= b else e.right
        high_side = "r" if a <= b else "l"
        if max(a, b) <= 1:
            return Unit
        if side != high_side:
            return Unit  # the occurrence lies in the degree-1 summand
        high = e.right if high_side == "r" else e.left
        return _sum(_approximant(high, rest), low)
    smart = _SMART[type(e)]
    if side == "l":
        return smart(_approximant(e.left, rest), e.right)
    return smart(e.left, _approximant(e.right, rest))


def decompose(e, verify=True):
    """Approximant pairs (I, J_I) with I*J_I ⊆ J ⊆ J_I, one per atom occurrence."""
    e = simplify(e)
    if isinstance(e, _Const):
        return []
    ring = _ring_of(e)
    J = evaluate(e, ring)
    if J.is_zero() or J.is_unit():
        return []
    r = grammar_degree(e)
    pairs, seen = [], set()
    memo = {}
    for path, leaf in leaves(e):
        Ji = simplify(_approximant(e, path))
        key = (leaf, Ji)
        if key in seen:
            continue
        seen.add(key)
        ok = True
        if verify:
            approx = evaluate(Ji, ring, memo)
            I = leaf.ideal.ideal
            ok = J.issubset(approx) and approx.scaled(I).issubset(J) and grammar_degree(Ji) <= r - 1
        pairs.append(DecompositionPair(leaf, path, Ji, ok))
    return pairs


def cor_m_system(e):
    """The nested-ideal system (J, [(J_i, I_i)]) produced by ``decompose``."""
    from .regularity_lab import CorMSystem

    e = simplify(e)
    ring = _ring_of(e)
    J = evaluate(e, ring)
    parts = [(evaluate(p.approximant, ring), p.atom.ideal.ideal) for p in decompose(e)]
    return CorMSystem(J, parts)


def approximation_system(e):
    """The degree-1 system S/J ↠ S/J_i with annihilators I_i."""
    from .regularity_lab import ApproximationSystem

    e = simplify(e)
    ring = _ring_of(e)
    J = evaluate(e, ring)
    parts = [(evaluate(p.approximant, ring), p.atom.ideal.ideal) for p in decompose(e)]
    return ApproximationSystem.from_submodules(J, parts, 1)


@dataclass
class RegularityReport:
    expression: str
    grammar_degree: int
    regularity: object
    ok: bool

    def to_json_obj(self):
        return {
            "expression": self.expression,
            "grammar_degree": self.grammar_degree,
            "regularity": self.regularity,
            "ok": self.ok,
        }


def verify_r_regularity(e) -> RegularityReport:
    from .resolve import regularity

    r = grammar_degree(e)
    reg = regularity(evaluate(e))
    return RegularityReport(to_text(e), r, reg, reg <= r)


def _subset_sums(atoms, ring):
    out = []
    for k in range(1, len(atoms) + 1):
        for combo in itertools.combinations(atoms, k):
            gens = [f for a in combo for f in a.ideal.forms]
            cand = IdealHandle(ring, gens)
            if not cand.is_unit() and cand not in out:
                out.append(cand)
    return out


def ass_candidates(e):
    """Subset sums of the atoms and the witness check against them."""
    from .regularity_lab import ass_containment_check
    from .resolve import PresentedModule

    atoms = support(e)
    if len(atoms) > ASS_ATOM_CAP:
        raise CapExceededError(f"{len(atoms)} atoms exceed the cap of {ASS_ATOM_CAP}")
    ring = _ring_of(e)
    cands = _subset_sums(atoms, ring)
    report = ass_containment_check(PresentedModule.quotient(evaluate(e, ring)), cands)
    return cands, report


# --------------------------------------------------------------------------
# enumeration of the class


def enumerate_Cr(A, r, ring=None):
    """All distinct ideals of the class of cost r over the linear ideals A."""
    A = [a if isinstance(a, LinearIdeal) else a.ideal for a in A]
    if ring is None:
        if not A:
            raise ValueError("empty A needs an explicit ring")
        ring = A[0].ring
    if r > ENUM_MAX_R or ring.nvars > ENUM_MAX_VARS or len(A) > ENUM_MAX_ATOMS:
        raise CapExceededError("enumerate_Cr is limited to r <= 3, 3 variables and 4 ideals")
    if r < 0:
        raise ValueError("r must be non-negative")

    def add(bucket, ideal):
        if ideal not in bucket:
            bucket.append(ideal)

    levels = [[zero_ideal(ring), unit_ideal(ring)]]
    c1 = list(levels[0])
    for k in range(1, len(A) + 1):
        for combo in itertools.combinations(A, k):
            add(c1, IdealHandle(ring, [f for a in combo for f in a.forms]))
    levels.append(c1)
    for s in range(2, r + 1):
        cs = []
        for a in range(1, s):
            b = s - a
            for x in levels[a]:
                for y in levels[b]:
                    meet, prod = intersect(x, y), combine("product", x, y)
                    for c in c1:
                        add(cs, meet + c)
                        add(cs, prod + c)
        for a in range(2, s):
            b = s + 1 - a
            if b >= 2:
                for x in levels[a]:
                    for y in levels[b]:
                        add(cs, x + y)
        levels.append(cs)
    return levels[r] if r >= 1 else levels[0]


# --------------------------------------------------------------------------
# random expressions


def random_linear_ideal(ring, k, rng, bound=10):
    """k independent random linear forms with integer coefficients in [-bound, bound]."""
    while True:
        forms = []
        for _ in range(k):
            coeffs = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
            forms.append(ring.linear_form(coeffs))
        if all(not f.is_zero() for f in forms) and rank(
            [f.linear_coefficients() for f in forms], ring.field
        ) == k:
            return LinearIdeal(ring, forms)


def random_expression(atoms, depth, rng, max_degree=None):
    """A random tree over the given atoms, optionally with bounded grammar degree."""
    for _ in range(1000):
        e = _random_tree(atoms, depth, rng)
        if max_degree is None or grammar_degree(e) <= max_degree:
            return e
    return Atom(atoms[0]) if isinstance(atoms[0], LinearIdeal) else atoms[0]


def _random_tree(atoms, depth, rng):
    if depth <= 0 or rng.random() < 0.25:
        a = rng.choice(atoms)
        return Atom(a) if isinstance(a, LinearIdeal) else a
    kind = rng.choice(_BINARY)
    return kind(_random_tree(atoms, depth - 1, rng), _random_tree(atoms, depth - 1, rng))


# --------------------------------------------------------------------------
# text form
#
# expr := term ('+' term)* ; term := factor (('*'|'^') factor)*
# factor := '0' | '1' | '(' expr ')' | '(' form (',' form)* ')'


def to_text(e) -> str:
    if isinstance(e, _Const):
        return str(e.value)
    if isinstance(e, Atom):
        return str(e.ideal)
    left, right = to_text(e.left), to_text(e.right)
    if isinstance(e, Sum):
        if isinstance(e.right, Sum):
            right = f"({right})"
        return f"{left} + {right}"
    if isinstance(e.left, Sum):
        left = f"({left})"
    if isinstance(e.right, _BINARY):
        right = f"({right})"
    op = "*" if isinstance(e, Product) else "^"
    return f"{left} {op} {right}"


def parse_expression(ring, text, allow_general=False):
    ts = TokenStream(tokenize(text))
    e = parse_expr_stream(ring, ts, allow_general)
    if ts.peek().kind != "EOF":
        raise ts.error("expected end of expression")
    return e


def parse_expr_stream(ring, ts, allow_general=False):
    e = _parse_term(ring, ts, allow_general)
    while ts.at("+"):
        ts.next()
        e = Sum(e, _parse_term(ring, ts, allow_general))
    return e


def _parse_term(ring, ts, allow_general):
    e = _parse_factor(ring, ts, allow_general)
    while ts.at("*", "^"):
        op = ts.next().text
        f = _parse_factor(ring, ts, allow_general)
        e = Product(e, f) if op == "*" else Meet(e, f)
    return e


def _parse_factor(ring, ts, allow_general):
    tok = ts.peek()
    if tok.kind == "INT" and tok.text in ("0", "1"):
        ts.next()
        return Unit if tok.text == "1" else Zero
    if not ts.at("("):
        raise ts.error("'(', '0' or '1'")
    start = ts.pos
    attempts = (_parse_group, _parse_atom) if ts.peek(1).text == "(" else (_parse_atom, _parse_group)
    first_error = None
    for fn in attempts:
        ts.pos = start
        try:
            return fn(ring, ts, allow_general)
        except (SyntaxErrorAt, ValueError) as exc:
            # a semantic complaint about a parsed atom beats a syntax error
            if first_error is None or isinstance(first_error, SyntaxErrorAt) and isinstance(exc, ValueError):
                first_error = exc
    raise first_error


def _parse_group(ring, ts, allow_general):
    ts.expect("(")
    e = parse_expr_stream(ring, ts, allow_general)
    ts.expect(")")
    return e


def _parse_atom(ring, ts, allow_general):
    ts.expect("(")
    forms = [parse_polynomial(ring, ts)]
    while ts.at(","):
        ts.next()
        forms.append(parse_polynomial(ring, ts))
    ts.expect(")")
    if all(f.is_linear_form() for f in forms):
        try:
            return Atom(LinearIdeal(ring, forms))
        except ValueError:
            if not allow_general:
                raise
    elif not allow_general:
        raise ValueError("atoms must be generated by linear forms")
    return Atom(_GeneralAtom(ring, [f for f in forms if not f.is_zero()]))
