"""Coefficient fields, graded polynomial rings and graded free modules.

Polynomials are stored sparsely as ``{exponent tuple: coefficient}``.  Free
module elements use ``{(component, exponent tuple): coefficient}``; the same
raw dictionaries are what the Groebner engine operates on, so the wrapper
classes here are thin.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import combinations_with_replacement

from ._lexer import SyntaxErrorAt, TokenStream, tokenize
from .errors import (
    DegreeUndefinedError,
    DimensionError,
    RingMismatchError,
)

try:  # gmpy2 rationals are several times faster than Fraction
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction


DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class RationalField:
    """Exact rational numbers."""

    characteristic = 0
    modulus = 0  # hot loops skip the reduction step when this is 0
    name = "Q"

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return _rational(value.numerator, value.denominator)
        return _rational(value)

    @property
    def zero(self):
        return _rational(0)

    @property
    def one(self):
        return _rational(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_fraction(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))

    def format(self, a) -> str:
        return str(self.to_fraction(a))

    def random_element(self, rng, bound=100):
        return _rational(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The prime field GF(p) for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p <= 2 or not _is_prime(p):
            raise ValueError(f"GF(p) needs an odd prime, got {p}")
        self.characteristic = p
        self.modulus = p
        self.name = f"GF({p})"

    def __call__(self, value):
        p = self.modulus
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, int):
            return value % p
        value = Fraction(value)
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return value.numerator * pow(den, p - 2, p) % p

    zero = 0
    one = 1

    def inv(self, a):
        if a % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.modulus - 2, self.modulus)

    def to_fraction(self, a) -> Fraction:
        # symmetric representative, which keeps printed output short
        a %= self.modulus
        if a > self.modulus // 2:
            a -= self.modulus
        return Fraction(a)

    def format(self, a) -> str:
        return str(self.to_fraction(a))

    def random_element(self, rng, bound=None):
        return rng.randrange(self.modulus)

    def primitive_root(self) -> int:
        p = self.modulus
        order = p - 1
        factors, m, f = set(), order, 2
        while f * f <= m:
            while m % f == 0:
                factors.add(f)
                m //= f
            f += 1
        if m > 1:
            factors.add(m)
        for g in range(2, p):
            if all(pow(g, order // q, p) != 1 for q in factors):
                return g
        raise AssertionError("unreachable")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return f"PrimeField({self.modulus})"


QQ = RationalField()


def field_from_name(name: str):
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return PrimeField(int(name[3:-1]))
    raise ValueError(f"unknown field {name!r}")


# --------------------------------------------------------------------------
# monomials


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def grevlex_key(exps):
    """Sort key under which *smaller* keys are *larger* grevlex monomials."""
    return (-sum(exps),) + tuple(reversed(exps))


def monomial_compare(a, b) -> Ordering:
    """Compare two exponent vectors in graded reverse lexicographic order."""
    if len(a) != len(b):
        raise DimensionError(f"monomials with {len(a)} and {len(b)} variables")
    ka, kb = grevlex_key(a), grevlex_key(b)
    if ka == kb:
        return Ordering.EQ
    return Ordering.GT if ka < kb else Ordering.LT


def monomials_of_degree(nvars: int, degree: int):
    """All exponent vectors of the given total degree, largest first (grevlex)."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key)
    return out


def mono_mul(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


# --------------------------------------------------------------------------
# rings and polynomials


class PolynomialRing:
    """Standard graded polynomial ring k[x_0, ..., x_n] with grevlex order."""

    order = "grevlex"

    def __init__(self, field=QQ, names=("x", "y", "z")):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        if not names:
            raise DimensionError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def standard(cls, nvars, field=QQ, prefix="x"):
        return cls(field, [f"{prefix}{i}" for i in range(nvars)])

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"

    # constructors -------------------------------------------------------
    def zero_exps(self):
        return (0,) * self.nvars

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring} vs {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        c = self.field(value)
        return Polynomial(self, {self.zero_exps(): c} if c != 0 else {})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def index(self, name) -> int:
        return self._index[name]

    def monomial(self, exps, coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def linear_form(self, coeffs) -> Polynomial:
        if len(coeffs) != self.nvars:
            raise DimensionError("coefficient vector length differs from nvars")
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field(c)
            if c != 0:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def maximal_ideal_gens(self):
        return self.gens()

    def parse(self, text: str) -> Polynomial:
        stream = TokenStream(tokenize(text))
        poly = parse_polynomial(self, stream)
        if stream.peek().kind != "EOF":
            raise stream.error("trailing input")
        return poly

    def extend(self, new_names) -> PolynomialRing:
        return PolynomialRing(self.field, self.names + tuple(new_names))


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def leading_term(self):
        if not self.terms:
            raise DegreeUndefinedError("zero polynomial has no leading term")
        return min(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def degree(self) -> int:
        if not self.terms:
            raise DegreeUndefinedError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_linear_form(self) -> bool:
        return bool(self.terms) and all(sum(e) == 1 for e in self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def linear_coefficients(self):
        """Coefficient vector of a linear form."""
        out = [self.ring.field.zero] * self.ring.nvars
        for e, c in self.terms.items():
            if sum(e) != 1:
                raise ValueError("not a linear form")
            out[e.index(1)] = c
        return out

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        _, lc = self.leading_term()
        return self * self.ring.field.inv(lc)

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        mod = self.ring.field.modulus
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if mod:
                v %= mod
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.field.modulus
        if mod:
            return Polynomial(self.ring, {e: (-c) % mod for e, c in self.terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if c == 0:
                return Polynomial(self.ring, {})
            mod = self.ring.field.modulus
            if mod:
                return Polynomial(self.ring, {e: v * c % mod for e, v in self.terms.items()})
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._check(other)
        return Polynomial(self.ring, poly_mul_terms(self.terms, other.terms, self.ring.field.modulus))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self.ring(other)
            except Exception:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def diff(self, var) -> Polynomial:
        i = self.ring.index(var) if isinstance(var, str) else var
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = f(e[i]) * c
                if f.modulus:
                    v %= f.modulus
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Polynomial(self.ring, out)

    def map_to(self, ring: PolynomialRing, index_map) -> Polynomial:
        """Rename variables: variable i goes to ``index_map[i]`` in ``ring``,
        or is set to zero when ``index_map[i]`` is None."""
        out = {}
        for e, c in self.terms.items():
            if any(a and index_map[i] is None for i, a in enumerate(e)):
                continue
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    ne[index_map[i]] += a
            ne = tuple(ne)
            out[ne] = ring.field(self.ring.field.to_fraction(c)) + out.get(ne, 0)
        mod = ring.field.modulus
        if mod:
            out = {e: c % mod for e, c in out.items()}
        return Polynomial(ring, {e: c for e, c in out.items() if c})

    def __str__(self):
        return format_terms(self.ring, self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({self})"


def poly_mul_terms(a: dict, b: dict, mod: int) -> dict:
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            v = get(e, 0) + ca * cb
            if mod:
                v %= mod
            out[e] = v
    return {e: c for e, c in out.items() if c}


def format_monomial(ring, exps) -> str:
    parts = []
    for name, a in zip(ring.names, exps):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_terms(ring, items) -> str:
    if not items:
        return "0"
    out = []
    for idx, (e, c) in enumerate(items):
        frac = ring.field.to_fraction(c)
        mono = format_monomial(ring, e)
        neg = frac < 0
        mag = -frac if neg else frac
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --------------------------------------------------------------------------
# polynomial parsing


def parse_polynomial(ring: PolynomialRing, ts: TokenStream) -> Polynomial:
    """expr := ['-'] term (('+'|'-') term)*"""
    if ts.at("-"):
        ts.next()
        result = -_parse_term(ring, ts)
    else:
        if ts.at("+"):
            ts.next()
        result = _parse_term(ring, ts)
    while ts.at("+", "-"):
        op = ts.next().text
        term = _parse_term(ring, ts)
        result = result + term if op == "+" else result - term
    return result


def _starts_factor(ts: TokenStream) -> bool:
    tok = ts.peek()
    return tok.kind in ("NAME", "INT") or (tok.kind == "OP" and tok.text == "(")


def _parse_term(ring, ts):
    result = _parse_power(ring, ts)
    while True:
        if ts.at("*"):
            ts.next()
            result = result * _parse_power(ring, ts)
        elif ts.at("/"):
            ts.next()
            den = ts.expect_int()
            if den == 0:
                raise ts.error("division by zero")
            result = result * ring.field.inv(ring.field(den))
        elif _starts_factor(ts) and ts.peek().kind == "NAME":
            # implicit product such as ``2x`` or ``x y``
            result = result * _parse_power(ring, ts)
        else:
            return result


def _parse_power(ring, ts):
    base = _parse_atom(ring, ts)
    if ts.at("^", "**"):
        ts.next()
        return base ** ts.expect_int()
    return base


def _parse_atom(ring, ts):
    tok = ts.peek()
    if tok.kind == "INT":
        ts.next()
        return ring(int(tok.text))
    if tok.kind == "NAME":
        if tok.text not in ring._index:
            raise SyntaxErrorAt(f"unknown variable {tok.text!r}", tok.line, tok.column, ring.names)
        ts.next()
        return ring.var(tok.text)
    if ts.at("("):
        ts.next()
        inner = parse_polynomial(ring, ts)
        ts.expect(")")
        return inner
    if ts.at("-"):
        ts.next()
        return -_parse_power(ring, ts)
    raise ts.error("expected a polynomial", ["integer", "variable", "("])


# --------------------------------------------------------------------------
# graded free modules


class GradedFreeModule:
    """The graded free module S(-d_1) + ... + S(-d_l); basis e_j has degree d_j."""

    def __init__(self, ring: PolynomialRing, shifts=(0,)):
        self.ring = ring
        self.shifts = tuple(int(d) for d in shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.ring == other.ring and self.shifts == other.shifts

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def __repr__(self):
        if not self.shifts:
            return "0"
        return " + ".join(f"S(-{d})" if d else "S" for d in self.shifts)

    def basis(self, j) -> FreeModuleElement:
        return FreeModuleElement(self, {(j, self.ring.zero_exps()): self.ring.field.one})

    def element(self, components) -> FreeModuleElement:
        """Build an element from one polynomial (or parseable string) per basis vector."""
        if len(components) != self.rank:
            raise DimensionError(f"expected {self.rank} components, got {len(components)}")
        terms = {}
        for j, p in enumerate(components):
            p = self.ring(p)
            for e, c in p.terms.items():
                terms[(j, e)] = c
        return FreeModuleElement(self, terms)

    def zero(self) -> FreeModuleElement:
        return FreeModuleElement(self, {})


class FreeModuleElement:
    __slots__ = ("module", "terms")

    def __init__(self, module: GradedFreeModule, terms: dict):
        self.module = module
        self.terms = terms

    @property
    def ring(self):
        return self.module.ring

    def components(self) -> list:
        parts = [dict() for _ in range(self.module.rank)]
        for (j, e), c in self.terms.items():
            parts[j][e] = c
        return [Polynomial(self.ring, p) for p in parts]

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self) -> bool:
        shifts = self.module.shifts
        return len({sum(e) + shifts[j] for (j, e) in self.terms}) <= 1

    def degree(self):
        return element_degree(self)

    def __add__(self, other):
        if other.module != self.module:
            raise RingMismatchError("elements of different free modules")
        mod = self.ring.field.modulus
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, 0) + c
            if mod:
                v %= mod
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return FreeModuleElement(self.module, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly) -> FreeModuleElement:
        if not isinstance(poly, Polynomial):
            poly = self.ring(poly)
        return FreeModuleElement(self.module, vec_mul_poly(self.terms, poly.terms, self.ring.field.modulus))

    def __rmul__(self, poly):
        return self.scale(poly)

    def __eq__(self, other):
        return isinstance(other, FreeModuleElement) and self.module == other.module and self.terms == other.terms

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.components()) + ")"

    def __repr__(self):
        return f"FreeModuleElement{self}"


class NonHomogeneous:
    """Marker returned by :func:`element_degree` for non-homogeneous input."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NON_HOMOGENEOUS"


NON_HOMOGENEOUS = NonHomogeneous()


def element_degree(v: FreeModuleElement):
    if not v.terms:
        raise DegreeUndefinedError("the zero element has no degree")
    shifts = v.module.shifts
    degs = {sum(e) + shifts[j] for (j, e) in v.terms}
    if len(degs) > 1:
        return NON_HOMOGENEOUS
    return degs.pop()


def vec_mul_poly(vec: dict, poly: dict, mod: int) -> dict:
    out = {}
    get = out.get
    for (j, ev), cv in vec.items():
        for ep, cp in poly.items():
            t = (j, tuple([x + y for x, y in zip(ev, ep)]))
            v = get(t, 0) + cv * cp
            if mod:
                v %= mod
            out[t] = v
    return {t: c for t, c in out.items() if c}


def poly_to_vec(poly: Polynomial, component=0) -> dict:
    return {(component, e): c for e, c in poly.terms.items()}


def vec_to_poly(ring, vec: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in vec.items()})


def vec_degree(vec: dict, shifts) -> int:
    """Degree of a (homogeneous) raw vector: max over its terms."""
    return max(sum(e) + shifts[j] for (j, e) in vec)
