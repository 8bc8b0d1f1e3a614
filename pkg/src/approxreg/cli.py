"""Script front end.

    ring Q[x,y];
    ideal J = (x) * ((x) + (y));
    show betti J;
    assert reg(J) <= 2;
    verify systems J;

Statements end with ';'.  ``approxreg script.ar --seed 7 --format json``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field

from . import arrangements as arr
from . import combinations as comb
from . import invariants as inv
from . import regularity_lab as lab
from ._lexer import SyntaxErrorAt, TokenStream, tokenize
from .errors import AlgebraError, ConsistencyError
from .ideals import IdealHandle
from .resolve import MINUS_INFINITY, PresentedModule, betti_table, regularity
from .ring import PolynomialRing, field_from_name, parse_polynomial

EXIT_OK, EXIT_ASSERT, EXIT_ERROR, EXIT_CONSISTENCY = 0, 1, 2, 3

SHOW_KINDS = ("betti", "reg", "gens", "class")
VERIFY_KINDS = ("hypersurface", "systems", "derivation_bound", "approx", "coapprox", "rho_chain")
COMPARISONS = ("<=", "==", ">=", "<", ">")


class SemanticError(Exception):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line, self.column = line, column


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class RingStmt:
    field: object
    names: tuple

    def __str__(self):
        fname = "Q" if self.field.modulus == 0 else f"GF({self.field.modulus})"
        return f"ring {fname}[{','.join(self.names)}];"


@dataclass(frozen=True)
class IdealStmt:
    name: str
    expr: object

    def __str__(self):
        return f"ideal {self.name} = {comb.to_text(self.expr)};"


@dataclass(frozen=True)
class RandomStmt:
    name: str
    kind: str
    size: int

    def __str__(self):
        return f"random {self.name} = {self.kind}({self.size});"


@dataclass(frozen=True)
class ArrangementStmt:
    name: str
    forms: tuple

    def __str__(self):
        return f"arrangement {self.name} = {{{', '.join(str(f) for f in self.forms)}}};"


@dataclass(frozen=True)
class ActionStmt:
    name: str
    divisors: tuple
    names: tuple
    chars: tuple
    field: object = None

    def build(self):
        return inv.DiagonalAction(self.divisors, self.names, self.chars, self.field)

    def __str__(self):
        parts = [f"group {','.join(map(str, self.divisors))};", f"vars {','.join(self.names)};"]
        parts += [f"char {n} = ({','.join(map(str, c))});" for n, c in zip(self.names, self.chars)]
        if self.field is not None:
            parts.append(f"field {'Q' if self.field.modulus == 0 else f'GF({self.field.modulus})'};")
        return f"action {self.name} = {{ {' '.join(parts)} }};"


@dataclass(frozen=True)
class ShowStmt:
    kind: str
    names: tuple
    level: int = 0

    def __str__(self):
        if self.kind == "class":
            return f"show class({self.level}) {', '.join(self.names)};"
        return f"show {self.kind} {self.names[0]};"


@dataclass(frozen=True)
class AssertStmt:
    name: str
    op: str
    value: int

    def __str__(self):
        return f"assert reg({self.name}) {self.op} {self.value};"


@dataclass(frozen=True)
class VerifyStmt:
    kind: str
    name: str
    form: object = None

    def __str__(self):
        extra = f", {self.form}" if self.form is not None else ""
        return f"verify {self.kind} {self.name}{extra};"


@dataclass
class Script:
    statements: list
    positions: list = dc_field(default_factory=list, compare=False)

    def __str__(self):
        return "".join(f"{s}\n" for s in self.statements)


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text, field_override=None):
        self.ts = TokenStream(tokenize(text))
        self.field_override = field_override
        self.ring = None
        self.kinds = {}  # name -> (kind, ring)

    def parse(self) -> Script:
        stmts, pos = [], []
        while self.ts.peek().kind != "EOF":
            tok = self.ts.peek()
            stmts.append(self.statement())
            pos.append((tok.line, tok.column))
            self.ts.expect(";")
        return Script(stmts, pos)

    def _semantic(self, message, tok=None):
        tok = tok or self.ts.peek()
        return SemanticError(message, tok.line, tok.column)

    def _need_ring(self, tok):
        if self.ring is None:
            raise self._semantic("no ring declared", tok)
        return self.ring

    def _declare(self, tok, kind):
        self.kinds[tok.text] = (kind, self.ring)

    def _use(self, kinds):
        tok = self.ts.expect_name()
        if tok.text not in self.kinds:
            raise self._semantic(f"undeclared name {tok.text!r}", tok)
        kind, ring = self.kinds[tok.text]
        if kind not in kinds:
            raise self._semantic(f"{tok.text!r} is a {kind}, expected {' or '.join(kinds)}", tok)
        if kind != "action" and ring != self.ring:
            raise self._semantic(f"{tok.text!r} belongs to a different ring", tok)
        return tok.text

    def statement(self):
        ts = self.ts
        kw = ts.expect_name("ring", "ideal", "random", "arrangement", "action", "show", "assert", "verify")
        return getattr(self, "_" + kw.text)(kw)

    def _ring(self, kw):
        field = inv.parse_field(self.ts)
        if self.field_override is not None:
            field = self.field_override
        self.ts.expect("[")
        names = [self.ts.expect_name().text]
        while self.ts.at(","):
            self.ts.next()
            names.append(self.ts.expect_name().text)
        self.ts.expect("]")
        if len(set(names)) != len(names):
            raise self._semantic("repeated variable name", kw)
        self.ring = PolynomialRing(field, tuple(names))
        return RingStmt(field, tuple(names))

    def _ideal(self, kw):
        ring = self._need_ring(kw)
        name = self.ts.expect_name()
        self.ts.expect("=")
        start = self.ts.peek()
        try:
            expr = comb.parse_expr_stream(ring, self.ts, allow_general=True)
        except SyntaxErrorAt:
            raise
        except (ValueError, AlgebraError) as exc:
            raise self._semantic(str(exc), start) from exc
        self._declare(name, "ideal")
        return IdealStmt(name.text, expr)

    def _random(self, kw):
        ring = self._need_ring(kw)
        name = self.ts.expect_name()
        self.ts.expect("=")
        kind = self.ts.expect_name("product", "meet").text
        self.ts.expect("(")
        size = self.ts.expect_int()
        self.ts.expect(")")
        if size < 1:
            raise self._semantic("size must be positive", kw)
        if size > ring.nvars * 3:
            raise self._semantic("random combinations are limited to 3 atoms per variable", kw)
        self._declare(name, "ideal")
        return RandomStmt(name.text, kind, size)

    def _arrangement(self, kw):
        ring = self._need_ring(kw)
        name = self.ts.expect_name()
        self.ts.expect("=")
        self.ts.expect("{")
        forms = [parse_polynomial(ring, self.ts)]
        while self.ts.at(","):
            self.ts.next()
            forms.append(parse_polynomial(ring, self.ts))
        self.ts.expect("}")
        try:
            arr.HyperplaneArrangement(ring, forms)
        except (ValueError, AlgebraError) as exc:
            raise self._semantic(str(exc), kw) from exc
        self._declare(name, "arrangement")
        return ArrangementStmt(name.text, tuple(forms))

    def _action(self, kw):
        name = self.ts.expect_name()
        self.ts.expect("=")
        self.ts.expect("{")
        try:
            action = inv.parse_action_stream(self.ts, terminators=("}",), field_override=self.field_override)
        except SyntaxErrorAt:
            raise
        except AlgebraError as exc:
            raise self._semantic(str(exc), kw) from exc
        self.ts.expect("}")
        explicit = None if action.field == inv.default_field(action.divisors) else action.field
        self._declare(name, "action")
        return ActionStmt(name.text, action.divisors, action.names, action.chars, explicit)

    def _show(self, kw):
        kind = self.ts.expect_name(*SHOW_KINDS).text
        if kind == "class":
            self._need_ring(kw)
            self.ts.expect("(")
            level = self.ts.expect_int()
            self.ts.expect(")")
            names = [self._use(("ideal",))]
            while self.ts.at(","):
                self.ts.next()
                names.append(self._use(("ideal",)))
            return ShowStmt(kind, tuple(names), level)
        return ShowStmt(kind, (self._use(("ideal", "arrangement", "action")),))

    def _assert(self, kw):
        self.ts.expect_name("reg")
        self.ts.expect("(")
        name = self._use(("ideal", "arrangement", "action"))
        self.ts.expect(")")
        tok = self.ts.peek()
        if not (tok.kind == "OP" and tok.text in COMPARISONS):
            raise self.ts.error("unexpected token", COMPARISONS)
        self.ts.next()
        neg = False
        if self.ts.at("-"):
            self.ts.next()
            neg = True
        value = self.ts.expect_int()
        return AssertStmt(name, tok.text, -value if neg else value)

    def _verify(self, kw):
        kind = self.ts.expect_name(*VERIFY_KINDS).text
        wanted = {"derivation_bound": ("arrangement",), "rho_chain": ("action",)}.get(kind, ("ideal",))
        name = self._use(wanted)
        form = None
        if kind == "hypersurface" and self.ts.at(","):
            self.ts.next()
            form = parse_polynomial(self.ring, self.ts)
        return VerifyStmt(kind, name, form)


def parse(text, field_override=None) -> Script:
    return _Parser(text, field_override).parse()


# --------------------------------------------------------------------------
# interpreter


def _num(x):
    return "-inf" if x == MINUS_INFINITY else x


def _ideal_strings(ideal):
    return [str(p) for p in ideal.groebner_polynomials()]


class Interpreter:
    def __init__(self, seed, trials=50):
        self.seed = seed
        self.rng = random.Random(seed)
        self.trials = trials
        self.ring = None
        self.env = {}

    def run(self, script):
        results, status = [], EXIT_OK
        for stmt in script.statements:
            try:
                res = self.execute(stmt)
            except (AlgebraError, ValueError) as exc:
                if isinstance(exc, ConsistencyError):
                    raise
                raise SemanticError(f"in `{stmt}`: {exc}") from exc
            if res is None:
                continue
            res = {"statement": str(stmt), **res}
            results.append(res)
            if res.get("violation"):
                raise ConsistencyError(f"theorem violated in {stmt}: {json.dumps(res, sort_keys=True, default=str)}")
            if not res.get("ok", True) and isinstance(stmt, AssertStmt):
                status = EXIT_ASSERT
        return results, status

    def execute(self, stmt):
        return getattr(self, "_" + type(stmt).__name__)(stmt)

    # declarations
    def _RingStmt(self, s):
        self.ring = PolynomialRing(s.field, s.names)

    def _IdealStmt(self, s):
        self.env[s.name] = ("ideal", s.expr, comb.evaluate(s.expr, self.ring))

    def _RandomStmt(self, s):
        n = self.ring.nvars
        atoms = [comb.random_linear_ideal(self.ring, self.rng.randint(1, n), self.rng) for _ in range(s.size)]
        node = comb.Product if s.kind == "product" else comb.Meet
        expr = comb.Atom(atoms[0])
        for a in atoms[1:]:
            expr = node(expr, comb.Atom(a))
        self.env[s.name] = ("ideal", expr, comb.evaluate(expr, self.ring))
        return {"command": "random", "name": s.name, "expression": comb.to_text(expr)}

    def _ArrangementStmt(self, s):
        A = arr.HyperplaneArrangement(self.ring, list(s.forms))
        self.env[s.name] = ("arrangement", A, None)

    def _ActionStmt(self, s):
        self.env[s.name] = ("action", s.build(), None)

    # helpers
    def _module_of(self, name):
        kind, obj, ideal = self.env[name]
        if kind == "ideal":
            return ideal
        if kind == "arrangement":
            return arr.derivation_module(obj).submodule
        return inv.graph_ideal(obj)

    # commands
    def _ShowStmt(self, s):
        if s.kind == "class":
            atoms = []
            for name in s.names:
                expr = self.env[name][1]
                if not (isinstance(expr, comb.Atom) and isinstance(expr.ideal, comb.LinearIdeal)):
                    raise SemanticError(f"{name} is not a linear ideal")
                atoms.append(expr.ideal)
            members = comb.enumerate_Cr(atoms, s.level, self.ring)
            listed = sorted(_ideal_strings(I) for I in members)
            return {"command": "show class", "level": s.level, "count": len(listed), "ideals": listed}
        name = s.names[0]
        M = self._module_of(name)
        if s.kind == "betti":
            table = betti_table(M)
            return {"command": "show betti", "name": name, "betti": table.to_json_obj()["betti"], "text": table.to_text()}
        if s.kind == "reg":
            return {"command": "show reg", "name": name, "reg": _num(regularity(M))}
        return {"command": "show gens", "name": name, "gens": [str(g) for g in M.display_generators()]}

    def _AssertStmt(self, s):
        value = regularity(self._module_of(s.name))
        ok = {
            "<=": value <= s.value,
            "==": value == s.value,
            ">=": value >= s.value,
            "<": value < s.value,
            ">": value > s.value,
        }[s.op]
        return {"command": "assert", "value": _num(value), "ok": ok}

    def _VerifyStmt(self, s):
        kind, obj, ideal = self.env[s.name]
        handler = getattr(self, "_verify_" + s.kind)
        out = handler(s, obj, ideal)
        out["command"] = f"verify {s.kind}"
        out["name"] = s.name
        return out

    def _verify_hypersurface(self, s, expr, ideal):
        M = PresentedModule.quotient(ideal)
        form = s.form
        if form is None:
            seq = lab.find_filter_regular_sequence([M], trials=self.trials, rng=self.rng)
            form = seq.forms[0]
        rep = lab.verify_hypersurface_identity(M, form)
        obj = rep.to_json_obj()
        obj["form"] = str(form)
        obj["violation"] = not rep.ok
        return obj

    def _verify_systems(self, s, expr, ideal):
        try:
            rep = comb.verify_r_regularity(expr)
        except ValueError as exc:
            raise SemanticError(f"{s.name}: {exc}") from exc
        obj = rep.to_json_obj()
        obj["regularity"] = _num(obj["regularity"])
        obj["violation"] = not rep.ok
        return obj

    def _verify_derivation_bound(self, s, A, _):
        D = arr.derivation_module(A)
        reg = D.regularity()
        incl = arr.deletion_inclusions(A, D) if A.d >= 2 else []
        bound = A.d - 1
        ok = (A.d < 2 or reg <= bound) and all(incl)
        cls = arr.classify(A)
        out = {"d": A.d, "n": A.n, "reg": _num(reg), "bound": bound, "deletion_inclusions": incl,
               "classification": cls, "ok": ok, "violation": not ok}
        if cls["linearly_general"] and A.d >= A.n + 1:
            out["general_position_value"] = A.d - A.n
            out["violation"] = out["violation"] or reg != A.d - A.n
        return out

    def _verify_approx(self, s, expr, ideal):
        pairs = comb.decompose(expr)
        if not all(p.verified for p in pairs):
            return {"ok": False, "violation": True, "reason": "decomposition inclusions failed"}
        system = comb.cor_m_system(expr)
        verdict = lab.verify_approximation_system(system)
        if not verdict.ok:
            return {"ok": True, "applicable": False, "violations": verdict.violations}
        rep = lab.certified_regularity_bound(system)
        obj = rep.to_json_obj()
        obj["applicable"] = True
        obj["violation"] = not rep.ok
        return obj

    def _verify_coapprox(self, s, expr, ideal):
        parts = []
        for x in self.ring.gens():
            I = IdealHandle(self.ring, [x])
            parts.append((ideal.scaled(I), I))
        rep = lab.certified_regularity_bound(lab.CoApproximationSystem(ideal, parts, 1))
        obj = rep.to_json_obj()
        obj["violation"] = not rep.ok
        return obj

    def _verify_rho_chain(self, s, action, _):
        if all(d == 2 for d in action.divisors) and action.field.modulus == 0 and len(action.divisors) <= inv.Z2N_MAX:
            rep = inv.z2n_certificate(action)
        else:
            rep = inv.invariant_report(action)
        obj = rep.to_json_obj()
        obj["reg_b"] = _num(obj["reg_b"])
        obj["ok"] = rep.chain_ok and all(rep.checks.values())
        obj["violation"] = not obj["ok"]
        return obj


# --------------------------------------------------------------------------
# rendering


def render_text(results):
    lines = []
    for r in results:
        cmd = r["command"]
        if cmd == "show betti":
            lines.append(f"betti {r['name']}:")
            lines.append(r["text"])
        elif cmd == "show reg":
            lines.append(f"reg {r['name']} = {r['reg']}")
        elif cmd == "show gens":
            lines.append(f"gens {r['name']} = <{', '.join(r['gens'])}>")
        elif cmd == "show class":
            lines.append(f"class {r['level']}: {r['count']} ideals")
            lines.extend(f"  <{', '.join(g)}>" for g in r["ideals"])
        elif cmd == "random":
            lines.append(f"{r['name']} = {r['expression']}")
        elif cmd == "assert":
            lines.append(f"{'ok' if r['ok'] else 'FAILED'}: {r['statement']} (value {r['value']})")
        else:
            body = {k: v for k, v in r.items() if k not in ("command", "statement", "name", "violation")}
            status = "ok" if r.get("ok") else "FAILED"
            lines.append(f"{status}: {cmd} {r['name']} {json.dumps(body, sort_keys=True)}")
    return "\n".join(lines) + ("\n" if lines else "")


def render_json(seed, results, status):
    clean = [{k: v for k, v in r.items() if k != "text"} for r in results]
    return json.dumps({"seed": seed, "status": status, "results": clean}, sort_keys=True, indent=2) + "\n"


def run_text(text, seed=0, fmt="json", field_override=None, trials=50):
    """Parse and execute a script; returns (exit_code, output)."""
    try:
        script = parse(text, field_override)
    except SyntaxErrorAt as exc:
        return EXIT_ERROR, f"syntax error at {exc}\n"
    except SemanticError as exc:
        return EXIT_ERROR, f"error at {exc.line}:{exc.column}: {exc}\n"
    interp = Interpreter(seed, trials)
    try:
        results, status = interp.run(script)
    except ConsistencyError as exc:
        return EXIT_CONSISTENCY, f"consistency error: {exc}\n"
    except (SemanticError, AlgebraError, ValueError) as exc:
        return EXIT_ERROR, f"error: {exc}\n"
    if fmt == "json":
        return status, render_json(seed, results, status)
    return status, render_text(results)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="approxreg", description="Run a commutative algebra script.")
    ap.add_argument("script", help="script file, or - for standard input")
    ap.add_argument("--seed", type=int, default=None, help="random seed (recorded in the report)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--field-override", default=None, help="replace every field, e.g. GF(32003)")
    ap.add_argument("--trials", type=int, default=50, help="attempts per filter-regular form")
    args = ap.parse_args(argv)
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**63)
    override = None
    if args.field_override:
        try:
            override = field_from_name(args.field_override)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    if args.script == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.script, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
    code, out = run_text(text, seed, args.format, override, args.trials)
    stream = sys.stdout if code in (EXIT_OK, EXIT_ASSERT) else sys.stderr
    stream.write(out)
    if args.format == "text" and args.seed is None and code in (EXIT_OK, EXIT_ASSERT):
        print(f"seed {seed}")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
