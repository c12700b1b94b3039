"""Terms, formulas, sequents and proof scripts, with an s-expression reader and printer.

Concrete grammar::

    term    ::= 0 | (s T) | IDENT | (elemN NAT) | (elemZ INT)
    atom    ::= (N T) | (p T T) | (= T T) | (rel NAME T T)
    formula ::= true | false | (not F) | (and F F) | (or F F) | (imp F F)
              | (ex IDENT F) | (all IDENT F)

``;`` starts a comment running to the end of the line.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .elements import MElement

# ---------------------------------------------------------------------------
# Errors and s-expressions


class ParseError(ValueError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class SAtom:
    text: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


SExpr = Union[SAtom, SList]


def _tokens(text: str) -> Iterator[tuple[str, int, int]]:
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
        elif c.isspace():
            col, i = col + 1, i + 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            col, i = col + 1, i + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            yield text[i:j], line, col
            col, i = col + (j - i), j


def read_sexprs(text: str) -> list[SExpr]:
    """Read every top-level s-expression in ``text``."""
    stack: list[tuple[list, int, int]] = []
    out: list[SExpr] = []
    for tok, line, col in _tokens(text):
        if tok == "(":
            stack.append(([], line, col))
        elif tok == ")":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else out).append(node)
        else:
            atom = SAtom(tok, line, col)
            (stack[-1][0] if stack else out).append(atom)
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unclosed '('", l0, c0)
    return out


def read_sexpr(text: str) -> SExpr:
    items = read_sexprs(text)
    if len(items) != 1:
        line, col = (items[1].line, items[1].col) if len(items) > 1 else (1, 1)
        raise ParseError(f"expected exactly one expression, found {len(items)}", line, col)
    return items[0]


def sexpr_text(sx: SExpr) -> str:
    if isinstance(sx, SAtom):
        return sx.text
    return "(" + " ".join(sexpr_text(x) for x in sx.items) + ")"


def slist(*items: SExpr | str) -> SList:
    """Build an SList, wrapping plain strings as atoms."""
    return SList(tuple(SAtom(x) if isinstance(x, str) else x for x in items))


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Const:
    """A model element, used only inside intermediate decision-procedure formulas."""

    elem: MElement


Term = Union[Var, Zero, Succ, Const]
ZERO = Zero()


def numeral(n: int, base: Term = ZERO) -> Term:
    """``s^n(base)``."""
    t = base
    for _ in range(n):
        t = Succ(t)
    return t


def unwind(t: Term) -> tuple[int, Term]:
    """Split ``s^n(b)`` into ``(n, b)`` with ``b`` not a successor."""
    n = 0
    while isinstance(t, Succ):
        n, t = n + 1, t.arg
    return n, t


def term_vars(t: Term) -> frozenset[str]:
    _, base = unwind(t)
    return frozenset((base.name,)) if isinstance(base, Var) else frozenset()


def subst_term(t: Term, theta: Mapping[str, Term]) -> Term:
    n, base = unwind(t)
    if isinstance(base, Var) and base.name in theta:
        return numeral(n, theta[base.name])
    return t


def term_sexpr(t: Term) -> str:
    n, base = unwind(t)
    if isinstance(base, Var):
        s = base.name
    elif isinstance(base, Zero):
        s = "0"
    else:
        s = base.elem.sexpr()
    return "(s " * n + s + ")" * n


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Pred:
    """Predicate atom such as ``N(t)``, ``p(t,u)`` or ``le(t,u)``."""

    name: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    """Atom over a named partial bijection."""

    name: str
    left: Term
    right: Term


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Pred, Eq, Rel, Top, Bot, Not, And, Or, Imp, Exists, Forall]
TRUE = Top()
FALSE = Bot()
ATOMS = (Pred, Eq, Rel, Top, Bot)
BINARY = {And: "and", Or: "or", Imp: "imp"}
QUANT = {Exists: "ex", Forall: "all"}


def conj(*fs: Formula) -> Formula:
    """Right-nested conjunction; ``true`` when empty."""
    if not fs:
        return TRUE
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return FALSE
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def forall_all(names: Sequence[str], body: Formula) -> Formula:
    for v in reversed(names):
        body = Forall(v, body)
    return body


def exists_all(names: Sequence[str], body: Formula) -> Formula:
    for v in reversed(names):
        body = Exists(v, body)
    return body


def conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, Pred):
        return f.args
    if isinstance(f, (Eq, Rel)):
        return (f.left, f.right)
    return ()


@functools.lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, ATOMS):
        out: frozenset[str] = frozenset()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Imp)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f: Formula) -> frozenset[str]:
    """Free and bound variable names."""
    if isinstance(f, ATOMS):
        return free_vars(f)
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, (And, Or, Imp)):
        return all_vars(f.left) | all_vars(f.right)
    return all_vars(f.body) | {f.var}


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """First of ``base'``, ``base''``, ... not in ``avoid``."""
    avoid = set(avoid)
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def fresh_vars(bases: Sequence[str], avoid: Iterable[str]) -> tuple[str, ...]:
    """Pick distinct names, keeping each base name itself when it is free to use."""
    taken = set(avoid)
    out = []
    for b in bases:
        name = b if b not in taken else fresh_name(b, taken)
        taken.add(name)
        out.append(name)
    return tuple(out)


def substitute(f: Formula, theta: Mapping[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    theta = {k: v for k, v in theta.items() if v != Var(k)}
    if not theta:
        return f
    return _subst(f, theta)


def _subst(f: Formula, theta: Mapping[str, Term]) -> Formula:
    if isinstance(f, Pred):
        return Pred(f.name, tuple(subst_term(t, theta) for t in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, theta), subst_term(f.right, theta))
    if isinstance(f, Rel):
        return Rel(f.name, subst_term(f.left, theta), subst_term(f.right, theta))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, theta))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_subst(f.left, theta), _subst(f.right, theta))
    fv = free_vars(f.body)
    live = {k: t for k, t in theta.items() if k != f.var and k in fv}
    if not live:
        return f
    incoming = frozenset().union(*(term_vars(t) for t in live.values()))
    var, body = f.var, f.body
    if var in incoming:
        new = fresh_name(var, incoming | all_vars(body) | set(live))
        body = _subst(body, {var: Var(new)})
        var = new
    return type(f)(var, _subst(body, live))


# ---------------------------------------------------------------------------
# Printing


def formula_sexpr(f: Formula) -> SExpr:
    return read_sexpr(print_formula(f))


@functools.lru_cache(maxsize=None)
def print_formula(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Pred):
        return "(" + " ".join([f.name, *(term_sexpr(t) for t in f.args)]) + ")"
    if isinstance(f, Eq):
        return f"(= {term_sexpr(f.left)} {term_sexpr(f.right)})"
    if isinstance(f, Rel):
        return f"(rel {f.name} {term_sexpr(f.left)} {term_sexpr(f.right)})"
    if isinstance(f, Not):
        return f"(not {print_formula(f.body)})"
    if isinstance(f, (And, Or, Imp)):
        return f"({BINARY[type(f)]} {print_formula(f.left)} {print_formula(f.right)})"
    return f"({QUANT[type(f)]} {f.var} {print_formula(f.body)})"


# ---------------------------------------------------------------------------
# Parsing

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
KEYWORDS = frozenset({"true", "false", "not", "and", "or", "imp", "ex", "all", "=", "rel", "s",
                      "elemN", "elemZ"})
# Predicate symbols accepted by default: N, the ordinary p, and the order used by the
# extended system (written ``le``).
DEFAULT_PREDICATES: Mapping[str, int] = {"N": 1, "p": 2, "le": 2}


def _err(sx: SExpr, msg: str) -> ParseError:
    return ParseError(msg, sx.line, sx.col)


def term_from_sexpr(sx: SExpr) -> Term:
    if isinstance(sx, SAtom):
        if sx.text == "0":
            return ZERO
        if IDENT.match(sx.text) and sx.text not in KEYWORDS:
            return Var(sx.text)
        raise _err(sx, f"bad term {sx.text!r}")
    if not sx.items or not isinstance(sx.items[0], SAtom):
        raise _err(sx, "bad term")
    head = sx.items[0].text
    if head == "s":
        if len(sx.items) != 2:
            raise _err(sx, "s expects one argument")
        return Succ(term_from_sexpr(sx.items[1]))
    if head in ("elemN", "elemZ"):
        if len(sx.items) != 2 or not isinstance(sx.items[1], SAtom):
            raise _err(sx, f"{head} expects one integer")
        try:
            k = int(sx.items[1].text)
        except ValueError:
            raise _err(sx.items[1], "expected an integer") from None
        if head == "elemN":
            if k < 0:
                raise _err(sx.items[1], "elemN index must be non-negative")
            return Const(MElement(1, k))
        return Const(MElement(2, k))
    raise _err(sx, f"unknown term constructor {head!r}")


def formula_from_sexpr(sx: SExpr, predicates: Mapping[str, int] = DEFAULT_PREDICATES) -> Formula:
    if isinstance(sx, SAtom):
        if sx.text == "true":
            return TRUE
        if sx.text == "false":
            return FALSE
        raise _err(sx, f"expected a formula, found {sx.text!r}")
    if not sx.items or not isinstance(sx.items[0], SAtom):
        raise _err(sx, "expected a formula")
    head, args = sx.items[0].text, sx.items[1:]

    def arity(k: int) -> None:
        if len(args) != k:
            raise _err(sx, f"{head} expects {k} arguments, got {len(args)}")

    def sub(x: SExpr) -> Formula:
        return formula_from_sexpr(x, predicates)

    if head == "not":
        arity(1)
        return Not(sub(args[0]))
    if head in ("and", "or", "imp"):
        arity(2)
        cls = {"and": And, "or": Or, "imp": Imp}[head]
        return cls(sub(args[0]), sub(args[1]))
    if head in ("ex", "all"):
        arity(2)
        v = args[0]
        if not isinstance(v, SAtom) or not IDENT.match(v.text) or v.text in KEYWORDS:
            raise _err(v, "expected a bound variable")
        return (Exists if head == "ex" else Forall)(v.text, sub(args[1]))
    if head == "=":
        arity(2)
        return Eq(term_from_sexpr(args[0]), term_from_sexpr(args[1]))
    if head == "rel":
        arity(3)
        if not isinstance(args[0], SAtom):
            raise _err(args[0], "expected a relation name")
        return Rel(args[0].text, term_from_sexpr(args[1]), term_from_sexpr(args[2]))
    if head in predicates:
        arity(predicates[head])
        return Pred(head, tuple(term_from_sexpr(a) for a in args))
    raise _err(sx.items[0], f"unknown predicate symbol {head!r}")


def parse_formula(text: str, predicates: Mapping[str, int] = DEFAULT_PREDICATES) -> Formula:
    return formula_from_sexpr(read_sexpr(text), predicates)


def parse_term(text: str) -> Term:
    return term_from_sexpr(read_sexpr(text))


# ---------------------------------------------------------------------------
# Sequents and productions


def formula_key(f: Formula) -> str:
    return print_formula(f)


@dataclass(frozen=True)
class Sequent:
    """``ante |- succ`` with both sides stored sorted and duplicate-free."""

    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ante", _canon(self.ante))
        object.__setattr__(self, "succ", _canon(self.succ))

    def free_vars(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for f in self.ante + self.succ:
            out |= free_vars(f)
        return out

    def substitute(self, theta: Mapping[str, Term]) -> Sequent:
        return Sequent(tuple(substitute(f, theta) for f in self.ante),
                       tuple(substitute(f, theta) for f in self.succ))

    def __str__(self) -> str:
        return print_sequent(self)


def _canon(fs: Iterable[Formula]) -> tuple:
    return tuple(sorted(set(fs), key=formula_key))


def print_sequent(s: Sequent) -> str:
    ante = " ".join(print_formula(f) for f in s.ante)
    succ = " ".join(print_formula(f) for f in s.succ)
    return f"(seq (ante{' ' + ante if ante else ''}) (succ{' ' + succ if succ else ''}))"


def sequent_from_sexpr(sx: SExpr, predicates: Mapping[str, int] = DEFAULT_PREDICATES) -> Sequent:
    if (not isinstance(sx, SList) or len(sx.items) != 3 or not isinstance(sx.items[0], SAtom)
            or sx.items[0].text != "seq"):
        raise _err(sx, "expected (seq (ante ...) (succ ...))")
    sides = []
    for part, tag in zip(sx.items[1:], ("ante", "succ")):
        if (not isinstance(part, SList) or not part.items or not isinstance(part.items[0], SAtom)
                or part.items[0].text != tag):
            raise _err(part, f"expected ({tag} ...)")
        sides.append(tuple(formula_from_sexpr(x, predicates) for x in part.items[1:]))
    return Sequent(sides[0], sides[1])


def parse_sequent(text: str, predicates: Mapping[str, int] = DEFAULT_PREDICATES) -> Sequent:
    return sequent_from_sexpr(read_sexpr(text), predicates)


@dataclass(frozen=True)
class Production:
    """``pred(args)`` follows from the listed premises ``(symbol, terms)``."""

    pred: str
    args: tuple
    premises: tuple = ()

    @property
    def variables(self) -> tuple[str, ...]:
        """Production variables in order of first occurrence."""
        seen: list[str] = []
        for t in self.args + tuple(t for _, ts in self.premises for t in ts):
            for v in sorted(term_vars(t)):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def conclusion(self, theta: Mapping[str, Term]) -> Pred:
        return Pred(self.pred, tuple(subst_term(t, theta) for t in self.args))

    def premise_atoms(self, theta: Mapping[str, Term]) -> list[Pred]:
        return [Pred(q, tuple(subst_term(t, theta) for t in ts)) for q, ts in self.premises]


# ---------------------------------------------------------------------------
# Proof scripts


@dataclass(frozen=True)
class ProofNode:
    id: int
    sequent: Sequent
    rule: str
    args: tuple = ()
    children: tuple = ()


@dataclass(frozen=True, eq=False)
class ProofScript:
    """A finite derivation tree plus a bud-to-companion map."""

    nodes: Mapping[int, ProofNode]
    root: int
    buds: Mapping[int, int] = field(default_factory=dict)
    system: tuple = ("N",)

    def parent_map(self) -> dict[int, int]:
        return {c: n.id for n in self.nodes.values() for c in n.children}

    def ordered_ids(self) -> list[int]:
        return sorted(self.nodes)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProofScript) and print_proof(self) == print_proof(other)

    def __hash__(self) -> int:
        return hash(print_proof(self))


def print_proof(script: ProofScript) -> str:
    lines = []
    if tuple(script.system) != ("N",):
        lines.append("(system " + " ".join(script.system) + ")")
    lines.append(f"(root {script.root})")
    for nid in script.ordered_ids():
        n = script.nodes[nid]
        rule = " ".join([n.rule, *(sexpr_text(a) for a in n.args)])
        kids = " ".join(str(c) for c in n.children)
        lines.append(f"(node {nid} {print_sequent(n.sequent)}\n  (rule {rule})\n"
                     f"  (children{' ' + kids if kids else ''}))")
    for b in sorted(script.buds):
        lines.append(f"(bud {b} {script.buds[b]})")
    return "\n".join(lines) + "\n"


def _int_atom(sx: SExpr, what: str) -> int:
    if isinstance(sx, SAtom):
        try:
            value = int(sx.text)
            if value >= 0:
                return value
        except ValueError:
            pass
    raise _err(sx, f"expected a non-negative integer {what}")


def parse_proof(text: str, predicates: Mapping[str, int] = DEFAULT_PREDICATES) -> ProofScript:
    """Parse and structurally validate a proof script."""
    nodes: dict[int, ProofNode] = {}
    where: dict[int, SExpr] = {}
    buds: dict[int, int] = {}
    bud_where: dict[int, SExpr] = {}
    root: int | None = None
    system: tuple = ("N",)
    for form in read_sexprs(text):
        if not isinstance(form, SList) or not form.items or not isinstance(form.items[0], SAtom):
            raise _err(form, "expected a top-level form")
        head = form.items[0].text
        if head == "node":
            if len(form.items) != 5:
                raise _err(form, "expected (node ID (seq ...) (rule ...) (children ...))")
            nid = _int_atom(form.items[1], "node id")
            if nid in nodes:
                raise _err(form, f"duplicate node id {nid}")
            seq = sequent_from_sexpr(form.items[2], predicates)
            rule_sx, kids_sx = form.items[3], form.items[4]
            if (not isinstance(rule_sx, SList) or len(rule_sx.items) < 2
                    or rule_sx.items[0] != SAtom("rule") or not isinstance(rule_sx.items[1], SAtom)):
                raise _err(rule_sx, "expected (rule NAME ARGS...)")
            if (not isinstance(kids_sx, SList) or not kids_sx.items
                    or kids_sx.items[0] != SAtom("children")):
                raise _err(kids_sx, "expected (children ID...)")
            kids = tuple(_int_atom(k, "child id") for k in kids_sx.items[1:])
            nodes[nid] = ProofNode(nid, seq, rule_sx.items[1].text, tuple(rule_sx.items[2:]), kids)
            where[nid] = form
        elif head == "bud":
            if len(form.items) != 3:
                raise _err(form, "expected (bud BUD COMPANION)")
            b = _int_atom(form.items[1], "bud id")
            if b in buds:
                raise _err(form, f"bud {b} mapped twice")
            buds[b] = _int_atom(form.items[2], "companion id")
            bud_where[b] = form
        elif head == "root":
            if len(form.items) != 2:
                raise _err(form, "expected (root ID)")
            root = _int_atom(form.items[1], "root id")
        elif head == "system":
            names = []
            for x in form.items[1:]:
                if not isinstance(x, SAtom):
                    raise _err(x, "expected an inductive predicate name")
                names.append(x.text)
            system = tuple(names)
        else:
            raise _err(form.items[0], f"unknown top-level form {head!r}")
    if not nodes:
        raise ParseError("proof script has no nodes", 1, 1)

    parent: dict[int, int] = {}
    for nid, node in nodes.items():
        for c in node.children:
            if c not in nodes:
                raise _err(where[nid], f"dangling child id {c} in node {nid}")
            if c in parent:
                raise _err(where[nid], f"node {c} has two parents ({parent[c]} and {nid})")
            parent[c] = nid
    orphans = sorted(set(nodes) - set(parent))
    if root is None:
        if len(orphans) != 1:
            if not orphans:
                raise ParseError("cycle in child relation: no root node", 1, 1)
            raise ParseError(f"several root candidates {orphans}", 1, 1)
        root = orphans[0]
    if root not in nodes:
        raise ParseError(f"root {root} is not a node", 1, 1)
    if root in parent:
        raise _err(where[root], f"root {root} has a parent")
    seen, stack = set(), [root]
    while stack:
        nid = stack.pop()
        if nid in seen:
            raise _err(where[nid], f"cycle in child relation at node {nid}")
        seen.add(nid)
        stack.extend(nodes[nid].children)
    missing = sorted(set(nodes) - seen)
    if missing:
        raise _err(where[missing[0]], f"cycle in child relation or unreachable node {missing[0]}")

    for nid, node in nodes.items():
        if node.rule == "bud" and nid not in buds:
            raise _err(where[nid], f"bud {nid} without companion")
    for b, c in buds.items():
        if b not in nodes:
            raise _err(bud_where[b], f"bud map names missing node {b}")
        if nodes[b].rule != "bud" or nodes[b].children:
            raise _err(bud_where[b], f"node {b} is not a bud leaf")
        if c not in nodes:
            raise _err(bud_where[b], f"bud {b} references missing companion {c}")
        if nodes[c].rule == "bud":
            raise _err(bud_where[b], f"companion {c} of bud {b} is itself a bud")
    return ProofScript(nodes, root, buds, system)



class ProofBuilder:
    """Incremental construction of a ProofScript; node ids are allocated in call order."""

    def __init__(self, system: Sequence[str] = ("N",)) -> None:
        self.nodes: dict[int, ProofNode] = {}
        self.buds: dict[int, int] = {}
        self.system = tuple(system)
        self._next = 0

    def reserve(self) -> int:
        nid, self._next = self._next, self._next + 1
        return nid

    def add(self, sequent: Sequent, rule: str, args: Sequence[str | SExpr | Formula] = (),
            children: Sequence[int] = (), nid: int | None = None) -> int:
        if nid is None:
            nid = self.reserve()
        parsed = tuple(_arg_sexpr(a) for a in args)
        self.nodes[nid] = ProofNode(nid, sequent, rule, parsed, tuple(children))
        return nid

    def bud(self, sequent: Sequent, companion: int) -> int:
        nid = self.add(sequent, "bud")
        self.buds[nid] = companion
        return nid

    def build(self, root: int) -> ProofScript:
        return ProofScript(dict(self.nodes), root, dict(self.buds), self.system)


def _arg_sexpr(a: str | SExpr | Formula) -> SExpr:
    if isinstance(a, (SAtom, SList)):
        return a
    if isinstance(a, str):
        return read_sexpr(a)
    return formula_sexpr(a)
