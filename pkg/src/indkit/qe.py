"""Quantifier elimination for the structure M and the decision procedure built on it.

Formulas over ``N``, ``p`` and ``=`` are first rewritten into atoms over named
partial bijections (``rel`` atoms). Existential quantifiers are then removed one
at a time from disjunctive normal form; element constants that appear along the
way are finally pushed into singleton identities or truth values.

Relation names are composable strings. ``A.B`` means ``A o B`` (apply ``B``
first) and a trailing ``~`` marks an inverse. Base names are ``id``, ``r0``
(the complement of ``p``), ``s<n>`` (the graph of ``x -> s^n x``), ``id[L]``
(identity on the single element with label ``L``) and anything registered on a
:class:`RelEnv`.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bijections import PartialBijection, RaySet, is_dyadic
from .elements import COMPS, MElement, element_of, parse_label
from .model import eval_ground, r0
from .syntax import (FALSE, TRUE, And, Bot, Const, Eq, Exists, Forall, Formula, Imp, Not, Or,
                     Pred, Rel, Term, Top, Var, Zero, all_vars, conj, disj, fresh_name,
                     free_vars, print_formula, substitute, unwind)

__all__ = [
    "RelEnv", "compose_name", "inverse_name", "translate", "eliminate_one",
    "eliminate_quantifiers", "eliminate_constants", "evaluate", "decide_sentence",
    "decide_with_trace", "definable_set", "check_induction_schema", "SchemaReport",
    "witness_scan", "witness_window", "window_scale", "show_formula", "to_dnf",
]

_SHIFT = re.compile(r"s([1-9][0-9]*)\Z")
_SINGLE = re.compile(r"id\[([NZ]-?[0-9]+)\]\Z")


# ---------------------------------------------------------------------------
# Relation names


def _factors(name: str) -> list[tuple[str, bool]]:
    out = []
    for part in name.split("."):
        inv = part.endswith("~")
        base = part[:-1] if inv else part
        if not base:
            raise ValueError(f"bad relation name {name!r}")
        # identities are their own inverses
        out.append((base, inv and not base.startswith("id")))
    return out


def _join(factors: Iterable[tuple[str, bool]]) -> str:
    parts = [b + ("~" if inv else "") for b, inv in factors if b != "id"]
    return ".".join(parts) or "id"


def compose_name(outer: str, inner: str) -> str:
    """Name of ``outer o inner``."""
    return _join(_factors(outer) + _factors(inner))


def inverse_name(name: str) -> str:
    return _join((b, not inv) for b, inv in reversed(_factors(name)))


def singleton_name(e: MElement) -> str:
    return f"id[{e.label()}]"


class RelEnv:
    """Resolves relation names to partial bijections, memoizing every name it sees.

    An environment is not shared between threads; each decision call makes its
    own unless one is passed in.
    """

    def __init__(self, extra: Mapping[str, PartialBijection] | None = None) -> None:
        self._base: dict[str, PartialBijection] = dict(extra or {})
        self._memo: dict[str, PartialBijection] = {}

    def register(self, name: str, rel: PartialBijection) -> None:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name == "id" or name == "r0" \
                or _SHIFT.match(name):
            raise ValueError(f"cannot register relation under name {name!r}")
        self._base[name] = rel
        self._memo.clear()

    def _base_rel(self, base: str) -> PartialBijection:
        if base in self._base:
            return self._base[base]
        if base == "id":
            return PartialBijection.identity(RaySet.universe())
        if base == "r0":
            return r0()
        m = _SHIFT.match(base)
        if m:
            return PartialBijection.shift(int(m.group(1)))
        m = _SINGLE.match(base)
        if m:
            return PartialBijection.identity(RaySet.finite([parse_label(m.group(1))]))
        raise KeyError(f"unknown relation {base!r}")

    def resolve(self, name: str) -> PartialBijection:
        hit = self._memo.get(name)
        if hit is not None:
            return hit
        fs = _factors(name)
        if len(fs) == 1:
            base, inv = fs[0]
            rel = self._base_rel(base)
            rel = rel.inverse() if inv else rel
        else:
            head = _join(fs[:1])
            rel = self.resolve(head).compose(self.resolve(_join(fs[1:])))
        self._memo[name] = rel
        return rel

    __call__ = resolve

    def diagonal(self, name: str) -> RaySet:
        return self.resolve(name).diagonal()


# ---------------------------------------------------------------------------
# Translation into relation atoms


def _fresh(avoid: set[str]) -> str:
    name = fresh_name("v", avoid)
    avoid.add(name)
    return name


def _var_eq(x: str, t: Term) -> Formula:
    """The relation atom for ``x = t`` with ``t`` of the form ``s^n b``."""
    n, base = unwind(t)
    if isinstance(base, Var):
        if n == 0:
            return Rel("id", Var(x), base)
        return Rel(f"s{n}", base, Var(x))
    elem = (MElement(1, 0) if isinstance(base, Zero) else base.elem).shift(n)
    return Rel(singleton_name(elem), Var(x), Var(x))


def _flatten(terms: Sequence[Term], avoid: set[str]) -> tuple[list[str], list[Formula], list[Term]]:
    """Replace non-variable arguments, left to right, by fresh variables."""
    names, defs, out = [], [], []
    for t in terms:
        if isinstance(t, Var):
            out.append(t)
            continue
        v = _fresh(avoid)
        names.append(v)
        defs.append(_var_eq(v, t))
        out.append(Var(v))
    return names, defs, out


def _translate_atom(f: Formula, avoid: set[str]) -> Formula:
    if isinstance(f, Pred):
        if f.name == "N":
            return TRUE
        if f.name != "p":
            raise ValueError(f"predicate {f.name!r} has no translation into relations")
        a, b = f.args
        names, defs, (x, y) = _flatten([a, b], avoid)
        core: Formula = Not(Rel("r0", x, y))
    elif isinstance(f, Eq):
        if isinstance(f.left, Var):
            return _var_eq(f.left.name, f.right)
        if isinstance(f.right, Var):
            return _var_eq(f.right.name, f.left)
        names, defs, (x, y) = _flatten([f.left, f.right], avoid)
        core = Rel("id", x, y)
    else:
        assert isinstance(f, Rel)
        names, defs, (x, y) = _flatten([f.left, f.right], avoid)
        core = Rel(f.name, x, y)
    body = conj(*defs, core)
    for v in reversed(names):
        body = Exists(v, body)
    return body


def translate(f: Formula) -> Formula:
    """Equivalent formula whose atoms are all ``rel`` atoms over variables or ``true``.

    ``N`` becomes ``true``, ``p`` becomes a negated ``r0`` atom and equations
    become identity, shift or singleton-identity atoms. Compound arguments are
    bound to fresh existential variables.
    """
    avoid = set(all_vars(f))

    def go(g: Formula) -> Formula:
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, (Pred, Eq, Rel)):
            return _translate_atom(g, avoid)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Imp)):
            return type(g)(go(g.left), go(g.right))
        return type(g)(g.var, go(g.body))

    return go(f)


# ---------------------------------------------------------------------------
# Normal forms

Literal = Formula  # a Rel atom or its negation


def _nnf(f: Formula, neg: bool = False) -> Formula:
    if isinstance(f, Top):
        return FALSE if neg else TRUE
    if isinstance(f, Bot):
        return TRUE if neg else FALSE
    if isinstance(f, Eq):
        f = Rel("id", f.left, f.right)
    if isinstance(f, Rel):
        return Not(f) if neg else f
    if isinstance(f, Not):
        return _nnf(f.body, not neg)
    if isinstance(f, Imp):
        f = Or(Not(f.left), f.right)
    if isinstance(f, And):
        cls = Or if neg else And
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Or):
        cls = And if neg else Or
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    raise ValueError(f"unexpected formula in normal-form conversion: {print_formula(f)}")


def _atom_of(lit: Literal) -> tuple[Rel, bool]:
    return (lit.body, False) if isinstance(lit, Not) else (lit, True)


def _add_clause(out: list[tuple[Literal, ...]], clause: tuple[Literal, ...]) -> None:
    if clause not in out:
        out.append(clause)


def _dnf(f: Formula) -> list[tuple[Literal, ...]]:
    if isinstance(f, Top):
        return [()]
    if isinstance(f, Bot):
        return []
    if isinstance(f, Or):
        out: list[tuple[Literal, ...]] = []
        for c in _dnf(f.left) + _dnf(f.right):
            _add_clause(out, c)
        return out
    if isinstance(f, And):
        out = []
        for a, b in itertools.product(_dnf(f.left), _dnf(f.right)):
            merged = list(a)
            for lit in b:
                if lit not in merged:
                    merged.append(lit)
            pos = {_atom_of(l)[0] for l in merged if _atom_of(l)[1]}
            if any(not s and a in pos for a, s in map(_atom_of, merged)):
                continue
            _add_clause(out, tuple(merged))
        return out
    return [(f,)]


def to_dnf(f: Formula) -> list[tuple[Literal, ...]]:
    """Disjunctive normal form of a quantifier-free formula as a list of clauses."""
    return _dnf(_nnf(f))


def _balanced(cls: type, items: Sequence[Formula], empty: Formula) -> Formula:
    # Balanced trees keep recursion depth logarithmic for long clause lists.
    if not items:
        return empty
    if len(items) == 1:
        return items[0]
    mid = len(items) // 2
    return cls(_balanced(cls, items[:mid], empty), _balanced(cls, items[mid:], empty))


def _from_dnf(clauses: Sequence[Sequence[Literal]]) -> Formula:
    return _balanced(Or, [_balanced(And, list(c), TRUE) for c in clauses], FALSE)


# ---------------------------------------------------------------------------
# One elimination step


@dataclass
class StepRecord:
    var: str
    case: str
    before: str
    after: str

    def to_dict(self) -> dict:
        return {"var": self.var, "case": self.case, "before": self.before, "after": self.after}


def _orient(lit: Literal, x: str) -> Literal:
    """Put ``x`` in the second position of a mixed literal."""
    atom, pos = _atom_of(lit)
    if atom.left == Var(x) and atom.right != Var(x):
        atom = Rel(inverse_name(atom.name), atom.right, atom.left)
    return atom if pos else Not(atom)


def _mentions(atom: Rel, x: str) -> bool:
    return Var(x) in (atom.left, atom.right)


def eliminate_one(x: str, literals: Sequence[Literal], env: RelEnv,
                  record: list[StepRecord] | None = None) -> Formula:
    """Quantifier-free equivalent of ``exists x`` over a conjunction of literals."""
    lits = [_orient(l, x) for l in literals]
    before = print_formula(Exists(x, conj(*literals)))
    anchor = next((l for l in lits if isinstance(l, Rel) and l.right == Var(x)
                   and l.left != Var(x)), None)
    if anchor is not None:
        a, r1 = anchor.left, anchor.name
        out: list[Formula] = [Rel(compose_name(inverse_name(r1), r1), a, a)]
        for lit in lits:
            if lit is anchor:
                continue
            atom, pos = _atom_of(lit)
            if not _mentions(atom, x):
                new = atom
            elif atom.left == Var(x):  # diagonal R(x, x)
                new = Rel(compose_name(inverse_name(r1), compose_name(atom.name, r1)), a, a)
            else:
                new = Rel(compose_name(inverse_name(r1), atom.name), atom.left, a)
            out.append(new if pos else Not(new))
        result, case = conj(*out), "1"
    else:
        rest, mixed = [], []
        x_set = RaySet.universe()
        for lit in lits:
            atom, pos = _atom_of(lit)
            if not _mentions(atom, x):
                rest.append(lit)
            elif atom.left == Var(x):
                d = env.diagonal(atom.name)
                x_set = x_set & d if pos else x_set - d
            else:
                assert not pos
                mixed.append(lit)
        if x_set.is_finite():
            options = [conj(*(substitute(m, {x: Const(u)}) for m in mixed))
                       for u in x_set.elements()]
            result, case = conj(*rest, disj(*options) if options else FALSE), "2.1"
        else:
            result, case = conj(*rest), "2.2"
    if record is not None:
        record.append(StepRecord(x, case, before, print_formula(result)))
    return result


Clause = frozenset  # of literals


def _negate(lit: Literal) -> Literal:
    return lit.body if isinstance(lit, Not) else Not(lit)


def _simplify_literal(lit: Literal, env: RelEnv) -> Formula:
    """``true``/``false`` when the literal's value does not depend on its variables."""
    atom, pos = _atom_of(lit)
    value = None
    rel = env.resolve(atom.name)
    if _ground(atom.left) and _ground(atom.right):
        value = rel.holds(_elem(atom.left), _elem(atom.right))
    elif rel.is_empty():
        value = False
    elif atom.left == atom.right:
        d = rel.diagonal()
        value = False if d.is_empty() else True if d.is_universe() else None
    if value is None:
        return lit
    return TRUE if value == pos else FALSE


def _prune(clauses: Iterable[Clause]) -> list[Clause]:
    """Drop duplicate and subsumed clauses."""
    kept: list[Clause] = []
    for c in sorted(set(clauses), key=lambda c: (len(c), sorted(map(print_formula, c)))):
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _and(a: list[Clause], b: list[Clause]) -> list[Clause]:
    out = []
    for c, d in itertools.product(a, b):
        u = c | d
        if not any(_negate(l) in u for l in u):
            out.append(u)
    return _prune(out)


def _not(d: list[Clause]) -> list[Clause]:
    out: list[Clause] = [frozenset()]
    for c in d:
        out = _and(out, [frozenset({_negate(l)}) for l in c])
    return out


def _clauses(f: Formula, env: RelEnv, simplify: bool = True) -> list[Clause]:
    """DNF of a quantifier-free formula, with trivial literals evaluated when ``simplify``."""
    if isinstance(f, Top):
        return [frozenset()]
    if isinstance(f, Bot):
        return []
    if isinstance(f, Eq):
        f = Rel("id", f.left, f.right)
    if isinstance(f, Rel):
        lit = _simplify_literal(f, env) if simplify else f
        return _clauses(lit, env) if isinstance(lit, (Top, Bot)) else [frozenset({lit})]
    if isinstance(f, Not):
        return _not(_clauses(f.body, env, simplify))
    if isinstance(f, And):
        return _and(_clauses(f.left, env, simplify), _clauses(f.right, env, simplify))
    if isinstance(f, Or):
        return _prune(_clauses(f.left, env, simplify) + _clauses(f.right, env, simplify))
    if isinstance(f, Imp):
        return _prune(_not(_clauses(f.left, env, simplify)) + _clauses(f.right, env, simplify))
    raise ValueError(f"unexpected formula {print_formula(f)}")


def eliminate_quantifiers(f: Formula, env: RelEnv | None = None,
                          record: list[StepRecord] | None = None,
                          simplify: bool = True) -> Formula:
    """Quantifier-free equivalent of a translated formula (``rel`` atoms only).

    Works bottom-up on clause sets; each existential is pushed through the
    disjunction and removed clause by clause with :func:`eliminate_one`.
    With ``simplify`` off, no literal is evaluated early, which keeps the output
    in the literal shape of the rewrite steps but lets clause sets grow.
    """
    env = env or RelEnv()

    def go(g: Formula) -> list[Clause]:
        if isinstance(g, Pred):
            raise ValueError(f"untranslated atom {print_formula(g)}")
        if isinstance(g, Not):
            return _not(go(g.body))
        if isinstance(g, And):
            return _and(go(g.left), go(g.right))
        if isinstance(g, Or):
            return _prune(go(g.left) + go(g.right))
        if isinstance(g, Imp):
            return _prune(_not(go(g.left)) + go(g.right))
        if isinstance(g, Forall):
            return _not(go(Exists(g.var, Not(g.body))))
        if isinstance(g, Exists):
            out: list[Clause] = []
            body = go(g.body)
            stepped = False
            for c in body:
                if not any(g.var in free_vars(l) for l in c):
                    out.append(c)
                    continue
                stepped = True
                lits = sorted(c, key=print_formula)
                out += _clauses(eliminate_one(g.var, lits, env, record), env, simplify)
            out = _prune(out)
            if record is not None and not stepped:
                # the variable no longer occurs; the quantifier just drops
                record.append(StepRecord(g.var, "vacuous",
                                         print_formula(Exists(g.var, _from_dnf(_sorted(body)))),
                                         print_formula(_from_dnf(_sorted(out)))))
            return out
        return _clauses(g, env, simplify)

    return _from_dnf(_sorted(go(f)))


def _sorted(clauses: list[Clause]) -> list[list[Literal]]:
    return [sorted(c, key=print_formula) for c in clauses]


# ---------------------------------------------------------------------------
# Constants


def _ground(t: Term) -> bool:
    return not isinstance(unwind(t)[1], Var)


def _elem(t: Term) -> MElement:
    n, base = unwind(t)
    e = MElement(1, 0) if isinstance(base, Zero) else base.elem
    return e.shift(n)


def eliminate_constants(f: Formula, env: RelEnv, witness: str | None = None) -> Formula:
    """Remove element constants from a quantifier-free formula.

    Ground atoms become ``witness = witness`` or its negation (plain truth values
    when no witness variable is given). An atom relating a constant to a variable
    becomes a singleton identity on that variable, or false.
    """
    def truth(b: bool) -> Formula:
        if witness is None:
            return TRUE if b else FALSE
        w = Var(witness)
        return Eq(w, w) if b else Not(Eq(w, w))

    def go(g: Formula) -> Formula:
        if isinstance(g, Eq):
            g = Rel("id", g.left, g.right)
        if isinstance(g, Rel):
            gl, gr = _ground(g.left), _ground(g.right)
            if gl and gr:
                return truth(env.resolve(g.name).holds(_elem(g.left), _elem(g.right)))
            if gl or gr:
                rel = env.resolve(g.name) if gl else env.resolve(g.name).inverse()
                u, v = (g.left, g.right) if gl else (g.right, g.left)
                img = rel.apply(_elem(u))
                if img is None:
                    return Not(Eq(v, v))
                return Rel(singleton_name(img), v, v)
            return g
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Imp)):
            return type(g)(go(g.left), go(g.right))
        raise ValueError(f"quantifier in constant elimination: {print_formula(g)}")

    return go(f)


# ---------------------------------------------------------------------------
# Evaluation and decisions


def evaluate(f: Formula, env: RelEnv | None = None,
             assignment: Mapping[str, MElement] | None = None) -> bool:
    """Truth of a quantifier-free formula in M under an assignment of its variables."""
    env = env or RelEnv()
    if assignment:
        f = substitute(f, {k: Const(v) for k, v in assignment.items()})
    return eval_ground(f, env.resolve)


def _reduce(f: Formula, env: RelEnv, record: list[StepRecord] | None,
            witness: str | None) -> Formula:
    qf = eliminate_quantifiers(translate(f), env, record)
    return eliminate_constants(qf, env, witness)


def decide_with_trace(f: Formula, env: RelEnv | None = None) -> tuple[bool, list[dict]]:
    """Truth value of a sentence in M plus the list of elimination steps taken."""
    if free_vars(f):
        raise ValueError(f"not a sentence; free variables {sorted(free_vars(f))}")
    env = env or RelEnv()
    record: list[StepRecord] = []
    qf = _reduce(f, env, record, None)
    return evaluate(qf, env), [r.to_dict() for r in record]


def decide_sentence(f: Formula, env: RelEnv | None = None) -> bool:
    return decide_with_trace(f, env)[0]


def _as_set(g: Formula, x: str, env: RelEnv) -> RaySet:
    if isinstance(g, Top):
        return RaySet.universe()
    if isinstance(g, Bot):
        return RaySet.empty()
    if isinstance(g, Eq):
        return RaySet.universe()
    if isinstance(g, Rel):
        assert g.left == g.right == Var(x), print_formula(g)
        return env.diagonal(g.name)
    if isinstance(g, Not):
        return ~_as_set(g.body, x, env)
    if isinstance(g, And):
        return _as_set(g.left, x, env) & _as_set(g.right, x, env)
    if isinstance(g, Or):
        return _as_set(g.left, x, env) | _as_set(g.right, x, env)
    if isinstance(g, Imp):
        return ~_as_set(g.left, x, env) | _as_set(g.right, x, env)
    raise ValueError(f"unexpected formula {print_formula(g)}")


def definable_set(f: Formula, x: str, env: RelEnv | None = None) -> RaySet:
    """``{a in M | M |= f(a)}`` for a formula whose only free variable is ``x``."""
    extra = free_vars(f) - {x}
    if extra:
        raise ValueError(f"formula has free variables besides {x!r}: {sorted(extra)}")
    env = env or RelEnv()
    return _as_set(_reduce(f, env, None, x), x, env)


def window_scale() -> int:
    """Multiplier for search windows, read from ``INDKIT_WINDOW`` (default 1)."""
    raw = os.environ.get("INDKIT_WINDOW", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"INDKIT_WINDOW must be a positive integer, got {raw!r}") from None


def witness_window(s: RaySet) -> int:
    """Index bound inside which a non-empty set shows one of its members."""
    return window_scale() * (3 * s.modulus + s.exception_bound())


def witness_scan(x: str, body: Formula, window: int,
                 env: RelEnv | None = None) -> MElement | None:
    """First ``a`` with ``|index| <= window`` satisfying the reduced form of ``body``."""
    env = env or RelEnv()
    matrix = _reduce(body, env, None, x)
    for k in range(window + 1):
        for comp in COMPS:
            idx = -k - 1 if comp == 1 else k
            e = element_of(comp, idx)
            if evaluate(matrix, env, {x: e}):
                return e
    return None


@dataclass
class SchemaReport:
    measure: Fraction
    dyadic: bool
    schema_holds: bool
    set_: RaySet = field(repr=False)

    @property
    def consistent(self) -> bool:
        """A dyadic measure forces the induction instance to hold."""
        return self.schema_holds or not self.dyadic

    def to_dict(self) -> dict:
        return {"measure": str(self.measure), "dyadic": self.dyadic,
                "schema_holds": self.schema_holds, "set": self.set_.to_json()}


def check_induction_schema(f: Formula, x: str, env: RelEnv | None = None) -> SchemaReport:
    """Measure of the set defined by ``f(x)`` and the truth of its induction instance."""
    from .lkid import PHI_N, InductionAnnotation, induction_schema_instance

    env = env or RelEnv()
    s = definable_set(f, x, env)
    ann = InductionAnnotation("N", {"N": ((x,), f)})
    inst = induction_schema_instance(PHI_N, ann)
    mu = s.measure()
    return SchemaReport(mu, is_dyadic(mu), decide_sentence(inst, env), s)


# ---------------------------------------------------------------------------
# Display


def _show_term(t: Term) -> str:
    n, base = unwind(t)
    if isinstance(base, Var):
        s = base.name
    elif isinstance(base, Zero):
        s = "0"
    else:
        s = str(base.elem)
    return "s" * n + s if n and isinstance(base, Var) else ("s^%d(%s)" % (n, s) if n else s)


def show_formula(f: Formula) -> str:
    """Infix rendering used for human-facing output, e.g. ``R~.S(x,y) ∧ ¬T(y,y)``."""
    def go(g: Formula, top: bool) -> str:
        if isinstance(g, Top):
            return "true"
        if isinstance(g, Bot):
            return "false"
        if isinstance(g, Rel):
            return f"{g.name}({_show_term(g.left)},{_show_term(g.right)})"
        if isinstance(g, Eq):
            return f"{_show_term(g.left)}={_show_term(g.right)}"
        if isinstance(g, Pred):
            return g.name + "(" + ",".join(_show_term(t) for t in g.args) + ")"
        if isinstance(g, Not):
            return "¬" + go(g.body, False)
        if isinstance(g, (And, Or, Imp)):
            sym = {And: " ∧ ", Or: " ∨ ", Imp: " → "}[type(g)]
            parts = _flat(g, type(g)) if not isinstance(g, Imp) else [g.left, g.right]
            s = sym.join(go(p, False) for p in parts)
            return s if top else f"({s})"
        q = "∃" if isinstance(g, Exists) else "∀"
        return f"{q}{g.var}.{go(g.body, False)}"

    return go(f, True)


def _flat(g: Formula, cls: type) -> list[Formula]:
    if isinstance(g, cls):
        return _flat(g.left, cls) + _flat(g.right, cls)
    return [g]
