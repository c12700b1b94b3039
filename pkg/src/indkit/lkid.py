"""Inductive definition systems and a rule-by-rule checker for finite LKID proofs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import networkx as nx

from .syntax import (And, Eq, Exists, Forall, Formula, Imp, Not, Or, ParseError, Pred, Production,
                     ProofNode, ProofScript, SAtom, SExpr, SList, Sequent, Term, Var, ZERO, Succ,
                     conj, formula_from_sexpr, forall_all, free_vars, fresh_vars, print_formula,
                     print_sequent, sequent_from_sexpr, sexpr_text, substitute, subst_term,
                     term_from_sexpr)

# ---------------------------------------------------------------------------
# Inductive systems


@dataclass(frozen=True)
class InductiveSystem:
    ordinary: Mapping[str, int]
    inductive: Mapping[str, int]
    productions: tuple = ()

    def __post_init__(self) -> None:
        for prod in self.productions:
            if prod.pred not in self.inductive:
                raise ValueError(f"production concludes non-inductive predicate {prod.pred!r}")
            if len(prod.args) != self.inductive[prod.pred]:
                raise ValueError(f"arity mismatch in production for {prod.pred!r}")
            for sym, ts in prod.premises:
                if len(ts) != self.arity(sym):
                    raise ValueError(f"arity mismatch for premise {sym!r}")

    @property
    def predicates(self) -> dict[str, int]:
        return {**self.ordinary, **self.inductive}

    def arity(self, sym: str) -> int:
        if sym in self.inductive:
            return self.inductive[sym]
        if sym in self.ordinary:
            return self.ordinary[sym]
        raise ValueError(f"unknown predicate {sym!r}")

    def productions_for(self, pred: str) -> list[tuple[int, Production]]:
        """Productions concluding ``pred`` with their index among those productions."""
        return list(enumerate(p for p in self.productions if p.pred == pred))

    def is_inductive_atom(self, f: Formula) -> bool:
        return isinstance(f, Pred) and f.name in self.inductive

    def extend(self, other: InductiveSystem) -> InductiveSystem:
        return InductiveSystem({**self.ordinary, **other.ordinary},
                               {**self.inductive, **other.inductive},
                               self.productions + other.productions)


_x, _y = Var("x"), Var("y")
PHI_N = InductiveSystem({"p": 2}, {"N": 1},
                        (Production("N", (ZERO,)), Production("N", (Succ(_x),), (("N", (_x,)),))))
PHI_LE = InductiveSystem({}, {"le": 2},
                         (Production("le", (_x, _x)),
                          Production("le", (_x, Succ(_y)), (("le", (_x, _y)),))))
KNOWN_DEFINITIONS: Mapping[str, InductiveSystem] = {"N": PHI_N, "le": PHI_LE}


def system_for(names: Iterable[str]) -> InductiveSystem:
    """Combine the built-in definitions named in a proof script's ``(system ...)`` form."""
    out = InductiveSystem({}, {})
    for name in names:
        if name not in KNOWN_DEFINITIONS:
            raise ValueError(f"no built-in definition for {name!r}")
        out = out.extend(KNOWN_DEFINITIONS[name])
    return out


def premise_graph(sys: InductiveSystem) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(sys.inductive)
    for prod in sys.productions:
        for sym, _ in prod.premises:
            if sym in sys.inductive:
                g.add_edge(prod.pred, sym)
    return g


def mutual_dependency(sys: InductiveSystem) -> list[frozenset[str]]:
    """Classes of mutually dependent inductive predicates, sorted by their least member."""
    comps = [frozenset(c) for c in nx.strongly_connected_components(premise_graph(sys))]
    return sorted(comps, key=min)


def dependent_with(sys: InductiveSystem, pred: str) -> frozenset[str]:
    for comp in mutual_dependency(sys):
        if pred in comp:
            return comp
    raise ValueError(f"{pred!r} is not an inductive predicate")


# ---------------------------------------------------------------------------
# Induction obligations


@dataclass(frozen=True)
class InductionAnnotation:
    """Target predicate plus, per inductive predicate, induction variables and hypothesis."""

    target: str
    hyps: Mapping[str, tuple]  # pred -> (tuple of variable names, Formula)

    def hypothesis(self, pred: str) -> tuple[tuple[str, ...], Formula]:
        return self.hyps[pred]

    def validate(self, sys: InductiveSystem) -> None:
        for pred in dependent_with(sys, self.target):
            if pred not in self.hyps:
                raise ValueError(f"missing induction hypothesis for {pred!r}")
        for pred, (zs, _) in self.hyps.items():
            if len(zs) != sys.arity(pred):
                raise ValueError(f"{pred!r} needs {sys.arity(pred)} induction variables")
            if len(set(zs)) != len(zs):
                raise ValueError(f"induction variables for {pred!r} are not distinct")

    def instance(self, pred: str, terms: Sequence[Term]) -> Formula:
        zs, f = self.hyps[pred]
        return substitute(f, dict(zip(zs, terms)))

    def parameters(self) -> frozenset[str]:
        """Free variables of the hypotheses other than their induction variables."""
        out: frozenset[str] = frozenset()
        for zs, f in self.hyps.values():
            out |= free_vars(f) - set(zs)
        return out


def _minor_productions(sys: InductiveSystem, target: str) -> list[Production]:
    dep = dependent_with(sys, target)
    return [p for p in sys.productions if p.pred in dep]


def default_fresh(sys: InductiveSystem, ann: InductionAnnotation,
                  avoid: Iterable[str]) -> list[tuple[str, ...]]:
    """Deterministic fresh vectors, one per minor premise, shared by generator and checker."""
    avoid = set(avoid) | ann.parameters()
    return [fresh_vars(p.variables, avoid) for p in _minor_productions(sys, ann.target)]


def _g_atom(sys: InductiveSystem, ann: InductionAnnotation, dep: frozenset[str],
            sym: str, terms: tuple) -> Formula:
    if sym in sys.inductive and sym in dep:
        return ann.instance(sym, terms)
    return Pred(sym, terms)


def gen_induction_obligations(sys: InductiveSystem, ann: InductionAnnotation,
                              gamma: Iterable[Formula], delta: Iterable[Formula],
                              u: Sequence[Term],
                              fresh: Sequence[Sequence[str]] | None = None,
                              ) -> tuple[list[Sequent], Sequent]:
    """Minor premises and the major premise of the induction rule for ``ann.target``."""
    ann.validate(sys)
    if len(u) != sys.arity(ann.target):
        raise ValueError(f"{ann.target} expects {sys.arity(ann.target)} terms, got {len(u)}")
    gamma, delta = tuple(gamma), tuple(delta)
    dep = dependent_with(sys, ann.target)
    prods = _minor_productions(sys, ann.target)
    if fresh is None:
        amb = Sequent(gamma + (Pred(ann.target, tuple(u)),), delta).free_vars()
        fresh = default_fresh(sys, ann, amb)
    minors = []
    for prod, ys in zip(prods, fresh):
        theta = {v: Var(y) for v, y in zip(prod.variables, ys)}
        ante = [_g_atom(sys, ann, dep, sym, tuple(subst_term(t, theta) for t in ts))
                for sym, ts in prod.premises]
        concl = ann.instance(prod.pred, tuple(subst_term(t, theta) for t in prod.args))
        minors.append(Sequent(gamma + tuple(ante), (concl,) + delta))
    major = Sequent(gamma + (ann.instance(ann.target, u),), delta)
    return minors, major


def induction_schema_instance(sys: InductiveSystem, ann: InductionAnnotation) -> Formula:
    """(closures of the minor premises) -> forall z. (P z -> F z) for the target P."""
    minors, _ = gen_induction_obligations(sys, ann, (), (), [Var(z) for z in ann.hyps[ann.target][0]],
                                          default_fresh(sys, ann, ()))
    closures = []
    for prod, ys, m in zip(_minor_productions(sys, ann.target), default_fresh(sys, ann, ()), minors):
        body = m.succ[0] if not m.ante else Imp(conj(*_ordered_ante(prod, sys, ann, ys)), m.succ[0])
        closures.append(forall_all(ys, body))
    zs, _ = ann.hyps[ann.target]
    goal = forall_all(zs, Imp(Pred(ann.target, tuple(Var(z) for z in zs)),
                              ann.instance(ann.target, [Var(z) for z in zs])))
    return Imp(conj(*closures), goal)


def _ordered_ante(prod: Production, sys: InductiveSystem, ann: InductionAnnotation,
                  ys: Sequence[str]) -> list[Formula]:
    # Premises in production order (the Sequent form sorts them).
    dep = dependent_with(sys, ann.target)
    theta = {v: Var(y) for v, y in zip(prod.variables, ys)}
    out: list[Formula] = []
    for sym, ts in prod.premises:
        f = _g_atom(sys, ann, dep, sym, tuple(subst_term(t, theta) for t in ts))
        if f not in out:
            out.append(f)
    return out


def gen_right_intro(sys: InductiveSystem, pred: str, index: int, theta: Mapping[str, Term],
                    gamma: Iterable[Formula], delta: Iterable[Formula]) -> tuple[Sequent, list[Sequent]]:
    """Conclusion and premises of the right-introduction rule for one production."""
    prod = sys.productions_for(pred)[index][1]
    gamma, delta = tuple(gamma), tuple(delta)
    concl = Sequent(gamma, delta + (prod.conclusion(theta),))
    return concl, [Sequent(gamma, delta + (a,)) for a in prod.premise_atoms(theta)]


# ---------------------------------------------------------------------------
# Extra axioms

EXTRA_AXIOMS: Mapping[str, Formula] = {
    "zero-axiom": Forall("x", Imp(Pred("N", (_x,)), Not(Eq(Succ(_x), ZERO)))),
    "zero-succ": Forall("x", Not(Eq(Succ(_x), ZERO))),
    "succ-inj": Forall("x", Forall("y", Imp(Eq(Succ(_x), Succ(_y)), Eq(_x, _y)))),
}

# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class Verdict:
    status: str
    failing_node: int | None = None
    reason: str | None = None
    certificate: object = None

    @property
    def accepted(self) -> bool:
        return self.status == "accept"

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.failing_node is not None:
            out["failing_node"] = self.failing_node
        if self.reason is not None:
            out["reason"] = self.reason
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


ACCEPT = Verdict("accept")


def reject(node: int | None, reason: str, certificate: object = None) -> Verdict:
    return Verdict("reject", node, reason, certificate)


# ---------------------------------------------------------------------------
# Rule checking


class RuleError(Exception):
    pass


class MalformedArgs(RuleError):
    def __init__(self, msg: str) -> None:
        super().__init__(f"malformed rule arguments: {msg}")


@dataclass
class Expect:
    """One expected premise: a set of acceptable sequents or a test."""

    desc: str
    options: frozenset = frozenset()
    test: Callable[[Sequent], bool] | None = None
    info: object = None

    def matches(self, s: Sequent) -> bool:
        return self.test(s) if self.test is not None else s in self.options


@dataclass
class RuleContext:
    sys: InductiveSystem
    axioms: tuple
    predicates: Mapping[str, int] = field(default_factory=dict)

    def formula(self, sx: SExpr) -> Formula:
        try:
            return formula_from_sexpr(sx, self.predicates)
        except ParseError as e:
            raise MalformedArgs(e.message) from None

    def term(self, sx: SExpr) -> Term:
        try:
            return term_from_sexpr(sx)
        except ParseError as e:
            raise MalformedArgs(e.message) from None


Handler = Callable[[RuleContext, ProofNode], list]


def _variants(seq: Sequent, principal: Formula, side: str, add_ante: Iterable[Formula] = (),
              add_succ: Iterable[Formula] = ()) -> frozenset[Sequent]:
    """Premise sequents with the principal formula dropped or kept."""
    add_ante, add_succ = tuple(add_ante), tuple(add_succ)
    keep = Sequent(seq.ante + add_ante, seq.succ + add_succ)
    if side == "ante":
        drop = Sequent(tuple(f for f in seq.ante if f != principal) + add_ante, seq.succ + add_succ)
    else:
        drop = Sequent(seq.ante + add_ante, tuple(f for f in seq.succ if f != principal) + add_succ)
    return frozenset({keep, drop})


def _show(fs: Iterable[Sequent]) -> str:
    return " or ".join(sorted(print_sequent(s) for s in fs))


def _expect(side: str, seq: Sequent, principal: Formula, add_ante=(), add_succ=()) -> Expect:
    opts = _variants(seq, principal, side, add_ante, add_succ)
    return Expect(_show(opts), opts)


def _args(node: ProofNode, lo: int, hi: int | None = None) -> tuple:
    hi = lo if hi is None else hi
    if not lo <= len(node.args) <= hi:
        want = str(lo) if lo == hi else f"{lo} to {hi}"
        raise MalformedArgs(f"{node.rule} takes {want} argument(s), got {len(node.args)}")
    return node.args


def _principal(ctx: RuleContext, node: ProofNode, side: str, kind: type) -> Formula:
    f = ctx.formula(node.args[0]) if node.args else None
    if f is None or not isinstance(f, kind):
        raise MalformedArgs(f"{node.rule} needs a principal {kind.__name__.lower()} formula")
    where = node.sequent.ante if side == "ante" else node.sequent.succ
    if f not in where:
        raise RuleError(f"principal formula {print_formula(f)} is not in the "
                        f"{'antecedent' if side == 'ante' else 'succedent'}")
    return f


def _axiom(ctx: RuleContext, node: ProofNode) -> list:
    _args(node, 0)
    if not set(node.sequent.ante) & set(node.sequent.succ):
        raise RuleError("Axiom requires Γ ∩ Δ ≠ ∅")
    return []


def _wk(ctx: RuleContext, node: ProofNode) -> list:
    _args(node, 0)
    s = node.sequent
    return [Expect("a subsequent of the conclusion",
                   test=lambda c: set(c.ante) <= set(s.ante) and set(c.succ) <= set(s.succ))]


def _cut(ctx: RuleContext, node: ProofNode) -> list:
    _args(node, 1)
    f, s = ctx.formula(node.args[0]), node.sequent
    return [Expect(print_sequent(a), frozenset({a}))
            for a in (Sequent(s.ante, s.succ + (f,)), Sequent(s.ante + (f,), s.succ))]


def _subst_map(ctx: RuleContext, args: Sequence[SExpr]) -> dict[str, Term]:
    theta: dict[str, Term] = {}
    for a in args:
        if not isinstance(a, SList) or len(a.items) != 2 or not isinstance(a.items[0], SAtom):
            raise MalformedArgs("substitution entries look like (x t)")
        v = a.items[0].text
        if v in theta:
            raise MalformedArgs(f"variable {v} substituted twice")
        theta[v] = ctx.term(a.items[1])
    return theta


def _subst(ctx: RuleContext, node: ProofNode) -> list:
    theta = _subst_map(ctx, node.args)
    s = node.sequent
    return [Expect(f"a sequent whose instance under the substitution is {print_sequent(s)}",
                   test=lambda c: c.substitute(theta) == s, info=theta)]


def _not_l(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "ante", Not)
    return [_expect("ante", node.sequent, f, add_succ=(f.body,))]


def _not_r(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "succ", Not)
    return [_expect("succ", node.sequent, f, add_ante=(f.body,))]


def _and_l(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "ante", And)
    return [_expect("ante", node.sequent, f, add_ante=(f.left, f.right))]


def _and_r(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "succ", And)
    return [_expect("succ", node.sequent, f, add_succ=(g,)) for g in (f.left, f.right)]


def _or_l(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "ante", Or)
    return [_expect("ante", node.sequent, f, add_ante=(g,)) for g in (f.left, f.right)]


def _or_r(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "succ", Or)
    return [_expect("succ", node.sequent, f, add_succ=(f.left, f.right))]


def _imp_l(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "ante", Imp)
    return [_expect("ante", node.sequent, f, add_succ=(f.left,)),
            _expect("ante", node.sequent, f, add_ante=(f.right,))]


def _imp_r(ctx, node):
    _args(node, 1)
    f = _principal(ctx, node, "succ", Imp)
    return [_expect("succ", node.sequent, f, add_ante=(f.left,), add_succ=(f.right,))]


def _eigen(ctx: RuleContext, node: ProofNode, side: str, kind: type) -> list:
    _args(node, 1, 2)
    f = _principal(ctx, node, side, kind)
    var = f.var
    if len(node.args) == 2:
        t = ctx.term(node.args[1])
        if not isinstance(t, Var):
            raise MalformedArgs("eigenvariable must be a variable")
        var = t.name
    if var in node.sequent.free_vars():
        raise RuleError(f"eigenvariable {var} occurs free in the conclusion")
    inst = substitute(f.body, {f.var: Var(var)})
    if side == "ante":
        return [_expect("ante", node.sequent, f, add_ante=(inst,))]
    return [_expect("succ", node.sequent, f, add_succ=(inst,))]


def _witness(ctx: RuleContext, node: ProofNode, side: str, kind: type) -> list:
    _args(node, 2)
    f = _principal(ctx, node, side, kind)
    inst = substitute(f.body, {f.var: ctx.term(node.args[1])})
    if side == "ante":
        return [_expect("ante", node.sequent, f, add_ante=(inst,))]
    return [_expect("succ", node.sequent, f, add_succ=(inst,))]


def _eq_r(ctx, node):
    _args(node, 0)
    if not any(isinstance(f, Eq) and f.left == f.right for f in node.sequent.succ):
        raise RuleError("(=R) needs some t = t in the succedent")
    return []


@dataclass(frozen=True)
class EqLeftData:
    principal: Eq
    a: str
    b: str
    template: Sequent

    def before(self, f: Formula) -> Formula:
        return substitute(f, {self.a: self.principal.left, self.b: self.principal.right})

    def after(self, f: Formula) -> Formula:
        return substitute(f, {self.a: self.principal.right, self.b: self.principal.left})


def parse_eq_left(ctx: RuleContext, node: ProofNode) -> EqLeftData:
    _args(node, 3)
    f = ctx.formula(node.args[0])
    if not isinstance(f, Eq):
        raise MalformedArgs("(=L) needs a principal equation")
    vs, tp = node.args[1], node.args[2]
    if (not isinstance(vs, SList) or len(vs.items) != 3 or vs.items[0] != SAtom("vars")
            or not all(isinstance(v, SAtom) for v in vs.items[1:])):
        raise MalformedArgs("expected (vars a b)")
    if not isinstance(tp, SList) or len(tp.items) != 2 or tp.items[0] != SAtom("template"):
        raise MalformedArgs("expected (template (seq ...))")
    try:
        template = sequent_from_sexpr(tp.items[1], ctx.predicates)
    except ParseError as e:
        raise MalformedArgs(e.message) from None
    a, b = vs.items[1].text, vs.items[2].text
    if a == b:
        raise MalformedArgs("(=L) template variables must differ")
    return EqLeftData(f, a, b, template)


def _eq_l(ctx, node):
    d = parse_eq_left(ctx, node)
    s, t = node.sequent, d.template
    if d.principal not in s.ante:
        raise RuleError(f"principal equation {print_formula(d.principal)} is not in the antecedent")
    expected = Sequent(tuple(d.before(f) for f in t.ante) + (d.principal,),
                       tuple(d.before(f) for f in t.succ))
    if expected != s:
        raise RuleError(f"conclusion is not the template instance {print_sequent(expected)}")
    prem = Sequent(tuple(d.after(f) for f in t.ante), tuple(d.after(f) for f in t.succ))
    return [Expect(print_sequent(prem), frozenset({prem}), info=d)]


def _production_ref(ctx: RuleContext, node: ProofNode) -> tuple[Production, dict[str, Term]]:
    if len(node.args) < 2 or not all(isinstance(a, SAtom) for a in node.args[:2]):
        raise MalformedArgs("expected intro PRED INDEX (x t)...")
    pred = node.args[0].text
    try:
        k = int(node.args[1].text)
        prods = ctx.sys.productions_for(pred)
        prod = prods[k][1]
    except (ValueError, IndexError):
        raise MalformedArgs(f"no production {sexpr_text(node.args[1])} for {pred!r}") from None
    theta = _subst_map(ctx, node.args[2:])
    unknown = set(theta) - set(prod.variables)
    if unknown:
        raise MalformedArgs(f"variables {sorted(unknown)} do not occur in the production")
    return prod, {v: theta.get(v, Var(v)) for v in prod.variables}


def _intro(ctx, node):
    prod, theta = _production_ref(ctx, node)
    goal = prod.conclusion(theta)
    if goal not in node.sequent.succ:
        raise RuleError(f"{print_formula(goal)} is not in the succedent")
    return [_expect("succ", node.sequent, goal, add_succ=(a,)) for a in prod.premise_atoms(theta)]


def _extra(ctx, node):
    _args(node, 1)
    a = node.args[0]
    if isinstance(a, SAtom) and a.text in EXTRA_AXIOMS:
        f = EXTRA_AXIOMS[a.text]
    else:
        f = ctx.formula(a)
    if f not in ctx.axioms:
        raise RuleError(f"{print_formula(f)} is not among the admitted extra axioms")
    if f not in node.sequent.succ:
        raise RuleError(f"extra axiom {print_formula(f)} is not in the succedent")
    return []


def _fresh_lists(ctx: RuleContext, sx: SExpr | None) -> list[tuple[str, ...]] | None:
    if sx is None:
        return None
    if not isinstance(sx, SList) or not sx.items or sx.items[0] != SAtom("fresh"):
        raise MalformedArgs("expected (fresh (y ...) ...)")
    out = []
    for vec in sx.items[1:]:
        if not isinstance(vec, SList) or not all(isinstance(v, SAtom) for v in vec.items):
            raise MalformedArgs("fresh vectors are lists of variable names")
        out.append(tuple(v.text for v in vec.items))
    return out


def _check_fresh(vectors: Sequence[tuple[str, ...]], prods: Sequence[Production],
                 avoid: frozenset[str]) -> None:
    if len(vectors) != len(prods):
        raise MalformedArgs(f"expected {len(prods)} fresh vectors, got {len(vectors)}")
    for ys, prod in zip(vectors, prods):
        if len(ys) != len(prod.variables):
            raise MalformedArgs(f"fresh vector {ys} should have length {len(prod.variables)}")
        if len(set(ys)) != len(ys):
            raise RuleError(f"fresh variables {ys} are not distinct")
        clash = sorted(set(ys) & avoid)
        if clash:
            raise RuleError(f"variables {clash} are not fresh")


def parse_annotation(ctx: RuleContext, target: str, args: Sequence[SExpr]) -> InductionAnnotation:
    hyps: dict[str, tuple] = {}
    for a in args:
        if (not isinstance(a, SList) or len(a.items) != 4 or a.items[0] != SAtom("hyp")
                or not isinstance(a.items[1], SAtom) or not isinstance(a.items[2], SList)
                or not all(isinstance(z, SAtom) for z in a.items[2].items)):
            raise MalformedArgs("expected (hyp PRED (z ...) F)")
        pred = a.items[1].text
        if pred in hyps:
            raise MalformedArgs(f"two hypotheses for {pred!r}")
        hyps[pred] = (tuple(z.text for z in a.items[2].items), ctx.formula(a.items[3]))
    ann = InductionAnnotation(target, hyps)
    try:
        ann.validate(ctx.sys)
    except ValueError as e:
        raise MalformedArgs(str(e)) from None
    return ann


def _ind(ctx, node):
    if not node.args:
        raise MalformedArgs("ind needs a principal atom")
    f = ctx.formula(node.args[0])
    if not ctx.sys.is_inductive_atom(f):
        raise MalformedArgs("ind needs an inductive principal atom")
    if f not in node.sequent.ante:
        raise RuleError(f"principal formula {print_formula(f)} is not in the antecedent")
    rest = list(node.args[1:])
    fresh_sx = rest.pop() if rest and isinstance(rest[-1], SList) and rest[-1].items[:1] == (SAtom("fresh"),) else None
    ann = parse_annotation(ctx, f.name, rest)
    s = node.sequent
    gamma = tuple(g for g in s.ante if g != f)
    avoid = s.free_vars() | ann.parameters()
    fresh = _fresh_lists(ctx, fresh_sx)
    if fresh is None:
        fresh = default_fresh(ctx.sys, ann, avoid)
    _check_fresh(fresh, _minor_productions(ctx.sys, f.name), avoid)
    minors, major = gen_induction_obligations(ctx.sys, ann, gamma, s.succ, f.args, fresh)
    out = []
    for prem in minors + [major]:
        opts = frozenset({prem, Sequent(prem.ante + (f,), prem.succ)})
        out.append(Expect(_show(opts), opts))
    return out


def case_distinctions(sys: InductiveSystem, principal: Pred, seq: Sequent,
                      fresh: Sequence[Sequence[str]] | None = None,
                      ) -> list[tuple[frozenset[Sequent], tuple[Formula, ...]]]:
    """Premise variants and case-descendants for a case split on ``principal``."""
    prods = [p for _, p in sys.productions_for(principal.name)]
    if fresh is None:
        fresh = [fresh_vars(p.variables, seq.free_vars()) for p in prods]
    out = []
    for prod, ys in zip(prods, fresh):
        theta = {v: Var(y) for v, y in zip(prod.variables, ys)}
        eqs = tuple(Eq(u, subst_term(t, theta)) for u, t in zip(principal.args, prod.args))
        atoms = tuple(prod.premise_atoms(theta))
        desc = tuple(a for a in atoms if a.name in sys.inductive)
        out.append((_variants(seq, principal, "ante", add_ante=eqs + atoms), desc))
    return out


def check_case(ctx: RuleContext, node: ProofNode) -> list:
    _args(node, 1, 2)
    f = ctx.formula(node.args[0])
    if not ctx.sys.is_inductive_atom(f):
        raise MalformedArgs("case needs an inductive principal atom")
    if f not in node.sequent.ante:
        raise RuleError(f"principal formula {print_formula(f)} is not in the antecedent")
    prods = [p for _, p in ctx.sys.productions_for(f.name)]
    fresh = _fresh_lists(ctx, node.args[1] if len(node.args) == 2 else None)
    if fresh is not None:
        _check_fresh(fresh, prods, node.sequent.free_vars())
    return [Expect(_show(opts), opts, info=desc)
            for opts, desc in case_distinctions(ctx.sys, f, node.sequent, fresh)]


LKID_RULES: dict[str, Handler] = {
    "axiom": _axiom, "wk": _wk, "cut": _cut, "subst": _subst,
    "notL": _not_l, "notR": _not_r, "andL": _and_l, "andR": _and_r,
    "orL": _or_l, "orR": _or_r, "impL": _imp_l, "impR": _imp_r,
    "exL": lambda c, n: _eigen(c, n, "ante", Exists),
    "allR": lambda c, n: _eigen(c, n, "succ", Forall),
    "exR": lambda c, n: _witness(c, n, "succ", Exists),
    "allL": lambda c, n: _witness(c, n, "ante", Forall),
    "eqL": _eq_l, "eqR": _eq_r, "intro": _intro, "extra": _extra, "ind": _ind,
}


def match_premises(expects: Sequence[Expect], kids: Sequence[ProofNode]) -> dict[int, Expect] | None:
    """Assign children to expected premises, ignoring order; None when impossible."""
    if len(expects) != len(kids):
        return None
    fits = [[j for j, e in enumerate(expects) if e.matches(k.sequent)] for k in kids]
    used: set[int] = set()
    chosen: list[int] = []

    def go(i: int) -> bool:
        if i == len(kids):
            return True
        for j in fits[i]:
            if j not in used:
                used.add(j)
                chosen.append(j)
                if go(i + 1):
                    return True
                used.discard(j)
                chosen.pop()
        return False

    if not go(0):
        return None
    return {kids[i].id: expects[j] for i, j in enumerate(chosen)}


def check_node(ctx: RuleContext, script: ProofScript, node: ProofNode,
               rules: Mapping[str, Handler]) -> dict[int, Expect]:
    """Check one inference; returns the child-to-premise assignment or raises RuleError."""
    handler = rules.get(node.rule)
    if handler is None:
        raise RuleError(f"rule {node.rule!r} is not available in this system")
    expects = handler(ctx, node)
    kids = [script.nodes[c] for c in node.children]
    assignment = match_premises(expects, kids)
    if assignment is not None:
        return assignment
    if len(expects) != len(kids):
        raise RuleError(f"{node.rule} expects {len(expects)} premise(s), found {len(kids)}")
    for e in expects:
        if not any(e.matches(k.sequent) for k in kids):
            raise RuleError(f"no premise matches the expected {e.desc}")
    raise RuleError("premises do not match the expected premises one-to-one")


def context_for(sys: InductiveSystem, axioms: Iterable[Formula] = ()) -> RuleContext:
    return RuleContext(sys, tuple(axioms), sys.predicates)


def check_rules(sys: InductiveSystem, script: ProofScript, axioms: Iterable[Formula],
                rules: Mapping[str, Handler]) -> tuple[Verdict, dict[int, dict[int, Expect]]]:
    """Check every non-bud node; report the first failure by node id."""
    ctx = context_for(sys, axioms)
    assignments: dict[int, dict[int, Expect]] = {}
    for nid in script.ordered_ids():
        node = script.nodes[nid]
        if node.rule == "bud":
            continue
        try:
            assignments[nid] = check_node(ctx, script, node, rules)
        except RuleError as e:
            return reject(nid, str(e)), assignments
    return ACCEPT, assignments


def check_lkid_proof(sys: InductiveSystem, script: ProofScript,
                     axioms: Iterable[Formula] = ()) -> Verdict:
    for nid in script.ordered_ids():
        if script.nodes[nid].rule == "bud" or nid in script.buds:
            return reject(nid, "buds are not allowed in a finite LKID proof")
    verdict, _ = check_rules(sys, script, axioms, LKID_RULES)
    return verdict
