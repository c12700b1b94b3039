"""The 2-Hydra statement, its head-cutting game, and a cyclic proof of it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .elements import MElement, ZERO_M
from .model import in_pi
from .syntax import (And, Eq, Forall, Formula, Imp, Pred, ProofBuilder, ProofScript, Sequent,
                     Term, Var, ZERO, conj, numeral, print_formula, substitute, term_sexpr)

x, y = Var("x"), Var("y")


def N(t: Term) -> Pred:
    return Pred("N", (t,))


def p(a: Term, b: Term) -> Pred:
    return Pred("p", (a, b))


def s(t: Term, k: int = 1) -> Term:
    return numeral(k, t)


ONE, TWO = numeral(1), numeral(2)

H_A = Forall("x", Imp(N(x), conj(p(ZERO, ZERO), p(ONE, ZERO), p(x, ONE))))
H_B = Forall("x", Forall("y", Imp(And(N(x), N(y)), Imp(p(x, y), p(s(x), s(y, 2))))))
H_C = Forall("y", Imp(N(y), Imp(p(s(y), y), p(ZERO, s(y, 2)))))
H_D = Forall("x", Imp(N(x), Imp(p(s(x), x), p(s(x, 2), ZERO))))
HYDRA_AXIOMS = (H_A, H_B, H_C, H_D)
HYDRA_GOAL = Forall("x", Forall("y", Imp(And(N(x), N(y)), p(x, y))))


def hydra_formula() -> Formula:
    """H: the four hypotheses imply that p holds on all pairs of numbers."""
    return Imp(conj(*HYDRA_AXIOMS), HYDRA_GOAL)


# ---------------------------------------------------------------------------
# The game


class Win:
    def __repr__(self) -> str:
        return "WIN"


WIN = Win()
Step = Union[Win, tuple]


def game_step(state: tuple[int, int]) -> Step:
    """One move on standard head lengths."""
    n, m = state
    if m == 1 or (m == 0 and n <= 1):
        return WIN
    if m >= 2 and n >= 1:
        return (n - 1, m - 2)
    if m >= 2:
        return (m - 1, m - 2)
    return (n - 1, n - 2)


def game_play(n: int, m: int) -> list[tuple[int, int]]:
    """States visited until the win, which always comes (the larger head shrinks)."""
    trace = [(n, m)]
    while True:
        nxt = game_step(trace[-1])
        if nxt is WIN:
            return trace
        trace.append(nxt)


def format_play(trace: Sequence[tuple[int, int]]) -> str:
    return "".join(f"({a},{b})" for a, b in trace) + " WIN"


ONE_M = ZERO_M.succ()


def _at_least_two(e: MElement) -> bool:
    return e not in (ZERO_M, ONE_M)


def model_game_step(state: tuple[MElement, MElement]) -> Step:
    """The same move table read over elements of M; ``k - 1`` is the predecessor."""
    n, m = state
    if m == ONE_M or (m == ZERO_M and n in (ZERO_M, ONE_M)):
        return WIN
    if _at_least_two(m) and n != ZERO_M:
        return (n.pred(), m.pred().pred())
    if _at_least_two(m):
        return (m.pred(), m.pred().pred())
    return (n.pred(), n.pred().pred())


def model_game_run(state: tuple[MElement, MElement], steps: int) -> list:
    """At most ``steps`` moves; the list ends with WIN if the game is won."""
    trace: list = [state]
    for _ in range(steps):
        nxt = model_game_step(trace[-1])
        trace.append(nxt)
        if nxt is WIN:
            break
    return trace


def in_pi_state(state: tuple[MElement, MElement]) -> bool:
    return in_pi(*state)


# ---------------------------------------------------------------------------
# Cyclic proof of  H_a, H_b, H_c, H_d, Nx, Ny |- p x y


@dataclass
class _Ctx:
    b: ProofBuilder
    root: int


def _seq(ante: Sequence[Formula], succ: Sequence[Formula]) -> Sequent:
    return Sequent(tuple(HYDRA_AXIOMS) + tuple(ante), tuple(succ))


def _left(seq: Sequent, principal: Formula, add_ante=(), add_succ=(), keep=False) -> Sequent:
    ante = [f for f in seq.ante if keep or f != principal] + list(add_ante)
    return Sequent(tuple(ante), seq.succ + tuple(add_succ))


def _right(seq: Sequent, principal: Formula, add_ante=(), add_succ=()) -> Sequent:
    succ = [f for f in seq.succ if f != principal] + list(add_succ)
    return Sequent(seq.ante + tuple(add_ante), tuple(succ))


def _axiom(c: _Ctx, seq: Sequent) -> int:
    return c.b.add(seq, "axiom")


def _tsub(pairs: dict[str, Term]) -> list[str]:
    return [f"({v} {term_sexpr(t)})" for v, t in pairs.items()]


def _case_eq(c: _Ctx, seq: Sequent, var: str, fresh: str, keep: Sequence[bool],
             zero_k, succ_k, nid: int | None = None) -> int:
    """Case split on ``N var`` followed by (=L) in each branch, substituting the case term."""
    if nid is None:
        nid = c.b.reserve()
    principal = N(Var(var))
    kids = []
    for term, extra, keep_p, cont in ((ZERO, (), keep[0], zero_k),
                                      (s(Var(fresh)), (N(Var(fresh)),), keep[1], succ_k)):
        eq = Eq(Var(var), term)
        prem = _left(seq, principal, add_ante=(eq,) + extra, keep=keep_p)
        # Template: replace var by the placeholder a everywhere except in the equation.
        a = "a"
        theta = {var: Var(a)}
        template = Sequent(tuple(substitute(f, theta) for f in prem.ante if f != eq),
                           tuple(substitute(f, theta) for f in prem.succ))
        after = template.substitute({a: term})
        eq_id = c.b.reserve()
        child = cont(after)
        c.b.add(prem, "eqL", [eq, "(vars a b)", f"(template {template})"], [child], nid=eq_id)
        kids.append(eq_id)
    c.b.add(seq, "case", [principal, f"(fresh () ({fresh}))"], kids, nid=nid)
    return nid


def _close_ha(c: _Ctx, seq: Sequent, t: Term, goal: Formula) -> int:
    """Derive ``goal`` (one of the three H_a conjuncts at ``t``) from H_a."""
    inst = substitute(H_A.body, {"x": t})
    body = inst.right
    nid = c.b.reserve()
    s1 = _left(seq, H_A, add_ante=(inst,), keep=True)
    i1 = c.b.reserve()
    need_n = _left(s1, inst, add_succ=(N(t),))
    if N(t) in seq.ante:
        n_id = _axiom(c, need_n)
    else:
        n_id = c.b.add(need_n, "intro", ["N", "0"])
    s2 = _left(s1, inst, add_ante=(body,))
    a1 = c.b.reserve()
    s3 = _left(s2, body, add_ante=(body.left, body.right))
    a2 = c.b.reserve()
    s4 = _left(s3, body.right, add_ante=(body.right.left, body.right.right))
    assert goal in s4.ante and goal in s4.succ
    leaf = _axiom(c, s4)
    c.b.add(s3, "andL", [body.right], [leaf], nid=a2)
    c.b.add(s2, "andL", [body], [a2], nid=a1)
    c.b.add(s1, "impL", [inst], [n_id, a1], nid=i1)
    c.b.add(seq, "allL", [H_A, term_sexpr(t)], [i1], nid=nid)
    return nid


def _to_bud(c: _Ctx, seq: Sequent, goal_atoms: Sequence[Formula], goal: Formula,
            theta: dict[str, Term]) -> int:
    """Weaken to ``goal_atoms |- goal`` and substitute back to the root sequent."""
    wk = c.b.reserve()
    target = _seq(goal_atoms, (goal,))
    sub = c.b.reserve()
    bud = c.b.bud(_seq((N(x), N(y)), (p(x, y),)), c.root)
    c.b.add(target, "subst", _tsub(theta), [bud], nid=sub)
    c.b.add(seq, "wk", [], [sub], nid=wk)
    return wk


def _use_step(c: _Ctx, seq: Sequent, axiom: Formula, terms: Sequence[Term], premise: Formula, conclusion: Formula,
              theta: dict[str, Term], bud_atoms: Sequence[Formula]) -> int:
    """Apply one of H_b, H_c, H_d backwards: reduce ``conclusion`` to ``premise``."""
    nid = c.b.reserve()
    cur, inst = seq, axiom
    chain = []
    for i, t in enumerate(terms):
        body = substitute(inst.body, {inst.var: t})
        nxt = _left(cur, inst, add_ante=(body,), keep=(i == 0))
        chain.append((cur, inst, t, nxt))
        cur, inst = nxt, body
    guard_f = inst.left
    imp2 = inst.right
    i1 = c.b.reserve()
    g_seq = _left(cur, inst, add_succ=(guard_f,))
    if isinstance(guard_f, And):
        ga = c.b.reserve()
        kids = [_axiom(c, _right(g_seq, guard_f, add_succ=(g,))) for g in (guard_f.left, guard_f.right)]
        c.b.add(g_seq, "andR", [guard_f], kids, nid=ga)
    else:
        ga = _axiom(c, g_seq)
    s2 = _left(cur, inst, add_ante=(imp2,))
    i2 = c.b.reserve()
    p_seq = _left(s2, imp2, add_succ=(premise,))
    done = _left(s2, imp2, add_ante=(conclusion,))
    leaf = _axiom(c, done)
    back = _to_bud(c, p_seq, bud_atoms, premise, theta)
    c.b.add(s2, "impL", [imp2], [back, leaf], nid=i2)
    c.b.add(cur, "impL", [inst], [ga, i2], nid=i1)
    # quantifier instantiations, innermost first
    below = i1
    for k in range(len(chain) - 1, -1, -1):
        before, q, t, _ = chain[k]
        this = nid if k == 0 else c.b.reserve()
        c.b.add(before, "allL", [q, term_sexpr(t)], [below], nid=this)
        below = this
    return nid


def hydra_cyclic_proof() -> ProofScript:
    """The three-bud cyclic proof whose only companion is the root."""
    b = ProofBuilder(("N",))
    root = b.reserve()
    c = _Ctx(b, root)
    x1, x2, y2 = Var("x'"), Var("x''"), Var("y''")
    root_seq = _seq((N(x), N(y)), (p(x, y),))

    def pi1(seq: Sequent) -> int:  # H, Nx |- p x 0
        def zero(sq: Sequent) -> int:
            return _close_ha(c, sq, ZERO, p(ZERO, ZERO))

        def succ(sq: Sequent) -> int:  # H, Nx' |- p (s x') 0
            def zero2(sq2: Sequent) -> int:
                return _close_ha(c, sq2, ZERO, p(ONE, ZERO))

            def succ2(sq2: Sequent) -> int:  # H, N(s x''), N x'' |- p (s s x'') 0
                return _use_step(c, sq2, H_D, [x2], p(s(x2), x2), p(s(x2, 2), ZERO),
                                 {"x": s(x2), "y": x2}, (N(s(x2)), N(x2)))
            return _case_eq(c, sq, "x'", "x''", (True, True), zero2, succ2)
        return _case_eq(c, seq, "x", "x'", (True, False), zero, succ)

    def pi2(seq: Sequent) -> int:  # H, Nx, Ny' |- p x (s y')
        def zero(sq: Sequent) -> int:
            return _close_ha(c, sq, x, p(x, ONE))

        def succ(sq: Sequent) -> int:  # H, Nx, N(s y''), N y'' |- p x (s s y'')
            def zero2(sq2: Sequent) -> int:
                return _use_step(c, sq2, H_C, [y2], p(s(y2), y2), p(ZERO, s(y2, 2)),
                                 {"x": s(y2), "y": y2}, (N(s(y2)), N(y2)))

            def succ2(sq2: Sequent) -> int:
                return _use_step(c, sq2, H_B, [x1, y2], p(x1, y2), p(s(x1), s(y2, 2)),
                                 {"x": x1, "y": y2}, (N(x1), N(y2)))
            return _case_eq(c, sq, "x", "x'", (False, False), zero2, succ2)
        return _case_eq(c, seq, "y'", "y''", (True, True), zero, succ)

    _case_eq(c, root_seq, "y", "y'", (False, False), pi1, pi2, nid=root)
    return b.build(root)


def root_sequent() -> Sequent:
    return _seq((N(x), N(y)), (p(x, y),))


__all__ = ["H_A", "H_B", "H_C", "H_D", "HYDRA_AXIOMS", "hydra_formula", "game_step", "game_play",
           "model_game_run", "hydra_cyclic_proof", "WIN", "format_play", "print_formula"]
