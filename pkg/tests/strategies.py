"""Random generators shared by the property tests."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from indkit.cyclic import TraceGraph
from indkit.elements import COMPS, ZNEG, MElement, element_of
from indkit.syntax import (ZERO, And, Const, Eq, Exists, Forall, Formula, Imp, Not, Or, Pred, Term,
                           Var, numeral)

VAR_NAMES = ("x", "y", "z", "w")


@st.composite
def terms(draw, names=VAR_NAMES, consts: bool = False) -> Term:
    kind = draw(st.sampled_from(["var", "zero", "const"] if consts else ["var", "zero"]))
    if kind == "var":
        base: Term = Var(draw(st.sampled_from(names)))
    elif kind == "zero":
        base = ZERO
    else:
        base = Const(draw(elements(6)))
    return numeral(draw(st.integers(0, 3)), base)


def elements(bound: int):
    return st.builds(lambda c, k: element_of(c, -k - 1 if c == ZNEG else k),
                     st.sampled_from(COMPS), st.integers(0, bound))


@st.composite
def formulas(draw, depth: int = 3, names=VAR_NAMES, consts: bool = False) -> Formula:
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.sampled_from(["N", "p", "eq"]))
        t = terms(names, consts)
        if kind == "N":
            return Pred("N", (draw(t),))
        if kind == "p":
            return Pred("p", (draw(t), draw(t)))
        return Eq(draw(t), draw(t))
    kind = draw(st.sampled_from(["not", "and", "or", "imp", "ex", "all"]))
    sub = formulas(depth - 1, names, consts)
    if kind == "not":
        return Not(draw(sub))
    if kind in ("ex", "all"):
        return (Exists if kind == "ex" else Forall)(draw(st.sampled_from(names)), draw(sub))
    return {"and": And, "or": Or, "imp": Imp}[kind](draw(sub), draw(sub))


# Plain-random generators (seeded) for the acceptance runs, where exact counts matter.


def random_term(rng: random.Random, names: list[str]) -> Term:
    base = Var(rng.choice(names)) if rng.random() < 0.8 else ZERO
    return numeral(rng.randint(0, 3), base)


def random_atom(rng: random.Random, names: list[str]) -> Formula:
    k = rng.random()
    if k < 0.45:
        return Pred("p", (random_term(rng, names), random_term(rng, names)))
    if k < 0.9:
        return Eq(random_term(rng, names), random_term(rng, names))
    return Pred("N", (random_term(rng, names),))


def random_formula(rng: random.Random, free: list[str], depth: int,
                   bound_names=("y", "z", "w", "u")) -> Formula:
    """Formula over N, p and = whose free variables lie in ``free``."""
    if depth == 0 or rng.random() < 0.25:
        return random_atom(rng, free)
    k = rng.random()
    if k < 0.2:
        return Not(random_formula(rng, free, depth - 1, bound_names))
    if k < 0.55:
        cls = rng.choice([And, Or, Imp])
        return cls(random_formula(rng, free, depth - 1, bound_names),
                   random_formula(rng, free, depth - 1, bound_names))
    v = bound_names[0] if bound_names else rng.choice(free)
    q = rng.choice([Exists, Forall])
    return q(v, random_formula(rng, free + [v], depth - 1, bound_names[1:]))


def random_sentence(rng: random.Random, depth: int) -> Formula:
    v = "x"
    return rng.choice([Exists, Forall])(v, random_formula(rng, [v], depth - 1))


def random_proof_graph(rng: random.Random, n: int) -> TraceGraph:
    """Tree of ``n`` nodes rooted at 0, with back edges from some leaves to ancestors."""
    parent = {i: rng.randrange(i) for i in range(1, n)}
    kids = {i: [c for c, p in parent.items() if p == i] for i in range(n)}
    occ = {i: rng.randint(1, 3) for i in range(n)}
    g = TraceGraph(0, {i: tuple(f"a{k}" for k in range(occ[i])) for i in range(n)})

    def triples(a: int, b: int) -> frozenset:
        out = set()
        for i in range(occ[a]):
            for j in range(occ[b]):
                if rng.random() < (0.7 if i == j else 0.25):
                    out.add((i, j, rng.random() < 0.5))
        return frozenset(out)

    for c, p in parent.items():
        g.edges[(p, c)] = triples(p, c)
    back = set()
    for leaf in (i for i in range(n) if not kids[i]):
        if rng.random() < 0.7:
            anc, chain = leaf, []
            while anc in parent:
                anc = parent[anc]
                chain.append(anc)
            if chain:
                target = rng.choice(chain)
                g.edges[(leaf, target)] = triples(leaf, target)
                back.add((leaf, target))
    g.back_edges = frozenset(back)
    return g


def window_elements(bound: int) -> list[MElement]:
    return [element_of(c, -k - 1 if c == ZNEG else k) for k in range(bound + 1) for c in COMPS]
