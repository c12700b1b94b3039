"""The structure M = <N + Z, 0_M, s_M, N_M, p_M> with exact ground evaluation."""
from __future__ import annotations

import functools
from typing import Callable

from .bijections import PartialBijection, PhiMap, RaySet, make_routed_bijection
from .elements import NAT_RAY, ZERO_M, ZERO_Z, ZETA_RAY, MElement
from .syntax import (And, Bot, Const, Eq, Exists, Forall, Formula, Imp, Not, Or, Pred, Rel, Succ,
                     Term, Top, Var, Zero, print_formula)

__all__ = ["MElement", "ZERO_M", "ZERO_Z", "succ", "in_pi", "eval_term", "eval_ground", "r0"]


def succ(e: MElement) -> MElement:
    return e.succ()


def in_pi(a: MElement, b: MElement) -> bool:
    """Membership in the three lines pi_1, pi_2, pi_3 where ``p`` fails.

    pi_1 = {(0_M+n, 0_Z+2n)}, pi_2 = {(0_Z+n, 0_M+2n)}, pi_3 = {(0_Z-n-1, 0_Z-2n-2)}.
    """
    if b.index != 2 * a.index:
        return False
    if a.ray == NAT_RAY:
        return b.ray == ZETA_RAY
    if a.index >= 0:
        return b.ray == NAT_RAY
    return b.ray == ZETA_RAY


def eval_term(t: Term) -> MElement:
    n = 0
    while isinstance(t, Succ):
        n, t = n + 1, t.arg
    if isinstance(t, Zero):
        return ZERO_M.shift(n)
    if isinstance(t, Const):
        return t.elem.shift(n)
    raise ValueError(f"free variable {t.name!r} in ground term")


RelLookup = Callable[[str], PartialBijection]


def eval_ground(f: Formula, relations: RelLookup | None = None) -> bool:
    """Truth value in M of a quantifier-free, variable-free formula.

    ``relations`` resolves names of ``rel`` atoms; it is only needed when such
    atoms occur.
    """
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Pred):
        args = [eval_term(t) for t in f.args]
        if f.name == "N":
            return True
        if f.name == "p":
            return not in_pi(*args)
        raise ValueError(f"predicate {f.name!r} is not interpreted in M")
    if isinstance(f, Eq):
        return eval_term(f.left) == eval_term(f.right)
    if isinstance(f, Rel):
        if relations is None:
            raise ValueError(f"no interpretation for relation {f.name!r}")
        return relations(f.name).holds(eval_term(f.left), eval_term(f.right))
    if isinstance(f, Not):
        return not eval_ground(f.body, relations)
    if isinstance(f, And):
        return eval_ground(f.left, relations) and eval_ground(f.right, relations)
    if isinstance(f, Or):
        return eval_ground(f.left, relations) or eval_ground(f.right, relations)
    if isinstance(f, Imp):
        return (not eval_ground(f.left, relations)) or eval_ground(f.right, relations)
    assert isinstance(f, (Exists, Forall))
    raise ValueError(f"quantifier in ground formula {print_formula(f)}")


@functools.lru_cache(maxsize=1)
def r0() -> PartialBijection:
    """Complement of ``p_M``: the odd map x -> 2x on the whole universe."""
    bij, parity = make_routed_bijection(RaySet.universe(), PhiMap(1))
    assert parity == "odd"
    return bij


def is_var_free(t: Term) -> bool:
    while isinstance(t, Succ):
        t = t.arg
    return not isinstance(t, Var)
