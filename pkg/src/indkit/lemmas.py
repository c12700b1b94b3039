"""A small LKID proof in the system extended with ``le``: x <= y and y = 0 give x = 0."""
from __future__ import annotations

from .lkid import EXTRA_AXIOMS
from .syntax import Formula, ProofBuilder, ProofScript, Sequent, parse_formula

ZERO_AXIOM = EXTRA_AXIOMS["zero-axiom"]
LE_ZERO_HYPOTHESIS = "(imp (N z1) (and (N z2) (imp (= z2 0) (= z1 0))))"


def _f(text: str) -> Formula:
    return parse_formula(text)


def _hyp(a: str, c: str) -> Formula:
    # Induction hypothesis instance F(a, c). It carries N c so the zero axiom
    # can fire in the step case.
    return _f(f"(imp (N {a}) (and (N {c}) (imp (= {c} 0) (= {a} 0))))")


def le_zero_root() -> Sequent:
    return Sequent((ZERO_AXIOM, _f("(N x)"), _f("(N y)"), _f("(le x y)")),
                   (_f("(imp (= y 0) (= x 0))"),))


def le_zero_proof() -> ProofScript:
    """Induction on ``le x y`` with three premises: two minors and the major."""
    b = ProofBuilder(("N", "le"))
    goal = _f("(imp (= y 0) (= x 0))")
    ctx = (ZERO_AXIOM, _f("(N x)"), _f("(N y)"))

    def seq(ante: tuple, succ: list) -> Sequent:
        return Sequent(ctx + tuple(ante), tuple(succ) + (goal,))

    # minor for le(x, x): F(w, w)
    nw, w0 = _f("(N w)"), _f("(= w 0)")
    refl = _f("(imp (= w 0) (= w 0))")
    both = _f("(and (N w) (imp (= w 0) (= w 0)))")
    m1a = b.add(seq((nw,), [nw]), "axiom")
    m1b = b.add(seq((nw,), [refl]), "impR", [refl], [b.add(seq((nw, w0), [w0]), "axiom")])
    m1c = b.add(seq((nw,), [both]), "andR", [both], [m1a, m1b])
    minor1 = b.add(seq((), [_hyp("w", "w")]), "impR", [_hyp("w", "w")], [m1c])

    # minor for le(x, s y): F(y1, y2) gives F(y1, s y2)
    fy, fs = _hyp("y1", "y2"), _hyp("y1", "(s y2)")
    ny1, ny2 = _f("(N y1)"), _f("(N y2)")
    ih = _f("(imp (= y2 0) (= y1 0))")
    step = _f("(and (N (s y2)) (imp (= (s y2) 0) (= y1 0)))")
    base = (ny1, ny2, ih)
    n2 = b.add(seq(base, [_f("(N (s y2))")]), "intro", ["N", "1", "(x y2)"],
               [b.add(seq(base, [ny2]), "axiom")])
    sz, y10 = _f("(= (s y2) 0)"), _f("(= y1 0)")
    inst = _f("(imp (N y2) (not (= (s y2) 0)))")
    b1 = base + (sz, inst)
    k1 = b.add(seq(b1, [ny2, y10]), "axiom")
    k2a = b.add(seq(b1, [sz, y10]), "axiom")
    k2 = b.add(seq(b1 + (_f("(not (= (s y2) 0))"),), [y10]), "notL", ["(not (= (s y2) 0))"], [k2a])
    k3 = b.add(seq(b1, [y10]), "impL", [inst], [k1, k2])
    k4 = b.add(seq(base + (sz,), [y10]), "allL", [ZERO_AXIOM, "y2"], [k3])
    k5 = b.add(seq(base, [_f("(imp (= (s y2) 0) (= y1 0))")]), "impR",
               ["(imp (= (s y2) 0) (= y1 0))"], [k4])
    a1 = b.add(seq(base, [step]), "andR", [step], [n2, k5])
    packed = _f("(and (N y2) (imp (= y2 0) (= y1 0)))")
    a2 = b.add(seq((ny1, packed), [step]), "andL", [packed], [a1])
    a3 = b.add(seq((ny1,), [ny1, step]), "axiom")
    a4 = b.add(seq((fy, ny1), [step]), "impL", [fy], [a3, a2])
    minor2 = b.add(seq((fy,), [fs]), "impR", [fs], [a4])

    # major: F(x, y) |- goal
    j1 = b.add(seq((), [_f("(N x)")]), "axiom")
    j2 = b.add(seq((_f("(N y)"), goal), []), "axiom")
    packed = _f("(and (N y) (imp (= y 0) (= x 0)))")
    j3 = b.add(seq((packed,), []), "andL", [packed], [j2])
    major = b.add(seq((_hyp("x", "y"),), []), "impL", [_hyp("x", "y")], [j1, j3])

    root = b.add(le_zero_root(), "ind",
                 ["(le x y)", f"(hyp le (z1 z2) {LE_ZERO_HYPOTHESIS})", "(fresh (w) (y1 y2))"],
                 [minor1, minor2, major])
    return b.build(root)
