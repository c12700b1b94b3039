import itertools

from indkit import hydra
from indkit.elements import ZERO_M, ZERO_Z, MElement
from indkit.hydra import (H_A, H_C, HYDRA_AXIOMS, WIN, format_play, game_play, game_step,
                          hydra_cyclic_proof, hydra_formula, model_game_run, root_sequent)
from indkit.model import in_pi
from indkit.syntax import conjuncts, parse_formula, parse_proof, print_formula, print_proof


def test_formula_contains_the_axioms():
    h = hydra_formula()
    assert conjuncts(h.left) == list(HYDRA_AXIOMS)
    assert H_A == parse_formula("(all x (imp (N x) (and (p 0 0) (and (p (s 0) 0) (p x (s 0))))))")
    assert H_C == parse_formula("(all y (imp (N y) (imp (p (s y) y) (p 0 (s (s y))))))")
    assert parse_formula(print_formula(h)) == h


def test_steps():
    assert game_step((1, 4)) == (0, 2)
    assert game_step((0, 2)) == (1, 0)
    assert game_step((7, 1)) is WIN
    assert game_step((0, 0)) is WIN


def test_plays():
    assert game_play(1, 4) == [(1, 4), (0, 2), (1, 0)]
    assert format_play(game_play(1, 4)) == "(1,4)(0,2)(1,0) WIN"
    assert game_play(0, 0) == [(0, 0)]
    for n, m in itertools.product(range(31), repeat=2):
        assert game_step(game_play(n, m)[-1]) is WIN


def _cases(n: int, m: int) -> list[str]:
    out = []
    if (n, m) in ((0, 0), (1, 0)) or m == 1:
        out.append("win")
    if n >= 1 and m >= 2:
        out.append("both")
    if n == 0 and m >= 2:
        out.append("right")
    if n >= 2 and m == 0:
        out.append("left")
    return out


def test_cases_partition_the_states():
    for n, m in itertools.product(range(101), repeat=2):
        assert len(_cases(n, m)) == 1, (n, m)
        assert (game_step((n, m)) is WIN) == (_cases(n, m) == ["win"])


def test_model_run_duplicates_a_head():
    run = model_game_run((MElement(1, 2), MElement(2, 4)), 3)
    assert run[-1] == (MElement(2, -1), MElement(2, -2))


def test_model_run_wins_at_one_zero():
    assert model_game_run((MElement(1, 1), ZERO_M), 5)[-1] is WIN


def test_model_run_from_the_lines_never_wins():
    run = model_game_run((ZERO_Z, ZERO_M), 50)
    assert WIN not in run and len(run) == 51
    assert all(in_pi(*s) for s in run)
    for k in range(8):
        start = (MElement(1, k), MElement(2, 2 * k))
        assert all(s is not WIN and in_pi(*s) for s in model_game_run(start, 40))


def test_builder_matches_corpus(corpus_dir):
    built = hydra_cyclic_proof()
    shipped = parse_proof((corpus_dir / "clkid" / "hydra.proof").read_text())
    assert shipped == built
    assert built.nodes[built.root].sequent == root_sequent()
    assert sorted(built.buds.values()) == [built.root] * 3
    assert parse_proof(print_proof(built)) == built


def test_module_exports_game_marker():
    assert repr(hydra.WIN) == "WIN"
