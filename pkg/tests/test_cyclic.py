import json
import random
import time

import pytest

from indkit.cyclic import (TraceGraph, TraceRelation, brute_force_gtc, build_trace_graph,
                           check_case_rule, check_cyclic_proof, check_gtc, closed_walks,
                           lasso_has_progressing_trace)
from indkit.hydra import hydra_cyclic_proof
from indkit.lkid import PHI_N
from indkit.syntax import parse_proof, parse_sequent

from .mutants import middle_bud_cycle, rewired, swap_loop, without_progress
from .strategies import random_proof_graph

S = parse_sequent


@pytest.fixture(scope="module")
def hydra():
    return hydra_cyclic_proof()


@pytest.fixture(scope="module")
def hydra_graph(hydra):
    return build_trace_graph(PHI_N, hydra)


def test_hydra_proof_is_accepted_quickly(hydra):
    t = time.perf_counter()
    assert check_cyclic_proof(PHI_N, hydra).accepted
    assert time.perf_counter() - t < 1.0


def test_hydra_proof_has_three_buds_to_the_root(hydra):
    assert len(hydra.buds) == 3 and set(hydra.buds.values()) == {hydra.root}


def test_bud_edges_are_positional(hydra, hydra_graph):
    for bud, comp in hydra.buds.items():
        n = len(hydra_graph.vertices[comp])
        assert hydra_graph.edges[(bud, comp)] == frozenset((i, i, False) for i in range(n))


def test_case_split_progresses(hydra, hydra_graph):
    v = check_case_rule(PHI_N, hydra, hydra.root)
    assert v.accepted
    root_atoms = hydra_graph.vertices[hydra.root]
    assert root_atoms == ("(N x)", "(N y)")
    progressing = {(a, b) for (a, b), t in hydra_graph.edges.items() if any(p for *_, p in t)}
    assert any(a == hydra.root for a, _ in progressing)


def test_gtc_agrees_with_brute_force_on_hydra(hydra_graph):
    assert check_gtc(hydra_graph).accepted
    assert brute_force_gtc(hydra_graph, 60).accepted


def test_swap_loop_is_rejected():
    script = swap_loop()
    v = check_cyclic_proof(PHI_N, script)
    assert not v.accepted and "global trace condition" in v.reason
    g = build_trace_graph(PHI_N, script)
    assert not brute_force_gtc(g).accepted
    cert = v.certificate
    assert cert["cycle"][0] == cert["cycle"][-1]


def test_middle_bud_without_progress_is_rejected(hydra, hydra_graph):
    path = middle_bud_cycle(hydra, hydra_graph)
    g = without_progress(hydra_graph, path)
    v = check_gtc(g)
    assert not v.accepted
    assert v.certificate["cycle"] == path
    assert not brute_force_gtc(g, len(path)).accepted


def test_rewired_bud_is_rejected(hydra):
    script, last = rewired(hydra)
    v = check_cyclic_proof(PHI_N, script)
    assert not v.accepted and v.failing_node == last and "differs" in v.reason


def test_induction_rule_not_allowed():
    text = """
    (root 0)
    (node 0 (seq (ante (N x)) (succ (N x))) (rule ind (N x) (hyp N (z) (N z))) (children))
    """
    v = check_cyclic_proof(PHI_N, parse_proof(text))
    assert not v.accepted and "case split" in v.reason


def test_case_rule_rejects_missing_cases():
    text = """
    (root 0)
    (node 0 (seq (ante (N x)) (succ (N x))) (rule case (N x)) (children 1))
    (node 1 (seq (ante (= x 0)) (succ (N x))) (rule wk) (children))
    """
    v = check_cyclic_proof(PHI_N, parse_proof(text))
    assert not v.accepted and v.failing_node == 0


def test_relations_compose():
    a = TraceRelation(0, 1, frozenset({(0, 0, False), (0, 1, True)}))
    b = TraceRelation(1, 0, frozenset({(1, 0, False), (0, 1, False)}))
    ab = a.then(b)
    assert ab.pairs == frozenset({(0, 0, True), (0, 1, False)})
    assert not ab.is_idempotent() or ab.has_progressing_diagonal()
    assert TraceRelation(0, 0, frozenset({(0, 0, False), (0, 0, True)})).pairs == frozenset({(0, 0, True)})


def test_trace_graph_json(hydra_graph):
    d = json.loads(hydra_graph.to_json())
    assert set(d) == {"root", "vertices", "edges"}
    assert all(e["label"] in ("progress", "stay") for e in d["edges"])
    assert sum(e["back"] for e in d["edges"]) >= 3


def _valid_certificate(g: TraceGraph, cert: dict) -> bool:
    cyc = tuple(cert["cycle"])
    if cyc[0] != cyc[-1] or any((a, b) not in g.edges for a, b in zip(cyc, cyc[1:])):
        return False
    pre = cert["prefix"]
    return pre[0] == g.root and pre[-1] == cyc[0] and not lasso_has_progressing_trace(g, cyc)


@pytest.mark.parametrize("seed", range(300))
def test_gtc_matches_brute_force_on_small_graphs(seed):
    rng = random.Random(seed)
    g = random_proof_graph(rng, rng.randint(2, 12))
    fast = check_gtc(g)
    slow = brute_force_gtc(g, 2 * len(g.vertices))
    if fast.accepted:
        assert slow.accepted
    else:
        assert _valid_certificate(g, fast.certificate)
    if not slow.accepted:
        assert not fast.accepted


def test_closed_walks_revisit_their_start():
    g = TraceGraph(0, {0: ("a",), 1: ("a",)},
                   {(0, 1): frozenset({(0, 0, False)}), (1, 0): frozenset({(0, 0, True)}),
                    (0, 0): frozenset({(0, 0, False)})})
    walks = set(closed_walks(g, 4))
    assert (0, 1, 0, 0) in walks and (0, 0) in walks
