"""Cyclic pre-proofs: case-split rules, trace graphs and the global trace condition."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .lkid import (ACCEPT, LKID_RULES, EqLeftData, Expect, InductiveSystem, RuleError, Verdict,
                   check_case, check_node, check_rules, context_for, reject)
from .syntax import Formula, ProofScript, print_formula, print_sequent, substitute

CLKID_RULES = {name: h for name, h in LKID_RULES.items() if name != "ind"}
CLKID_RULES["case"] = check_case


def check_case_rule(sys: InductiveSystem, script: ProofScript, node_id: int) -> Verdict:
    """Check one case-split node; the certificate lists each child's case-descendants."""
    node = script.nodes[node_id]
    if node.rule != "case":
        return reject(node_id, f"node {node_id} is not a case split")
    try:
        assignment = check_node(context_for(sys), script, node, {"case": check_case})
    except RuleError as e:
        return reject(node_id, str(e))
    cert = {str(c): [print_formula(f) for f in e.info] for c, e in sorted(assignment.items())}
    return Verdict("accept", certificate=cert)


# ---------------------------------------------------------------------------
# Trace relations

Triple = tuple  # (source occurrence, target occurrence, progress flag)


def _normalize(triples: Iterable[Triple]) -> frozenset:
    best: dict[tuple[int, int], bool] = {}
    for i, j, p in triples:
        best[(i, j)] = best.get((i, j), False) or bool(p)
    return frozenset((i, j, p) for (i, j), p in best.items())


@dataclass(frozen=True)
class TraceRelation:
    """Trace pairs between the inductive antecedent atoms of two nodes."""

    source: int
    target: int
    pairs: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", _normalize(self.pairs))

    @staticmethod
    def identity(node: int, occurrences: int) -> TraceRelation:
        return TraceRelation(node, node, frozenset((o, o, False) for o in range(occurrences)))

    def then(self, other: TraceRelation) -> TraceRelation:
        """Follow ``self`` and afterwards ``other``."""
        if self.target != other.source:
            raise ValueError("relations do not meet")
        by_src: dict[int, list] = {}
        for j, k, q in other.pairs:
            by_src.setdefault(j, []).append((k, q))
        out = [(i, k, p or q) for i, j, p in self.pairs for k, q in by_src.get(j, ())]
        return TraceRelation(self.source, other.target, frozenset(out))

    def is_idempotent(self) -> bool:
        return self.source == self.target and self.then(self) == self

    def has_progressing_diagonal(self) -> bool:
        return any(i == j and p for i, j, p in self.pairs)


# ---------------------------------------------------------------------------
# Trace graphs


@dataclass
class TraceGraph:
    root: int
    vertices: dict = field(default_factory=dict)  # node -> tuple of printed inductive atoms
    edges: dict = field(default_factory=dict)  # (node, node) -> frozenset of triples
    back_edges: frozenset = frozenset()  # (bud, companion) pairs

    def successors(self, node: int) -> list[int]:
        return sorted(m for (n, m) in self.edges if n == node)

    def relation(self, a: int, b: int) -> TraceRelation:
        return TraceRelation(a, b, self.edges[(a, b)])

    def to_dict(self) -> dict:
        verts = [{"node": n, "occ": i, "atom": a}
                 for n in sorted(self.vertices) for i, a in enumerate(self.vertices[n])]
        edges = [{"from": [a, i], "to": [b, j], "label": "progress" if p else "stay",
                  "back": (a, b) in self.back_edges}
                 for (a, b) in sorted(self.edges) for i, j, p in sorted(self.edges[(a, b)])]
        return {"root": self.root, "vertices": verts, "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _inductive_atoms(sys: InductiveSystem, seq) -> list[Formula]:
    return [f for f in seq.ante if sys.is_inductive_atom(f)]


def _edge_triples(sys: InductiveSystem, rule: str, principal: Formula | None, expect: Expect,
                  parent: list[Formula], child: list[Formula]) -> set[Triple]:
    pos = {f: j for j, f in enumerate(child)}
    out: set[Triple] = set()
    if rule == "subst":
        theta = expect.info
        for j, f in enumerate(child):
            g = substitute(f, theta)
            if g in parent:
                out.add((parent.index(g), j, False))
        return out
    if rule == "eqL":
        d: EqLeftData = expect.info
        for g in d.template.ante:
            a, b = d.before(g), d.after(g)
            if a in parent and b in pos:
                out.add((parent.index(a), pos[b], False))
        return out
    for i, f in enumerate(parent):
        if f in pos:
            out.add((i, pos[f], False))
    if rule == "case":
        i = parent.index(principal)
        for d in expect.info:
            if d in pos:
                out.add((i, pos[d], True))
    return out


def build_trace_graph(sys: InductiveSystem, script: ProofScript,
                      axioms: Iterable[Formula] = ()) -> TraceGraph:
    """Trace graph of a pre-proof whose local rule instances are all correct."""
    verdict, assignments = check_rules(sys, script, axioms, CLKID_RULES)
    if not verdict.accepted:
        raise ValueError(f"node {verdict.failing_node}: {verdict.reason}")
    atoms = {n: _inductive_atoms(sys, node.sequent) for n, node in script.nodes.items()}
    g = TraceGraph(script.root, {n: tuple(print_formula(f) for f in fs) for n, fs in atoms.items()})
    ctx = context_for(sys)
    for nid, assignment in assignments.items():
        node = script.nodes[nid]
        principal = ctx.formula(node.args[0]) if node.rule == "case" else None
        for child, expect in assignment.items():
            g.edges[(nid, child)] = _normalize(
                _edge_triples(sys, node.rule, principal, expect, atoms[nid], atoms[child]))
    for bud, comp in script.buds.items():
        n = min(len(atoms[bud]), len(atoms[comp]))
        g.edges[(bud, comp)] = frozenset((i, i, False) for i in range(n))
    g.back_edges = frozenset(script.buds.items())
    return g


# ---------------------------------------------------------------------------
# Global trace condition: closure of relations between cycle hubs


def _reachable(g: TraceGraph) -> list[int]:
    seen, order, stack = {g.root}, [], [g.root]
    while stack:
        n = stack.pop()
        order.append(n)
        for m in g.successors(n):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return order


def _hubs(g: TraceGraph) -> set[int]:
    """Targets of DFS back edges; every cycle through reachable nodes meets one."""
    hubs: set[int] = set()
    state: dict[int, int] = {}
    stack = [(g.root, iter(g.successors(g.root)))]
    state[g.root] = 1
    while stack:
        n, it = stack[-1]
        for m in it:
            if state.get(m) == 1:
                hubs.add(m)
            elif m not in state:
                state[m] = 1
                stack.append((m, iter(g.successors(m))))
                break
        else:
            state[n] = 2
            stack.pop()
    return hubs


def _segments(g: TraceGraph, hubs: set[int]) -> list[tuple[TraceRelation, tuple[int, ...]]]:
    """Relations (with witness walks) of hub-to-hub walks avoiding hubs in between."""
    out = []
    for h in sorted(hubs):
        occ = len(g.vertices[h])
        frontier = [(h, TraceRelation.identity(h, occ), (h,))]
        seen: set = set()
        while frontier:
            n, rel, walk = frontier.pop()
            for m in g.successors(n):
                step = rel.then(g.relation(n, m))
                if m in hubs:
                    out.append((step, walk + (m,)))
                elif (m, step.pairs) not in seen:
                    seen.add((m, step.pairs))
                    frontier.append((m, TraceRelation(h, m, step.pairs), walk + (m,)))
    return out


def _tree_path(g: TraceGraph, target: int) -> tuple[int, ...]:
    prev: dict[int, int | None] = {g.root: None}
    queue = deque([g.root])
    while queue:
        n = queue.popleft()
        if n == target:
            break
        for m in g.successors(n):
            if m not in prev:
                prev[m] = n
                queue.append(m)
    path, cur = [], target
    while cur is not None:
        path.append(cur)
        cur = prev[cur]
    return tuple(reversed(path))


def check_gtc(g: TraceGraph) -> Verdict:
    """Decide the global trace condition; a rejection carries a lasso certificate."""
    hubs = _hubs(g) & set(_reachable(g))
    base = _segments(g, hubs)
    closure: dict[tuple, tuple[int, ...]] = {}
    work = deque()
    for rel, walk in base:
        key = (rel.source, rel.target, rel.pairs)
        if key not in closure:
            closure[key] = walk
            work.append(key)
    while work:
        a, b, pairs = work.popleft()
        left = TraceRelation(a, b, pairs)
        for rel, walk in base:
            if rel.source != b:
                continue
            comp = left.then(rel)
            key = (a, rel.target, comp.pairs)
            if key not in closure:
                closure[key] = closure[(a, b, pairs)] + walk[1:]
                work.append(key)
    for (a, b, pairs), walk in sorted(closure.items(), key=lambda kv: (len(kv[1]), kv[1])):
        rel = TraceRelation(a, b, pairs)
        if a == b and rel.is_idempotent() and not rel.has_progressing_diagonal():
            prefix = _tree_path(g, a)
            cert = {"prefix": list(prefix), "cycle": list(walk),
                    "relation": sorted([i, j, p] for i, j, p in pairs)}
            return reject(a, "global trace condition fails: the lasso has no progressing trace",
                          cert)
    return ACCEPT


# ---------------------------------------------------------------------------
# Brute-force oracle


def walk_has_progressing_trace(g: TraceGraph, cycle: tuple[int, ...], copies: int) -> bool:
    """Search the unrolled walk for a trace returning to its start occurrence with progress."""
    steps = list(zip(cycle, cycle[1:])) * copies
    start_node = cycle[0]
    for o in range(len(g.vertices[start_node])):
        layer = {(o, False)}
        for a, b in steps:
            nxt = set()
            for i, prog in layer:
                for x, y, p in g.edges[(a, b)]:
                    if x == i:
                        nxt.add((y, prog or p))
            layer = nxt
            if not layer:
                break
        if (o, True) in layer:
            return True
    return False


def lasso_has_progressing_trace(g: TraceGraph, cycle: tuple[int, ...]) -> bool:
    """True when repeating ``cycle`` forever admits an infinitely progressing trace."""
    occ = len(g.vertices[cycle[0]])
    return any(walk_has_progressing_trace(g, cycle, k) for k in range(1, occ + 2))


def closed_walks(g: TraceGraph, max_len: int) -> Iterable[tuple[int, ...]]:
    """Closed walks of length at most ``max_len`` through nodes reachable from the root.

    Each walk starts at its least node and may pass through it again.
    """
    reach = set(_reachable(g))
    preds: dict[int, set[int]] = {n: set() for n in g.vertices}
    for a, b in g.edges:
        preds[b].add(a)
    for start in sorted(reach):
        back = {start}
        queue = deque([start])
        while queue:
            n = queue.popleft()
            for m in preds[n]:
                if m >= start and m not in back:
                    back.add(m)
                    queue.append(m)
        stack = [(start,)]
        while stack:
            walk = stack.pop()
            if len(walk) > max_len:
                continue
            for m in g.successors(walk[-1]):
                if m == start:
                    yield walk + (m,)
                if m in back:
                    stack.append(walk + (m,))


def brute_force_gtc(g: TraceGraph, max_len: int | None = None) -> Verdict:
    """Enumerate lassos up to ``max_len`` steps and search each for a progressing trace."""
    if max_len is None:
        max_len = 3 * len(g.vertices)
    for walk in closed_walks(g, max_len):
        if not lasso_has_progressing_trace(g, walk):
            return reject(walk[0], "lasso without a progressing trace",
                          {"prefix": list(_tree_path(g, walk[0])), "cycle": list(walk)})
    return ACCEPT


# ---------------------------------------------------------------------------
# Whole-proof check


def check_cyclic_proof(sys: InductiveSystem, script: ProofScript,
                       axioms: Iterable[Formula] = ()) -> Verdict:
    for bud in sorted(script.buds):
        comp = script.buds[bud]
        if script.nodes[bud].sequent != script.nodes[comp].sequent:
            return reject(bud, f"bud sequent {print_sequent(script.nodes[bud].sequent)} differs "
                               f"from its companion {comp}")
    for nid in script.ordered_ids():
        if script.nodes[nid].rule == "ind":
            return reject(nid, "the induction rule is not part of the cyclic system; "
                               "use a case split")
    verdict, _ = check_rules(sys, script, axioms, CLKID_RULES)
    if not verdict.accepted:
        return verdict
    return check_gtc(build_trace_graph(sys, script, axioms))
