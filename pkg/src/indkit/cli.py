"""Command-line front end: proof checking, deciding sentences over M, the hydra game."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import hydra, qe
from .cyclic import build_trace_graph, check_cyclic_proof
from .lemmas import ZERO_AXIOM, le_zero_proof
from .lkid import EXTRA_AXIOMS, Verdict, check_lkid_proof, system_for
from .syntax import ParseError, free_vars, parse_formula, parse_proof, print_formula, print_proof

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep stderr terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True) if args.format == "json" else text)


def _verdict_text(v: Verdict) -> str:
    if v.accepted:
        return "accept"
    where = f" at node {v.failing_node}" if v.failing_node is not None else ""
    return f"reject{where}: {v.reason}"


def cmd_check(args: argparse.Namespace) -> int:
    try:
        script = parse_proof(Path(args.file).read_text())
        sys_ = system_for(script.system)
    except (OSError, ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    axioms = [EXTRA_AXIOMS[a] for a in args.axiom]
    if args.system == "lkid":
        verdict = check_lkid_proof(sys_, script, axioms)
    else:
        verdict = check_cyclic_proof(sys_, script, axioms)
        if args.emit_trace_graph:
            g = build_trace_graph(sys_, script, axioms)
            Path(args.emit_trace_graph).write_text(g.to_json() + "\n")
    _emit(args, _verdict_text(verdict), verdict.to_dict())
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def _formula(text: str):
    return parse_formula(text)


def cmd_decide(args: argparse.Namespace) -> int:
    value, trace = qe.decide_with_trace(_formula(args.formula))
    if args.format == "json":
        print(json.dumps({"value": value, "trace": trace}, sort_keys=True))
    else:
        print("true" if value else "false")
        for rec in trace:
            print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


def cmd_qe(args: argparse.Namespace) -> int:
    f = _formula(args.formula)
    env = qe.RelEnv()
    free = sorted(free_vars(f))
    out = qe.eliminate_constants(qe.eliminate_quantifiers(qe.translate(f), env), env,
                                 free[0] if free else None)
    _emit(args, print_formula(out), {"formula": print_formula(out), "display": qe.show_formula(out)})
    return EXIT_OK


def cmd_measure(args: argparse.Namespace) -> int:
    s = qe.definable_set(_formula(args.formula), args.var)
    mu = s.measure()
    if args.emit_set:
        Path(args.emit_set).write_text(json.dumps(s.to_json(), sort_keys=True) + "\n")
    text = f"{mu.numerator}/{mu.denominator}"
    _emit(args, text, {"measure": text, "set": s.to_json()})
    return EXIT_OK


def cmd_hydra_play(args: argparse.Namespace) -> int:
    if args.n < 0 or args.m < 0:
        print("error: heads must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    trace = hydra.game_play(args.n, args.m)
    _emit(args, hydra.format_play(trace), {"trace": [list(t) for t in trace], "win": True})
    return EXIT_OK


def cmd_hydra_cert(args: argparse.Namespace) -> int:
    path = Path(args.out)
    path.write_text(print_proof(hydra.hydra_cyclic_proof()))
    script = parse_proof(path.read_text())
    verdict = check_cyclic_proof(system_for(script.system), script)
    _emit(args, f"wrote {path}; {_verdict_text(verdict)}",
          {"path": str(path), "verdict": verdict.to_dict()})
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def separation_report() -> dict:
    """Cyclic proof of H accepted, H false in M, each axiom true in M."""
    script = hydra.hydra_cyclic_proof()
    cyclic = check_cyclic_proof(system_for(script.system), script)
    axioms = {name: qe.decide_sentence(f) for name, f in zip("abcd", hydra.HYDRA_AXIOMS)}
    h_value = qe.decide_sentence(hydra.hydra_formula())
    lemma = le_zero_proof()
    lemma_ok = check_lkid_proof(system_for(lemma.system), lemma, [ZERO_AXIOM]).accepted
    return {
        "cyclic_proof_accepted": cyclic.accepted,
        "hydra_true_in_M": h_value,
        "axioms_true_in_M": axioms,
        "le_lemma_accepted": lemma_ok,
        "separated": cyclic.accepted and not h_value and all(axioms.values()),
    }


def cmd_demo(args: argparse.Namespace) -> int:
    r = separation_report()
    lines = [
        f"cyclic proof of H (CLKIDw, with GTC): {'accepted' if r['cyclic_proof_accepted'] else 'REJECTED'}",
        "axioms H_a..H_d in M: " + ", ".join(f"H_{k}={str(v).lower()}"
                                           for k, v in r["axioms_true_in_M"].items()),
        f"H in M: {str(r['hydra_true_in_M']).lower()}",
        "so H has a cyclic proof but no LKID proof (M is a Henkin model of the LKID rules)",
        f"le-system lemma (x<=y, y=0 give x=0) checked in LKID: "
        f"{'accepted' if r['le_lemma_accepted'] else 'REJECTED'}",
        "with le available, H becomes LKID-provable while M still refutes it, so adding le "
        "is not conservative (stated, not mechanized)",
        f"separation: {'yes' if r['separated'] else 'NO'}",
    ]
    _emit(args, "\n".join(lines), r)
    return EXIT_OK if r["separated"] and r["le_lemma_accepted"] else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="indkit", description=__doc__)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--window-scale", type=int, default=None,
                    help="scale factor for property-check windows (sets INDKIT_WINDOW)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check a proof script")
    c.add_argument("--system", choices=("lkid", "clkid"), required=True)
    c.add_argument("--axiom", action="append", default=[], choices=sorted(EXTRA_AXIOMS),
                   help="admit a named extra axiom (repeatable)")
    c.add_argument("--emit-trace-graph", metavar="PATH")
    c.add_argument("file")
    c.set_defaults(run=cmd_check)

    d = sub.add_parser("decide", help="truth of a sentence in M")
    d.add_argument("formula")
    d.set_defaults(run=cmd_decide)

    q = sub.add_parser("qe", help="quantifier-free equivalent over relation atoms")
    q.add_argument("formula")
    q.set_defaults(run=cmd_qe)

    m = sub.add_parser("measure", help="measure of the set a formula defines in M")
    m.add_argument("formula")
    m.add_argument("--var", required=True)
    m.add_argument("--emit-set", metavar="PATH")
    m.set_defaults(run=cmd_measure)

    h = sub.add_parser("hydra", help="the two-headed hydra game and its cyclic proof")
    hs = h.add_subparsers(dest="hydra_command", required=True, parser_class=_Parser)
    hp = hs.add_parser("play")
    hp.add_argument("n", type=int)
    hp.add_argument("m", type=int)
    hp.set_defaults(run=cmd_hydra_play)
    hc = hs.add_parser("cert")
    hc.add_argument("--out", default="hydra.proof")
    hc.set_defaults(run=cmd_hydra_cert)

    dm = sub.add_parser("demo")
    dm.add_argument("name", choices=("separation",))
    dm.set_defaults(run=cmd_demo)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.window_scale is not None:
        os.environ["INDKIT_WINDOW"] = str(args.window_scale)
    try:
        return args.run(args)
    except (ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
