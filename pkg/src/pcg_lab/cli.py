"""Command-line entry point.

Subcommands: construct, eval, verify, recognize, certificate, shells,
census, fixtures.  Graphs travel as graph6 (.g6) or JSON; trees and
representations as JSON (trees also as weighted Newick); rationals are
"p/q" strings throughout.  Output bytes are deterministic for fixed
inputs: no timestamps or timings are ever written.

Exit codes: 64 usage error, 65 format error; recognize/certificate
additionally report their outcome as 0 (witness), 10 (refuted),
20 (certificate found), 30 (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import constructions as cons
from .graphs import Graph, from_graph6, graph_from_json, graph_to_json, to_graph6
from .predicates import (
    evaluate,
    parse_interval_set,
    rep_from_json,
    rep_to_json,
    verify_representation,
)
from .recognizer import (
    STATUS_CERTIFICATE,
    STATUS_INCONCLUSIVE,
    STATUS_REFUTED,
    STATUS_WITNESS,
    census,
    non_pcg_certificate,
    recognize_leaf_power,
    recognize_pcg,
)
from .shells import enumerate_shells, shell_bound_report
from .trees import from_newick, tree_from_json

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_FORMAT = 65
EXIT_REFUTED = 10
EXIT_CERTIFICATE = 20
EXIT_INCONCLUSIVE = 30

STATUS_EXIT = {
    STATUS_WITNESS: EXIT_OK,
    STATUS_REFUTED: EXIT_REFUTED,
    STATUS_CERTIFICATE: EXIT_CERTIFICATE,
    STATUS_INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@dataclass
class RunConfig:
    """Parsed invocation: one command plus the knobs shared by all of them."""

    command: str
    seed: int = 0
    workers: int = 1
    out: str | None = None
    quote_provenance: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class FormatError(Exception):
    pass


def _dump_json(data, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        if path.endswith(".json"):
            return graph_from_json(json.loads(text))
        return from_graph6(text.splitlines()[0])
    except (ValueError, KeyError, IndexError) as exc:
        raise FormatError(f"cannot parse graph file {path}: {exc}") from exc


def _load_tree(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        if path.endswith((".nwk", ".newick")):
            return from_newick(text)
        return tree_from_json(json.loads(text))
    except (ValueError, KeyError) as exc:
        raise FormatError(f"cannot parse tree file {path}: {exc}") from exc


def _load_rep(path: str):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if isinstance(data, dict) and "witness" in data:
            # a construct/fixtures output bundle; use its witness
            if data["witness"] is None:
                raise ValueError("bundle carries no witness representation")
            data = data["witness"]
        return rep_from_json(data)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"cannot parse representation {path}: {exc}") from exc


def _witnessed_payload(wg: cons.WitnessedGraph, quote: bool) -> dict:
    payload: dict = {"graph": graph_to_json(wg.graph)}
    if wg.graph.n <= 62:
        payload["graph6"] = to_graph6(wg.graph)
    payload["witness"] = None if wg.witness is None else rep_to_json(wg.witness)
    if quote:
        payload["provenance"] = wg.provenance
    return payload


def _slug(provenance: str) -> str:
    tail = provenance.split("/", 1)[-1].split()[0]
    return re.sub(r"[^A-Za-z0-9_.()=,-]", "-", tail)


def _emit_witnessed(results, cfg: RunConfig) -> None:
    payloads = [_witnessed_payload(w, cfg.quote_provenance) for w in results]
    if cfg.out is None:
        _dump_json(payloads if len(payloads) > 1 else payloads[0], None)
        return
    out = Path(cfg.out)
    if len(payloads) == 1 and not (out.is_dir() or cfg.out.endswith(os.sep)):
        _dump_json(payloads[0], cfg.out)
        return
    out.mkdir(parents=True, exist_ok=True)
    for i, (wg, payload) in enumerate(zip(results, payloads)):
        _dump_json(payload, str(out / f"{i:02d}_{_slug(wg.provenance)}.json"))


def _max_n_default(fallback: int) -> int:
    raw = os.environ.get("PCG_LAB_MAX_N")
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise FormatError(f"bad PCG_LAB_MAX_N value {raw!r}") from exc


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_construct(args, cfg: RunConfig) -> int:
    fam = args.family
    p = args.params
    try:
        if fam in ("figure1", "figure2", "figure3"):
            _expect_params(fam, p, 0)
            results = cons.fixture(fam)
        elif fam in ("complete", "empty"):
            _expect_params(fam, p, 1)
            results = cons.fixture(fam, int(p[0]))
        elif fam == "qt":
            _expect_params(fam, p, 2)
            results = [cons.build_qt_witness(int(p[0]), int(p[1]))]
        elif fam == "gk":
            _expect_params(fam, p, 1)
            results = [cons.build_gk_family(int(p[0]))]
        elif fam == "fr":
            _expect_params(fam, p, 1)
            results = [cons.WitnessedGraph(
                cons.family_Fr(int(p[0])), None,
                f"recursive-complement/F({int(p[0])})")]
        elif fam == "hy":
            _expect_params(fam, p, 1)
            results = [cons.WitnessedGraph(
                cons.family_Hy(int(p[0])), None,
                f"incidence/H({int(p[0])})")]
        elif fam == "incidence":
            _expect_params(fam, p, 2)
            results = [cons.WitnessedGraph(
                cons.uniform_incidence_graph(int(p[0]), int(p[1])), None,
                f"incidence/I({int(p[0])},{int(p[1])})")]
        else:
            print(f"unknown family {fam!r}", file=sys.stderr)
            return EXIT_USAGE
    except ValueError as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit_witnessed(results, cfg)
    return EXIT_OK


def _expect_params(fam, params, count):
    if len(params) != count:
        raise ValueError(f"family {fam!r} takes {count} parameter(s), "
                         f"got {len(params)}")


def _cmd_fixtures(args, cfg: RunConfig) -> int:
    results = []
    for name in ("figure1", "figure2", "figure3"):
        results.extend(cons.fixture(name))
    _emit_witnessed(results, cfg)
    return EXIT_OK


def _cmd_eval(args, cfg: RunConfig) -> int:
    rep = _load_rep(args.rep)
    g = evaluate(rep)
    if args.json or g.n > 62:
        _dump_json(graph_to_json(g), cfg.out)
    elif cfg.out is None:
        print(to_graph6(g))
    else:
        Path(cfg.out).write_text(to_graph6(g) + "\n", encoding="utf-8")
    return EXIT_OK


def _cmd_verify(args, cfg: RunConfig) -> int:
    rep = _load_rep(args.rep)
    target = _load_graph(args.graph)
    try:
        report = verify_representation(rep, target)
    except ValueError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _dump_json({
        "valid": report.valid,
        "missing_edges": [list(e) for e in report.missing_edges],
        "extra_edges": [list(e) for e in report.extra_edges],
    }, cfg.out)
    return EXIT_OK if report.valid else 1


def _cmd_recognize(args, cfg: RunConfig) -> int:
    g = _load_graph(args.graph)
    max_n = args.max_n if args.max_n is not None else _max_n_default(
        8 if args.leaf_power else 6
    )
    try:
        if args.leaf_power:
            result = recognize_leaf_power(g, max_n=max_n, workers=cfg.workers)
        else:
            result = recognize_pcg(g, max_n=max_n, workers=cfg.workers)
    except ValueError as exc:
        print(f"recognize: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "status": result.status,
        "witness": None if result.witness is None else rep_to_json(result.witness),
        "stats": {
            "topologies_tried": result.stats.topologies_tried,
            "feasibility_calls": result.stats.feasibility_calls,
        },
    }
    _dump_json(payload, cfg.out)
    return STATUS_EXIT[result.status]


def _cmd_certificate(args, cfg: RunConfig) -> int:
    g = _load_graph(args.graph)
    result = non_pcg_certificate(g)
    payload = {
        "status": result.status,
        "cycles": None if result.certificate is None
        else [list(c) for c in result.certificate],
    }
    _dump_json(payload, cfg.out)
    return STATUS_EXIT[result.status]


def _cmd_shells(args, cfg: RunConfig) -> int:
    tree = _load_tree(args.tree)
    try:
        intervals = parse_interval_set(args.intervals)
    except ValueError as exc:
        raise FormatError(f"bad interval set {args.intervals!r}: {exc}") from exc
    try:
        family = enumerate_shells(tree, intervals)
    except ValueError as exc:
        print(f"shells: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = family.to_json()
    payload["count"] = len(family)
    if args.bound_family_size is not None:
        report = shell_bound_report(
            len(family.ground), args.bound_family_size, [len(family)]
        )
        payload["bound_report"] = report.to_json()
    _dump_json(payload, cfg.out)
    return EXIT_OK


def _cmd_census(args, cfg: RunConfig) -> int:
    try:
        report = census(args.n, args.mode, workers=cfg.workers)
    except ValueError as exc:
        print(f"census: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _dump_json(report.to_json(), cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="pcg-lab",
        description="build, evaluate, verify and recognize tree-distance "
                    "graph representations",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed recorded for randomized suites")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel workers for recognize/census")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a named family or fixture")
    p.add_argument("family",
                   help="figure1|figure2|figure3|complete|empty|qt|gk|fr|hy|"
                        "incidence")
    p.add_argument("params", nargs="*", help="integer parameters")
    p.add_argument("--out", help="output file (or directory for fixtures)")
    p.add_argument("--quote-provenance", action="store_true",
                   help="annotate outputs with their origin")

    p = sub.add_parser("fixtures", help="emit every figure fixture")
    p.add_argument("--out", help="output directory")
    p.add_argument("--quote-provenance", action="store_true")

    p = sub.add_parser("eval", help="evaluate a representation into a graph")
    p.add_argument("--rep", required=True)
    p.add_argument("--json", action="store_true",
                   help="emit graph JSON instead of graph6")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a representation against a graph")
    p.add_argument("--rep", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--out")

    p = sub.add_parser("recognize", help="exact small-graph recognition")
    p.add_argument("--graph", required=True)
    p.add_argument("--leaf-power", action="store_true")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--out")

    p = sub.add_parser("certificate", help="complement double-cycle certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")

    p = sub.add_parser("shells", help="enumerate the shell family of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--intervals", required=True,
                   help='e.g. "[4,23]" or "[3,7] u [25,25]" or "empty"')
    p.add_argument("--bound-family-size", type=int, default=None,
                   help="also report the product bound against this size")
    p.add_argument("--out")

    p = sub.add_parser("census", help="classify all graphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("labeled", "unlabeled"),
                   default="unlabeled")
    p.add_argument("--out")
    return parser


_COMMANDS = {
    "construct": _cmd_construct,
    "fixtures": _cmd_fixtures,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "recognize": _cmd_recognize,
    "certificate": _cmd_certificate,
    "shells": _cmd_shells,
    "census": _cmd_census,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        seed=args.seed,
        workers=args.workers,
        out=getattr(args, "out", None),
        quote_provenance=getattr(args, "quote_provenance", False),
    )
    try:
        return _COMMANDS[args.command](args, cfg)
    except FormatError as exc:
        print(f"pcg-lab: {exc}", file=sys.stderr)
        return EXIT_FORMAT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
