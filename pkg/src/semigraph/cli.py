"""``semigraph`` command line: ingest, correlate, check-algebra, test-theorem, demo.

Exit status: 0 success, 1 a condition fails or a counterexample was found,
2 usage, input or format errors.
"""
from __future__ import annotations

import argparse
import json
import operator
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import algebra as alg_mod
from .algebra import (BUILTIN_NAMES, NUMERIC_NAMES, ValueAlgebra, annihilates,
                      builtin_algebra, check_conditions, custom_algebra,
                      table_algebra)
from .array import render
from .errors import SemigraphError, SparseModeError
from .graph import adjacency, incidence_from_graph, read_edge_tsv
from .ingest import (SEP, explode, incidence_pair_from_columns, load_demo,
                     read_tsv, reweight)
from .witness import test_theorem

SUBCOMMANDS = ("ingest", "correlate", "check-algebra", "test-theorem", "demo")
DEMO_WEIGHTS = {"Genre|Pop": "2", "Genre|Rock": "3"}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    subcommand: str
    semiring: str = "plus.times"
    algebra_file: Path | None = None
    mode: str = "dense"
    separator: str = SEP
    seed: int = 0
    trials: int = 1000
    budget: int = alg_mod.DEFAULT_BUDGET
    input: Path | None = None
    output: Path | None = None
    edges: bool = False
    out_field: str | None = None
    in_field: str | None = None
    weights: dict[str, str] = field(default_factory=dict)
    format: str = "json"


# -- algebra files ----------------------------------------------------------

_NAMED_OPS = {"add": operator.add, "mul": operator.mul, "max": max, "min": min}


def _op_from_spec(spec, modulus):
    if isinstance(spec, list):
        return spec
    if spec not in _NAMED_OPS:
        raise SemigraphError(f"unknown operation {spec!r}; use a table or one of {sorted(_NAMED_OPS)}")
    op = _NAMED_OPS[spec]
    if modulus:
        return lambda a, b: op(a, b) % modulus
    return op


def load_algebra_file(path: Path) -> ValueAlgebra:
    """Custom algebra from JSON.

    Either ``elements`` with ``plus``/``times`` as Cayley tables (or named
    operations ``add``, ``mul``, ``max``, ``min``, optionally reduced by
    ``modulus``), or ``sampled: {"integers": [lo, hi]}`` with named operations.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SemigraphError(f"cannot read algebra file {path}: {exc}") from None
    name = doc.get("name", Path(path).stem)
    zero, one = doc.get("zero", 0), doc.get("one", 1)
    modulus = doc.get("modulus")
    if "elements" in doc:
        elements = doc["elements"]
        plus = _op_from_spec(doc["plus"], modulus)
        times = _op_from_spec(doc["times"], modulus)
        if isinstance(plus, list) and isinstance(times, list):
            return table_algebra(elements, plus, times, zero, one, name=name)
        if isinstance(plus, list) or isinstance(times, list):
            raise SemigraphError("give both operations as tables or both as names")
        return custom_algebra(elements, plus, times, zero, one, name=name)
    sampled = doc.get("sampled", {})
    if "integers" not in sampled:
        raise SemigraphError("algebra file needs 'elements' or 'sampled': {'integers': [lo, hi]}")
    lo, hi = sampled["integers"]
    plus = _op_from_spec(doc["plus"], modulus)
    times = _op_from_spec(doc["times"], modulus)
    return custom_algebra(lambda rng: rng.randint(lo, hi), plus, times, zero, one, name=name)


def resolve_algebra(cfg: CliConfig, universe=None) -> ValueAlgebra:
    if cfg.algebra_file is not None:
        return load_algebra_file(cfg.algebra_file)
    return builtin_algebra(cfg.semiring, universe)


# -- output -----------------------------------------------------------------

def _emit(cfg: CliConfig, doc, text: str):
    body = json.dumps(doc, indent=2, ensure_ascii=False) if cfg.format == "json" else text
    body = body.rstrip("\n") + "\n"
    if cfg.output is None:
        sys.stdout.write(body)
    else:
        Path(cfg.output).write_text(body, encoding="utf-8")


def _report_text(report, alg) -> str:
    lines = [f"algebra: {report.algebra}"]
    for c in report.CONDITIONS:
        res = getattr(report, c)
        w = "" if res.witness is None else "  witness: " + ", ".join(alg.format(v) for v in res.witness)
        lines.append(f"{c}: {res.verdict}{w}")
    scope = "exhaustive" if report.exhaustive else f"seeded sample (seed {report.seed})"
    lines.append(f"checked {report.sample_size} pairs over {report.elements} elements, {scope}")
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------

def _table(cfg: CliConfig):
    if cfg.input is None:
        raise SemigraphError("an input TSV path is required")
    try:
        return read_tsv(Path(cfg.input))
    except OSError as exc:
        raise SemigraphError(f"cannot read {cfg.input}: {exc}") from None


def _table_algebra(cfg: CliConfig, src) -> ValueAlgebra:
    # union.intersect draws its universe from the observed vocabulary
    universe = src.values() if cfg.semiring == "union.intersect" else None
    return resolve_algebra(cfg, universe)


def _check_mode(cfg: CliConfig, alg: ValueAlgebra):
    if cfg.mode == "sparse" and not annihilates(alg):
        raise SparseModeError(f"--mode sparse rejected: 0 does not annihilate ⊗ in {alg.name!r}")


def _apply_weights(pair, weights: dict[str, str]):
    alg = pair.algebra
    w_out, w_in = {}, {}
    for col, raw in weights.items():
        try:
            value = alg.parse(raw)
        except ValueError:
            raise SemigraphError(f"--weight {col}={raw}: not a value of {alg.name}") from None
        if col in pair.e_out.cols:
            w_out[col] = value
        elif col in pair.e_in.cols:
            w_in[col] = value
        else:
            raise SemigraphError(f"--weight: column {col!r} not in either incidence array")
    return type(pair)(reweight(pair.e_out, w_out), reweight(pair.e_in, w_in), pair.skipped_rows)


def _table_pair(cfg: CliConfig, src, alg):
    if not cfg.out_field or not cfg.in_field:
        raise SemigraphError("--out-field and --in-field are required for table input")
    exploded = explode(src, cfg.separator, alg)
    pair = incidence_pair_from_columns(exploded, cfg.out_field, cfg.in_field, cfg.separator)
    return _apply_weights(pair, cfg.weights)


def cmd_ingest(cfg: CliConfig) -> int:
    src = _table(cfg)
    alg = _table_algebra(cfg, src)
    arr = explode(src, cfg.separator, alg)
    _emit(cfg, arr.to_json(), render(arr))
    return EXIT_OK


def cmd_correlate(cfg: CliConfig) -> int:
    if cfg.edges:
        if cfg.input is None:
            raise SemigraphError("an input edge-list path is required")
        alg = resolve_algebra(cfg)
        _check_mode(cfg, alg)
        g, weights = read_edge_tsv(Path(cfg.input), alg)
        pair = incidence_from_graph(g, alg, weights)
    else:
        src = _table(cfg)
        alg = _table_algebra(cfg, src)
        _check_mode(cfg, alg)
        pair = _table_pair(cfg, src, alg)
        if pair.skipped_rows:
            print(f"skipped rows without both fields: {', '.join(pair.skipped_rows)}",
                  file=sys.stderr)
    result = adjacency(pair, cfg.mode)
    _emit(cfg, result.to_json(), render(result, alg.name))
    return EXIT_OK


def cmd_check_algebra(cfg: CliConfig) -> int:
    alg = resolve_algebra(cfg)
    report = check_conditions(alg, cfg.budget, cfg.seed)
    _emit(cfg, report.to_json(alg), _report_text(report, alg))
    return EXIT_OK if report.all_hold() else EXIT_FAIL


def cmd_test_theorem(cfg: CliConfig) -> int:
    alg = resolve_algebra(cfg)
    verdict = test_theorem(alg, cfg.trials, cfg.seed, cfg.budget)
    lines = [_report_text(verdict.conditions, alg)]
    if verdict.counterexample is None:
        lines.append(f"forward trials: {verdict.forward_trials}/{verdict.trials} valid adjacency arrays")
    else:
        cex = verdict.counterexample
        source = "random search" if cex.lemma == 0 else f"lemma {cex.lemma} construction"
        lines.append(f"counterexample from {source}:")
        lines.append(render(cex.product, "E_outᵀE_in"))
        lines += [f"  {v.kind} at ({v.source}, {v.target})" for v in cex.violation.violations]
    _emit(cfg, verdict.to_json(alg), "\n".join(lines))
    return EXIT_OK if verdict.counterexample is None else EXIT_FAIL


def semiring_sweep(src, out_field: str, in_field: str, weights: dict[str, str],
                   separator: str = SEP, mode: str = "dense") -> list[dict]:
    """Multiply the same incidence pair under every numeric semiring.

    Semirings whose rendered tables coincide are grouped together.
    """
    groups: list[dict] = []
    for name in NUMERIC_NAMES:
        alg = builtin_algebra(name)
        exploded = explode(src, separator, alg)
        pair = incidence_pair_from_columns(exploded, out_field, in_field, separator)
        pair = _apply_weights(pair, weights)
        result = adjacency(pair, mode)
        key = render(result)
        for g in groups:
            if g["text"] == key:
                g["semirings"].append(name)
                break
        else:
            groups.append({"semirings": [name], "text": key, "array": result})
    return groups


def cmd_demo(cfg: CliConfig) -> int:
    src = _table(cfg) if cfg.input is not None else load_demo()
    out_field, in_field = cfg.out_field or "Genre", cfg.in_field or "Writer"
    weights = cfg.weights or DEMO_WEIGHTS
    doc, text = {"out_field": out_field, "in_field": in_field}, []
    for label, w in (("unit", {}), ("reweighted", weights)):
        groups = semiring_sweep(src, out_field, in_field, w, cfg.separator, cfg.mode)
        doc[label] = [{"semirings": g["semirings"], "array": g["array"].to_json()} for g in groups]
        heading = "unit weights" if not w else "weights " + ", ".join(f"{k}={v}" for k, v in w.items())
        text.append(f"== {heading} ==")
        for g in groups:
            text.append(render(g["array"], " = ".join(g["semirings"])))
            text.append("")
    doc["weights"] = weights
    _emit(cfg, doc, "\n".join(text))
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "correlate": cmd_correlate,
    "check-algebra": cmd_check_algebra,
    "test-theorem": cmd_test_theorem,
    "demo": cmd_demo,
}


def run(cfg: CliConfig) -> int:
    try:
        if cfg.mode not in ("dense", "sparse"):
            raise SemigraphError(f"--mode must be dense or sparse, not {cfg.mode!r}")
        return COMMANDS[cfg.subcommand](cfg)
    except (SemigraphError, ValueError) as exc:
        print(f"semigraph {cfg.subcommand}: {exc}", file=sys.stderr)
        return EXIT_USAGE


# -- argument parsing -------------------------------------------------------

def _weight(text: str) -> tuple[str, str]:
    col, eq, value = text.rpartition("=")
    if not eq or not col:
        raise argparse.ArgumentTypeError(f"expected COLUMN=VALUE, got {text!r}")
    return col, value


def _default_seed() -> int:
    raw = os.environ.get("SEMIGRAPH_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"semigraph: SEMIGRAPH_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semiring", default="plus.times", choices=BUILTIN_NAMES)
    common.add_argument("--algebra-file", type=Path,
                        help="custom algebra JSON (overrides --semiring)")
    common.add_argument("--mode", default="dense", choices=("dense", "sparse"))
    common.add_argument("--sep", dest="separator", default=SEP)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $SEMIGRAPH_SEED or 0)")
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--budget", type=int, default=alg_mod.DEFAULT_BUDGET,
                        help="max ordered pairs examined by the condition check")
    common.add_argument("--out-field")
    common.add_argument("--in-field")
    common.add_argument("--weight", dest="weights", type=_weight, action="append",
                        default=[], metavar="COLUMN=VALUE")
    common.add_argument("--format", default="json", choices=("json", "text"))
    common.add_argument("--output", type=Path)

    parser = argparse.ArgumentParser(
        prog="semigraph", description="Adjacency arrays from incidence arrays over pluggable algebras.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("ingest", "correlate", "demo"):
            p.add_argument("input", nargs="?" if name == "demo" else None, type=Path)
        if name == "correlate":
            p.add_argument("--edges", action="store_true",
                           help="input is an edge list: key, source, target[, w_out, w_in]")
    return parser


def config_from_args(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    if ns.trials < 1:
        build_parser().error("--trials must be >= 1")
    if ns.budget < 1:
        build_parser().error("--budget must be >= 1")
    return CliConfig(
        subcommand=ns.subcommand, semiring=ns.semiring, algebra_file=ns.algebra_file,
        mode=ns.mode, separator=ns.separator,
        seed=_default_seed() if ns.seed is None else ns.seed,
        trials=ns.trials, budget=ns.budget, input=getattr(ns, "input", None),
        output=ns.output, edges=getattr(ns, "edges", False),
        out_field=ns.out_field, in_field=ns.in_field, weights=dict(ns.weights),
        format=ns.format,
    )


def main(argv=None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
