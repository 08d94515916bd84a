"""Command line interface: construct, verify, oracle, greedy, distance, table.

Output is deterministic given identical flags and seed. verify emits a
one-line JSON verdict; the other subcommands emit TSV (or JSON with
--format json). Exit codes: 0 success or maximal, 2 not k-wise
intersecting, 3 not saturated, 1 usage or error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .construction import ConstructionParams, build_family, expected_size
from .familyio import read_family, write_family
from .search import (
    DOWNSET_MAX_N,
    GREEDY_MAX_N,
    MINIMIZE_MAX_N,
    cube_distance,
    greedy_saturate,
    minimize_cube_distance,
    oracle_min_size,
    size_table,
)
from .setcore import Family, TABLE_MAX_N, Universe, elements_of
from .verifier import CoverWitness, GapWitness, is_maximal_kwise

SCHEMA = 1
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_KWISE = 2
EXIT_NOT_SATURATED = 3

_CONSTRUCT_MAX_N = 30


class _Parser(argparse.ArgumentParser):
    """argparse variant exiting 1 on usage errors (2 is a verdict code)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    k: int | None = None
    n: int | None = None
    k_range: tuple[int, int] | None = None
    n_range: tuple[int, int] | None = None
    input_path: str | None = None
    out: str | None = None
    fmt: str = "tsv"
    seed: int = 0
    runs: int = 1
    backend: str = "auto"
    world: str = "complement"
    order: str = "random"
    minimize: bool = False
    threads: int = 1


def _parse_range(parser: _Parser, text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        parser.error(f"bad range {text!r}, expected INT or LO..HI")
    if lo > hi:
        parser.error(f"empty range {text!r}")
    return lo, hi


def _threads_from_env(parser: _Parser) -> int:
    raw = os.environ.get("KWISE_THREADS")
    if raw is None:
        return 1
    try:
        t = int(raw)
    except ValueError:
        parser.error(f"KWISE_THREADS must be an integer, got {raw!r}")
    if t < 0:
        parser.error(f"KWISE_THREADS must be >= 0, got {t}")
    return t if t > 0 else (os.cpu_count() or 1)


def parse_args(argv: Sequence[str]) -> RunConfig:
    parser = _Parser(prog="kwise", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="emit the block construction family")
    p_construct.add_argument("--k", type=int, required=True)
    p_construct.add_argument("--n", type=int, required=True)
    p_construct.add_argument("--out", help="write the family file here instead of stdout")

    p_verify = sub.add_parser("verify", help="verify a family file for maximality")
    p_verify.add_argument("family", nargs="?", default="-", help="family file, - for stdin")
    p_verify.add_argument("--k", type=int, required=True)
    p_verify.add_argument("--world", choices=("direct", "complement"), default="complement")
    p_verify.add_argument("--backend", choices=("dp", "tuples", "both", "auto"), default="auto")

    p_oracle = sub.add_parser("oracle", help="exhaustive minimum over all maximal families")
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p_greedy = sub.add_parser("greedy", help="seeded greedy saturation runs")
    p_greedy.add_argument("--k", type=int, required=True)
    p_greedy.add_argument("--n", type=int, required=True)
    p_greedy.add_argument("--runs", type=int, default=1)
    p_greedy.add_argument("--seed", type=int, default=0)
    p_greedy.add_argument("--order", choices=("random", "popcount"), default="random")
    p_greedy.add_argument("--in", dest="input_path", help="start from this family file")
    p_greedy.add_argument("--out", help="directory for the resulting family files")
    p_greedy.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p_distance = sub.add_parser("distance", help="cube distance of a family from its partition")
    p_distance.add_argument("--k", type=int, required=True)
    p_distance.add_argument("--n", type=int, required=True)
    p_distance.add_argument("--in", dest="input_path", help="family file (construction by default)")
    p_distance.add_argument("--minimize", action="store_true",
                            help="also minimise over all balanced partitions (n <= 8)")
    p_distance.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p_table = sub.add_parser("table", help="size table over (k, n) ranges")
    p_table.add_argument("--k", required=True, help="INT or LO..HI")
    p_table.add_argument("--n", required=True, help="INT or LO..HI")
    p_table.add_argument("--runs", type=int, default=0, help="greedy seeds per cell (0 skips)")
    p_table.add_argument("--seed", type=int, default=0)
    p_table.add_argument("--order", choices=("random", "popcount"), default="random")
    p_table.add_argument("--format", choices=("tsv", "json"), default="tsv")

    ns = parser.parse_args(argv)
    threads = _threads_from_env(parser)
    cfg = RunConfig(command=ns.command, threads=threads)

    if ns.command == "construct":
        if ns.k < 3:
            parser.error(f"construction requires k >= 3, got {ns.k}")
        if ns.n < 2 * (ns.k - 1):
            parser.error(f"construction requires n >= 2(k-1) = {2 * (ns.k - 1)}, got {ns.n}")
        if ns.n > _CONSTRUCT_MAX_N:
            parser.error(f"construction output capped at n <= {_CONSTRUCT_MAX_N}")
        cfg.k, cfg.n, cfg.out = ns.k, ns.n, ns.out
    elif ns.command == "verify":
        if ns.k < 2:
            parser.error(f"verification requires k >= 2, got {ns.k}")
        cfg.k = ns.k
        cfg.world = ns.world
        cfg.backend = ns.backend
        cfg.input_path = ns.family
    elif ns.command == "oracle":
        if ns.k < 2:
            parser.error(f"the oracle requires k >= 2, got {ns.k}")
        if not 1 <= ns.n <= DOWNSET_MAX_N:
            parser.error(f"the exhaustive oracle requires 1 <= n <= {DOWNSET_MAX_N}")
        cfg.k, cfg.n, cfg.fmt = ns.k, ns.n, ns.format
    elif ns.command == "greedy":
        if ns.k < 2:
            parser.error(f"greedy saturation requires k >= 2, got {ns.k}")
        if not 1 <= ns.n <= GREEDY_MAX_N:
            parser.error(f"greedy saturation requires 1 <= n <= {GREEDY_MAX_N}")
        if ns.runs < 1:
            parser.error(f"--runs must be >= 1, got {ns.runs}")
        cfg.k, cfg.n, cfg.runs, cfg.seed = ns.k, ns.n, ns.runs, ns.seed
        cfg.order, cfg.input_path, cfg.out, cfg.fmt = ns.order, ns.input_path, ns.out, ns.format
    elif ns.command == "distance":
        if ns.k < 3:
            parser.error(f"the cube probe requires k >= 3, got {ns.k}")
        if ns.n < 2 * (ns.k - 1):
            parser.error(f"the cube probe requires n >= 2(k-1) = {2 * (ns.k - 1)}, got {ns.n}")
        if ns.n > _CONSTRUCT_MAX_N:
            parser.error(f"the cube probe is capped at n <= {_CONSTRUCT_MAX_N}")
        if ns.minimize and ns.n > MINIMIZE_MAX_N:
            parser.error(f"--minimize requires n <= {MINIMIZE_MAX_N}")
        cfg.k, cfg.n, cfg.minimize = ns.k, ns.n, ns.minimize
        cfg.input_path, cfg.fmt = ns.input_path, ns.format
    elif ns.command == "table":
        cfg.k_range = _parse_range(parser, ns.k)
        cfg.n_range = _parse_range(parser, ns.n)
        if cfg.k_range[0] < 2:
            parser.error("table requires k >= 2")
        if cfg.n_range[0] < 1 or cfg.n_range[1] > TABLE_MAX_N:
            parser.error(f"table requires 1 <= n <= {TABLE_MAX_N}")
        if ns.runs < 0:
            parser.error(f"--runs must be >= 0, got {ns.runs}")
        cfg.runs, cfg.seed, cfg.order, cfg.fmt = ns.runs, ns.seed, ns.order, ns.format
    return cfg


def _witness_json(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, CoverWitness):
        return {"type": "cover", "masks": [f"0x{m:x}" for m in w.masks]}
    if isinstance(w, GapWitness):
        return {
            "type": "gap",
            "mask": f"0x{w.mask:x}",
            "completion": None if w.completion is None else [f"0x{m:x}" for m in w.completion],
        }
    raise TypeError(f"unsupported witness type {type(w).__name__}")


def _emit_rows(fmt: str, command: str, columns: list[str], rows: list[dict]) -> None:
    if fmt == "json":
        print(json.dumps({"schema": SCHEMA, "command": command, "rows": rows}, sort_keys=True))
        return
    print("\t".join(columns))
    for r in rows:
        print("\t".join("" if r[c] is None else str(r[c]) for c in columns))


def _read_input_family(path: str | None):
    if path in (None, "-"):
        return read_family(sys.stdin.read())
    return read_family(Path(path).read_text(encoding="utf-8"))


def _cmd_construct(cfg: RunConfig) -> int:
    p = ConstructionParams(cfg.k, cfg.n)
    built = build_family(p)
    header = {
        "schema": SCHEMA,
        "k": p.k,
        "n": p.n,
        "block_sizes": list(built.partition.block_sizes()),
        "specials": list(built.partition.specials),
        "size": len(built.f),
        "expected_size": expected_size(p),
    }
    text = write_family(built.f, header=header)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    fam = _read_input_family(cfg.input_path)
    backends = ("dp", "tuples") if cfg.backend == "both" else (cfg.backend,)
    verdicts = [
        is_maximal_kwise(fam, cfg.k, cfg.world, backend=b, threads=cfg.threads)
        for b in backends
    ]
    if len(verdicts) == 2 and verdicts[0] != verdicts[1]:
        print("backend disagreement: dp and tuples returned different verdicts", file=sys.stderr)
        return EXIT_ERROR
    v = verdicts[0]
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "k": cfg.k,
        "n": fam.universe.n,
        "world": cfg.world,
        "backend": cfg.backend,
        "size": len(fam),
        "maximal": v.ok,
        "failure": v.reason,
        "complement_downset": v.complement_downset,
        "witness": _witness_json(v.witness),
    }
    print(json.dumps(payload, sort_keys=True))
    if v.ok:
        return EXIT_OK
    return EXIT_NOT_KWISE if v.reason == "not_kwise" else EXIT_NOT_SATURATED


def _cmd_oracle(cfg: RunConfig) -> int:
    res = oracle_min_size(cfg.k, Universe(cfg.n))
    row = {
        "k": res.k,
        "n": res.n,
        "f": res.f_k_n,
        "extremal_count": res.extremal_count,
        "sample": ",".join(f"0x{m:x}" for m in res.sample_extremal.members),
    }
    _emit_rows(cfg.fmt, "oracle", ["k", "n", "f", "extremal_count", "sample"], [row])
    return EXIT_OK


def _cmd_greedy(cfg: RunConfig) -> int:
    u = Universe(cfg.n)
    if cfg.input_path:
        g0 = _read_input_family(cfg.input_path)
        if g0.universe != u:
            raise ValueError(f"input family has n={g0.universe.n}, flags say n={cfg.n}")
    else:
        g0 = Family(u)
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for r in range(cfg.runs):
        seed = cfg.seed + r
        fam = greedy_saturate(g0, cfg.k, seed, order=cfg.order)
        verdict = is_maximal_kwise(fam, cfg.k, "complement", threads=cfg.threads)
        rows.append({
            "k": cfg.k,
            "n": cfg.n,
            "seed": seed,
            "order": cfg.order,
            "size": len(fam),
            "maximal": int(verdict.ok),
        })
        if out_dir:
            header = {"schema": SCHEMA, "k": cfg.k, "n": cfg.n, "seed": seed,
                      "order": cfg.order, "size": len(fam)}
            path = out_dir / f"greedy_k{cfg.k}_n{cfg.n}_seed{seed}.txt"
            path.write_text(write_family(fam, header=header), encoding="utf-8")
    _emit_rows(cfg.fmt, "greedy", ["k", "n", "seed", "order", "size", "maximal"], rows)
    return EXIT_OK


def _cmd_distance(cfg: RunConfig) -> int:
    p = ConstructionParams(cfg.k, cfg.n)
    built = build_family(p)
    fam = built.f
    if cfg.input_path:
        fam = _read_input_family(cfg.input_path)
        if fam.universe != built.f.universe:
            raise ValueError(f"input family has n={fam.universe.n}, flags say n={cfg.n}")
    rep = cube_distance(fam, built.partition)
    row = {
        "k": cfg.k,
        "n": cfg.n,
        "block_sizes": ",".join(map(str, built.partition.block_sizes())),
        "q_size": rep.q_size,
        "distance": rep.distance,
        "size": len(fam),
    }
    columns = ["k", "n", "block_sizes", "q_size", "distance", "size"]
    if cfg.minimize:
        best = minimize_cube_distance(fam, p.num_blocks)
        row["min_distance"] = best.distance
        row["min_blocks"] = "|".join(
            ",".join(map(str, elements_of(b))) for b in best.partition.blocks
        )
        columns += ["min_distance", "min_blocks"]
    _emit_rows(cfg.fmt, "distance", columns, [row])
    return EXIT_OK


def _cmd_table(cfg: RunConfig) -> int:
    rows = size_table(
        range(cfg.k_range[0], cfg.k_range[1] + 1),
        range(cfg.n_range[0], cfg.n_range[1] + 1),
        runs=cfg.runs,
        base_seed=cfg.seed,
        order=cfg.order,
    )
    _emit_rows(cfg.fmt, "table", ["k", "n", "size", "formula", "oracle", "greedy_min"], rows)
    return EXIT_OK


_HANDLERS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "greedy": _cmd_greedy,
    "distance": _cmd_distance,
    "table": _cmd_table,
}


def run(config: RunConfig) -> int:
    handler = _HANDLERS.get(config.command)
    if handler is None:
        print(f"unknown subcommand {config.command!r}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return handler(config)
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else list(argv))
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
