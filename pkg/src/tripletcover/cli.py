"""The ``tck`` command line: verify, construct, shell, complete,
reconstruct, enumerate, and random.

Exit status 0 means success (and, for predicates, "true"); 1 means the
queried property is false (not a cover, not shellable, not additive);
2 means malformed input.  JSON output is byte-stable for identical
inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .construct import minimalize, minimum_cover, per_vertex_cover
from .cover import (
    CoverError,
    NotACoverError,
    TripletCover,
    cover_report,
)
from .oracle import count_minimum_covers, enumerate_covers, verify_theorems
from .shelling import (
    NotAdditiveError,
    NotShellableError,
    complete_distances,
    reconstruct_tree,
    shelling_closure,
)
from .tree import DistanceMap, TreeError, parse_newick, random_tree
from .twotree import is_two_tree

EXIT_OK = 0
EXIT_PROPERTY_FALSE = 1
EXIT_INPUT_ERROR = 2


@dataclass
class RunConfig:
    """One parsed invocation."""

    command: str
    tree_path: str | None = None
    pairs_path: str | None = None
    dist_path: str | None = None
    strategy: str | None = None
    fmt: str = "json"
    force: bool = False
    seed: int = 0
    n: int | None = None
    size: int | None = None
    max_n: int | None = None
    tolerance: float = 1e-9
    lengths: tuple[float, float] | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tck", description="Triplet covers of binary phylogenetic X-trees."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format", choices=("json", "text"), default="json", dest="fmt"
        )

    p = sub.add_parser("verify", help="cover / minimal / minimum / 2-tree checks")
    p.add_argument("--tree", required=True)
    p.add_argument("--pairs", required=True)
    add_format(p)

    p = sub.add_parser("construct", help="build a triplet cover")
    p.add_argument("--tree", required=True)
    p.add_argument(
        "--strategy",
        required=True,
        choices=("per-vertex", "minimum", "minimalize"),
    )
    p.add_argument("--pairs", help="input cover (minimalize only)")
    add_format(p)

    p = sub.add_parser("shell", help="shelling closure: trace and residual")
    p.add_argument("--tree", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument(
        "--force",
        action="store_true",
        help="run the closure even if the pair set is not a triplet cover",
    )
    add_format(p)

    p = sub.add_parser("complete", help="complete cover distances to all pairs")
    p.add_argument("--tree", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--dist", required=True)
    add_format(p)

    p = sub.add_parser("reconstruct", help="tree from a full additive metric")
    p.add_argument("--dist", required=True)
    p.add_argument("--tolerance", type=float, default=1e-9)
    add_format(p)

    p = sub.add_parser("enumerate", help="exhaustive oracle sweep")
    p.add_argument("--tree", required=True)
    p.add_argument("--size", type=int, help="count covers of one size only")
    p.add_argument(
        "--max-n", type=int, dest="max_n", help="raise the leaf-count guard (<= 8)"
    )
    add_format(p)

    p = sub.add_parser("random", help="generate a uniform random tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lengths", help="sample edge lengths uniformly from LO,HI")
    add_format(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    lengths = None
    if getattr(args, "lengths", None):
        parts = args.lengths.split(",")
        if len(parts) != 2:
            raise ValueError(f"--lengths expects 'LO,HI', got {args.lengths!r}")
        lengths = (float(parts[0]), float(parts[1]))
    return RunConfig(
        command=args.command,
        tree_path=getattr(args, "tree", None),
        pairs_path=getattr(args, "pairs", None),
        dist_path=getattr(args, "dist", None),
        strategy=getattr(args, "strategy", None),
        fmt=getattr(args, "fmt", "json"),
        force=getattr(args, "force", False),
        seed=getattr(args, "seed", 0),
        n=getattr(args, "n", None),
        size=getattr(args, "size", None),
        max_n=getattr(args, "max_n", None),
        tolerance=getattr(args, "tolerance", 1e-9),
        lengths=lengths,
    )


def _load_tree(path: str):
    return parse_newick(Path(path).read_text(encoding="utf-8"))


def _load_cover(path: str, universe) -> TripletCover:
    return TripletCover.from_text(Path(path).read_text(encoding="utf-8"), universe)


def _load_distances(path: str) -> DistanceMap:
    return DistanceMap.from_csv(Path(path).read_text(encoding="utf-8"))


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines(payload):
            print(line)


def _scalar_lines(payload: dict):
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            yield f"{key}: {json.dumps(value, sort_keys=True)}"
        else:
            yield f"{key}: {value}"


def _run_verify(config: RunConfig) -> int:
    tree = _load_tree(config.tree_path)
    cover = _load_cover(config.pairs_path, tree.labels)
    report = cover_report(tree, cover)
    report["multiplicities"] = cover.multiplicities()
    report["two_tree"] = is_two_tree(cover.cover_graph()) is not None
    _emit(report, config.fmt, _scalar_lines)
    return EXIT_OK if report["is_cover"] else EXIT_PROPERTY_FALSE


def _run_construct(config: RunConfig) -> int:
    tree = _load_tree(config.tree_path)
    if config.strategy == "per-vertex":
        cover = per_vertex_cover(tree)
    elif config.strategy == "minimum":
        cover = minimum_cover(tree)
    else:
        if not config.pairs_path:
            raise ValueError("--strategy minimalize requires --pairs")
        cover = minimalize(tree, _load_cover(config.pairs_path, tree.labels))
    payload = {
        "strategy": config.strategy,
        "size": len(cover),
        "pairs": [list(p) for p in cover.pairs],
    }
    _emit(payload, config.fmt, lambda p: (f"{a} {b}" for a, b in cover.pairs))
    return EXIT_OK


def _run_shell(config: RunConfig) -> int:
    tree = _load_tree(config.tree_path)
    cover = _load_cover(config.pairs_path, tree.labels)
    trace, residual = shelling_closure(tree, cover, require_cover=not config.force)
    payload = {
        "shellable": not residual,
        "trace": trace.to_json(),
        "residual": [list(p) for p in sorted(residual)],
    }
    _emit(payload, config.fmt, _scalar_lines)
    return EXIT_OK if not residual else EXIT_PROPERTY_FALSE


def _run_complete(config: RunConfig) -> int:
    tree = _load_tree(config.tree_path)
    cover = _load_cover(config.pairs_path, tree.labels)
    partial = _load_distances(config.dist_path)
    full = complete_distances(tree, cover, partial)
    payload = {"distances": [[a, b, v] for (a, b), v in full.items()]}
    _emit(
        payload,
        config.fmt,
        lambda p: (f"{a},{b},{v!r}" for (a, b), v in full.items()),
    )
    return EXIT_OK


def _run_reconstruct(config: RunConfig) -> int:
    dist = _load_distances(config.dist_path)
    tree = reconstruct_tree(dist, dist.labels(), tolerance=config.tolerance)
    payload = {"newick": tree.to_newick()}
    _emit(payload, config.fmt, lambda p: (p["newick"],))
    return EXIT_OK


def _run_enumerate(config: RunConfig) -> int:
    tree = _load_tree(config.tree_path)
    if config.max_n is not None and config.max_n > 8:
        raise ValueError("--max-n cannot exceed 8")
    if config.size is not None:
        if config.max_n is not None and tree.n_leaves > config.max_n:
            raise ValueError(
                f"tree has {tree.n_leaves} leaves, above --max-n {config.max_n}"
            )
        if config.size == 2 * tree.n_leaves - 3:
            count = count_minimum_covers(tree, allow_large=config.max_n == 8)
        else:
            count = len(enumerate_covers(tree, config.size))
        payload = {"n": tree.n_leaves, "size": config.size, "cover_count": count}
        _emit(payload, config.fmt, _scalar_lines)
        return EXIT_OK
    report = verify_theorems(tree).to_dict()
    _emit(report, config.fmt, _scalar_lines)
    return EXIT_OK if not report["counterexamples"] else EXIT_PROPERTY_FALSE


def _run_random(config: RunConfig) -> int:
    tree = random_tree(config.n, config.seed, config.lengths)
    payload = {"n": config.n, "seed": config.seed, "newick": tree.to_newick()}
    _emit(payload, config.fmt, lambda p: (p["newick"],))
    return EXIT_OK


_RUNNERS = {
    "verify": _run_verify,
    "construct": _run_construct,
    "shell": _run_shell,
    "complete": _run_complete,
    "reconstruct": _run_reconstruct,
    "enumerate": _run_enumerate,
    "random": _run_random,
}


def run(config: RunConfig) -> int:
    """Execute one configured invocation; returns the exit status."""
    return _RUNNERS[config.command](config)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return run(config)
    except (NotACoverError, NotShellableError, NotAdditiveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY_FALSE
    except (TreeError, CoverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
