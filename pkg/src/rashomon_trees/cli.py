"""Command-line entry points.

Exit codes: 0 success, 2 node budget exceeded, 64 usage error, 1 any
other documented failure (bad files, unknown ids, out-of-scope inputs).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import curation
from .dataset import load_dataset
from .enumeration import (
    DEFAULT_NODE_BUDGET,
    EnumerationConfig,
    enumerate_rashomon,
    load_set,
    save_set,
)
from .errors import BudgetExceeded, RashomonTreesError, ValidationError
from .service import DEFAULT_PORT, PORT_ENV_VAR, ServiceConfig, serve
from .sunburst import layout, layout_document
from .trie import build_trie, subtrie

USAGE_EXIT = 64
BUDGET_EXIT = 2
DEFAULT_SESSION_DIR = "rashomon_session"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rashomon-trees", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    enum = sub.add_parser("enumerate", help="enumerate the Rashomon set of a dataset")
    enum.add_argument("--data", required=True, help="binarized CSV (label column last)")
    enum.add_argument("--lambda", dest="lam", type=float, required=True, help="per-leaf sparsity penalty")
    enum.add_argument("--epsilon", type=float, required=True, help="loss tolerance (>= 1)")
    enum.add_argument("--max-depth", type=int, required=True, help="tree depth cap")
    enum.add_argument("--out", required=True, help="output set file")
    enum.add_argument("--workers", type=int, default=1)
    enum.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    hier = sub.add_parser("hierarchy", help="compute the sunburst layout of a set file")
    hier.add_argument("--set", dest="set_file", required=True)
    hier.add_argument("--out", required=True)
    hier.add_argument("--depth", type=int, default=None, help="rings to include (default: trie height)")
    hier.add_argument("--prefix", default="", help="comma-separated condition ids to re-root at")

    srv = sub.add_parser("serve", help="serve the explorer API (and UI when --static-dir is set)")
    srv.add_argument("--set", dest="set_file", required=True)
    srv.add_argument("--port", type=int, default=None, help=f"default ${PORT_ENV_VAR} or {DEFAULT_PORT}")
    srv.add_argument("--session", default=DEFAULT_SESSION_DIR, help="favorites directory")
    srv.add_argument("--static-dir", default=None, help="directory of UI assets")

    fav = sub.add_parser("favorites", help="manage bookmarked trees")
    fav_sub = fav.add_subparsers(dest="favorites_command", required=True, parser_class=_Parser)
    fav_add = fav_sub.add_parser("add")
    fav_add.add_argument("--set", dest="set_file", required=True)
    fav_add.add_argument("--session", default=DEFAULT_SESSION_DIR)
    fav_add.add_argument("--tree-id", type=int, required=True)
    fav_add.add_argument("--comment", default="")
    fav_remove = fav_sub.add_parser("remove")
    fav_remove.add_argument("--set", dest="set_file", required=True)
    fav_remove.add_argument("--session", default=DEFAULT_SESSION_DIR)
    fav_remove.add_argument("--tree-id", type=int, required=True)
    fav_list = fav_sub.add_parser("list")
    fav_list.add_argument("--session", default=DEFAULT_SESSION_DIR)
    fav_export = fav_sub.add_parser("export")
    fav_export.add_argument("--session", default=DEFAULT_SESSION_DIR)
    fav_export.add_argument("--out", required=True)

    pred = sub.add_parser("predict", help="predict with a tree from an exported curation file")
    pred.add_argument("--model", required=True, help="curation file")
    pred.add_argument("--tree-id", type=int, required=True)
    pred.add_argument("--data", required=True, help="CSV of samples (label column optional)")
    return parser


def _cmd_enumerate(args) -> int:
    dataset = load_dataset(args.data)
    config = EnumerationConfig(
        lam=args.lam, epsilon=args.epsilon, depth_cap=args.max_depth, node_budget=args.node_budget
    )
    rset = enumerate_rashomon(dataset, config, workers=args.workers)
    save_set(rset, args.out)
    print(f"trees={rset.size} optimal_objective={rset.optimal_objective}")
    return 0


def _cmd_hierarchy(args) -> int:
    rset = load_set(args.set_file)
    trie = build_trie(rset)
    if args.prefix:
        trie = subtrie(trie, [int(p) for p in args.prefix.split(",")])
    depth = args.depth if args.depth is not None else max(1, trie.height)
    doc = layout_document(layout(trie, depth))
    Path(args.out).write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    print(f"sectors={len(doc['sectors'])} depth={depth}")
    return 0


def _cmd_serve(args) -> int:
    port = args.port
    if port is None:
        port = int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    config = ServiceConfig(
        port=port, rashomon_file=args.set_file, session_dir=args.session, static_dir=args.static_dir
    )
    print(f"serving {args.set_file} on http://0.0.0.0:{port}")
    serve(config)
    return 0


def _open_store(set_file: str, session: str) -> curation.CurationStore:
    return curation.CurationStore(load_set(set_file), session)


def _cmd_favorites(args) -> int:
    if args.favorites_command == "add":
        record = curation.bookmark(_open_store(args.set_file, args.session), args.tree_id, args.comment)
        print(f"bookmarked tree {record.tree_id}")
    elif args.favorites_command == "remove":
        curation.unbookmark(_open_store(args.set_file, args.session), args.tree_id)
        print(f"removed tree {args.tree_id}")
    elif args.favorites_command == "list":
        path = Path(args.session) / curation.STORE_FILENAME
        if not path.exists():
            print("no favorites")
            return 0
        cfile = curation.import_curation(path)
        for rec in cfile.records:
            print(f"{rec.tree_id}\t{rec.created_at}\t{rec.comment}")
    elif args.favorites_command == "export":
        path = Path(args.session) / curation.STORE_FILENAME
        if not path.exists():
            raise RashomonTreesError(f"no favorites stored under {args.session}")
        cfile = curation.import_curation(path)
        if not cfile.records:
            raise RashomonTreesError("no bookmarked trees to export")
        Path(args.out).write_bytes(curation.curation_bytes(cfile))
        print(f"exported {len(cfile.records)} record(s) to {args.out}")
    return 0


def _read_samples(path: str) -> list[list[int]]:
    text = Path(path).read_text(encoding="utf-8")
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ValidationError(f"{path}: no rows")
    header = rows[0]
    drop_label = header and header[-1] == "label"
    samples = []
    for i, row in enumerate(rows[1:]):
        cells = row[:-1] if drop_label else row
        try:
            samples.append([int(c) for c in cells])
        except ValueError:
            raise ValidationError(f"{path}: row {i + 1} has a non-integer cell") from None
    return samples


def _cmd_predict(args) -> int:
    cfile = curation.import_curation(args.model)
    samples = _read_samples(args.data)
    labels = curation.load_and_predict(cfile, args.tree_id, samples)
    for label in labels:
        print(label)
    return 0


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "hierarchy": _cmd_hierarchy,
    "serve": _cmd_serve,
    "favorites": _cmd_favorites,
    "predict": _cmd_predict,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_EXIT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RashomonTreesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
