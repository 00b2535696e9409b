"""Command-line entry point: ``alphacent <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .centrality import (
    alpha_centrality_scores,
    default_alpha_step,
    degree_centrality,
    dominant_eigenpair,
    eigenvector_centrality,
    katz_scores,
    plateau_alpha,
)
from .community import detect_communities
from .datasets import list_datasets, load_dataset
from .errors import DatasetError, DegenerateGraphError, GraphFormatError, NumericalError
from .evaluation import load_labels, purity, rank_nodes, role_coordinates, sweep
from .graph import degree_summary, load_edge_list, load_gml, symmetrize, to_edge_list, to_gml

logger = logging.getLogger("alphacent")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Six significant digits, '.' decimal separator."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6g}"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    def conv(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(type(o))

    return json.dumps(obj, indent=2, sort_keys=True, default=conv) + "\n"


def _parse_alphas(text: str) -> list[float]:
    """``"0,0.04,0.08"`` or ``"start:stop:step"`` (inclusive of stop)."""
    try:
        if ":" in text:
            start, stop, step = (float(t) for t in text.split(":"))
            if step <= 0:
                raise UsageError("alpha step must be positive")
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            values = [round(start + k * step, 12) for k in range(max(n, 0))]
        else:
            values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse alphas {text!r}") from None
    for a in values:
        if not 0.0 <= a <= 1.0:
            raise UsageError(f"alpha {a} outside [0, 1]")
    return values


def _load(args):
    """Return (graph, truth) from --dataset or --input."""
    truth = None
    if args.dataset:
        ds = load_dataset(args.dataset)
        g, truth = ds.graph, ds.truth
    else:
        path = Path(args.input)
        text = path.read_text(encoding="utf-8")
        fmt_ = args.input_format or ("gml" if path.suffix.lower() == ".gml" else "edgelist")
        if fmt_ == "gml":
            g = load_gml(text)
        else:
            g = load_edge_list(text, directed=args.directed, weighted=not args.unweighted)
        if any("value" in m for m in g.node_metadata.values()):
            from .evaluation import GroundTruth

            truth = GroundTruth.from_metadata(g)
    if args.symmetrize:
        g = symmetrize(g)
    if getattr(args, "labels", None):
        exclude = Path(args.exclude).read_text(encoding="utf-8") if args.exclude else ""
        truth = load_labels(Path(args.labels).read_text(encoding="utf-8"), exclude)
    return g, truth


def _alpha(args, g) -> float:
    if args.alpha == "converged":
        return plateau_alpha(g)
    try:
        a = float(args.alpha)
    except ValueError:
        raise UsageError(f"--alpha must be a number or 'converged', got {args.alpha!r}") from None
    if not 0.0 <= a <= 1.0:
        raise UsageError(f"alpha {a} outside [0, 1]")
    return a


def cmd_datasets(args):
    entries = list_datasets()
    if args.output_format == "json":
        return _json(entries)
    return _csv(
        ["name", "available", "nodes", "edges", "labels", "source"],
        [[e["name"], e["available"], e["nodes"], e["edges"], e["labels"], e["source"]] for e in entries],
    )


def cmd_rank(args):
    g, _ = _load(args)
    meta = {"metric": args.metric}
    if args.metric == "alpha":
        alpha = _alpha(args, g)
        f = alpha_centrality_scores(g, alpha, args.beta, args.tol, args.max_iter, axis=args.axis)
        if not f.converged:
            logger.warning("did not converge after %d iterations (residual %.3g)", f.iterations, f.residual)
        scores = f.node_scores
        meta.update(alpha=alpha, beta=args.beta, iterations=f.iterations, residual=f.residual,
                    converged=f.converged, axis=args.axis)
    elif args.metric == "eigenvector":
        scores = eigenvector_centrality(g, left=args.axis == "column")
    elif args.metric == "katz":
        alpha = _alpha(args, g)
        scores = katz_scores(g, alpha)
        meta.update(alpha=alpha)
    else:
        scores = degree_centrality(g)
    ranked = rank_nodes(scores, g.node_labels)
    if args.output_format == "json":
        meta["scores"] = [{"node": lab, "score": s} for lab, s in ranked]
        return _json(meta)
    return _csv(["node_label", "score"], ranked)


def cmd_communities(args):
    if args.rounding and args.normalized:
        raise UsageError("--rounding cannot be combined with --normalized")
    g, truth = _load(args)
    alpha = _alpha(args, g)
    p = detect_communities(g, alpha, beta=args.beta, normalized=args.normalized, rounding=args.rounding,
                           tol=args.tol, max_iter=args.max_iter)
    if args.output_format == "json":
        obj = {
            "alpha": alpha,
            "beta": args.beta,
            "q_value": p.q_value,
            "groups": p.count,
            "assignment": {lab: int(s) for lab, s in zip(g.node_labels, p.assignment)},
            "history": [
                {"members": [g.node_labels[i] for i in h.members], "left": [g.node_labels[i] for i in h.left],
                 "right": [g.node_labels[i] for i in h.right], "delta_q": h.delta_q,
                 "eigenvalue": h.eigenvalue, "depth": h.depth}
                for h in p.history
            ],
        }
        if truth is not None:
            obj["purity"] = purity(p, truth)
        return _json(obj)
    return _csv(["node_label", "community_index"], zip(g.node_labels, p.assignment.tolist()))


def cmd_sweep(args):
    if args.rounding and args.normalized:
        raise UsageError("--rounding cannot be combined with --normalized")
    g, truth = _load(args)
    if args.alphas:
        alphas = _parse_alphas(args.alphas)
    else:
        info = dominant_eigenpair(g)
        stop = min(1.0, info.inverse)
        step = default_alpha_step(g)
        alphas = [round(k * step, 12) for k in range(int(np.floor(stop / step)) + 1)]
    records = sweep(g, truth, alphas, beta=args.beta, normalized=args.normalized, rounding=args.rounding,
                    tol=args.tol, max_iter=args.max_iter)
    if args.scores_dir:
        out = Path(args.scores_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in records:
            ranked = rank_nodes(r.node_scores, g.node_labels)
            (out / f"scores_alpha_{r.alpha:.6g}.csv").write_text(_csv(["node_label", "score"], ranked), encoding="utf-8")
    if args.output_format == "json":
        return _json([
            {"alpha": r.alpha, "groups": r.group_count, "purity": r.purity, "q_value": r.q_value,
             "scores": dict(zip(g.node_labels, r.node_scores.tolist()))}
            for r in records
        ])
    return _csv(["alpha", "groups", "purity", "q_value"], [[r.alpha, r.group_count, r.purity, r.q_value] for r in records])


def cmd_spectrum(args):
    g, _ = _load(args)
    info = dominant_eigenpair(g, tol=min(args.tol, 1e-10), max_iter=args.max_iter)
    if info.degenerate:
        raise DegenerateGraphError("adjacency has no positive dominant eigenvalue")
    d = degree_summary(g)
    obj = {
        "lambda1": info.lambda1,
        "inverse_lambda1": info.inverse,
        "iterations": info.iterations,
        "converged": info.tolerance_met,
        "gershgorin_bound": min(d.max_in, d.max_out),
        "alpha_step": default_alpha_step(g),
    }
    if args.output_format == "json":
        obj["eigenvector"] = dict(zip(g.node_labels, info.vector.tolist()))
        return _json(obj)
    keys = ["lambda1", "inverse_lambda1", "iterations", "converged", "gershgorin_bound", "alpha_step"]
    return _csv(keys, [[obj[k] for k in keys]])


def cmd_roles(args):
    g, truth = _load(args)
    if args.from_labels:
        if truth is None:
            raise UsageError("--from-labels needs ground-truth labels")
        from .community import Partition, relabel

        classes = [truth.labels.get(lab) for lab in g.node_labels]
        if any(c is None for c in classes):
            raise DatasetError("every node needs a label for --from-labels")
        p = Partition(relabel(classes), float("nan"), float("nan"), (), g.node_labels)
    else:
        p = detect_communities(g, _alpha(args, g), beta=args.beta, tol=args.tol, max_iter=args.max_iter)
    rc = role_coordinates(g, p)
    rows = [[lab, int(s), z, pp, role] for lab, s, z, pp, role in zip(g.node_labels, p.assignment, rc.z, rc.p, rc.roles)]
    if args.output_format == "json":
        return _json([dict(zip(["node", "community", "z", "participation", "role"], r)) for r in rows])
    return _csv(["node_label", "community_index", "z", "participation", "role"], rows)


def cmd_convert(args):
    g, _ = _load(args)
    return to_gml(g) if args.to == "gml" else to_edge_list(g)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alphacent", description="Normalized alpha-centrality and path-based community detection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, alpha=True, labels=False):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--dataset", help="bundled dataset name (see 'alphacent datasets')")
        src.add_argument("--input", help="graph file (edge list or GML)")
        p.add_argument("--input-format", choices=["edgelist", "gml"])
        p.add_argument("--directed", action="store_true", help="edge-list input is directed")
        p.add_argument("--unweighted", action="store_true", help="ignore a third edge-list column")
        p.add_argument("--symmetrize", action="store_true", help="replace A by A + A^T")
        if alpha:
            p.add_argument("--alpha", default="0", help="attenuation in [0,1] or 'converged'")
        p.add_argument("--beta", type=float, default=1.0)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--max-iter", type=int, default=10_000)
        p.add_argument("--output-format", choices=["csv", "json"], default="csv")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        if labels:
            p.add_argument("--labels", help="ground truth file: node<TAB>class per line")
            p.add_argument("--exclude", help="nodes to leave out of purity, one per line")

    p = sub.add_parser("datasets", help="list known datasets")
    p.add_argument("--output-format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_datasets)

    p = sub.add_parser("rank", help="rank nodes by centrality")
    common(p)
    p.add_argument("--metric", choices=["alpha", "eigenvector", "katz", "degree"], default="alpha")
    p.add_argument("--axis", choices=["row", "column"], default="row",
                   help="score by paths from (row) or into (column) a node")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("communities", help="detect communities at one alpha")
    common(p, labels=True)
    p.add_argument("--normalized", action="store_true", help="use normalized connectivity")
    p.add_argument("--rounding", action="store_true", help="round path counts to integers")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("sweep", help="communities, purity and scores across alphas")
    common(p, alpha=False, labels=True)
    p.add_argument("--alphas", help="comma list or start:stop:step; default 0..1/lambda1")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--rounding", action="store_true")
    p.add_argument("--scores-dir", help="also write one score CSV per alpha here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", help="dominant eigenvalue and sweep guidance")
    common(p, alpha=False)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("roles", help="z-P role coordinates")
    common(p, labels=True)
    p.add_argument("--from-labels", action="store_true", help="use ground-truth classes as the partition")
    p.set_defaults(func=cmd_roles)

    p = sub.add_parser("convert", help="rewrite a graph as an edge list or GML")
    common(p, alpha=False)
    p.add_argument("--to", choices=["edgelist", "gml"], default="edgelist")
    p.set_defaults(func=cmd_convert)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    stdout = stdout or sys.stdout
    try:
        text = args.func(args)
    except UsageError as e:
        print(f"alphacent: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, GraphFormatError, OSError) as e:
        print(f"alphacent: data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, DegenerateGraphError) as e:
        print(f"alphacent: numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as e:
        print(f"alphacent: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
