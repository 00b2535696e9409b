"""Benchmark networks resolved from plain files on disk.

Files are looked up first in ``$ALPHACENT_DATA_DIR`` (if set), then in the
package's ``data/`` directory. Only the karate club ships with the package;
the other benchmarks are recognised by name and load once their files are
placed in the data directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DatasetError
from .evaluation import GroundTruth, load_labels
from .graph import Graph, load_edge_list, load_gml, symmetrize

__all__ = ["DatasetEntry", "Dataset", "DATASETS", "data_dirs", "load_dataset", "list_datasets"]

ENV_VAR = "ALPHACENT_DATA_DIR"
PACKAGE_DATA = Path(__file__).parent / "data"


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    graph_file: str
    fmt: str  # "edgelist" or "gml"
    directed: bool
    symmetrize: bool
    labels_file: Optional[str]
    exclude_file: Optional[str]
    source: str


DATASETS: dict[str, DatasetEntry] = {
    entry.name: entry
    for entry in [
        DatasetEntry(
            "karate", "karate.edges", "edgelist", False, False, "karate.labels", None,
            "Zachary (1977) karate club friendships, unweighted; labels are the two factions",
        ),
        DatasetEntry(
            "florentine", "florentine.edges", "edgelist", True, True, "florentine.labels", "florentine.exclude",
            "Padgett's Florentine families: directed marriage ties (wife-giver -> receiver) "
            "plus business ties listed in both directions, symmetrized as A + A^T; "
            "labels are party loyalty, split-loyalty families listed in the exclusion file",
        ),
        DatasetEntry(
            "football", "football.gml", "gml", False, False, None, None,
            "Girvan & Newman (2002) Division I-A college football 2001; node 'value' is the conference",
        ),
        DatasetEntry(
            "polbooks", "polbooks.gml", "gml", False, False, None, None,
            "Krebs political books co-purchase network; node 'value' is l/n/c as labelled by Newman",
        ),
    ]
}


@dataclass(frozen=True)
class Dataset:
    name: str
    graph: Graph
    truth: Optional[GroundTruth]
    source: str
    path: Path


def data_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get(ENV_VAR)
    if env:
        dirs.append(Path(env))
    dirs.append(PACKAGE_DATA)
    return dirs


def _find(filename: str) -> Optional[Path]:
    for d in data_dirs():
        p = d / filename
        if p.is_file():
            return p
    return None


def _spec(name: str) -> DatasetEntry:
    try:
        return DATASETS[name]
    except KeyError:
        raise DatasetError(f"unknown dataset {name!r}; known: {', '.join(DATASETS)}") from None


def load_dataset(name: str, raw: bool = False) -> Dataset:
    """Load a named benchmark; ``raw=True`` skips the dataset's symmetrization."""
    spec = _spec(name)
    path = _find(spec.graph_file)
    if path is None:
        where = ", ".join(str(d) for d in data_dirs())
        raise DatasetError(f"dataset {name!r} is not available: {spec.graph_file} not found in {where}")
    text = path.read_text(encoding="utf-8")
    g = load_gml(text) if spec.fmt == "gml" else load_edge_list(text, directed=spec.directed)
    truth = None
    if spec.labels_file:
        lp = _find(spec.labels_file)
        if lp is not None:
            ep = _find(spec.exclude_file) if spec.exclude_file else None
            truth = load_labels(lp.read_text(encoding="utf-8"), ep.read_text(encoding="utf-8") if ep else "")
    elif any("value" in m for m in g.node_metadata.values()):
        truth = GroundTruth.from_metadata(g)
    if spec.symmetrize and not raw:
        g = symmetrize(g)
    return Dataset(name, g, truth, spec.source, path)


def list_datasets() -> list[dict]:
    """One entry per registered dataset with counts when its files are present."""
    out = []
    for name, spec in DATASETS.items():
        entry = {"name": name, "source": spec.source, "available": False,
                 "nodes": None, "edges": None, "labels": False}
        try:
            ds = load_dataset(name, raw=True)
        except DatasetError:
            pass
        else:
            a = ds.graph.adjacency
            ties = a > 0 if ds.graph.directed else np.triu(a) > 0
            entry.update(available=True, nodes=ds.graph.node_count, edges=int(ties.sum()), labels=ds.truth is not None)
        out.append(entry)
    return out
