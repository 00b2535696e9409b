import pytest

from alphacent import DatasetError, list_datasets, load_dataset
from alphacent.datasets import ENV_VAR


def test_karate_bundled(karate):
    g = karate.graph
    assert g.node_count == 34
    assert g.adjacency.sum() == 156
    assert set(karate.truth.classes) == {"Mr. Hi", "Officer"}
    assert karate.truth.labels["9"] == "Officer"


def test_unknown_dataset():
    with pytest.raises(DatasetError, match="unknown"):
        load_dataset("nope")


def test_list_datasets():
    entries = {e["name"]: e for e in list_datasets()}
    assert entries["karate"]["available"] and entries["karate"]["edges"] == 78
    assert set(entries) == {"karate", "florentine", "football", "polbooks"}


def test_env_override(tmp_path, monkeypatch):
    (tmp_path / "football.gml").write_text(
        'graph [ node [ id 0 label "A" value 1 ] node [ id 1 label "B" value 1 ]'
        ' node [ id 2 label "C" value 2 ] edge [ source 0 target 1 ] edge [ source 1 target 2 ] ]'
    )
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    ds = load_dataset("football")
    assert ds.graph.node_count == 3
    assert ds.truth.labels == {"A": "1", "B": "1", "C": "2"}


def test_florentine_symmetrized(tmp_path, monkeypatch):
    (tmp_path / "florentine.edges").write_text("A B\nB C\n")
    (tmp_path / "florentine.labels").write_text("A\tx\nB\tx\nC\ty\n")
    (tmp_path / "florentine.exclude").write_text("C\n")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    ds = load_dataset("florentine")
    assert not ds.graph.directed
    assert ds.graph.adjacency[1, 0] == 1
    assert ds.truth.excluded == {"C"}
    assert load_dataset("florentine", raw=True).graph.directed
