import io
import json
import subprocess
import sys

import pytest

from alphacent.cli import EXIT_DATA, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_rank_csv(karate):
    code, out = call("rank", "--dataset", "karate", "--alpha", "converged")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "node_label,score"
    assert lines[1] == "34,0.075003"
    assert len(lines) == 35


def test_output_is_deterministic():
    runs = [call("sweep", "--dataset", "karate", "--alphas", "0:0.14:0.02", "--output-format", "json")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_communities_json():
    code, out = call("communities", "--dataset", "karate", "--alpha", "0.14", "--output-format", "json")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["groups"] == 2 and obj["purity"] == 1.0
    assert obj["history"][0]["depth"] == 0


def test_sweep_csv_and_scores_dir(tmp_path):
    code, out = call("sweep", "--dataset", "karate", "--alphas", "0,0.05,0.14", "--scores-dir", str(tmp_path))
    assert code == EXIT_OK
    assert out.splitlines() == [
        "alpha,groups,purity,q_value",
        "0,4,0.505495,0.393409",
        "0.05,3,0.736264,0.332904",
        "0.14,2,1,0.072925",
    ]
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "scores_alpha_0.05.csv", "scores_alpha_0.14.csv", "scores_alpha_0.csv"]


def test_spectrum():
    code, out = call("spectrum", "--dataset", "karate")
    assert out.splitlines()[1].startswith("6.7257,0.148683,")


def test_roles():
    code, out = call("roles", "--dataset", "karate", "--alpha", "0.14")
    rows = {r.split(",")[0]: r.split(",") for r in out.splitlines()[1:]}
    assert rows["34"][4].endswith("hub")


def test_convert_roundtrip(tmp_path):
    code, out = call("convert", "--dataset", "karate", "--to", "gml")
    path = tmp_path / "k.gml"
    path.write_text(out)
    code2, out2 = call("rank", "--input", str(path), "--alpha", "converged")
    assert code2 == EXIT_OK
    assert out2 == call("rank", "--dataset", "karate", "--alpha", "converged")[1]


def test_input_edge_list(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("a b\nb c\nc a\nc d\n")
    code, out = call("rank", "--input", str(path), "--metric", "degree")
    assert out.splitlines()[1] == "c,3"


def test_exit_codes(tmp_path):
    assert call("rank", "--dataset", "football")[0] == EXIT_DATA
    assert call("rank", "--dataset", "nope")[0] == EXIT_DATA
    bad = tmp_path / "bad.txt"
    bad.write_text("a b -3\n")
    assert call("rank", "--input", str(bad))[0] == EXIT_DATA
    assert call("rank", "--input", str(tmp_path / "missing.txt"))[0] == EXIT_DATA
    assert call("communities", "--dataset", "karate", "--rounding", "--normalized")[0] == EXIT_USAGE
    assert call("rank", "--dataset", "karate", "--alpha", "abc")[0] == EXIT_USAGE
    assert call("rank", "--dataset", "karate", "--metric", "katz", "--alpha", "0.5")[0] == EXIT_NUMERIC
    with pytest.raises(SystemExit) as e:
        call("rank")
    assert e.value.code == EXIT_USAGE


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "alphacent.cli", "datasets"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("name,available,nodes,edges,labels,source\nkarate,true,34,78,true,")
