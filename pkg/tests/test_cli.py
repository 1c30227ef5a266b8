import csv
import io
import json

import pytest

from inducedforests.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def payload(out):
    doc = json.loads(out)
    doc.pop("metadata")
    return doc


def test_constants_csv(capsys):
    code, out = run(capsys, "constants", "--delta-max", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert abs(float(rows[0]["alpha"]) - 1.4142135624) < 1e-10
    assert abs(float(rows[0]["a"]) - 2.4142135624) < 1e-10


def test_constants_json(capsys):
    code, out = run(capsys, "constants", "--delta-max", "5")
    doc = json.loads(out)
    assert code == 0
    assert [r["delta"] for r in doc["result"]] == [3, 4, 5]
    assert set(doc["metadata"]) == {"timestamp", "version"}


def test_count_tree(capsys):
    code, out = run(capsys, "count", "tree", "--n", "5", "--delta", "3")
    assert code == 0
    assert json.loads(out)["result"]["count"] == "120"


@pytest.mark.parametrize("argv,expected", [
    (["count", "rooted-forest", "--n", "4", "--m", "2", "--delta", "3"], "48"),
    (["count", "containing-tree", "--n", "4", "--shape", "2"], "8"),
    (["count", "containing-forest", "--n", "3", "--h", "1", "--shape", "2"], "6"),
    (["count", "degree-sequence", "--n", "3", "--m", "1", "--degrees", "1,2,1"], "1"),
])
def test_count_kinds(capsys, argv, expected):
    code, out = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["result"]["count"] == expected


def test_moment_is_exact(capsys):
    code, out = run(capsys, "moment", "--n", "3", "--k", "3", "--p", "1/2", "--delta", "3")
    assert code == 0
    assert json.loads(out)["result"]["exact"] == "3/8"


def test_decimal_flag_warns(capsys):
    code = main(["moment", "--n", "4", "--k", "2", "--p", "0.25", "--delta", "3"])
    captured = capsys.readouterr()
    assert code == 0
    assert "1/4" in captured.err
    assert json.loads(captured.out)["result"]["exact"] == "3/2"


def test_window_dense(capsys):
    code, out = run(capsys, "window", "dense", "--n", "200", "--p", "1/2", "--delta", "3")
    assert code == 0
    assert json.loads(out)["result"]["window_dense"] == [17, 18]


def test_asymptotic_compare(capsys):
    code, out = run(capsys, "asymptotic", "tree", "--n", "100", "--delta", "3", "--compare-exact")
    assert code == 0
    assert abs(json.loads(out)["result"]["ratio"] - 1) < 0.05
    code, out = run(capsys, "asymptotic", "weighted-forest", "--n", "60", "--delta", "3", "--w", "1",
                    "--compare-exact")
    assert code == 0
    assert abs(json.loads(out)["result"]["ratio"] - 1) < 0.05


def test_payloads_repeat_exactly(capsys):
    argv = ["asymptotic", "probability-identity", "--n", "30", "--delta", "4"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert payload(first) == payload(second)


def test_exit_codes(capsys):
    assert main(["count", "tree", "--n", "400", "--delta", "3"]) == 3
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "cap_exceeded"
    assert main(["asymptotic", "tree", "--n", "400", "--delta", "3", "--compare-exact"]) == 3
    capsys.readouterr()
    assert main(["count", "tree", "--n", "5"]) == 2
    assert json.loads(capsys.readouterr().out)["error"]["type"] == "usage"
    assert main(["count", "tree", "--n", "5", "--delta", "0"]) == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["window", "dense", "--n", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["moment", "--n", "3", "--k", "3", "--p", "abc", "--delta", "3"])
    assert exc.value.code == 2


def test_experiment_writes_files(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("INDUCEDFORESTS_OUTPUT_DIR", str(tmp_path))
    code, out = run(capsys, "experiment", "moment", "--n", "12", "--k", "3", "--p", "1/2", "--delta", "3",
                    "--trials", "100", "--seed", "5")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["records_path"].startswith(str(tmp_path))
    assert sum(1 for _ in open(result["records_path"])) == 100
    code, out = run(capsys, "experiment", "concentration", "--n", "14", "--p", "1/2", "--delta", "3",
                    "--trials", "3", "--output-dir", str(tmp_path / "c"))
    assert code == 0
    assert json.loads(out)["result"]["summary"]["sandwich_holds"]


def test_verify_codecs(capsys):
    code = main(["verify", "codecs"])
    captured = capsys.readouterr()
    assert code == 0
    assert "[PASS]" in captured.err
    assert json.loads(captured.out)["result"]["passed"]
