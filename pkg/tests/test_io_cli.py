import io
import json

import numpy as np
import pytest

from osl import LabeledSample, cli
from osl.datagen import squares_model
from osl.io import ParseError, load_points, parse_points, write_points


def test_parse_labeled():
    s = parse_points("0.1,0.2,1\n0.3,0.4,2\n", labeled=True)
    np.testing.assert_array_equal(s.points, [[0.1, 0.2], [0.3, 0.4]])
    np.testing.assert_array_equal(s.truth, [1, 2])


def test_parse_header_and_comments():
    X = parse_points("x,y\n# note\n1,2\n\n3,4\n")
    np.testing.assert_array_equal(X, [[1, 2], [3, 4]])
    X = parse_points("1 2\n3\t4\n")
    assert X.shape == (2, 2)
    X = parse_points("1;2\n3;4\n")
    assert X.shape == (2, 2)


def test_parse_ragged_row_reports_line():
    with pytest.raises(ParseError) as err:
        parse_points("x,y\n1,2\n3,4,5\n")
    assert err.value.line == 3
    assert ":3:" in str(err.value)


def test_parse_non_numeric():
    with pytest.raises(ParseError) as err:
        parse_points("1,2\n3,abc\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_points("")
    with pytest.raises(ParseError):
        parse_points("1,nan\n")


def test_label_mapping():
    s = parse_points("0,7\n1,0\n2,3\n3,7\n", labeled=True)
    np.testing.assert_array_equal(s.truth, [1, 0, 2, 1])
    s = parse_points("0,7\n1,-1\n2,0\n", labeled=True, noise_label=-1)
    np.testing.assert_array_equal(s.truth, [1, 0, 2])
    s = parse_points("0,1\n1,0\n", labeled=True, noise_label=None)
    np.testing.assert_array_equal(s.truth, [1, 2])
    with pytest.raises(ParseError):
        parse_points("0,1.5\n", labeled=True)
    with pytest.raises(ParseError):
        parse_points("1\n2\n", labeled=True)


def test_write_then_read(tmp_path):
    X = np.random.default_rng(0).normal(size=(20, 3))
    y = np.arange(20) % 3
    buf = io.StringIO()
    write_points(buf, X, y)
    p = tmp_path / "d.csv"
    p.write_text(buf.getvalue())
    s = load_points(p, labeled=True, noise_label=None)
    np.testing.assert_array_equal(s.points, X)
    with pytest.raises(ParseError):
        load_points(tmp_path / "missing.csv")


SEVEN = "x\n0\n0.1\n0.2\n1.0\n1.1\n1.2\n0.55\n"


def test_cluster_command(tmp_path, capsys):
    f = tmp_path / "p.csv"
    f.write_text(SEVEN)
    out = tmp_path / "c.csv"
    assert cli.main(["cluster", str(f), "--m", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    radius = float(lines[0].split("radius=")[1])
    assert radius == pytest.approx(0.35)
    labels = [int(l.split(",")[1]) for l in lines[2:]]
    assert labels == [1, 1, 1, 2, 2, 2, 1]
    trace = (tmp_path / "c.csv.trace.csv").read_text().splitlines()
    assert trace[0] == "radius,n_clusters,mth_size,selected"
    assert sum(int(l.split(",")[3]) for l in trace[1:]) == 1


def test_cluster_single_point(tmp_path, capsys):
    f = tmp_path / "one.csv"
    f.write_text("1.5,2.5\n")
    assert cli.main(["cluster", str(f), "--m", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].endswith("radius=0.0")
    assert out[2] == "0,1"


def test_cluster_exit_codes(tmp_path, capsys):
    f = tmp_path / "p.csv"
    f.write_text(SEVEN)
    assert cli.main(["cluster", str(f), "--m", "0"]) == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    assert cli.main(["cluster", str(bad), "--m", "1"]) == 2
    assert "bad.csv:2" in capsys.readouterr().err
    dup = tmp_path / "dup.csv"
    dup.write_text("1\n1\n1\n")
    assert cli.main(["cluster", str(dup), "--m", "2", "--algo", "sl"]) == 3


def _config(tmp_path, **kw):
    cfg = {"scenario": "squares", "algorithms": ["osl", "sl"], "n": [60], "epsilon": [0.0, 0.2],
           "delta_case": "tricky", "B": 12, "seed": 5}
    cfg.update(kw)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return p


def test_risk_command(tmp_path):
    out = tmp_path / "r.csv"
    assert cli.main(["risk", "--config", str(_config(tmp_path)), "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 5
    assert rows[1].startswith("squares,osl,60,0.0,tricky,3,12,")
    assert (tmp_path / "r.csv.log").exists()


def test_risk_truth_stub(tmp_path):
    out = tmp_path / "r.csv"
    cfg = _config(tmp_path, algorithms=["truth"], B=1)
    assert cli.main(["risk", "--config", str(cfg), "--out", str(out)]) == 0
    assert all(l.split(",")[8] == "0.0" for l in out.read_text().splitlines()[1:])


def test_risk_param_grid(tmp_path):
    out = tmp_path / "r.csv"
    cfg = _config(tmp_path, scenario="sine-highdim", algorithms=["osl"], n=[50],
                  epsilon=[0.2], params={"ambient_dim": [2, 3, 4]}, B=2)
    cfg_doc = json.loads(cfg.read_text())
    del cfg_doc["delta_case"]
    cfg.write_text(json.dumps(cfg_doc))
    assert cli.main(["risk", "--config", str(cfg), "--out", str(out)]) == 0
    rows = out.read_text().splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == [f"sine-highdim[ambient_dim={d}]" for d in (2, 3, 4)]
    assert all(",tricky," in r for r in rows)


def test_risk_with_model_document(tmp_path):
    out = tmp_path / "r.csv"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"model": squares_model().to_dict(), "n": [40], "epsilon": [0.1],
                               "B": 3}))
    assert cli.main(["risk", "--config", str(cfg), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].startswith("squares-easy,osl,40,0.1,,3,3,")


@pytest.mark.parametrize("doc", ["{", "[]", '{"scenario": "squares", "n": [], "epsilon": [0]}',
                                 '{"scenario": "squares", "n": [10], "epsilon": [0], "B": 0}',
                                 '{"scenario": "squares", "n": [10], "epsilon": [0], "algorithms": ["km"]}',
                                 '{"scenario": "moons", "n": [10], "epsilon": [0], "B": 1}',
                                 '{"n": [10], "epsilon": [0]}'])
def test_risk_bad_config(tmp_path, doc, capsys):
    p = tmp_path / "cfg.json"
    p.write_text(doc)
    assert cli.main(["risk", "--config", str(p)]) == 2
    assert cli.main(["risk", "--config", str(tmp_path / "nope.json")]) == 2


def test_risk_threads_env(tmp_path, monkeypatch):
    cfg = _config(tmp_path)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("OSL_THREADS", "1")
    assert cli.main(["risk", "--config", str(cfg), "--out", str(a)]) == 0
    monkeypatch.setenv("OSL_THREADS", "4")
    assert cli.main(["risk", "--config", str(cfg), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_and_bench(tmp_path):
    data = tmp_path / "sq.csv"
    model = tmp_path / "sq.json"
    assert cli.main(["generate", "--model", "squares", "--n", "200", "--eps", "0.1", "--seed", "3",
                     "--out", str(data), "--model-out", str(model)]) == 0
    s = load_points(data, labeled=True, noise_label=None)
    assert isinstance(s, LabeledSample) and len(s) == 200
    again = tmp_path / "again.csv"
    assert cli.main(["generate", "--model", str(model), "--n", "200", "--seed", "3",
                     "--out", str(again)]) == 0
    assert again.read_bytes() == data.read_bytes()

    outs = []
    for name in ("b1.csv", "b2.csv"):
        out = tmp_path / name
        reps = tmp_path / ("reps-" + name)
        assert cli.main(["bench", str(data), "--m", "3", "--B", "2", "--seed", "1",
                         "--algo", "osl", "sl", "--out", str(out),
                         "--replications", str(reps)]) == 0
        outs.append((out.read_bytes(), reps.read_bytes()))
    assert outs[0] == outs[1]
    lines = outs[0][0].decode().splitlines()
    assert lines[0] == "dataset,algorithm,m,B,fraction,n_sub,valid,mean_ari,sd_ari,stderr_ari"
    assert lines[1].startswith("sq,osl,3,2,0.75,150,2,")
    assert len(outs[0][1].decode().splitlines()) == 5


def test_bench_needs_labels(tmp_path):
    f = tmp_path / "u.csv"
    f.write_text("0.5\n0.7\n")
    assert cli.main(["bench", str(f), "--m", "1", "--B", "1"]) == 2


def test_generate_variants(tmp_path, capsys):
    assert cli.main(["generate", "--model", "sine-highdim", "--dim", "4", "--n", "5", "--eps", "0.2"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "x1,x2,x3,x4,label"
    assert cli.main(["generate", "--model", "sine-gauss", "--sigma2", "0.25", "--n", "5"]) == 0
    assert cli.main(["generate", "--model", "sine-gauss", "--n", "5"]) == 2
    assert cli.main(["generate", "--model", "moons", "--n", "5"]) == 2


def test_bound_command(tmp_path, capsys):
    p = tmp_path / "params.json"
    p.write_text(json.dumps({"gamma_star": 1 / 3, "gamma_sup": 1 / 3, "epsilon": 0, "delta": 1,
                             "n": 100, "m": 2, "d": 1, "big_d": 2, "eta": 0.1, "a": 1, "b": 1}))
    assert cli.main(["bound", "--params", str(p), "--grid", "0.5:0.5:1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "r,bound,log_bound"
    r, v, _ = out[1].split(",")
    assert float(r) == 0.5
    assert float(v) == pytest.approx(2 * np.exp(-50) + 4 * np.exp(-(1.1 * np.log(1.1) - 0.1) * 100 / 6))
    assert cli.main(["bound", "--params", str(p), "--grid", "0.5:2"]) == 2
    assert cli.main(["bound", "--params", str(p), "--grid", "0.5:1.5:3"]) == 2
    p.write_text(json.dumps({"weights": [0.25, 0.75], "epsilon": 0, "delta": 1, "n": 10, "d": 1,
                             "big_d": 2, "eta": 0.1}))
    assert cli.main(["bound", "--params", str(p), "--grid", "0.1:0.9:3"]) == 3
