import json
import re

import numpy as np
import pytest

from pathletcover.cli import main
from pathletcover.clustering import validate_clustering
from pathletcover.io_formats import InputError, dumps, read_clustering_json, read_trajectory
from pathletcover.simplification import build_simplification
from pathletcover.universe import build_universe


def _csv(tmp_path, rows, name="t.csv"):
    path = tmp_path / name
    path.write_text("x,y\n" + "\n".join(",".join(str(v) for v in r) for r in rows) + "\n")
    return str(path)


class TestReadTrajectory:
    def test_comments_and_header(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text("# a comment\nx,y,z\n\n1,2,3\n4,5,6\n")
        assert read_trajectory(str(p)).tolist() == [[1, 2, 3], [4, 5, 6]]

    def test_bad_row_names_line(self, tmp_path):
        p = _csv(tmp_path, [(0, 0), ("a", "b", "c")])
        with pytest.raises(InputError, match="line 3"):
            read_trajectory(p)

    def test_ragged_row(self, tmp_path):
        with pytest.raises(InputError, match="line 3"):
            read_trajectory(_csv(tmp_path, [(0, 0), (1, 1, 1)]))

    def test_non_finite(self, tmp_path):
        with pytest.raises(InputError):
            read_trajectory(_csv(tmp_path, [(0, 0), ("nan", 1)]))

    def test_empty(self, tmp_path):
        p = tmp_path / "e.csv"
        p.write_text("# nothing\n")
        with pytest.raises(InputError):
            read_trajectory(str(p))


def test_dumps_floats_round_trip():
    vals = [0.1, 1 / 3, 1e-300, 2.0, 123456789.123456789]
    text = dumps({"v": vals, "n": 3, "ok": True, "none": None})
    back = json.loads(text)
    assert back["v"] == vals and back["n"] == 3 and back["ok"] is True and back["none"] is None
    assert "2.0" in text


class TestCluster:
    def test_two_points(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["cluster", "--input", _csv(tmp_path, [(0, 0), (1, 0)]), "--ell", "2", "--delta", "0.1",
                     "--out", str(out)]) == 0
        doc, pathlets = read_clustering_json(out / "clustering.json")
        assert doc["status"] == "ok" and len(pathlets) == 1
        assert pathlets[0][1] == [(1.0, 2.0)]

    def test_bad_row_exit_code(self, tmp_path, capsys):
        code = main(["cluster", "--input", _csv(tmp_path, [(0, 0), ("a", "b", "c")]), "--ell", "2", "--delta",
                     "0.1", "--out", str(tmp_path / "o")])
        assert code == 1
        assert "line 3" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["cluster", "--input", str(tmp_path / "nope.csv"), "--ell", "2", "--delta", "1",
                     "--out", str(tmp_path / "o")]) == 1

    def test_bad_ell(self, tmp_path):
        assert main(["cluster", "--input", _csv(tmp_path, [(0, 0), (1, 0)]), "--ell", "1", "--delta", "1",
                     "--out", str(tmp_path / "o")]) == 1

    def test_looped_fixture_validates(self, tmp_path, capsys, fixture_path):
        out = tmp_path / "o"
        src = fixture_path("looped.csv")
        assert main(["cluster", "--input", src, "--ell", "4", "--delta", "0.3", "--out", str(out), "--check",
                     "--svg", "--interior-disjoint"]) == 0
        assert "validation: pass" in capsys.readouterr().out
        T = read_trajectory(src)
        _, pathlets = read_clustering_json(out / "clustering.json")
        assert validate_clustering(T, [_as_pathlet(r, iv) for r, iv in pathlets], 4, 1.2).ok
        assert (out / "clustering.svg").read_text().startswith("<svg")


def _as_pathlet(reference, intervals):
    from pathletcover.pathlet import Pathlet

    return Pathlet("vertex", reference, 0.0, 0.0, intervals)


class TestSimplify:
    def test_collinear(self, tmp_path, capsys):
        out = tmp_path / "o"
        rows = [(k, 2 * k) for k in range(6)]
        assert main(["simplify", "--input", _csv(tmp_path, rows), "--delta", "0.01", "--out", str(out)]) == 0
        doc = json.loads((out / "simplification.json").read_text())
        assert len(doc["vertices"]) == 2 and doc["verified"]


class TestInspectFsd:
    def _run(self, tmp_path, rows, delta, cols="1:2"):
        out = tmp_path / "o"
        code = main(["inspect-fsd", "--input", _csv(tmp_path, rows), "--delta", str(delta), "--column-range", cols,
                     "--out", str(out), "--json"])
        return code, out

    def test_sharp_corner(self, tmp_path):
        # at a tiny radius only a thin band along the diagonal of the first column is free
        rows = [(0, 0), (100, 0), (100, 100)]
        code, out = self._run(tmp_path, rows, 0.001)
        assert code == 0
        doc = json.loads((out / "fsd.json").read_text())
        pts = [(p["x"], p["y"]) for p in doc["critical_points"]]
        assert (1.0, 1.0) in pts
        assert all(abs(x - y) < 1e-3 for x, y in pts)
        assert all(p["y"] <= 2 + 1e-3 for p in doc["critical_points"])

    def test_full_free_space(self, tmp_path):
        rows = [(0, 0), (0.1, 0), (0.2, 0)]
        code, out = self._run(tmp_path, rows, 10.0)
        doc = json.loads((out / "fsd.json").read_text())
        ys = sorted({p["y"] for p in doc["critical_points"]})
        assert code == 0 and ys == [1.0, 3.0]
        assert (out / "fsd.svg").exists()

    def test_out_of_range(self, tmp_path, capsys):
        code, _ = self._run(tmp_path, [(0, 0), (1, 0)], 0.1, cols="1:5")
        assert code == 1 and "column range" in capsys.readouterr().err

    def test_point_count_matches_universe(self, tmp_path, capsys, fixture_path):
        out = tmp_path / "o"
        src = fixture_path("zigzag.csv")
        T = read_trajectory(src)
        S = build_simplification(T, 0.1).vertices
        cols = f"1:{len(S)}"
        assert main(["inspect-fsd", "--input", src, "--delta", "0.1", "--column-range", cols, "--out", str(out),
                     "--json", "--ell", "3"]) == 0
        _, pts = build_universe(S, T, 0.4, keep_points=True)
        msg = capsys.readouterr().out
        assert int(re.match(r"(\d+) critical points", msg).group(1)) == len(pts)


class TestOracle:
    def test_min_simplification(self, tmp_path, capsys):
        assert main(["oracle", "min-simplification", "--input", _csv(tmp_path, [(0, 0), (1, 1), (2, 2)]),
                     "--delta", "0.1"]) == 0
        assert json.loads(capsys.readouterr().out) == {"min_vertices": 2}

    def test_frechet(self, tmp_path, capsys):
        a = _csv(tmp_path, [(0, 0), (1, 0)], "a.csv")
        b = _csv(tmp_path, [(0, 0.05), (0.5, 0.05), (1, 0.05)], "b.csv")
        assert main(["oracle", "frechet", "--input", a, "--other", b, "--delta", "0.1"]) == 0
        assert json.loads(capsys.readouterr().out) == {"within": True}
        assert main(["oracle", "frechet", "--input", a, "--delta", "0.1"]) == 1


def test_json_round_trip(tmp_path, fixture_path):
    out = tmp_path / "o"
    main(["cluster", "--input", fixture_path("zigzag.csv"), "--ell", "3", "--delta", "0.2", "--out", str(out)])
    text = (out / "clustering.json").read_text()
    assert dumps(json.loads(text)) + "\n" == text
    doc = json.loads(text)
    assert np.array(doc["simplification"]["vertices"]).shape[1] == 2
