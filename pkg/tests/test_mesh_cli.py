"""Mesh export formats and the command-line interface contract."""
import json

import numpy as np
import pytest

from zmcgraph import catalog
from zmcgraph.cli import main
from zmcgraph.lorentz import Causal
from zmcgraph.mesh import Mesh, build_grid_mesh, read_ply, write_obj, write_ply


def run(*argv) -> int:
    return main(list(argv))


@pytest.fixture(scope="module")
def coeffs_ii(tmp_path_factory):
    path = tmp_path_factory.mktemp("coeffs") / "ii.json"
    assert run("construct", "--case", "ii", "--c", "-1", "--order", "12",
               "--out", str(path)) == 0
    return str(path)


@pytest.fixture(scope="module")
def coeffs_i(tmp_path_factory):
    path = tmp_path_factory.mktemp("coeffs") / "i.json"
    assert run("construct", "--case", "i", "--c", "1", "--order", "6",
               "--out", str(path)) == 0
    return str(path)


class TestMeshFormats:
    @pytest.fixture()
    def small_mesh(self):
        def evaluate(u, v):
            return (u, v, u * v), (Causal.SPACELIKE if u > 0 else Causal.NULL)

        return build_grid_mesh(evaluate, np.linspace(-1, 1, 5), np.linspace(0, 1, 4))

    def test_grid_counts(self, small_mesh):
        assert len(small_mesh.vertices) == 5 * 4
        assert len(small_mesh.faces) == 2 * 4 * 3

    def test_face_indices_validated(self):
        with pytest.raises(ValueError, match="out of range"):
            Mesh(np.zeros((2, 6)), np.array([[0, 1, 5]]))

    def test_ply_ascii_round_trip(self, small_mesh, tmp_path):
        path = tmp_path / "m.ply"
        write_ply(small_mesh, str(path))
        back = read_ply(str(path))
        assert np.allclose(back.vertices, small_mesh.vertices)
        assert np.array_equal(back.faces, small_mesh.faces)

    def test_ply_binary_round_trip(self, small_mesh, tmp_path):
        path = tmp_path / "m.ply"
        write_ply(small_mesh, str(path), binary=True)
        back = read_ply(str(path))
        # positions are float32 in the binary layout
        assert np.allclose(back.vertices[:, :3], small_mesh.vertices[:, :3], atol=1e-6)
        assert np.array_equal(back.vertices[:, 3:], small_mesh.vertices[:, 3:])
        assert np.array_equal(back.faces, small_mesh.faces)

    def test_obj_layout(self, small_mesh, tmp_path):
        path = tmp_path / "m.obj"
        write_obj(small_mesh, str(path))
        lines = path.read_text().strip().splitlines()
        vs = [l for l in lines if l.startswith("v ")]
        fs = [l for l in lines if l.startswith("f ")]
        assert len(vs) == 20 and len(fs) == 24
        assert min(int(t) for l in fs for t in l.split()[1:]) == 1


class TestConstructCommand:
    def test_round_trip_identical_strings(self, coeffs_ii, tmp_path):
        again = tmp_path / "again.json"
        assert run("construct", "--case", "ii", "--c", "-1", "--order", "12",
                   "--out", str(again)) == 0
        assert json.load(open(coeffs_ii)) == json.load(open(str(again)))

    def test_sign_violations_exit_2(self, capsys):
        assert run("construct", "--case", "ii", "--c", "1") == 2
        assert "c < 0" in capsys.readouterr().err
        assert run("construct", "--case", "iii", "--c", "-2") == 2
        assert run("construct", "--case", "i", "--c", "-1") == 2
        assert run("construct", "--case", "iii", "--c", "0") == 2

    def test_mixed_case_emits_cubic_seed(self, coeffs_i):
        data = json.load(open(coeffs_i))
        assert data["betas"]["3"] == ["0", "3"]
        assert data["case"] == "i"

    def test_quartic_table(self, coeffs_ii):
        data = json.load(open(coeffs_ii))
        assert data["betas"]["4"] == ["0", "-4"]
        assert data["betas"]["6"] == ["0", "0", "0", "-8"]
        assert "5" not in data["betas"]


class TestClassifyCommand:
    def test_case_ii_default_grid(self, coeffs_ii, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert run("classify", "--coeffs", coeffs_ii, "--out", str(out)) == 0
        assert "maximal type" in capsys.readouterr().out
        data = json.load(open(str(out)))
        assert data["verdict"] == "maximal type"
        assert data["counts"]["timelike"] == 0
        ny = data["grid"]["y"][2]
        for col, row in zip(data["columns"], data["verdict_rows"]):
            if abs(col["x"]) < 1e-15:
                assert col["spacelike"] == 0 and col["null"] == ny
                assert row == "n" * ny
            else:
                assert col["timelike"] == 0 and col["spacelike"] > 0
                assert set(row) <= {"s", "n"}

    def test_case_i_is_mixed(self, coeffs_i):
        assert run("classify", "--coeffs", coeffs_i,
                   "--grid=-0.05:0.05:9,-0.5:0.5:9") == 0

    def test_case_i_verdict_json(self, coeffs_i, tmp_path):
        out = tmp_path / "r.json"
        run("classify", "--coeffs", coeffs_i, "--grid=-0.05:0.05:9,-0.5:0.5:9",
            "--out", str(out))
        data = json.load(open(str(out)))
        assert data["verdict"] == "mixed type"
        assert data["counts"]["spacelike"] >= 5
        assert data["counts"]["timelike"] >= 5

    def test_lightlike_plane_all_null(self, tmp_path):
        out = tmp_path / "r.json"
        assert run("classify", "--surface", "catalog:lightlike_plane",
                   "--out", str(out)) == 0
        data = json.load(open(str(out)))
        assert data["verdict"] == "light-like"
        assert data["counts"]["spacelike"] == 0 == data["counts"]["timelike"]

    def test_certified_violation_exits_3(self, coeffs_ii):
        assert run("classify", "--coeffs", coeffs_ii,
                   "--grid=-1:1:5,-1:1:5", "--certified") == 3

    def test_certified_inside_passes(self, coeffs_ii):
        assert run("classify", "--coeffs", coeffs_ii,
                   "--grid=-0.0005:0.0005:5,-0.9:0.9:5", "--certified") == 0

    def test_unknown_surface_exits_2(self):
        assert run("classify", "--surface", "catalog:nope") == 2

    def test_bad_grid_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            run("classify", "--surface", "catalog:light_cone", "--grid", "junk")
        assert exc.value.code == 2


class TestBoundsCommand:
    def test_report_contents(self, tmp_path, capsys):
        out = tmp_path / "b.json"
        assert run("bounds", "--c", "1", "--delta", "1", "--out", str(out)) == 0
        text = capsys.readouterr().out
        assert "NOT in" in text
        data = json.load(open(str(out)))
        assert data["certificate"]["M"] == pytest.approx(1162.6, abs=0.5)
        w = data["halfwidths"]
        assert w["4.0"] < w["2.0"] < w["1.0"] <= w["0.0"]
        assert data["witness"]["non_convex"] is True

    def test_invalid_inputs_exit_2(self):
        assert run("bounds", "--c", "0") == 2
        assert run("bounds", "--c", "1", "--delta", "0.5") == 2


class TestVerifyCommand:
    def test_recursion_suite(self, tmp_path):
        out = tmp_path / "rows.json"
        assert run("verify", "--suite", "recursion", "--out", str(out)) == 0
        rows = json.load(open(str(out)))
        info = [r for r in rows if r.get("kind") == "info"]
        assert len(info) == 1 and info[0]["name"] == "beta8-sign"
        assert all(r["pass"] for r in rows if "pass" in r)

    def test_corpus_suite(self):
        assert run("verify", "--suite", "corpus") == 0

    def test_all_suites_serialize(self, tmp_path):
        # every row, including corpus rows, must be plain-JSON serializable
        out = tmp_path / "all.json"
        assert run("verify", "--suite", "all", "--out", str(out)) == 0
        rows = json.load(open(str(out)))
        assert sum(r.get("kind") == "info" for r in rows) == 1
        assert {r["suite"] for r in rows} == {"recursion", "growth", "corpus"}

    def test_failure_exits_1(self, monkeypatch):
        monkeypatch.setattr(
            "zmcgraph.cli._suite_corpus",
            lambda: [{"suite": "corpus", "name": "forced", "pass": False}],
        )
        assert run("verify", "--suite", "corpus") == 1


class TestMeshCommand:
    def test_series_mesh_has_null_stripe(self, coeffs_ii, tmp_path):
        out = tmp_path / "s.ply"
        assert run("mesh", "--coeffs", coeffs_ii,
                   "--grid=-0.05:0.05:11,-1:1:9", "--out", str(out)) == 0
        m = read_ply(str(out))
        assert len(m.vertices) == 11 * 9
        assert len(m.faces) == 2 * 10 * 8
        for v in m.vertices:
            if abs(v[0]) < 1e-15:  # on the null line: white
                assert tuple(v[3:]) == (255.0, 255.0, 255.0)
            else:  # space-like: blue
                assert tuple(v[3:]) == (0.0, 0.0, 255.0)

    def test_catalog_mesh_counts(self, tmp_path):
        out = tmp_path / "c.ply"
        assert run("mesh", "--surface", "catalog:light_cone",
                   "--grid", "0:6.283:17,-1:1:9", "--out", str(out)) == 0
        m = read_ply(str(out))
        assert len(m.vertices) == 17 * 9
        assert len(m.faces) == 2 * 16 * 8

    def test_binary_flag(self, tmp_path):
        out = tmp_path / "b.ply"
        assert run("mesh", "--surface", "catalog:elliptic_catenoid",
                   "--grid", "0:6:5,-1:1:5", "--ply-binary", "--out", str(out)) == 0
        data = open(str(out), "rb").read()
        assert b"binary_little_endian" in data
        assert len(read_ply(str(out)).vertices) == 25

    def test_obj_format(self, coeffs_ii, tmp_path):
        out = tmp_path / "m.obj"
        assert run("mesh", "--coeffs", coeffs_ii, "--format", "obj",
                   "--out", str(out)) == 0
        assert out.read_text().startswith("v ")

    def test_io_failure_exits_4(self, coeffs_ii):
        assert run("mesh", "--coeffs", coeffs_ii,
                   "--out", "/nonexistent-dir/x.ply") == 4


class TestThreadedGrids:
    def test_row_parallel_matches_serial(self, coeffs_ii, tmp_path, monkeypatch):
        serial = tmp_path / "serial.json"
        run("classify", "--coeffs", coeffs_ii, "--out", str(serial))
        monkeypatch.setenv("ZMC_THREADS", "4")
        threaded = tmp_path / "threaded.json"
        run("classify", "--coeffs", coeffs_ii, "--out", str(threaded))
        assert json.load(open(str(serial))) == json.load(open(str(threaded)))
