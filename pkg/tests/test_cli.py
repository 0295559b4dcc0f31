import json

import numpy as np
import pytest

import psdorder as po
from psdorder import cli, sampling


def write_matrix(path, m):
    path.write_text(json.dumps(cli.matrix_to_obj(np.asarray(m, dtype=complex))))
    return str(path)


def write_vector(path, v):
    path.write_text(json.dumps(cli.vector_to_obj(np.asarray(v, dtype=complex))))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "id2": write_matrix(tmp_path / "id2.json", np.eye(2)),
        "d21": write_matrix(tmp_path / "d21.json", np.diag([2.0, 1.0])),
        "d12": write_matrix(tmp_path / "d12.json", np.diag([1.0, 2.0])),
        "p": write_matrix(tmp_path / "p.json", np.diag([1.0, 0.0])),
        "q": write_matrix(tmp_path / "q.json", np.diag([0.0, 1.0])),
        "e1": write_vector(tmp_path / "e1.json", [1.0, 0.0]),
        "zero_vec": write_vector(tmp_path / "z.json", [0.0, 0.0]),
        "tmp": tmp_path,
    }


def run_json(capsys, argv):
    code = cli.main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


class TestRoundTrip:
    def test_matrix_obj_complex(self, rng):
        m = sampling.random_psd(rng, 3)
        obj = cli.matrix_to_obj(m)
        assert obj["complex"] is True
        np.testing.assert_array_equal(cli.obj_to_matrix(obj), m)

    def test_matrix_obj_real(self):
        m = np.diag([1.0, 2.0])
        obj = cli.matrix_to_obj(m)
        assert obj["complex"] is False
        np.testing.assert_array_equal(cli.obj_to_matrix(obj), m)

    def test_vector_obj(self, rng):
        v = sampling.random_vector(rng, 4)
        np.testing.assert_array_equal(cli.obj_to_vector(cli.vector_to_obj(v)), v)

    def test_malformed_matrix(self):
        with pytest.raises(cli.CliInputError):
            cli.obj_to_matrix({"n": 2, "complex": False, "data": [[1.0]]})


class TestCommands:
    def test_strength_report(self, capsys, files):
        code, report = run_json(capsys, ["strength", "--a", files["id2"], "--f", files["e1"]])
        assert code == 0
        assert report["verdict"]["lambda"] == pytest.approx(1.0)
        assert cli.reverify_report(report) == []

    def test_inf_disjoint_projections(self, capsys, files):
        code, report = run_json(capsys, ["inf", "--a", files["p"], "--b", files["q"]])
        assert code == 0
        assert report["verdict"]["exists"] is True
        inf = cli.obj_to_matrix(report["witnesses"]["inf"]["value"])
        assert np.max(np.abs(inf)) <= 1e-10
        assert cli.reverify_report(report) == []

    def test_ando_witness_fixture(self, capsys, files):
        code, report = run_json(capsys, ["ando-witness", "--a", files["d21"], "--b", files["d12"]])
        assert code == 0
        d = cli.obj_to_matrix(report["witnesses"]["d"]["value"])
        expected = np.array([[5 / 6, np.sqrt(2) / 6], [np.sqrt(2) / 6, 5 / 6]])
        np.testing.assert_allclose(d, expected, atol=1e-10)
        assert cli.reverify_report(report) == []

    def test_leq_with_witness(self, capsys, files):
        code, report = run_json(capsys, ["leq", "--a", files["d21"], "--b", files["d12"]])
        assert code == 0
        assert report["verdict"]["leq"] is False
        assert "ray" in report["witnesses"]
        assert cli.reverify_report(report) == []

    def test_sup_kadison_compress_lebesgue_parsum(self, capsys, files):
        for argv in (
            ["sup", "--a", files["p"], "--b", files["q"], "--t", files["id2"]],
            ["kadison-witness", "--a", files["p"], "--b", files["q"], "--t", files["id2"]],
            ["compress", "--a", files["d21"], "--b", files["d12"]],
            ["lebesgue", "--a", files["p"], "--b", files["id2"]],
            ["parsum", "--a", files["id2"], "--b", files["id2"]],
        ):
            code, report = run_json(capsys, argv)
            assert code == 0, argv
            assert cli.reverify_report(report) == [], argv

    def test_kadison_fixture_via_cli(self, capsys, files):
        code, report = run_json(
            capsys, ["kadison-witness", "--a", files["p"], "--b", files["q"], "--t", files["id2"]]
        )
        s = cli.obj_to_matrix(report["witnesses"]["s"]["value"])
        np.testing.assert_allclose(
            s, np.eye(2) + np.array([[1.0, 2.0], [2.0, 1.0]]) / 3.0, atol=1e-12
        )


class TestExitCodes:
    def test_missing_file(self, files, capsys):
        assert cli.main(["leq", "--a", str(files["tmp"] / "nope.json"), "--b", files["id2"]]) == 1

    def test_non_hermitian_load(self, files, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"n": 2, "complex": False, "data": [[1.0, 5.0], [0.0, 1.0]]}))
        assert cli.main(["leq", "--a", str(bad), "--b", files["id2"]]) == 1

    def test_unknown_flag(self, capsys):
        assert cli.main(["leq", "--bogus", "x"]) == 1

    def test_missing_required_input(self, capsys, files):
        assert cli.main(["strength", "--a", files["id2"]]) == 1

    def test_zero_ray_precondition(self, capsys, files):
        assert cli.main(["strength", "--a", files["id2"], "--f", files["zero_vec"]]) == 2

    def test_ando_witness_comparable_rejected(self, capsys, files):
        assert cli.main(["ando-witness", "--a", files["id2"], "--b", files["id2"]]) == 2

    def test_kadison_requires_strict_bound(self, capsys, files):
        assert cli.main(
            ["kadison-witness", "--a", files["id2"], "--b", files["id2"], "--t", files["id2"]]
        ) == 2

    def test_dimension_mismatch(self, capsys, files, tmp_path):
        three = write_matrix(tmp_path / "id3.json", np.eye(3))
        assert cli.main(["leq", "--a", files["id2"], "--b", three]) == 2

    def test_gen_rank_out_of_range(self, capsys):
        assert cli.main(["gen", "--dim", "2", "--rank", "3"]) == 2

    def test_selftest_zero_trials(self, capsys):
        assert cli.main(["selftest", "--trials", "0"]) == 2


class TestCsv:
    def test_real_symmetric_csv(self, capsys, tmp_path, files):
        c = tmp_path / "m.csv"
        c.write_text("2.0,0.5\n0.5,1.0\n")
        code, report = run_json(capsys, ["leq", "--a", str(c), "--b", files["d21"]])
        assert code == 0

    def test_non_square_csv(self, tmp_path, files, capsys):
        c = tmp_path / "bad.csv"
        c.write_text("1.0,2.0,3.0\n4.0,5.0,6.0\n")
        assert cli.main(["leq", "--a", str(c), "--b", files["id2"]]) == 1


class TestGen:
    def test_deterministic_bytes(self, capsys):
        assert cli.main(["gen", "--seed", "9", "--dim", "4", "--rank", "2"]) == 0
        first = capsys.readouterr().out
        assert cli.main(["gen", "--seed", "9", "--dim", "4", "--rank", "2"]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_rank_full(self, capsys):
        cli.main(["gen", "--seed", "3", "--dim", "4"])
        m = cli.obj_to_matrix(json.loads(capsys.readouterr().out))
        assert po.numeric_rank(m) == 4

    def test_rank_one_structure(self, capsys):
        cli.main(["gen", "--seed", "3", "--dim", "4", "--rank", "1"])
        m = cli.obj_to_matrix(json.loads(capsys.readouterr().out))
        w = np.linalg.eigvalsh(m)
        assert w[-1] > 0.1
        assert np.max(np.abs(w[:-1])) <= 1e-12

    def test_output_is_psd_and_loadable(self, capsys, tmp_path):
        cli.main(["gen", "--seed", "5", "--dim", "3", "--rank", "2"])
        out = capsys.readouterr().out
        f = tmp_path / "gen.json"
        f.write_text(out)
        loaded = cli.load_matrix_file(str(f), po.DEFAULT_TOL)
        assert po.is_psd(loaded.value)


class TestDeterminism:
    def test_json_reports_byte_identical(self, capsys, files):
        code = cli.main(["inf", "--a", files["d21"], "--b", files["d12"], "--json"])
        first = capsys.readouterr().out
        cli.main(["inf", "--a", files["d21"], "--b", files["d12"], "--json"])
        second = capsys.readouterr().out
        assert code == 0
        assert first == second

    def test_seeded_report_stable(self, capsys, files):
        code, r1 = run_json(capsys, ["strength", "--a", files["id2"], "--f", files["e1"], "--seed", "4"])
        _, r2 = run_json(capsys, ["strength", "--a", files["id2"], "--f", files["e1"], "--seed", "4"])
        assert code == 0
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


class TestSelftestCommand:
    def test_small_run_passes(self, capsys):
        code, summary = run_json(capsys, ["selftest", "--trials", "2", "--seed", "1"])
        assert code == 0
        assert summary["ok"] is True
        assert {s["name"] for s in summary["suites"]} == {
            "core",
            "strength",
            "lebesgue",
            "lattice",
            "forms",
            "reports",
        }

    def test_seed_variation_same_verdict(self, capsys):
        code1, s1 = run_json(capsys, ["selftest", "--trials", "2", "--seed", "11"])
        code2, s2 = run_json(capsys, ["selftest", "--trials", "2", "--seed", "99"])
        assert code1 == code2 == 0
        assert s1["ok"] is s2["ok"] is True
