"""End-to-end CLI behavior through main()."""

import json

import pytest

from orientlight import parse_graph, parse_weights
from orientlight.cli import main

K3_TEXT = "3 3\n1 2\n2 3\n1 3\n"


@pytest.fixture
def k3_file(tmp_path):
    p = tmp_path / "k3.graph"
    p.write_text(K3_TEXT)
    return p


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestSolve:
    def test_human_output(self, capsys, k3_file):
        rc, out, _ = run(capsys, "solve", k3_file)
        assert rc == 0
        assert "objective: 2" in out
        assert "light:" in out
        assert "certificate:" in out
        assert out.count("->") == 3

    def test_weighted(self, capsys, tmp_path, k3_file):
        w = tmp_path / "w.txt"
        w.write_text("1 5\n2 1\n3 1\n")
        rc, out, _ = run(capsys, "solve", k3_file, "--weights", w)
        assert rc == 0
        assert "objective: 2" in out

    def test_json_round_trips_through_verify(self, capsys, tmp_path, k3_file):
        rc, out, _ = run(capsys, "solve", k3_file, "--json")
        assert rc == 0
        doc = json.loads(out)
        assert doc["objective"] == 2
        assert len(doc["orientation"]) == 3
        sol = tmp_path / "sol.json"
        sol.write_text(out)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 0
        assert "OK" in out

    def test_fractional_weights_round_trip(self, capsys, tmp_path, k3_file):
        w = tmp_path / "w.txt"
        w.write_text("1 0.5\n2 0.25\n3 0.25\n")
        rc, out, _ = run(capsys, "solve", k3_file, "--json", "--weights", w)
        assert rc == 0
        doc = json.loads(out)
        assert doc["objective"] == 0.5
        sol = tmp_path / "sol.json"
        sol.write_text(out)
        rc, out, _ = run(capsys, "verify", k3_file, sol, "--weights", w)
        assert rc == 0, out

    def test_malformed_graph_names_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.graph"
        bad.write_text("2 1\n1 1\n")
        rc, _, err = run(capsys, "solve", bad)
        assert rc == 2
        assert "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        rc, _, err = run(capsys, "solve", tmp_path / "nope.graph")
        assert rc == 2
        assert "error:" in err

    def test_negative_weights_rejected(self, capsys, tmp_path, k3_file):
        w = tmp_path / "w.txt"
        w.write_text("1 -3\n")
        rc, _, err = run(capsys, "solve", k3_file, "--weights", w)
        assert rc == 2
        assert "NP-hard" in err

    def test_dump_reduction(self, capsys, tmp_path, k3_file):
        target = tmp_path / "gprime.graph"
        rc, _, _ = run(capsys, "solve", k3_file, "--dump-reduction", target)
        assert rc == 0
        gp = parse_graph(target.read_text())
        assert (gp.n, gp.m) == (9, 9)
        sidecar = json.loads((tmp_path / "gprime.graph.json").read_text())
        assert sidecar["core_vertices"] == 3
        assert len(sidecar["connector"]) == 3
        assert len(sidecar["edge_owner"]) == gp.m
        assert "conventions" in sidecar


class TestVerify:
    def write_solution(self, tmp_path, doc):
        p = tmp_path / "claim.json"
        p.write_text(json.dumps(doc))
        return p

    def cyclic_suboptimal(self):
        return {
            "objective": 3,
            "light": [1, 2, 3],
            "orientation": [[1, 2], [2, 3], [3, 1]],
            "certificate": {"matching_value": 3, "constant": 6, "offset": 0},
        }

    def test_rejects_suboptimal_via_oracle(self, capsys, tmp_path, k3_file):
        sol = self.write_solution(tmp_path, self.cyclic_suboptimal())
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "not optimal" in out

    def test_no_oracle_accepts_consistent_claim(self, capsys, tmp_path, k3_file):
        sol = self.write_solution(tmp_path, self.cyclic_suboptimal())
        rc, out, _ = run(capsys, "verify", k3_file, sol, "--no-oracle")
        assert rc == 0

    def test_budget_skip_notes_and_passes(self, capsys, tmp_path, k3_file, monkeypatch):
        monkeypatch.setenv("ORIENT_LIGHT_ORACLE_BUDGET", "1,1")
        sol = self.write_solution(tmp_path, self.cyclic_suboptimal())
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 0
        assert "optimality not checked" in out

    def test_rejects_wrong_light_set(self, capsys, tmp_path, k3_file):
        doc = self.cyclic_suboptimal()
        doc["light"] = [1]
        sol = self.write_solution(tmp_path, doc)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "light set" in out

    def test_rejects_wrong_objective(self, capsys, tmp_path, k3_file):
        doc = self.cyclic_suboptimal()
        doc["objective"] = 1
        doc["certificate"] = {"matching_value": 5, "constant": 6, "offset": 0}
        sol = self.write_solution(tmp_path, doc)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "objective" in out

    def test_rejects_orientation_of_wrong_length(self, capsys, tmp_path, k3_file):
        doc = self.cyclic_suboptimal()
        doc["orientation"] = [[1, 2]]
        sol = self.write_solution(tmp_path, doc)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "orientation" in out

    def test_rejects_pair_that_is_not_an_edge(self, capsys, tmp_path, k3_file):
        doc = self.cyclic_suboptimal()
        doc["orientation"][0] = [1, 3]
        sol = self.write_solution(tmp_path, doc)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "endpoints" in out

    def test_rejects_broken_certificate_identity(self, capsys, tmp_path, k3_file):
        doc = self.cyclic_suboptimal()
        doc["certificate"]["offset"] = 5
        sol = self.write_solution(tmp_path, doc)
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "certificate identity" in out

    def test_rejects_missing_keys(self, capsys, tmp_path, k3_file):
        sol = self.write_solution(tmp_path, {"objective": 2})
        rc, out, _ = run(capsys, "verify", k3_file, sol)
        assert rc == 1
        assert "missing key" in out

    def test_unparseable_json_is_usage_error(self, capsys, tmp_path, k3_file):
        sol = tmp_path / "claim.json"
        sol.write_text("{not json")
        rc, _, err = run(capsys, "verify", k3_file, sol)
        assert rc == 2


class TestGen:
    def test_stdout_p_zero(self, capsys):
        rc, out, _ = run(capsys, "gen", "5", "0.0", "--seed", "1")
        assert rc == 0
        assert out == "5 0\n"

    def test_p_one_complete(self, capsys):
        rc, out, _ = run(capsys, "gen", "4", "1.0", "--seed", "1")
        assert rc == 0
        assert out.splitlines()[0] == "4 6"

    def test_deterministic_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.graph", tmp_path / "b.graph"
        assert run(capsys, "gen", "6", "0.4", "--seed", "7", "--out", a)[0] == 0
        assert run(capsys, "gen", "6", "0.4", "--seed", "7", "--out", b)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_weights_file(self, capsys, tmp_path):
        g, w = tmp_path / "g.graph", tmp_path / "w.txt"
        rc, _, _ = run(
            capsys, "gen", "6", "0.4", "--seed", "2",
            "--out", g, "--weights-max", "9", "--weights-out", w,
        )
        assert rc == 0
        weights = parse_weights(w.read_text(), 6)
        assert all(0 <= u <= 9 for u in weights.units)

    def test_weights_max_requires_out_path(self, capsys, tmp_path):
        rc, _, err = run(capsys, "gen", "6", "0.4", "--weights-max", "9")
        assert rc == 2
        assert "--weights-out" in err

    def test_invalid_probability(self, capsys):
        rc, _, err = run(capsys, "gen", "6", "1.7")
        assert rc == 2


class TestBench:
    def test_two_rows(self, capsys):
        rc, out, _ = run(capsys, "bench", "n=10,m=15;n=12,m=20")
        assert rc == 0
        rows = out.strip().splitlines()
        assert len(rows) == 2
        assert all("objective=" in row for row in rows)

    def test_deterministic(self, capsys):
        args = ("bench", "n=9,m=14", "--seed", "5")
        rc1, out1, _ = run(capsys, *args)
        rc2, out2, _ = run(capsys, *args)
        assert rc1 == rc2 == 0
        # timings vary between runs; objectives must not
        obj1 = [row.split("objective=")[1] for row in out1.strip().splitlines()]
        obj2 = [row.split("objective=")[1] for row in out2.strip().splitlines()]
        assert obj1 == obj2

    def test_bad_schedule(self, capsys):
        rc, _, err = run(capsys, "bench", "n=10")
        assert rc == 2
        assert "schedule" in err


class TestMainPlumbing:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2
