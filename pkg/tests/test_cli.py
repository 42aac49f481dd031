import json

import pytest
from click.testing import CliRunner

from matchkit import Instance, parse_instance, serialize_instance
from matchkit.cli import main

from conftest import BOXED_THETA_M, BOXED_THETA_W


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def boxed_file(tmp_path, boxed):
    path = tmp_path / "boxed.json"
    path.write_text(serialize_instance(boxed))
    return str(path)


def write_matching(tmp_path, name, assignment):
    path = tmp_path / name
    path.write_text(json.dumps({"assignment": list(assignment)}))
    return str(path)


class TestSolve:
    def test_nt_boxed(self, runner, boxed_file):
        result = runner.invoke(main, ["solve", "nt", "--instance", boxed_file])
        assert result.exit_code == 0
        assert "1→1', 2→2'" in result.output
        assert "none (stable)" in result.output

    def test_nt_women_proposing(self, runner, boxed_file):
        result = runner.invoke(
            main, ["solve", "nt", "--instance", boxed_file, "--proposer", "women"]
        )
        assert result.exit_code == 0
        assert "proposer: women" in result.output

    def test_ft_boxed(self, runner, boxed_file):
        result = runner.invoke(main, ["solve", "ft", "--instance", boxed_file])
        assert result.exit_code == 0
        assert "1→2', 2→1'" in result.output
        assert "total value: 5" in result.output
        assert "core audit: ok" in result.output

    def test_ft_single_couple(self, runner, tmp_path):
        inst = Instance(1, ((4.25,),), ((1.75,),))
        path = tmp_path / "one.json"
        path.write_text(serialize_instance(inst))
        result = runner.invoke(main, ["solve", "ft", "--instance", str(path)])
        assert result.exit_code == 0
        assert "total value: 6" in result.output

    def test_out_writes_matching(self, runner, boxed_file, tmp_path):
        out = tmp_path / "m.json"
        result = runner.invoke(
            main, ["solve", "ft", "--instance", boxed_file, "--out", str(out)]
        )
        assert result.exit_code == 0
        assert json.loads(out.read_text()) == {"assignment": [1, 0]}

    def test_parse_error_exit_2(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        result = runner.invoke(main, ["solve", "nt", "--instance", str(bad)])
        assert result.exit_code == 2

    def test_deterministic_output(self, runner, boxed_file):
        first = runner.invoke(main, ["solve", "ft", "--instance", boxed_file])
        second = runner.invoke(main, ["solve", "ft", "--instance", boxed_file])
        assert first.output == second.output


class TestCheck:
    def test_stable_exit_0(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "0", "--q", "0"],
        )
        assert result.exit_code == 0
        assert "stable: yes" in result.output

    def test_unstable_exit_1_with_chain(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "1", "--q", "1"],
        )
        assert result.exit_code == 1
        assert "stable: no" in result.output
        assert "couples (1, 2)" in result.output

    def test_out_of_range_p_exit_2(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "1.5", "--q", "0"],
        )
        assert result.exit_code == 2

    def test_wrong_size_matching_exit_2(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "bad.json", (0, 2, 1))
        result = runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "0", "--q", "0"],
        )
        assert result.exit_code == 2


class TestGen:
    def test_writes_valid_instance(self, runner, tmp_path):
        out = tmp_path / "inst.json"
        result = runner.invoke(main, ["gen", "--n", "4", "--seed", "9", "--out", str(out)])
        assert result.exit_code == 0
        inst = parse_instance(out.read_text())
        assert inst.n == 4

    def test_deterministic_bytes(self, runner, tmp_path):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        runner.invoke(main, ["gen", "--n", "3", "--seed", "5", "--out", str(out1)])
        runner.invoke(main, ["gen", "--n", "3", "--seed", "5", "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_integer_range_dist(self, runner, tmp_path):
        out = tmp_path / "int.json"
        result = runner.invoke(
            main, ["gen", "--n", "3", "--seed", "2", "--dist", "int:0:9", "--out", str(out)]
        )
        assert result.exit_code == 0
        inst = parse_instance(out.read_text())
        assert all(0 <= x <= 9 for row in inst.theta_m + inst.theta_w for x in row)

    def test_bad_dist_exit_2(self, runner, tmp_path):
        result = runner.invoke(
            main, ["gen", "--n", "3", "--seed", "2", "--dist", "pareto", "--out", str(tmp_path / "x")]
        )
        assert result.exit_code == 2

    def test_rejects_zero_size(self, runner, tmp_path):
        result = runner.invoke(
            main, ["gen", "--n", "0", "--seed", "2", "--out", str(tmp_path / "x")]
        )
        assert result.exit_code == 2


class TestCounterexampleFlow:
    def test_both_matchings_unstable(self, runner, tmp_path):
        inst_path = tmp_path / "ce.json"
        result = runner.invoke(
            main, ["counterexample", "--p", "0.2", "--q", "0.8", "--out", str(inst_path)]
        )
        assert result.exit_code == 0
        for name, assignment in (("a.json", (0, 1)), ("b.json", (1, 0))):
            matching = write_matching(tmp_path, name, assignment)
            check = runner.invoke(
                main,
                [
                    "check",
                    "--instance", str(inst_path),
                    "--matching", matching,
                    "--p", "0.2",
                    "--q", "0.8",
                ],
            )
            assert check.exit_code == 1

    def test_invalid_levels_exit_2(self, runner, tmp_path):
        result = runner.invoke(
            main, ["counterexample", "--p", "0.5", "--q", "0.5", "--out", str(tmp_path / "x")]
        )
        assert result.exit_code == 2


class TestSweep:
    def test_row_count_and_determinism(self, runner, tmp_path):
        out1 = tmp_path / "s1.csv"
        out2 = tmp_path / "s2.csv"
        args = ["sweep", "--n", "2", "--grid", "11", "--trials", "2", "--seed", "3"]
        first = runner.invoke(main, args + ["--out", str(out1)])
        second = runner.invoke(main, args + ["--out", str(out2)])
        assert first.exit_code == 0 and second.exit_code == 0
        lines = out1.read_text().strip().split("\n")
        assert len(lines) == 122  # header + 11*11 cells
        assert out1.read_bytes() == out2.read_bytes()

    def test_size_limit_exit_3(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["sweep", "--n", "7", "--grid", "3", "--trials", "1", "--out", str(tmp_path / "x")],
        )
        assert result.exit_code == 3


class TestCore:
    def test_fnt_boxed_valid(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["core", "--model", "fnt", "--instance", boxed_file, "--matching", matching],
        )
        assert result.exit_code == 0
        assert "core-valid: yes" in result.output

    def test_ft_identity_invalid(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["core", "--model", "ft", "--instance", boxed_file, "--matching", matching],
        )
        assert result.exit_code == 1
        assert "core-valid: no" in result.output

    def test_search_size_limit_exit_3(self, runner, tmp_path):
        inst = Instance(4, tuple((float(i),) * 4 for i in range(4)), tuple((2.0,) * 4 for _ in range(4)))
        inst_path = tmp_path / "big.json"
        inst_path.write_text(serialize_instance(inst))
        matching = write_matching(tmp_path, "m.json", (0, 1, 2, 3))
        result = runner.invoke(
            main,
            ["core", "--model", "ft", "--instance", str(inst_path), "--matching", matching],
        )
        assert result.exit_code == 3

    def test_taxed_needs_beta_exit_2(self, runner, boxed_file, tmp_path):
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        result = runner.invoke(
            main,
            ["core", "--model", "ft_taxed", "--instance", boxed_file, "--matching", matching],
        )
        assert result.exit_code == 2

    def test_taxed_with_beta_in_instance(self, runner, tmp_path, boxed):
        inst = Instance(2, BOXED_THETA_M, BOXED_THETA_W, beta=((0.5, 0.5), (0.5, 0.5)))
        inst_path = tmp_path / "taxed.json"
        inst_path.write_text(serialize_instance(inst))
        matching = write_matching(tmp_path, "swap.json", (1, 0))
        result = runner.invoke(
            main,
            ["core", "--model", "ft_taxed", "--instance", str(inst_path), "--matching", matching],
        )
        assert result.exit_code in (0, 1)  # decided, not an error


class TestHygiene:
    def test_inputs_never_modified(self, runner, boxed_file, tmp_path):
        before = open(boxed_file, "rb").read()
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        m_before = open(matching, "rb").read()
        runner.invoke(main, ["solve", "nt", "--instance", boxed_file])
        runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "0", "--q", "0"],
        )
        assert open(boxed_file, "rb").read() == before
        assert open(matching, "rb").read() == m_before

    def test_eps_env_override(self, runner, boxed_file, tmp_path, monkeypatch):
        monkeypatch.setenv("MATCHKIT_EPS", "0.5")
        matching = write_matching(tmp_path, "ident.json", (0, 1))
        # with eps = 0.5 the unit-gain chain at (1,1) still exceeds it
        result = runner.invoke(
            main,
            ["check", "--instance", boxed_file, "--matching", matching, "--p", "1", "--q", "1"],
        )
        assert result.exit_code == 1

    def test_bad_eps_env_exit_2(self, runner, boxed_file, monkeypatch):
        monkeypatch.setenv("MATCHKIT_EPS", "banana")
        result = runner.invoke(main, ["solve", "nt", "--instance", boxed_file])
        assert result.exit_code == 2
