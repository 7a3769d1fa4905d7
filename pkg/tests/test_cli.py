import json
import subprocess
import sys
from dataclasses import replace

import pytest

from leonard.awrel import AWScalars, aw_scalars
from leonard.cli import main
from leonard.grid import full_grid
from leonard.lbtd import LBTDPair, RecoveryResult, build, parameter_array_of
from leonard.params import ClosedFormParams, ParameterArray
from leonard.qfield import rf

EX_CF = ClosedFormParams(d=3, a=1, a_prime=2, b=5, b_prime=3, c=1)
EX = ["--d", "3", "--a", "1", "--a-prime", "2", "--b", "5", "--b-prime", "3", "--c", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def flags_of(cf):
    out = ["--d", str(cf.d)]
    for name in ("a", "a_prime", "b", "b_prime", "c", "alpha", "alpha_star"):
        out += ["--" + name.replace("_", "-"), str(getattr(cf, name))]
    return out


@pytest.fixture
def pair_file(tmp_path, capsys):
    path = tmp_path / "pair.json"
    assert main(["construct", *EX, "--output", str(path)]) == 0
    capsys.readouterr()
    return path


class TestExitCodes:
    def test_construct(self, capsys):
        code, payload = run_json(capsys, "construct", *EX)
        assert code == 0
        assert LBTDPair.from_json(payload) == build(EX_CF)

    def test_construct_rejects_equal_a(self, capsys):
        argv = list(EX)
        argv[argv.index("--a-prime") + 1] = "1"
        code, payload = run_json(capsys, "construct", *argv)
        assert code == 1
        assert payload["status"] == "rejected"
        assert [v["condition"] for v in payload["violations"]] == ["cond1"]
        assert payload["violations"][0]["index"] == 0

    @pytest.mark.parametrize("argv", [
        ["construct", "--d", "3", "--a", "zz"],
        ["construct", "--d", "3", "--a", "1", "--a-prime", "2", "--b", "5", "--b-prime", "3"],
        ["construct", "--d", "x"],
        ["frobnicate"],
        ["verify", "--input", "/nonexistent/pair.json"],
        ["construct", *EX, "--format", "yaml"],
    ])
    def test_malformed(self, capsys, argv):
        code, _ = run(capsys, *argv)
        assert code == 2

    def test_recover_not_in_family(self, capsys, tmp_path):
        broken = build(EX_CF).to_json()
        broken["Astar"]["entries"][0][1] = rf(99).to_json()
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(broken))
        code, payload = run_json(capsys, "recover", "--input", str(path))
        assert code == 1
        assert payload["error"] in ("NotInFamily", "DegenerateZ")
        assert "step" in payload


class TestSubcommands:
    def test_recover(self, capsys, pair_file):
        code, payload = run_json(capsys, "recover", "--input", str(pair_file))
        assert code == 0
        res = RecoveryResult.from_json(payload)
        assert res.b_split == (rf(5), rf(3))
        assert (res.a, res.a_prime, res.c, res.q_inverted) == (1, 2, 1, False)

    def test_verify(self, capsys, pair_file):
        code, payload = run_json(capsys, "verify", "--input", str(pair_file))
        assert code == 0 and payload["status"] == "certified"
        assert len(payload["theta_orderings"]) == 2

    def test_verify_wrong_theta_star(self, capsys, pair_file):
        code, _ = run(capsys, "verify", "--input", str(pair_file), "--theta-star", "1,2,3,4")
        assert code == 1

    def test_classify(self, capsys, pair_file):
        code, payload = run_json(capsys, "classify", "--input", str(pair_file))
        assert code == 0 and payload == {"type": "q-racah", "has_lbtd_form": True}
        code, payload = run_json(capsys, "classify", "--d", "3", "--a", "1", "--a-prime", "2",
                                 "--b", "5", "--b-prime", "0", "--xi", "0")
        assert payload == {"type": "dual-q-krawtchouk", "has_lbtd_form": False}

    def test_split(self, capsys):
        code, payload = run_json(capsys, "split", *EX)
        assert code == 0 and payload["matches_matrices"]
        assert ParameterArray.from_json(payload["parameter_array"]) == parameter_array_of(EX_CF)

    def test_aw_check(self, capsys):
        code, payload = run_json(capsys, "aw-check", *EX, "--alpha", "1/2")
        assert code == 0
        assert payload["relations_hold"] and payload["det_identity"]
        assert "closed_forms_agree" not in payload
        cf = replace(EX_CF, alpha=rf(1) / 2)
        assert AWScalars.from_json(payload["scalars"]) == aw_scalars(parameter_array_of(cf))

    def test_conditions(self, capsys):
        assert run_json(capsys, "conditions", *EX) == (0, {"status": "valid", "violations": []})

    def test_symbolic_flags(self, capsys):
        code, payload = run_json(capsys, "aw-check", "--d", "3", "--a", "q", "--a-prime", "2",
                                 "--b", "q+1", "--b-prime", "3", "--c", "1")
        assert code == 0 and payload["closed_forms_agree"]

    def test_text_format(self, capsys):
        code, out = run(capsys, "conditions", *EX, "--format", "text")
        assert code == 0 and out == "status : valid\n"

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out.json"
        code, out = run(capsys, "aw-check", *EX, "--output", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["relations_hold"]


def test_byte_identical_reruns(capsys):
    outs = {run(capsys, "split", *EX)[1] for _ in range(2)}
    assert len(outs) == 1


def test_pipe_through_stdin():
    construct = subprocess.run([sys.executable, "-m", "leonard.cli", "construct", *EX],
                               capture_output=True, text=True, check=True)
    recover = subprocess.run([sys.executable, "-m", "leonard.cli", "recover", "--input", "-",
                              "--format", "text"], input=construct.stdout,
                             capture_output=True, text=True)
    assert recover.returncode == 0
    assert "b_split    : [5, 3]" in recover.stdout


@pytest.mark.parametrize("cf", full_grid()[::4], ids=lambda cf: f"d{cf.d}")
def test_construct_recover_round_trip(cf, tmp_path, capsys):
    path = tmp_path / "pair.json"
    assert main(["construct", *flags_of(cf), "--output", str(path)]) == 0
    code, payload = run_json(capsys, "recover", "--input", str(path))
    assert code == 0
    res = RecoveryResult.from_json(payload)
    assert not res.q_inverted
    assert (res.alpha, res.alpha_star, res.a, res.a_prime, res.c) == \
        (cf.alpha, cf.alpha_star, cf.a, cf.a_prime, cf.c)
    assert set(res.b_split) == {cf.b, cf.b_prime}
    assert res.rebuild() == build(cf)


class TestGridMode:
    def entries(self, tmp_path):
        rows = [{"d": 3, "a": "1", "a_prime": "2", "b": "5", "b_prime": "3", "c": "1"},
                {"d": 3, "a": "1", "a_prime": "1", "b": "5", "b_prime": "3", "c": "1"},
                {"d": 4, "a": "q", "a_prime": "2/3", "b": "-1", "b_prime": "3", "c": "2"}]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(rows))
        return path

    def test_serial_and_parallel_agree(self, tmp_path, capsys):
        path = self.entries(tmp_path)
        code1, out1 = run(capsys, "conditions", "--grid", str(path))
        code2, out2 = run(capsys, "conditions", "--grid", str(path), "--jobs", "2")
        assert code1 == code2 == 1
        assert out1 == out2
        exits = [r["exit"] for r in json.loads(out1)]
        assert exits == [0, 1, 0]

    def test_bad_grid(self, tmp_path, capsys):
        path = tmp_path / "grid.json"
        path.write_text('{"d": 3}')
        assert run(capsys, "conditions", "--grid", str(path))[0] == 2
