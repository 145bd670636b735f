import subprocess
import sys

import pytest

from considerate import __version__
from considerate.cli import main
from considerate.cyclegen import replay_and_certify, CycleConstruction, player_names
from considerate.formats import format_instance, parse_instance, parse_schedule, parse_state
from considerate.game import GameInstance
from considerate.social import SocialGraph

TRIO_FILE = "players 3\nresources 2\ndelay 0 1 2 3\ndelay 1 1 2 3\n"


@pytest.fixture
def files(tmp_path):
    inst = tmp_path / "inst.txt"
    inst.write_text(TRIO_FILE)
    state = tmp_path / "state.txt"
    state.write_text("state 0 0 1\n")
    return tmp_path, inst, state


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestSolveVerify:
    def test_solve(self, capsys, files):
        _, inst, _ = files
        code, out, _ = run(capsys, "solve", inst)
        lines = out.splitlines()
        assert code == 0
        assert lines[0].startswith("state ")
        assert lines[1].startswith("result NE=yes CE=yes iterations=")

    def test_solve_trace_and_seed(self, capsys, files):
        tmp, inst, _ = files
        trace = tmp / "trace.txt"
        code, out, _ = run(capsys, "solve", inst, "--trace", trace, "--seed", 3)
        assert code == 0 and trace.read_text().startswith("start state")
        assert run(capsys, "solve", inst, "--seed", 3)[1] == out

    def test_verify(self, capsys, files):
        _, inst, state = files
        code, out, _ = run(capsys, "verify", inst, state, "--full")
        assert code == 0
        got = dict(line.split(" ", 1) for line in out.splitlines())
        assert got["SSE"] == "no witness: move 2 0:0 1:1"
        assert got["NE"] == "yes" and got["CE"] == "yes" and got["SE"] == "yes"
        assert got["partition"] == "yes"

    def test_verify_default_skips_coalitions(self, capsys, files):
        _, inst, state = files
        out = run(capsys, "verify", inst, state)[1]
        assert "SE unknown" in out and "NE yes" in out

    def test_verify_budget_exit(self, capsys, tmp_path):
        inst = tmp_path / "i.txt"
        inst.write_text(format_instance(GameInstance.identical(6, 2), SocialGraph.from_cliques(6, [range(6)])))
        state = tmp_path / "s.txt"
        state.write_text("state 0 0 0 1 1 1\n")
        code, out, _ = run(capsys, "verify", inst, state, "--budget-cliques", 5)
        assert code == 0 and "CE unknown" in out


class TestErrors:
    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text(TRIO_FILE.replace("1 2 3\n", "2 2 3\n", 1))
        code, _, err = run(capsys, "solve", bad)
        assert code == 2
        assert err.startswith("error parse: line 3: resource 0")
        assert len(err.splitlines()) == 1

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "solve", tmp_path / "nope")[0] == 2

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2
        with pytest.raises(SystemExit) as info:
            main(["gen-random", "-n", "3", "-m", "2", "--seed", "-1"])
        assert info.value.code == 2

    def test_infeasible_generator(self, capsys):
        code, _, err = run(capsys, "gen-random", "-n", 5, "-m", 2, "--delay-max", 3)
        assert code == 2 and err.startswith("error ")

    def test_contract_exit_3(self, capsys, files):
        _, inst, state = files
        code, _, err = run(capsys, "dynamics", inst, state, "--scheduler", "exhaustive", "--max-steps", 0)
        assert code == 3 and err.startswith("error contract")

    def test_bad_scheduler(self, capsys, files):
        _, inst, state = files
        assert run(capsys, "dynamics", inst, state, "--scheduler", "greedy", "--max-steps", 5)[0] == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert __version__ in capsys.readouterr().out


class TestGenerators:
    def test_gen_random_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (a, b):
            assert run(capsys, "gen-random", "-n", 8, "-m", 3, "--graph", "cliques:4", "--seed", 11, "--out", path)[0] == 0
        assert a.read_bytes() == b.read_bytes()
        _, graph = parse_instance(a.read_text())
        assert len(graph.partition_classes()) == 2
        assert run(capsys, "gen-random", "-n", 8, "-m", 3)[1] == run(capsys, "gen-random", "-n", 8, "-m", 3)[1]

    def test_gen_cycle_pipeline(self, capsys, tmp_path):
        out = tmp_path / "cycle"
        assert run(capsys, "gen-cycle", "--out", out)[0] == 0
        instance, graph = parse_instance((out / "instance.txt").read_text())
        state = parse_state((out / "state.txt").read_text(), instance)
        schedule = parse_schedule((out / "schedule.txt").read_text())
        assert "D^1" in (out / "manifest.txt").read_text()
        c = CycleConstruction(instance, graph, state, schedule, player_names())
        cert = replay_and_certify(construction=c)
        assert cert.cycle_found and cert.period == 76

        code, text, _ = run(
            capsys, "dynamics", out / "instance.txt", out / "state.txt",
            "--scheduler", f"scripted:{out / 'schedule.txt'}", "--max-steps", 200, "--loop",
        )
        assert code == 0
        assert text.splitlines()[-1] == "outcome cycle first_repeat_index=0 period=76"

    def test_dynamics_trace_out(self, capsys, files):
        tmp, inst, _ = files
        start = tmp / "s0.txt"
        start.write_text("state 0 0 0\n")
        trace = tmp / "t.txt"
        code, out, _ = run(capsys, "dynamics", inst, start, "--scheduler", "random:5", "--max-steps", 50, "--trace-out", trace)
        assert code == 0 and out.strip() == "outcome converged_CE"
        assert trace.read_text().splitlines()[0].startswith("step 1 move")


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "considerate.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
