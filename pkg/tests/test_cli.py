"""End-to-end runs of the command-line front end via run()."""

import json
import shutil
import subprocess
import textwrap

import pytest

from algebroids.cli import run


def write_scenario(tmp_path, text, name="case.scn"):
    path = tmp_path / name
    path.write_text(textwrap.dedent(text), encoding="utf-8")
    return str(path)


COUNTEREXAMPLE = """\
    [chart]
    coords = xt1, xt2, xt3

    [frame]
    sections = t1, t2, t3

    [anchor]
    rho = [0, 0, 0]
          [0, 0, 0]
          [0, 0, 0]

    [structure]
    C[1,1,2] = 1
    C[2,1,3] = 1
"""


# ------------------------------------------------------------------- usage


def test_help_exits_zero(capsys):
    assert run(["--help"]) == (0, None)
    assert "usage" in capsys.readouterr().out


def test_unknown_command_exits_two(capsys):
    assert run(["bogus"]) == (2, None)
    assert run([]) == (2, None)


def test_missing_scenario_file_exits_three(capsys):
    status, report = run(["check", "--scenario", "/no/such/file.scn"])
    assert status == 3 and report is None
    assert capsys.readouterr().err.startswith("error:")


# ------------------------------------------------------------ verify-paper


def test_verify_paper_text(capsys):
    status, report = run(["verify-paper"])
    assert status == 0
    assert report.all_passed
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "10/10 checks passed"
    assert sum(line.startswith("PASS ") for line in lines) == 10


def test_verify_paper_json(capsys):
    status, _ = run(["verify-paper", "--json"])
    assert status == 0
    payload = json.loads(capsys.readouterr().out)
    assert [set(entry) for entry in payload] == [{"check", "pass", "witness"}] * 10
    assert all(entry["pass"] for entry in payload)


# ------------------------------------------------------------------- check


def test_check_bundled_model(capsys):
    status, report = run(["check"])
    assert status == 0
    out = capsys.readouterr().out
    assert "PASS antisymmetry" in out
    assert "PASS jacobi" in out
    assert "PASS leibniz" in out
    assert "PASS anchor-morphism" in out
    assert out.splitlines()[-1] == "4/4 checks passed"


def test_check_seed_override(capsys):
    assert run(["check", "--seed", "99"])[0] == 0
    capsys.readouterr()


def test_check_reports_broken_jacobi(tmp_path, capsys):
    path = write_scenario(tmp_path, COUNTEREXAMPLE)
    status, report = run(["check", "--scenario", path])
    assert status == 1
    out = capsys.readouterr().out
    assert "FAIL jacobi" in out
    assert "-t2" in out


def test_check_needs_a_model(tmp_path, capsys):
    path = write_scenario(tmp_path, "[chart]\ncoords = a\n")
    assert run(["check", "--scenario", path])[0] == 3
    assert "no frame and anchor" in capsys.readouterr().err


def test_check_report_to_file(tmp_path, capsys):
    out_path = tmp_path / "report.txt"
    status, _ = run(["check", "--out", str(out_path)])
    assert status == 0
    assert capsys.readouterr().out == ""
    assert out_path.read_text().splitlines()[-1] == "4/4 checks passed"


# ----------------------------------------------------------------- compose


def test_compose_bundled_pairs(capsys):
    status, report = run(["compose"])
    assert status == 0
    out = capsys.readouterr().out
    for name in (
        "compose anchor*R",
        "compose T[s_O]*anchor",
        "compose T[s_O]*T[s_O]",
        "compose R*anchor",
        "compose R*T[s_O]",
    ):
        assert "PASS %s" % name in out
    assert out.splitlines()[-1] == "5/5 checks passed"


# -------------------------------------------------------------------- pinv


def test_pinv_prints_matrix_and_verdict(capsys):
    status, report = run(["pinv", "--matrix", "R"])
    assert status == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0] == "[(-xt1)/(xt1^2 + 2), (xt1)/(xt1^2 + 2), (2)/(xt1^2 + 2)]"
    assert (
        lines[1]
        == "[(1)/(xt1^2 + 2), (xt1^2 + 1)/(xt1^2 + 2), (xt1)/(xt1^2 + 2)]"
    )
    assert "PASS left-inverse R" in captured.out
    assert "note: rank may drop where xt1^2 + 2 = 0" in captured.err


def test_pinv_json_holds_matrix_in_witness(capsys):
    status, _ = run(["pinv", "--matrix", "R", "--json"])
    assert status == 0
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert len(payload) == 1
    assert payload[0]["check"] == "left-inverse R"
    assert "(xt1^2 + 2)" in payload[0]["witness"]


def test_pinv_unknown_matrix_name(capsys):
    status, _ = run(["pinv", "--matrix", "Q"])
    assert status == 3
    assert "no matrix named 'Q' (have: R)" in capsys.readouterr().err


def test_pinv_singular_matrix_fails(tmp_path, capsys):
    path = write_scenario(
        tmp_path,
        """\
        [chart]
        coords = a, b

        [matrix S]
        rows = [1, 0]
               [2, 0]
        """,
    )
    status, report = run(["pinv", "--scenario", path, "--matrix", "S"])
    assert status == 1
    assert "FAIL left-inverse S: no generic left inverse" in capsys.readouterr().out


# ------------------------------------------------------------ trajectories


def test_simulate_csv_on_stdout(capsys):
    status, _ = run(["simulate"])
    assert status == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0] == "t,xt1,xt2,xt3,y1,y2,y3,E,cost"
    assert lines[1] == "0,0,0,0,1,0,0,0.5,0"
    assert len(lines) == 1002
    # the report must not pollute the CSV stream
    assert "PASS simulate" in captured.err


def test_simulate_csv_to_file(tmp_path, capsys):
    out_path = tmp_path / "run.csv"
    status, report = run(["simulate", "--out", str(out_path)])
    assert status == 0
    captured = capsys.readouterr()
    assert "PASS simulate" in captured.out
    assert "final cost 0.5" in report.results[0].witness
    lines = out_path.read_text().splitlines()
    assert lines[0] == "t,xt1,xt2,xt3,y1,y2,y3,E,cost"
    assert lines[-1].startswith("1,")


def test_simulate_needs_signals(tmp_path, capsys):
    path = write_scenario(
        tmp_path,
        """\
        [chart]
        coords = a

        [control]
        M = [1]
        inputs = u1
        lagrangian = u1^2

        [simulate]
        x0 = 0
        horizon = 1
        dt = 1/10
        """,
    )
    assert run(["simulate", "--scenario", path])[0] == 3
    assert "lacks a [controls] block" in capsys.readouterr().err


def test_euler_lagrange_endpoint(tmp_path, capsys):
    path = write_scenario(
        tmp_path,
        """\
        [chart]
        coords = xt1, xt2, xt3

        [frame]
        sections = t1, t2

        [anchor]
        rho = [1, 0, 0]
              [xt1, xt2, 1]

        [structure]
        C[1,1,2] = 1

        [euler_lagrange]
        lagrangian = 1/2*(z1^2 + z2^2)
        velocities = z1, z2
        x0 = 1, 1, 1
        z0 = 1, 0
        horizon = 1
        dt = 1/100
        """,
    )
    status, report = run(["euler-lagrange", "--scenario", path])
    assert status == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0] == "t,xt1,xt2,xt3,z1,z2,E,cost"
    assert len(lines) == 102
    last = [float(v) for v in lines[-1].split(",")]
    import math

    assert last[0] == 1.0
    assert abs(last[1] - math.e) < 1e-8
    assert abs(last[2] - math.cosh(1)) < 1e-8
    assert abs(last[5] - math.tanh(1)) < 1e-8
    assert abs(last[6] - 0.5) < 1e-9
    assert "PASS euler-lagrange" in captured.err
    assert "energy drift" in report.results[0].witness


def test_euler_lagrange_needs_block(tmp_path, capsys):
    path = write_scenario(tmp_path, "[chart]\ncoords = a\n")
    assert run(["euler-lagrange", "--scenario", path])[0] == 3
    assert "lacks an [euler_lagrange] block" in capsys.readouterr().err


# --------------------------------------------------------------- packaging


def test_console_script_is_installed():
    exe = shutil.which("algebroids")
    if exe is None:
        pytest.skip("console script not on PATH")
    done = subprocess.run(
        [exe, "verify-paper"], capture_output=True, text=True, timeout=60
    )
    assert done.returncode == 0
    assert done.stdout.splitlines()[-1] == "10/10 checks passed"
