from __future__ import annotations

import subprocess
import sys

import pytest

from levelgray.bits import from_str
from levelgray.cli import main
from levelgray.modes import InvalidParameters, classify, resolve

CASES = [
    ["--mode", "reflected", "-n", "4"],
    ["--mode", "level", "-n", "6", "-k", "2"],
    ["--mode", "trim", "-n", "7", "-k", "1", "-l", "5"],
    ["--mode", "saturating", "-n", "6", "-k", "2", "-l", "3"],
    ["--mode", "saturating", "-n", "7", "-k", "4", "-l", "5"],
    ["--mode", "saturating", "-n", "9", "-k", "1", "-l", "4"],
    ["--mode", "saturating", "-n", "8", "-k", "2", "-l", "4"],
    ["--mode", "saturating", "-n", "6", "-k", "0", "-l", "6"],
    ["--mode", "tight", "-n", "5", "-k", "1", "-l", "3"],
    ["--mode", "tight", "-n", "7", "-k", "2", "-l", "3"],
    ["--mode", "tight", "-n", "9", "-k", "1", "-l", "4"],
    ["--mode", "tight", "-n", "6", "-k", "0", "-l", "3"],
    ["--mode", "long", "-k", "2", "-c", "1"],
    ["--mode", "long", "-k", "3", "-c", "0"],
]


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_reflected_bits(capsys):
    rc, out, _ = run(capsys, "generate", "--mode", "reflected", "-n", "2", "--format", "bits")
    assert rc == 0 and out.split() == ["00", "10", "11", "01"]


def test_level_first_record(capsys):
    rc, out, _ = run(capsys, "generate", "--mode", "level", "-n", "5", "-k", "2", "--format", "bits", "--limit", "3")
    lines = out.split()
    assert rc == 0 and len(lines) == 3 and lines[0] == "11000"


def test_saturating_flips_line_count(capsys):
    rc, out, _ = run(capsys, "generate", "--mode", "saturating", "-n", "6", "-k", "2", "-l", "3", "--format", "flips")
    assert rc == 0 and len(out.splitlines()) == 30


def test_ints_format(capsys):
    rc, out, _ = run(capsys, "generate", "--mode", "reflected", "-n", "2", "--format", "ints")
    assert out.split() == ["0", "1", "3", "2"]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: "-".join(a[1:]))
def test_flips_replay_to_bits(capsys, argv):
    _, bits, _ = run(capsys, "generate", *argv, "--format", "bits")
    _, flips, _ = run(capsys, "generate", *argv, "--format", "flips")
    vs = [from_str(s) for s in bits.split()]
    v = vs[0]
    replayed = [v]
    for line in flips.splitlines():
        for tok in line.split():
            q = int(tok[1:])
            assert (tok[0] == "+") == (not (v >> (q - 1)) & 1)
            v ^= 1 << (q - 1)
        replayed.append(v)
    # one period: the last flip line closes the cycle
    assert replayed[-1] == replayed[0]
    assert replayed[:-1] == vs


@pytest.mark.parametrize("argv", CASES, ids=lambda a: "-".join(a[1:]))
def test_verify_accepts_every_mode(capsys, argv):
    rc, out, err = run(capsys, "verify", *argv)
    assert rc == 0 and out == "" and "VALID" in err


def test_verify_tight_example(capsys):
    rc, _, err = run(capsys, "verify", "--mode", "tight", "-n", "5", "-k", "1", "-l", "3", "--kv")
    kv = dict(line.split("=", 1) for line in err.splitlines())
    assert rc == 0 and kv["td"] == "30"


def test_verify_long_reports_fraction(capsys):
    rc, _, err = run(capsys, "verify", "--mode", "long", "-k", "2", "-c", "1", "--kv")
    kv = dict(line.split("=", 1) for line in err.splitlines())
    assert rc == 0 and float(kv["fraction"]) <= 0.25


def test_verify_invalid_result_exit_one(capsys, monkeypatch):
    import levelgray.cli as cli
    real = cli.check_sequence

    def broken(start, steps, *a, **kw):
        return real(start, list(steps)[:-1], *a, **kw)

    monkeypatch.setattr(cli, "check_sequence", broken)
    rc, _, err = run(capsys, "verify", "--mode", "trim", "-n", "5", "-k", "1", "-l", "3")
    assert rc == 1 and "INVALID" in err


def test_stats_examples(capsys):
    rc, out, _ = run(capsys, "stats", "-n", "9", "-k", "1", "-l", "4")
    assert rc == 0 and "v=255" in out and "delta=69" in out and "case=Thm5(iii)" in out
    rc, out, _ = run(capsys, "stats", "-n", "11", "-k", "0", "-l", "11")
    assert "v=2048" in out and "delta=0" in out and "case=Gamma_n" in out


def test_bench_trim(capsys):
    rc, out, _ = run(capsys, "bench", "--mode", "trim", "-n", "30", "-k", "5", "-l", "25", "--limit", "20000")
    fields = dict(tok.split("=") for tok in out.split())
    assert rc == 0 and int(fields["max_ops_per_visit"]) <= 64


def test_bench_saturating(capsys):
    rc, out, _ = run(capsys, "bench", "--mode", "saturating", "-n", "10", "-k", "4")
    fields = dict(tok.split("=") for tok in out.split())
    assert rc == 0 and float(fields["amortized_ops_per_visit"]) <= 128


@pytest.mark.parametrize("argv", [
    ["generate", "--mode", "saturating", "-n", "6", "-k", "2", "-l", "2"],
    ["generate", "--mode", "saturating", "-n", "6", "-k", "5", "-l", "6"],
    ["generate", "--mode", "trim", "-n", "6", "-k", "2", "-l", "3"],
    ["generate", "--mode", "tight", "-n", "6", "-k", "4", "-l", "2"],
    ["generate", "--mode", "level", "-n", "6", "-k", "0"],
    ["generate", "--mode", "long", "-k", "2", "-c", "3"],
    ["generate", "--mode", "long", "-k", "2"],
    ["generate", "--mode", "reflected"],
    ["generate", "--mode", "reflected", "-n", "3", "--limit", "-1"],
    ["stats", "-n", "4", "-k", "3", "-l", "1"],
])
def test_invalid_parameters_exit_two(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and "invalid parameters" in err


def test_invalid_message_names_case(capsys):
    _, _, err = run(capsys, "generate", "--mode", "saturating", "-n", "6", "-k", "5", "-l", "6")
    assert "Thm3" in err


@pytest.mark.parametrize("cmd", ["generate", "verify"])
def test_conjecture_gated_exit_three(capsys, cmd):
    rc, _, err = run(capsys, cmd, "--mode", "saturating", "-n", "13", "-k", "3", "-l", "10")
    assert rc == 3 and "Thm5(iv)" in err
    rc, _, err = run(capsys, cmd, "--mode", "tight", "-n", "13", "-k", "3", "-l", "10")
    assert rc == 3 and "Thm6(iv)" in err


def test_stats_gated_exit_three(capsys):
    rc, out, _ = run(capsys, "stats", "-n", "13", "-k", "3", "-l", "10")
    assert rc == 3 and "case=Thm5(iv)" in out


def test_console_script_subprocess(tmp_path):
    env_cache = tmp_path / "c.txt"
    p = subprocess.run([sys.executable, "-m", "levelgray.cli", "verify", "--mode", "saturating",
                        "-n", "13", "-k", "3", "-l", "10"], capture_output=True, text=True)
    assert p.returncode == 3
    p = subprocess.run([sys.executable, "-m", "levelgray.cli", "generate", "--mode", "saturating",
                        "-n", "7", "-k", "3", "-l", "4", "--cache", str(env_cache), "--limit", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and env_cache.exists()


def test_classify_matrix():
    assert classify("saturating", 9, 0, 3) == "Thm5(i)"
    assert classify("saturating", 9, 1, 5) == "Thm5(ii)"
    assert classify("saturating", 9, 5, 8) == "Thm5(iii)"
    assert classify("tight", 9, 2, 3) == "Thm6(iiia)"
    assert classify("tight", 9, 1, 4) == "Thm6(iiib)"
    assert classify("tight", 9, 3, 3) == "Thm2"
    with pytest.raises(InvalidParameters):
        classify("trim", 9, 1, 4)


def test_plan_period_matches_stream():
    plan = resolve("trim", n=8, k=2, l=6)
    start, steps = plan.stream()
    v = start
    for i, s in enumerate(steps, 1):
        for q in s:
            v ^= 1 << (q - 1)
        if v == start:
            break
    assert i == plan.period
