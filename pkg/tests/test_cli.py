from __future__ import annotations

import subprocess
import sys
from importlib import resources


from semiring_dh.cli import main, run, build_parser, config_from_args
from semiring_dh.protocol import encode_instance, random_instance
from semiring_dh.rng import stream
from semiring_dh.semiring import builtin

DATA = resources.files("semiring_dh").joinpath("data")


def cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_landau(capsys):
    assert cli(capsys, "landau", "20") == (0, "g=420 partition=1+3+4+5+7\n", "")


def test_semiring_simple(capsys):
    assert cli(capsys, "semiring", "simple", "--builtin", "s6")[1] == "simple=true\n"
    assert cli(capsys, "semiring", "simple", "--builtin", "zmod4")[1] == "simple=false\n"


def test_semiring_validate(capsys, tmp_path):
    status, out, _ = cli(capsys, "semiring", "validate", "--builtin", "s20", "--format", "kv")
    assert status == 0 and out == "semiring=s20 order=20 valid=true violations=0\n"
    bad = tmp_path / "bad.semiring"
    bad.write_text(DATA.joinpath("s6.semiring").read_text().replace("2 1 2 1 2 5", "2 1 2 0 2 5", 1))
    status, out, _ = cli(capsys, "semiring", "validate", "--semiring-file", str(bad))
    assert status == 1 and "valid: false" in out and "violation" in out


def test_order(capsys):
    path = str(DATA.joinpath("paper_M1.matrix"))
    assert cli(capsys, "order", path, "--cap", "421")[1] == "ord > 421\n"
    status, out, _ = cli(capsys, "order", "--matrix-file", path, "--cap", "1000", "--format", "kv")
    assert out == "per=420 pr=33 ord=453\n"


def test_keyexchange_demo_reference(capsys):
    status, out, _ = cli(capsys, "keyexchange", "demo", "--paper", "--seed", "1")
    assert status == 0
    assert out.splitlines()[-1] == "agreement=true"
    assert out.splitlines()[0] == "transcript"


def test_keyexchange_demo_custom(capsys):
    status, out, _ = cli(capsys, "keyexchange", "demo", "--semiring", "s20", "--n", "5", "--seed", "3",
                         "--deg", "7", "--format", "kv")
    assert status == 0 and out.startswith("semiring=s20 n=5 degree_bound=7 seed=3 ")
    assert out.endswith("agreement=true\n")


def test_keyexchange_bench(capsys):
    status, out, _ = cli(capsys, "keyexchange", "bench", "--sizes", "4,8", "--degrees", "3", "--repeat", "1")
    lines = out.splitlines()
    assert status == 0 and len(lines) == 4
    assert all(line.startswith("op=") for line in lines)


def test_attacks(capsys, tmp_path):
    status, out, _ = cli(capsys, "attack", "linear", "--p", "5", "--n", "3", "--trials", "10", "--format", "kv")
    assert status == 0 and "recovered=10" in out
    status, out, _ = cli(capsys, "attack", "cyclic", "--p", "101", "--g", "2", "--k", "53", "--format", "kv")
    assert status == 0 and " k=53 " in out
    status, out, _ = cli(capsys, "attack", "bsgs", "--trials", "5", "--format", "kv")
    assert status == 0 and "verified=5" in out
    inst = random_instance(builtin("boolean_b2"), 2, stream(1, "cli"), degree_bound=2)
    f = tmp_path / "b2.instance"
    f.write_text(encode_instance(inst))
    status, out, _ = cli(capsys, "attack", "brute", "--instance", str(f), "--deg", "2", "--budget", "1000",
                         "--format", "kv")
    assert status == 0 and out.startswith("found=true")
    status, out, _ = cli(capsys, "attack", "brute", "--deg", "3", "--budget", "0", "--format", "kv")
    assert status == 1 and out.startswith("found=false")
    status, out, _ = cli(capsys, "attack", "cyclic", "--instance", str(f), "--k", "3", "--format", "kv")
    assert status == 0 and out.startswith("found=true")


def test_orbit_estimate(capsys):
    status, out, _ = cli(capsys, "orbit-estimate", "--samples", "2000", "--seed", "5", "--format", "kv")
    assert status == 0 and out.startswith("samples=2000 distinct=")
    again = cli(capsys, "orbit-estimate", "--samples", "2000", "--seed", "5", "--format", "kv")[1]
    assert again == out


def test_usage_errors_exit_two(capsys):
    assert cli(capsys, "landau")[0] == 2
    assert cli(capsys, "landau", "-3")[0] == 2
    assert cli(capsys, "bogus")[0] == 2
    assert cli(capsys, "keyexchange", "demo", "--paper", "--semiring", "s6")[0] == 2


def test_operational_errors_exit_one(capsys, tmp_path):
    status, _, err = cli(capsys, "semiring", "simple", "--builtin", "nope")
    assert status == 1 and err.startswith("error:")
    status, out, _ = cli(capsys, "order", str(tmp_path / "missing.matrix"), "--format", "kv")
    assert status == 1 and out.startswith("status=error error=")
    status, _, _ = cli(capsys, "landau", "5000")
    assert status == 1


def test_run_is_deterministic():
    ns = build_parser().parse_args(["keyexchange", "demo", "--paper", "--seed", "8"])
    assert run(config_from_args(ns)) == run(config_from_args(ns))


def test_console_entry_point_module():
    out = subprocess.run([sys.executable, "-m", "semiring_dh.cli", "landau", "7"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "g=12 partition=3+4\n"
