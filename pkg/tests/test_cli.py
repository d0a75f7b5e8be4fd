import subprocess
import sys

import pytest

from cli_cases import CASES, FIXTURES, GOLDEN, argv_for, run_case
from uflim.cli import main


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = run_case(name)
    assert code == CASES[name][1], err
    assert out == (GOLDEN / f"{name}.out").read_bytes()
    if code in (2, 3) or name == "limit_broken":
        # diagnostics only; an axiom report (exit 1) is regular output
        assert err.startswith("uflim:") and not out


@pytest.mark.parametrize("name", sorted(CASES))
def test_rerun_is_byte_identical(name):
    assert run_case(name) == run_case(name)


def test_spec_examples():
    assert run_case("partitions_count")[1] == b"5\n"
    assert run_case("partitions_count_empty")[1] == b"1\n"
    assert run_case("bijection_3")[1] == b"3 ultrafilters, 3 threads, BIJECTION OK\n"
    assert run_case("bijection_1")[1] == b"1 ultrafilter, 1 thread, BIJECTION OK\n"
    assert run_case("bijection_0")[1] == b"0 ultrafilters, 0 threads, BIJECTION OK\n"
    assert run_case("limit_full")[1].endswith(b"\n3 threads\n")
    assert run_case("limit_bigg")[1] == b"0 threads\n"
    assert b"axiom 4 (contains a set or its complement): FAIL" in run_case("check_ground_only")[1]
    assert b"axiom 1 (empty set excluded): FAIL" in run_case("check_with_empty")[1]


def test_dot_fp3_shape():
    out = run_case("dot_fp3")[1].decode()
    assert out.count("[label=") == 5
    # the partition lattice on three points has six cover relations
    assert out.count("->") == 6


def test_seed_does_not_change_output(capsys):
    path = str(FIXTURES / "full3.json")
    main(["limit", path])
    a = capsys.readouterr().out
    main(["limit", "--seed", "17", path])
    assert capsys.readouterr().out == a


def test_force_overrides_guard(capsys):
    assert main(["partitions", "--count", "--guard", "2", str(FIXTURES / "ground3.json")]) == 3
    assert main(["partitions", "--count", "--guard", "2", "--force", str(FIXTURES / "ground3.json")]) == 0
    assert capsys.readouterr().out == "5\n"


def test_bad_flag_is_exit_2(capsys):
    assert main(["partitions", "--format", "xml"]) == 2
    assert main(["nonsense"]) == 2


def test_stdin_and_subprocess():
    data = (FIXTURES / "ground3.json").read_bytes()
    r = subprocess.run([sys.executable, "-m", "uflim.cli", "partitions", "--count"],
                       input=data, capture_output=True, check=False)
    assert r.returncode == 0 and r.stdout == b"5\n"
    r = subprocess.run([sys.executable, "-m", "uflim.cli"] + argv_for("dynamics_not_total"),
                       capture_output=True, check=False)
    assert r.returncode == 2 and b"'2'" in r.stderr and not r.stdout
