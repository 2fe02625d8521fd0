import io
import sys

import pytest

from egzsolver.cli import main


def run_cli(args, stdin_text=""):
    old_in, old_out, old_err = sys.stdin, sys.stdout, sys.stderr
    sys.stdin = io.StringIO(stdin_text)
    sys.stdout = io.StringIO()
    sys.stderr = io.StringIO()
    try:
        code = main(args)
        return code, sys.stdout.getvalue(), sys.stderr.getvalue()
    finally:
        sys.stdin, sys.stdout, sys.stderr = old_in, old_out, old_err


def test_solve_lemma_all_ones():
    code, out, _ = run_cli(["solve", "--mode", "lemma", "--algorithm", "practical"],
                           "5 3\n1 1 1 1\n")
    assert code == 0
    assert out == "3\n1 2 3\n3\n"


def test_solve_lemma_empty_subset_for_zero():
    code, out, _ = run_cli(["solve", "--mode", "lemma", "--algorithm", "practical"],
                           "5 0\n1 2 3 4\n")
    assert code == 0
    assert out == "0\n\n0\n"


def test_solve_egz_zero_run():
    code, out, _ = run_cli(["solve", "--mode", "egz", "--algorithm", "auto"],
                           "3\n0 0 0 1 2\n")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "3" and lines[2] == "0"
    assert lines[1] == "1 2 3"


def test_solve_rejects_malformed_input():
    code, out, err = run_cli(["solve", "--mode", "lemma"], "5 x\n1 1 1 1\n")
    assert code == 2
    assert "line 1, column 3" in err
    code, _, err = run_cli(["solve", "--mode", "lemma"], "7 0\n1 2 3\n")
    assert code == 2
    assert "missing" in err
    code, _, err = run_cli(["solve", "--mode", "lemma"], "5 0\n1 1 1 1 9\n")
    assert code == 2
    assert "unexpected token" in err


def test_solve_rejects_zero_lemma_value():
    code, _, err = run_cli(["solve", "--mode", "lemma"], "5 0\n1 0 1 1\n")
    assert code == 2
    assert "outside" in err


def test_verify_round_trip_and_failures():
    instance = "7 4\n3 3 5 5 5 6\n"
    code, out, _ = run_cli(["solve", "--mode", "lemma", "--algorithm", "practical"],
                           instance)
    assert code == 0
    code, _, _ = run_cli(["verify", "--mode", "lemma"], instance + out)
    assert code == 0
    # duplicate index
    code, out2, _ = run_cli(["verify", "--mode", "lemma"], "7 6\n3 3 5 5 5 6\n2\n1 1\n6\n")
    assert code == 1
    assert "duplicate index" in out2
    # wrong checksum
    code, out2, _ = run_cli(["verify", "--mode", "lemma"], "7 1\n3 3 5 5 5 6\n2\n1 4\n6\n")
    assert code == 1
    assert "sum mismatch" in out2
    # wrong count in egz mode
    code, out2, _ = run_cli(["verify", "--mode", "egz"], "3\n0 0 0 1 2\n2\n1 2\n0\n")
    assert code == 1
    assert "wrong subset size" in out2


def test_gen_is_deterministic_and_valid():
    a = run_cli(["gen", "--mode", "lemma", "--n", "100", "--seed", "5"])
    b = run_cli(["gen", "--mode", "lemma", "--n", "100", "--seed", "5"])
    assert a == b
    code, out, _ = a
    assert code == 0
    p, k = map(int, out.splitlines()[0].split())
    assert p == 101 and 0 <= k < p
    values = list(map(int, out.splitlines()[1].split()))
    assert len(values) == p - 1
    assert all(1 <= v < p for v in values)


def test_gen_distributions():
    code, out, _ = run_cli(["gen", "--mode", "lemma", "--n", "101", "--seed", "1",
                            "--distribution", "few-distinct:5"])
    assert code == 0
    values = list(map(int, out.splitlines()[1].split()))
    assert len(set(values)) <= 5
    code, out, _ = run_cli(["gen", "--mode", "lemma", "--n", "31", "--seed", "1",
                            "--distribution", "adversarial-equal"])
    assert code == 0
    values = list(map(int, out.splitlines()[1].split()))
    assert len(set(values)) == 1  # p-1 equal values fill the whole instance
    code, _, err = run_cli(["gen", "--mode", "egz", "--n", "10", "--seed", "1",
                            "--distribution", "nosuch"])
    assert code == 2


def test_round_trip_matrix():
    for mode in ("egz", "lemma"):
        for algorithm in ("dp", "nlogn", "practical"):
            for n in (10, 60, 101):
                for seed in range(3):
                    code, inst, _ = run_cli(["gen", "--mode", mode, "--n", str(n),
                                             "--seed", str(seed)])
                    assert code == 0
                    code, sol, err = run_cli(["solve", "--mode", mode,
                                              "--algorithm", algorithm], inst)
                    assert code == 0, err
                    code, out, _ = run_cli(["verify", "--mode", mode], inst + sol)
                    assert code == 0, (mode, algorithm, n, seed, out)


def test_solve_deterministic():
    inst = run_cli(["gen", "--mode", "lemma", "--n", "500", "--seed", "9"])[1]
    a = run_cli(["solve", "--mode", "lemma", "--algorithm", "practical"], inst)
    b = run_cli(["solve", "--mode", "lemma", "--algorithm", "practical"], inst)
    assert a == b


def test_bench_csv_shape():
    code, out, _ = run_cli(["bench", "--sizes", "97,128", "--algorithms",
                            "dp,practical", "--seeds", "0,1", "--reps", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,algorithm,seed,rep,micros,verified"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 2 * 2 * 2 * 2
    assert {r[0] for r in rows} == {"97", "131"}
    assert all(r[5] == "true" for r in rows)
    assert all(int(r[4]) >= 0 for r in rows)
    # deterministic ordering: sizes ascending, algorithms as given
    assert [r[0] for r in rows] == ["97"] * 8 + ["131"] * 8


def test_bench_rejects_auto():
    code, _, err = run_cli(["bench", "--sizes", "97", "--algorithms", "auto"])
    assert code == 2
