"""Command-line front door: solve, verify, generate and benchmark.

Text formats (whitespace-separated decimal integers):

* zero-sum instance: ``n`` then 2n-1 values;
* subset-sum instance: ``p k`` then p-1 nonzero values;
* solution: count, then the 1-based indices in increasing order, then the
  checksum (sum of the chosen values mod n).

Exit codes: 0 ok, 1 invalid solution (verify), 2 malformed input,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
import time

from .egz import solve_general
from .errors import Infeasible, InputError, InvariantViolation
from .modmath import next_prime
from .solver import P_MIN, solve_lemma2

__all__ = ["main"]

_ALGORITHMS = ("dp", "nlogn", "practical", "theoretical", "auto")
_TOKEN = re.compile(r"\S+")


class _TokenReader:
    """Integer token stream with line/column diagnostics."""

    def __init__(self, text: str):
        self.tokens: list[tuple[str, int, int]] = []
        last_line, last_col = 1, 1
        for lineno, line in enumerate(text.splitlines(), 1):
            for m in _TOKEN.finditer(line):
                self.tokens.append((m.group(), lineno, m.start() + 1))
                last_line, last_col = lineno, m.end() + 1
        self.end = (last_line, last_col)
        self.pos = 0

    def take_int(self, what: str) -> int:
        if self.pos >= len(self.tokens):
            line, col = self.end
            raise InputError(f"line {line}, column {col}: missing {what}")
        tok, line, col = self.tokens[self.pos]
        self.pos += 1
        try:
            return int(tok)
        except ValueError:
            raise InputError(
                f"line {line}, column {col}: expected integer for {what}, got {tok!r}"
            ) from None

    def expect_end(self) -> None:
        if self.pos < len(self.tokens):
            tok, line, col = self.tokens[self.pos]
            raise InputError(f"line {line}, column {col}: unexpected token {tok!r}")


def _read_instance(reader: _TokenReader, mode: str):
    """Returns (n, values, target); target is 0 in zero-sum mode."""
    if mode == "egz":
        n = reader.take_int("n")
        if n < 1:
            raise InputError(f"n must be >= 1, got {n}")
        values = [reader.take_int(f"value {i + 1}") for i in range(2 * n - 1)]
        return n, values, 0
    p = reader.take_int("p")
    if p < 2:
        raise InputError(f"p must be >= 2, got {p}")
    k = reader.take_int("k")
    values = [reader.take_int(f"value {i + 1}") for i in range(p - 1)]
    return p, values, k % p


def _resolve_algorithm(algorithm: str, n: int, allow_theoretical: bool) -> str:
    if algorithm != "auto":
        return algorithm
    if n < 64:
        return "dp"
    if n >= P_MIN and allow_theoretical:
        return "theoretical"
    return "practical"


def _solve_instance(mode, n, values, target, algorithm) -> list[int]:
    """Returns 0-based indices."""
    if mode == "egz":
        return solve_general(n, values, lemma_algorithm=algorithm)
    res = solve_lemma2(n, values, target, algorithm)
    return res.indices


def _format_solution(n: int, values, indices) -> str:
    total = sum(values[i] for i in indices) % n
    lines = [str(len(indices))]
    lines.append(" ".join(str(i + 1) for i in sorted(indices)))
    lines.append(str(total))
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    reader = _TokenReader(sys.stdin.read())
    n, values, target = _read_instance(reader, args.mode)
    reader.expect_end()
    algorithm = _resolve_algorithm(args.algorithm, n, args.allow_theoretical)
    indices = _solve_instance(args.mode, n, values, target, algorithm)
    sys.stdout.write(_format_solution(n, values, indices))
    return 0


def _check_solution(mode, n, values, target, count, indices, checksum) -> str | None:
    if count != len(indices):
        return "count mismatch"
    if len(set(indices)) != len(indices):
        return "duplicate index"
    for i in indices:
        if not 1 <= i <= len(values):
            return "index out of range"
    if mode == "egz" and count != n:
        return "wrong subset size"
    total = sum(values[i - 1] for i in indices) % n
    if total != target % n or checksum != target % n:
        return "sum mismatch"
    return None


def cmd_verify(args) -> int:
    reader = _TokenReader(sys.stdin.read())
    n, values, target = _read_instance(reader, args.mode)
    count = reader.take_int("solution count")
    indices = [reader.take_int(f"index {i + 1}") for i in range(count)]
    checksum = reader.take_int("checksum")
    reader.expect_end()
    reason = _check_solution(args.mode, n, values, target, count, indices, checksum)
    if reason is not None:
        print(reason)
        return 1
    return 0


def _gen_instance(mode: str, n: int, seed: int, distribution: str):
    """Deterministic instance for (mode, n, seed, distribution)."""
    dist, _, param = distribution.partition(":")
    rng = random.Random(f"{mode}:{n}:{seed}:{distribution}")
    if mode == "lemma":
        p = next_prime(max(n, 2))
        count, lo, size = p - 1, 1, p
    else:
        p = n
        count, lo, size = 2 * n - 1, 0, n
    if dist == "uniform":
        values = [rng.randrange(lo, size) for _ in range(count)]
    elif dist == "few-distinct":
        if not param.isdigit() or int(param) < 1:
            raise InputError(f"few-distinct needs a positive count, got {param!r}")
        d = min(int(param), size - lo)
        pool = rng.sample(range(lo, size), d)
        values = [rng.choice(pool) for _ in range(count)]
    elif dist == "adversarial-equal":
        v = rng.randrange(lo, size)
        values = [v] * (p - 1) + [rng.randrange(lo, size) for _ in range(count - (p - 1))]
        rng.shuffle(values)
    else:
        raise InputError(f"unknown distribution {distribution!r}")
    target = rng.randrange(p) if mode == "lemma" else 0
    return p, values, target


def cmd_gen(args) -> int:
    mode = args.mode
    p, values, target = _gen_instance(mode, args.n, args.seed, args.distribution)
    out = sys.stdout
    if mode == "lemma":
        out.write(f"{p} {target}\n")
    else:
        out.write(f"{p}\n")
    out.write(" ".join(map(str, values)) + "\n")
    return 0


def cmd_bench(args) -> int:
    sizes = sorted(_parse_int_list(args.sizes, "--sizes"))
    algorithms = args.algorithms.split(",")
    for a in algorithms:
        if a not in _ALGORITHMS or a == "auto":
            raise InputError(f"bench cannot run algorithm {a!r}")
    seeds = _parse_int_list(args.seeds, "--seeds")
    out = sys.stdout
    out.write("n,algorithm,seed,rep,micros,verified\n")
    for size in sizes:
        p = next_prime(max(size, 2))
        for algorithm in algorithms:
            for seed in seeds:
                _, values, target = _gen_instance("lemma", p, seed, "uniform")
                for rep in range(args.reps):
                    t0 = time.perf_counter()
                    indices = _solve_instance("lemma", p, values, target, algorithm)
                    micros = int((time.perf_counter() - t0) * 1e6)
                    total = sum(values[i] for i in indices) % p
                    ok = total == target and len(set(indices)) == len(indices)
                    out.write(
                        f"{p},{algorithm},{seed},{rep},{micros},{str(ok).lower()}\n"
                    )
    return 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError:
        raise InputError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egzsolver",
        description="Constructive zero-sum and subset-sum solvers over Z_n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="read an instance on stdin, print a solution")
    solve.add_argument("--mode", choices=("egz", "lemma"), required=True)
    solve.add_argument("--algorithm", choices=_ALGORITHMS, default="auto")
    solve.add_argument("--allow-theoretical", action="store_true",
                       help="let auto pick the growth pipeline on huge instances")
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="read instance + solution, exit 0 iff valid")
    verify.add_argument("--mode", choices=("egz", "lemma"), required=True)
    verify.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="write a deterministic instance to stdout")
    gen.add_argument("--mode", choices=("egz", "lemma"), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--distribution", default="uniform",
                     help="uniform | few-distinct:d | adversarial-equal")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="time algorithms over generated instances (CSV)")
    bench.add_argument("--sizes", required=True, help="comma-separated; rounded up to primes")
    bench.add_argument("--algorithms", required=True, help="comma-separated algorithm names")
    bench.add_argument("--seeds", default="0", help="comma-separated seeds")
    bench.add_argument("--reps", type=int, default=1)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, Infeasible) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
