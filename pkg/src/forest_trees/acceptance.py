"""Acceptance checks, shared by ``forest-trees selftest`` and the test suite.

Each check raises CheckFailed on the first disagreement and otherwise
returns a one-line summary.  Budgets are wall-clock limits in seconds.
"""

from __future__ import annotations

import io
import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .closed_form import forest_numerator, tau_forest, tau_matching, tau_moon, tau_tree
from .forest import ForestInstance, enumerate_forests, random_forest, validate
from .identities import IDS, evaluate_identity, run_suite, sample_degenerate_l21
from .kirchhoff import count_forced_trees, tau_kirchhoff
from .tripartite import check_conjecture, scan_conjecture, shapes, worker_count
from .weighted import (
    FactoredWeights,
    WeightedCompleteGraph,
    contract_forest,
    tau_alt_recursion,
    tau_factored,
    tau_inclusion_exclusion,
)

# Every host K_{m,n} with 1 <= m, n <= KIRCHHOFF_MAX gets FORESTS_PER_HOST seeded forests.
KIRCHHOFF_MAX = 30
FORESTS_PER_HOST = 200


class CheckFailed(AssertionError):
    pass


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


@dataclass(frozen=True)
class Check:
    name: str
    title: str
    run: Callable[[], str]
    budget: float | None = None


def _small_bipartite_hosts():
    return [(m, n) for m in range(1, 6) for n in range(m, 6) if m + n <= 6]


def check_main_vs_enumeration() -> str:
    count = 0
    for m, n in _small_bipartite_hosts():
        for forest in enumerate_forests((m, n)):
            got = tau_forest(m, n, validate(forest))
            want = count_forced_trees(forest)
            _expect(got == want, f"K_{m},{n} forest {forest.edges}: formula {got} != enumeration {want}")
            count += 1
    return f"{count} forests over {len(_small_bipartite_hosts())} hosts agree"


def _kirchhoff_hosts():
    return [(m, n) for m in range(1, KIRCHHOFF_MAX + 1) for n in range(1, KIRCHHOFF_MAX + 1)]


def _host_forests(m, n):
    for trial in range(FORESTS_PER_HOST):
        rng = random.Random(f"kirchhoff:{m}:{n}:{trial}")
        yield random_forest((m, n), rng.randint(1, m + n), rng.getrandbits(64))


def _kirchhoff_host(host):
    m, n = host
    for forest in _host_forests(m, n):
        got = tau_forest(m, n, validate(forest))
        want = tau_kirchhoff(contract_forest(forest))
        if got != want:
            return f"K_{m},{n} forest {forest.edges}: formula {got} != Kirchhoff {want}"
    return None


def _divisibility_host(host):
    m, n = host
    for forest in _host_forests(m, n):
        num, den = forest_numerator(m, n, validate(forest))
        if num % den:
            return f"K_{m},{n}: {num} not divisible by {den}"
    return None


def _over_hosts(job) -> tuple[int, int]:
    """Run ``job`` on every host, in parallel when workers allow; return (hosts, workers)."""
    hosts = _kirchhoff_hosts()
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            failures = list(pool.map(job, hosts, chunksize=4))
    else:
        failures = [job(h) for h in hosts]
    for failure in failures:
        _expect(failure is None, str(failure))
    return len(hosts), workers


def check_main_vs_kirchhoff() -> str:
    hosts, workers = _over_hosts(_kirchhoff_host)
    return f"{hosts * FORESTS_PER_HOST} random forests on {hosts} hosts agree ({workers} worker(s))"


def check_divisibility() -> str:
    hosts, workers = _over_hosts(_divisibility_host)
    total = hosts * FORESTS_PER_HOST
    return f"{total}/{total} numerators divisible by m*n ({workers} worker(s))"


def check_specializations() -> str:
    count = 0
    for m in range(1, 13):
        for n in range(1, 13):
            for k in range(min(m, n) + 1):
                profile = [(1, 1)] * k + [(1, 0)] * (m - k) + [(0, 1)] * (n - k)
                a, b = tau_matching(m, n, k), tau_forest(m, n, profile)
                _expect(a == b, f"matching m={m} n={n} k={k}: {a} != {b}")
                count += 1
            for s in range(1, m + 1):
                for t in range(1, n + 1):
                    profile = [(s, t)] + [(1, 0)] * (m - s) + [(0, 1)] * (n - t)
                    a, b = tau_tree(m, n, s, t), tau_forest(m, n, profile)
                    _expect(a == b, f"tree m={m} n={n} s={s} t={t}: {a} != {b}")
                    count += 1
    return f"{count} matching/tree cases agree"


def check_moon() -> str:
    _expect(tau_moon(1, [1]) == 1, "tau_moon(1, [1]) != 1")
    count = 1
    for n in range(2, 7):
        for forest in enumerate_forests((1,) * n):
            orders = [sum(c) for c in validate(forest).components]
            got, want = tau_moon(n, orders), count_forced_trees(forest)
            _expect(got == want, f"K_{n} forest {forest.edges}: Moon {got} != enumeration {want}")
            count += 1
    return f"{count} forests of K_n (n <= 6) agree"


def check_factored() -> str:
    rng = random.Random("factored")
    done = 0
    while done < 500:
        k = rng.randint(1, 8)
        fw = FactoredWeights(
            tuple(rng.randint(0, 5) for _ in range(k)), tuple(rng.randint(0, 5) for _ in range(k))
        )
        X, Y = sum(fw.x), sum(fw.y)
        if X == 0 or Y == 0 or any(x * Y + y * X == 0 for x, y in zip(fw.x, fw.y)):
            continue
        got, want = tau_factored(fw), tau_kirchhoff(fw.graph())
        _expect(got == want, f"x={fw.x} y={fw.y}: phi {got} != Kirchhoff {want}")
        done += 1
    return "500 factored-weight points agree"


def check_recursions() -> str:
    rng = random.Random("recursions")
    for trial in range(500):
        k = rng.randint(1, 8)
        g = WeightedCompleteGraph.from_upper(
            k, {(i, j): rng.randint(0, 4) for i in range(k) for j in range(i + 1, k)}
        )
        a, b, c = tau_inclusion_exclusion(g), tau_alt_recursion(g), tau_kirchhoff(g)
        _expect(a == b == c, f"trial {trial} w={g.w}: {a}, {b}, {c}")
    return "500 weighted graphs: both recursions equal Kirchhoff"


def check_identities() -> str:
    total = 0
    for id in IDS:
        sizes = range(2, 7) if id in ("T31", "R63") else range(1, 7)
        report = run_suite(id, sizes, 100, 0)
        _expect(report.ok, f"{id}: {report.failed} failures, first {report.counterexamples[:1]}")
        total += report.passed
    for side in ("A", "B"):
        for size in range(2, 7):
            for trial in range(20):
                p = sample_degenerate_l21(side, size, trial)
                lhs, rhs = evaluate_identity("L21", p)
                _expect(lhs == rhs, f"L21 with {side}=0: {p.to_dict()}")
                total += 1
    return f"{total} exact identity evaluations, zero failures"


def check_conjecture_harness() -> str:
    small = 0
    for shape in shapes(6):
        for forest in enumerate_forests(shape):
            report = check_conjecture(forest)
            if report.k <= 2:
                _expect(report.equality, f"k<=2 inequality at {forest.to_dict()}: {report.lhs} vs {report.rhs}")
                small += 1
    reports = scan_conjecture(9, 20, 0)
    large = [r for r in reports if r.k >= 3]
    _expect(all(isinstance(r.holds, bool) for r in reports), "a report lacks holds status")
    violations = sum(not r.holds for r in reports)
    return (
        f"{small} instances with k<=2 all equal; scan to n=9: {len(large)} with k>=3, "
        f"{violations} violations surfaced"
    )


def check_determinism() -> str:
    from .cli import main

    with tempfile.TemporaryDirectory() as tmp:
        instance = os.path.join(tmp, "instance.json")
        with open(instance, "w", encoding="utf-8") as fh:
            fh.write(ForestInstance((3, 2), (((0, 0), (1, 0)), ((0, 1), (1, 0)))).to_json())
        commands = [
            ["count", instance, "--oracle", "enumerate"],
            ["phi", "1", "2", "3", "4"],
            ["identities", "--sizes", "1..4", "--trials", "10", "--seed", "5"],
            ["conjecture", "--max-n", "6", "--trials", "5", "--seed", "3", "--out", os.path.join(tmp, "scan.jsonl")],
        ]
        for argv in commands:
            runs = []
            for _ in range(2):
                buf = io.StringIO()
                code = main(argv, out=buf)
                extra = ""
                if "--out" in argv:
                    with open(argv[-1], encoding="utf-8") as fh:
                        extra = fh.read()
                runs.append((code, buf.getvalue(), extra))
            _expect(runs[0] == runs[1], f"output of {argv[0]} differs between runs")
            _expect(runs[0][0] == 0, f"{argv[0]} exited with {runs[0][0]}")
    return f"{len(commands)} seeded commands byte-identical across runs"


CHECKS = (
    Check("c1_main_vs_enumeration", "closed form = forced-tree enumeration, all forests, m+n <= 6", check_main_vs_enumeration, 60),
    Check("c2_main_vs_kirchhoff", "closed form = Matrix-Tree on contraction, 200 forests per host, m,n <= 30", check_main_vs_kirchhoff, 120),
    Check("c3_specializations", "matching and tree formulas = closed form, m,n <= 12", check_specializations, 30),
    Check("c4_moon", "Moon's formula = enumeration on K_n, n <= 6", check_moon),
    Check("c5_factored_weights", "phi = Matrix-Tree for factored weights, 500 points, k <= 8", check_factored),
    Check("c6_recursions", "inclusion-exclusion = alternate recursion = Matrix-Tree, 500 graphs, k <= 8", check_recursions),
    Check("c7_identities", "all identity suites exact, sizes <= 6, 100 points each, L21 degenerate cases", check_identities, 120),
    Check("c8_divisibility", "pre-division integer divisible by m*n for every forest of the Matrix-Tree comparison", check_divisibility),
    Check("c9_conjecture", "tripartite bound: equality for k <= 2 (n <= 6), scan to n = 9 completes", check_conjecture_harness),
    Check("c10_determinism", "seeded CLI commands give byte-identical output", check_determinism),
)


def run_checks(only=None, log=None) -> list[dict]:
    results = []
    for check in CHECKS:
        if only and check.name not in only:
            continue
        start = time.perf_counter()
        try:
            detail = check.run()
            ok = True
        except CheckFailed as exc:
            detail, ok = str(exc), False
        elapsed = time.perf_counter() - start
        if ok and check.budget is not None and elapsed > check.budget:
            detail, ok = f"{detail}; took {elapsed:.1f}s > budget {check.budget}s", False
        results.append({"name": check.name, "pass": ok, "seconds": f"{elapsed:.2f}", "detail": detail})
        if log is not None:
            print(f"{'PASS' if ok else 'FAIL'} {check.name} ({elapsed:.1f}s): {detail}", file=log)
    return results
