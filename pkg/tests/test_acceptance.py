"""End-to-end acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s``.
"""

import csv
import io
import math
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction as F

import pytest

from credalapprox import max_eps, opt_eps, problemfile
from credalapprox.cli import main
from credalapprox.core import ProbabilityCharge
from credalapprox.simplex import enumerate_grid, grid_cardinality, l1_distance, round_to_grid
from credalapprox.verify import run_verify

from conftest import DATA

TRIALS = 1000
SEED = 20240611

PARTITION_TABLE = {  # |D| -> values at eps 0.2, 0.1, 0.05, 0.02, 0.01
    2: (1.6, 2.1, 2.6, 3.4, 4.0),
    4: (3.1, 4.2, 5.3, 6.8, 8.0),
    8: (6.2, 8.3, 10.6, 13.7, 16.0),
    16: (12.5, 16.7, 21.2, 27.3, 32.1),
    32: (24.9, 33.3, 42.3, 54.6, 64.1),
}
CREDAL_TABLE = {  # |A| -> values at delta 0.2, 0.1, 0.05
    4: (3.3, 4.1, 5.0),
    8: (7.9, 9.8, 11.8),
    12: (12.5, 15.5, 18.7),
    16: (17.1, 21.3, 25.6),
    20: (21.8, 27.1, 32.6),
    24: (26.4, 32.9, 39.5),
    28: (31.1, 38.6, 46.5),
    32: (35.8, 44.4, 53.4),
}
CREDAL_TABLE_LOG = {  # log10|A| label -> values
    "0.7": (4.4, 5.5, 6.7),
    "1.4": (27.6, 34.3, 41.3),
    "2.1": (144.6, 179.5, 215.5),
    "2.8": (731.3, 906.8, 1088.2),
    "3.5": (3666.1, 4544.7, 5452.8),
    "4.2": (18341.5, 22735.9, 27277.5),
    "4.9": (91719.7, 113693.0, 136402.5),
}


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line per criterion, visible even under capture."""
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def cli(argv) -> str:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    assert code == 0
    return buf.getvalue()


def parse_bounds(text: str):
    """Split `bounds` output into its partition and credal sections."""
    t1, t2, log_rows, section = {}, {}, {}, 0
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if line.startswith("log10 partition"):
            section = 1
            continue
        if line.startswith("log10 credal"):
            section = 2
            continue
        if parts[0] == "log10|A|":
            section = 3
            continue
        try:
            values = tuple(float(v) for v in parts[1:])
        except ValueError:
            continue  # column header
        {1: t1, 2: t2, 3: log_rows}[section][parts[0]] = values
    return t1, t2, log_rows


def test_criterion_1_partition_table(verdict):
    start = time.perf_counter()
    t1, _, _ = parse_bounds(cli(["bounds"]))
    elapsed = time.perf_counter() - start
    worst = max(abs(a - b) for d, row in PARTITION_TABLE.items() for a, b in zip(t1[str(d)], row))
    verdict(1, "partition-size table", worst <= 0.05 and elapsed < 1,
            f"max dev {worst:.3f}, {elapsed:.2f}s")


def test_criterion_2_credal_table(verdict):
    start = time.perf_counter()
    _, t2, log_rows = parse_bounds(cli(["bounds"]))
    elapsed = time.perf_counter() - start
    worst = max(abs(a - b) for n, row in CREDAL_TABLE.items() for a, b in zip(t2[str(n)], row))
    worst_rel = max(abs(a - b) / b for k, row in CREDAL_TABLE_LOG.items() for a, b in zip(log_rows[k], row))
    ok = worst <= 0.05 and worst_rel <= 1e-3 and elapsed < 1
    verdict(2, "credal-size table", ok,
            f"max dev {worst:.3f}, log rows max rel dev {worst_rel:.2e}, {elapsed:.2f}s")


def test_criterion_3_curve_anchors(verdict):
    out = cli(["curve", "--gamma-star", "0.2", "--dcount", "2", "--eps", "0.09,0.1,0.15"])
    pts = {float(r["eps"]): float(r["log10_bound"]) for r in csv.DictReader(io.StringIO(out))}
    ok = (abs(pts[0.1] - 139.805) <= 0.01 and abs(pts[0.15] - 77.784) <= 0.01
          and pts[0.09] > pts[0.1])
    verdict(3, "curve anchors and small-eps blow-up", ok,
            f"0.1->{pts[0.1]:.3f}, 0.15->{pts[0.15]:.3f}, 0.09->{pts[0.09]:.1f}")


def _random_simplex_point(rng, n, denom=10**6):
    cuts = sorted(rng.randint(0, denom) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, denom])]
    return ProbabilityCharge(tuple(F(p, denom) for p in parts))


def test_criterion_4_grid_properties(verdict):
    start = time.perf_counter()
    bad_counts = [
        (n, N) for n in range(1, 6) for N in range(1, 7)
        if sum(1 for _ in enumerate_grid(n, N)) != math.comb(N + n - 1, N)
        or grid_cardinality(n, N) != math.comb(N + n - 1, N)
    ]
    rng = random.Random(SEED)
    violations = 0
    for n in range(1, 5):
        xs = [_random_simplex_point(rng, n) for _ in range(10_000)]
        for N in range(1, 21):
            bound = F(n, N)
            violations += sum(l1_distance(x, round_to_grid(x, N).values) >= bound for x in xs)
    elapsed = time.perf_counter() - start
    verdict(4, "grid enumeration counts and rounding bound",
            not bad_counts and violations == 0 and elapsed < 30,
            f"count mismatches {len(bad_counts)}, rounding violations {violations}, {elapsed:.1f}s")


@pytest.fixture(scope="module")
def corpus_runs():
    """Property-group runs over the shared random corpus, with their timings."""
    groups = {
        "certificates": ["partition_certificate", "credal_certificate"],
        "expectation": ["expectation_bounds"],
        "opt": ["opt_transfer"],
        "max": ["max_transfer", "hull_invariance", "closure_ladder"],
        "algebra": ["choice_algebra"],
    }
    runs = {}
    for key, props in groups.items():
        start = time.perf_counter()
        report = run_verify(TRIALS, SEED, properties=props)
        runs[key] = (report, time.perf_counter() - start)
    return runs


def _summary(report, elapsed):
    parts = [f"{k}: {t.passed} pass/{t.skipped} skip/{t.failed} fail" for k, t in report.tallies.items()]
    return "; ".join(parts) + f"; {elapsed:.1f}s"


def test_criterion_5_certificates(verdict, corpus_runs):
    report, elapsed = corpus_runs["certificates"]
    verdict(5, "partition and credal certificates", report.ok and elapsed < 120,
            _summary(report, elapsed))


def test_criterion_6_expectation_bounds(verdict, corpus_runs):
    report, elapsed = corpus_runs["expectation"]
    verdict(6, "expectation error bounds", report.ok, _summary(report, elapsed))


def test_criterion_7_optimality_containments(verdict, corpus_runs):
    report, elapsed = corpus_runs["opt"]
    verdict(7, "optimality containments", report.ok and elapsed < 300, _summary(report, elapsed))


def test_criterion_8_maximality_containments(verdict, corpus_runs):
    report, elapsed = corpus_runs["max"]
    narrow = problemfile.load(DATA / "hull_witness.json")
    wide = problemfile.load(DATA / "hull_witness_widened.json")
    witness = (max_eps(narrow).chosen == max_eps(wide).chosen
               and opt_eps(narrow).chosen != opt_eps(wide).chosen)
    verdict(8, "maximality containments and hull witness", report.ok and witness,
            _summary(report, elapsed) + f"; witness {'holds' if witness else 'missing'}")


def test_criterion_9_choice_algebra(verdict, corpus_runs):
    report, elapsed = corpus_runs["algebra"]
    verdict(9, "choice-function algebra", report.ok, _summary(report, elapsed))
