"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Every test asserts its criterion, so a red criterion is also a red test.
Runtimes are measured around the work itself, not pytest setup.
"""

import json
import random
import time
from fractions import Fraction as Fr

import pytest

from fuzzyseq.cli import main
from fuzzyseq.corpus import dual_test_sequences, matrix_corpus, standard_sequences
from fuzzyseq.domains import DomainSpace, domain_norm, phi, psi
from fuzzyseq.duals import (
    CLASS_TABLE,
    DualKind,
    check_class,
    class_oracle,
    compare,
    dual_membership,
    dual_oracle,
    transfer_check,
)
from fuzzyseq.fuzzy_core import SpreadPair, TriangularFuzzyNumber as T
from fuzzyseq.fuzzy_core import add, div, metric, mul, neg
from fuzzyseq.inf_matrix import (
    cesaro,
    compose,
    explicit,
    gamma,
    gamma_inv,
    identity,
    omega,
    omega_inv,
    toeplitz_audit,
    truncate,
)
from fuzzyseq.seq_spaces import FuzzySequence as S
from fuzzyseq.seq_spaces import sup_norm
from fuzzyseq.verdict import Status

BLOCKS = {
    "omega": [["1", "0", "0", "0"], ["1", "2", "0", "0"], ["1", "2", "3", "0"], ["1", "2", "3", "4"]],
    "gamma": [
        ["1", "0", "0", "0"],
        ["1", "1/2", "0", "0"],
        ["1", "1/2", "1/3", "0"],
        ["1", "1/2", "1/3", "1/4"],
    ],
    "omega_inv": [
        ["1", "0", "0", "0"],
        ["-1/2", "1/2", "0", "0"],
        ["0", "-1/3", "1/3", "0"],
        ["0", "0", "-1/4", "1/4"],
    ],
    "gamma_inv": [["1", "0", "0", "0"], ["-2", "2", "0", "0"], ["0", "-3", "3", "0"], ["0", "0", "-4", "4"]],
}


def test_criterion_1_displayed_blocks(record_acceptance, capsys):
    start = time.perf_counter()
    mismatches = []
    for name, block in BLOCKS.items():
        code = main(["show", "--matrix", name, "--n", "4", "--mode", "rational", "--json"])
        report = json.loads(capsys.readouterr().out)
        if code != 0 or report["block"] != block:
            mismatches.append(name)
    elapsed = time.perf_counter() - start
    passed = not mismatches and elapsed < 1
    record_acceptance(1, "displayed 4x4 blocks", passed, f"mismatches={mismatches}, {elapsed:.2f}s")
    assert not mismatches
    assert elapsed < 1


def test_criterion_2_inverse_identities(record_acceptance):
    N = 256
    start = time.perf_counter()
    failures = []
    pairs = [
        ("omega_inv*omega", omega_inv(True), omega(True)),
        ("omega*omega_inv", omega(True), omega_inv(True)),
        ("gamma_inv*gamma", gamma_inv(True), gamma(True)),
        ("gamma*gamma_inv", gamma(True), gamma_inv(True)),
    ]
    for label, A, B in pairs:
        # Lower-triangular: every smaller leading block is a sub-block of this one.
        block = truncate(compose(A, B), N)
        if any(block[i][j] != (1 if i == j else 0) for i in range(N) for j in range(N)):
            failures.append(label)
        if not all(isinstance(x, Fr) for row in block for x in row):
            failures.append(label + " (not exact)")
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 10
    record_acceptance(2, "inverse identities to N=256", passed, f"failures={failures}, {elapsed:.2f}s")
    assert not failures
    assert elapsed < 10


def _random_spreads(rng):
    a, b = sorted((rng.uniform(0, 3), rng.uniform(0, 3)))
    return SpreadPair(a, b)


def test_criterion_3_arithmetic_and_metric(record_acceptance):
    rng = random.Random(20261015)
    tol = 1e-12
    counts = dict.fromkeys(
        ["assoc", "comm", "identity", "inverse", "spreads", "symmetry", "symmetry_equal_spreads", "triangle"], 0
    )
    start = time.perf_counter()

    def close(x, y):
        return abs(x - y) <= tol * max(1.0, abs(x), abs(y))

    for _ in range(10_000):
        sp = _random_spreads(rng)
        u, v, w = (T(rng.uniform(-10, 10), sp) for _ in range(3))
        zero, one = T(0.0, sp), T(1.0, sp)
        ok_assoc = close(add(add(u, v), w).center, add(u, add(v, w)).center) and close(
            mul(mul(u, v), w).center, mul(u, mul(v, w)).center
        )
        ok_comm = add(u, v).center == add(v, u).center and mul(u, v).center == mul(v, u).center
        ok_id = add(u, zero).center == u.center and mul(u, one).center == u.center
        ok_inv = add(u, neg(u)).center == 0 and (u.center == 0 or close(mul(u, div(one, u)).center, 1.0))
        results = [add(u, v), mul(u, v), add(add(u, v), w), neg(u), div(u, one)]
        ok_spreads = all(r.spreads == sp for r in results)
        counts["assoc"] += not ok_assoc
        counts["comm"] += not ok_comm
        counts["identity"] += not ok_id
        counts["inverse"] += not ok_inv
        counts["spreads"] += not ok_spreads

        # pairs use general spreads t1 <= t2
        d_uv, d_vu = metric(u, v), metric(v, u)
        counts["symmetry"] += abs(d_uv - d_vu) > tol * max(1.0, d_uv)
        counts["triangle"] += d_uv > metric(u, w) + metric(w, v) + tol * max(1.0, d_uv)
        eq = SpreadPair(sp.t2, sp.t2)
        p, q = T(u.center, eq), T(v.center, eq)
        counts["symmetry_equal_spreads"] += abs(metric(p, q) - metric(q, p)) > tol
    elapsed = time.perf_counter() - start
    algebra_ok = all(counts[k] == 0 for k in ("assoc", "comm", "identity", "inverse", "spreads"))
    metric_ok = counts["symmetry"] == 0 and counts["triangle"] == 0
    passed = algebra_ok and metric_ok and elapsed < 5
    detail = (
        f"violations of 10^4: {counts}; symmetry fails whenever t1 < t2 and centers differ, "
        f"holds for t1 = t2; {elapsed:.2f}s"
    )
    record_acceptance(3, "fuzzy arithmetic and metric axioms", passed, detail)
    assert algebra_ok, counts
    assert counts["triangle"] == 0 and counts["symmetry_equal_spreads"] == 0, counts
    assert elapsed < 5
    # Genuine defect of the metric: recorded as a failing criterion.
    assert counts["symmetry"] == 0, counts


def test_criterion_4_isometry(record_acceptance):
    corpus = standard_sequences()
    assert len(corpus) == 20
    start = time.perf_counter()
    mismatches = []
    for label, s in corpus:
        for matrix, T_ in (("omega", phi), ("gamma", psi)):
            value, verdict = domain_norm(s, DomainSpace("linf", matrix))
            ref_value, ref_verdict = sup_norm(T_(s))
            same = (
                value == ref_value
                and verdict.status is ref_verdict.status
                and verdict.witness["running_sup"] == ref_verdict.witness["running_sup"]
            )
            if not same:
                mismatches.append((label, matrix))
    elapsed = time.perf_counter() - start
    passed = not mismatches and elapsed < 5
    record_acceptance(4, "isometry ladder agreement", passed, f"mismatches={mismatches}, {elapsed:.2f}s")
    assert not mismatches
    assert elapsed < 5


def _random_pair(rng):
    n = 32
    rows = []
    for i in range(1, n + 1):
        lo = max(1, i - rng.randint(1, 8) + 1)
        rows.append([0.0] * (lo - 1) + [rng.uniform(-1, 1) for _ in range(lo, i + 1)])
    x = S.explicit([rng.uniform(-5, 5) for _ in range(n + 2)])
    return explicit(rows), x, rng.randint(1, n)


def test_criterion_5_transfer_identities(record_acceptance):
    rng = random.Random(5)
    start = time.perf_counter()
    worst = {}
    for theorem in ("omega-source", "gamma-source", "omega-target", "gamma-target"):
        worst[theorem] = 0.0
        for _ in range(100):
            P, x, n = _random_pair(rng)
            report = transfer_check(P, theorem, x, n, tol=1e-10)
            worst[theorem] = max(worst[theorem], report.residual)
    elapsed = time.perf_counter() - start
    ok = all(r <= 1e-10 for r in worst.values())
    passed = ok and elapsed < 30
    detail = ", ".join(f"{k} max residual {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f}s"
    record_acceptance(5, "transfer identities (100 pairs each)", passed, detail)
    assert ok, worst
    assert elapsed < 30


def test_criterion_6_class_oracle_agreement(record_acceptance, tmp_path):
    start = time.perf_counter()
    findings, tally = [], {}
    for name, A in matrix_corpus(seed=0):
        for cls in CLASS_TABLE.values():
            report = check_class(A, cls)
            oracle = class_oracle(A, cls)
            found = compare(oracle, report.overall, {"matrix": name, "class": cls.label})
            if found:
                findings.append(found)
            key = f"{report.status.value}/{oracle.status.value}"
            tally[key] = tally.get(key, 0) + 1
    elapsed = time.perf_counter() - start
    (tmp_path / "class_findings.json").write_text(json.dumps(findings, indent=2))
    passed = not findings and elapsed < 60
    record_acceptance(
        6, "class checker vs oracle", passed, f"conditions/oracle {tally}, findings={len(findings)}, {elapsed:.1f}s"
    )
    assert not findings, findings
    assert elapsed < 60


def test_criterion_7_regularity_audit(record_acceptance):
    start = time.perf_counter()
    om = toeplitz_audit(omega())
    ga = toeplitz_audit(gamma())
    ladder = om["row_sum_limit"]["verdict"].ladder
    omega_growth = om["row_sums_at_ladder"] == [n * (n + 1) / 2 for n in ladder]
    harmonic = [float(sum(Fr(1, k) for k in range(1, n + 1))) for n in ladder]
    gamma_growth = ga["row_sums_at_ladder"] == pytest.approx(harmonic, rel=1e-12)
    checks = {
        "omega divergent": om["row_sum_limit"]["verdict"].fails and omega_growth,
        "gamma divergent": ga["row_sum_limit"]["verdict"].fails and gamma_growth,
        "omega not regular": om["regular"] is Status.FAILS,
        "gamma not regular": ga["regular"] is Status.FAILS,
        "identity regular": toeplitz_audit(identity())["regular"] is Status.HOLDS,
        "cesaro regular": toeplitz_audit(cesaro())["regular"] is Status.HOLDS,
    }
    elapsed = time.perf_counter() - start
    passed = all(checks.values()) and elapsed < 5
    bad = [k for k, v in checks.items() if not v]
    record_acceptance(7, "regularity audit of omega and gamma", passed, f"failed checks={bad}, {elapsed:.2f}s")
    assert not bad
    assert elapsed < 5


def test_criterion_8_dual_cross_check(record_acceptance, tmp_path):
    """All kinds, both domains, every base.

    The dual conditions are derived from the absolute transform, so the
    oracle corpus of that reading decides the criterion. The raw
    matrix-domain corpus is run too; its contradictions must each be
    emitted as a finding artifact.
    """
    start = time.perf_counter()
    abs_findings, raw_findings, unreported = [], [], []
    sequences = dual_test_sequences()
    assert len(sequences) == 10
    for matrix in ("omega", "gamma"):
        for base in ("c0", "c", "linf"):
            space = DomainSpace(base, matrix)
            for label, a in sequences:
                for kind in DualKind:
                    report = dual_membership(a, space, kind, label=label)
                    context = {"a": label, "space": space.name, "kind": kind.value}
                    for mode, sink in (("abs", abs_findings), ("raw", raw_findings)):
                        oracle = dual_oracle(a, space, kind, transform_mode=mode)
                        found = compare(oracle, report.verdict, {**context, "transform": mode})
                        if found:
                            sink.append(found)
                            if mode == "raw" and "finding" not in report.to_dict():
                                unreported.append(context)
    elapsed = time.perf_counter() - start
    (tmp_path / "dual_findings.json").write_text(json.dumps(abs_findings + raw_findings, indent=2))
    raw_cases = sorted({(f["context"]["a"], f["context"]["space"], f["context"]["kind"]) for f in raw_findings})
    passed = not abs_findings and not unreported and elapsed < 60
    detail = (
        f"abs-reading contradictions={len(abs_findings)}; raw-reading findings={raw_cases} "
        f"(each also flagged by the inverse-matrix route: {not unreported}); {elapsed:.1f}s"
    )
    record_acceptance(8, "dual conditions vs oracle", passed, detail)
    assert not abs_findings, abs_findings
    assert not unreported, unreported
    assert elapsed < 60
