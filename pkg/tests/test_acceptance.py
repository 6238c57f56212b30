"""Exit criteria. Each test prints one PASS/FAIL line (collected in the
terminal summary) and enforces the stated tolerance and time limit."""

import io
import random
import time
from fractions import Fraction as Q

from conftest import CORPUS, CORPUS_TEXT, record
from oracles import naive_star_discrepancy, solvable_power_congruence, trial_division_is_prime
from rootdensity.bfset import Fraction, bf_contains
from rootdensity.cli import dispatch
from rootdensity.density import cover_report_constructive, cover_report_enumerative, star_discrepancy
from rootdensity.intpoly import conjugate_g, evaluate, fixed_divisor, irreducibility_witness, parse_poly
from rootdensity.modarith import brauer_max_run, sieve_primes
from rootdensity.rootsmodp import roots_mod_p
from rootdensity.witness import approximate, verify_witness, witness_sequence

X2_1 = parse_poly("x^2+1")
CUBIC = parse_poly("x^3-x+3")

# First verified run of the X = 10^5 enumerative report for x^2 + 1.
ENUMERATIVE_DSTAR_BASELINE = Q(4376929, 914423427)


def _gap_identity(W):
    return W.value - Q(W.a, W.b) == Q(W.b * W.w + W.t, W.b * W.p)


def test_criterion_1_pipeline_witnesses_verify():
    assert irreducibility_witness(parse_poly("x^4+x+1"), 100) is not None
    rng = random.Random(20240101)
    start = time.perf_counter()
    runs = failures = 0
    for _ in range(500):
        f = rng.choice(CORPUS)
        alpha = Q(rng.randint(1, 10**6 - 1), 10**6)
        eps = rng.choice([Q(1, 10), Q(1, 20), Q(1, 50), Q(1, 100)])
        run = approximate(f, alpha, eps)
        runs += 1
        W = run.witness
        if W is None or not verify_witness(f, W) or not _gap_identity(W) or abs(W.value - alpha) > eps:
            failures += 1
    elapsed = time.perf_counter() - start
    record(1, "500 pipeline witnesses pass verify_witness", failures == 0 and elapsed < 60,
           f"{runs - failures}/{runs} verified, {elapsed:.1f}s")


def test_criterion_2_exact_convergence_identity():
    G = conjugate_g(X2_1, 3, 2)
    hand = [
        (w, evaluate(G, w), (evaluate(G, w) + 3 * w + 2) // 3)
        for w in range(7)
        if trial_division_is_prime(evaluate(G, w))
    ]
    seq = witness_sequence(X2_1, Fraction(1, 3), 2, 3, 100)
    got = [(W.w, W.p, W.z) for W in seq]
    expected = [(0, 13, 5), (2, 73, 27), (6, 409, 143)]
    ok = got == expected == hand and all(_gap_identity(W) and verify_witness(X2_1, W) for W in seq)
    ok = ok and [W.gap for W in seq] == [Q(2, 39), Q(8, 219), Q(20, 1227)]
    record(2, "canonical sequence for x^2+1 at 1/3, t=2 and gap identity", ok, f"{got}")


def test_criterion_3_fixed_divisor_preserved():
    rng = random.Random(3)
    start = time.perf_counter()
    bad = []
    for text, f in zip(CORPUS_TEXT, CORPUS):
        r = fixed_divisor(f)
        pairs = [(b, t) for b in sieve_primes(97) if b > 2 and (f.leading * r) % b for t in range(1, b)]
        for b, t in rng.sample(pairs, 50):
            if fixed_divisor(conjugate_g(f, b, t)) != r:
                bad.append((text, b, t))
    elapsed = time.perf_counter() - start
    record(3, "fixed_divisor(G) = fixed_divisor(f) on 5 x 50 pairs", not bad and elapsed < 10,
           f"{len(bad)} mismatches, {elapsed:.2f}s")


def test_criterion_4_brauer_bound():
    start = time.perf_counter()
    primes = [b for b in sieve_primes(10**4) if b % 4 == 3]
    violations = [b for b in primes if brauer_max_run(b) ** 2 >= b]
    elapsed = time.perf_counter() - start
    record(4, "brauer_max_run(b)^2 < b for primes b = 3 mod 4 up to 10^4", not violations and elapsed < 30,
           f"{len(primes)} primes, {len(violations)} violations, {elapsed:.1f}s")


def test_criterion_5_bf_oracle():
    start = time.perf_counter()
    mismatches = checked = 0
    for f in CORPUS:
        r, c, n = fixed_divisor(f), f.leading, f.degree
        for b in sieve_primes(200)[1:]:
            gate = (c * r) % b != 0
            for a in range(1, b):
                expected = gate and solvable_power_congruence(a * c, n - 1, -r, b)
                checked += 1
                mismatches += bf_contains(f, a, b) != expected
    elapsed = time.perf_counter() - start
    record(5, "bf_contains equals exhaustive solvability for b <= 200", mismatches == 0 and elapsed < 30,
           f"{checked} cases, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_6_roots_oracle():
    start = time.perf_counter()
    mismatches = checked = 0
    for f in CORPUS:
        for p in sieve_primes(2000):
            fast = roots_mod_p(f, p, threshold=0)
            brute = [z for z in range(p) if evaluate(f, z) % p == 0]
            checked += 1
            mismatches += fast != brute
    elapsed = time.perf_counter() - start
    record(6, "gcd-based roots equal exhaustive search for p <= 2000", mismatches == 0 and elapsed < 60,
           f"{checked} (f, p) pairs, {mismatches} mismatches, {elapsed:.1f}s")


def _coverage(f, eps, limit, number, label):
    start = time.perf_counter()
    report = cover_report_constructive(f, eps)
    elapsed = time.perf_counter() - start
    k = len(report.intervals)
    verified = all(iv.witness is not None and verify_witness(f, iv.witness) for iv in report.intervals)
    record(number, label, report.covered == k and verified and elapsed < limit,
           f"{report.covered}/{k} covered, {elapsed:.2f}s")


def test_criterion_7a_constructive_coverage_quadratic():
    _coverage(X2_1, Q(1, 20), 60, "7a", "constructive coverage x^2+1, eps 1/20: 20/20 verified")


def test_criterion_7b_constructive_coverage_cubic():
    _coverage(CUBIC, Q(1, 10), 120, "7b", "constructive coverage x^3-x+3, eps 1/10: 10/10 verified")


def test_criterion_8a_discrepancy_oracle():
    rng = random.Random(8)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        N = rng.randint(0, 50)
        den = rng.choice([7, 60, 1000, 997])
        pts = [Q(rng.randint(1, den - 1), den) for _ in range(N)]
        mismatches += star_discrepancy(pts) != naive_star_discrepancy(pts)
    grid_ok = all(
        star_discrepancy([Q(2 * i - 1, 2 * N) for i in range(1, N + 1)]) == Q(1, 2 * N) for N in (1, 2, 5, 10)
    )
    elapsed = time.perf_counter() - start
    record("8a", "star discrepancy equals naive oracle; centered grids give 1/(2N)",
           mismatches == 0 and grid_ok and elapsed < 5, f"{mismatches} mismatches, {elapsed:.2f}s")


def test_criterion_8b_enumerative_baseline():
    start = time.perf_counter()
    report = cover_report_enumerative(X2_1, 10**5, Q(1, 20))
    elapsed = time.perf_counter() - start
    record("8b", "enumerative report x^2+1, X = 10^5, D* regression baseline",
           report.discrepancy == ENUMERATIVE_DSTAR_BASELINE and elapsed < 120,
           f"D* = {report.discrepancy} ~ {float(report.discrepancy):.6g}, {report.points} points, {elapsed:.1f}s")


def test_criterion_9_determinism():
    outputs = {}
    for workers in (1, 8):
        reports = [cover_report_constructive(X2_1, Q(1, 20), workers=workers),
                   cover_report_constructive(CUBIC, Q(1, 10), workers=workers)]
        text = "".join(r.to_json_lines() + r.to_table() + r.to_csv() for r in reports)
        for poly, eps in (("x^2+1", "1/20"), ("x^3-x+3", "1/10")):
            buf = io.StringIO()
            code = dispatch(["scan-constructive", "--poly", poly, "--eps", eps, "--workers", str(workers)], buf)
            text += f"{code}\n{buf.getvalue()}"
        outputs[workers] = text.encode()
    record(9, "criterion-7 reports byte-identical for 1 and 8 workers", outputs[1] == outputs[8],
           f"{len(outputs[1])} bytes")
