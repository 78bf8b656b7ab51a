"""Acceptance gate: every criterion at its stated size and tolerance.

Each test prints one PASS/FAIL line; `nacirc verify --corpus full` runs the
same checks from the command line.

 1. whitebox verdict equals brute-force verdict on >= 1000 seeded random
    circuits per mode (n <= 4, degree <= 6, size <= 25) plus fixtures; exact.
 2. tensor entry formulas for all monomials with n <= 3, degree <= 4, all
    admissible (k1, k2) at 5 random assignments; all other entries zero.
 3. measured single-trial zero-evaluation rate at |S| = 100d stays within
    d/|S| + 3 sigma over 10^4 trials; zero polynomials always evaluate to 0.
 4. decode(encode(m)) = m exhaustively to degree 5 (n <= 3) and on 10^4
    sampled trees to degree 8; encode injective on the exhaustive set.
 5. set-multilinearization of 50 seeded circuits matches the coefficient-
    weighted z-images per degree; size <= 3 d^4 s; depth preserved;
    unambiguous.
 6. Kronecker families separate all <= 3-subsets at (n_z=3, k=3, d=2)
    exhaustively and 100 sampled 4-sets at (n_z=6, d=3).
 7. >= 20 desk unambiguous circuits each admit a verified basis-isolating
    candidate, and the t-power substitution keeps them nonzero.
 8. end-to-end hitting: oracle-nonzero corpus circuits are hit, zero
    circuits never hit on scanned prefixes, conclusive verdicts agree with
    the whitebox, and infeasible regimes error explicitly.
 9. gate-level evaluation equals evaluating the expansion at 10 random
    algebra tuples per corpus circuit.
"""

from nacirc import verify


def _report(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def test_criterion_1_oracle_agreement():
    ok, detail = verify.check_oracle_agreement(per_mode=1000, seed=1)
    _report("1 oracle-agreement", ok, detail)


def test_criterion_2_entry_formulas():
    ok, detail = verify.check_entry_formulas(deg_max=4, n=3, assignments=5, seed=1)
    _report("2 entry-formulas", ok, detail)


def test_criterion_3_sz_bound():
    ok, detail = verify.check_sz_bound(trials=10000, seed=1)
    _report("3 sz-bound", ok, detail)


def test_criterion_4_monomial_codes():
    ok, detail = verify.check_monomial_codes(deg_exhaustive=5, n=3, samples=10000, deg_sampled=8, seed=1)
    _report("4 monomial-codes", ok, detail)


def test_criterion_5_set_multilinearization():
    ok, detail = verify.check_set_mult(circuits=50, seed=1)
    _report("5 set-multilinearization", ok, detail)


def test_criterion_6_kronecker_separation():
    ok, detail = verify.check_kronecker(sample_sets=100, seed=1)
    _report("6 kronecker-separation", ok, detail)


def test_criterion_7_biwa():
    ok, detail = verify.check_biwa(seed=1)
    _report("7 biwa", ok, detail)


def test_criterion_8_hitting_end_to_end():
    ok, detail = verify.check_hitting_e2e(seed=1)
    _report("8 hitting-end-to-end", ok, detail)


def test_criterion_9_cross_evaluator():
    ok, detail = verify.check_cross_evaluator(tuples_per_circuit=10, seed=1)
    _report("9 cross-evaluator", ok, detail)
