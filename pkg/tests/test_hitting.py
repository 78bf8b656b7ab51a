import random

import numpy as np
import pytest

from nacirc import algebra as A
from nacirc import fixtures
from nacirc import hitting as H
from nacirc import monomial as M
from nacirc import oracle as O
from nacirc.circuit import Builder, Gate, gen_random
from nacirc.errors import EnumerationCapExceeded, FieldTooSmall
from nacirc.ffield import DEFAULT_MODULUS, next_prime
from nacirc.randpit import BlackBox
from nacirc.whitebox import whitebox_pit

P = DEFAULT_MODULUS


# --- Kronecker families ------------------------------------------------------


def test_family_minimal_case():
    # N = ceil(n_z * C(k,2) * log2(d+1)) = 2 here; already the first member
    # (codes mod 2) separates the pair {z1, z2}
    fam = H.KroneckerFamily(2, 2, 1)
    assert len(fam) == 2
    first = fam.member(0)
    assert first.of_mono((1,)) != first.of_mono((2,))
    # singleton sets are trivially separated by every member
    for w in fam:
        assert len({w.of_mono(m) for m in [(1, 2)]}) == 1


def test_family_weight_range():
    for (nz, k, d) in ((3, 3, 2), (6, 4, 3), (4, 8, 2)):
        fam = H.KroneckerFamily(nz, k, d)
        bound = fam.weight_bound()
        for w in fam:
            assert all(v < bound for v in w.weights)


def test_family_separates_sampled_sets():
    rng = random.Random(0)
    fam = H.KroneckerFamily(6, 4, 3)
    for _ in range(50):
        A_set = set()
        while len(A_set) < 4:
            mono = []
            for v in range(1, 7):
                mono += [v] * rng.randint(0, 3)
            A_set.add(tuple(mono))
        assert any(len({w.of_mono(m) for m in A_set}) == 4 for w in fam)


def test_nth_prime_sieve_consistency():
    from nacirc.hitting import nth_prime

    assert [nth_prime(i) for i in range(1, 9)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert nth_prime(5000) == 48611


# --- z-circuits ---------------------------------------------------------------


def test_z_expand_and_eval():
    zc = H.ZCircuit(3, P, [Gate("var", 1), Gate("var", 2), Gate("var", 3),
                           Gate("mul", 0, 1), Gate("add", 3, 2)], 4)
    assert H.z_expand(zc) == {(1, 2): 1, (3,): 1}
    pts = np.array([[2, 3, 5], [1, 1, 1]], dtype=np.int64)
    vals = H.eval_z_batch(zc, pts)
    assert [int(v) for v in vals] == [11, 2]


def test_unambiguity_detector():
    # (z1+z2)*(z1+z2) generates z1*z2 through two reduced trees? no: the tree
    # (z1 z2) is the same unordered tree both times -> unambiguous
    zc = H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2), Gate("add", 0, 1),
                           Gate("mul", 2, 2)], 3)
    assert H.is_unambiguous(zc)
    # z1*(z1*z1) + (z1*z1)*z1 ... same monomial via two tree shapes at one add
    zc2 = H.ZCircuit(1, P, [Gate("var", 1), Gate("mul", 0, 0), Gate("mul", 0, 1),
                            Gate("mul", 1, 0), Gate("add", 2, 3)], 4)
    # ((z1 z1) z1) as unordered tree equals (z1 (z1 z1)); still one tree
    assert H.is_unambiguous(zc2)
    # genuinely ambiguous: z1^4 as (z1^2)^2 and z1*(z1*(z1*z1)) summed
    zc3 = H.ZCircuit(1, P, [Gate("var", 1), Gate("mul", 0, 0), Gate("mul", 1, 1),
                            Gate("mul", 0, 1), Gate("mul", 0, 3), Gate("add", 2, 4)], 5)
    assert not H.is_unambiguous(zc3)


# --- set-multilinearization ---------------------------------------------------


def test_set_mult_examples():
    c = fixtures.single_var("comm", P, n=1)
    zcs = H.set_multilinearize(c, 1)
    assert H.z_expand(zcs[0]) == {(H.z_index(1, 1, 1, 1),): 1}

    b = Builder("comm", 2, P)
    b.mul(b.var(1), b.var(2))
    zcs = H.set_multilinearize(b.build(), 2)
    want = {}
    for zm, mult in M.phi_mono(M.Monomial.parse("(1 2)"), "comm", 2).items():
        want[tuple(sorted(H.z_index(i, j, k, 2) for (i, j, k) in zm))] = mult
    assert H.z_expand(zcs[1]) == want


def test_set_mult_matches_phi_sum():
    rng = random.Random(1)
    for trial in range(20):
        mode = "comm" if trial % 2 else "noncomm"
        c = gen_random(3, 10, 4, mode, rng.randrange(2**30), P)
        d = max(c.degree, 1)
        poly = O.expand(c)
        zcs = H.set_multilinearize(c, d)
        for dp in range(1, d + 1):
            zc = zcs[dp - 1]
            want = {}
            for mono, coef in poly.terms.items():
                if M.degree(mono) != dp:
                    continue
                for zm, mult in M.phi_mono(M.Monomial(mono), mode, d).items():
                    flat = tuple(sorted(H.z_index(i, j, k, d) for (i, j, k) in zm))
                    v = (want.get(flat, 0) + coef * mult) % P
                    if v:
                        want[flat] = v
                    else:
                        want.pop(flat, None)
            assert H.z_expand(zc) == want
            assert zc.size <= 3 * d**4 * c.size
            assert zc.product_depth <= c.product_depth
            assert H.is_unambiguous(zc)


# --- BIWA ---------------------------------------------------------------------


def test_biwa_candidates_structure():
    cands = H.biwa_candidates(3, 2, 2, 1, budget=10**6)
    assert cands.total == len(cands.family)
    first = next(iter(cands))
    # delta=1 composition: w = B*w1 + w2
    w1 = H.WeightAssignment((1, 2, 3))
    w2 = first.components[0]
    expect = tuple(first.base * a + b for a, b in zip(w1.weights, w2.weights))
    assert first.w.weights == expect


def test_biwa_candidates_delta0():
    cands = H.biwa_candidates(4, 3, 2, 0)
    lst = list(cands)
    assert len(lst) == 1 and cands.total == 1
    assert lst[0].w.weights == (1, 2, 3, 4)


def test_biwa_candidate_count_exact():
    cands = H.biwa_candidates(2, 1, 1, 2, budget=10**6)
    n = len(cands.family)
    assert cands.total == n * n
    assert sum(1 for _ in cands) == n * n


def test_biwa_budget_error():
    cands = H.biwa_candidates(3, 4, 2, 2, budget=10)
    with pytest.raises(EnumerationCapExceeded):
        for _ in cands:
            pass
    with pytest.raises(EnumerationCapExceeded):
        H.biwa_candidates(3, 4, 2, 2, budget=10).require_exhaustive()


def test_base_dominance_preserves_order():
    rng = random.Random(2)
    cands = H.biwa_candidates(4, 2, 3, 2, budget=10**6)
    it = iter(cands)
    for _ in range(10):
        cand = next(it)
        funcs = (cands.w1,) + cand.components
        for _ in range(20):
            m1 = tuple(sorted(rng.randint(1, 4) for _ in range(rng.randint(1, 3))))
            m2 = tuple(sorted(rng.randint(1, 4) for _ in range(rng.randint(1, 3))))
            # prefix comparison at any level propagates to the full composition
            for lvl in range(len(funcs)):
                wl1 = sum(funcs[i].of_mono(m1) * cand.base ** (lvl - i) for i in range(lvl + 1))
                wl2 = sum(funcs[i].of_mono(m2) * cand.base ** (lvl - i) for i in range(lvl + 1))
                if wl1 < wl2:
                    full1 = cand.w.of_mono(m1)
                    full2 = cand.w.of_mono(m2)
                    assert full1 < full2
                    break


def test_verify_biwa_cases():
    # constant circuit: any assignment isolates the single vector
    zc = H.ZCircuit(1, P, [Gate("const", 7)], 0)
    assert H.verify_biwa(H.WeightAssignment((0,)), zc)
    # two independent same-weight coefficient vectors cannot be isolated
    zc2 = H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2)], 1)
    assert not H.verify_biwa(H.WeightAssignment((1, 1)), zc2)
    assert H.verify_biwa(H.WeightAssignment((1, 2)), zc2)


def test_biwa_found_and_map_sound():
    corpus = [
        H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2), Gate("mul", 0, 1)], 2),
        H.ZCircuit(3, P, [Gate("var", 1), Gate("var", 2), Gate("var", 3),
                          Gate("mul", 0, 1), Gate("add", 3, 2)], 4),
        H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2), Gate("mul", 0, 1),
                          Gate("mulc", 2, 9), Gate("add", 3, 1)], 4),
    ]
    for zc in corpus:
        found = None
        for i, cand in enumerate(H.biwa_candidates(zc.nz, zc.size, max(zc.degree, 1),
                                                    zc.product_depth, budget=4000)):
            if i >= 4000:
                break
            if H.verify_biwa(cand.w, zc):
                found = cand
                break
        assert found is not None
        uni = H.biwa_univariate(found.w, zc)
        assert bool(uni) == bool(H.z_expand(zc))


# --- hitting sets -------------------------------------------------------------


def test_hitting_set_unambiguous_hits_corpus():
    # desk corpus of nonzero unambiguous z-circuits
    corpus = [
        H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2), Gate("mul", 0, 1)], 2),
        H.ZCircuit(2, P, [Gate("var", 1), Gate("var", 2), Gate("add", 0, 1)], 2),
        H.ZCircuit(3, P, [Gate("var", 1), Gate("var", 2), Gate("var", 3),
                              Gate("mul", 0, 1), Gate("add", 3, 2)], 4),
    ]
    for zc in corpus:
        hit = False
        for _, _, point in H.iter_hitting_points_unambiguous(
            zc.nz, zc.size, max(zc.degree, 1), zc.product_depth, zc.p, budget=10**5
        ):
            val = H.eval_z_batch(zc, np.array([point], dtype=np.int64))
            if int(val[0]) != 0:
                hit = True
                break
        assert hit
    # the zero circuit evaluates to zero on every point of a finite prefix
    zzero = H.ZCircuit(2, P, [Gate("var", 1), Gate("mulc", 0, 0)], 1)
    count = 0
    for _, _, point in H.iter_hitting_points_unambiguous(2, 2, 1, 0, P):
        assert int(H.eval_z_batch(zzero, np.array([point], dtype=np.int64))[0]) == 0
        count += 1
    assert count  # delta=0 stream is finite and fully scanned


def test_hitting_set_size_growth():
    sizes = []
    for s in (2, 4, 6):
        sizes.append(H.hitting_set_size(4, s, 2, 1))
    assert sizes[0] < sizes[1] < sizes[2]
    for delta in (0, 1):
        assert H.hitting_set_size(3, 3, 2, delta) <= H.hitting_set_size(3, 3, 2, delta + 1)


def test_hitting_set_unambiguous_materialized_small():
    pts = H.hitting_set_unambiguous(2, 1, 1, 0, 101)
    # delta=0: single candidate w(z_i)=i, D = d*max = 2, t in 1..3
    assert pts == [(t % 101, t * t % 101) for t in (1, 2, 3)]


def test_nonassoc_points_structure():
    for _, t, pts in H.iter_hitting_points_nonassoc(2, 1, 1, 0, "comm", 101):
        assert len(pts) == 2
        for i, e in enumerate(pts, start=1):
            assert e.scalar == 0
            assert e.entry(1, 2, 1) == pow(t, H.z_index(i, 1, 1, 1), 101)
        break


def test_blackbox_pit_det_verdicts():
    # constant nonzero: every point yields the constant in the scalar slot
    b = Builder("comm", 1, P)
    b.const(5)
    c = b.build()
    bb = BlackBox.from_circuit(c, d=0)
    verdict, witness = H.blackbox_pit_det(bb, c.size, 0)
    assert verdict == "NONZERO"
    assert A.eval_circuit(c, witness).scalar == 5

    for mode in ("comm", "noncomm"):
        cz = fixtures.zero_const(mode, P)
        bb = BlackBox.from_circuit(cz, d=0)
        assert H.blackbox_pit_det(bb, cz.size, 0)[0] == "ZERO"
        cl = fixtures.linear_zero(mode, P)
        bb = BlackBox.from_circuit(cl, d=1)
        assert H.blackbox_pit_det(bb, cl.size, 0)[0] == "ZERO"
        sq = fixtures.square(mode, P)
        bb = BlackBox.from_circuit(sq)
        verdict, witness = H.blackbox_pit_det(bb, sq.size, 1)
        assert verdict == "NONZERO"
        assert not A.eval_circuit(sq, witness).is_zero()


def test_blackbox_agrees_with_whitebox_on_corpus():
    instances = [
        (fixtures.single_var("comm", P), 0),
        (fixtures.single_var("noncomm", P), 0),
        (fixtures.commutator("noncomm", P), 1),
        (fixtures.linear_zero("comm", P), 0),
        (fixtures.zero_const("noncomm", P), 0),
    ]
    for c, delta in instances:
        bb = BlackBox.from_circuit(c, d=max(c.degree, 0) if c.degree == 0 else c.degree)
        wb, _ = whitebox_pit(c)
        det, _ = H.blackbox_pit_det(bb, c.size, delta)
        assert det == wb


def test_comm_vs_noncomm_crosscheck():
    # the commutator is hit over the noncommutative algebra and by no
    # commutative point (it is the zero polynomial there)
    cz = fixtures.commutator("comm", P)
    count = 0
    for _, _, pts in H.iter_hitting_points_nonassoc(2, cz.size, 2, 1, "comm", P):
        assert A.eval_circuit(cz, pts).is_zero()
        count += 1
        if count >= 64:
            break
    cn = fixtures.commutator("noncomm", P)
    bb = BlackBox.from_circuit(cn)
    verdict, _ = H.blackbox_pit_det(bb, cn.size, 1)
    assert verdict == "NONZERO"


def test_zero_circuit_budget_error():
    c = fixtures.commutator("comm", P)
    bb = BlackBox.from_circuit(c)
    with pytest.raises(EnumerationCapExceeded):
        H.blackbox_pit_det(bb, c.size, 1, budget=1000)


def test_field_too_small_for_depth2():
    c = fixtures.associator("comm", P)
    bb = BlackBox.from_circuit(c)
    with pytest.raises(FieldTooSmall):
        H.blackbox_pit_det(bb, c.size, 2)


def test_jordan_identity_hit_over_big_prime():
    proto = fixtures.jordan_identity("comm", P)
    n_z, s2 = H.derived_z_params(proto.n, proto.size, 4)
    bound = 4 * H.biwa_candidates(n_z, s2, 4, 2).max_weight_bound()
    bigp = next_prime(bound)
    c = fixtures.jordan_identity("comm", bigp)
    bb = BlackBox.from_circuit(c)
    verdict, witness = H.blackbox_pit_det(bb, c.size, 2)
    assert verdict == "NONZERO"
    assert not A.eval_circuit(c, witness).is_zero()


def test_entry_matches_phi_sum_end_to_end():
    # evaluating the circuit at structured Z points carries the degree-d'
    # z-image in entry (1, d'+1, 1) and the constant term in the scalar slot
    rng = random.Random(11)
    for trial in range(12):
        mode = "comm" if trial % 2 else "noncomm"
        c = gen_random(3, 10, 4, mode, rng.randrange(2**30), P)
        d = max(c.degree, 1)
        zvals = {(i, j, k): rng.randrange(P)
                 for i in range(1, 4) for j in range(1, d + 1) for k in range(1, d + 1)}
        pts = [A.make_Zi(i, d, zvals, P) for i in range(1, 4)]
        got = A.eval_circuit(c, pts)
        poly = O.expand(c)
        assert got.scalar == poly.const
        for dp in range(1, d + 1):
            want = 0
            for mono, coef in poly.terms.items():
                if M.degree(mono) != dp:
                    continue
                for zm, mult in M.phi_mono(M.Monomial(mono), mode, d).items():
                    term = coef * mult
                    for (i, j, k) in zm:
                        term = term * zvals[(i, j, k)] % P
                    want = (want + term) % P
            assert got.entry(1, dp + 1, 1) == want, (mode, trial, dp)


def test_completeness_chain_links():
    # nonzero f => some homogeneous component nonzero => its z-image nonzero
    # (over odd p the designation multiplicities 2^sym stay nonzero)
    rng = random.Random(21)
    nonzero_seen = 0
    for trial in range(30):
        mode = "comm" if trial % 2 else "noncomm"
        c = gen_random(2, 8, 3, mode, rng.randrange(2**30), P)
        poly = O.expand(c)
        if poly.is_zero() or poly.degree() == 0:
            continue
        nonzero_seen += 1
        d = max(c.degree, 1)
        from nacirc.circuit import homogenize

        comps = [O.expand(cc) for cc in homogenize(c, d)]
        live = [i for i in range(1, d + 1) if not comps[i].is_zero()]
        assert live, "nonzero non-constant polynomial must have a nonzero component"
        zcs = H.set_multilinearize(c, d)
        for dp in live:
            assert H.z_expand(zcs[dp - 1]), f"z-image of nonzero degree-{dp} part vanished"
    assert nonzero_seen >= 10
