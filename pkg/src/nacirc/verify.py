"""Cross-algorithm verification suite.

Each check_* function exercises one acceptance criterion at the stated sizes
('full') or a reduced envelope ('small') and returns (passed, detail).
run_suite executes all of them and reports one line per criterion; the CLI
`verify` subcommand and tests/test_acceptance.py both drive this module.
"""

import math
import random
from fractions import Fraction

import numpy as np

from . import algebra, fixtures, hitting, monomial, oracle
from .circuit import Gate, gen_random
from .errors import EnumerationCapExceeded, FieldTooSmall
from .ffield import DEFAULT_MODULUS, next_prime
from .hitting import ZCircuit
from .randpit import BlackBox, empirical_failure_rate
from .whitebox import whitebox_pit

P = DEFAULT_MODULUS


def _fixture_circuits(p=P):
    out = []
    for mode in ("comm", "noncomm"):
        out += [
            fixtures.commutator(mode, p),
            fixtures.associator(mode, p),
            fixtures.jordan_identity(mode, p),
            fixtures.zero_const(mode, p),
            fixtures.linear_zero(mode, p),
            fixtures.zero_padded(fixtures.commutator, mode, p),
            fixtures.zero_padded(fixtures.associator, mode, p),
            fixtures.square(mode, p),
            fixtures.product_chain(mode, p, 3),
            fixtures.single_var(mode, p),
        ]
    return out


# --- criterion 1: whitebox verdict == oracle verdict -----------------------


def check_oracle_agreement(per_mode=1000, seed=0):
    rng = random.Random(seed)
    checked = 0

    def agree(c):
        poly = oracle.expand(c)
        verdict, witness = whitebox_pit(c)
        if verdict != ("ZERO" if poly.is_zero() else "NONZERO"):
            return False
        if verdict == "NONZERO":
            coeff = poly.const if witness is None else poly.coeff(witness)
            if coeff == 0:
                return False
        return True

    for c in _fixture_circuits():
        if not agree(c):
            return False, f"fixture disagreement ({c.mode}, size {c.size})"
        checked += 1
    for mode in ("comm", "noncomm"):
        for _ in range(per_mode):
            n = rng.randint(1, 4)
            size = rng.randint(3, 25)
            c = gen_random(n, size, 6, mode, rng.randrange(2**30), P)
            if not agree(c):
                return False, f"disagreement (mode={mode}, n={n}, size={size})"
            checked += 1
        # characteristic 2 exercises the duplicate-split handling: the
        # uncorrected two-term product rule zeroes every square here
        for _ in range(max(20, per_mode // 20)):
            c = gen_random(rng.randint(1, 3), rng.randint(3, 15), 5, mode, rng.randrange(2**30), 2)
            if not agree(c):
                return False, f"disagreement over F_2 (mode={mode})"
            checked += 1
    return True, f"{checked} circuits, verdicts identical"


# --- criterion 2: tensor entry formulas ------------------------------------


def _all_trees(deg, n):
    if deg == 1:
        return [i for i in range(1, n + 1)]
    out = []
    for split in range(1, deg):
        for left in _all_trees(split, n):
            for right in _all_trees(deg - split, n):
                out.append((left, right))
    return out


def _closed_form_entries(node, zvals, d, p):
    code = monomial.encode(node)
    dp = len(code.sigma)
    depth = max(code.levels)
    out = {}
    for k1 in range(1, d - dp + 2):
        for k2 in range(1, d - depth + 2):
            v = 1
            for t in range(dp):
                v = v * zvals[(code.sigma[t], t + k1, code.levels[t] + k2 - 1)] % p
            out[(k1, k1 + dp, k2)] = v
    return out


def _phi_eval(node, zvals, d, p, mode):
    if isinstance(node, int):
        return algebra.make_Zi(node, d, zvals, p)
    le = _phi_eval(node[0], zvals, d, p, mode)
    ri = _phi_eval(node[1], zvals, d, p, mode)
    return algebra.c_mul(le, ri) if mode == "comm" else algebra.aprime_mul(le, ri)


def check_entry_formulas(deg_max=4, n=3, assignments=5, seed=0):
    rng = random.Random(seed)
    d = deg_max
    p = P
    noncomm = []
    for deg in range(1, deg_max + 1):
        noncomm += _all_trees(deg, n)
    comm = sorted(
        {monomial.canon_node(t) for t in noncomm}, key=monomial.format_node
    )
    checked = 0
    for mode, pool in (("noncomm", noncomm), ("comm", comm)):
        for node in pool:
            for _ in range(assignments):
                zvals = {
                    (i, j, k): rng.randrange(p)
                    for i in range(1, n + 1)
                    for j in range(1, d + 1)
                    for k in range(1, d + 1)
                }
                got = _phi_eval(node, zvals, d, p, mode)
                if mode == "noncomm":
                    want = _closed_form_entries(node, zvals, d, p)
                else:
                    want = {}
                    for v, count in monomial.comm_variants_mult(node).items():
                        for key, val in _closed_form_entries(v, zvals, d, p).items():
                            want[key] = (want.get(key, 0) + count * val) % p
                for i in range(1, d + 2):
                    for j in range(1, d + 2):
                        for k in range(1, d + 1):
                            if got.entry(i, j, k) != want.get((i, j, k), 0):
                                return False, f"entry ({i},{j},{k}) wrong for {monomial.format_node(node)} [{mode}]"
                if got.scalar != 0:
                    return False, "nonzero scalar coordinate"
                checked += 1
    return True, f"{len(noncomm)}+{len(comm)} monomials x {assignments} assignments, all entries exact"


# --- criterion 3: Schwartz-Zippel style bound -------------------------------


def _sz_corpus():
    per_degree = {2: [], 3: [], 4: []}
    for mode in ("comm", "noncomm"):
        per_degree[2].append(fixtures.square(mode))
        per_degree[3].append(fixtures.associator(mode))
        per_degree[3].append(fixtures.product_chain(mode, P, 3))
        per_degree[4].append(fixtures.jordan_identity(mode))
    zeros = [
        fixtures.commutator("comm"),
        fixtures.zero_const("comm"),
        fixtures.zero_padded(fixtures.commutator, "comm"),
        fixtures.linear_zero("noncomm"),
    ]
    return per_degree, zeros


def check_sz_bound(trials=10000, seed=0):
    per_degree, zeros = _sz_corpus()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for d, circuits in per_degree.items():
        S = range(100 * d)
        q = Fraction(d, 100 * d)
        sigma = math.sqrt(float(q) * (1 - float(q)) / trials)
        for c in circuits:
            if oracle.expand(c).is_zero():
                return False, "corpus circuit unexpectedly zero"
            bb = BlackBox.from_circuit(c, d=d)
            rate, bound = empirical_failure_rate(bb, S, trials, rng)
            if float(rate) > float(bound) + 3 * sigma:
                return False, f"rate {float(rate):.4f} above bound {float(bound):.4f}+3s (d={d}, {c.mode})"
            worst = max(worst, float(rate))
    for c in zeros:
        bb = BlackBox.from_circuit(c, d=max(c.degree, 1))
        rate, _ = empirical_failure_rate(bb, range(100 * max(c.degree, 1) + 1), trials, rng)
        if rate != 1:
            return False, "zero polynomial evaluated nonzero"
    return True, f"worst nonzero-circuit zero-rate {worst:.5f} <= 1% + 3 sigma; zero circuits 100% zero"


# --- criterion 4: monomial code round trip ----------------------------------


def check_monomial_codes(deg_exhaustive=5, n=3, samples=10000, deg_sampled=8, seed=0):
    rng = random.Random(seed)
    codes = {}
    count = 0
    for deg in range(1, deg_exhaustive + 1):
        for node in _all_trees(deg, n):
            code = monomial.encode(node)
            back = monomial.decode(code)
            if back.node != node:
                return False, f"round trip failed for {monomial.format_node(node)}"
            key = (code.sigma, code.levels)
            if key in codes:
                return False, f"encode collision {key}"
            codes[key] = node
            count += 1

    def rand_tree(deg):
        if deg == 1:
            return rng.randrange(1, n + 1)
        split = rng.randrange(1, deg)
        return (rand_tree(split), rand_tree(deg - split))

    for _ in range(samples):
        node = rand_tree(rng.randrange(1, deg_sampled + 1))
        if monomial.decode(monomial.encode(node)).node != node:
            return False, "sampled round trip failed"
    return True, f"{count} exhaustive + {samples} sampled codes, injective and invertible"


# --- criterion 5: set-multilinearization -------------------------------------


def check_set_mult(circuits=50, seed=0):
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < circuits:
        attempts += 1
        if attempts > 50 * circuits:
            return False, "could not sample enough circuits"
        mode = ("comm", "noncomm")[attempts % 2]
        c = gen_random(rng.randint(1, 3), rng.randint(3, 10), 4, mode, rng.randrange(2**30), P)
        if c.product_depth > 3:
            continue
        d = max(c.degree, 1)
        poly = oracle.expand(c)
        zcs = hitting.set_multilinearize(c, d)
        for dp in range(1, d + 1):
            zc = zcs[dp - 1]
            got = hitting.z_expand(zc)
            want = {}
            for mono, coef in poly.terms.items():
                if monomial.degree(mono) != dp:
                    continue
                for zm, mult in monomial.phi_mono(monomial.Monomial(mono), mode, d).items():
                    flat = tuple(sorted(hitting.z_index(i, j, k, d) for (i, j, k) in zm))
                    v = (want.get(flat, 0) + coef * mult) % P
                    if v:
                        want[flat] = v
                    else:
                        want.pop(flat, None)
            if got != want:
                return False, f"z-expansion mismatch (mode={mode}, degree {dp})"
            if zc.size > 3 * d**4 * c.size:
                return False, f"size {zc.size} exceeds 3*d^4*s"
            if zc.product_depth > c.product_depth:
                return False, "product depth grew"
            if not hitting.is_unambiguous(zc):
                return False, "ambiguous output circuit"
        done += 1
    return True, f"{done} circuits: expansions match, size <= 3d^4 s, depth preserved, unambiguous"


# --- criterion 6: Kronecker separation ---------------------------------------


def _monos_upto(n_z, d):
    out = []

    def rec(var, current):
        if var > n_z:
            out.append(tuple(current))
            return
        for e in range(d + 1):
            rec(var + 1, current + [var] * e)

    rec(1, [])
    return out


def check_kronecker(sample_sets=100, seed=0):
    import itertools

    fam = hitting.KroneckerFamily(3, 3, 2)
    members = list(fam)
    bound = fam.weight_bound()
    for w in members:
        if any(v >= bound for v in w.weights):
            return False, "weight range violated"
    monos = _monos_upto(3, 2)
    for size in (1, 2, 3):
        for A in itertools.combinations(monos, size):
            if not any(len({w.of_mono(m) for m in A}) == size for w in members):
                return False, f"unseparated set {A}"
    rng = random.Random(seed)
    fam2 = hitting.KroneckerFamily(6, 4, 3)
    for _ in range(sample_sets):
        A = set()
        while len(A) < 4:
            mono = []
            for v in range(1, 7):
                mono += [v] * rng.randint(0, 3)
            A.add(tuple(mono))
        if not any(len({w.of_mono(m) for m in A}) == 4 for w in fam2):
            return False, f"unseparated sampled set {sorted(A)}"
    return True, f"exhaustive <=3-sets over (3,3,2) and {sample_sets} sampled 4-sets over (6,4,3) separated"


# --- criterion 7: BIWA existence and soundness -------------------------------


def _biwa_corpus(p=P):
    zc = []

    def z(nz, gates, out=None):
        zc.append(ZCircuit(nz, p, gates, len(gates) - 1 if out is None else out))

    g = Gate
    z(1, [g("var", 1)])
    z(2, [g("var", 1), g("var", 2), g("add", 0, 1)])
    z(2, [g("var", 1), g("var", 2), g("mul", 0, 1)])
    z(3, [g("var", 1), g("var", 2), g("var", 3), g("mul", 0, 1), g("add", 3, 2)])
    z(3, [g("var", 1), g("var", 2), g("var", 3), g("mul", 0, 1), g("mul", 3, 2)])
    z(4, [g("var", 1), g("var", 2), g("var", 3), g("var", 4),
          g("mul", 0, 1), g("mul", 2, 3), g("add", 4, 5)])
    z(4, [g("var", 1), g("var", 2), g("var", 3), g("var", 4),
          g("add", 0, 1), g("add", 2, 3), g("mul", 4, 5)])
    z(2, [g("var", 1), g("var", 2), g("mul", 0, 1), g("mulc", 2, 5), g("add", 3, 1)])
    z(3, [g("var", 1), g("var", 2), g("var", 3), g("add", 0, 1), g("mul", 3, 2)])
    z(1, [g("var", 1), g("mul", 0, 0)])
    z(2, [g("var", 1), g("var", 2), g("mul", 0, 0), g("add", 2, 1)])
    z(3, [g("var", 1), g("var", 2), g("var", 3), g("mul", 0, 1), g("mul", 2, 2), g("add", 3, 4)])
    # product depth 2, kept tiny so the candidate space stays scannable
    z(2, [g("var", 1), g("var", 2), g("mul", 0, 1), g("mul", 2, 2)])
    z(2, [g("var", 1), g("var", 2), g("mul", 0, 1), g("mul", 2, 1)])
    # set-multilinearized images are unambiguous by construction
    for mode in ("comm", "noncomm"):
        c = fixtures.square(mode, p)
        zc.append(hitting.set_multilinearize(c, c.degree)[c.degree - 1])
        c = fixtures.commutator("noncomm", p)
        zc.append(hitting.set_multilinearize(c, c.degree)[c.degree - 1])
        b_single = fixtures.single_var(mode, p, n=2)
        zc.append(hitting.set_multilinearize(b_single, 1)[0])
    return zc


def check_biwa(scan_cap=4000, seed=0):
    corpus = [zc for zc in _biwa_corpus() if hitting.z_expand(zc)]
    if len(corpus) < 20:
        return False, f"corpus too small ({len(corpus)})"
    for zc in corpus:
        if not hitting.is_unambiguous(zc):
            return False, "corpus circuit not unambiguous"
        found = None
        tried = 0
        for cand in hitting.biwa_candidates(zc.nz, zc.size, max(zc.degree, 1), zc.product_depth, budget=scan_cap):
            tried += 1
            if hitting.verify_biwa(cand.w, zc):
                found = cand
                break
            if tried >= scan_cap:
                break
        if found is None:
            return False, f"no BIWA candidate verified within {scan_cap} (nz={zc.nz}, s={zc.size})"
        uni = hitting.biwa_univariate(found.w, zc)
        expansion = hitting.z_expand(zc)
        if bool(uni) != bool(expansion):
            return False, "t-substitution killed a nonzero circuit"
    # degenerate weights on independent same-weight coefficients must fail
    bad = hitting.WeightAssignment((1, 1))
    zc2 = ZCircuit(2, P, [Gate("var", 1), Gate("var", 2)], 1)
    if hitting.verify_biwa(bad, zc2):
        return False, "degenerate assignment accepted"
    return True, f"{len(corpus)} circuits: candidate found and t-map sound; degenerate case rejected"


# --- criterion 8: end-to-end hitting -----------------------------------------


def _big_prime_for(proto, d, delta):
    cands = hitting.biwa_candidates(*hitting.derived_z_params(proto.n, proto.size, d), d, delta)
    return next_prime(d * cands.max_weight_bound())


def _e2e_nonzero_instances():
    out = []
    for mode in ("comm", "noncomm"):
        out.append((fixtures.single_var(mode, P), 0, P))
        out.append((fixtures.square(mode, P), 1, P))
    out.append((fixtures.commutator("noncomm", P), 1, P))
    # product depth 2 / degree 3 instances need p > d * max candidate weight
    for mode in ("comm", "noncomm"):
        bigp = _big_prime_for(fixtures.associator(mode, P), 3, 2)
        out.append((fixtures.associator(mode, bigp), 2, bigp))
        bigp = _big_prime_for(fixtures.product_chain(mode, P, 3), 3, 2)
        out.append((fixtures.product_chain(mode, bigp, 3), 2, bigp))
    return out


def check_hitting_e2e(seed=0, prefix_points=200, small=False):
    instances = _e2e_nonzero_instances()
    if small:
        instances = instances[:4] + instances[-1:]
    for c, delta, p in instances:
        if oracle.expand(c).is_zero():
            return False, "expected nonzero corpus circuit"
        wb, _ = whitebox_pit(c)
        bb = BlackBox.from_circuit(c)
        verdict, witness = hitting.blackbox_pit_det(bb, c.size, delta)
        if verdict != "NONZERO" or wb != "NONZERO":
            return False, f"nonzero instance not hit (mode={c.mode}, delta={delta})"
        if algebra.eval_circuit(c, witness).is_zero():
            return False, "witness point does not witness"
    # zero circuits with conclusive verdicts
    for c, d in ((fixtures.zero_const("comm", P), 0), (fixtures.linear_zero("comm", P), 1),
                 (fixtures.linear_zero("noncomm", P), 1)):
        bb = BlackBox.from_circuit(c, d=d)
        verdict, _ = hitting.blackbox_pit_det(bb, c.size, 0)
        wb, _ = whitebox_pit(c)
        if verdict != "ZERO" or wb != "ZERO":
            return False, "zero instance not recognized"
    # zero circuit at d=2: full family exceeds any budget -> explicit error,
    # and every enumerated prefix point evaluates to zero
    c = fixtures.commutator("comm", P)
    bb = BlackBox.from_circuit(c)
    try:
        hitting.blackbox_pit_det(bb, c.size, 1, budget=4000)
        return False, "expected EnumerationCapExceeded on zero instance"
    except EnumerationCapExceeded:
        pass
    count = 0
    for _, _, pts in hitting.iter_hitting_points_nonassoc(c.n, c.size, 2, 1, "comm", P):
        if not algebra.eval_circuit(c, pts).is_zero():
            return False, "zero circuit hit by a point"
        count += 1
        if count >= prefix_points:
            break
    # default field is honestly too small for depth-2 composed weights
    ca = fixtures.associator("comm", P)
    try:
        hitting.blackbox_pit_det(BlackBox.from_circuit(ca), ca.size, 2)
        return False, "expected FieldTooSmall at default modulus"
    except FieldTooSmall:
        pass
    return True, f"nonzero instances hit, zero prefixes ({prefix_points} pts) all zero, caps/field errors explicit"


# --- criterion 9: cross-evaluator consistency --------------------------------


def check_cross_evaluator(tuples_per_circuit=10, seed=0, extra_random=10):
    rng = np.random.default_rng(seed)
    pyrng = random.Random(seed)
    corpus = _fixture_circuits()
    for mode in ("comm", "noncomm"):
        for _ in range(extra_random):
            corpus.append(gen_random(pyrng.randint(1, 3), pyrng.randint(3, 15), 4, mode,
                                     pyrng.randrange(2**30), P))
    for c in corpus:
        if c.n == 0:
            continue
        poly = oracle.expand(c)
        d = max(c.degree, 1)
        for _ in range(tuples_per_circuit):
            pts = [algebra.random_elem(d, range(P), rng, P) for _ in range(c.n)]
            if algebra.eval_circuit(c, pts) != oracle.eval_poly_algebra(poly, pts):
                return False, f"evaluator mismatch (mode={c.mode}, size={c.size})"
    return True, f"{len(corpus)} circuits x {tuples_per_circuit} tuples agree exactly"


# --- suite -------------------------------------------------------------------

CRITERIA = [
    ("1 oracle-agreement", check_oracle_agreement, {"full": {"per_mode": 1000}, "small": {"per_mode": 100}}),
    ("2 entry-formulas", check_entry_formulas, {"full": {}, "small": {"assignments": 2}}),
    ("3 sz-bound", check_sz_bound, {"full": {"trials": 10000}, "small": {"trials": 2000}}),
    ("4 monomial-codes", check_monomial_codes, {"full": {}, "small": {"samples": 2000, "deg_exhaustive": 4}}),
    ("5 set-multilinearization", check_set_mult, {"full": {"circuits": 50}, "small": {"circuits": 12}}),
    ("6 kronecker-separation", check_kronecker, {"full": {"sample_sets": 100}, "small": {"sample_sets": 20}}),
    ("7 biwa", check_biwa, {"full": {}, "small": {"scan_cap": 2000}}),
    ("8 hitting-end-to-end", check_hitting_e2e, {"full": {}, "small": {"small": True}}),
    ("9 cross-evaluator", check_cross_evaluator, {"full": {}, "small": {"tuples_per_circuit": 3, "extra_random": 4}}),
]


def run_suite(corpus="small", seed=1, report=print):
    """Run every criterion; returns True iff all pass."""
    all_ok = True
    results = []
    for name, fn, params in CRITERIA:
        kwargs = dict(params[corpus])
        kwargs["seed"] = seed
        ok, detail = fn(**kwargs)
        all_ok &= ok
        results.append({"criterion": name, "passed": ok, "detail": detail})
        report(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return all_ok, results
