"""Deterministic white-box PIT via per-gate coefficient vectors.

For each degree j we maintain a set M_j of monomials whose coefficient
vectors v_m (indexed by gates) span the coefficient vectors of all degree-j
monomials.  Degree-(j>=2) candidates are products of basis monomials from
lower levels, filled gate by gate:

* leaf: 0
* scalar gate: constant times the child entry
* sum gate: sum of child entries
* product gate g = g1 x g2, with m splitting at the root as m1*m2:
    comm, m1 != m2:  v_m1(g1) v_m2(g2) + v_m2(g1) v_m1(g2)
                     + v_m(g1) v_1(g2) + v_1(g1) v_m(g2)
    comm, m1 == m2:  v_m1(g1) v_m1(g2) + v_m(g1) v_1(g2) + v_1(g1) v_m(g2)
    noncomm:         v_m1(g1) v_m2(g2) + v_m(g1) v_1(g2) + v_1(g1) v_m(g2)

The m1 == m2 case uses a single cross term: the bilinear product generates
the square split exactly once (x1*x1 has coefficient 1 at a gate squaring
x1), and the two-term form would double it.  v_1 is the per-gate constant
term.  The circuit is zero iff no retained basis vector has a nonzero output
coordinate.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import monomial
from .ffield import span_reducer


@dataclass
class SpanLevel:
    degree: int
    monomials: list  # canonical monomial nodes (None for the empty monomial)
    vectors: list  # aligned coefficient vectors, linearly independent


def _const_vector(c):
    p = c.p
    v = []
    for g in c.gates:
        if g.op == "var":
            v.append(0)
        elif g.op == "const":
            v.append(g.a % p)
        elif g.op == "add":
            v.append((v[g.a] + v[g.b]) % p)
        elif g.op == "mulc":
            v.append(v[g.a] * g.b % p)
        else:
            v.append(v[g.a] * v[g.b] % p)
    return v


def _var_vector(c, i, v_one):
    p = c.p
    v = []
    for g in c.gates:
        if g.op == "var":
            v.append(1 if g.a == i else 0)
        elif g.op == "const":
            v.append(0)
        elif g.op == "add":
            v.append((v[g.a] + v[g.b]) % p)
        elif g.op == "mulc":
            v.append(v[g.a] * g.b % p)
        else:
            v.append((v[g.a] * v_one[g.b] + v_one[g.a] * v[g.b]) % p)
    return v


def _product_vector(c, v1, v2, same_factor, v_one):
    p = c.p
    comm = c.mode == "comm"
    v = []
    for g in c.gates:
        if g.op in ("var", "const"):
            v.append(0)
        elif g.op == "add":
            v.append((v[g.a] + v[g.b]) % p)
        elif g.op == "mulc":
            v.append(v[g.a] * g.b % p)
        else:
            t = v1[g.a] * v2[g.b]
            if comm and not same_factor:
                t += v2[g.a] * v1[g.b]
            t += v[g.a] * v_one[g.b] + v_one[g.a] * v[g.b]
            v.append(t % p)
    return v


def build_levels(c):
    """Spanning levels for degrees 0..deg(c); returns (levels, v_one)."""
    ctx = c.ctx
    s = c.size
    d = c.degree
    comm = c.mode == "comm"
    v_one = _const_vector(c)

    levels = []
    red0 = span_reducer(ctx, s)
    if red0.add(v_one):
        levels.append(SpanLevel(0, [None], [list(v_one)]))
    else:
        levels.append(SpanLevel(0, [], []))

    if d >= 1:
        mons = []
        vecs = []
        red = span_reducer(ctx, s)
        for i in range(1, c.n + 1):
            v = _var_vector(c, i, v_one)
            if red.add(v):
                mons.append(i)
                vecs.append(v)
        levels.append(SpanLevel(1, mons, vecs))

    vec_of = {}  # canonical node -> vector, for retained basis monomials
    for lvl in levels[1:]:
        vec_of.update(zip(lvl.monomials, lvl.vectors))

    for j in range(2, d + 1):
        mons = []
        vecs = []
        red = span_reducer(ctx, s)
        seen = set()
        if comm:
            splits = [(i, j - i) for i in range(1, j // 2 + 1)]
        else:
            splits = [(i, j - i) for i in range(1, j)]
        for i, k in splits:
            Mi, Mk = levels[i].monomials, levels[k].monomials
            if comm and i == k:
                pair_list = [
                    (Mi[a], Mi[b]) for a, b in combinations_with_replacement(range(len(Mi)), 2)
                ]
            else:
                pair_list = [(m1, m2) for m1 in Mi for m2 in Mk]
            for m1, m2 in pair_list:
                prod = (m1, m2)
                if comm:
                    prod = monomial.canon_node(prod)
                if prod in seen:
                    continue
                seen.add(prod)
                v = _product_vector(c, vec_of[m1], vec_of[m2], m1 == m2, v_one)
                if red.add(v):
                    mons.append(prod)
                    vecs.append(v)
                    vec_of[prod] = v
        levels.append(SpanLevel(j, mons, vecs))
    return levels, v_one


def whitebox_pit(c):
    """Returns ("ZERO", None) or ("NONZERO", witness monomial node)."""
    levels, _ = build_levels(c)
    out = c.output
    for lvl in levels:
        for m, v in zip(lvl.monomials, lvl.vectors):
            if v[out]:
                return "NONZERO", m
    return "ZERO", None
