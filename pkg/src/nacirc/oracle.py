"""Brute-force expansion oracle.

A Poly is an exact expansion of a circuit: a map from canonical monomial
trees to nonzero coefficients plus a constant term.  In commutative mode the
keys are the canonical commutative representatives; multiplicity comes from
iterating ordered term pairs of the bilinear product exactly once, so e.g.
the square of {x1: 1} is {x1*x1: 1}, not 2.  Every other module is tested
against these expansions.
"""

from . import algebra, monomial
from .errors import DimensionMismatch, TermCapExceeded

DEFAULT_TERM_CAP = 10**6


class Poly:
    """Exact expansion: terms maps canonical monomial node -> coeff in F_p."""

    __slots__ = ("mode", "p", "terms", "const")

    def __init__(self, mode, p, terms=None, const=0):
        self.mode = mode
        self.p = p
        self.terms = {m: c % p for m, c in (terms or {}).items() if c % p}
        self.const = const % p

    def is_zero(self):
        return self.const == 0 and not self.terms

    def degree(self):
        if self.terms:
            return max(monomial.degree(m) for m in self.terms)
        return 0

    def coeff(self, m):
        node = monomial.node_of(m)
        if self.mode == "comm":
            node = monomial.canon_node(node)
        return self.terms.get(node, 0)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.mode == self.mode
            and other.p == self.p
            and other.terms == self.terms
            and other.const == self.const
        )

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: monomial.format_node(kv[0]))
        body = " + ".join(f"{c}*{monomial.format_node(m)}" for m, c in items)
        return f"Poly({body or '0'} + {self.const})"


def _add_into(dst, src, p):
    for m, c in src.items():
        v = (dst.get(m, 0) + c) % p
        if v:
            dst[m] = v
        else:
            dst.pop(m, None)


def _poly_add(a, b):
    terms = dict(a.terms)
    _add_into(terms, b.terms, a.p)
    return Poly(a.mode, a.p, terms, a.const + b.const)


def _poly_scale(c, a):
    return Poly(a.mode, a.p, {m: co * c for m, co in a.terms.items()}, a.const * c)


def _poly_mul(a, b, max_terms):
    p = a.p
    comm = a.mode == "comm"
    terms = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            prod = (m1, m2)
            if comm:
                prod = monomial.canon_node(prod)
            v = (terms.get(prod, 0) + c1 * c2) % p
            if v:
                terms[prod] = v
            else:
                terms.pop(prod, None)
        if len(terms) > max_terms:
            raise TermCapExceeded(f"expansion exceeds {max_terms} terms")
    if b.const:
        _add_into(terms, {m: c * b.const for m, c in a.terms.items()}, p)
    if a.const:
        _add_into(terms, {m: c * a.const for m, c in b.terms.items()}, p)
    if len(terms) > max_terms:
        raise TermCapExceeded(f"expansion exceeds {max_terms} terms")
    return Poly(a.mode, p, terms, a.const * b.const)


def coeff_table(c, max_terms=DEFAULT_TERM_CAP):
    """Per-gate exact expansions; entry [output] is the circuit's expansion."""
    tables = []
    for g in c.gates:
        if g.op == "var":
            tables.append(Poly(c.mode, c.p, {g.a: 1}))
        elif g.op == "const":
            tables.append(Poly(c.mode, c.p, const=g.a))
        elif g.op == "add":
            tables.append(_poly_add(tables[g.a], tables[g.b]))
        elif g.op == "mulc":
            tables.append(_poly_scale(g.b, tables[g.a]))
        else:
            tables.append(_poly_mul(tables[g.a], tables[g.b], max_terms))
    return tables


def expand(c, max_terms=DEFAULT_TERM_CAP):
    """Exact expansion of the output gate."""
    return coeff_table(c, max_terms)[c.output]


def eval_poly_algebra(poly, points, mode=None):
    """Evaluate an expansion at algebra points: sum of coeff-scaled leafwise
    monomial products plus the constant acting on the unit coordinate."""
    mode = mode or poly.mode
    if not points:
        raise DimensionMismatch("need at least one point to size the algebra")
    d = points[0].d
    p = points[0].p
    prod = algebra.comm_eval_mul if mode == "comm" else algebra.a_mul

    def eval_node(node):
        if isinstance(node, int):
            return points[node - 1]
        return prod(eval_node(node[0]), eval_node(node[1]))

    acc = algebra.AlgebraElem(d, p, scalar=poly.const)
    for m, coef in poly.terms.items():
        acc = algebra.add_elem(acc, algebra.scale_elem(coef, eval_node(m)))
    return acc
