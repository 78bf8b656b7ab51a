"""Free nonassociative monomials as full binary trees.

A monomial is a nested structure: a leaf is a positive variable index (int),
an internal node is a pair (left, right).  The literal syntax used by the CLI
and by fixtures writes ((x1*x2)*x3) as ``((1 2) 3)``.

A monomial of degree d is determined by its left-to-right variable order
together with the levels (root = level 1) at which the variables sit; this
module implements that code, its inverse reconstruction, the canonical
commutative representative, and the position/level z-variable substitution
used for set-multilinearization.
"""

from dataclasses import dataclass

from .errors import CapExceeded, DegreeExceeded, InvalidCode

ORDERS_CAP = 12  # default degree cap for enumerating commutative orders


def node_of(m):
    return m.node if isinstance(m, Monomial) else m


def degree(node):
    if isinstance(node, int):
        return 1
    return degree(node[0]) + degree(node[1])


def depth(node):
    if isinstance(node, int):
        return 1
    return 1 + max(depth(node[0]), depth(node[1]))


def format_node(node):
    if isinstance(node, int):
        return str(node)
    return f"({format_node(node[0])} {format_node(node[1])})"


def parse_literal(text):
    """Parse the ``((1 2) 3)`` literal syntax into a node."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of monomial literal")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            left = expr()
            right = expr()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected ')' in monomial literal")
            pos += 1
            return (left, right)
        if tok == ")":
            raise ValueError("unexpected ')' in monomial literal")
        idx = int(tok)
        if idx < 1:
            raise ValueError(f"variable index must be >= 1, got {idx}")
        return idx

    out = expr()
    if pos != len(tokens):
        raise ValueError("trailing tokens in monomial literal")
    return out


class Monomial:
    """Immutable full-binary-tree monomial."""

    __slots__ = ("node", "degree", "depth")

    def __init__(self, node):
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "degree", degree(node))
        object.__setattr__(self, "depth", depth(node))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def parse(cls, text):
        return cls(parse_literal(text))

    @classmethod
    def var(cls, i):
        return cls(i)

    @classmethod
    def mul(cls, a, b):
        return cls((node_of(a), node_of(b)))

    def __str__(self):
        return format_node(self.node)

    def __repr__(self):
        return f"Monomial({format_node(self.node)})"

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.node == self.node

    def __hash__(self):
        return hash(self.node)


@dataclass(frozen=True)
class MonomialCode:
    """Left-to-right variable order plus per-variable levels."""

    sigma: tuple
    levels: tuple


def encode(m):
    """The (order, levels) code: in-order leaves and their 1-based levels."""
    sigma = []
    levels = []

    def walk(node, level):
        if isinstance(node, int):
            sigma.append(node)
            levels.append(level)
        else:
            walk(node[0], level + 1)
            walk(node[1], level + 1)

    walk(node_of(m), 1)
    return MonomialCode(tuple(sigma), tuple(levels))


class _Node:
    __slots__ = ("left", "right", "parent", "level", "label")

    def __init__(self, parent, level):
        self.left = None
        self.right = None
        self.parent = parent
        self.level = level
        self.label = None


def decode(code):
    """Reconstruct the unique monomial with the given code.

    Follows the iterative reconstruction: descend a left-edge path of length
    levels[0]-1, then for each later variable attach a right child at the
    nearest ancestor of the previous leaf that has only a left child,
    extending with left edges down to the stated level.
    """
    sigma, levels = code.sigma, code.levels
    if len(sigma) != len(levels) or not sigma:
        raise InvalidCode("order and level sequences must be nonempty and equal-length")
    root = _Node(None, 1)

    def left_path(node, target_level):
        while node.level < target_level:
            node.left = _Node(node, node.level + 1)
            node = node.left
        return node

    if levels[0] < 1:
        raise InvalidCode("levels are 1-based")
    leaf = left_path(root, levels[0])
    leaf.label = sigma[0]
    for t in range(1, len(sigma)):
        v = leaf.parent
        while v is not None and v.right is not None:
            v = v.parent
        if v is None:
            raise InvalidCode(f"no attachment point for variable at position {t + 1}")
        if levels[t] < v.level + 1:
            raise InvalidCode(f"level {levels[t]} at position {t + 1} is too shallow")
        v.right = _Node(v, v.level + 1)
        leaf = left_path(v.right, levels[t])
        leaf.label = sigma[t]

    def freeze(node):
        if node.label is not None:
            return node.label
        if node.left is None or node.right is None:
            raise InvalidCode("reconstruction left a node with a single child")
        return (freeze(node.left), freeze(node.right))

    return Monomial(freeze(root))


def canon_comm(m):
    """Canonical representative of the commutative equivalence class.

    At every internal node the child with the lexicographically smaller
    serialization goes left; equal commutative monomials and only those get
    identical canonical trees.
    """
    def canon(node):
        if isinstance(node, int):
            return node, str(node)
        ln, lk = canon(node[0])
        rn, rk = canon(node[1])
        if lk <= rk:
            return (ln, rn), f"({lk} {rk})"
        return (rn, ln), f"({rk} {lk})"

    return Monomial(canon(node_of(m))[0])


def canon_node(node):
    return canon_comm(node).node


def comm_variants(m, cap=ORDERS_CAP):
    """All noncommutative monomials in m's commutative class (the class M_m),
    i.e. every distinct tree reachable by swapping children."""
    node = node_of(m)
    if degree(node) > cap:
        raise CapExceeded(f"degree {degree(node)} exceeds enumeration cap {cap}")

    def variants(nd):
        if isinstance(nd, int):
            return {nd}
        out = set()
        for a in variants(nd[0]):
            for b in variants(nd[1]):
                out.add((a, b))
                out.add((b, a))
        return out

    return variants(node)


def orders(m, cap=ORDERS_CAP):
    """The set of left-to-right variable orders over all child designations."""
    return {encode(v).sigma for v in comm_variants(m, cap)}


def comm_variants_mult(m, cap=ORDERS_CAP):
    """Class members with designation multiplicities: tree -> number of
    left/right designations of m producing it (2^sym collapsing at nodes with
    identical subtrees); counts sum to 2^(internal nodes)."""
    node = node_of(m)
    if degree(node) > cap:
        raise CapExceeded(f"degree {degree(node)} exceeds enumeration cap {cap}")

    def variants(nd):
        if isinstance(nd, int):
            return {nd: 1}
        out = {}
        for a, ca in variants(nd[0]).items():
            for b, cb in variants(nd[1]).items():
                out[(a, b)] = out.get((a, b), 0) + ca * cb
                out[(b, a)] = out.get((b, a), 0) + ca * cb
        return out

    return variants(node)


def phi_mono(m, mode, d):
    """Image of the monomial under the position/level z-substitution.

    Returns a dict mapping z-monomials to integer coefficients, where a
    z-monomial is a sorted tuple of (i, j, k) index triples (variable i at
    position j, level k).  Noncommutative monomials map to a single
    coefficient-1 z-monomial.  Commutative monomials map to the sum over all
    child designations, so a node with two identical subtrees contributes its
    z-monomial with multiplicity 2; this is what the anticommutator product
    actually produces (x*x evaluates to twice the body square), so these are
    the coefficients the set-multilinearized circuits compute.
    """
    node = node_of(m)
    d_prime = degree(node)
    if d_prime > d:
        raise DegreeExceeded(f"monomial degree {d_prime} exceeds bound {d}")
    if mode == "noncomm":
        variants = {node: 1}
    elif mode == "comm":
        variants = comm_variants_mult(node)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = {}
    for v, count in sorted(variants.items(), key=lambda kv: format_node(kv[0])):
        code = encode(v)
        zmono = tuple(sorted((code.sigma[t], t + 1, code.levels[t]) for t in range(d_prime)))
        out[zmono] = out.get(zmono, 0) + count
    return out
