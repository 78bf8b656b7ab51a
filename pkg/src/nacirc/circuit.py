"""Circuit IR for nonassociative arithmetic circuits.

Gates are stored pre-topologically-sorted (every child id is smaller than its
parent's id); the ``nacirc v1`` text format mirrors that order and the parser
rejects forward references instead of re-sorting, which keeps serialization
canonical.  Product gates have fan-in 2; in noncommutative mode the operand
order is significant.  ``mulc`` is a scalar-action gate: it scales its child
by a field constant without counting as a product gate.
"""

import random
from dataclasses import dataclass

from . import monomial
from .errors import (
    BadMode,
    BadReference,
    CapExceeded,
    CycleError,
    DegreeExceeded,
    NotPrime,
    ParseError,
)
from .ffield import DEFAULT_MODULUS, FieldContext

MODES = ("comm", "noncomm")


@dataclass(frozen=True)
class Gate:
    op: str  # var | const | add | mul | mulc
    a: int = 0  # var index / const value / left child / child
    b: int = 0  # right child / mulc constant


class Circuit:
    """Validated nonassociative circuit over F_p."""

    def __init__(self, mode, p, n, gates, output):
        if mode not in MODES:
            raise BadMode(f"mode must be comm or noncomm, got {mode!r}")
        self.mode = mode
        self.ctx = FieldContext(p)  # raises NotPrime
        self.p = p
        self.n = n
        self.gates = list(gates)
        self.output = output
        self._validate()
        self._analyze()

    def _validate(self):
        if self.n < 0:
            raise ParseError(0, "nvars must be nonnegative")
        for gid, g in enumerate(self.gates):
            if g.op == "var":
                if not 1 <= g.a <= self.n:
                    raise BadReference(f"gate {gid}: variable index {g.a} out of range")
            elif g.op == "const":
                if not 0 <= g.a < self.p:
                    raise BadReference(f"gate {gid}: constant out of range")
            elif g.op in ("add", "mul"):
                for child in (g.a, g.b):
                    if child == gid:
                        raise CycleError(f"gate {gid} references itself")
                    if child > gid or child < 0:
                        raise BadReference(f"gate {gid} references undefined gate {child}")
            elif g.op == "mulc":
                if g.a == gid:
                    raise CycleError(f"gate {gid} references itself")
                if g.a > gid or g.a < 0:
                    raise BadReference(f"gate {gid} references undefined gate {g.a}")
                if not 0 <= g.b < self.p:
                    raise BadReference(f"gate {gid}: constant out of range")
            else:
                raise BadMode(f"gate {gid}: unknown op {g.op!r}")
        if not 0 <= self.output < len(self.gates):
            raise BadReference(f"output {self.output} is not a gate id")

    def _analyze(self):
        deg = []
        pdepth = []
        for g in self.gates:
            if g.op == "var":
                deg.append(1)
                pdepth.append(0)
            elif g.op == "const":
                deg.append(0)
                pdepth.append(0)
            elif g.op == "add":
                deg.append(max(deg[g.a], deg[g.b]))
                pdepth.append(max(pdepth[g.a], pdepth[g.b]))
            elif g.op == "mul":
                deg.append(deg[g.a] + deg[g.b])
                pdepth.append(1 + max(pdepth[g.a], pdepth[g.b]))
            else:  # mulc: scalar action, no product depth
                deg.append(deg[g.a])
                pdepth.append(pdepth[g.a])
        self.syn_deg = deg
        self.prod_depth = pdepth

    @property
    def size(self):
        return len(self.gates)

    @property
    def degree(self):
        return self.syn_deg[self.output]

    @property
    def product_depth(self):
        return self.prod_depth[self.output]

    def serialize(self):
        lines = [
            "nacirc v1",
            f"mode {self.mode}",
            f"field {self.p}",
            f"nvars {self.n}",
        ]
        for gid, g in enumerate(self.gates):
            if g.op == "var":
                lines.append(f"gate {gid} var {g.a}")
            elif g.op == "const":
                lines.append(f"gate {gid} const {g.a}")
            elif g.op in ("add", "mul"):
                lines.append(f"gate {gid} {g.op} {g.a} {g.b}")
            else:
                lines.append(f"gate {gid} mulc {g.a} {g.b}")
        lines.append(f"output {self.output}")
        return "\n".join(lines) + "\n"


def parse(text):
    """Parse the ``nacirc v1`` format; see the format notes in the README."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            records.append((lineno, line))
    if not records:
        raise ParseError(1, "empty file")

    def expect(i, what):
        if i >= len(records):
            raise ParseError(records[-1][0], f"missing {what}")
        return records[i]

    lineno, line = expect(0, "header")
    if line != "nacirc v1":
        raise ParseError(lineno, f"expected 'nacirc v1', got {line!r}")

    lineno, line = expect(1, "mode")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "mode":
        raise ParseError(lineno, "expected 'mode comm|noncomm'")
    mode = parts[1]
    if mode not in MODES:
        raise BadMode(f"line {lineno}: unknown mode {mode!r}")

    lineno, line = expect(2, "field")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "field" or not parts[1].isdigit():
        raise ParseError(lineno, "expected 'field <p>'")
    p = int(parts[1])

    lineno, line = expect(3, "nvars")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "nvars" or not parts[1].isdigit():
        raise ParseError(lineno, "expected 'nvars <n>'")
    n = int(parts[1])

    gates = []
    output = None
    for lineno, line in records[4:]:
        parts = line.split()
        if parts[0] == "output":
            if output is not None:
                raise ParseError(lineno, "duplicate output line")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(lineno, "expected 'output <id>'")
            output = int(parts[1])
            continue
        if output is not None:
            raise ParseError(lineno, "records after output line")
        if parts[0] != "gate" or len(parts) < 3 or not parts[1].isdigit():
            raise ParseError(lineno, "expected 'gate <id> <op> ...'")
        gid = int(parts[1])
        if gid != len(gates):
            if gid > len(gates):
                raise BadReference(f"line {lineno}: gate id {gid} out of order")
            raise ParseError(lineno, f"duplicate gate id {gid}")
        op = parts[2]
        args = parts[3:]
        try:
            if op == "var":
                (i,) = map(int, args)
                gate = Gate("var", i)
            elif op == "const":
                (c,) = map(int, args)
                gate = Gate("const", c % p if p > 1 else c)
            elif op in ("add", "mul"):
                l, r = map(int, args)
                gate = Gate(op, l, r)
            elif op == "mulc":
                ch, c = map(int, args)
                gate = Gate("mulc", ch, c % p if p > 1 else c)
            else:
                raise ParseError(lineno, f"unknown gate op {op!r}")
        except ValueError:
            raise ParseError(lineno, f"bad arguments for {op!r}") from None
        for child in _children(gate):
            if child == gid:
                raise CycleError(f"line {lineno}: gate {gid} references itself")
            if child > gid:
                raise BadReference(f"line {lineno}: gate {gid} references gate {child} before definition")
        gates.append(gate)
    if output is None:
        raise ParseError(records[-1][0], "missing output line")
    try:
        return Circuit(mode, p, n, gates, output)
    except NotPrime:
        raise ParseError(1, f"field {p} is not prime") from None


def _children(g):
    if g.op in ("add", "mul"):
        return (g.a, g.b)
    if g.op == "mulc":
        return (g.a,)
    return ()


class Builder:
    """Convenience incremental constructor used by fixtures and generators."""

    def __init__(self, mode, n, p=DEFAULT_MODULUS):
        self.mode = mode
        self.n = n
        self.p = p
        self.gates = []

    def _push(self, gate):
        self.gates.append(gate)
        return len(self.gates) - 1

    def var(self, i):
        return self._push(Gate("var", i))

    def const(self, c):
        return self._push(Gate("const", c % self.p))

    def add(self, a, b):
        return self._push(Gate("add", a, b))

    def mul(self, a, b):
        return self._push(Gate("mul", a, b))

    def mulc(self, child, c):
        return self._push(Gate("mulc", child, c % self.p))

    def sub(self, a, b):
        return self.add(a, self.mulc(b, self.p - 1))

    def build(self, output=None):
        out = output if output is not None else len(self.gates) - 1
        return Circuit(self.mode, self.p, self.n, self.gates, out)


def _slice_reachable(c, gates, root):
    """Dead-code-eliminate: keep gates reachable from root, reindexed."""
    needed = set()
    stack = [root]
    while stack:
        g = stack.pop()
        if g in needed:
            continue
        needed.add(g)
        stack.extend(_children(gates[g]))
    order = sorted(needed)
    remap = {old: new for new, old in enumerate(order)}
    new_gates = []
    for old in order:
        g = gates[old]
        if g.op in ("add", "mul"):
            new_gates.append(Gate(g.op, remap[g.a], remap[g.b]))
        elif g.op == "mulc":
            new_gates.append(Gate("mulc", remap[g.a], g.b))
        else:
            new_gates.append(g)
    return Circuit(c.mode, c.p, c.n, new_gates, remap[root])


def homogenize(c, d):
    """Split c into circuits computing its homogeneous components 0..d.

    Degree-0 components are constant-folded; product gates only ever combine
    degree >= 1 components, with folded constants entering through scalar
    (mulc) gates, so every output circuit is homogeneous gate by gate and the
    product depth never grows.
    """
    if c.degree > d:
        raise DegreeExceeded(f"circuit degree {c.degree} exceeds bound {d}")
    p = c.p
    out_gates = []

    def push(gate):
        out_gates.append(gate)
        return len(out_gates) - 1

    var_leaf = {}

    def var_gate(i):
        if i not in var_leaf:
            var_leaf[i] = push(Gate("var", i))
        return var_leaf[i]

    def add_terms(terms):
        # terms: list of gate ids; returns gate id of their sum
        acc = terms[0]
        for t in terms[1:]:
            acc = push(Gate("add", acc, t))
        return acc

    # comp[g] = {degree: ("c", value) | ("g", gate_id)}
    comp = []
    for g in c.gates:
        if g.op == "const":
            comp.append({0: ("c", g.a)} if g.a else {})
        elif g.op == "var":
            comp.append({1: ("g", var_gate(g.a))})
        elif g.op == "mulc":
            child = comp[g.a]
            cur = {}
            if g.b:
                for i, (kind, val) in child.items():
                    if kind == "c":
                        cur[i] = ("c", val * g.b % p)
                    else:
                        cur[i] = ("g", push(Gate("mulc", val, g.b)))
            comp.append(cur)
        elif g.op == "add":
            left, right = comp[g.a], comp[g.b]
            cur = {}
            for i in sorted(set(left) | set(right)):
                li = left.get(i)
                ri = right.get(i)
                if li is None:
                    cur[i] = ri
                elif ri is None:
                    cur[i] = li
                elif li[0] == "c" and ri[0] == "c":
                    v = (li[1] + ri[1]) % p
                    if v:
                        cur[i] = ("c", v)
                else:
                    cur[i] = ("g", push(Gate("add", li[1], ri[1])))
            comp.append(cur)
        else:  # mul
            left, right = comp[g.a], comp[g.b]
            cur = {}
            for i in range(0, d + 1):
                terms = []
                const_acc = 0
                for j in sorted(left):
                    k = i - j
                    if k not in right:
                        continue
                    lj, rk = left[j], right[k]
                    if lj[0] == "c" and rk[0] == "c":
                        const_acc = (const_acc + lj[1] * rk[1]) % p
                    elif lj[0] == "c":
                        terms.append(push(Gate("mulc", rk[1], lj[1])))
                    elif rk[0] == "c":
                        terms.append(push(Gate("mulc", lj[1], rk[1])))
                    else:
                        terms.append(push(Gate("mul", lj[1], rk[1])))
                if const_acc:
                    cur[i] = ("c", const_acc)  # only reachable at i == 0
                elif terms:
                    cur[i] = ("g", add_terms(terms))
            comp.append(cur)

    results = []
    for i in range(0, d + 1):
        entry = comp[c.output].get(i)
        if entry is None:
            results.append(Circuit(c.mode, p, c.n, [Gate("const", 0)], 0))
        elif entry[0] == "c":
            results.append(Circuit(c.mode, p, c.n, [Gate("const", entry[1])], 0))
        else:
            results.append(_slice_reachable(c, out_gates, entry[1]))
    return results


def parse_tree_count(c):
    """Number of parse trees of the output gate (exact, cheap)."""
    counts = []
    for g in c.gates:
        if g.op in ("var", "const"):
            counts.append(1)
        elif g.op == "mulc":
            counts.append(counts[g.a])
        elif g.op == "add":
            counts.append(counts[g.a] + counts[g.b])
        else:
            counts.append(counts[g.a] * counts[g.b])
    return counts[c.output]


def reduced_parse_trees(c, cap=100000):
    """Aggregate coefficient per reduced parse tree of the output gate.

    Returns a dict keyed by the mode-canonical monomial tree (None for the
    pure-constant trees), with coefficients mod p.  Entries whose parse trees
    cancel to 0 are kept; they still witness the trees' existence.
    """
    total = parse_tree_count(c)
    if total > cap:
        raise CapExceeded(f"{total} parse trees exceed cap {cap}")
    p = c.p
    comm = c.mode == "comm"
    tables = []
    for g in c.gates:
        if g.op == "var":
            tables.append({g.a: 1})
        elif g.op == "const":
            tables.append({None: g.a % p})
        elif g.op == "mulc":
            tables.append({t: coef * g.b % p for t, coef in tables[g.a].items()})
        elif g.op == "add":
            merged = dict(tables[g.a])
            for t, coef in tables[g.b].items():
                merged[t] = (merged.get(t, 0) + coef) % p
            tables.append(merged)
        else:
            combined = {}
            for t1, c1 in tables[g.a].items():
                for t2, c2 in tables[g.b].items():
                    if t1 is None:
                        t = t2
                    elif t2 is None:
                        t = t1
                    else:
                        t = (t1, t2)
                        if comm:
                            t = monomial.canon_node(t)
                    combined[t] = (combined.get(t, 0) + c1 * c2) % p
            tables.append(combined)
    return tables[c.output]


def gen_random(n, size, degree_cap, mode, seed, p=DEFAULT_MODULUS):
    """Deterministic random circuit: `size` gates, syntactic degree <= cap."""
    if n < 1 or size < 1 or degree_cap < 1:
        raise ValueError("gen_random needs n >= 1, size >= 1, degree cap >= 1")
    rng = random.Random(seed)
    gates = []
    deg = []

    def push(gate, dg):
        gates.append(gate)
        deg.append(dg)

    push(Gate("var", rng.randrange(1, n + 1)), 1)
    while len(gates) < size:
        gid = len(gates)
        leaf_bias = max(0.05, 0.5 - gid / size * 0.5)
        r = rng.random()
        if r < leaf_bias:
            if rng.random() < 0.8:
                push(Gate("var", rng.randrange(1, n + 1)), 1)
            else:
                push(Gate("const", rng.randrange(min(p, 8))), 0)
        elif r < leaf_bias + 0.12:
            child = rng.randrange(gid)
            push(Gate("mulc", child, rng.randrange(min(p, 8))), deg[child])
        else:
            a = rng.randrange(gid)
            b = rng.randrange(gid)
            want_mul = rng.random() < 0.55
            if want_mul and deg[a] + deg[b] <= degree_cap:
                push(Gate("mul", a, b), deg[a] + deg[b])
            else:
                push(Gate("add", a, b), max(deg[a], deg[b]))
    return Circuit(mode, p, n, gates, size - 1)
