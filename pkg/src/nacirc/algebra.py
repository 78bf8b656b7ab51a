"""The nonassociative evaluation algebras and circuit evaluation over them.

An element is a pair (body, scalar): the body is a stack of d matrices of
size (d+1) x (d+1) over F_p, stored as an array of shape (d, d+1, d+1) with
the slice index first, and the scalar is the adjoined-unit coordinate, for a
total dimension of d(d+1)^2 + 1.

Products:

* body product (``aprime_mul``): slice k of the result is the matrix product
  of slices k+1 of the operands; the last slice is zero.
* pair product (``a_mul``): (a1, s1)(a2, s2) = (a1 o a2 + s1 a2 + s2 a1, s1 s2),
  with (0, 1) a two-sided unit.  This is the noncommutative evaluation product.
* anticommutator (``c_mul``): a_mul(x, y) + a_mul(y, x).  Commutative, but
  (0, 1) acts as twice the identity, so it is kept as the algebraic operation
  only.
* commutative evaluation product (``comm_eval_mul``): anticommutator on the
  bodies with the scalar coordinates acting once, i.e. the unitalization of
  the body anticommutator.  This makes constants act by scalar multiplication
  (so gate-by-gate evaluation agrees exactly with evaluating the expanded
  polynomial) and coincides with c_mul whenever both scalars are zero, which
  covers every structured substitution below.

Evaluation is batched internally: bodies get a leading batch axis so that
Monte-Carlo trials and hitting-set scans amortize the kernel dispatch.
"""

import numpy as np

from . import kernels
from .errors import DimensionMismatch

_MODE_PLAIN = 0  # x.y
_MODE_ANTI = 1  # x.y + y.x
_MODE_COMM_EVAL = 2  # anticommutator bodies, scalars acting once


class AlgebraElem:
    """Single element of the d-parameter algebra over F_p."""

    __slots__ = ("d", "p", "body", "scalar")

    def __init__(self, d, p, body=None, scalar=0):
        self.d = d
        self.p = p
        if body is None:
            body = kernels.zeros_body((d, d + 1, d + 1), p)
        self.body = body
        self.scalar = scalar % p

    def copy(self):
        return AlgebraElem(self.d, self.p, self.body.copy(), self.scalar)

    def entry(self, i, j, k):
        """1-based (i, j, k) body entry: row i, column j of slice k."""
        return int(self.body[k - 1, i - 1, j - 1])

    def is_zero(self):
        return self.scalar == 0 and not np.any(self.body)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElem)
            and other.d == self.d
            and other.p == self.p
            and other.scalar == self.scalar
            and np.array_equal(other.body, self.body)
        )

    def __repr__(self):
        return f"AlgebraElem(d={self.d}, p={self.p}, zero={self.is_zero()})"


def zero_elem(d, p):
    return AlgebraElem(d, p)


def unit_elem(d, p):
    return AlgebraElem(d, p, scalar=1)


def _check_pair(x, y):
    if x.d != y.d or x.p != y.p:
        raise DimensionMismatch(f"algebra mismatch: (d={x.d}, p={x.p}) vs (d={y.d}, p={y.p})")


def _pair_op(x, y, mode):
    _check_pair(x, y)
    dt = kernels.elem_dtype(x.p)
    xs = np.array([x.scalar], dtype=dt)
    ys = np.array([y.scalar], dtype=dt)
    zb, zs = kernels.pair_mul(x.body[None], xs, y.body[None], ys, x.p, mode)
    return AlgebraElem(x.d, x.p, zb[0], int(zs[0]))


def aprime_mul(x, y):
    """Body-only product: slice k of the result multiplies slices k+1."""
    _check_pair(x, y)
    zero = np.zeros(1, dtype=kernels.elem_dtype(x.p))
    zb, _ = kernels.pair_mul(x.body[None], zero, y.body[None], zero.copy(), x.p, _MODE_PLAIN)
    return AlgebraElem(x.d, x.p, zb[0], 0)


def a_mul(x, y):
    return _pair_op(x, y, _MODE_PLAIN)


def c_mul(x, y):
    """Anticommutator a_mul(x, y) + a_mul(y, x)."""
    return _pair_op(x, y, _MODE_ANTI)


def comm_eval_mul(x, y):
    """Commutative evaluation product: see module docstring."""
    return _pair_op(x, y, _MODE_COMM_EVAL)


def add_elem(x, y):
    _check_pair(x, y)
    return AlgebraElem(x.d, x.p, kernels.add_arrays(x.body, y.body, x.p), (x.scalar + y.scalar) % x.p)


def scale_elem(c, x):
    c = c % x.p
    return AlgebraElem(x.d, x.p, kernels.scale_array(c, x.body, x.p), c * x.scalar % x.p)


def make_Zi(i, d, z, p):
    """Structured substitution point for variable i: body[j, j+1, k] = z(i, j, k).

    `z` is a callable (i, j, k) -> residue or a dict keyed by (i, j, k),
    with 1-based j, k in [d].
    """
    elem = AlgebraElem(d, p)
    body = elem.body
    for j in range(1, d + 1):
        for k in range(1, d + 1):
            v = z[(i, j, k)] if isinstance(z, dict) else z(i, j, k)
            body[k - 1, j - 1, j] = v % p
    return elem


def random_elem(d, S, rng, p):
    """Element with all d(d+1)^2 + 1 coordinates i.i.d. uniform over S."""
    bodies, scalars = random_points(1, d, S, rng, p, batch=1)
    return AlgebraElem(d, p, bodies[0][0], int(scalars[0][0]))


def _sampler(S, rng, p):
    """shape -> array of residues drawn i.i.d. uniform from S."""
    dt = kernels.elem_dtype(p)
    if isinstance(S, range) and len(S) > (1 << 20):
        size = len(S)
        if dt is np.int64:
            def draw(shape):
                idx = rng.integers(0, size, size=shape, dtype=np.int64)
                return (S.start + idx * S.step) % p
        else:
            bits = size.bit_length()
            limbs = (bits + 31) // 32

            def draw_one():
                # rejection sampling keeps the draw exactly uniform
                while True:
                    v = 0
                    for _ in range(limbs):
                        v = (v << 32) | int(rng.integers(0, 1 << 32))
                    v &= (1 << bits) - 1
                    if v < size:
                        return (S.start + v * S.step) % p

            def draw(shape):
                out = np.empty(shape, dtype=object)
                flat = out.reshape(-1)
                for i in range(flat.size):
                    flat[i] = draw_one()
                return out

        return draw
    S_arr = np.array(list(S), dtype=dt)

    def draw(shape):
        return S_arr[rng.integers(0, len(S_arr), size=shape)]

    return draw


def random_points(n, d, S, rng, p, batch):
    """Batch of `batch` point tuples: lists of n (bodies, scalars) arrays."""
    draw = _sampler(S, rng, p)
    bodies = []
    scalars = []
    for _ in range(n):
        bodies.append(draw((batch, d, d + 1, d + 1)))
        scalars.append(draw((batch,)))
    return bodies, scalars


def eval_circuit_batch(c, bodies, scalars):
    """Evaluate circuit c at a batch of point tuples.

    bodies: list of n arrays (B, d, d+1, d+1); scalars: list of n arrays (B,).
    Returns (body (B, d, d+1, d+1), scalar (B,)) of the outputs.
    """
    if len(bodies) != c.n:
        raise DimensionMismatch(f"circuit has {c.n} variables, got {len(bodies)} points")
    p = c.p
    if c.n:
        B, d = bodies[0].shape[0], bodies[0].shape[1]
    else:
        B, d = 1, 1
    dt = kernels.elem_dtype(p)
    for arr in bodies:
        if arr.shape[1] != d:
            raise DimensionMismatch("points with mixed algebra parameter d")
    mul_mode = _MODE_COMM_EVAL if c.mode == "comm" else _MODE_PLAIN
    zero_body = np.zeros((B, d, d + 1, d + 1), dtype=dt)
    vals = []
    for g in c.gates:
        if g.op == "var":
            vals.append((bodies[g.a - 1], scalars[g.a - 1]))
        elif g.op == "const":
            vals.append((zero_body, np.full(B, g.a % p, dtype=dt)))
        elif g.op == "add":
            xb, xs = vals[g.a]
            yb, ys = vals[g.b]
            vals.append((kernels.add_arrays(xb, yb, p), kernels.add_arrays(xs, ys, p)))
        elif g.op == "mulc":
            xb, xs = vals[g.a]
            vals.append((kernels.scale_array(g.b, xb, p), kernels.scale_array(g.b, xs, p)))
        else:
            xb, xs = vals[g.a]
            yb, ys = vals[g.b]
            vals.append(kernels.pair_mul(xb, xs, yb, ys, p, mul_mode))
    return vals[c.output]


def eval_circuit(c, points):
    """Evaluate circuit c at a tuple of AlgebraElem points (memoized DAG pass)."""
    for pt in points:
        if pt.p != c.p:
            raise DimensionMismatch("point modulus differs from circuit modulus")
    if points:
        d = points[0].d
        for pt in points:
            if pt.d != d:
                raise DimensionMismatch("points with mixed algebra parameter d")
    else:
        d = 1
    bodies = [pt.body[None] for pt in points]
    dt = kernels.elem_dtype(c.p)
    scalars = [np.array([pt.scalar], dtype=dt) for pt in points]
    body, scalar = eval_circuit_batch(c, bodies, scalars)
    return AlgebraElem(d, c.p, body[0], int(scalar[0]))


def batch_is_zero(body, scalar):
    """Per-trial zero mask for a batched evaluation result."""
    flat = body.reshape(body.shape[0], -1)
    if flat.dtype == object:
        body_zero = np.array([not any(row) for row in flat])
        scalar_zero = np.array([s == 0 for s in scalar])
    else:
        body_zero = ~np.any(flat, axis=1)
        scalar_zero = scalar == 0
    return body_zero & scalar_zero


def dump_elem(elem):
    """Debug dump: `elem d=<d>` header, one `k=<k>` block per slice, scalar."""
    lines = [f"elem d={elem.d}"]
    for k in range(1, elem.d + 1):
        lines.append(f"k={k}")
        for i in range(elem.d + 1):
            lines.append(" ".join(str(int(v)) for v in elem.body[k - 1, i]))
    lines.append(f"scalar={elem.scalar}")
    return "\n".join(lines) + "\n"
