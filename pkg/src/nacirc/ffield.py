"""Exact prime-field arithmetic and the small linear algebra the PIT algorithms need.

Residues are plain Python ints in [0, p); a FieldContext carries the modulus
and is immutable, so contexts and values can be shared freely across threads.
"""

from .errors import DimensionMismatch, NotPrime

DEFAULT_MODULUS = (1 << 61) - 1  # Mersenne prime 2^61 - 1

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Witness sets proven sufficient for deterministic Miller-Rabin below 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic primality test (Miller-Rabin; exact for n < 2^64,
    strong-probable-prime with fixed witnesses above that)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest prime strictly greater than n."""
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


class FieldContext:
    """Arithmetic context for F_p. Values are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p):
        if p < 2 or not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldContext is immutable")

    def __repr__(self):
        return f"FieldContext(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.p == self.p

    def __hash__(self):
        return hash(("FieldContext", self.p))

    def norm(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)


def field_new(p):
    """Create an F_p context; raises NotPrime for composite p."""
    return FieldContext(p)


class Matrix:
    """Dense row-major matrix over F_p, used as the Gaussian-elimination carrier."""

    __slots__ = ("rows", "cols", "entries", "ctx")

    def __init__(self, rows, cols, entries, ctx):
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = [e % ctx.p for e in entries]
        self.ctx = ctx

    @classmethod
    def from_rows(cls, row_list, ctx):
        rows = len(row_list)
        cols = len(row_list[0]) if rows else 0
        flat = [e for row in row_list for e in row]
        return cls(rows, cols, flat, ctx)

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def rref(self):
        """Reduced row echelon form; returns (new Matrix, pivot column list)."""
        ctx = self.ctx
        p = ctx.p
        work = [self.row(i) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            sel = None
            for i in range(r, self.rows):
                if work[i][c] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            work[r], work[sel] = work[sel], work[r]
            inv = ctx.inv(work[r][c])
            work[r] = [x * inv % p for x in work[r]]
            for i in range(self.rows):
                if i != r and work[i][c] != 0:
                    f = work[i][c]
                    work[i] = [(x - f * y) % p for x, y in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix.from_rows(work, ctx) if work else self, pivots

    def rank(self):
        return len(self.rref()[1])


class _Reducer:
    """Incremental F_p row reduction: feed vectors, learn which extend the span."""

    __slots__ = ("ctx", "dim", "rows", "pivots")

    def __init__(self, ctx, dim):
        self.ctx = ctx
        self.dim = dim
        self.rows = []    # rows in echelon form, pivot entry normalized to 1
        self.pivots = []  # pivot column of each row

    def residual(self, vec):
        """Reduce vec against the current span; nonempty result means independent."""
        p = self.ctx.p
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            f = v[piv]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return v

    def add(self, vec):
        """Try to add vec to the span; returns True iff it was independent."""
        v = self.residual(vec)
        for c in range(self.dim):
            if v[c]:
                inv = self.ctx.inv(v[c])
                p = self.ctx.p
                self.rows.append([x * inv % p for x in v])
                self.pivots.append(c)
                return True
        return False

    def contains(self, vec):
        return not any(self.residual(vec))


def greedy_basis(vectors, dim, ctx):
    """Indices of a maximal independent subset, chosen greedily left to right.

    Index i is kept iff vectors[i] is independent of the kept vectors with
    smaller index, so the output is prefix-stable under appending.
    """
    red = _Reducer(ctx, dim)
    kept = []
    for i, v in enumerate(vectors):
        if len(v) != dim:
            raise DimensionMismatch(f"vector {i} has length {len(v)}, expected {dim}")
        if red.add(v):
            kept.append(i)
    return kept


def span_reducer(ctx, dim):
    """Expose the incremental reducer for callers that interleave queries."""
    return _Reducer(ctx, dim)
