"""Modular-arithmetic array kernels behind the algebra evaluator.

Two interchangeable backends compute the same exact results:

* ``numba`` -- @njit loops with an inlined 128-bit mulmod (fast path for the
  default Mersenne modulus 2^61-1, direct path for p < 2^32, shift-reduce
  otherwise).  Requires p < 2^62 and int64 storage.
* ``numpy`` -- pure numpy.  Small moduli (p < 2^28) use direct int64 matmul,
  the Mersenne modulus uses a vectorized 32-bit-limb mulmod on uint64, and
  anything else (including moduli beyond 2^62) goes through object arrays of
  Python ints, which are exact at any size.

Selection: env var NACIRC_KERNELS in {auto, numba, numpy}; "auto" prefers
numba when it is importable and the modulus fits.  Benchmarks comparing the
backends live in benchmarks/bench_kernels.py.
"""

import os

import numpy as np

M61 = (1 << 61) - 1
_NUMBA_LIMIT = 1 << 62
_SMALL_LIMIT = 1 << 28  # (p-1)^2 * 65 accumulation still fits in int64

_ENV = os.environ.get("NACIRC_KERNELS", "auto").lower()
if _ENV not in ("auto", "numba", "numpy"):
    raise ValueError(f"NACIRC_KERNELS must be auto|numba|numpy, got {_ENV!r}")

_HAVE_NUMBA = False
if _ENV != "numpy":
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _ENV == "numba":
            raise


def use_numba(p):
    return _HAVE_NUMBA and p < _NUMBA_LIMIT


def backend_name(p):
    return "numba" if use_numba(p) else "numpy"


def elem_dtype(p):
    """Array dtype for residues mod p: int64 while it fits, object beyond."""
    return np.int64 if p < _NUMBA_LIMIT else object


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    _U32 = np.uint64(0xFFFFFFFF)
    _M61 = np.uint64(M61)

    @njit(cache=True, inline="always")
    def _mulmod(a, b, p):
        # a, b < p < 2^62; everything uint64
        if p == _M61:
            a_lo = a & _U32
            a_hi = a >> np.uint64(32)
            b_lo = b & _U32
            b_hi = b >> np.uint64(32)
            ll = a_lo * b_lo
            lh = a_lo * b_hi
            hl = a_hi * b_lo
            mid = (ll >> np.uint64(32)) + (lh & _U32) + (hl & _U32)
            lo = (mid << np.uint64(32)) | (ll & _U32)
            hi = a_hi * b_hi + (lh >> np.uint64(32)) + (hl >> np.uint64(32)) + (mid >> np.uint64(32))
            # 2^64 = 8 (mod 2^61-1)
            r = (hi << np.uint64(3)) + (lo >> np.uint64(61)) + (lo & _M61)
            while r >= _M61:
                r -= _M61
            return r
        elif p < np.uint64(4294967296):
            return (a * b) % p
        else:
            a_lo = a & _U32
            a_hi = a >> np.uint64(32)
            b_lo = b & _U32
            b_hi = b >> np.uint64(32)
            ll = a_lo * b_lo
            lh = a_lo * b_hi
            hl = a_hi * b_lo
            mid = (ll >> np.uint64(32)) + (lh & _U32) + (hl & _U32)
            lo = (mid << np.uint64(32)) | (ll & _U32)
            hi = a_hi * b_hi + (lh >> np.uint64(32)) + (hl >> np.uint64(32)) + (mid >> np.uint64(32))
            r = hi % p
            for i in range(63, -1, -1):
                r = (r << np.uint64(1)) | ((lo >> np.uint64(i)) & np.uint64(1))
                if r >= p:
                    r -= p
            return r

    @njit(cache=True, inline="always")
    def _addmod(a, b, p):
        r = a + b
        if r >= p:
            r -= p
        return r

    @njit(cache=True)
    def _mul_arrays_nb(a, b, out, p):
        for i in range(a.size):
            out[i] = _mulmod(a[i], b[i], p)

    @njit(cache=True)
    def _pair_mul_nb(xb, xs, yb, ys, zb, zs, p, mode):
        # mode 0: x.y ; mode 1: x.y + y.x ; mode 2: anticommutator bodies,
        # scalar coordinates acting once (see algebra module for semantics)
        B, d, d1, _ = xb.shape
        for t in range(B):
            a1 = xs[t]
            a2 = ys[t]
            for k in range(d):
                for i in range(d1):
                    for j in range(d1):
                        acc = np.uint64(0)
                        if k < d - 1:
                            for l in range(d1):
                                acc = _addmod(acc, _mulmod(xb[t, k + 1, i, l], yb[t, k + 1, l, j], p), p)
                            if mode >= 1:
                                for l in range(d1):
                                    acc = _addmod(acc, _mulmod(yb[t, k + 1, i, l], xb[t, k + 1, l, j], p), p)
                        c1 = _mulmod(a1, yb[t, k, i, j], p)
                        c2 = _mulmod(a2, xb[t, k, i, j], p)
                        if mode == 1:
                            c1 = _addmod(c1, c1, p)
                            c2 = _addmod(c2, c2, p)
                        zb[t, k, i, j] = _addmod(acc, _addmod(c1, c2, p), p)
            s = _mulmod(xs[t], ys[t], p)
            if mode == 1:
                s = _addmod(s, s, p)
            zs[t] = s


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

_NP_U32 = np.uint64(0xFFFFFFFF)
_NP_M61 = np.uint64(M61)


def _mulmod_m61_np(a, b):
    """Vectorized a*b mod 2^61-1 on uint64 arrays via 32-bit limbs."""
    s32 = np.uint64(32)
    a_lo = a & _NP_U32
    a_hi = a >> s32
    b_lo = b & _NP_U32
    b_hi = b >> s32
    ll = a_lo * b_lo
    lh = a_lo * b_hi
    hl = a_hi * b_lo
    mid = (ll >> s32) + (lh & _NP_U32) + (hl & _NP_U32)
    lo = (mid << s32) | (ll & _NP_U32)
    hi = a_hi * b_hi + (lh >> s32) + (hl >> s32) + (mid >> s32)
    r = (hi << np.uint64(3)) + (lo >> np.uint64(61)) + (lo & _NP_M61)
    for _ in range(3):
        r = np.where(r >= _NP_M61, r - _NP_M61, r)
    return r


def _mul_np(a, b, p):
    a = np.asarray(a)
    b = np.asarray(b)
    if p >= _NUMBA_LIMIT or a.dtype == object or b.dtype == object:
        return (a.astype(object) * b.astype(object)) % p
    if p < _SMALL_LIMIT:
        return (a.astype(np.int64) * b.astype(np.int64)) % p
    if p == M61:
        aa, bb = np.broadcast_arrays(a, b)
        r = _mulmod_m61_np(
            np.ascontiguousarray(aa, dtype=np.int64).view(np.uint64),
            np.ascontiguousarray(bb, dtype=np.int64).view(np.uint64),
        )
        return r.astype(np.int64)
    # mid-size modulus without numba: exact via Python ints, stored back as int64
    return ((a.astype(object) * b.astype(object)) % p).astype(np.int64)


# ---------------------------------------------------------------------------
# public ops
# ---------------------------------------------------------------------------


def zeros_body(shape, p):
    return np.zeros(shape, dtype=elem_dtype(p))


def add_arrays(a, b, p):
    return (a + b) % p


def sub_arrays(a, b, p):
    return (a - b) % p


def mul_arrays(a, b, p):
    """Elementwise a*b mod p (numpy broadcasting allowed)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if use_numba(p) and a.dtype == np.int64 and b.dtype == np.int64 and a.shape == b.shape:
        a = np.ascontiguousarray(a)
        b = np.ascontiguousarray(b)
        out = np.empty(a.shape, dtype=np.int64)
        _mul_arrays_nb(a.reshape(-1).view(np.uint64), b.reshape(-1).view(np.uint64),
                       out.reshape(-1).view(np.uint64), np.uint64(p))
        return out
    return _mul_np(a, b, p)


def scale_array(c, a, p):
    """Scalar c times array a, mod p."""
    a = np.asarray(a)
    c = c % p
    if a.dtype == object or p >= _NUMBA_LIMIT:
        return (np.asarray(a, dtype=object) * c) % p
    return mul_arrays(np.full(a.shape, c, dtype=np.int64), a, p)


def _pair_mul_np(xb, xs, yb, ys, p, mode):
    B, d, d1, _ = xb.shape
    zb = np.zeros_like(xb)
    if d > 1:
        if xb.dtype != object and p < _SMALL_LIMIT:
            prod = np.matmul(xb[:, 1:], yb[:, 1:]) % p
            if mode >= 1:
                prod = (prod + np.matmul(yb[:, 1:], xb[:, 1:])) % p
            zb[:, : d - 1] = prod
        elif xb.dtype != object:
            acc = np.zeros((B, d - 1, d1, d1), dtype=np.int64)
            for l in range(d1):
                acc = (acc + _mul_np(xb[:, 1:, :, l, None], yb[:, 1:, None, l, :], p)) % p
                if mode >= 1:
                    acc = (acc + _mul_np(yb[:, 1:, :, l, None], xb[:, 1:, None, l, :], p)) % p
            zb[:, : d - 1] = acc
        else:
            for t in range(B):
                for k in range(d - 1):
                    m = np.dot(xb[t, k + 1], yb[t, k + 1])
                    if mode >= 1:
                        m = m + np.dot(yb[t, k + 1], xb[t, k + 1])
                    zb[t, k] = m % p
    two = 2 if mode == 1 else 1
    xs2 = xs * two % p
    ys2 = ys * two % p
    cross = (_mul_np(xs2[:, None, None, None], yb, p) + _mul_np(ys2[:, None, None, None], xb, p)) % p
    zb = (zb + cross) % p
    zs = _mul_np(xs, ys, p)
    if mode == 1:
        zs = zs * 2 % p
    return zb, zs


def pair_mul(xb, xs, yb, ys, p, mode):
    """Batched algebra pair product; see _pair_mul_nb for the mode table.

    Bodies have shape (B, d, d+1, d+1); scalars have shape (B,).
    """
    if use_numba(p) and xb.dtype == np.int64:
        xb = np.ascontiguousarray(xb)
        yb = np.ascontiguousarray(yb)
        zb = np.empty_like(xb)
        zs = np.empty_like(xs)
        _pair_mul_nb(
            xb.view(np.uint64),
            np.ascontiguousarray(xs).view(np.uint64),
            yb.view(np.uint64),
            np.ascontiguousarray(ys).view(np.uint64),
            zb.view(np.uint64),
            zs.view(np.uint64),
            np.uint64(p),
            mode,
        )
        return zb, zs
    return _pair_mul_np(xb, xs, yb, ys, p, mode)
