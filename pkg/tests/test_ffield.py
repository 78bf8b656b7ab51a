import random

import pytest

from nacirc.errors import DimensionMismatch, NotPrime
from nacirc.ffield import (
    DEFAULT_MODULUS,
    FieldContext,
    Matrix,
    field_new,
    greedy_basis,
    is_prime,
    next_prime,
)


def lucas_lehmer_61():
    # independent primality certificate for 2^61 - 1
    m = (1 << 61) - 1
    s = 4
    for _ in range(61 - 2):
        s = (s * s - 2) % m
    return s == 0


def test_field_new_small_primes():
    assert field_new(2).p == 2
    assert field_new(3).p == 3


def test_field_new_rejects_composites():
    with pytest.raises(NotPrime):
        field_new(4)
    with pytest.raises(NotPrime):
        field_new(1)
    with pytest.raises(NotPrime):
        field_new(561)  # Carmichael


def test_default_modulus_is_prime():
    assert DEFAULT_MODULUS == 2305843009213693951
    assert lucas_lehmer_61()
    assert is_prime(DEFAULT_MODULUS)
    field_new(DEFAULT_MODULUS)


def test_scalar_ops_inverse_roundtrip():
    ctx = field_new(101)
    rng = random.Random(1)
    for _ in range(200):
        a = rng.randrange(101)
        b = rng.randrange(1, 101)
        assert ctx.mul(ctx.mul(a, b), ctx.inv(b)) == a % 101
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_next_prime():
    assert next_prime(1) == 2
    assert next_prime(2) == 3
    assert next_prime(89) == 97


def test_greedy_basis_examples():
    ctx = field_new(5)
    assert greedy_basis([(1, 0), (0, 1), (1, 1)], 2, ctx) == [0, 1]
    assert greedy_basis([(0, 0), (2, 4)], 2, ctx) == [1]


def test_greedy_basis_dimension_mismatch():
    ctx = field_new(5)
    with pytest.raises(DimensionMismatch):
        greedy_basis([(1, 0), (0, 1, 1)], 2, ctx)


def test_greedy_basis_matches_rank_oracle():
    ctx = field_new(7)
    rng = random.Random(2)
    for trial in range(30):
        vecs = [tuple(rng.randrange(7) for _ in range(5)) for _ in range(20)]
        kept = greedy_basis(vecs, 5, ctx)
        # independent oracle: rank via full row echelon form
        rank = Matrix.from_rows(vecs, ctx).rank()
        assert len(kept) == rank


def test_greedy_basis_prefix_stable():
    ctx = field_new(11)
    rng = random.Random(3)
    vecs = [tuple(rng.randrange(11) for _ in range(4)) for _ in range(15)]
    kept_all = greedy_basis(vecs, 4, ctx)
    for cut in range(1, len(vecs)):
        kept_cut = greedy_basis(vecs[:cut], 4, ctx)
        assert kept_cut == [i for i in kept_all if i < cut]


def test_greedy_basis_spans_inputs():
    ctx = field_new(13)
    rng = random.Random(4)
    vecs = [tuple(rng.randrange(13) for _ in range(6)) for _ in range(25)]
    kept = greedy_basis(vecs, 6, ctx)
    basis = Matrix.from_rows([vecs[i] for i in kept], ctx)
    for v in vecs:
        # membership: appending v must not increase the rank
        rows = [list(r) for r in ([vecs[i] for i in kept] + [list(v)])]
        assert Matrix.from_rows(rows, ctx).rank() == len(kept)


def test_context_immutable_and_hashable():
    ctx = field_new(17)
    with pytest.raises(AttributeError):
        ctx.p = 19
    assert ctx == field_new(17)
    assert hash(ctx) == hash(field_new(17))


def test_matrix_shape_check():
    ctx = field_new(5)
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, [1, 2, 3], ctx)
