"""Named corpus circuits used by tests and the verification suite."""

from .circuit import Builder, Circuit, Gate
from .ffield import DEFAULT_MODULUS


def commutator(mode, p=DEFAULT_MODULUS):
    """x1*x2 - x2*x1: the zero polynomial in commutative mode, nonzero otherwise."""
    b = Builder(mode, 2, p)
    x1, x2 = b.var(1), b.var(2)
    b.sub(b.mul(x1, x2), b.mul(x2, x1))
    return b.build()


def associator(mode, p=DEFAULT_MODULUS):
    """(x1*x2)*x3 - x1*(x2*x3): nonzero in both modes (nonassociativity)."""
    b = Builder(mode, 3, p)
    x1, x2, x3 = b.var(1), b.var(2), b.var(3)
    b.sub(b.mul(b.mul(x1, x2), x3), b.mul(x1, b.mul(x2, x3)))
    return b.build()


def jordan_identity(mode, p=DEFAULT_MODULUS):
    """(x1*x2)*(x1*x1) - x1*(x2*(x1*x1)): nonzero as a formal polynomial."""
    b = Builder(mode, 2, p)
    x1, x2 = b.var(1), b.var(2)
    sq = b.mul(x1, x1)
    b.sub(b.mul(b.mul(x1, x2), sq), b.mul(x1, b.mul(x2, sq)))
    return b.build()


def zero_const(mode, p=DEFAULT_MODULUS, n=1):
    b = Builder(mode, n, p)
    b.const(0)
    return b.build()


def linear_zero(mode, p=DEFAULT_MODULUS):
    """x1 + (p-1)*x1: degree-1 zero circuit with no product gates."""
    b = Builder(mode, 1, p)
    x1 = b.var(1)
    b.sub(x1, x1)
    return b.build()


def zero_padded(base_builder, mode, p=DEFAULT_MODULUS):
    """base + 0*(x1*x1): same polynomial with a dead scaled product bolted on."""
    c = base_builder(mode, p)
    gates = list(c.gates)

    def push(g):
        gates.append(g)
        return len(gates) - 1

    x1 = push(Gate("var", 1))
    dead = push(Gate("mulc", push(Gate("mul", x1, x1)), 0))
    out = push(Gate("add", c.output, dead))
    return Circuit(c.mode, c.p, c.n, gates, out)


def product_chain(mode, p=DEFAULT_MODULUS, length=3):
    """Left-combed product x1*(x1*(...)): degree `length` monomial circuit."""
    b = Builder(mode, 1, p)
    x1 = b.var(1)
    acc = x1
    for _ in range(length - 1):
        acc = b.mul(x1, acc)
    return b.build(acc)


def square(mode, p=DEFAULT_MODULUS):
    """x1*x1 through a single product gate over a shared leaf."""
    b = Builder(mode, 1, p)
    x1 = b.var(1)
    b.mul(x1, x1)
    return b.build()


def single_var(mode, p=DEFAULT_MODULUS, n=2, i=1):
    b = Builder(mode, n, p)
    b.var(i)
    return b.build()
