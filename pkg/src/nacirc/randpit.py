"""Randomized black-box PIT over the evaluation algebras.

A nonzero polynomial of degree <= d evaluated at points whose d(d+1)^2 + 1
coordinates are drawn i.i.d. uniform from a set S of residues vanishes with
probability at most d/|S|; NONZERO verdicts are therefore always correct and
ZERO verdicts carry the (d/|S|)^trials failure bound.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import algebra
from .errors import FieldTooSmall, SetTooSmall


@dataclass
class BlackBox:
    """Query access to evaluations of an unknown polynomial.

    eval_batch maps (bodies, scalars) lists (one (B, d, d+1, d+1) body array
    and one (B,) scalar array per variable) to the batched evaluation result.
    Trials are independent, so a thread-safe callback may be queried
    concurrently; thread_safe declares that capability.
    """

    n: int
    d: int
    mode: str
    p: int
    eval_batch: object
    thread_safe: bool = True
    queries: int = field(default=0, init=False)

    @classmethod
    def from_circuit(cls, c, d=None):
        bb = cls(
            n=c.n,
            d=d if d is not None else max(c.degree, 1),
            mode=c.mode,
            p=c.p,
            eval_batch=lambda bodies, scalars: algebra.eval_circuit_batch(c, bodies, scalars),
        )
        return bb

    def query(self, bodies, scalars):
        self.queries += 1
        return self.eval_batch(bodies, scalars)


def _check_params(bb, S):
    if bb.p <= bb.d:
        raise FieldTooSmall(f"need p > d, got p={bb.p}, d={bb.d}")
    if len(S) <= bb.d:
        raise SetTooSmall(f"need |S| > d, got |S|={len(S)}, d={bb.d}")
    if isinstance(S, range):
        in_field = 0 <= min(S.start, S[-1]) and max(S.start, S[-1]) < bb.p
    else:
        in_field = all(0 <= v < bb.p for v in S)
    if not in_field:
        raise FieldTooSmall(f"sample set contains values outside [0, {bb.p})")


def _point_tuple(bodies, scalars, idx, d, p):
    return tuple(
        algebra.AlgebraElem(d, p, bodies[i][idx].copy(), int(scalars[i][idx]))
        for i in range(len(bodies))
    )


def randomized_pit(bb, S, trials, rng, batch=4096):
    """Sample `trials` point tuples; NONZERO on the first nonzero evaluation.

    Returns ("NONZERO", witness point tuple, None) or ("ZERO", None, bound)
    with bound = (d/|S|)^trials as an exact Fraction.
    """
    _check_params(bb, S)
    S = list(S)
    done = 0
    while done < trials:
        B = min(batch, trials - done)
        bodies, scalars = algebra.random_points(bb.n, bb.d, S, rng, bb.p, B)
        body, scalar = bb.query(bodies, scalars)
        zero_mask = algebra.batch_is_zero(body, scalar)
        if not zero_mask.all():
            idx = int(np.argmax(~zero_mask))
            return "NONZERO", _point_tuple(bodies, scalars, idx, bb.d, bb.p), None
        done += B
    return "ZERO", None, Fraction(bb.d, len(S)) ** trials


def empirical_failure_rate(f, S, trials, rng, batch=4096):
    """Fraction of single-tuple evaluations that are zero, with the d/|S| bound.

    `f` may be a BlackBox or a circuit (wrapped at its syntactic degree).
    """
    bb = f if isinstance(f, BlackBox) else BlackBox.from_circuit(f)
    _check_params(bb, S)
    S = list(S)
    zeros = 0
    done = 0
    while done < trials:
        B = min(batch, trials - done)
        bodies, scalars = algebra.random_points(bb.n, bb.d, S, rng, bb.p, B)
        body, scalar = bb.query(bodies, scalars)
        zeros += int(algebra.batch_is_zero(body, scalar).sum())
        done += B
    return Fraction(zeros, trials), Fraction(bb.d, len(S))
