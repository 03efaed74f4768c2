"""Dense univariate polynomials over a Field, as tuples of encodings.

Coefficients are stored low degree first with no trailing zeros; the zero
polynomial is the empty tuple.  These helpers stay deliberately small: the
library only ever multiplies, shifts, evaluates and deflates linear factors.
"""

from __future__ import annotations

import numpy as np

from .field import Field

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)


def normalize(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(field: Field, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = field.add(out[i], bi)
    return normalize(out)


def neg(field: Field, a: Poly) -> Poly:
    return tuple(field.neg(c) for c in a)


def sub(field: Field, a: Poly, b: Poly) -> Poly:
    return add(field, a, neg(field, b))


def scale(field: Field, c: int, a: Poly) -> Poly:
    if c == 0:
        return ZERO
    return normalize(field.mul(c, ai) for ai in a)


def mul(field: Field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return normalize(out)


def pow_(field: Field, a: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative polynomial power")
    result: Poly = ONE
    base = a
    while k:
        if k & 1:
            result = mul(field, result, base)
        base = mul(field, base, base)
        k >>= 1
    return result


def shift(a: Poly, j: int) -> Poly:
    """Multiply by x^j."""
    if not a:
        return ZERO
    return (0,) * j + a


def linear(field: Field, a_enc: int) -> Poly:
    """The polynomial x - a."""
    return (field.neg(a_enc), 1)


def from_roots(field: Field, pairs, leading: int = 1) -> Poly:
    """leading * prod (x - a)^lam over (a, lam) pairs."""
    out: Poly = (leading % field.q,)
    for a_enc, lam in pairs:
        out = mul(field, out, pow_(field, linear(field, a_enc), lam))
    return out


def eval_at(field: Field, a: Poly, x_enc: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = field.add(field.mul(acc, x_enc), c)
    return acc


def eval_many(field: Field, a: Poly, xs: np.ndarray) -> np.ndarray:
    """Horner evaluation over a vector of encodings."""
    xs = np.asarray(xs, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(a):
        acc = field.vadd(field.vmul(acc, xs), np.full_like(xs, c))
    return acc


def divmod_linear(field: Field, a: Poly, root_enc: int) -> tuple[Poly, int]:
    """Synthetic division by (x - root); returns (quotient, remainder)."""
    if not a:
        return ZERO, 0
    quot = [0] * (len(a) - 1)
    acc = 0
    for i in range(len(a) - 1, -1, -1):
        acc = field.add(field.mul(acc, root_enc), a[i])
        if i > 0:
            quot[i - 1] = acc
    return normalize(quot), acc


def root_multiplicity(field: Field, a: Poly, root_enc: int) -> tuple[int, Poly]:
    """Largest k with (x - root)^k | a; returns (k, a / (x - root)^k)."""
    k = 0
    cur = a
    while cur:
        quot, rem = divmod_linear(field, cur, root_enc)
        if rem != 0:
            break
        k += 1
        cur = quot
    return k, cur
