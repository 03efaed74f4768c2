"""Arithmetic kernel for divisors supported on totally ramified places.

For a tuple Q = (Q_1, ..., Q_n) of totally ramified places with signed
multiplicities lambda_k (lambda = -deg f at infinity), the pole-order tuples
of functions regular outside Q form a semigroup in Z^n whose "absolute
maximal" elements stratify by a residue index i in [0, m):

    stratum 0:      (m j_1, ..., m j_n)            with sum j_k = 0
    stratum i >= 1: (m j_k + shift_k(i))_k         with sum j_k = gaps(i)+1-n

where shift_k(i) = (i * lambda_k) mod m and gaps(i) is the per-stratum gap
count whose sum over i = 1..m-1 is the genus.  Counting distinct first
coordinates of the elements dominated by alpha gives the Riemann-Roch
dimension of the divisor sum alpha_k Q_k; the same count collapses to a
closed floor-sum formula.  Both are implemented here and cross-checked
against an independent decomposition oracle elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .curve import Divisor, KummerCurve, Place
from .errors import (
    DuplicatePlaceError,
    IndexOutOfRangeError,
    NotTotallyRamifiedError,
    QTupleSizeError,
)


def stratum_shift(lam: int, i: int, m: int) -> int:
    """(i * lam) mod m, least non-negative residue; shift of stratum i at a place."""
    return (i * lam) % m


def t_val(curve: KummerCurve, place: Place, i: int) -> int:
    """Stratum shift at a totally ramified place, for 1 <= i <= m-1."""
    if not 1 <= i <= curve.m - 1:
        raise IndexOutOfRangeError(f"i must be in [1, {curve.m - 1}], got {i}")
    return stratum_shift(curve.signed_multiplicity(place), i, curve.m)


def gap_count(curve: KummerCurve, i: int) -> int:
    """Number of semigroup gaps in stratum i; the sum over i = 1..m-1 is the genus.

    Computed as sum of ceil(i*lambda/m) over all branch multiplicities of f
    (the pole counted with multiplicity -deg f), minus one.
    """
    if not 1 <= i <= curve.m - 1:
        raise IndexOutOfRangeError(f"i must be in [1, {curve.m - 1}], got {i}")
    m = curve.m
    total = -((i * curve.deg_f) // m)  # ceil(-i*deg_f/m)
    for _, lam in curve.roots:
        total += -((-i * lam) // m)  # ceil(i*lam/m)
    return total - 1


@dataclass(frozen=True)
class QTuple:
    """An ordered tuple of distinct totally ramified places with signed multiplicities."""

    curve: KummerCurve
    places: tuple[Place, ...]
    lambdas: tuple[int, ...]

    @staticmethod
    def of(curve: KummerCurve, places: Sequence[Place]) -> "QTuple":
        n = len(places)
        if not 2 <= n <= curve.field.q:
            raise QTupleSizeError(f"tuple size {n} outside [2, q = {curve.field.q}]")
        if len(set(places)) != n:
            raise DuplicatePlaceError("tuple places must be pairwise distinct")
        lams = []
        for p in places:
            if p.kind == "inf":
                if curve.d_inf != 1:
                    raise NotTotallyRamifiedError("infinity is not totally ramified")
            elif p.kind == "root":
                if curve.root_gcds[p.index] != 1:
                    raise NotTotallyRamifiedError(f"{p.id()} is not totally ramified")
            else:
                raise NotTotallyRamifiedError(f"{p.id()} is not a ramified place")
            lams.append(curve.signed_multiplicity(p))
        return QTuple(curve, tuple(places), tuple(lams))

    @staticmethod
    def all_ramified(curve: KummerCurve) -> "QTuple":
        return QTuple.of(curve, curve.totally_ramified_places())

    @property
    def n(self) -> int:
        return len(self.places)

    def shifts(self, i: int) -> tuple[int, ...]:
        """Per-place stratum shifts; i = 0 gives all zeros."""
        if i == 0:
            return (0,) * self.n
        return tuple(stratum_shift(lam, i, self.curve.m) for lam in self.lambdas)

    def stratum_sum(self, i: int) -> int:
        """Required offset sum for stratum i: 0, or gaps(i) + 1 - n."""
        if i == 0:
            return 0
        return gap_count(self.curve, i) + 1 - self.n

    def divisor(self, alpha: Sequence[int]) -> Divisor:
        if len(alpha) != self.n:
            raise IndexOutOfRangeError("alpha length does not match tuple size")
        return Divisor(zip(self.places, alpha))

    def alpha_of(self, D: Divisor) -> list[int]:
        """Coefficient vector of a divisor supported on this tuple."""
        support = set(D.support())
        extra = support - set(self.places)
        if extra:
            raise NotTotallyRamifiedError(f"divisor has support outside the tuple: {extra}")
        return [D.coeff(p) for p in self.places]


@dataclass(frozen=True)
class MaximalElement:
    """An absolute maximal semigroup element: stratum index and offset vector."""

    stratum: int
    offsets: tuple[int, ...]

    def point(self, qtuple: QTuple) -> tuple[int, ...]:
        shifts = qtuple.shifts(self.stratum)
        m = qtuple.curve.m
        return tuple(m * j + t for j, t in zip(self.offsets, shifts))


def maximal_elements_below(qtuple: QTuple, alpha: Sequence[int]) -> Iterator[MaximalElement]:
    """All absolute maximal elements coordinatewise dominated by alpha.

    Deterministic order: stratum ascending, offset vectors lexicographic.
    Beware: the element count can be exponential in n; use the closed-form
    dimension helpers for anything but small boxes.
    """
    if len(alpha) != qtuple.n:
        raise IndexOutOfRangeError("alpha length does not match tuple size")
    m = qtuple.curve.m
    n = qtuple.n
    for i in range(m):
        shifts = qtuple.shifts(i)
        caps = [(a - t) // m for a, t in zip(alpha, shifts)]
        target = qtuple.stratum_sum(i)
        suffix = [0] * (n + 1)
        for k in range(n - 1, -1, -1):
            suffix[k] = suffix[k + 1] + caps[k]
        # recursive lexicographic enumeration of j with sum = target, j_k <= caps[k]
        stack: list[tuple[int, list[int], int]] = [(0, [], target)]
        while stack:
            pos, prefix, rem = stack.pop()
            if pos == n - 1:
                if rem <= caps[pos]:
                    yield MaximalElement(i, tuple(prefix + [rem]))
                continue
            lo = rem - suffix[pos + 1]
            hi = caps[pos]
            # push descending so the stack pops ascending j values
            for j in range(hi, lo - 1, -1):
                stack.append((pos + 1, prefix + [j], rem - j))


def dim_by_class_count(qtuple: QTuple, alpha: Sequence[int]) -> int:
    """Riemann-Roch dimension as the number of first-coordinate classes of
    the dominated maximal elements.

    Within stratum i the admissible first offsets j_1 fill the interval
    [target - sum of other caps, cap_1], and distinct strata never share a
    first coordinate, so the class count is the total interval length.
    """
    if len(alpha) != qtuple.n:
        raise IndexOutOfRangeError("alpha length does not match tuple size")
    m = qtuple.curve.m
    total = 0
    for i in range(m):
        shifts = qtuple.shifts(i)
        caps_sum = sum((a - t) // m for a, t in zip(alpha, shifts))
        total += max(0, caps_sum - qtuple.stratum_sum(i) + 1)
    return total


def dim_by_formula(qtuple: QTuple, alpha: Sequence[int]) -> int:
    """Closed-form Riemann-Roch dimension for divisors on totally ramified places.

    max(0, 1 + sum floor(alpha_k/m))
      + sum over i=1..m-1 of max(0, n - gaps(i) + sum floor((alpha_k - shift_k(i))/m)).
    """
    if len(alpha) != qtuple.n:
        raise IndexOutOfRangeError("alpha length does not match tuple size")
    m = qtuple.curve.m
    n = qtuple.n
    total = max(0, 1 + sum(a // m for a in alpha))
    for i in range(1, m):
        shifts = qtuple.shifts(i)
        s = sum((a - t) // m for a, t in zip(alpha, shifts))
        total += max(0, n - gap_count(qtuple.curve, i) + s)
    return total
