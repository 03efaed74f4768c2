"""Criteria and enumerators for non-special divisors of degree g-1 and g.

A divisor D = sum alpha_k Q_k on totally ramified places is non-special of
degree g-1 exactly when

    sum floor(alpha_k / m) = -1   and
    n + sum floor((alpha_k - shift_k(i)) / m) = gaps(i)   for all 1 <= i < m,

and of degree g when the floor sums hit the gap counts with a single slack
of one, either in the stratum-0 term or in exactly one stratum.  Both
criteria imply the degree automatically, via the telescoping identity
sum_i floor((a - i)/m) = a - floor(a/m) - m + 1.

When every tuple multiplicity is congruent to 1 mod m, or when f is
separable with one place at infinity, the solutions form a single orbit of
an explicit multiset of box coefficients under place permutations and
divisor-class shifts; the family objects below describe that orbit
symbolically and can instantiate members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .curve import Divisor, KummerCurve, Place
from .errors import (
    Alpha0OutOfRangeError,
    AlphaOutOfRangeError,
    GcdNotOneError,
    LambdaNotCongruentOneError,
    NotSeparableError,
    NotTotallyRamifiedError,
)
from .semigroup import QTuple, dim_by_formula, gap_count


def _stratum_terms(qtuple: QTuple, alpha: Sequence[int]) -> list[int]:
    """n + sum floor((alpha_k - shift_k(i))/m) for i = 1..m-1."""
    m = qtuple.curve.m
    out = []
    for i in range(1, m):
        shifts = qtuple.shifts(i)
        out.append(qtuple.n + sum((a - t) // m for a, t in zip(alpha, shifts)))
    return out


def nonspecial_gminus1(qtuple: QTuple, alpha: Sequence[int]) -> bool:
    """True iff sum alpha_k Q_k is a non-special divisor of degree g-1."""
    m = qtuple.curve.m
    if sum(a // m for a in alpha) != -1:
        return False
    terms = _stratum_terms(qtuple, alpha)
    ok = all(t == gap_count(qtuple.curve, i) for i, t in enumerate(terms, start=1))
    if ok:
        assert sum(alpha) == qtuple.curve.genus() - 1
        assert dim_by_formula(qtuple, alpha) == 0
    return ok


def nonspecial_g(qtuple: QTuple, alpha: Sequence[int]) -> bool:
    """True iff sum alpha_k Q_k is a non-special divisor of degree g."""
    m = qtuple.curve.m
    floors = sum(a // m for a in alpha)
    terms = _stratum_terms(qtuple, alpha)
    diffs = [gap_count(qtuple.curve, i) - t for i, t in enumerate(terms, start=1)]
    if floors == 0:
        ok = all(d == 0 for d in diffs)
    elif floors == -1:
        ok = sorted(diffs) == [-1] + [0] * (m - 2)
    else:
        ok = False
    if ok:
        assert sum(alpha) == qtuple.curve.genus()
        assert dim_by_formula(qtuple, alpha) == 1
    return ok


def nonspecial_effective_g(qtuple: QTuple, alpha: Sequence[int]) -> bool:
    """True iff sum alpha_k Q_k, with every alpha_k in [0, m-1], is an
    effective non-special divisor of degree g."""
    m = qtuple.curve.m
    if any(not 0 <= a <= m - 1 for a in alpha):
        raise AlphaOutOfRangeError("effective criterion needs alpha in [0, m-1]^n")
    terms = _stratum_terms(qtuple, alpha)
    return all(t == gap_count(qtuple.curve, i) for i, t in enumerate(terms, start=1))


@dataclass(frozen=True)
class Classification:
    verdict: str
    degree: int
    dim: int

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "degree": self.degree, "dim": self.dim}


def classify(qtuple: QTuple, alpha: Sequence[int]) -> Classification:
    """Dispatch a divisor on the tuple into the small-degree taxonomy."""
    g = qtuple.curve.genus()
    deg = sum(alpha)
    dim = dim_by_formula(qtuple, alpha)
    if deg == g - 1 and dim == 0:
        verdict = "NonspecialDegGminus1"
    elif deg == g and dim == 1:
        verdict = "NonspecialDegG"
    elif deg > g and dim == deg + 1 - g:
        verdict = "NonspecialHighDeg"
    elif deg < g - 1:
        verdict = "NegativeDim"
    else:
        verdict = "Special"
    return Classification(verdict, deg, dim)


@dataclass(frozen=True)
class Feasibility:
    possible: bool
    witness: str | None

    def to_json(self) -> dict:
        return {"possible": self.possible, "witness": self.witness}


def support_feasibility(qtuple: QTuple) -> Feasibility:
    """Necessary condition for a degree-(g-1) non-special divisor on the tuple:
    every gap count must stay below the tuple size.

    The degree-form witness floor(deg f / m) >= r - n - 1 (with r the number
    of zeros plus the pole) is reported when it is the failing inequality.
    """
    curve = qtuple.curve
    n = qtuple.n
    m = curve.m
    r = len(curve.roots) + 1
    if curve.deg_f // m < r - n - 1:
        return Feasibility(
            False, f"floor(degf/m)={curve.deg_f // m} < r-n-1={r - n - 1}"
        )
    for i in range(1, m):
        b = gap_count(curve, i)
        if b > n - 1:
            return Feasibility(False, f"beta({i})={b} > n-1={n - 1}")
    return Feasibility(True, None)


@dataclass(frozen=True)
class DivisorFamily:
    """Symbolic family of degree-(g-1) non-special divisors.

    Members are  m * (class shift with offset sum -1)  +  alpha0 at infinity
    (separable families only)  +  a permutation of alpha_multiset over the
    remaining places.  `places` fixes the binding order; the first place
    receives the canonical shift -m.
    """

    qtuple: QTuple
    alpha0: int | None
    alpha_multiset: tuple[int, ...]

    @property
    def places(self) -> tuple[Place, ...]:
        return self.qtuple.places

    def _box_vectors(self) -> Iterator[tuple[int, ...]]:
        seen = set()
        for perm in itertools.permutations(self.alpha_multiset):
            if perm in seen:
                continue
            seen.add(perm)
            yield ((self.alpha0,) + perm) if self.alpha0 is not None else perm

    def instantiate(
        self, sigma_alpha: Sequence[int], offsets: Sequence[int] | None = None
    ) -> Divisor:
        """Divisor for a chosen box arrangement and offset vector (sum -1)."""
        n = len(self.places)
        if offsets is None:
            offsets = [-1] + [0] * (n - 1)
        if len(sigma_alpha) != n or len(offsets) != n:
            raise AlphaOutOfRangeError("arrangement length does not match places")
        if sum(offsets) != -1:
            raise AlphaOutOfRangeError("offset vector must sum to -1")
        m = self.qtuple.curve.m
        coeffs = [m * j + a for j, a in zip(offsets, sigma_alpha)]
        return self.qtuple.divisor(coeffs)

    def canonical(self) -> Divisor:
        vec = ((self.alpha0,) + self.alpha_multiset) if self.alpha0 is not None \
            else self.alpha_multiset
        return self.instantiate(vec)

    def all_divisors_canonical_shift(self) -> set[Divisor]:
        """Every member with the canonical shift (-m on the first place)."""
        return {self.instantiate(vec) for vec in self._box_vectors()}

    def to_json(self) -> dict:
        return {
            "alpha0": self.alpha0,
            "alpha_multiset": list(self.alpha_multiset),
            "j_sum": -1,
            "places": [p.id() for p in self.places],
            "canonical": self.canonical().to_json(),
        }


@dataclass(frozen=True)
class FamilyObstruction:
    """Witness that no degree-(g-1) non-special divisor sits on the tuple."""

    witness: str

    def to_json(self) -> dict:
        return {"exists": False, "witness": self.witness}


def separable_family(curve: KummerCurve, alpha0: int) -> DivisorFamily:
    """All non-special degree-(g-1) divisors on (infinity, zero places) for a
    separable f of degree n with gcd(m, n) = 1 and 2 <= n <= q.

    The box values over the zeros form one multiset per alpha0: value v
    occurs floor((alpha0+(v+1)n)/m) - floor((alpha0+vn)/m) times.  For
    alpha0 = 0 the family is supported on the zeros only and remains valid
    without the gcd condition.
    """
    m = curve.m
    n = curve.deg_f
    if any(lam != 1 for _, lam in curve.roots):
        raise NotSeparableError("f must be separable (all multiplicities 1)")
    if not 2 <= n <= curve.field.q:
        raise NotSeparableError(f"need 2 <= deg f <= q, got deg f = {n}")
    if not 0 <= alpha0 <= m - 1:
        raise Alpha0OutOfRangeError(f"alpha0 = {alpha0} outside [0, {m - 1}]")
    if alpha0 == 0 and curve.d_inf != 1:
        # zeros-only family; infinity is unavailable as a place
        places = [curve.root_place(k) for k in range(len(curve.roots))]
        qtuple = QTuple.of(curve, places)
        multiset = _separable_multiset(m, n, 0)
        return DivisorFamily(qtuple, None, multiset)
    if curve.d_inf != 1:
        raise GcdNotOneError(f"gcd(m, deg f) = {curve.d_inf} != 1")
    places = [Place.infinity()] + [curve.root_place(k) for k in range(len(curve.roots))]
    qtuple = QTuple.of(curve, places)
    multiset = _separable_multiset(m, n, alpha0)
    return DivisorFamily(qtuple, alpha0, multiset)


def _separable_multiset(m: int, n: int, alpha0: int) -> tuple[int, ...]:
    counts = [
        (alpha0 + (v + 1) * n) // m - (alpha0 + v * n) // m for v in range(m)
    ]
    # the top block equals ceil((n - alpha0)/m); both expressions telescope to n
    assert counts[m - 1] == -((alpha0 - n) // m)
    assert sum(counts) == n
    out: list[int] = []
    for v, c in enumerate(counts):
        out.extend([v] * c)
    return tuple(out)


def unit_multiplicity_family(
    curve: KummerCurve, qtuple: QTuple
) -> DivisorFamily | FamilyObstruction:
    """All non-special degree-(g-1) divisors on a tuple whose signed
    multiplicities are all congruent to 1 mod m.

    Exists iff the gap counts are non-increasing in i and bounded by n-1;
    the box multiset is then 0 repeated n-1-gaps(1) times, v repeated
    gaps(v)-gaps(v+1) times, and m-1 repeated gaps(m-1)+1 times.
    """
    curve_ = qtuple.curve
    m = curve_.m
    if curve_ is not curve and curve_.to_json() != curve.to_json():
        raise NotTotallyRamifiedError("tuple does not belong to this curve")
    for lam in qtuple.lambdas:
        if lam % m != 1:
            raise LambdaNotCongruentOneError(
                f"multiplicity {lam} is not congruent to 1 mod {m}"
            )
    n = qtuple.n
    betas = [gap_count(curve_, i) for i in range(1, m)]
    if betas[0] > n - 1:
        return FamilyObstruction(f"beta(1)={betas[0]} > n-1={n - 1}")
    for i in range(1, m - 1):
        if betas[i] > betas[i - 1]:
            return FamilyObstruction(
                f"beta({i + 1})={betas[i]} > beta({i})={betas[i - 1]}"
            )
    counts = [n - 1 - betas[0]]
    counts.extend(betas[i - 1] - betas[i] for i in range(1, m - 1))
    counts.append(betas[m - 2] + 1)
    assert sum(counts) == n
    out: list[int] = []
    for v, c in enumerate(counts):
        out.extend([v] * c)
    return DivisorFamily(qtuple, None, tuple(out))


# --- divisor-level conveniences ----------------------------------------------

def covering_tuple(curve: KummerCurve, D: Divisor) -> QTuple:
    """The all-ramified tuple when it can certify D, else the support tuple.

    Padding a tuple with zero-coefficient totally ramified places changes
    neither criterion, so the widest admissible tuple is used.
    """
    all_places = curve.totally_ramified_places()
    support = set(D.support())
    if not support <= set(all_places):
        raise NotTotallyRamifiedError(
            "divisor support must lie in the totally ramified places"
        )
    if 2 <= len(all_places) <= curve.field.q:
        return QTuple.of(curve, all_places)
    return QTuple.of(curve, [p for p in all_places if p in support])


def divisor_nonspecial_gminus1(curve: KummerCurve, D: Divisor) -> bool:
    qtuple = covering_tuple(curve, D)
    return nonspecial_gminus1(qtuple, qtuple.alpha_of(D))


def divisor_nonspecial_g(curve: KummerCurve, D: Divisor) -> bool:
    qtuple = covering_tuple(curve, D)
    return nonspecial_g(qtuple, qtuple.alpha_of(D))


def divisor_classify(curve: KummerCurve, D: Divisor) -> Classification:
    qtuple = covering_tuple(curve, D)
    return classify(qtuple, qtuple.alpha_of(D))
