import random

import pytest

import kummerlcp as K
from kummerlcp.errors import UnsupportedSupportError
from kummerlcp.rrspace import (
    affine_pole_roots,
    dim_with_simple_affine_drops,
    evaluation_functional_rank,
    function_valuation_bound,
)

from conftest import random_curve, random_tuple


def test_restrict_examples(h3):
    inf = K.Place.infinity()
    zero = K.Divisor.zero()
    a0 = K.restrict_to_xline(h3, zero, 0)
    assert a0.root_coeffs == (0, 0, 0) and a0.inf_coeff == 0

    a1 = K.restrict_to_xline(h3, K.Divisor.of((inf, 6)), 1)
    assert a1.inf_coeff == 0 and a1.root_coeffs == (0, 0, 0)
    assert a1.degree == 0  # contributes the single basis element y

    D = K.Divisor.of((h3.root_place(0), -2), (h3.root_place(1), 2), (h3.root_place(2), 3))
    a2 = K.restrict_to_xline(h3, D, 2)
    assert a2.root_coeffs == (0, 1, 1) and a2.inf_coeff == -2
    assert a2.degree == 0


def test_restrict_rejects_affine_support(h3):
    D = K.Divisor.of((K.Place.affine(1, 1), 1))
    with pytest.raises(UnsupportedSupportError):
        K.restrict_to_xline(h3, D, 0)


def test_rr_basis_examples(h3):
    assert [fn.terms for fn in K.rr_basis(h3, K.Divisor.zero())] == \
        [{0: ((1,), (1,))}]
    D = K.Divisor.of((h3.root_place(0), -2), (h3.root_place(1), 2), (h3.root_place(2), 3))
    basis = K.rr_basis(h3, D)
    assert len(basis) == 1
    assert list(basis[0].terms.keys()) == [2]


def test_dim_oracle_gap_sequence(h3):
    inf = K.Place.infinity()
    dims = [K.dim_by_decomposition(h3, K.Divisor.of((inf, a))) for a in range(8)]
    # pole orders at infinity form the semigroup generated by 3 and 4;
    # gaps {1, 2, 5}, genus 3
    assert dims == [1, 1, 1, 2, 3, 3, 4, 5]
    gaps = [a for a in range(1, 8) if dims[a] == dims[a - 1]]
    assert gaps == [1, 2, 5]


def test_dim_oracle_negative_degree(h3):
    for place in h3.totally_ramified_places():
        assert K.dim_by_decomposition(h3, K.Divisor.of((place, -1))) == 0


def test_gap_counts_all_places_random():
    rng = random.Random(99)
    for _ in range(20):
        curve = random_curve(rng, max_m=8, max_deg=8)
        g = curve.genus()
        for place in curve.totally_ramified_places():
            dims = [K.dim_by_decomposition(curve, K.Divisor.of((place, a)))
                    for a in range(0, 2 * g + 1)]
            gaps = sum(1 for a in range(1, 2 * g + 1) if dims[a] == dims[a - 1])
            assert gaps == g


def test_basis_count_matches_formula_random():
    rng = random.Random(404)
    checked = 0
    while checked < 250:
        curve = random_curve(rng, max_m=8, max_deg=8)
        tup = random_tuple(rng, curve)
        if tup is None:
            continue
        m = curve.m
        alpha = [rng.randint(-2 * m, 2 * m) for _ in range(tup.n)]
        D = tup.divisor(alpha)
        want = K.dim_by_formula(tup, alpha)
        assert K.dim_by_decomposition(curve, D) == want
        assert len(K.rr_basis(curve, D)) == want
        checked += 1


def test_basis_valuation_soundness(h3, bundle_curve):
    rng = random.Random(17)
    for curve in (h3, bundle_curve):
        branch_places = []
        if curve.d_inf == 1:
            branch_places.append(K.Place.infinity())
        for k, d in enumerate(curve.root_gcds):
            branch_places.append(curve.branch_divisor_entry(k, 0)[0])
        ram = curve.totally_ramified_places()
        for _ in range(40):
            D = K.Divisor(
                (p, rng.randint(-4, 6)) for p in ram if rng.random() < 0.8
            )
            for fn in K.rr_basis(curve, D):
                for place in branch_places:
                    assert function_valuation_bound(curve, fn, place) + D.coeff(place) >= 0
                # no affine poles outside the roots of f
                root_xs = {a for a, _ in curve.roots}
                assert affine_pole_roots(curve, fn) <= root_xs


def test_basis_linear_independence(h3):
    # evaluation at l(D) + g split places has full row rank
    D = K.Divisor.of((K.Place.infinity(), 7), (h3.root_place(0), 2))
    basis = K.rr_basis(h3, D)
    want = K.dim_by_decomposition(h3, D)
    assert len(basis) == want
    places = [p for _, fiber in h3.split_fibers() for p in fiber]
    sample = places[: want + h3.genus()]
    assert evaluation_functional_rank(h3, basis, sample) == want


def test_kernel_basis(h3):
    D = K.Divisor.of((K.Place.infinity(), 6))
    basis = K.rr_basis(h3, D)  # dimension 4
    assert len(basis) == 4
    assert K.kernel_basis(h3, basis, []) == basis
    place = h3.split_fibers()[0][1][0]
    cut = K.kernel_basis(h3, basis, [place])
    assert len(cut) == 3
    for fn in cut:
        assert fn.evaluate(place).enc == 0
    # a second constraint at a different point drops one more dimension
    place2 = h3.split_fibers()[1][1][0]
    cut2 = K.kernel_basis(h3, basis, [place, place2])
    assert len(cut2) == 2
    for fn in cut2:
        assert fn.evaluate(place).enc == 0
        assert fn.evaluate(place2).enc == 0


def test_dim_with_affine_drops(h3):
    # E effective nonspecial of degree g; dim(E - R) = 0 for a split place R
    E = K.Divisor.of((h3.root_place(1), 1), (h3.root_place(2), 2))
    assert K.dim_by_decomposition(h3, E) == 1
    r = h3.split_fibers()[0][1][0]
    drop = E - K.Divisor.of((r, 1))
    assert dim_with_simple_affine_drops(h3, drop) == 0
    with pytest.raises(UnsupportedSupportError):
        dim_with_simple_affine_drops(h3, E - K.Divisor.of((r, 2)))


def test_bundle_restriction(bundle_curve):
    c = bundle_curve
    bundle = K.Place.bundle(1, 2)
    D = K.Divisor.of((bundle, 2), (K.Place.infinity(), 1))
    # per-place coefficient 2 over the double root: floor((2*2 + 2i)/4)
    for i in range(4):
        a = K.restrict_to_xline(c, D, i)
        assert a.root_coeffs[1] == (4 + 2 * i) // 4
    got = K.dim_by_decomposition(c, D)
    # deg D = 2*2 + 1 = 5 >= 2g-1 = 1, so the dimension is deg + 1 - g
    assert got == 5 + 1 - c.genus()


def test_root_referenced_consistently(bundle_curve):
    # the double root must be addressed as a bundle, not a root place
    bad = K.Divisor.of((K.Place.root(1), 1))
    with pytest.raises(UnsupportedSupportError):
        K.dim_by_decomposition(bundle_curve, bad)
