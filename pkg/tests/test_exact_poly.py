from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from distspec import (MatrixVariant as V, all_pairs_distances, coefficient_analytics, inertia_exact,
                      parse_graph6, variant_char_poly, variant_float)
from distspec.exact_poly import (ExactPolynomial, NotSupported, berkowitz, generalized_char_poly,
                                 is_log_concave, is_unimodal, peak_index, shor_peak_range,
                                 squarefree_decomposition, tree_peak_bounds)
from distspec.families import FamilySpec, build
from distspec.spectra import jacobi_eigh

from conftest import random_connected_graph, trees, up_to

P = ExactPolynomial
fractions_st = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys_st = st.lists(fractions_st, min_size=1, max_size=7).map(P)


# --- arithmetic --------------------------------------------------------------------

@given(polys_st, polys_st)
def test_divmod_reconstructs(a, b):
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


@given(polys_st, fractions_st, fractions_st)
def test_shift_and_evaluation(p, c, x):
    assert p.shift(c)(x) == p(x + c)
    assert p.substitute_neg()(x) == p(-x)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_squarefree_decomposition_recovers_multiplicities(roots, mults):
    pairs = dict(zip(roots, mults))
    p = P.from_roots([r for r, m in pairs.items() for _ in range(m)])
    dec = squarefree_decomposition(p)
    rebuilt = P([1])
    for f, k in dec:
        rebuilt = rebuilt * f ** k
        assert f.gcd(f.derivative()).degree == 0
    assert rebuilt == p.monic()
    assert sorted(k for _, k in dec) == sorted(set(pairs.values()))


def test_json_round_trip():
    p = P([Fraction(-2, 3), 0, 5, 1])
    assert P.from_json(p.to_json()) == p
    assert p.to_json() == ["-2/3", "0", "5", "1"]


# --- characteristic polynomials ----------------------------------------------------

def test_star_polynomials():
    star = build(FamilySpec("star", (4,)))
    assert variant_char_poly(star, V.DQ) == P([216, -252, 105, -18, 1])
    assert variant_char_poly(star, V.DL) == P([0, -196, 105, -18, 1])
    assert variant_char_poly(star, V.DNL) == P([0, Fraction(-294, 125), Fraction(133, 25), -4, 1])
    assert variant_char_poly(star, V.DNL).coeffs[1:3] == (Fraction("-2.352"), Fraction("5.32"))


@given(st.integers(1, 7).flatmap(lambda n: st.lists(
    st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_berkowitz_matches_sympy(rows):
    x = sympy.Symbol("x")
    ref = [int(c) for c in sympy.Matrix(rows).charpoly(x).all_coeffs()]
    assert berkowitz(rows) == ref


def test_integral_for_integer_matrices():
    for g in up_to(6, 2):
        for v in (V.D, V.DQ, V.DL):
            p = variant_char_poly(g, v)
            assert p.is_integral and p.leading == 1


@given(st.integers(2, 8).flatmap(lambda n: st.integers(0, 10 ** 6).map(
    lambda s: random_connected_graph(random.Random(s), n))))
def test_char_poly_vanishes_on_numeric_eigenvalues(g):
    for v in (V.D, V.DQ, V.DL, V.DNL):
        p = variant_char_poly(g, v)
        a = variant_float(g, v)
        scale = max(1.0, float(np.abs(a).sum(axis=1).max()))
        for lam in jacobi_eigh(a):
            val = sum(float(c) * lam ** k for k, c in enumerate(p.coeffs))
            assert abs(val) / scale ** p.degree < 1e-6


def test_generalized_char_poly():
    k3 = build(FamilySpec("complete", (3,)))
    assert generalized_char_poly(k3, 0) == P([-2, -3, 0, 1]) == variant_char_poly(k3, V.D)
    x = sympy.Symbol("x")
    for g, r in ((k3, 1), (parse_graph6("Bg"), Fraction(1, 2)), (parse_graph6("Ch"), Fraction(-3, 7))):
        info = all_pairs_distances(g)
        m = sympy.Matrix(info.dist.tolist()) - sympy.Rational(r.numerator, r.denominator) * sympy.diag(
            *[int(t) for t in info.transmissions])
        ref = sympy.Poly((x * sympy.eye(g.n) - m).det(), x).all_coeffs()
        assert generalized_char_poly(info, r) == P([Fraction(str(c)) for c in reversed(ref)])


def test_generalized_at_one_is_negated_laplacian():
    # det(xI - D + T) = (-1)^n p_DL(-x)
    for g in up_to(5, 2):
        q = generalized_char_poly(g, 1)
        p = variant_char_poly(g, V.DL).substitute_neg()
        assert q == p * (-1) ** g.n


# --- inertia -----------------------------------------------------------------------

def test_inertia_examples():
    assert inertia_exact(variant_char_poly(parse_graph6("Ch"), V.D)).as_tuple() == (1, 3, 0)
    assert inertia_exact(variant_char_poly(build(FamilySpec("complete", (3,))), V.D)).as_tuple() == (1, 2, 0)
    paley = inertia_exact(variant_char_poly(build(FamilySpec("paley", (13,))), V.D))
    assert paley.as_tuple() == (7, 6, 0) and paley.optimistic
    with pytest.raises(NotSupported):
        inertia_exact(P([1, 1]), real_rooted=False)


def test_inertia_matches_numeric_up_to_order_7():
    for g in up_to(7, 2):
        for v in (V.D, V.DL, V.DNL):
            inert = inertia_exact(variant_char_poly(g, v))
            w = jacobi_eigh(variant_float(g, v))
            num = (int((w > 1e-9).sum()), int((w < -1e-9).sum()), int((abs(w) <= 1e-9).sum()))
            assert inert.as_tuple() == num


def test_inertia_conjugation_dl_vs_dnl():
    for g in up_to(7, 2):
        assert inertia_exact(variant_char_poly(g, V.DL)) == inertia_exact(variant_char_poly(g, V.DNL))


@pytest.mark.parametrize("n", range(2, 10))
def test_tree_inertia(n):
    for t in trees(n):
        assert inertia_exact(variant_char_poly(t, V.D)).as_tuple() == (1, n - 1, 0)


# --- coefficient analytics ---------------------------------------------------------

def test_sequence_predicates():
    assert is_log_concave([1, 3, 3, 1]) and not is_log_concave([1, 1, 3])
    assert is_unimodal([1, 2, 2, 1]) and not is_unimodal([2, 1, 2])
    assert peak_index([1, 3, 3, 0]) == 1
    assert shor_peak_range(10) == (5, 6) and tree_peak_bounds(10, 9) == (0, 7)


@pytest.mark.parametrize("n", range(3, 11))
def test_tree_distance_coefficients(n):
    lo, hi = shor_peak_range(n)
    for t in trees(n):
        p = variant_char_poly(t, V.D)
        # every coefficient below x^(n-1) is negative; x^(n-1) vanishes
        assert all(c < 0 for c in p.coeffs[: n - 1]) and p.coeffs[n - 1] == 0
        raw = coefficient_analytics(p, "raw")
        absolute = coefficient_analytics(p, "absolute", (0, n - 2))
        norm = coefficient_analytics(p, "tree_normalized", None, all_pairs_distances(t).diameter)
        assert raw.is_log_concave and absolute.is_log_concave and absolute.is_unimodal
        assert norm.is_log_concave and norm.is_unimodal and norm.peak_in_bounds
        assert lo <= norm.peak_index <= hi


def test_normalized_sequence_uses_powers_of_two():
    t = parse_graph6("Ch")
    p = variant_char_poly(t, V.D)
    rep = coefficient_analytics(p, "tree_normalized")
    assert rep.sequence == tuple(abs(p[k]) / 2 ** (4 - k - 2) for k in range(3))
    with pytest.raises(ValueError):
        coefficient_analytics(p, "tree_normalized", (0, 3))
    with pytest.raises(ValueError):
        coefficient_analytics(p, "bogus")


def test_heawood_normalized_sequence_not_unimodal():
    h = build(FamilySpec("heawood"))
    rep = coefficient_analytics(variant_char_poly(h, V.D), "tree_normalized")
    assert len(rep.sequence) == 13 and not rep.is_unimodal


def test_psd_coefficients_up_to_order_7():
    for g in up_to(7, 2):
        info = all_pairs_distances(g)
        for v in (V.DQ, V.DL, V.DNL):
            p = variant_char_poly(info, v)
            assert coefficient_analytics(p, "raw").is_log_concave
            assert coefficient_analytics(p, "absolute").is_unimodal
        lap = [abs(c) for c in variant_char_poly(info, V.DL).coeffs[1:]]
        assert all(a >= b for a, b in zip(lap, lap[1:]))


def test_peak_tie_breaks_to_smallest_index():
    rep = coefficient_analytics(P([2, -5, 5, -1]), "absolute")
    assert rep.peak_index == 1 and rep.sign_pattern == "+-+-"
