from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from distspec import (ALL_VARIANTS, Graph, MatrixVariant as V, Surd, all_pairs_distances, all_spectra,
                      exact_eigenvalues, variant_char_poly, variant_float, variant_matrix, variant_spectrum,
                      verify_bounds)
from distspec.families import FamilySpec, build
from distspec.spectra import (Spectrum, aberth_roots, batch_all_spectra, edge_addition_monotonicity,
                              eigenvalues, interlacing_check, jacobi_eigh, residuals)

from conftest import connected, d4, random_connected_graph, random_strong_digraph, up_to


def fam(kind, *params):
    return build(FamilySpec(kind, params))


# --- eigensolvers ------------------------------------------------------------------

@given(st.integers(1, 12).flatmap(lambda n: st.lists(
    st.floats(-10, 10, allow_nan=False), min_size=n * n, max_size=n * n).map(
    lambda xs: np.array(xs).reshape(n, n))))
def test_jacobi_matches_lapack(a):
    s = (a + a.T) / 2
    w, v = jacobi_eigh(s, vectors=True)
    assert np.allclose(w, np.linalg.eigvalsh(s), atol=1e-9 * max(1.0, np.abs(s).sum(axis=1).max()))
    assert (residuals(s, w, v) <= 1e-9 * max(1.0, np.linalg.norm(s))).all()


def test_jacobi_batch_equals_single():
    mats = [variant_float(g, V.DQ) for g in connected(6)[:40]]
    batch = jacobi_eigh(np.stack(mats))
    assert all(np.allclose(b, jacobi_eigh(m), atol=1e-12) for b, m in zip(batch, mats))


def test_eigenvalue_residuals_graphs():
    for g in (fam("petersen"), fam("cycle", 7), fam("hamming", 3, 3)):
        for v in ALL_VARIANTS:
            a = variant_float(g, v)
            w, vec = jacobi_eigh(a, vectors=True)
            assert (residuals(a, w, vec) <= 1e-9 * np.linalg.norm(a)).all()


def _separated(roots, gap=0.5):
    return all(abs(a - b) >= gap for i, a in enumerate(roots) for b in roots[:i])


@given(st.lists(st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8).filter(_separated))
def test_aberth_recovers_simple_roots(roots):
    coeffs = np.poly(roots)
    found = aberth_roots(coeffs)
    assert len(found) == len(roots)
    for r in roots:
        assert min(abs(found - r)) <= 1e-6 * max(1.0, abs(r))


def test_aberth_monomial_and_multiple_roots():
    assert np.allclose(aberth_roots([1, 0, 0]), 0, atol=1e-6)
    # a triple root is ill conditioned in double precision; the exact route splits it first
    found = aberth_roots(np.poly([2j, 2j, 2j]))
    assert np.allclose(found, 2j, atol=1e-4)


def test_complete_graph_spectrum():
    s = variant_spectrum(fam("complete", 5), V.D)
    assert s.matches([-1, -1, -1, -1, 4], 1e-12)
    assert [m for _, m in s.clusters()] == [4, 1]


def test_d4_table_spectra():
    spectra = all_spectra(d4())
    assert spectra[V.D].matches([-2, -1, -1, 4], 1e-12)
    assert spectra[V.DQ].matches([2, 3, 3, 8], 1e-12)
    assert spectra[V.DL].matches([0, 5, 5, 6], 1e-12)
    assert spectra[V.DNL].matches([0, 1.25, 1.25, 1.5], 1e-12)


def test_d4_reverse_table_spectra():
    rev = d4().reverse()
    r29, r5, r105 = np.sqrt(29), np.sqrt(5), np.sqrt(105)
    spectra = all_spectra(rev)
    assert spectra[V.D].matches([-2, -1, -1, 4], 1e-12)
    assert spectra[V.DQ].matches([2, (11 - r29) / 2, 3, (11 + r29) / 2], 1e-12)
    assert spectra[V.DL].matches([0, (11 - r5) / 2, 5, (11 + r5) / 2], 1e-12)
    assert spectra[V.DNL].matches([0, 1.25, (165 - r105) / 120, (165 + r105) / 120], 1e-12)
    exact = exact_eigenvalues(variant_char_poly(rev, V.DNL))
    assert [str(z) for z, _ in exact] == ["0", "5/4", "(165-√105)/120", "(165+√105)/120"]


def test_exact_eigenvalues_petersen():
    pairs = exact_eigenvalues(variant_char_poly(fam("petersen"), V.DNL))
    assert pairs == [(0, 1), (1, 5), (Fraction(6, 5), 4)] or pairs == [(0, 1), (1, 4), (Fraction(6, 5), 5)]
    assert pairs == [(0, 1), (1, 4), (Fraction(6, 5), 5)]


def test_exact_eigenvalues_paley13():
    pairs = exact_eigenvalues(variant_char_poly(fam("paley", 13), V.D))
    assert pairs == [(Surd(Fraction(-3, 2), Fraction(-1, 2), 13), 6), (Surd(Fraction(-3, 2), Fraction(1, 2), 13), 6),
                     (Fraction(18), 1)]


def test_spectrum_json_sorted():
    js = variant_spectrum(fam("cycle", 4), V.D).to_json()
    assert [(round(e["re"], 9), e["multiplicity"]) for e in js] == [(-2, 2), (0, 1), (4, 1)]


def test_nonsymmetric_route():
    s = eigenvalues(variant_matrix(fam("dicycle", 4), V.D), symmetric=False)
    assert s.matches([6, -2, -2 + 2j, -2 - 2j], 1e-12)
    with pytest.raises(ValueError):
        eigenvalues(np.array([[0.0, 1.0], [2.0, 0.0]]), symmetric=True)


# --- bounds ------------------------------------------------------------------------

def test_bounds_k6_minimum_tight():
    rep = verify_bounds(fam("complete", 6))
    rec = rep["n-1 <= rho(D)"]
    assert rec.holds and rec.tight and rec.consistent and abs(rec.rhs - 5) < 1e-12


def test_bounds_dicycle_maximum_tight():
    rep = verify_bounds(fam("dicycle", 5))
    rec = rep["rho(D) <= n(n-1)/2"]
    assert rec.tight and rec.equality_condition and abs(rec.lhs - 10) < 1e-9
    assert rep.all_hold and rep.all_consistent


def test_bounds_path_not_tight():
    rep = verify_bounds(fam("path", 4))
    lo, hi = rep["t_mean <= rho(D)"], rep["rho(D) <= t_max"]
    assert lo.lhs == 5 and hi.rhs == 6 and lo.holds and hi.holds
    assert not lo.tight and not hi.tight and rep.all_consistent


def test_bounds_hold_up_to_order_8(infos8):
    for n, infos in infos8.items():
        graphs = connected(n)
        for g, info, spectra in zip(graphs, infos, batch_all_spectra(infos)):
            rep = verify_bounds(g, info, spectra)
            assert rep.all_hold and rep.all_consistent, (n, [r.name for r in rep.failures()])


def test_psd_and_normalized_radius_up_to_order_8(infos8):
    for n, infos in infos8.items():
        for spectra in batch_all_spectra(infos):
            for v in (V.DQ, V.DL, V.DNL):
                assert min(spectra[v].real) >= -1e-9
            if n >= 3:
                assert spectra[V.DNL].spectral_radius < 2


def test_extremal_graphs_per_order(infos8):
    for n, infos in infos8.items():
        if n < 3:
            continue
        graphs = connected(n)
        spectra = batch_all_spectra(infos)
        for v, kn_value in ((V.D, n - 1), (V.DQ, 2 * n - 2), (V.DL, n), (V.DNL, n / (n - 1))):
            radii = [s[v].spectral_radius for s in spectra]
            low = min(radii)
            assert abs(low - kn_value) < 1e-9
            at_min = [g for g, r in zip(graphs, radii) if abs(r - low) < 1e-9]
            assert [g.num_edges for g in at_min] == [n * (n - 1) // 2]
            if v is not V.DNL:
                high = max(radii)
                at_max = [g for g, r in zip(graphs, radii) if abs(r - high) < 1e-9]
                assert len(at_max) == 1 and at_max[0].num_edges == n - 1 and max(at_max[0].degrees()) <= 2


def test_perron_root_simple_and_positive_vector():
    for g in up_to(6, 2):
        a = variant_float(g, V.D)
        w, vec = jacobi_eigh(a, vectors=True)
        assert w[-1] - w[-2] > 1e-9
        top = vec[:, -1] * np.sign(vec[0, -1])
        assert (top > 0).all()


def test_digraph_bounds_random(rng):
    for _ in range(500):
        d = random_strong_digraph(rng, rng.randint(2, 7), p=rng.choice([0.1, 0.3, 0.6]))
        rep = verify_bounds(d)
        assert rep.all_hold and rep.all_consistent, [r.name for r in rep.failures()]
        s = all_spectra(d)
        for v in (V.DQ, V.DL, V.DNL):
            assert min(z.real for z in s[v]) >= -1e-9
        assert s[V.DNL].spectral_radius <= 2 + 1e-9


@pytest.mark.parametrize("n", range(2, 9))
def test_dicycle_and_complete_digraph_extremes(n):
    cyc = all_spectra(fam("dicycle", n))
    assert abs(cyc[V.D].spectral_radius - n * (n - 1) / 2) < 1e-9
    assert abs(cyc[V.DQ].spectral_radius - n * (n - 1)) < 1e-9
    comp = all_spectra(fam("complete_digraph", n))
    assert abs(comp[V.D].spectral_radius - (n - 1)) < 1e-9
    assert abs(comp[V.DQ].spectral_radius - 2 * (n - 1)) < 1e-9


# --- perturbation ------------------------------------------------------------------

def test_edge_addition_star_laplacian_unchanged():
    star = fam("star", 5)
    rep = edge_addition_monotonicity(star, (1, 2))
    assert abs(rep.rho_before["DL"] - 9) < 1e-9 and abs(rep.rho_after["DL"] - 9) < 1e-9
    assert rep.strict["D"] and rep.strict["DQ"] and not rep.strict["DL"]
    assert rep.variant_ok["DQ"] and rep.variant_ok["DL"]


def test_edge_addition_distance_per_index_counterexample():
    # the middle distance eigenvalue of K_{1,4} rises from -2 to -1 when a leaf edge is added
    star = fam("star", 5)
    before = np.linalg.eigvalsh(all_pairs_distances(star).dist.astype(float))
    after = np.linalg.eigvalsh(all_pairs_distances(star.add_edge(1, 2)).dist.astype(float))
    assert after[2] > before[2] + 0.5
    rep = edge_addition_monotonicity(star, (1, 2))
    assert not rep.variant_ok["D"] and not rep.holds


def test_edge_addition_cycle_chord():
    rep = edge_addition_monotonicity(fam("cycle", 5), (0, 2))
    assert rep.variant_ok["DQ"] and rep.variant_ok["DL"]
    assert rep.strict["D"] and rep.strict["DQ"]


def test_edge_addition_rejects_edges():
    with pytest.raises(ValueError):
        edge_addition_monotonicity(fam("cycle", 5), (0, 1))


def test_edge_addition_random(rng):
    done = 0
    while done < 500:
        g = random_connected_graph(rng, rng.randint(3, 8), p=rng.choice([0.1, 0.3]))
        if not g.non_edges():
            continue
        rep = edge_addition_monotonicity(g, rng.choice(g.non_edges()))
        # per-index comparison is guaranteed for DQ and DL, where the difference is PSD
        assert rep.variant_ok["DQ"] and rep.variant_ok["DL"]
        assert rep.strict["D"] and rep.strict["DQ"]
        assert rep.rho_after["DL"] <= rep.rho_before["DL"] + 1e-8
        done += 1


def test_edge_addition_digraph_reports_only(rng):
    d = random_strong_digraph(rng, 5, 0.2)
    rep = edge_addition_monotonicity(d, d.non_arcs()[0])
    assert rep.variant_ok["D"] and rep.variant_ok["DQ"]
    assert isinstance(rep.variant_ok["DL"], bool)


@pytest.mark.parametrize("g,v", [(fam("cycle", 6), 0), (fam("path", 5), 0), (fam("complete", 4), 2)])
def test_interlacing_examples(g, v):
    assert interlacing_check(g, v)


@given(st.integers(3, 8).flatmap(lambda n: st.tuples(
    st.integers(0, 10 ** 6).map(lambda s: random_connected_graph(random.Random(s), n)), st.integers(0, n - 1))))
def test_interlacing_random(pair):
    g, v = pair
    assert interlacing_check(g, v)


def test_spectrum_matches_is_multiset_equality():
    s = Spectrum.from_values([1, 1, 2])
    assert s.matches([2, 1, 1]) and not s.matches([1, 2, 2]) and not s.matches([1, 2])
