from __future__ import annotations

import json
from fractions import Fraction

import pytest

from distspec import (ALL_VARIANTS, MatrixVariant as V, all_pairs_distances, are_cospectral, census,
                      cousin_pairs, is_isomorphic, parse_graph6, preservation_report, structural_report,
                      variant_char_poly)
from distspec.cospectral import (ACROSS, WITHIN, CousinSet, NotCospectral, PRESERVATION_TABLE,
                                 cousin_construction, determined_within_catalog, find_cousins, is_cousin_set)
from distspec.exact_poly import ExactPolynomial
from distspec.families import FamilySpec, build
from distspec.graphs import Graph

from conftest import connected

P = ExactPolynomial
TABLE = {3: (0, 0, 0, 0), 4: (0, 0, 0, 0), 5: (0, 2, 0, 0), 6: (0, 6, 0, 0), 7: (22, 38, 43, 0),
         8: (658, 453, 745, 2)}


def fam(kind, *params):
    return build(FamilySpec(kind, params))


@pytest.fixture(scope="module")
def census7():
    return census(connected(7))


def class_with(result, variant, poly):
    found = [members for p, members in result.classes[variant] if p == poly]
    assert len(found) == 1
    return [parse_graph6(s) for s in found[0]]


# --- cospectrality -----------------------------------------------------------------

def test_petersen_cocktail_party_dnl():
    pet, cp = fam("petersen"), fam("cocktail_party", 5)
    assert are_cospectral(pet, cp, V.DNL)
    expected = P([0, Fraction(-7776, 3125), Fraction(63504, 3125), Fraction(-230256, 3125),
                  Fraction(486504, 3125), Fraction(-660126, 3125), Fraction(23861, 125),
                  Fraction(-2872, 25), Fraction(222, 5), -10, 1])
    assert variant_char_poly(pet, V.DNL) == expected
    assert structural_report(pet).complement_component_count == 1
    assert structural_report(cp).complement_component_count == 5
    assert not are_cospectral(pet, cp, V.D)


def test_cospectral_trivial_cases():
    g = fam("cycle", 6)
    assert all(are_cospectral(g, g, v) for v in ALL_VARIANTS)
    assert not are_cospectral(fam("complete", 4), fam("cycle", 4), V.D)
    assert not are_cospectral(fam("complete", 4), fam("complete", 5), V.D)


# --- census ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_census_small_orders(n):
    res = census(connected(n))
    assert res.total == len(connected(n))
    assert tuple(res.count(v) for v in ALL_VARIANTS) == TABLE[n]


def test_census_order_7(census7):
    assert census7.total == 853
    assert tuple(census7.count(v) for v in ALL_VARIANTS) == TABLE[7]
    assert census7.csv_row() == "7,853,22,38,43,0"
    for v in ALL_VARIANTS:
        for p, members in census7.classes[v]:
            assert len(members) >= 2
            graphs = [parse_graph6(s) for s in members]
            assert all(variant_char_poly(g, v) == p for g in graphs)


@pytest.mark.slow
def test_census_order_8():
    res = census(connected(8), jobs=4)
    assert res.total == 11117
    assert tuple(res.count(v) for v in ALL_VARIANTS) == TABLE[8]


def test_census_parallel_matches_serial():
    graphs = connected(6)
    serial = census(graphs, jobs=1, chunk_size=17)
    parallel = census(reversed(graphs), jobs=3, chunk_size=17)
    assert json.dumps(serial.to_json(), sort_keys=True) == json.dumps(parallel.to_json(), sort_keys=True)


def test_n5_signless_laplacian_pair():
    res = census(connected(5), [V.DQ])
    assert len(res.classes[V.DQ]) == 1
    poly, members = res.classes[V.DQ][0]
    assert poly == P([-2112, 2480, -1132, 249, -26, 1])
    g1, g2 = sorted((parse_graph6(s) for s in members), key=lambda g: sorted(g.degrees()))
    r1, r2 = structural_report(g1), structural_report(g2)
    assert (r1.degree_sequence, r2.degree_sequence) == ((1, 3, 3, 3, 4), (2, 2, 2, 4, 4))
    assert (r1.transmission_sequence, r2.transmission_sequence) == ((4, 5, 5, 5, 7), (4, 4, 6, 6, 6))
    assert (r1.complement_component_count, r2.complement_component_count) == (2, 3)


def test_n7_distance_pair(census7):
    poly = P([0, 0, -72, -180, -142, -39, 0, 1])
    g1, g2 = sorted(class_with(census7, V.D, poly), key=lambda g: sorted(g.degrees()))
    r1, r2 = structural_report(g1), structural_report(g2)
    assert r1.degree_sequence == (3, 4, 4, 4, 5, 5, 5) and r2.degree_sequence == (4, 4, 4, 4, 4, 4, 6)
    assert r1.transmission_sequence == (7, 7, 7, 8, 8, 8, 9)
    assert r2.transmission_sequence == (6, 8, 8, 8, 8, 8, 8)
    assert r1.planar is True and r2.planar is False
    assert (r1.complement_component_count, r2.complement_component_count) == (1, 2)


# --- preservation ------------------------------------------------------------------

def test_preservation_report_flags(census7):
    g1, g2 = class_with(census7, V.D, P([0, 0, -72, -180, -142, -39, 0, 1]))
    rep = preservation_report(g1, g2, V.D)
    assert rep.trace_equal and rep.violations == ()
    assert not rep.equal["degree_sequence"] and not rep.equal["planar"]
    with pytest.raises(NotCospectral):
        preservation_report(fam("cycle", 5), fam("path", 5), V.D)


def test_preserved_parameters_hold_over_census(census7):
    for v in ALL_VARIANTS:
        for _, members in census7.classes[v]:
            graphs = [parse_graph6(s) for s in members]
            for h in graphs[1:]:
                assert preservation_report(graphs[0], h, v).violations == ()


def test_laplacian_pairs_share_wiener(census7):
    for _, members in census7.classes[V.DL]:
        ws = {all_pairs_distances(parse_graph6(s)).wiener for s in members}
        assert len(ws) == 1


def test_signless_pairs_keep_transmission_regularity(census7):
    for res in (census(connected(6), [V.DQ]), census7):
        for _, members in res.classes[V.DQ]:
            flags = {all_pairs_distances(parse_graph6(s)).transmission_regular for s in members}
            assert len(flags) == 1


def test_transmission_regular_distance_pairs(census7):
    for _, members in census7.classes[V.D]:
        infos = [all_pairs_distances(parse_graph6(s)) for s in members]
        regular = [i for i in infos if i.transmission_regular]
        assert len({i.t_min for i in regular}) <= 1
        assert len({i.wiener for i in regular}) <= 1


def test_preservation_table_shape():
    assert all(set(row) == set(ALL_VARIANTS) for row in PRESERVATION_TABLE.values())
    assert PRESERVATION_TABLE["wiener"][V.DL] is True


# --- determined within catalog -----------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("g,v", [(lambda: fam("path", 8), V.D), (lambda: fam("complete", 8), V.DL),
                                 (lambda: fam("path", 8), V.DNL)])
def test_determined_within_order_8(g, v):
    assert determined_within_catalog(g(), connected(8), v)


def test_determined_within_order_7(census7):
    for v in ALL_VARIANTS:
        assert determined_within_catalog(fam("path", 7), connected(7), v)
    g1, _ = class_with(census7, V.D, P([0, 0, -72, -180, -142, -39, 0, 1]))
    assert not determined_within_catalog(g1, connected(7), V.D)


# --- cousins -----------------------------------------------------------------------

def test_cousin_set_conditions():
    # two pendant pairs hanging off a path: 0,1 attach to 4 and 2,3 attach to 5
    g = Graph.from_edges(6, [(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)])
    assert is_cousin_set(g, (0, 1, 2, 3))
    assert CousinSet((0, 1, 2, 3)) in find_cousins(g)
    # attach a third leaf near the first pair so outside distance sums differ
    h = Graph.from_edges(7, [(0, 4), (1, 4), (2, 5), (3, 5), (4, 5), (4, 6)])
    assert not is_cousin_set(h, (0, 1, 2, 3))
    assert CousinSet((0, 1, 2, 3)) not in find_cousins(h)
    with pytest.raises(ValueError):
        cousin_construction(g, CousinSet((0, 1, 2, 3)), "sideways")


def test_cousin_scan_order_7():
    emitted = 0
    forms = set()
    for g in connected(7):
        for form, cs, g1, g2 in cousin_pairs(g):
            assert are_cospectral(g1, g2, V.DL)
            assert not is_isomorphic(g1, g2)
            emitted += 1
            forms.add(form)
    assert emitted > 0 and forms <= {WITHIN, ACROSS}


@pytest.mark.slow
def test_cousin_scan_order_8_produces_pairs():
    found = 0
    for g in connected(8)[::5]:
        for _, _, g1, g2 in cousin_pairs(g):
            assert are_cospectral(g1, g2, V.DL) and not is_isomorphic(g1, g2)
            found += 1
    assert found >= 1
