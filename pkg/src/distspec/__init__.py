"""Exact and numeric spectra of distance matrices of graphs and digraphs."""
from .graphs import Digraph, FormatError, Graph, parse_digraph6, parse_graph6, to_digraph6, to_graph6
from .distances import DisconnectedInput, DistanceInfo, all_pairs_distances
from .canon import canonical_form, enumerate_connected_graphs, enumerate_trees, is_isomorphic
from .structure import StructuralReport, structural_report
from .matrices import ALL_VARIANTS, MatrixVariant, RationalMatrix, variant_float, variant_matrix
from .exact_poly import ExactPolynomial, Inertia, coefficient_analytics, inertia_exact, variant_char_poly
from .surds import Surd
from .spectra import Spectrum, all_spectra, exact_eigenvalues, variant_spectrum, verify_bounds
from .reductions import find_twins, quotient_spectrum, twin_quotient_poly
from .products import HypothesisError, ProductSpec, product_graph, product_spectrum
from .families import FamilySpec, build, classify, oracle_spectrum
from .cospectral import are_cospectral, census, cousin_pairs, preservation_report
from .addressing import minimal_addressing_search, tree_addressing, verify_addressing

__all__ = [name for name in dir() if not name.startswith("_")]
