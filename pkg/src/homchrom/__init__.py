"""Hom complexes of graphs and the chromatic lower bounds they certify.

The usual entry points::

    from homchrom import build_hom, betti_gf2, chrom_lower_bound, transposition_spec
    from homchrom.graphs import kneser

    chrom_lower_bound(transposition_spec(2), kneser(5, 2)).bound   # 3
"""

from .bounds import (BoundReport, HeightCache, TestGraphSpec, chrom_lower_bound, clique_bound,
                     complete_graph_bound, f_closed_form, f_oracle, reflection_spec, test_graph_spec,
                     transposition_spec)
from .complexes import (ProdComplex, SimplicialComplex, barycentric, build_hom, build_hom_plus,
                        build_independence, build_neighborhood, link_of_vertex,
                        skeleton_determination_check, support)
from .errors import (BudgetError, DefectError, FreenessError, GraphFormatError, HomchromError,
                     ParameterError, ShapeError)
from .gf2 import SparseBitMatrix, rank_gf2, solve_gf2
from .graphs import Graph, compose_graphs, make_named_graph, parse_graph_text
from .homology import (ChainComplexGF2, CohomologyGF2, betti_gf2, chain_complex_gf2, euler_characteristic,
                       integer_homology)
from .homs import (FoldTrace, GraphHom, chromatic_number_exact, enumerate_homs, fold_reduce, is_homomorphism,
                   rational_chromatic_search, winding_number)
from .smith import IntSparseMatrix, smith_normal_form
from .spectral import d1_maps, e1_tableau, e2_tableau, spectral_report
from .swclasses import height, induced_action, quotient_complex, sw_power_cocycle

__version__ = "0.1.0"
