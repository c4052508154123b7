"""Geodesic growth series of numbered graph products.

A numbered graph assigns an order N(v) >= 2 to each vertex; its product is
the graph product of the cyclic groups Z/N(v).  This package computes the
generating function of geodesic words in the standard generators by four
independent routes (automaton, link-profile closed form for right-angled
Coxeter groups, triangle-free system, brute force) and checks
link-regularity and equivalence of numbered graphs.
"""

from .algebra import (
    CountTable,
    Polynomial,
    RationalFunction,
    expand,
    poly_arith,
    poly_gcd,
    rat_normalize,
    solve_linear,
)
from .automaton import (
    GeodesicFSA,
    Generator,
    PoweredClique,
    beta_table,
    build_fsa,
    count_geodesics,
    fsa_to_dot,
    generators,
    power_profile,
    run,
)
from .errors import (
    GraphParseError,
    HypothesisError,
    InvariantViolation,
    NGPError,
    NotLinkRegularError,
    ResourceBudgetError,
)
from .graphs import (
    LinkProfile,
    Multiset,
    NumberedGraph,
    are_equivalent,
    cliques,
    is_link_regular,
    link,
    link_profile,
    link_relative,
    load_fixture,
    load_graph,
    parse_graph,
)
from .oracle import is_geodesic, oracle_counts, shuffle_closure
from .racg import (
    corollary_d4,
    n_table_closed,
    n_table_recurrence,
    racg_growth,
    racg_growth_via_pq,
)
from .series import RegularGrammar, grammar_from_fsa, growth_series
from .trianglefree import TfSystem, build_tf_system, solve_tf

__version__ = "0.1.0"


def automaton_growth(g: NumberedGraph) -> RationalFunction:
    """Growth series via the geodesic automaton; works for every numbered graph."""
    return growth_series(grammar_from_fsa(build_fsa(g))).series
