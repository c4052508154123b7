import pytest

from conftest import SMALL, cycle, empty, petersen, single
from ngpgrowth.algebra import Polynomial, RationalFunction, expand
from ngpgrowth.automaton import build_fsa, count_geodesics, generators, language_counts
from ngpgrowth.graphs import fixture_names, load_fixture
from ngpgrowth.oracle import oracle_counts
from ngpgrowth.series import grammar_from_fsa, growth_series, growth_series_dense, lump

P = Polynomial


def series_of(g, **kw):
    return growth_series(grammar_from_fsa(build_fsa(g)), **kw)


def test_grammar_single_vertex_n2():
    gr = grammar_from_fsa(build_fsa(single(2)))
    assert [str(v) for v in gr.variables] == ["{}", "{v}"]
    assert gr.rules == [(0, "v", 1)]
    assert gr.epsilon == {0, 1}


def test_grammar_single_vertex_n5():
    gr = grammar_from_fsa(build_fsa(single(5)))
    assert gr.num_variables == 5
    assert len(gr.rules) == 4
    assert len(gr.epsilon) == 5


@pytest.mark.parametrize("name", fixture_names())
def test_every_powered_clique_reachable(name):
    fsa = build_fsa(load_fixture(name))
    gr = grammar_from_fsa(fsa)
    assert gr.reachable() == set(range(fsa.num_states))
    assert gr.num_variables == fsa.num_states


def test_growth_examples():
    assert series_of(single(2)).series == RationalFunction(P([1, 1]))
    assert series_of(empty(3)).series == RationalFunction(P([1, 1]), P([1, -2]))


def test_square_matches_oracle():
    g = load_fixture("square_20_7_2_13")
    f = series_of(g).series
    assert list(expand(f, 6)) == list(oracle_counts(g, 6))
    assert list(expand(f, 6)) == [1, 7, 42, 228, 1186, 6032, 30330]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_sparse_and_dense_solvers_agree(name):
    gr = grammar_from_fsa(build_fsa(SMALL[name]))
    dense = growth_series_dense(gr)
    sparse = growth_series(gr, per_variable=True)
    assert sparse.series == dense[gr.start]
    assert sparse.variables == dense


@pytest.mark.parametrize("name", sorted(SMALL) + fixture_names())
def test_expand_matches_dp(name):
    g = SMALL.get(name) or load_fixture(name)
    fsa = build_fsa(g)
    f = growth_series(grammar_from_fsa(fsa)).series
    assert expand(f, 12) == count_geodesics(fsa, 12)


@pytest.mark.parametrize("name", sorted(SMALL) + ["hexagon_diameters_3_7", "petersen_n4"])
def test_per_variable_series_match_state_counts(name):
    g = SMALL.get(name) or load_fixture(name)
    fsa = build_fsa(g)
    gs = growth_series(grammar_from_fsa(fsa), per_variable=True)
    per_state = language_counts(fsa, 10)
    for q, f in enumerate(gs.variables):
        assert list(expand(f, 10)) == per_state[q]


@pytest.mark.parametrize("name", sorted(SMALL) + fixture_names())
def test_count_growth_bound(name):
    g = SMALL.get(name) or load_fixture(name)
    c = count_geodesics(build_fsa(g), 10)
    s = len(generators(g))
    assert c[0] == 1
    assert all(c[n] <= s * c[n - 1] for n in range(1, len(c)))


@pytest.mark.parametrize("pair", [("two_squares_4_6", "octagon_4_6"), ("two_pentagons_2_6", "decagon_2_6")])
def test_equivalent_graphs_share_series(pair):
    a, b = (series_of(load_fixture(n)).series for n in pair)
    assert a == b


def test_lumping_respects_series():
    # on a vertex-transitive graph all single-vertex states collapse
    fsa = build_fsa(petersen())
    gr = grammar_from_fsa(fsa)
    blocks = lump(gr.successors(), [True] * gr.num_variables)
    singles = {blocks[fsa.index[s]] for s in fsa.states if len(s) == 1}
    assert len(singles) == 1


def test_series_json_shape():
    out = series_of(cycle(4)).to_json(4)
    assert set(out) == {"numerator", "denominator", "coefficients"}
    assert out["coefficients"][:2] == [1, 4]
