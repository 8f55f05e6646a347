import pytest

from qtop.scalar import field_init
from qtop.semisimple import (caterpillar_graph, count_labelings, gauss_sum_identity, genus_one_quotient_dim,
                             kirby_unknot, lens_rt_oracle, rt_invariant, simple_indices, smatrix,
                             smatrix_by_evaluation, smatrix_formula, ss_normalization, stabilization_report,
                             theta_graph, verlinde_dim)
from qtop.tangle.diagram import DiagramError
from qtop.tangle.library import empty, hopf_link, lens_space, unlink


def test_simple_indices():
    assert simple_indices(7) == [0, 2, 4]


@pytest.mark.parametrize("r", [3, 5, 7])
def test_smatrix(r):
    assert smatrix_formula(r) == smatrix_by_evaluation(r)
    assert smatrix(r).shape == ((r - 1) // 2, (r - 1) // 2)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_gauss_identity(r):
    assert gauss_sum_identity(r)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_normalization_consistent(r):
    ctx = field_init(r)
    n = ss_normalization(r)
    assert n.check()
    assert n.D * n.D == sum((ctx.qint(i + 1) ** 2 for i in simple_indices(r)), ctx.zero)


@pytest.mark.parametrize("r", [5, 7])
def test_sphere_and_s2xs1(r):
    n = ss_normalization(r)
    assert rt_invariant(empty(), r) == n.D ** -1
    assert rt_invariant(lens_space(0), r) == field_init(r).one
    assert rt_invariant(lens_space(1), r) == n.D ** -1


@pytest.mark.parametrize("r", [5, 7])
@pytest.mark.parametrize("p", [-3, -1, 2, 4])
def test_lens_spaces(r, p):
    assert rt_invariant(lens_space(p), r) == lens_rt_oracle(r, p)


def test_connected_sum_is_product():
    r = 5
    n = ss_normalization(r)
    a = rt_invariant(lens_space(2), r)
    b = rt_invariant(lens_space(3), r)
    both = rt_invariant(unlink([("red", 2), ("red", 3)]), r)
    assert both == a * b * n.D


def test_kirby_expansion_with_fixed_colour():
    r = 5
    d = hopf_link("red", "red")
    ctx = field_init(r)
    from qtop.semisimple import kirby_expansion
    assert kirby_expansion(d, r, colors=[2, 2]) == ctx.qint(9)


def test_closed_form_stabilization_report():
    rep = stabilization_report(5)
    assert rep["D_squared_is_sum_of_dims"]
    assert rep["opposite_of_closed_form"]


def test_verlinde_counts():
    assert [verlinde_dim(g, 5) for g in range(4)] == [1, 2, 5, 15]
    assert verlinde_dim(2, 5, theta_graph()) == 5
    assert verlinde_dim(2, 7, theta_graph()) == verlinde_dim(2, 7) == 14


def test_caterpillar_shape():
    edges = caterpillar_graph(3)
    assert len(edges) == 3 * 3 - 3
    with pytest.raises(ValueError):
        count_labelings([(0, 1)], 5)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_genus_one_quotient(r):
    assert genus_one_quotient_dim(r) == verlinde_dim(1, r)


def test_open_diagram_rejected():
    from qtop.tangle import parse_diagram
    with pytest.raises(DiagramError):
        rt_invariant(parse_diagram("id(red)"), 5)
