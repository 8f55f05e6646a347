import pytest

from qtop.linalg import Matrix
from qtop.nonsemisimple import (admissible_cuts, center_dim, commutator_span_rank_bruteforce,
                                cutting_independence_check, hennings_invariant, hh0_dim, modified_trace,
                                modified_trace_table, nss_normalization, renormalized_invariant,
                                right_partial_trace)
from qtop.rep import hom_space, projective_module, simple_module, tensor
from qtop.scalar import field_init
from qtop.semisimple import rt_invariant
from qtop.tangle import AdmissibilityError
from qtop.tangle.library import empty, hopf_link, lens_space, unknot, unlink


@pytest.mark.parametrize("r", [3, 5])
def test_modified_trace_values(r):
    ctx = field_init(r)
    table = modified_trace_table(r)
    for n in range(r - 1):
        assert table[f"P{n}"] == ctx.qbrace_prime(n + 1)


def test_modified_trace_rejects_simple():
    V = simple_module(5, 1)
    with pytest.raises(AdmissibilityError):
        modified_trace(V, Matrix.identity(V.ctx, V.dim))


def test_modified_trace_on_nilpotent():
    # the socle endomorphism of P_n has trace zero under qtr but not under t
    r = 5
    P = projective_module(r, 1)
    endos = hom_space(P, P)
    values = [modified_trace(P, f.matrix) for f in endos]
    assert any(not v.is_zero() for v in values)


def test_partial_trace_of_identity():
    r = 3
    X = simple_module(r, 1)
    P = projective_module(r, 0)
    ctx = field_init(r)
    ident = Matrix.identity(ctx, P.dim * X.dim)
    assert right_partial_trace(ident, P, X) == Matrix.identity(ctx, P.dim) * ctx.qint(2)


@pytest.mark.parametrize("r", [3, 5])
def test_nss_normalization(r):
    assert nss_normalization(r).check()


@pytest.mark.parametrize("r", [3, 5])
def test_hennings_basic(r):
    n = nss_normalization(r)
    assert hennings_invariant(empty(), r) == n.D ** -1
    assert hennings_invariant(lens_space(0), r).is_zero()
    assert hennings_invariant(lens_space(1), r) == n.D ** -1
    assert hennings_invariant(lens_space(-1), r) == n.D ** -1


def test_hennings_unlink_zero_framings():
    assert hennings_invariant(unlink([("red", 0), ("red", 0)]), 3).is_zero()


def test_renormalized_unknots():
    for r in (3, 5):
        ctx = field_init(r)
        n = nss_normalization(r)
        assert renormalized_invariant(unknot("P0"), r) == n.D ** -1 * ctx.qbrace_prime(1)
        assert renormalized_invariant(unknot(f"V{r - 1}"), r) == n.D ** -1


def test_renormalized_needs_projective():
    with pytest.raises(AdmissibilityError):
        renormalized_invariant(unknot("V1"), 5)
    assert admissible_cuts(unknot("V1"), 5) == []


def test_fenn_rourke_blowup():
    r = 3
    for s in (1, -1):
        lhs = renormalized_invariant(hopf_link("red", "P0", "+", s, 0), r)
        rhs = renormalized_invariant(unknot("P0", -s), r)
        assert lhs == rhs


def test_cutting_independence():
    assert cutting_independence_check(hopf_link("P0", "P1"), 3)
    assert cutting_independence_check(hopf_link("P0", "V1", "-"), 3)


def test_center_and_hh0_r3():
    assert center_dim(3) == hh0_dim(3) == 4
    assert 27 - commutator_span_rank_bruteforce(3) == 4


def test_cks_ratio_constant_r3():
    r = 3
    ratios = [hennings_invariant(lens_space(p), r) / (rt_invariant(lens_space(p), r) * p) for p in range(1, 5)]
    assert all(x == ratios[0] for x in ratios)


def _closed_coupon(h, A, labels):
    from qtop.tangle import parse_diagram
    X, Y = labels
    table = {"h": {"source": [X, Y], "target": [X, Y],
                   "matrix": [[h[i, j].to_json() for j in range(A.dim)] for i in range(A.dim)]}}
    return parse_diagram(f"lcoev({X}); id({X}), lcoev({Y}), id({X}*); coup(h), id({Y}*), id({X}*); "
                         f"id({X}), rev({Y}), id({X}*); rev({X})", table)


def test_coupon_graph_cuts():
    # every cut of the closed coupon gives D^-1 t(h), including cuts on the V1 strand
    r = 3
    A = tensor(projective_module(r, 0), simple_module(r, 1))
    D = nss_normalization(r).D
    for h in hom_space(A, A):
        d = _closed_coupon(h.matrix, A, ("P0", "V1"))
        cuts = admissible_cuts(d, r)
        assert len(cuts) == 8
        expected = modified_trace(A, h.matrix) * D ** -1
        assert all(renormalized_invariant(d, r, c) == expected for c in cuts)
