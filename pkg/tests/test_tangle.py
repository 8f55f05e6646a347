import json

import pytest

from qtop.linalg import Matrix
from qtop.scalar import field_init
from qtop.tangle import (AdmissibilityError, DiagramError, evaluate_blue, evaluate_scalar,
                         hennings_functional, linking_matrix, parse_diagram, signature,
                         trace_components, universal_beads)
from qtop.tangle.evaluate import contract_beads, evaluate_bichrome_cut, projective_edges
from qtop.tangle.library import hopf_link, hopf_text, unknot, unlink
from qtop.tangle.surgery import cut_tangle, determinant, first_homology_order, recolor_red


# -- parser ---------------------------------------------------------------------

def test_parse_roundtrip():
    d = parse_diagram(hopf_text("V1", "P0"))
    again = parse_diagram(d.to_text())
    assert again.to_text() == d.to_text()
    via_json = parse_diagram(json.dumps(d.to_json()))
    assert via_json.to_text() == d.to_text()


def test_comments_and_whitespace():
    d = parse_diagram("# a lone unknot\nlcoev(V2) ;\n  rev(V2)  # closing\n")
    assert d.is_closed() and d.n_levels == 3


def test_parse_error_position():
    with pytest.raises(DiagramError) as e:
        parse_diagram("id(V1);\n x+(V1)")
    assert (e.value.line, e.value.col) == (2, 7)


def test_boundary_mismatch():
    with pytest.raises(DiagramError, match="boundary mismatch"):
        parse_diagram("id(V1); id(V2)")


def test_unknown_generator_and_coupon():
    with pytest.raises(DiagramError, match="unknown generator"):
        parse_diagram("cup(V1)")
    with pytest.raises(DiagramError, match="not defined"):
        parse_diagram("coup(f)")


def test_label_range():
    d = unknot("V7")
    with pytest.raises(DiagramError):
        d.check_range(5)


def test_coupon_identity():
    table = {"f": {"source": ["V1"], "target": ["V1"], "matrix": [[1, 0], [0, 1]]}}
    d = parse_diagram("lcoev(V1); coup(f), id(V1*); rev(V1)", table)
    ctx = field_init(5)
    assert evaluate_scalar(d, 5) == ctx.qint(2)


# -- blue evaluation ------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_unknot_is_qdim(n):
    ctx = field_init(5)
    assert evaluate_scalar(unknot(f"V{n}"), 5) == ctx.qint(n + 1)


def test_projective_unknot_vanishes():
    assert evaluate_scalar(unknot("P1"), 5).is_zero()


def test_reidemeister_two_and_three():
    r = 5
    ctx = field_init(r)
    two = evaluate_blue(parse_diagram("x+(V1, V2); x-(V2, V1)"), r)
    assert two == Matrix.identity(ctx, 6)
    left = parse_diagram("x+(V1, V2), id(V3); id(V2), x+(V1, V3); x+(V2, V3), id(V1)")
    right = parse_diagram("id(V1), x+(V2, V3); x+(V1, V3), id(V2); id(V3), x+(V1, V2)")
    assert evaluate_blue(left, r) == evaluate_blue(right, r)


def test_twist_inverse():
    ctx = field_init(5)
    assert evaluate_blue(parse_diagram("tw+(P0); tw-(P0)"), 5) == Matrix.identity(ctx, 10)


def test_framing_twist_scalar():
    # tw+ on V_n is q^{(n^2+2n)/2} with q^{1/2} = q^{(r+1)/2} = -zeta^2
    r = 5
    ctx = field_init(r)
    for n in range(r - 1):
        theta = ctx.q((r + 1) // 2) ** (n * n + 2 * n)
        assert evaluate_scalar(unknot(f"V{n}", 1), r) == theta * ctx.qint(n + 1)


def test_hopf_link_blue():
    ctx = field_init(5)
    assert evaluate_scalar(hopf_link("V2", "V2"), 5) == ctx.qint(9)


# -- red strands and surgery data ------------------------------------------------

def test_linking_matrix():
    sd = linking_matrix(hopf_link("red", "red", "+", 2, 1))
    assert sd.ell == 2
    assert sd.linking == [[2, -1], [-1, 1]]
    assert sd.signature == 2
    assert first_homology_order(sd) == 1


def test_signature_and_determinant():
    assert signature([[0, 1], [1, 0]]) == 0
    assert signature([[-2]]) == -1
    assert determinant([[2, 1], [1, 2]]) == 3


def test_components():
    comps = trace_components(unlink([("red", 1), ("V1", 0), ("red", -2)]))
    assert len(comps) == 3
    assert sum(c.red for c in comps) == 2


def test_recolor():
    d = recolor_red(hopf_link("red", "red"), [parse_label_("V1"), parse_label_("V2")])
    ctx = field_init(5)
    assert not d.has_red()
    assert evaluate_scalar(d, 5) == evaluate_scalar(hopf_link("V1", "V2"), 5)


def parse_label_(s):
    from qtop.tangle import parse_label
    return parse_label(s)


def test_beads_contract_to_hennings():
    r = 3
    d = hopf_link("red", "red", "+", 1, -1)
    beads = universal_beads(d, r)
    from qtop.hopf import quantum_group
    lam = quantum_group(r).integral()
    assert contract_beads(beads, lam.value_on) == evaluate_scalar(d, r, hennings_functional(r))


# -- cutting ---------------------------------------------------------------------

def test_projective_edges():
    assert projective_edges(unknot("V1"), 5) == []
    assert projective_edges(hopf_link("P0", "V1"), 5)


def test_cut_is_endomorphism():
    r = 3
    d = hopf_link("P0", "P0")
    tangle, shift = cut_tangle(d, projective_edges(d, r)[0])
    assert not tangle.is_closed()
    label, f = evaluate_bichrome_cut(d, r, projective_edges(d, r)[0])
    assert f.shape == (2 * r, 2 * r)


def test_cut_must_be_projective():
    with pytest.raises(AdmissibilityError):
        evaluate_bichrome_cut(hopf_link("P0", "V1"), 5, (1, 3))


def test_coupon_must_intertwine():
    table = {"f": {"source": ["V1"], "target": ["V1"], "matrix": [[1, 0], [0, 2]]}}
    with pytest.raises(DiagramError, match="intertwiner"):
        evaluate_scalar(parse_diagram("lcoev(V1); coup(f), id(V1*); rev(V1)", table), 3)


def test_coupon_from_hom_space():
    from qtop.rep import hom_space, simple_module, tensor
    r = 5
    h = hom_space(tensor(simple_module(r, 1), simple_module(r, 1)), simple_module(r, 2))[0].matrix
    table = {"g": {"source": ["V1", "V1"], "target": ["V2"],
                   "matrix": [[h[i, j].to_json() for j in range(4)] for i in range(3)]}}
    assert evaluate_blue(parse_diagram("coup(g)", table), r) == h


def test_coupon_tables_do_not_leak():
    # two diagrams using the same coupon name with different matrices
    one = {"f": {"source": ["V1"], "target": ["V1"], "matrix": [[1, 0], [0, 1]]}}
    two = {"f": {"source": ["V1"], "target": ["V1"], "matrix": [[3, 0], [0, 3]]}}
    text = "lcoev(V1); coup(f), id(V1*); rev(V1)"
    a = evaluate_scalar(parse_diagram(text, one), 5)
    b = evaluate_scalar(parse_diagram(text, two), 5)
    assert b == a * 3
