import pytest

from qtop.hopf import quantum_group
from qtop.rep import (are_isomorphic, catalogue, decompose, dual, fusion_formula, hom_space,
                      multiplicities, projective_module, qdim, simple_module, tensor)
from qtop.scalar import field_init
from qtop import verify


@pytest.mark.parametrize("r", [3, 5])
def test_catalogue_relations(r):
    assert verify.check_module_relations(r)
    assert verify.check_dimensions(r)


def test_module_dims():
    assert simple_module(5, 2).dim == 3
    assert projective_module(5, 1).dim == 10


def test_schur():
    V = simple_module(5, 1)
    assert len(hom_space(V, V)) == 1
    assert hom_space(V, simple_module(5, 2)) == []


def test_projective_endomorphisms():
    # End(P_n) is two dimensional: identity and the socle map
    assert len(hom_space(projective_module(5, 1), projective_module(5, 1))) == 2


def test_dual_of_simple():
    V = simple_module(5, 3)
    assert are_isomorphic(dual(V), V)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_fusion_matches_decomposition(r):
    assert verify.check_fusion(r)


def test_steinberg_times_v1():
    r = 5
    got = multiplicities(tensor(simple_module(r, r - 1), simple_module(r, 1)))
    assert got == {"P3": 1}


def test_projective_ideal():
    # tensoring a projective keeps qdim zero
    r = 5
    ctx = field_init(r)
    T = tensor(projective_module(r, 0), simple_module(r, 2))
    assert qdim(T) == ctx.zero
    assert all(lab.startswith("P") or lab == f"V{r - 1}" for lab in decompose(T))


def test_fusion_formula_small():
    assert sorted(fusion_formula(5, 2, 2)) == sorted(decompose(tensor(simple_module(5, 2), simple_module(5, 2))))


def test_end_structure():
    assert verify.check_end_structure(3)
    assert verify.check_dinaturality(3)


def test_catalogue_size():
    assert len(catalogue(quantum_group(5))) == 5 + 4
