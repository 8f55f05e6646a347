"""Acceptance suite: one test per criterion, exact equality throughout.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import time

import pytest

from qtop import verify
from qtop.hopf import quantum_group
from qtop.nonsemisimple import (center_dim, cutting_values, hennings_invariant, hh0_dim, modified_trace,
                                modified_trace_table, nss_normalization, closed_form_nss_normalization,
                                renormalized_invariant, right_partial_trace)
from qtop.rep import decompose, fusion_formula, hom_space, projective_module, qdim, simple_module, tensor
from qtop.scalar import field_init
from qtop.semisimple import (gauss_sum_column, genus_one_quotient_dim, kirby_unknot, lens_rt_oracle,
                             closed_form_ss_normalization, rt_invariant, simple_indices, smatrix_by_evaluation,
                             smatrix_formula, smatrix_invertible, ss_normalization, theta_graph,
                             verlinde_dim)
from qtop.tangle.library import hopf_link, lens_space, unknot, unlink

criterion = pytest.mark.criterion


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


@criterion(1, "Hopf/ribbon axioms at r=3 (full basis) and r=5 (100 samples), Yang-Baxter")
def test_hopf_axioms():
    with Budget(60):
        failed = [(3, n) for n, ok in verify.hopf_checks(3) if not ok]
        failed += [(5, n) for n, ok in verify.hopf_checks(5, samples=100) if not ok]
    assert not failed


@criterion(2, "S-matrix formula equals Hopf-link evaluation and is invertible, r=3,5,7")
def test_smatrix():
    with Budget(30):
        for r in (3, 5, 7):
            assert smatrix_formula(r) == smatrix_by_evaluation(r), r
            assert smatrix_invertible(r), r


@criterion(3, "Gauss-sum identity, r=3,5,7")
def test_gauss_sum():
    with Budget(5):
        for r in (3, 5, 7):
            ctx = field_init(r)
            for j in range((r - 1) // 2):
                expected = -ctx.rational(r) / ctx.qbrace(1) ** 2 if j == 0 else ctx.zero
                assert gauss_sum_column(r, j) == expected, (r, j)


@criterion(4, "qdim(V_n) = [n+1], qdim(P_n) = 0, r=3,5,7")
def test_dimensions():
    for r in (3, 5, 7):
        ctx = field_init(r)
        for n in range(r):
            assert qdim(simple_module(r, n)) == ctx.qint(n + 1)
        for n in range(r - 1):
            assert qdim(projective_module(r, n)).is_zero()


def _cyclicity(r):
    mods = [projective_module(r, 0), projective_module(r, 1), simple_module(r, r - 1)]
    count = 0
    for P in mods:
        for Q in mods:
            for f in hom_space(P, Q):
                for g in hom_space(Q, P):
                    assert modified_trace(P, g.matrix @ f.matrix) == modified_trace(Q, f.matrix @ g.matrix)
                    count += 1
    return count


def _partial_trace(r):
    X = simple_module(r, 1)
    count = 0
    for P in (projective_module(r, 0), projective_module(r, 1)):
        PX = tensor(P, X)
        for h in hom_space(PX, PX):
            assert modified_trace(PX, h.matrix) == modified_trace(P, right_partial_trace(h.matrix, P, X))
            count += 1
    return count


@criterion(5, "modified trace values, cyclicity and partial trace, r=3,5")
def test_modified_trace(report):
    with Budget(60):
        for r in (3, 5):
            ctx = field_init(r)
            table = modified_trace_table(r)
            for n in range(r - 1):
                assert table[f"P{n}"] == ctx.qbrace_prime(n + 1)
            nc, npt = _cyclicity(r), _partial_trace(r)
            assert nc > 0 and npt > 0
            report(f"r={r}: {nc} cyclicity pairs, {npt} partial-trace maps")


@criterion(6, "stabilization constants equal the closed forms (semisimple and non-semisimple)")
def test_stabilization(report):
    with Budget(30):
        mismatches = []
        for r in (3, 5, 7):
            ctx = field_init(r)
            closed = closed_form_ss_normalization(ctx)
            measured_plus, measured_minus = kirby_unknot(r, 1), kirby_unknot(r, -1)
            norm = ss_normalization(r)
            for name, got, want in (("Delta+", measured_plus, closed.delta_plus),
                                    ("Delta-", measured_minus, closed.delta_minus),
                                    ("D", norm.D, closed.D),
                                    ("delta", norm.delta, closed.delta)):
                if got != want:
                    mismatches.append(f"semisimple {name} r={r}")
        for r in (3, 5):
            H = quantum_group(r)
            closed = closed_form_nss_normalization(H.ctx)
            lam = H.integral()
            if lam(H.ribbon_inv()) != closed.delta_plus:
                mismatches.append(f"non-semisimple Delta+ r={r}")
            if lam(H.ribbon()) != closed.delta_minus:
                mismatches.append(f"non-semisimple Delta- r={r}")
            assert nss_normalization(r).check()
        if mismatches:
            report(f"{len(mismatches)} mismatches")
        assert not mismatches, ", ".join(mismatches)


@criterion(7, "tensor products of even simples decompose as the fusion rule, r=3,5,7")
def test_fusion():
    with Budget(300):
        for r in (3, 5, 7):
            for a in simple_indices(r):
                for b in simple_indices(r):
                    got = decompose(tensor(simple_module(r, a), simple_module(r, b)))
                    assert sorted(got) == sorted(fusion_formula(r, a, b)), (r, a, b)


@criterion(8, "Verlinde counts: genus 1, two genus-2 graphs at r=5, negligible quotient")
def test_verlinde(report):
    with Budget(60):
        for r in (3, 5, 7):
            assert verlinde_dim(1, r) == (r - 1) // 2
            assert genus_one_quotient_dim(r) == verlinde_dim(1, r)
        a, b = verlinde_dim(2, 5), verlinde_dim(2, 5, theta_graph())
        assert a == b
        report(f"genus 2 at r=5: {a}")


@criterion(9, "center and HH0 of the small quantum group have dimension (3r-1)/2, r=3,5")
def test_genus_one_nonsemisimple():
    with Budget(300):
        for r in (3, 5):
            assert center_dim(r) == (3 * r - 1) // 2
            assert hh0_dim(r) == (3 * r - 1) // 2


@criterion(10, "Hennings vanishes on S2xS1; Hennings/(p RT) constant over L(p,1), p=1..6, r=3,5")
def test_vanishing_and_cks(report):
    with Budget(120):
        for r in (3, 5):
            assert hennings_invariant(lens_space(0), r).is_zero()
            ratios = []
            for p in range(1, 7):
                rt = rt_invariant(lens_space(p), r)
                assert rt == lens_rt_oracle(r, p)
                ratios.append(hennings_invariant(lens_space(p), r) / (rt * p))
            assert all(x == ratios[0] for x in ratios), r
            z = ratios[0].approx()
            report(f"r={r}: {z.real:.6g}" + (f"{z.imag:+.6g}i" if abs(z.imag) > 1e-12 else ""))


@criterion(11, "handle slide, +-1 stabilization and cutting independence")
def test_invariance_fixtures():
    with Budget(120):
        for r in (3, 5):
            before = unlink([("red", 1), ("red", 1)])
            after = hopf_link("red", "red", "+", 2, 1)
            assert rt_invariant(before, r) == rt_invariant(after, r)
            assert hennings_invariant(before, r) == hennings_invariant(after, r)
            for s in (1, -1):
                base, stab = unlink([("red", 2)]), unlink([("red", 2), ("red", s)])
                assert rt_invariant(base, r) == rt_invariant(stab, r)
                assert hennings_invariant(base, r) == hennings_invariant(stab, r)
                assert renormalized_invariant(unknot("P0"), r) == renormalized_invariant(
                    unlink([("P0", 0), ("red", s)]), r)
        for r, (a, b) in ((3, ("P0", "P0")), (3, ("P0", "P1")), (5, ("P0", "P0"))):
            values = list(cutting_values(hopf_link(a, b), r).values())
            assert len(values) > 1
            assert all(v == values[0] for v in values), (r, a, b)


@criterion(12, "end structure j_X intertwines and is dinatural; transmutation forms agree, r=3")
def test_appendix():
    with Budget(120):
        H = quantum_group(3)
        assert verify.check_end_structure(3)
        assert verify.check_dinaturality(3)
        assert verify.check_transmutation(H, H.basis())
