"""
The non-semisimple theory: modified trace on projective modules, the
stabilization constants of the integral, the Hennings-type invariant of
surgery presentations, the renormalized invariant of admissible decorated
3-manifolds, and the genus-one state space dimensions.
"""

from __future__ import annotations

from functools import lru_cache

from .hopf import quantum_group
from .linalg import Matrix, rank
from .rep import Intertwiner, Representation, projective_module, simple_module, split, tensor
from .scalar import CycScalar, FieldContext, field_init
from .semisimple import Normalization
from .tangle.diagram import AdmissibilityError, Diagram, DiagramError
from .tangle.evaluate import (evaluate_bichrome_cut, evaluate_scalar, hennings_functional,
                              projective_edges, rep_of)
from .tangle.surgery import linking_matrix

# -- modified trace -------------------------------------------------------------


@lru_cache(maxsize=None)
def _p_embedding(r: int, n: int):
    """P_n as a summand of W = V_{r-1} (x) V_{r-1-n}: returns (W, X, inj, proj)."""
    steinberg = simple_module(r, r - 1)
    X = simple_module(r, r - 1 - n)
    W = tensor(steinberg, X)
    for s in split(W):
        if s.label == f"P{n}":
            Pn = projective_module(r, n)
            # the summand is the catalogue module itself, so the maps compose directly
            assert s.module is Pn or s.module.dim == Pn.dim
            return W, X, s.inj, s.proj
    raise AssertionError(f"P{n} is not a summand of V{r - 1} (x) V{r - 1 - n}")


def right_partial_trace(f: Matrix, A: Representation, X: Representation) -> Matrix:
    """ptr_X(f) for f in End(A (x) X), closing X on the right with the pivot K."""
    ctx = A.ctx
    nx = X.dim
    kx = X.K
    out: dict = {}
    for row, cols in f.rows.items():
        i, k = divmod(row, nx)
        for col, v in cols.items():
            j, k2 = divmod(col, nx)
            w = kx[k2, k]
            if w.is_zero():
                continue
            key = (i, j)
            out[key] = out[key] + v * w if key in out else v * w
    return Matrix.from_entries(ctx, A.dim, A.dim, [(i, j, v) for (i, j), v in out.items()])


def _t_catalogue(label: str, f: Matrix, r: int) -> CycScalar:
    ctx = field_init(r)
    if label == f"V{r - 1}":
        # End(V_{r-1}) is scalar and t(id) = 1
        return f[0, 0]
    if label.startswith("P"):
        n = int(label[1:])
        W, X, inj, proj = _p_embedding(r, n)
        g = inj @ f @ proj
        steinberg = simple_module(r, r - 1)
        return right_partial_trace(g, steinberg, X)[0, 0]
    raise AdmissibilityError(f"{label} is not projective")


def modified_trace(P: Representation, f: Matrix) -> CycScalar:
    """t_P(f) for an endomorphism f of a projective module P.

    P is split into catalogue summands and t is summed over the diagonal
    blocks.  On P_n the value is transported to V_{r-1} (x) V_{r-1-n} and
    reduced to V_{r-1} by the partial trace property.
    """
    r = P.H.r
    ctx = P.ctx
    pieces = split(P)
    bad = [s.label for s in pieces if not (s.label.startswith("P") or s.label == f"V{r - 1}")]
    if bad:
        raise AdmissibilityError(f"{P.label} is not projective (summands {', '.join(bad)})")
    total = ctx.zero
    for s in pieces:
        total = total + _t_catalogue(s.label, s.proj @ f @ s.inj, r)
    return total


def modified_trace_table(r: int) -> dict[str, CycScalar]:
    ctx = field_init(r)
    out = {}
    for n in range(r - 1):
        Pn = projective_module(r, n)
        out[f"P{n}"] = modified_trace(Pn, Matrix.identity(ctx, Pn.dim))
    out[f"V{r - 1}"] = ctx.one
    return out


# -- stabilization --------------------------------------------------------------

def closed_form_nss_normalization(ctx: FieldContext) -> Normalization:
    r = ctx.r
    r32 = ctx.rational(r) * ctx.gauss_sqrt_r()
    dm = ctx.i_pow((r - 1) // 2) * r32 * ctx.q((r + 3) // 2)
    dp = ctx.i_pow(-(r - 1) // 2) * r32 * ctx.q((r - 3) // 2)
    delta = ctx.i_pow(-(r - 1) // 2) * ctx.q((r - 3) // 2)
    return Normalization(dp, dm, r32, delta)


@lru_cache(maxsize=None)
def nss_normalization(r: int) -> Normalization:
    """Delta- = lambda(v), Delta+ = lambda(v^-1), checked against the closed forms."""
    H = quantum_group(r)
    lam = H.integral()
    closed = closed_form_nss_normalization(H.ctx)
    dm, dp = lam(H.ribbon()), lam(H.ribbon_inv())
    if dm != closed.delta_minus or dp != closed.delta_plus:
        raise AssertionError("lambda(v^-+1) disagrees with the closed forms")
    if not closed.check():
        raise AssertionError("non-semisimple normalization constants are inconsistent")
    return closed


# -- invariants -----------------------------------------------------------------

def _normalize(value: CycScalar, d: Diagram, norm: Normalization) -> CycScalar:
    sd = linking_matrix(d)
    return value * norm.D ** (-1 - sd.ell) * norm.delta ** (-sd.signature)


def hennings_invariant(d: Diagram, r: int) -> CycScalar:
    """D^{-1-l} delta^{-sigma} times the integral applied to every surgery component."""
    if not d.is_closed():
        raise DiagramError("open components")
    if d.has_blue():
        raise DiagramError("hennings_invariant takes a surgery link without blue strands")
    value = evaluate_scalar(d, r, hennings_functional(r))
    return _normalize(value, d, nss_normalization(r))


def admissible_cuts(d: Diagram, r: int) -> list[tuple[int, int]]:
    return projective_edges(d, r)


def renormalized_invariant(d: Diagram, r: int, cut: tuple | None = None) -> CycScalar:
    """L'(M, T): modified trace of the diagram opened at a projective edge, normalized."""
    if not d.is_closed():
        raise DiagramError("open components")
    cuts = admissible_cuts(d, r)
    if not cuts:
        raise AdmissibilityError("inadmissible graph")
    if cut is None:
        cut = cuts[0]
    label, f = evaluate_bichrome_cut(d, r, cut)
    rep = rep_of(label, r)
    if not Intertwiner(rep, rep, f).is_intertwiner():
        raise AssertionError(f"cut at {cut} did not produce an endomorphism of {label}")
    value = modified_trace(rep, f)
    return _normalize(value, d, nss_normalization(r))


def cutting_values(d: Diagram, r: int) -> dict:
    return {cut: renormalized_invariant(d, r, cut) for cut in admissible_cuts(d, r)}


def cutting_independence_check(d: Diagram, r: int) -> bool:
    values = list(cutting_values(d, r).values())
    return all(v == values[0] for v in values[1:])


# -- genus one ------------------------------------------------------------------

def _commutator_columns(r: int) -> dict:
    """For g in E, F, K: the matrix of x -> [x, g] on the PBW basis."""
    H = quantum_group(r)
    ctx = H.ctx
    basis = H.basis()
    index = {m: k for k, m in enumerate(basis)}
    out = {}
    for name, g in (("E", (1, 0, 0)), ("F", (0, 1, 0)), ("K", (0, 0, 1))):
        entries = []
        for col, m in enumerate(basis):
            acc: dict = {}
            for mm, c in H.mono_multiply(m, g).items():
                acc[mm] = acc.get(mm, ctx.zero) + c
            for mm, c in H.mono_multiply(g, m).items():
                acc[mm] = acc.get(mm, ctx.zero) - c
            for mm, c in acc.items():
                if not c.is_zero():
                    entries.append((index[mm], col, c))
        out[name] = Matrix.from_entries(ctx, len(basis), len(basis), entries)
    return out


def center_dim(r: int) -> int:
    """Dimension of the kernel of x -> ([x,E], [x,F], [x,K])."""
    cols = _commutator_columns(r)
    n = r ** 3
    entries = []
    for block, name in enumerate("EFK"):
        for i, row in cols[name].rows.items():
            for j, v in row.items():
                entries.append((block * n + i, j, v))
    stacked = Matrix.from_entries(field_init(r), 3 * n, n, entries)
    return n - rank(stacked)


def hh0_dim(r: int) -> int:
    """r^3 minus the dimension of the span of all commutators.

    [a, g h] = [a g, h] + [h a, g], so commutators with the generators E, F, K
    already span every commutator.
    """
    cols = _commutator_columns(r)
    n = r ** 3
    entries = []
    for block, name in enumerate("EFK"):
        for i, row in cols[name].rows.items():
            for j, v in row.items():
                entries.append((i, block * n + j, v))
    side = Matrix.from_entries(field_init(r), n, 3 * n, entries)
    return n - rank(side)


def commutator_span_rank_bruteforce(r: int) -> int:
    """Rank of the span of [m1, m2] over all pairs of PBW monomials (small r only)."""
    H = quantum_group(r)
    ctx = H.ctx
    basis = H.basis()
    index = {m: k for k, m in enumerate(basis)}
    entries = []
    col = 0
    for m1 in basis:
        for m2 in basis:
            acc: dict = {}
            for mm, c in H.mono_multiply(m1, m2).items():
                acc[mm] = acc.get(mm, ctx.zero) + c
            for mm, c in H.mono_multiply(m2, m1).items():
                acc[mm] = acc.get(mm, ctx.zero) - c
            for mm, c in acc.items():
                if not c.is_zero():
                    entries.append((index[mm], col, c))
            col += 1
    return rank(Matrix.from_entries(ctx, len(basis), col, entries))
