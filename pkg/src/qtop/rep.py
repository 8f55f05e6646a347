"""
Finite-dimensional Ubar_q(sl2)-modules given by generator matrices.

The catalogue consists of the simple modules V_n (0 <= n <= r-1) and the
projective covers P_n (0 <= n <= r-2).  Tensor products use the coproduct,
duals the antipode, and every construction keeps K diagonal so intertwiner
spaces can be solved weight space by weight space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .hopf import AlgElem, QuantumGroup, quantum_group
from .linalg import Matrix, inverse, nullspace, rank
from .scalar import CycScalar


class Representation:
    """A module given by the action matrices of E, F and K."""

    def __init__(self, H: QuantumGroup, E: Matrix, F: Matrix, K: Matrix, label: str = "?"):
        self.H = H
        self.ctx = H.ctx
        self.dim = K.nrows
        self.E, self.F, self.K = E, F, K
        self.label = label
        self._pow: dict = {}
        self._act: dict = {}
        self._weights = None
        self._kinv = None

    def __repr__(self):
        return f"Representation({self.label}, dim={self.dim})"

    # -- structure ---------------------------------------------------------
    @property
    def K_inv(self) -> Matrix:
        if self._kinv is None:
            if self.weights() is not None:
                self._kinv = Matrix.diag(self.ctx, [self.ctx.q(-w) for w in self.weights()])
            else:
                self._kinv = self.K ** (self.H.r - 1)
        return self._kinv

    def weights(self):
        """Exponents w with K e_i = q^w e_i, or None when K is not diagonal."""
        if self._weights is None:
            K = self.K
            if any(j != i for i, row in K.rows.items() for j in row):
                self._weights = False
            else:
                table = {self.ctx.q(k): k for k in range(self.H.r)}
                ws = []
                for i in range(self.dim):
                    w = table.get(K[i, i])
                    if w is None:
                        self._weights = False
                        break
                    ws.append(w)
                else:
                    self._weights = ws
        return self._weights or None

    def _power(self, g: str, k: int) -> Matrix:
        key = (g, k)
        if key not in self._pow:
            base = {"E": self.E, "F": self.F, "K": self.K}[g]
            if k == 0:
                self._pow[key] = Matrix.identity(self.ctx, self.dim)
            elif g == "K" and self.weights() is not None:
                self._pow[key] = Matrix.diag(self.ctx, [self.ctx.q(w * k) for w in self.weights()])
            else:
                self._pow[key] = self._power(g, k - 1) @ base
        return self._pow[key]

    def act_mono(self, mono) -> Matrix:
        if mono not in self._act:
            a, b, c = mono
            self._act[mono] = self._power("E", a) @ self._power("F", b) @ self._power("K", c % self.H.r)
        return self._act[mono]

    def act(self, x: AlgElem) -> Matrix:
        total = Matrix.zeros(self.ctx, self.dim, self.dim)
        for m, v in x.terms.items():
            total = total + self.act_mono(m).scale(v)
        return total

    def check_relations(self) -> bool:
        ctx, r = self.ctx, self.H.r
        E, F, K, Ki = self.E, self.F, self.K, self.K_inv
        I = Matrix.identity(ctx, self.dim)
        zero = Matrix.zeros(ctx, self.dim, self.dim)
        return (
            K @ Ki == I
            and K ** r == I
            and E ** r == zero
            and F ** r == zero
            and K @ E @ Ki == E.scale(ctx.q(2))
            and K @ F @ Ki == F.scale(ctx.q(-2))
            and E @ F - F @ E == (K - Ki).scale(ctx.qbrace(1).inverse())
        )


@dataclass
class Intertwiner:
    source: Representation
    target: Representation
    matrix: Matrix

    def __matmul__(self, other: Intertwiner) -> Intertwiner:
        return Intertwiner(other.source, self.target, self.matrix @ other.matrix)

    def is_intertwiner(self) -> bool:
        A, B, m = self.source, self.target, self.matrix
        return all(m @ getattr(A, g) == getattr(B, g) @ m for g in "EFK")


# -- catalogue ----------------------------------------------------------------

def _check_r(H):
    return H if isinstance(H, QuantumGroup) else quantum_group(H)


def simple_module(H, n: int) -> Representation:
    H = _check_r(H)
    return _simple(H.r, n)


@lru_cache(maxsize=None)
def _simple(r: int, n: int) -> Representation:
    H = quantum_group(r)
    ctx = H.ctx
    if not 0 <= n <= r - 1:
        raise ValueError(f"V_n needs 0 <= n <= {r - 1}, got {n}")
    d = n + 1
    K = Matrix.diag(ctx, [ctx.q(n - 2 * i) for i in range(d)])
    E = Matrix.from_entries(ctx, d, d, [(i - 1, i, ctx.qint(i) * ctx.qint(n - i + 1)) for i in range(1, d)])
    F = Matrix.from_entries(ctx, d, d, [(i + 1, i, ctx.one) for i in range(d - 1)])
    return Representation(H, E, F, K, f"V{n}")


def projective_module(H, n: int) -> Representation:
    H = _check_r(H)
    return _projective(H.r, n)


@lru_cache(maxsize=None)
def _projective(r: int, n: int) -> Representation:
    """Basis order a_0..a_n, x_0..x_{m}, y_0..y_{m}, b_0..b_n with m = r-n-2."""
    H = quantum_group(r)
    ctx = H.ctx
    if not 0 <= n <= r - 2:
        raise ValueError(f"P_n needs 0 <= n <= {r - 2}, got {n}")
    m = r - n - 2
    a = lambda i: i
    x = lambda j: n + 1 + j
    y = lambda j: n + 1 + (m + 1) + j
    b = lambda i: n + 1 + 2 * (m + 1) + i
    dim = 2 * r
    one = ctx.one
    qi = ctx.qint
    Kd = [None] * dim
    Ee, Fe = [], []
    for i in range(n + 1):
        Kd[a(i)] = ctx.q(n - 2 * i)
        Kd[b(i)] = ctx.q(n - 2 * i)
        if i > 0:
            Ee.append((a(i - 1), a(i), qi(i) * qi(n - i + 1)))
        if i < n:
            Fe.append((a(i + 1), a(i), one))
        # b_i
        if i == 0:
            Ee.append((x(m), b(0), one))
        else:
            Ee.append((a(i - 1), b(i), one))
            Ee.append((b(i - 1), b(i), qi(i) * qi(n - i + 1)))
        if i < n:
            Fe.append((b(i + 1), b(i), one))
        else:
            Fe.append((y(0), b(n), one))
    for j in range(m + 1):
        Kd[x(j)] = ctx.q(-n - 2 * j - 2)
        Kd[y(j)] = ctx.q(-n - 2 * j - 2)
        if j > 0:
            Ee.append((x(j - 1), x(j), -qi(j) * qi(n + j + 1)))
            Ee.append((y(j - 1), y(j), -qi(j) * qi(n + j + 1)))
        else:
            Ee.append((a(n), y(0), one))
        Fe.append((x(j + 1) if j < m else a(0), x(j), one))
        if j < m:
            Fe.append((y(j + 1), y(j), one))
    E = Matrix.from_entries(ctx, dim, dim, Ee)
    F = Matrix.from_entries(ctx, dim, dim, Fe)
    K = Matrix.diag(ctx, Kd)
    return Representation(H, E, F, K, f"P{n}")


def tensor(A: Representation, B: Representation) -> Representation:
    ctx = A.ctx
    Ia = Matrix.identity(ctx, A.dim)
    Ib = Matrix.identity(ctx, B.dim)
    E = A.E.kron(B.K) + Ia.kron(B.E)
    F = A.K_inv.kron(B.F) + A.F.kron(Ib)
    K = A.K.kron(B.K)
    return Representation(A.H, E, F, K, f"({A.label}(x){B.label})")


def dual(A: Representation) -> Representation:
    """x acts on the dual basis by the transpose of S(x)."""
    E = (A.E @ A.K_inv).scale(-1).T
    F = (A.K @ A.F).scale(-1).T
    K = A.K_inv.T
    label = A.label[:-1] if A.label.endswith("*") else A.label + "*"
    return Representation(A.H, E, F, K, label)


def adjoint_representation(H) -> Representation:
    """H acting on itself by ad_x(y) = x_(1) y S(x_(2))."""
    H = _check_r(H)
    return _adjoint(H.r)


@lru_cache(maxsize=None)
def _adjoint(r: int) -> Representation:
    H = quantum_group(r)
    basis = H.basis()
    index = {m: k for k, m in enumerate(basis)}
    mats = {}
    for name, g in (("E", H.E), ("F", H.F), ("K", H.K)):
        entries = []
        for j, m in enumerate(basis):
            for mm, v in H.adjoint(g, H.mono(*m)).terms.items():
                entries.append((index[mm], j, v))
        mats[name] = Matrix.from_entries(H.ctx, len(basis), len(basis), entries)
    return Representation(H, mats["E"], mats["F"], mats["K"], "ad")


# -- morphisms ----------------------------------------------------------------

def hom_space(A: Representation, B: Representation) -> list[Intertwiner]:
    """Basis of the intertwiners A -> B."""
    wa, wb = A.weights(), B.weights()
    if wa is not None and wb is not None:
        unknowns = [(i, j) for i in range(B.dim) for j in range(A.dim) if wb[i] == wa[j]]
        gens = ("E", "F")
    else:
        unknowns = [(i, j) for i in range(B.dim) for j in range(A.dim)]
        gens = ("E", "F", "K")
    if not unknowns:
        return []
    uidx = {u: k for k, u in enumerate(unknowns)}
    by_row: dict = {}
    by_col: dict = {}
    for (i, j), k in uidx.items():
        by_row.setdefault(i, []).append((j, k))
        by_col.setdefault(j, []).append((i, k))
    rows = []
    for g in gens:
        ga, gb = getattr(A, g), getattr(B, g)
        eqs: dict = {}
        # (X ga)[i, l] = sum_j X[i, j] ga[j, l]
        for i, lst in by_row.items():
            for j, k in lst:
                for l, v in ga.rows.get(j, {}).items():
                    row = eqs.setdefault((i, l), {})
                    _add(row, k, v)
        # -(gb X)[i, l] = -sum_j gb[i, j] X[j, l]
        gbt = gb.T
        for l, lst in by_col.items():
            for j, k in lst:
                for i, v in gbt.rows.get(j, {}).items():
                    row = eqs.setdefault((i, l), {})
                    _add(row, k, -v)
        rows.extend(r for r in eqs.values() if r)
    system = Matrix(A.ctx, len(rows), len(unknowns), dict(enumerate(rows)))
    out = []
    for vec in nullspace(system):
        entries = [(unknowns[k][0], unknowns[k][1], v) for k, v in vec.items()]
        out.append(Intertwiner(A, B, Matrix.from_entries(A.ctx, B.dim, A.dim, entries)))
    return out


def _add(row: dict, k, v):
    w = row.get(k)
    w = v if w is None else w + v
    if w.is_zero():
        row.pop(k, None)
    else:
        row[k] = w


def are_isomorphic(A: Representation, B: Representation) -> bool:
    """Decided by the splitting multiplicities, which are exact."""
    if A.dim != B.dim:
        return False
    return sorted(decompose(A)) == sorted(decompose(B))


# -- traces -------------------------------------------------------------------

def qdim(A: Representation) -> CycScalar:
    return A.K.trace()


def qtrace(f, A: Representation | None = None) -> CycScalar:
    """tr(K f) for an endomorphism f of A."""
    if isinstance(f, Intertwiner):
        A, f = f.source, f.matrix
    return (A.K @ f).trace()


# -- Krull-Schmidt splitting ------------------------------------------------

def catalogue(H) -> list[Representation]:
    H = _check_r(H)
    r = H.r
    return [simple_module(H, n) for n in range(r)] + [projective_module(H, n) for n in range(r - 1)]


@dataclass
class Summand:
    label: str
    module: Representation
    inj: Matrix   # module -> A
    proj: Matrix  # A -> module


def split(A: Representation) -> list[Summand]:
    """Explicit decomposition of A into catalogue modules.

    For each catalogue module C an injection f and a retraction g are paired
    whenever g e f is invertible in End(C), where e is the idempotent onto the
    part of A not yet split off.  The trace of g e f detects invertibility
    because End(C) is local with nilpotent, hence traceless, radical.
    """
    ctx = A.ctx
    e = Matrix.identity(ctx, A.dim)
    found: list[Summand] = []
    remaining = A.dim
    for C in catalogue(A.H):
        if remaining == 0:
            break
        if C.dim > remaining:
            continue
        fs = [f.matrix for f in hom_space(C, A)]
        if not fs:
            continue
        gs = [g.matrix for g in hom_space(A, C)]
        progress = True
        while progress and C.dim <= remaining:
            progress = False
            efs = [e @ f for f in fs]
            ges = [g @ e for g in gs]
            for g in ges:
                for f in efs:
                    h = g @ f
                    if h.trace().is_zero():
                        continue
                    proj = inverse(h) @ g
                    found.append(Summand(C.label, C, f, proj))
                    e = e - f @ proj
                    remaining -= C.dim
                    progress = True
                    break
                if progress:
                    break
    if remaining != 0 or not e.is_zero():
        raise AssertionError(f"splitting of {A.label} left {remaining} dimensions unexplained")
    return found


def decompose(A: Representation) -> list[str]:
    """Catalogue labels of the indecomposable summands, in catalogue order.

    V_{r-1} doubles as the projective P_{r-1}.
    """
    return [s.label for s in split(A)]


def fusion_formula(r: int, a: int, b: int) -> list[str]:
    """Summands of V_a (x) V_b for even a, b in I as given by the closed fusion rule.

    P_{r-1} is reported under its other name V_{r-1}.
    """
    if a % 2 or b % 2:
        raise ValueError("the fusion rule is stated for even colours")
    s = (a + b) // 2
    out = [f"V{2 * n}" for n in range(abs(a - b) // 2, min(s, r - s - 2) + 1)]
    for n in range(r - s - 1, (r - 1) // 2 + 1):
        out.append(f"V{r - 1}" if 2 * n == r - 1 else f"P{2 * n}")
    return out


def multiplicities(A: Representation) -> dict[str, int]:
    """Multiplicity of each catalogue module, from the rank of the pairing modulo radicals."""
    out = {}
    for C in catalogue(A.H):
        fs = [f.matrix for f in hom_space(C, A)]
        if not fs:
            continue
        gs = [g.matrix for g in hom_space(A, C)]
        inv_dim = C.ctx.rational(C.dim).inverse()
        pairing = Matrix.from_dense(A.ctx, [[(g @ f).trace() * inv_dim for f in fs] for g in gs])
        m = rank(pairing)
        if m:
            out[C.label] = m
    return out


# -- end structure ------------------------------------------------------------

def end_structure_j(X: Representation) -> Matrix:
    """j_X : ad -> X (x) X*, x |-> sum_a (x . v_a) (x) phi^a, as a (dim X)^2 x r^3 matrix."""
    H = X.H
    n = X.dim
    entries = []
    for col, m in enumerate(H.basis()):
        for i, row in X.act_mono(m).rows.items():
            for a, v in row.items():
                entries.append((i * n + a, col, v))
    return Matrix.from_entries(X.ctx, n * n, H.dim, entries)


def coev_vector(X: Representation) -> Matrix:
    """sum_a v_a (x) phi^a as a column in X (x) X*."""
    n = X.dim
    return Matrix.from_entries(X.ctx, n * n, 1, [(a * n + a, 0, 1) for a in range(n)])
