"""
Evaluation of sliced diagrams.

Blue strands carry basis indices of their modules and every generator acts
by its matrix.  Red strands are never given a module.  Instead every red arc
(a piece of a red component between the cup that opened it and the cap that
will close it) carries an element Z of Ubar_q(sl2).  If the arc were coloured
by a module X with X-end (upward) and X*-end (downward), Z would stand for the
tensor sum_a Z v_a (x) phi^a.  This gives the bead rules

    bead h at the X-end:   Z -> h Z
    bead h at the X*-end:  Z -> Z S(h)
    cups:  [X, X*] start at Z = 1,  [X*, X] start at Z = K^-1
    caps:  [X*, X] joins Z_left Z_right,  [X, X*] joins Z_right K Z_left

and a component closed by a [X*, X] cap is worth mu(Z), by a [X, X*] cap
mu(K Z), for a symmetric linear form mu.  Taking mu = tr_X recovers the blue
evaluation, mu = sum_i [i+1] tr_{V_i} the Kirby colour, and mu(y) = lambda(K y)
the non-semisimple surgery functional.
"""

from __future__ import annotations

import itertools

from ..hopf import QuantumGroup, TensorElem, quantum_group
from ..linalg import Matrix
from ..rep import Intertwiner, Representation, dual, projective_module, simple_module, tensor
from ..scalar import CycScalar
from .diagram import AdmissibilityError, Diagram, DiagramError, Label
from .surgery import UP, cut_tangle, trace_components

# -- labels to modules --------------------------------------------------------

_REP_CACHE: dict = {}


def rep_of(label: Label, r: int) -> Representation:
    key = (r, label)
    hit = _REP_CACHE.get(key)
    if hit is not None:
        return hit
    if label.kind == "V":
        rep = simple_module(r, label.n)
    elif label.kind == "P":
        rep = projective_module(r, label.n)
    elif label.kind == "dual":
        rep = dual(rep_of(label.parts[0], r))
        rep.label = str(label)
    elif label.kind == "tensor":
        rep = tensor(rep_of(label.parts[0], r), rep_of(label.parts[1], r))
        rep.label = str(label)
    else:
        raise DiagramError("red strands have no module")
    _REP_CACHE[key] = rep
    return rep


# -- red functionals ----------------------------------------------------------

class RedFunctional:
    """A symmetric linear form on Ubar_q(sl2), evaluated monomial by monomial."""

    def __init__(self, H: QuantumGroup, name: str, on_mono):
        self.H = H
        self.name = name
        self._on = on_mono
        self._cache: dict = {}

    def __call__(self, mono) -> CycScalar:
        v = self._cache.get(mono)
        if v is None:
            v = self._on(mono)
            self._cache[mono] = v
        return v

    def of_elem(self, x) -> CycScalar:
        total = self.H.ctx.zero
        for m, c in x.terms.items():
            total = total + self(m) * c
        return total


def hennings_functional(r: int) -> RedFunctional:
    H = quantum_group(r)
    lam = H.integral()
    def on(m):
        total = H.ctx.zero
        for mm, c in H.mono_multiply((0, 0, 1), m).items():
            total = total + lam.value_on(mm) * c
        return total
    return RedFunctional(H, "hennings", on)


def trace_functional(rep: Representation) -> RedFunctional:
    return RedFunctional(rep.H, f"tr_{rep.label}", lambda m: rep.act_mono(m).trace())


def kirby_functional(r: int) -> RedFunctional:
    H = quantum_group(r)
    ctx = H.ctx
    simples = [(simple_module(r, i), ctx.qint(i + 1)) for i in range(0, r - 1, 2)]
    def on(m):
        total = ctx.zero
        for rep, w in simples:
            total = total + rep.act_mono(m).trace() * w
        return total
    return RedFunctional(H, "kirby", on)


# -- local blue maps ----------------------------------------------------------

def _columns(m: Matrix) -> dict:
    cols: dict = {}
    for i, row in m.rows.items():
        for j, v in row.items():
            cols.setdefault(j, []).append((i, v))
    return cols


class _Blue:
    """Cached local matrices of blue generators for one r."""

    def __init__(self, r: int):
        self.r = r
        self.H = quantum_group(r)
        self.cache: dict = {}

    def rep(self, label):
        return rep_of(label, self.r)

    def twist(self, label, sign):
        key = ("tw", label, sign)
        if key not in self.cache:
            elem = self.H.ribbon_inv() if sign > 0 else self.H.ribbon()
            self.cache[key] = _columns(self.rep(label).act(elem))
        return self.cache[key]

    def crossing(self, A, B, sign):
        """Map (ia, ib) -> list of ((ib', ia'), coeff)."""
        key = ("x", A, B, sign)
        if key in self.cache:
            return self.cache[key]
        ra, rb = self.rep(A), self.rep(B)
        R = self.H.r_matrix() if sign > 0 else self.H.r_matrix_inv()
        acc: dict = {}
        for (m0, m1), c in R.terms.items():
            # x+ : A gets R', B gets R'';  x- : A gets (R^-1)'', B gets (R^-1)'
            ma, mb = (m0, m1) if sign > 0 else (m1, m0)
            ca = _columns(ra.act_mono(ma))
            cb = _columns(rb.act_mono(mb))
            for ja, la in ca.items():
                for jb, lb in cb.items():
                    tgt = acc.setdefault((ja, jb), {})
                    for ia, va in la:
                        for ib, vb in lb:
                            w = c * va * vb
                            old = tgt.get((ib, ia))
                            tgt[(ib, ia)] = w if old is None else old + w
        out = {k: [(o, v) for o, v in d.items() if not v.is_zero()] for k, d in acc.items()}
        self.cache[key] = out
        return out

    def mixed_crossing(self, blue_label, blue_leg, R_sign):
        """Group R (or R^-1) by the red leg: red mono -> blue column map."""
        key = ("mx", blue_label, blue_leg, R_sign)
        if key in self.cache:
            return self.cache[key]
        rep = self.rep(blue_label)
        R = self.H.r_matrix() if R_sign > 0 else self.H.r_matrix_inv()
        grouped: dict = {}
        for (m0, m1), c in R.terms.items():
            mb, mr = (m0, m1) if blue_leg == 0 else (m1, m0)
            g = grouped.setdefault(mr, Matrix.zeros(self.H.ctx, rep.dim, rep.dim))
            grouped[mr] = g + rep.act_mono(mb).scale(c)
        out = [(mr, _columns(m)) for mr, m in grouped.items() if not m.is_zero()]
        self.cache[key] = out
        return out

    def duality(self, name, label):
        """Entries of lev/rev (inputs -> scalar) or lcoev/rcoev (scalar -> outputs)."""
        key = ("d", name, label)
        if key in self.cache:
            return self.cache[key]
        if label.is_dual:
            name = {"lev": "rev", "rev": "lev", "lcoev": "rcoev", "rcoev": "lcoev"}[name]
            label = label.parts[0]
        rep = self.rep(label)
        n = rep.dim
        if name in ("lev", "lcoev"):
            entries = [((a, a), rep.ctx.one) for a in range(n)]
        elif name == "rev":
            # v_a (x) phi^b -> phi^b(K v_a)
            entries = [((a, b), v) for b, row in rep.K.rows.items() for a, v in row.items()]
        else:
            # sum_a phi^a (x) K^-1 v_a
            entries = [((a, b), v) for b, row in rep.K_inv.rows.items() for a, v in row.items()]
        self.cache[key] = entries
        return entries

    def _tensor_rep(self, labels):
        if not labels:
            return simple_module(self.r, 0)
        out = self.rep(labels[0])
        for l in labels[1:]:
            out = tensor(out, self.rep(l))
        return out

    def coupon(self, coupon):
        # keyed on the contents: tables from different diagrams may reuse a name
        key = ("c", coupon.name, coupon.source, coupon.target, repr(coupon.matrix))
        if key in self.cache:
            return self.cache[key]
        ctx = self.H.ctx
        sdims = [self.rep(l).dim for l in coupon.source]
        tdims = [self.rep(l).dim for l in coupon.target]
        nrows = _prod(tdims)
        ncols = _prod(sdims)
        if len(coupon.matrix) != nrows or any(len(row) != ncols for row in coupon.matrix):
            raise DiagramError(f"coupon {coupon.name} needs a {nrows}x{ncols} matrix")
        cols: dict = {}
        for i, row in enumerate(coupon.matrix):
            for j, v in enumerate(row):
                v = ctx.from_json(v) if isinstance(v, dict) else ctx.rational(v)
                if not v.is_zero():
                    cols.setdefault(_unflat(j, sdims), []).append((_unflat(i, tdims), v))
        entries = [(_flat(t, tdims), _flat(src, sdims), v) for src, ts in cols.items() for t, v in ts]
        f = Matrix.from_entries(ctx, nrows, ncols, entries)
        if not Intertwiner(self._tensor_rep(coupon.source), self._tensor_rep(coupon.target), f).is_intertwiner():
            raise DiagramError(f"coupon {coupon.name} is not an intertwiner")
        self.cache[key] = (cols, sdims, tdims)
        return self.cache[key]


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _unflat(k, dims):
    out = []
    for d in reversed(dims):
        out.append(k % d)
        k //= d
    return tuple(reversed(out))


def _flat(idx, dims):
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


_BLUE: dict = {}


def _blue(r):
    if r not in _BLUE:
        _BLUE[r] = _Blue(r)
    return _BLUE[r]


# -- the fold -----------------------------------------------------------------

class _Slot:
    __slots__ = ("red", "label", "arc", "end")

    def __init__(self, red, label=None, arc=None, end=None):
        self.red, self.label, self.arc, self.end = red, label, arc, end


class Evaluator:
    """Fold a diagram slice by slice.

    ``functional`` contracts closed red components on the spot; with
    ``record=True`` the closed components are kept as tensor legs instead.
    ``cut=(level, position)`` opens one blue edge and returns the matrix
    ``Phi[below, above]`` of the resulting two-ended strand.
    """

    def __init__(self, d: Diagram, r: int, functional: RedFunctional | None = None,
                 record: bool = False, cut: tuple | None = None):
        self.d, self.r = d, r
        self.H = quantum_group(r)
        self.ctx = self.H.ctx
        self.functional = functional
        self.record = record
        self.cut = cut
        self.blue = _blue(r)
        d.check_range(r)
        if d.has_red() and functional is None and not record:
            raise DiagramError("red strands need a functional or record mode")
        if any(l.is_red for l in d.source + d.target):
            raise DiagramError("red strands must be closed")
        self._prepare()

    # -- preprocessing ---------------------------------------------------------
    def _prepare(self):
        d = self.d
        comps = trace_components(d)
        self.red_components = [c for c in comps if c.red]
        direction, comp_of = {}, {}
        for n, c in enumerate(self.red_components):
            if not c.closed:
                raise DiagramError("red components must be closed")
            for p in c.points:
                direction[p] = c.direction[p]
                comp_of[p] = n
        # red twists are central, so they are collected per component
        self.twists = [0] * len(self.red_components)
        next_arc = itertools.count()
        slots = [self._blue_slot(l) for l in d.source]
        self.levels = [slots]
        self.plans = []
        for k, s in enumerate(d.slices):
            self.levels[k] = slots
            slots = [_Slot(sl.red, sl.label, sl.arc, sl.end) for sl in slots]
            i = o = 0
            out_slots = []
            plan = []
            for g in s:
                nin, nout = len(g.inputs), len(g.outputs)
                ins = slots[i:i + nin]
                if g.name in ("lcoev", "rcoev") and g.labels[0].is_red:
                    arc = next(next_arc)
                    e0 = "X" if direction[(k + 1, o)] == UP else "D"
                    e1 = "X" if direction[(k + 1, o + 1)] == UP else "D"
                    outs = [_Slot(True, arc=arc, end=e0), _Slot(True, arc=arc, end=e1)]
                    plan.append(("rcup", arc, e0))
                elif g.name in ("lev", "rev") and g.labels[0].is_red:
                    a, b = ins
                    kind = "rev" if a.end == "X" else "lev"
                    if a.arc == b.arc:
                        plan.append(("rclose", a.arc, kind, comp_of[(k, i)]))
                    else:
                        new = next(next_arc)
                        plan.append(("rmerge", a.arc, b.arc, kind, new))
                        for sl in out_slots + slots[i + 2:]:
                            if sl.red and sl.arc in (a.arc, b.arc):
                                sl.arc = new
                    outs = []
                elif g.name in ("x+", "x-"):
                    a, b = ins
                    outs = [b, a]
                    plan.append(("x", g.name, self._info(a), self._info(b)))
                elif g.name in ("id", "tw+", "tw-"):
                    outs = list(ins)
                    if g.name != "id" and ins[0].red:
                        self.twists[comp_of[(k, i)]] += 1 if g.name == "tw+" else -1
                        plan.append(("id",))
                    elif g.name != "id":
                        plan.append(("tw", ins[0].label, 1 if g.name == "tw+" else -1))
                    else:
                        plan.append(("id",))
                elif g.name in ("lcoev", "rcoev"):
                    outs = [self._blue_slot(l) for l in g.outputs]
                    plan.append(("cup", g.name, g.labels[0]))
                elif g.name in ("lev", "rev"):
                    outs = []
                    plan.append(("cap", g.name, g.labels[0]))
                else:
                    outs = [self._blue_slot(l) for l in g.outputs]
                    plan.append(("coup", g.coupon))
                out_slots.extend(outs)
                i += nin
                o += nout
            self.plans.append(plan)
            slots = out_slots
            self.levels.append(slots)
        self.arc_order = [sorted({sl.arc for sl in lv if sl.red}) for lv in self.levels]
        # closing a component applies the functional to v^-t Y for t net twists
        self._twisted: dict = {}

    @staticmethod
    def _info(sl):
        return ("r", sl.arc, sl.end) if sl.red else ("b", sl.label)

    def _twist_elem(self, t):
        H = self.H
        w = H.one()
        for _ in range(abs(t)):
            w = w * (H.ribbon_inv() if t > 0 else H.ribbon())
        return w

    def _close_value(self, comp, y):
        t = self.twists[comp]
        if t == 0:
            return self.functional(y)
        key = (t, y)
        v = self._twisted.get(key)
        if v is None:
            w = self._twist_elem(t) * self.H.mono(*y)
            v = self._twisted[key] = self.functional.of_elem(w)
        return v

    @staticmethod
    def _blue_slot(label):
        return _Slot(False, label=label)

    # -- bead arithmetic -------------------------------------------------------
    def _bead(self, arcs: dict, info, m) -> list:
        """Apply bead m at a red end; returns list of (coeff, new arcs dict)."""
        _, arc, end = info
        Z = arcs[arc]
        H = self.H
        out = []
        if end == "X":
            for zz, c in H.mono_multiply(m, Z).items():
                na = dict(arcs)
                na[arc] = zz
                out.append((c, na))
        else:
            acc: dict = {}
            for s, cs in H.mono_antipode(m).items():
                for zz, c in H.mono_multiply(Z, s).items():
                    w = c * cs
                    old = acc.get(zz)
                    acc[zz] = w if old is None else old + w
            for zz, c in acc.items():
                if not c.is_zero():
                    na = dict(arcs)
                    na[arc] = zz
                    out.append((c, na))
        return out

    # -- the main loop ---------------------------------------------------------
    def run(self) -> dict:
        d = self.d
        src_dims = [self.blue.rep(l).dim for l in d.source]
        states: dict = {}
        for idx in itertools.product(*(range(n) for n in src_dims)):
            states[(idx, idx, (), ())] = self.ctx.one
        for k, plan in enumerate(self.plans):
            if self.cut is not None and self.cut[0] == k:
                states = self._apply_cut(states, k)
            states = self._apply_slice(states, k, plan)
        return states

    def _apply_cut(self, states, k):
        p = self.cut[1]
        slot = self.levels[k][p]
        if slot.red:
            raise DiagramError("cannot cut a red edge")
        dim = self.blue.rep(slot.label).dim
        out = {}
        for (src, pos, red, closed), c in states.items():
            below = pos[p]
            for above in range(dim):
                key = (src + (below, above), pos[:p] + (above,) + pos[p + 1:], red, closed)
                out[key] = c
        return out

    def _apply_slice(self, states, k, plan):
        in_arcs = self.arc_order[k]
        out_arcs = self.arc_order[k + 1]
        in_slots = self.levels[k]
        new: dict = {}
        for (src, pos, red, closed), coeff in states.items():
            partials = [(coeff, (), dict(zip(in_arcs, red)), dict(closed))]
            i = 0
            for step in plan:
                partials = self._apply_step(partials, step, pos, i, in_slots)
                if not partials:
                    break
                i += self._arity(step)
            for c, outp, arcs, cl in partials:
                key = (src, outp, tuple(arcs[a] for a in out_arcs), tuple(sorted(cl.items())))
                old = new.get(key)
                w = c if old is None else old + c
                if w.is_zero():
                    new.pop(key, None)
                else:
                    new[key] = w
        return new

    @staticmethod
    def _arity(step):
        kind = step[0]
        if kind in ("id", "tw"):
            return 1
        if kind in ("x", "rclose", "rmerge", "cap"):
            return 2
        if kind in ("cup", "rcup"):
            return 0
        return len(step[1].source)

    def _apply_step(self, partials, step, pos, i, in_slots):
        kind = step[0]
        H = self.H
        out = []
        if kind == "id":
            v = pos[i]
            return [(c, op + (v,), a, cl) for c, op, a, cl in partials]
        if kind == "tw":
            col = self.blue.twist(step[1], step[2]).get(pos[i], [])
            for c, op, a, cl in partials:
                for o, v in col:
                    out.append((c * v, op + (o,), a, cl))
            return out
        if kind == "x":
            return self._crossing(partials, step, pos, i, in_slots)
        if kind == "cup":
            entries = self.blue.duality(step[1], step[2])
            for c, op, a, cl in partials:
                for (x, y), v in entries:
                    out.append((c * v, op + (x, y), a, cl))
            return out
        if kind == "cap":
            entries = self.blue.duality(step[1], step[2])
            key = (pos[i], pos[i + 1])
            val = None
            for kk, v in entries:
                if kk == key:
                    val = v
                    break
            if val is None:
                return []
            return [(c * val, op, a, cl) for c, op, a, cl in partials]
        if kind == "rcup":
            arc, end = step[1], step[2]
            z = (0, 0, 0) if end == "X" else (0, 0, self.r - 1)
            for c, op, a, cl in partials:
                na = dict(a)
                na[arc] = z
                out.append((c, op + (0, 0), na, cl))
            return out
        if kind == "rclose":
            arc, cap, comp = step[1], step[2], step[3]
            for c, op, a, cl in partials:
                Z = a[arc]
                na = dict(a)
                del na[arc]
                terms = {Z: self.ctx.one} if cap == "lev" else H.mono_multiply((0, 0, 1), Z)
                for y, w in terms.items():
                    if self.record:
                        ncl = dict(cl)
                        ncl[comp] = y
                        out.append((c * w, op, na, ncl))
                    else:
                        val = self._close_value(comp, y)
                        if not val.is_zero():
                            out.append((c * w * val, op, na, cl))
            return _merge_partials(out)
        if kind == "rmerge":
            left, right, cap, new = step[1], step[2], step[3], step[4]
            for c, op, a, cl in partials:
                zl, zr = a[left], a[right]
                na = {k2: v for k2, v in a.items() if k2 not in (left, right)}
                if cap == "lev":
                    prod = H.mono_multiply(zl, zr)
                else:
                    prod = {}
                    for t, w in H.mono_multiply(zr, (0, 0, 1)).items():
                        for t2, w2 in H.mono_multiply(t, zl).items():
                            u = w * w2
                            old = prod.get(t2)
                            prod[t2] = u if old is None else old + u
                for zz, w in prod.items():
                    if not w.is_zero():
                        nb = dict(na)
                        nb[new] = zz
                        out.append((c * w, op, nb, cl))
            return out
        if kind == "coup":
            cols, sdims, tdims = self.blue.coupon(step[1])
            n = len(sdims)
            col = cols.get(tuple(pos[i:i + n]), [])
            for c, op, a, cl in partials:
                for o, v in col:
                    out.append((c * v, op + o, a, cl))
            return out
        raise AssertionError(f"unknown step {kind}")

    def _crossing(self, partials, step, pos, i, in_slots):
        name, A, B = step[1], step[2], step[3]
        sign = 1 if name == "x+" else -1
        out = []
        a_red, b_red = A[0] == "r", B[0] == "r"
        if not a_red and not b_red:
            col = self.blue.crossing(A[1], B[1], sign).get((pos[i], pos[i + 1]), [])
            for c, op, a, cl in partials:
                for (ob, oa), v in col:
                    out.append((c * v, op + (ob, oa), a, cl))
            return out
        # leg assignment: x+ gives A the first leg of R, x- gives A the second leg of R^-1
        legA, legB = (0, 1) if sign > 0 else (1, 0)
        if a_red != b_red:
            blue_slot, red_slot = (A, B) if not a_red else (B, A)
            blue_leg = legA if not a_red else legB
            blue_idx = pos[i] if not a_red else pos[i + 1]
            for mr, cols in self.blue.mixed_crossing(blue_slot[1], blue_leg, sign):
                col = cols.get(blue_idx)
                if not col:
                    continue
                for c, op, a, cl in partials:
                    for w, na in self._bead(a, red_slot, mr):
                        for o, v in col:
                            # outputs are swapped: B first, then A
                            pair = (0, o) if not a_red else (o, 0)
                            out.append((c * w * v, op + pair, na, cl))
            return _merge_partials(out)
        R = self.H.r_matrix() if sign > 0 else self.H.r_matrix_inv()
        for (m0, m1), t in R.terms.items():
            ma, mb = (m0, m1) if legA == 0 else (m1, m0)
            for c, op, a, cl in partials:
                for w1, a1 in self._bead(a, A, ma):
                    for w2, a2 in self._bead(a1, B, mb):
                        out.append((c * t * w1 * w2, op + (0, 0), a2, cl))
        return _merge_partials(out)


def _merge_partials(items):
    acc: dict = {}
    for c, op, a, cl in items:
        key = (op, tuple(sorted(a.items())), tuple(sorted(cl.items())))
        old = acc.get(key)
        acc[key] = c if old is None else old + c
    return [(c, op, dict(a), dict(cl)) for (op, a, cl), c in acc.items() if not c.is_zero()]


# -- public entry points ------------------------------------------------------

def _result_matrix(d: Diagram, r: int, states: dict) -> Matrix:
    ctx = quantum_group(r).ctx
    sdims = [rep_of(l, r).dim for l in d.source]
    tdims = [rep_of(l, r).dim for l in d.target]
    entries = []
    for (src, pos, _, _), c in states.items():
        entries.append((_flat(pos, tdims), _flat(src, sdims), c))
    return Matrix.from_entries(ctx, _prod(tdims), _prod(sdims), entries)


def evaluate_blue(d: Diagram, r: int) -> Matrix:
    """The matrix of a blue diagram, target basis by source basis."""
    if d.has_red():
        raise DiagramError("evaluate_blue needs a diagram without red strands")
    return _result_matrix(d, r, Evaluator(d, r).run())


def evaluate_scalar(d: Diagram, r: int, functional: RedFunctional | None = None) -> CycScalar:
    """A closed diagram as a scalar; red components are contracted with ``functional``."""
    if not d.is_closed():
        raise DiagramError("diagram is not closed")
    states = Evaluator(d, r, functional=functional).run()
    total = quantum_group(r).ctx.zero
    for c in states.values():
        total = total + c
    return total


def universal_beads(d: Diagram, r: int) -> TensorElem:
    """Bead elements of a closed red link, one tensor leg per component.

    Legs are normalised so that applying the integral lambda to every leg
    gives the surgery contraction, that is lambda(bead) = mu(Z).
    """
    if d.has_blue():
        raise DiagramError("universal_beads needs an all-red diagram")
    ev = Evaluator(d, r, record=True)
    states = ev.run()
    H = ev.H
    ell = len(ev.red_components)
    terms: dict = {}
    for (_, _, _, closed), c in states.items():
        legs = dict(closed)
        parts = [(ev._twist_elem(ev.twists[n]) * H.K * H.mono(*legs[n])).terms for n in range(ell)]
        for combo in itertools.product(*(p.items() for p in parts)):
            w = c
            for _, x in combo:
                w = w * x
            key = tuple(m for m, _ in combo)
            old = terms.get(key)
            terms[key] = w if old is None else old + w
    return TensorElem(H, ell, {k: v for k, v in terms.items() if not v.is_zero()})


def evaluate_bichrome_cut(d: Diagram, r: int, cut: tuple, functional: RedFunctional | None = None):
    """Endomorphism of the projective label at ``cut`` obtained by opening that edge.

    Returns ``(label, matrix)``.  The diagram is opened into a (1,1)-tangle
    whose closure differs from ``d`` only in the framing of the cut edge; the
    twist undoes that shift.
    """
    k, p = cut
    if not d.is_closed():
        raise DiagramError("diagram is not closed")
    if not 0 < k < len(d.slices) or not 0 <= p < len(d.level_labels(k)):
        raise DiagramError(f"no edge at {k}:{p}")
    label = d.level_labels(k)[p]
    if label.is_red or not label.is_projective(r):
        raise AdmissibilityError("inadmissible cut")
    tangle, shift = cut_tangle(d, cut)
    if tangle.has_red():
        if functional is None:
            functional = hennings_functional(r)
        ev = Evaluator(tangle, r, functional=functional)
    else:
        ev = Evaluator(tangle, r)
    f = _result_matrix(tangle, r, ev.run())
    if shift:
        H = ev.H
        rep = rep_of(label, r)
        twist = rep.act(H.ribbon() if shift > 0 else H.ribbon_inv())
        f = (twist ** abs(shift)) @ f
    return label, f


def projective_edges(d: Diagram, r: int) -> list:
    out = []
    for k in range(1, len(d.slices)):
        for p, l in enumerate(d.level_labels(k)):
            if not l.is_red and l.is_projective(r):
                out.append((k, p))
    return out


def contract_beads(beads: TensorElem, form) -> CycScalar:
    """Apply the monomial form ``form`` to every leg and sum."""
    total = beads.H.ctx.zero
    vals: dict = {}
    for key, v in beads.terms.items():
        w = v
        for m in key:
            x = vals.get(m)
            if x is None:
                x = vals[m] = form(m)
            w = w * x
            if w.is_zero():
                break
        total = total + w
    return total
