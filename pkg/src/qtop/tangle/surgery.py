"""
Strand tracing on sliced diagrams: components, orientations, rotation
numbers, linking matrices and signatures.

A point is a pair (level, position); level k is the boundary below slice k.
Crossing signs follow the convention that ``x+`` with both strands pointing
up is positive, so the kink built from ``x+`` has writhe +1 and matches
``tw+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, DiagramError

UP, DOWN = 1, -1


def _links(d: Diagram):
    """Maps point -> (neighbour, kind) for leaving upwards and downwards."""
    up, down = {}, {}
    for k, s in enumerate(d.slices):
        i = o = 0
        for gi, g in enumerate(s):
            nin, nout = len(g.inputs), len(g.outputs)
            if g.name in ("id", "tw+", "tw-"):
                up[(k, i)] = ((k + 1, o), "through")
                down[(k + 1, o)] = ((k, i), "through")
            elif g.name in ("x+", "x-"):
                up[(k, i)] = ((k + 1, o + 1), "through")
                up[(k, i + 1)] = ((k + 1, o), "through")
                down[(k + 1, o + 1)] = ((k, i), "through")
                down[(k + 1, o)] = ((k, i + 1), "through")
            elif g.name in ("lev", "rev"):
                up[(k, i)] = ((k, i + 1), "cap")
                up[(k, i + 1)] = ((k, i), "cap")
            elif g.name in ("lcoev", "rcoev"):
                down[(k + 1, o)] = ((k + 1, o + 1), "cup")
                down[(k + 1, o + 1)] = ((k + 1, o), "cup")
            else:
                node = ("coupon", k, gi)
                for j in range(nin):
                    up[(k, i + j)] = (node, "coupon")
                for j in range(nout):
                    down[(k + 1, o + j)] = (node, "coupon")
            i += nin
            o += nout
    return up, down


def walk(d: Diagram, start, direction, links=None):
    """Follow a strand from ``start`` travelling in ``direction``.

    Returns ``(steps, closed, half_turns, stop)`` where ``steps`` lists
    (point, direction of travel) pairs, ``half_turns`` counts clockwise
    minus counterclockwise turns and ``stop`` is None, "end" or "coupon".
    """
    up, down = links or _links(d)
    steps = []
    seen = set()
    point, dirn, turns = start, direction, 0
    while True:
        if (point, dirn) in seen:
            return steps, True, turns, None
        seen.add((point, dirn))
        steps.append((point, dirn))
        link = (up if dirn == UP else down).get(point)
        if link is None:
            return steps, False, turns, "end"
        nxt, kind = link
        if kind == "coupon":
            return steps, False, turns, "coupon"
        if kind == "cap":
            turns += 1 if nxt[1] > point[1] else -1
            dirn = DOWN
        elif kind == "cup":
            turns += 1 if nxt[1] < point[1] else -1
            dirn = UP
        point = nxt


@dataclass
class Component:
    index: int
    red: bool
    points: list          # traversal order
    direction: dict       # point -> UP / DOWN
    closed: bool
    half_turns: int


def trace_components(d: Diagram) -> list[Component]:
    """All strands, numbered by their lowest-leftmost point."""
    links = _links(d)
    owner = set()
    comps: list[Component] = []
    for k in range(d.n_levels):
        labels = d.level_labels(k)
        for p in range(len(labels)):
            pt = (k, p)
            if pt in owner:
                continue
            steps, closed, turns, _ = walk(d, pt, UP, links)
            if not closed:
                back, _, _, _ = walk(d, pt, DOWN, links)
                steps = [(q, -dd) for q, dd in reversed(back[1:])] + steps
            comp = Component(len(comps), labels[p].is_red, [q for q, _ in steps],
                             {q: dd for q, dd in steps}, closed, turns)
            owner.update(comp.points)
            comps.append(comp)
    return comps


# -- surgery data -------------------------------------------------------------

@dataclass
class SurgeryData:
    ell: int
    linking: list            # symmetric integer matrix, framings on the diagonal
    signature: int
    components: list         # red Component objects, in matrix order

    def to_json(self):
        return {"ell": self.ell, "linking_matrix": self.linking, "signature": self.signature}


def linking_matrix(d: Diagram) -> SurgeryData:
    comps = [c for c in trace_components(d) if c.red]
    for c in comps:
        if not c.closed:
            raise DiagramError("red components must be closed")
    index = {}
    for n, c in enumerate(comps):
        for p in c.points:
            index[p] = (n, c.direction[p])
    ell = len(comps)
    lk = [[Fraction(0)] * ell for _ in range(ell)]
    for k, s in enumerate(d.slices):
        i = 0
        for g in s:
            if g.name in ("x+", "x-") and (k, i) in index and (k, i + 1) in index:
                c1, d1 = index[(k, i)]
                c2, d2 = index[(k, i + 1)]
                sign = (1 if g.name == "x+" else -1) * d1 * d2
                if c1 == c2:
                    lk[c1][c1] += sign
                else:
                    lk[c1][c2] += Fraction(sign, 2)
                    lk[c2][c1] += Fraction(sign, 2)
            elif g.name in ("tw+", "tw-") and (k, i) in index:
                c1, _ = index[(k, i)]
                lk[c1][c1] += 1 if g.name == "tw+" else -1
            i += len(g.inputs)
    mat = []
    for row in lk:
        if any(v.denominator != 1 for v in row):
            raise DiagramError("linking numbers must be integers; check the red crossings")
        mat.append([int(v) for v in row])
    return SurgeryData(ell, mat, signature(mat), comps)


def signature(mat) -> int:
    """Inertia of a symmetric rational matrix by congruence diagonalisation."""
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j makes the diagonal entry 2 a[i][j]
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for t in range(n):
                    a[i][t] -= f * a[piv][t]
        for i in active:
            a[piv][i] = a[i][piv] = Fraction(0)
    return pos - neg


def determinant(mat) -> Fraction:
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for t in range(c, n):
                    a[i][t] -= f * a[c][t]
    return det


def first_homology_order(surgery: SurgeryData) -> int:
    """|H_1| of the surgered manifold, 0 when infinite."""
    if surgery.ell == 0:
        return 1
    return abs(int(determinant(surgery.linking)))


def recolor_red(d: Diagram, colors) -> Diagram:
    """Replace red component n by the blue label ``colors[n]``, oriented as traced."""
    from .diagram import Gen

    comps = [c for c in trace_components(d) if c.red]
    up = {}
    for n, c in enumerate(comps):
        for p in c.points:
            up[p] = (colors[n], c.direction[p] == UP)

    def lab(pt, fallback):
        if pt not in up:
            return fallback
        L, is_up = up[pt]
        return L if is_up else L.dual()

    slices = []
    for k, s in enumerate(d.slices):
        i = o = 0
        new = []
        for g in s:
            nin, nout = len(g.inputs), len(g.outputs)
            if g.name in ("id", "tw+", "tw-"):
                new.append(Gen(g.name, (lab((k, i), g.labels[0]),), None, g.pos))
            elif g.name in ("x+", "x-"):
                new.append(Gen(g.name, (lab((k, i), g.labels[0]), lab((k, i + 1), g.labels[1])), None, g.pos))
            elif g.name in ("lev", "rev") and g.labels[0].is_red:
                L, left_up = up[(k, i)]
                new.append(Gen("rev" if left_up else "lev", (L,), None, g.pos))
            elif g.name in ("lcoev", "rcoev") and g.labels[0].is_red:
                L, left_up = up[(k + 1, o)]
                new.append(Gen("lcoev" if left_up else "rcoev", (L,), None, g.pos))
            else:
                new.append(g)
            i += nin
            o += nout
        slices.append(new)
    return Diagram(slices, d.coupons)


def _graph_components(d: Diagram) -> dict:
    """Point -> representative, joining strands that meet at a coupon."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    up, down = _links(d)
    for table in (up, down):
        for p, (q, _) in table.items():
            union(p, q)
    return {p: find(p) for p in list(parent) if isinstance(p[0], int)}


def cut_tangle(d: Diagram, cut) -> tuple[Diagram, int]:
    """Open a closed diagram at ``cut = (level, position)`` into a (1,1)-tangle.

    The new input enters bottom left and the new output leaves top right; both
    detours cross over everything else.  Closing the tangle on the left gives
    back the original diagram with the framing of the cut edge shifted by the
    returned integer (the signed count of detour crossings with its own graph
    component).
    """
    from .diagram import Gen

    k, p = cut
    labels = d.level_labels(k)
    L = labels[p]
    m = len(labels)
    comp = _graph_components(d)

    def direction(lab):
        return -1 if lab.is_dual else 1

    shift = 0
    for j, lj in enumerate(labels):
        if j != p and not lj.is_red and comp.get((k, j)) == comp.get((k, p)):
            shift += direction(L) * direction(lj)

    def ids(ls):
        return [Gen("id", (l,)) for l in ls]

    slices = [[Gen("id", (L,))] + list(s) for s in d.slices[:k]]
    cur = [L] + list(labels)
    for j in range(p):
        # input strand at index j moves past labels[j]
        slices.append(ids(cur[:j]) + [Gen("x+", (L, labels[j]))] + ids(cur[j + 2:]))
        cur[j], cur[j + 1] = cur[j + 1], cur[j]
    for j in range(p + 1, m):
        slices.append(ids(cur[:j]) + [Gen("x+", (L, labels[j]))] + ids(cur[j + 2:]))
        cur[j], cur[j + 1] = cur[j + 1], cur[j]
    slices += [list(s) + [Gen("id", (L,))] for s in d.slices[k:]]
    return Diagram(slices, d.coupons), shift
