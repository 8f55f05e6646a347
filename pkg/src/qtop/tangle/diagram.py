"""
Sliced tangle diagrams and their text/JSON formats.

A diagram is read bottom to top.  Each slice is a horizontal row of
generators; the labels leaving slice k must equal the labels entering
slice k+1.  Labels are catalogue tags (``V3``, ``P1``), duals (``V3*``),
tensor nodes (``(V1(x)V2)``) or the uncoloured surgery tag ``red``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction


class DiagramError(ValueError):
    """Raised for malformed diagram input; carries a line/column when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


# -- labels -------------------------------------------------------------------

@dataclass(frozen=True)
class Label:
    kind: str                  # 'V', 'P', 'dual', 'tensor', 'red'
    n: int | None = None
    parts: tuple = ()

    def __str__(self):
        if self.kind in ("V", "P"):
            return f"{self.kind}{self.n}"
        if self.kind == "red":
            return "red"
        if self.kind == "dual":
            return f"{self.parts[0]}*"
        return f"({self.parts[0]}(x){self.parts[1]})"

    __repr__ = __str__

    @property
    def is_red(self) -> bool:
        return self.kind == "red"

    @property
    def is_dual(self) -> bool:
        return self.kind == "dual"

    def dual(self) -> Label:
        if self.kind == "red":
            return self
        if self.kind == "dual":
            return self.parts[0]
        return Label("dual", parts=(self,))

    def leaves(self):
        if self.kind in ("V", "P"):
            yield self
        for p in self.parts:
            yield from p.leaves()

    def is_projective(self, r: int) -> bool:
        """Projectives form a tensor ideal closed under duals."""
        return any(leaf.kind == "P" or (leaf.kind == "V" and leaf.n == r - 1) for leaf in self.leaves())

    def check_range(self, r: int) -> None:
        for leaf in self.leaves():
            top = r - 1 if leaf.kind == "V" else r - 2
            if not 0 <= leaf.n <= top:
                raise DiagramError(f"label {leaf} out of range for r={r}")


class AdmissibilityError(DiagramError):
    """A decoration without the projective label the renormalized theory needs."""


def V(n: int) -> Label:
    return Label("V", n)


def P(n: int) -> Label:
    return Label("P", n)


RED = Label("red")


def tensor_label(a: Label, b: Label) -> Label:
    if a.is_red or b.is_red:
        raise DiagramError("red strands cannot be tensored")
    return Label("tensor", parts=(a, b))


# -- generators ---------------------------------------------------------------

GEN_NAMES = ("id", "lev", "lcoev", "rev", "rcoev", "x+", "x-", "tw+", "tw-", "coup")


@dataclass(frozen=True)
class Coupon:
    name: str
    source: tuple
    target: tuple
    matrix: tuple      # rows of exact entries (int, Fraction or scalar JSON dict)


@dataclass(frozen=True)
class Gen:
    name: str
    labels: tuple = ()
    coupon: Coupon | None = None
    pos: tuple | None = field(default=None, compare=False)

    @property
    def inputs(self) -> tuple:
        n, L = self.name, self.labels
        if n in ("id", "tw+", "tw-"):
            return (L[0],)
        if n == "lev":
            return (L[0].dual(), L[0])
        if n == "rev":
            return (L[0], L[0].dual())
        if n in ("lcoev", "rcoev"):
            return ()
        if n in ("x+", "x-"):
            return (L[0], L[1])
        return self.coupon.source

    @property
    def outputs(self) -> tuple:
        n, L = self.name, self.labels
        if n in ("id", "tw+", "tw-"):
            return (L[0],)
        if n == "lcoev":
            return (L[0], L[0].dual())
        if n == "rcoev":
            return (L[0].dual(), L[0])
        if n in ("lev", "rev"):
            return ()
        if n in ("x+", "x-"):
            return (L[1], L[0])
        return self.coupon.target

    def __str__(self):
        if self.name == "coup":
            return f"coup({self.coupon.name})"
        return f"{self.name}({','.join(str(l) for l in self.labels)})"


@dataclass
class Diagram:
    slices: list                      # list of list of Gen
    coupons: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    # boundary label sequences; level k sits below slice k
    def level_labels(self, k: int) -> tuple:
        if k < len(self.slices):
            return tuple(l for g in self.slices[k] for l in g.inputs)
        if not self.slices:
            return ()
        return tuple(l for g in self.slices[-1] for l in g.outputs)

    @property
    def source(self) -> tuple:
        return self.level_labels(0)

    @property
    def target(self) -> tuple:
        return self.level_labels(len(self.slices))

    @property
    def n_levels(self) -> int:
        return len(self.slices) + 1

    def is_closed(self) -> bool:
        return not self.source and not self.target

    def labels(self):
        for s in self.slices:
            for g in s:
                for l in g.inputs + g.outputs:
                    yield l

    def has_red(self) -> bool:
        return any(l.is_red for l in self.labels())

    def has_blue(self) -> bool:
        return any(not l.is_red for l in self.labels())

    def validate(self) -> None:
        for k, s in enumerate(self.slices):
            for g in s:
                if g.name == "coup" and any(l.is_red for l in g.inputs + g.outputs):
                    raise DiagramError(f"coupon {g.coupon.name} touches a red strand", *(g.pos or (None, None)))
            if k + 1 < len(self.slices):
                out = tuple(l for g in s for l in g.outputs)
                nxt = tuple(l for g in self.slices[k + 1] for l in g.inputs)
                if out != nxt:
                    pos = self.slices[k + 1][0].pos if self.slices[k + 1] else None
                    raise DiagramError(
                        f"boundary mismatch between slice {k} and slice {k + 1}: "
                        f"{_fmt(out)} vs {_fmt(nxt)}", *(pos or (None, None)))

    def check_range(self, r: int) -> None:
        for l in self.labels():
            l.check_range(r)

    def to_text(self) -> str:
        return ";\n".join(", ".join(str(g) for g in s) for s in self.slices)

    def to_json(self) -> dict:
        slices = []
        for s in self.slices:
            row = []
            for g in s:
                if g.name == "coup":
                    row.append({"gen": "coup", "name": g.coupon.name})
                else:
                    row.append({"gen": g.name, "labels": [str(l) for l in g.labels]})
            slices.append(row)
        coupons = {
            name: {"source": [str(l) for l in c.source], "target": [str(l) for l in c.target],
                   "matrix": [[_entry_json(v) for v in row] for row in c.matrix]}
            for name, c in self.coupons.items()
        }
        return {"slices": slices, "coupons": coupons}


def _fmt(labels) -> str:
    return "[" + ", ".join(str(l) for l in labels) + "]"


def _entry_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


# -- text parser --------------------------------------------------------------

class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def where(self, i=None):
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def skip(self):
        t = self.text
        while self.i < len(t):
            if t[self.i].isspace():
                self.i += 1
            elif t[self.i] == "#":
                while self.i < len(t) and t[self.i] != "\n":
                    self.i += 1
            else:
                break

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.i)

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.i):
            got = self.text[self.i:self.i + 8] or "end of input"
            raise DiagramError(f"expected {s!r}, found {got!r}", *self.where())
        self.i += len(s)

    def at_end(self) -> bool:
        self.skip()
        return self.i >= len(self.text)


_GEN_RE = re.compile(r"(lcoev|rcoev|lev|rev|id|x\+|x-|tw\+|tw-|coup)\(")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"\d+")


def _parse_label(c: _Cursor) -> Label:
    c.skip()
    t = c.text
    if c.peek("("):
        c.expect("(")
        a = _parse_label(c)
        c.expect("(x)")
        b = _parse_label(c)
        c.expect(")")
        lab = tensor_label(a, b)
    elif t.startswith("red", c.i):
        c.i += 3
        lab = RED
    elif c.i < len(t) and t[c.i] in "VP":
        kind = t[c.i]
        m = _INT_RE.match(t, c.i + 1)
        if not m:
            raise DiagramError(f"expected an index after {kind}", *c.where())
        c.i = m.end()
        lab = Label(kind, int(m.group()))
    else:
        raise DiagramError(f"expected a label, found {t[c.i:c.i + 8]!r}", *c.where())
    while c.peek("*"):
        c.expect("*")
        if lab.is_red:
            raise DiagramError("red strands have no dual", *c.where())
        lab = lab.dual()
    return lab


def _parse_gen(c: _Cursor, coupons: dict) -> Gen:
    c.skip()
    pos = c.where()
    m = _GEN_RE.match(c.text, c.i)
    if not m:
        raise DiagramError(f"unknown generator {c.text[c.i:c.i + 8]!r}", *pos)
    name = m.group(1)
    c.i = m.end()
    if name == "coup":
        c.skip()
        nm = _NAME_RE.match(c.text, c.i)
        if not nm:
            raise DiagramError("expected a coupon name", *c.where())
        c.i = nm.end()
        c.expect(")")
        if nm.group() not in coupons:
            raise DiagramError(f"coupon {nm.group()!r} is not defined in the coupon table", *pos)
        return Gen("coup", (), coupons[nm.group()], pos)
    labels = [_parse_label(c)]
    if name in ("x+", "x-"):
        c.expect(",")
        labels.append(_parse_label(c))
    c.expect(")")
    return Gen(name, tuple(labels), None, pos)


def parse_coupons(data) -> dict:
    """Coupon table ``{name: {"source": [...], "target": [...], "matrix": [[...]]}}``."""
    if isinstance(data, str):
        data = json.loads(data)
    out = {}
    for name, entry in (data or {}).items():
        src = tuple(parse_label(s) for s in entry.get("source", []))
        tgt = tuple(parse_label(s) for s in entry.get("target", []))
        rows = tuple(tuple(_parse_entry(v) for v in row) for row in entry["matrix"])
        out[name] = Coupon(name, src, tgt, rows)
    return out


def _parse_entry(v):
    if isinstance(v, dict):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise DiagramError(f"bad coupon entry {v!r}")


def parse_label(text: str) -> Label:
    c = _Cursor(text)
    lab = _parse_label(c)
    if not c.at_end():
        raise DiagramError(f"trailing text in label {text!r}", *c.where())
    return lab


def parse_diagram(text: str, coupons=None) -> Diagram:
    """Parse the slice grammar: slices separated by ';', generators by ','."""
    coupons = coupon_table(coupons)
    stripped = text.strip()
    if stripped.startswith("{"):
        return diagram_from_json(json.loads(stripped), coupons)
    c = _Cursor(text)
    slices = []
    while not c.at_end():
        row = [_parse_gen(c, coupons)]
        while c.peek(","):
            c.expect(",")
            row.append(_parse_gen(c, coupons))
        slices.append(row)
        if c.at_end():
            break
        c.expect(";")
    return Diagram(slices, dict(coupons))


def coupon_table(coupons) -> dict:
    """Accept None, a JSON string, a raw table or an already parsed table."""
    if not coupons:
        return {}
    if isinstance(coupons, dict) and all(isinstance(v, Coupon) for v in coupons.values()):
        return coupons
    return parse_coupons(coupons)


def diagram_from_json(data: dict, coupons=None) -> Diagram:
    table = dict(coupon_table(coupons))
    table.update(parse_coupons(data.get("coupons", {})))
    slices = []
    for k, row in enumerate(data.get("slices", [])):
        gens = []
        for g in row:
            name = g.get("gen")
            if name not in GEN_NAMES:
                raise DiagramError(f"unknown generator {name!r} in slice {k}")
            if name == "coup":
                if g.get("name") not in table:
                    raise DiagramError(f"coupon {g.get('name')!r} is not defined")
                gens.append(Gen("coup", (), table[g["name"]], (k + 1, 1)))
            else:
                gens.append(Gen(name, tuple(parse_label(s) for s in g.get("labels", [])), None, (k + 1, 1)))
        slices.append(gens)
    return Diagram(slices, table)


def load_diagram(path, coupons=None) -> Diagram:
    with open(path) as fh:
        return parse_diagram(fh.read(), coupons)
