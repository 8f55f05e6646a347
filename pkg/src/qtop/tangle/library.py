"""Small diagram builders used by the invariant modules, fixtures and tests."""

from __future__ import annotations

from .diagram import Diagram, parse_diagram


def _twists(label: str, framing: int) -> list[str]:
    g = "tw+" if framing > 0 else "tw-"
    return [f"{g}({label}), id({_star(label)})"] * abs(framing)


def _star(label: str) -> str:
    return label if label == "red" else f"{label}*"


def unknot_text(label: str = "red", framing: int = 0) -> str:
    rows = [f"lcoev({label})"] + _twists(label, framing) + [f"rev({label})"]
    return ";\n".join(rows)


def unknot(label: str = "red", framing: int = 0) -> Diagram:
    return parse_diagram(unknot_text(label, framing))


def hopf_text(a: str = "red", b: str = "red", sign: str = "+", fa: int = 0, fb: int = 0) -> str:
    """Two unknots clasped by two crossings of the same sign, with framings added by twists."""
    sa, sb = _star(a), _star(b)
    rows = [f"lcoev({a}), lcoev({b})"]
    for k in range(max(abs(fa), abs(fb))):
        ga = ("tw+" if fa > 0 else "tw-") if k < abs(fa) else "id"
        gb = ("tw+" if fb > 0 else "tw-") if k < abs(fb) else "id"
        rows.append(f"{ga}({a}), id({sa}), {gb}({b}), id({sb})")
    rows.append(f"id({a}), x{sign}({sa}, {b}), id({sb})")
    rows.append(f"id({a}), x{sign}({b}, {sa}), id({sb})")
    rows.append(f"rev({a}), rev({b})")
    return ";\n".join(rows)


def hopf_link(a: str = "red", b: str = "red", sign: str = "+", fa: int = 0, fb: int = 0) -> Diagram:
    return parse_diagram(hopf_text(a, b, sign, fa, fb))


def unlink_text(labels_framings) -> str:
    """Side-by-side unknots, ``labels_framings`` a list of (label, framing)."""
    parts = [unknot_text(l, f).split(";\n") for l, f in labels_framings]
    depth = max(len(p) for p in parts)
    rows = []
    for k in range(depth):
        row = []
        for (label, _), p in zip(labels_framings, parts):
            inner = len(p) - 2
            if k == 0:
                row.append(f"lcoev({label})")
            elif k == depth - 1:
                row.append(f"rev({label})")
            elif k - 1 < inner:
                row.append(p[k])
            else:
                row.append(f"id({label}), id({_star(label)})")
        rows.append(", ".join(row))
    return ";\n".join(rows)


def unlink(labels_framings) -> Diagram:
    return parse_diagram(unlink_text(labels_framings))


def lens_space(p: int) -> Diagram:
    """L(p,1) as surgery on the p-framed unknot (p = 0 gives S^2 x S^1)."""
    return unknot("red", p)


def empty() -> Diagram:
    return Diagram([])
