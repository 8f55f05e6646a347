"""Command line interface: ``qtop --r R <command> [options]``.

Exit codes: 0 success, 1 parse or usage error, 2 inadmissible input,
3 failed internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .linalg import Matrix
from .scalar import CycScalar, field_init
from .tangle.diagram import AdmissibilityError, DiagramError, load_diagram

FIXTURES = Path(__file__).parent / "fixtures"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtop", description="Exact quantum invariants from the small quantum group of sl2.")
    p.add_argument("--r", type=int, default=3, help="odd order of the root of unity (>= 3)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("rt", "semisimplified WRT invariant of a surgery diagram"),
                        ("hennings", "Hennings-type invariant of a red surgery link"),
                        ("lprime", "renormalized invariant of an admissible decorated diagram")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--diagram", required=True, help="diagram file (.tg text or JSON); bare names look in the fixtures")
        s.add_argument("--coupons", help="JSON file with a coupon table")
        if name == "lprime":
            s.add_argument("--cut", help="edge to cut, as LEVEL:POSITION (default: first projective edge)")
    sub.add_parser("smatrix", help="S-matrix of the semisimplified category")
    v = sub.add_parser("verlinde", help="state space dimension of a closed surface")
    v.add_argument("--genus", type=int, required=True)
    v.add_argument("--graph", choices=("caterpillar", "theta"), default="caterpillar")
    sub.add_parser("verify", help="run the identity checks for this r")
    sub.add_parser("tables", help="quantum dimensions, modified traces and normalization constants")
    return p


# -- output helpers ---------------------------------------------------------------

def _scalar(x: CycScalar) -> dict:
    return x.to_json()


def _fmt_complex(z: complex) -> str:
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    return f"{re:.12g}{im:+.12g}i"


def _table(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict) and "coeffs" in obj and "approx" in obj:
        return pad + _fmt_complex(complex(*obj["approx"]))
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not (isinstance(v, dict) and "coeffs" in v):
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_table(v).strip()}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(isinstance(row, list) for row in obj):
            for row in obj:
                lines.append(pad + "  ".join(_table(x).strip() for x in row))
            return "\n".join(lines)
        return pad + ", ".join(_table(x).strip() for x in obj)
    return pad + str(obj)


def _emit(result: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(result, indent=2))
    else:
        print(_table(result))


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    for cand in (FIXTURES / path, FIXTURES / f"{path}.tg"):
        if cand.exists():
            return cand
    raise DiagramError(f"diagram file {path!r} not found")


def _load(args):
    coupons = None
    if getattr(args, "coupons", None):
        try:
            coupons = json.loads(Path(args.coupons).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise DiagramError(f"cannot read coupon table: {e}") from e
    return load_diagram(_resolve(args.diagram), coupons)


def _parse_cut(text):
    if text is None:
        return None
    try:
        k, p = text.split(":")
        return int(k), int(p)
    except ValueError as e:
        raise DiagramError(f"cut must look like LEVEL:POSITION, got {text!r}") from e


def _matrix_json(m: Matrix):
    return [[m[i, j].to_json() for j in range(m.ncols)] for i in range(m.nrows)]


# -- commands ----------------------------------------------------------------------

def cmd_invariant(args) -> dict:
    from .nonsemisimple import hennings_invariant, renormalized_invariant
    from .semisimple import rt_invariant
    from .tangle.surgery import linking_matrix

    d = _load(args)
    d.check_range(args.r)
    sd = linking_matrix(d)
    if args.command == "rt":
        value = rt_invariant(d, args.r)
    elif args.command == "hennings":
        value = hennings_invariant(d, args.r)
    else:
        value = renormalized_invariant(d, args.r, _parse_cut(args.cut))
    return {"command": args.command, "r": args.r, "value": _scalar(value),
            "surgery": sd.to_json()}


def cmd_smatrix(args) -> dict:
    from .semisimple import simple_indices, smatrix, smatrix_invertible

    s = smatrix(args.r)
    return {"command": "smatrix", "r": args.r, "colors": simple_indices(args.r),
            "matrix": _matrix_json(s), "invertible": smatrix_invertible(args.r)}


def cmd_verlinde(args) -> dict:
    from .semisimple import theta_graph, verlinde_dim

    graph = theta_graph() if args.graph == "theta" else None
    if graph is not None and args.genus != 2:
        raise DiagramError("the theta graph has genus 2")
    return {"command": "verlinde", "r": args.r, "genus": args.genus, "graph": args.graph,
            "dimension": verlinde_dim(args.genus, args.r, graph)}


def cmd_tables(args) -> dict:
    from .nonsemisimple import modified_trace_table, nss_normalization
    from .hopf import quantum_group
    from .rep import projective_module, qdim, simple_module
    from .semisimple import ss_normalization

    r = args.r
    qd = {f"V{n}": _scalar(qdim(simple_module(r, n))) for n in range(r)}
    qd.update({f"P{n}": _scalar(qdim(projective_module(r, n))) for n in range(r - 1)})
    H = quantum_group(r)
    # v is central, so it acts on each simple module by a scalar
    twist = {f"V{n}": _scalar(simple_module(r, n).act(H.ribbon())[0, 0]) for n in range(r)}
    return {"command": "tables", "r": r, "qdim": qd, "ribbon_eigenvalue": twist,
            "modified_trace_of_identity": {k: _scalar(v) for k, v in modified_trace_table(r).items()},
            "semisimple": ss_normalization(r).to_json(),
            "non_semisimple": nss_normalization(r).to_json()}


def cmd_verify(args) -> dict:
    from .verify import run_checks

    results, notes = run_checks(args.r)
    return {"command": "verify", "r": args.r,
            "results": {name: ("pass" if ok else "FAIL") for name, ok in results},
            "all_passed": all(ok for _, ok in results), "notes": notes}


COMMANDS = {"rt": cmd_invariant, "hennings": cmd_invariant, "lprime": cmd_invariant,
            "smatrix": cmd_smatrix, "verlinde": cmd_verlinde, "tables": cmd_tables,
            "verify": cmd_verify}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.r < 3 or args.r % 2 == 0:
        print("qtop: error: --r must be an odd integer >= 3", file=sys.stderr)
        return 1
    field_init(args.r)
    try:
        result = COMMANDS[args.command](args)
    except AdmissibilityError as e:
        print(f"qtop: inadmissible: {e}", file=sys.stderr)
        return 2
    except DiagramError as e:
        print(f"qtop: parse error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"qtop: internal check failed: {e}", file=sys.stderr)
        return 3
    _emit(result, args.format)
    if args.command == "verify" and not result["all_passed"]:
        return 3
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
