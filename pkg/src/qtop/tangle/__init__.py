from .diagram import (AdmissibilityError, Coupon, Diagram, DiagramError, Gen, Label, P, RED, V, load_diagram,
                      parse_diagram, parse_label, tensor_label)
from .evaluate import (evaluate_bichrome_cut, evaluate_blue, evaluate_scalar, hennings_functional,
                       kirby_functional, rep_of, trace_functional, universal_beads)
from .surgery import linking_matrix, signature, trace_components

__all__ = [
    "AdmissibilityError", "Coupon", "Diagram", "DiagramError", "Gen", "Label", "P", "RED", "V", "load_diagram",
    "parse_diagram", "parse_label", "tensor_label", "evaluate_bichrome_cut", "evaluate_blue",
    "evaluate_scalar", "hennings_functional", "kirby_functional", "rep_of", "trace_functional",
    "universal_beads", "linking_matrix", "signature", "trace_components",
]
