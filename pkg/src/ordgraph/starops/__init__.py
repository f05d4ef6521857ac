from .laurent import Gauss, Laurent, LaurentError, LaurentMatrix, adjoint, evaluate, parse_laurent, star_product
from .reps import (Representation, RepError, gauge_rescale, ideal_span_member, katsura_vertices,
                   load_rep, rep_from_dict, verify_ck)
from .actions import (ShiftBasisVector, pi_adjoint, pi_apply, shift_samples, tau_adjoint, tau_apply,
                      verify_pi, verify_tau)
from .correspondence import (XElement, delta, directed_graph_check, verify_correspondence, x_inner,
                             x_left_act, x_psi, x_right_act)


def kernel_witness(rep: Representation, word, target: str, point):
    """Return (residual, evaluated residual) for prod(word) - T_target, the
    residual evaluated at the given point of the gauge torus."""
    m = LaurentMatrix.identity(rep.size)
    for name in word:
        m = m @ rep[name]
    diff = m - rep[target]
    return diff, diff.evaluate(point)
