"""Greene's 2F1 over finite fields, Hessian curves and their moments."""
from .charsum import CycloContext, hess_2f1, hess_2f1_all
from .classnum import hurwitz_H, hurwitz_Hstar
from .ffield import field_for_q, make_field
from .hessian import trace, trace_all
from .moments import distribution, f21_moment_direct, moment_report

__version__ = "0.1.0"
