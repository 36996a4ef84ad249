"""Bargmann representations of deformed oscillator algebras a+a = psi(N)."""
from .classify import (CoherentDomain, Ladder, SpectrumDescriptor, SpectrumKind,
                       classify, classify_all, coherent_domain)
from .coherent import (CoherentState, NormResult, coherent_coefficients, kernel_G,
                       kernel_residual, kernel_series, norm_squared)
from .errors import *  # noqa: F401,F403
from .psi import (Affine, ExpPoly, PolyProduct, PsiSpec, QBracket, QLinear, QParen,
                  asymptote, evaluate, find_lattice_zeros, reflect, shift_psi)
from .qspecial import (bernoulli_poly, exp_q, generalized_factorial, moment_target,
                       q_bracket, q_paren, q_pochhammer_factor)
from .weight import (Feasibility, HatForm, MellinSolution, WeightKind, atomic_mellin,
                     hat_eval, invert_mellin_numeric, inversion_feasibility,
                     positivity_scan, solve_mellin, weight_eval)

__version__ = "0.1.0"
