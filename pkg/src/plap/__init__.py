"""Eigenpairs of the p-Laplacian on signed weighted graphs."""

from .criterion import criterion_sweep, lambda_max_signless, linear_baselines, scaled_curve, star_lambda
from .graph import SignedGraph, generate, is_connected, is_subgraph, validate
from .graphio import parse_graph, write_graph
from .multistart import EigenpairList, find_eigenpairs
from .operator import apply, p_norm, phi_p, rayleigh, shift_potential, signed_power
from .power import Eigenpair, IterationTrace, SolverConfig, solve_max, verify_eigenpair
from .tensor import b_apply, build_tensor_pair, entry_B, entry_T, tensor_apply, tensor_apply_naive

__version__ = "0.1.0"
