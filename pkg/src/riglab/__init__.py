"""Random intersection graph laboratory: samplers, exact property checkers,
threshold formulas, couplings, resilient consensus and Monte Carlo sweeps."""
from .graph import (Graph, InvalidDistribution, InvalidParameter, ObjectAssignment,
                    SizeDistribution, trial_rng)
from .models import (BinomialModel, ERModel, GeneralModel, UniformModel, graph_from_assignment,
                     sample_binomial_rig, sample_er, sample_general_rig, sample_uniform_rig)
from .props import (CapacityError, EmptyGraphError, is_connected, is_k_connected, is_k_robust,
                    min_degree, robustness, robustness_screen, vertex_connectivity)
from .asymptotics import (ScalingReport, alpha_from_scaling, critical_param, critical_value,
                          edge_prob_binomial_exact, edge_prob_uniform_exact, limit_prob)

__version__ = "0.1.0"
