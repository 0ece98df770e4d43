"""Conformal flow on S^3, the cubic Szego equation and their parent oscillator system."""
from .errors import DomainError
from .integrate import IntegrationError, IntegratorConfig, Trajectory, conservation_drift, integrate
from .kernels import BACKEND
from .resonant import ChargeSet, charges, flow_rhs, hamiltonian, interaction_coefficient
from .subspace import SubspaceState, lift, oscillation_of, subspace_charges, subspace_rhs
from .szego import SzegoPoleState, single_pole_solution, szego_charges, szego_rhs

__version__ = "0.1.0"
