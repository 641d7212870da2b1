"""
DLO dynamics: strains, energy, mass operator and the assembled model
"""
from .energy import elastic_forces, grad_potential, potential_energy
from .mass import MassOperator, accelerations, mass_matrix, to_momenta, to_velocities
from .model import DloModel, hamiltonian
from .strains import StrainField, compute_strains, stiffness_matrix

__all__ = [
    "DloModel",
    "MassOperator",
    "StrainField",
    "accelerations",
    "compute_strains",
    "elastic_forces",
    "grad_potential",
    "hamiltonian",
    "mass_matrix",
    "potential_energy",
    "stiffness_matrix",
    "to_momenta",
    "to_velocities",
]
