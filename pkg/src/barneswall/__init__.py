"""Exact Barnes-Wall lattices over Z[√2], their Clifford groups and invariants."""

from .blattice import BWLattice, MatQ2, ZLattice, balanced_bw, irrational_part, rational_part
from .cgroup import clifford_group, molien_series, standard_generators
from .codes import BinaryCode, classify_self_dual, hamming8, i2
from .enumeration import design_moment_test, kissing_number, minimal_vectors, similar
from .invariants import MultiPoly, act, cwe_tensor, invariant_dimension, laplacian
from .qring import QSqrt2, ZSqrt2

__version__ = "0.1.0"
