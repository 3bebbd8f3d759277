"""Orbit counts of matrix groups on Grassmannians and flag varieties over F_p."""

from .errors import *  # noqa: F401,F403
from .field import FpMatrix, PrimeField, field_new, mat_inv, mat_mul, rref
from .incidence import build_A, check_transform, hat_transform, solve_epsilon, witness_H
from .orbits import (FlagVariety, GroupSpec, Grassmannian, burnside_count, fibered_count,
                     group_closure, orbit_count, stabilizer)
from .partitions import (conjugate, dominance_geq, flag_dim, grass_dim, q_binomial,
                         q_multinomial, raising, raising_witness, sort_to_partition)
from .skeleton import Skeleton, enumerate_skeletons, fixed_flag_dim, semisimplify
from .subspaces import Flag, Subspace, enumerate_flags, enumerate_subspaces

__version__ = "0.1.0"
