"""stabtensor: tensor networks over the stabilizer generator set.

Builds circuits from five primitive tensors (copy, XOR, Hadamard, the
phase vectors (1, i**k) and the all-ones covector), contracts them, and
machine-checks the algebraic identities the construction rests on.
Independent dense and tableau simulators cross-check every result.
"""

from stabtensor._kernels import BACKEND as _KERNEL_BACKEND
from stabtensor.tensor import (
    DEFAULT_TOL,
    Amplitude,
    LegBinding,
    Tensor,
    TensorNetwork,
    contract_network,
    contract_pair,
    equal_up_to_scalar,
    max_abs_diff,
    outer,
    permute_legs,
    tensor_from_fn,
)

__version__ = "0.1.0"

__all__ = [
    "Amplitude",
    "DEFAULT_TOL",
    "LegBinding",
    "Tensor",
    "TensorNetwork",
    "contract_network",
    "contract_pair",
    "equal_up_to_scalar",
    "kernel_backend",
    "max_abs_diff",
    "outer",
    "permute_legs",
    "tensor_from_fn",
]


def kernel_backend() -> str:
    """Which contraction kernels were selected at import ('compiled' or 'python')."""
    return _KERNEL_BACKEND
