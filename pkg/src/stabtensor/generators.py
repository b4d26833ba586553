"""The primitive generator tensors and everything derived from them.

Five primitives generate the whole gate set: the copy tensor, the XOR
tensor, the Hadamard matrix, the phase vectors (1, i**k), and the
all-ones covector.  Vectors are kept unnormalised exactly as defined, so
identities built from them may hold only up to a recorded scalar.
"""

from __future__ import annotations

import math

from stabtensor.tensor import Tensor, contract_pair, max_abs_diff, tensor_from_fn

SQRT_HALF = 1.0 / math.sqrt(2.0)

# i**k by quadrant; never computed through floating trig.
I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)

_CHECK_TOL = 1e-12


def copy_tensor() -> Tensor:
    """Rank-3 copy tensor: 1 exactly when all three legs agree."""
    return tensor_from_fn(3, lambda i, j, k: 1 - (i + j + k) + i * j + i * k + j * k)


def xor_tensor() -> Tensor:
    """Rank-3 parity tensor: 1 exactly when one leg is the XOR of the others."""
    return tensor_from_fn(
        3,
        lambda q, r, s: 1 - (q + r + s) + 2 * (q * r + q * s + s * r) - 4 * q * r * s,
    )


def hadamard() -> Tensor:
    return tensor_from_fn(2, lambda i, j: SQRT_HALF * (-1) ** (i * j))


def t_vector(k: int) -> Tensor:
    """The unnormalised vector (1, i**k); period 4 in k."""
    return Tensor(1, (1, I_POWERS[k % 4]))


def plus_covector() -> Tensor:
    return Tensor(1, (1, 1))


def ket_zero() -> Tensor:
    return Tensor(1, (1, 0))


def ket_one() -> Tensor:
    return Tensor(1, (0, 1))


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise AssertionError(f"generator self-check failed: {what}")


def cup() -> Tensor:
    """Rank-2 index-raiser with entries 1 at (0,0) and (1,1).

    Built from the generators: the copy tensor with the all-ones vector
    contracted into its input leg, checked against the direct definition.
    """
    built = contract_pair(copy_tensor(), (0,), Tensor(1, (1, 1)), (0,))
    direct = Tensor(2, (1, 0, 0, 1))
    _require(max_abs_diff(built, direct) == 0.0, "cup from copy tensor")
    return built


def cap() -> Tensor:
    """Covariant counterpart of cup(); identical entries."""
    return cup()


def identity_map() -> Tensor:
    """The identity operator, legs ordered (out, in)."""
    return Tensor(2, (1, 0, 0, 1))


def pointwise_product(u: Tensor, v: Tensor) -> Tensor:
    """Entrywise product of two vectors, realised through the copy tensor."""
    if u.rank != 1 or v.rank != 1:
        raise ValueError(f"pointwise_product needs rank-1 inputs, got {u.rank}, {v.rank}")
    half = contract_pair(copy_tensor(), (1,), u, (0,))
    built = contract_pair(half, (1,), v, (0,))
    direct = Tensor(1, (u.data[0] * v.data[0], u.data[1] * v.data[1]))
    _require(max_abs_diff(built, direct) == 0.0, "pointwise product via copy tensor")
    return built


def lift_diagonal(v: Tensor) -> Tensor:
    """Lift a vector to the diagonal operator diag(v0, v1) via the copy tensor."""
    if v.rank != 1:
        raise ValueError(f"lift_diagonal needs a rank-1 input, got rank {v.rank}")
    built = contract_pair(copy_tensor(), (0,), v, (0,))
    direct = Tensor(2, (v.data[0], 0, 0, v.data[1]))
    _require(max_abs_diff(built, direct) == 0.0, "diagonal lift via copy tensor")
    return built


def compose(outer_op: Tensor, inner_op: Tensor) -> Tensor:
    """Operator product outer_op @ inner_op for rank-2 (out, in) tensors."""
    if outer_op.rank != 2 or inner_op.rank != 2:
        raise ValueError("compose needs rank-2 operators")
    return contract_pair(outer_op, (1,), inner_op, (0,))


def phase_gate() -> Tensor:
    """S = diag(1, i), the diagonal lift of (1, i)."""
    return lift_diagonal(t_vector(1))


def pauli_z() -> Tensor:
    z = lift_diagonal(t_vector(2))
    _require(max_abs_diff(z, Tensor(2, (1, 0, 0, -1))) <= _CHECK_TOL, "Z from lift")
    return z


def pauli_x() -> Tensor:
    """X recovered as H Z H."""
    h = hadamard()
    x = compose(compose(h, pauli_z()), h)
    _require(max_abs_diff(x, Tensor(2, (0, 1, 1, 0))) <= _CHECK_TOL, "X = HZH")
    return x


def pauli_y() -> Tensor:
    """Y recovered as S X S^3."""
    s = phase_gate()
    s3 = compose(compose(s, s), s)
    y = compose(compose(s, pauli_x()), s3)
    _require(max_abs_diff(y, Tensor(2, (0, -1j, 1j, 0))) <= _CHECK_TOL, "Y = S X S^3")
    return y


def not_from_constant() -> Tensor:
    """NOT built by feeding the constant 1 into one input of the XOR tensor."""
    built = contract_pair(xor_tensor(), (2,), ket_one(), (0,))
    _require(max_abs_diff(built, Tensor(2, (0, 1, 1, 0))) == 0.0, "NOT from constant")
    return built


_BY_NAME = {
    "copy": copy_tensor,
    "xor": xor_tensor,
    "hadamard": hadamard,
    "plus_covector": plus_covector,
    "ket0": ket_zero,
    "ket1": ket_one,
    "cup": cup,
    "cap": cap,
}


def by_name(name: str) -> Tensor:
    """Look up a generator by name; 't0'..'t3' select the phase vectors."""
    if name in _BY_NAME:
        return _BY_NAME[name]()
    if len(name) == 2 and name[0] == "t" and name[1].isdigit():
        return t_vector(int(name[1]))
    raise ValueError(f"unknown generator {name!r}")
