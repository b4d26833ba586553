"""Dense complex tensors over dimension-2 legs, and networks of them.

Layout convention, used everywhere in this package: a rank-r tensor stores
2**r complex entries flat in row-major leg order, with the leftmost leg as
the most significant bit of the flat index.  A rank-0 tensor is a scalar.

Tensors and networks are immutable once constructed and safe to share
across threads.  Contraction of a single network is single-threaded;
disjoint networks may be contracted in parallel.
"""

from __future__ import annotations

import heapq
from cmath import isfinite
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from stabtensor._kernels import contract_flat, permute_flat

Amplitude = complex

DEFAULT_TOL = 1e-10


class Tensor:
    """Immutable dense tensor; every leg has dimension 2."""

    __slots__ = ("_rank", "_data")

    def __init__(self, rank: int, data: Iterable[complex]):
        if rank < 0:
            raise ValueError(f"rank must be non-negative, got {rank}")
        entries = tuple(complex(v) for v in data)
        if len(entries) != 1 << rank:
            raise ValueError(
                f"rank-{rank} tensor needs {1 << rank} entries, got {len(entries)}"
            )
        for v in entries:
            if not isfinite(v):
                raise ValueError(f"non-finite amplitude {v!r}")
        self._rank = rank
        self._data = entries

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def shape(self) -> tuple[int, ...]:
        return (2,) * self._rank

    @property
    def data(self) -> tuple[complex, ...]:
        return self._data

    def __getitem__(self, idx) -> complex:
        if isinstance(idx, tuple):
            if len(idx) != self._rank:
                raise IndexError(f"expected {self._rank} indices, got {len(idx)}")
            flat = 0
            for bit in idx:
                if bit not in (0, 1):
                    raise IndexError(f"leg index must be 0 or 1, got {bit}")
                flat = (flat << 1) | bit
            return self._data[flat]
        return self._data[idx]

    def item(self) -> complex:
        if self._rank != 0:
            raise ValueError(f"item() on rank-{self._rank} tensor")
        return self._data[0]

    def scale(self, factor: complex) -> Tensor:
        return Tensor(self._rank, (factor * v for v in self._data))

    def __repr__(self) -> str:
        if self._rank <= 2:
            return f"Tensor(rank={self._rank}, data={self._data!r})"
        return f"Tensor(rank={self._rank}, <{len(self._data)} entries>)"


def tensor_from_fn(rank: int, fn: Callable[..., complex]) -> Tensor:
    """Build a tensor by evaluating fn on every index tuple over {0,1}."""
    if rank < 0:
        raise ValueError(f"rank must be non-negative, got {rank}")
    data = []
    for flat in range(1 << rank):
        idx = tuple((flat >> (rank - 1 - k)) & 1 for k in range(rank))
        data.append(complex(fn(*idx)))
    return Tensor(rank, data)


def _check_legs(legs: Sequence[int], rank: int, side: str) -> None:
    seen = set()
    for p in legs:
        if not 0 <= p < rank:
            raise ValueError(f"{side} leg {p} out of range for rank {rank}")
        if p in seen:
            raise ValueError(f"duplicate {side} leg {p}")
        seen.add(p)


def contract_pair(
    a: Tensor, legs_a: Sequence[int], b: Tensor, legs_b: Sequence[int]
) -> Tensor:
    """Contract paired legs of a and b (legs_a[t] sums against legs_b[t]).

    Surviving legs of a precede surviving legs of b, each group keeping its
    original order.  Zero pairs gives the outer product.
    """
    if len(legs_a) != len(legs_b):
        raise ValueError(
            f"leg lists differ in length: {len(legs_a)} vs {len(legs_b)}"
        )
    _check_legs(legs_a, a.rank, "first")
    _check_legs(legs_b, b.rank, "second")
    out_rank = a.rank + b.rank - 2 * len(legs_a)
    data = contract_flat(a.data, a.rank, list(legs_a), b.data, b.rank, list(legs_b))
    return Tensor(out_rank, data)


def outer(a: Tensor, b: Tensor) -> Tensor:
    return contract_pair(a, (), b, ())


def permute_legs(a: Tensor, perm: Sequence[int]) -> Tensor:
    """Return the tensor with leg k of `a` moved to position perm[k]."""
    if sorted(perm) != list(range(a.rank)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{a.rank - 1}")
    return Tensor(a.rank, permute_flat(a.data, a.rank, list(perm)))


def max_abs_diff(a: Tensor, b: Tensor) -> float:
    if a.rank != b.rank:
        raise ValueError(f"shape mismatch: rank {a.rank} vs {b.rank}")
    return max(abs(x - y) for x, y in zip(a.data, b.data))


def max_scaled_diff(a: Tensor, factor: complex, b: Tensor) -> float:
    if a.rank != b.rank:
        raise ValueError(f"shape mismatch: rank {a.rank} vs {b.rank}")
    return max(abs(x - factor * y) for x, y in zip(a.data, b.data))


def equal_up_to_scalar(a: Tensor, b: Tensor, tol: float = DEFAULT_TOL) -> complex | None:
    """Return lam with max|a - lam*b| <= tol, or None if no such scalar.

    lam is fixed by the largest-magnitude entry of b (first one on ties).
    Two all-zero tensors compare equal with lam = 1.
    """
    if a.rank != b.rank:
        raise ValueError(f"shape mismatch: rank {a.rank} vs {b.rank}")
    pivot = max(range(len(b.data)), key=lambda k: abs(b.data[k]))
    if abs(b.data[pivot]) == 0.0:
        if all(abs(x) <= tol for x in a.data):
            return 1 + 0j
        return None
    lam = a.data[pivot] / b.data[pivot]
    if max_scaled_diff(a, lam, b) <= tol:
        return lam
    return None


class LegBinding(NamedTuple):
    """One bond: leg leg_a of node_a is summed against leg leg_b of node_b."""

    node_a: Hashable
    leg_a: int
    node_b: Hashable
    leg_b: int


# Kronecker pairing used to trace two legs within one cluster.
_TRACE_PAIR = Tensor(2, (1, 0, 0, 1))


def _as_binding(bond) -> LegBinding:
    if isinstance(bond, LegBinding):
        return bond
    if len(bond) == 4:
        return LegBinding(*bond)
    (na, la), (nb, lb) = bond
    return LegBinding(na, la, nb, lb)


class TensorNetwork:
    """Nodes, bonds between legs, and an ordered list of open legs.

    Every leg of every node must appear in exactly one bond or exactly one
    open-leg slot.  The open-leg order fixes the leg order of the
    contracted result.
    """

    def __init__(
        self,
        nodes: dict[Hashable, Tensor],
        bonds: Sequence,
        open_legs: Sequence[tuple[Hashable, int]],
    ):
        self.nodes = dict(nodes)
        self.bonds = tuple(_as_binding(b) for b in bonds)
        self.open_legs = tuple((n, int(l)) for n, l in open_legs)
        self._validate()

    def _validate(self) -> None:
        seen: set[tuple[Hashable, int]] = set()

        def claim(node, leg, what):
            if node not in self.nodes:
                raise ValueError(f"{what} references unknown node {node!r}")
            if not 0 <= leg < self.nodes[node].rank:
                raise ValueError(
                    f"{what} references leg {leg} of node {node!r} "
                    f"(rank {self.nodes[node].rank})"
                )
            key = (node, leg)
            if key in seen:
                raise ValueError(f"leg {key} used more than once")
            seen.add(key)

        for bond in self.bonds:
            claim(bond.node_a, bond.leg_a, "bond")
            claim(bond.node_b, bond.leg_b, "bond")
        for node, leg in self.open_legs:
            claim(node, leg, "open leg")
        for node, tensor in self.nodes.items():
            for leg in range(tensor.rank):
                if (node, leg) not in seen:
                    raise ValueError(f"dangling leg ({node!r}, {leg})")

    def contract(self, order: Sequence[int] | None = None) -> Tensor:
        """Contract every bond and return the open legs in declared order.

        `order` optionally fixes the bond contraction order (a permutation
        of bond indices); by default bonds are picked greedily to minimise
        the intermediate rank.  The result is order-independent up to
        floating-point rounding.
        """
        if order is not None and sorted(order) != list(range(len(self.bonds))):
            raise ValueError("order must be a permutation of the bond indices")

        # cluster id -> (tensor, provenance of each leg as (node, leg))
        tensors: dict[int, Tensor] = {}
        legmaps: dict[int, list[tuple[Hashable, int]]] = {}
        owner: dict[Hashable, int] = {}
        for cid, (node, tensor) in enumerate(self.nodes.items()):
            tensors[cid] = tensor
            legmaps[cid] = [(node, leg) for leg in range(tensor.rank)]
            owner[node] = cid

        def contract_bond(bond: LegBinding) -> None:
            ca = owner[bond.node_a]
            cb = owner[bond.node_b]
            pa = legmaps[ca].index((bond.node_a, bond.leg_a))
            if ca == cb:
                pb = legmaps[ca].index((bond.node_b, bond.leg_b))
                merged = contract_pair(tensors[ca], (pa, pb), _TRACE_PAIR, (0, 1))
                keep = [
                    ref for k, ref in enumerate(legmaps[ca]) if k not in (pa, pb)
                ]
                tensors[ca] = merged
                legmaps[ca] = keep
                return
            pb = legmaps[cb].index((bond.node_b, bond.leg_b))
            merged = contract_pair(tensors[ca], (pa,), tensors[cb], (pb,))
            keep = [ref for k, ref in enumerate(legmaps[ca]) if k != pa]
            keep += [ref for k, ref in enumerate(legmaps[cb]) if k != pb]
            tensors[ca] = merged
            legmaps[ca] = keep
            del tensors[cb], legmaps[cb]
            for node, cid in owner.items():
                if cid == cb:
                    owner[node] = ca

        def result_rank(bond: LegBinding) -> int:
            ca = owner[bond.node_a]
            cb = owner[bond.node_b]
            if ca == cb:
                return tensors[ca].rank - 2
            return tensors[ca].rank + tensors[cb].rank - 2

        if order is not None:
            for idx in order:
                contract_bond(self.bonds[idx])
        else:
            # Lazy heap: stale rank estimates are re-pushed, ties break on
            # bond index, so the greedy order is deterministic.
            heap = [(result_rank(b), i) for i, b in enumerate(self.bonds)]
            heapq.heapify(heap)
            done: set[int] = set()
            while heap:
                est, idx = heapq.heappop(heap)
                if idx in done:
                    continue
                actual = result_rank(self.bonds[idx])
                if actual != est:
                    heapq.heappush(heap, (actual, idx))
                    continue
                contract_bond(self.bonds[idx])
                done.add(idx)

        # Outer-product the disconnected clusters in first-seen node order.
        result: Tensor | None = None
        result_legs: list[tuple[Hashable, int]] = []
        consumed: set[int] = set()
        for node in self.nodes:
            cid = owner[node]
            if cid in consumed:
                continue
            consumed.add(cid)
            if result is None:
                result = tensors[cid]
                result_legs = list(legmaps[cid])
            else:
                result = contract_pair(result, (), tensors[cid], ())
                result_legs += legmaps[cid]
        if result is None:
            return Tensor(0, (1,))

        perm = [self.open_legs.index(ref) for ref in result_legs]
        return permute_legs(result, perm)


def contract_network(net: TensorNetwork, order: Sequence[int] | None = None) -> Tensor:
    return net.contract(order=order)
