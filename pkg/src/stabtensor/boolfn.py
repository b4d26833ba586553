"""Reversibility analysis of n-bit truth tables and linear Boolean forms.

`delta_entropy` transcribes the entropy difference as an input-indexed
sum: each input contributes the probability mass of its own output value
under the push-forward of the uniform distribution.  This literal form
vanishes on every permutation but also on some non-bijective tables (and
can go negative for n >= 3), so `output_entropy_gap` is provided as the
separately named diagnostic that is zero exactly on bijections.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from stabtensor import generators as gen
from stabtensor.relations import RelationReport, compare
from stabtensor.tensor import DEFAULT_TOL, Tensor, outer, permute_legs, tensor_from_fn


@dataclass(frozen=True)
class TruthTable:
    """Total function on n-bit strings; outputs[i] is g(y_i) as an integer,
    with inputs enumerated in lexicographic order (y_0 = 00...0)."""

    n: int
    outputs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("truth table needs n >= 1")
        if len(self.outputs) != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} outputs, got {len(self.outputs)}"
            )
        for v in self.outputs:
            if not 0 <= v < 1 << self.n:
                raise ValueError(f"output {v} is not an {self.n}-bit value")

    def preimage_counts(self) -> Counter:
        return Counter(self.outputs)


def parse_truth_table(text: str) -> TruthTable:
    """Parse the `bits n` header plus 2**n `input output` rows.

    Rows must appear in strict lexicographic input order.
    """
    n: int | None = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "bits" or len(fields) != 2 or not fields[1].isdigit():
                raise ValueError(f"line {lineno}: expected `bits n` header")
            n = int(fields[1])
            if n < 1:
                raise ValueError(f"line {lineno}: bits must be >= 1")
            continue
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected `input_bits output_bits`")
        inp, out = fields
        if len(inp) != n or set(inp) - {"0", "1"}:
            raise ValueError(f"line {lineno}: bad input bits {inp!r}")
        if len(out) != n or set(out) - {"0", "1"}:
            raise ValueError(f"line {lineno}: bad output bits {out!r}")
        if int(inp, 2) != len(rows):
            raise ValueError(
                f"line {lineno}: inputs must be in lexicographic order "
                f"(expected {len(rows):0{n}b}, got {inp})"
            )
        rows.append(int(out, 2))
    if n is None:
        raise ValueError("missing `bits n` header")
    if len(rows) != 1 << n:
        raise ValueError(f"expected {1 << n} rows, got {len(rows)}")
    return TruthTable(n, tuple(rows))


def format_truth_table(table: TruthTable) -> str:
    lines = [f"bits {table.n}"]
    for i, v in enumerate(table.outputs):
        lines.append(f"{i:0{table.n}b} {v:0{table.n}b}")
    return "\n".join(lines) + "\n"


def delta_entropy(table: TruthTable) -> float:
    """Input-indexed entropy difference, in bits.

    First sum: over inputs i, P{g(y_i)} log2 P{g(y_i)} with P the
    push-forward mass (preimage count * 2**-n).  Second sum: the same
    expression for the uniform input distribution, which equals -n.
    """
    n = table.n
    size = 1 << n
    counts = table.preimage_counts()
    first = 0.0
    for v in table.outputs:
        p = counts[v] / size
        first += p * math.log2(p)
    second = 0.0
    p_in = 1.0 / size
    for _ in range(size):
        second += p_in * math.log2(p_in)
    return first - second


def output_entropy_gap(table: TruthTable) -> float:
    """Diagnostic: n minus the Shannon entropy of the output distribution.

    Non-negative, and zero exactly when the table is a bijection.  Sums
    over distinct output values, with 0*log(0) taken as 0.
    """
    n = table.n
    size = 1 << n
    gap = float(n)
    for count in table.preimage_counts().values():
        p = count / size
        gap += p * math.log2(p)
    return gap


def is_reversible(table: TruthTable) -> bool:
    return sorted(table.outputs) == list(range(1 << table.n))


@dataclass(frozen=True)
class BooleanLinearForm:
    """c0 xor (c . x mod 2); c0 = 1 makes the form affine."""

    c: str
    c0: int = 0

    def __post_init__(self):
        if set(self.c) - {"0", "1"} or not self.c:
            raise ValueError(f"coefficients {self.c!r} must be a nonempty bit string")
        if self.c0 not in (0, 1):
            raise ValueError(f"c0 must be 0 or 1, got {self.c0}")

    @property
    def n(self) -> int:
        return len(self.c)


def eval_linear(form: BooleanLinearForm, x: str) -> int:
    if len(x) != form.n or set(x) - {"0", "1"}:
        raise ValueError(f"input {x!r} does not match {form.n} coefficients")
    acc = form.c0
    for ci, xi in zip(form.c, x):
        acc ^= int(ci) & int(xi)
    return acc


def polarity_vector(form: BooleanLinearForm) -> Tensor:
    """Rank-n tensor with entry (-1)**f(x) at each point x."""
    n = form.n
    return tensor_from_fn(
        n, lambda *bits: (-1) ** eval_linear(form, "".join(map(str, bits)))
    )


def hadamard_power(n: int) -> Tensor:
    """n-fold tensor power of the Hadamard matrix, legs (rows..., cols...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h = gen.hadamard()
    result = h
    for _ in range(n - 1):
        result = outer(result, h)
    # (r1, c1, r2, c2, ...) -> (r1..rn, c1..cn)
    perm = []
    for k in range(result.rank):
        pair, which = divmod(k, 2)
        perm.append(pair if which == 0 else n + pair)
    return permute_legs(result, perm)


def verify_hadamard_column_indexing(n: int, tol: float = DEFAULT_TOL) -> RelationReport:
    """Columns of the n-fold Hadamard power against the 2**n linear forms.

    Column c must equal 2**(-n/2) times the polarity vector of the linear
    form with coefficients c.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"n must be in 1..6, got {n}")
    mat = hadamard_power(n)
    scale = 2.0 ** (-n / 2.0)
    size = 1 << n
    worst = None
    for col in range(size):
        form = BooleanLinearForm(f"{col:0{n}b}", 0)
        expected = polarity_vector(form).scale(scale)
        actual = Tensor(n, (mat.data[(row << n) | col] for row in range(size)))
        report = compare(
            f"hadamard-column-indexing-n{n}", actual, expected,
            f"column {col:0{n}b} of H^{n}",
            "scaled polarity vector",
            tol,
        )
        if worst is None or report.max_deviation > worst.max_deviation or not report.holds:
            worst = report
        if not report.holds:
            break
    assert worst is not None
    return worst


def linear_forms(n: int) -> list[BooleanLinearForm]:
    """All 2**n linear (c0 = 0) forms on n bits."""
    return [BooleanLinearForm(f"{c:0{n}b}", 0) for c in range(1 << n)]
