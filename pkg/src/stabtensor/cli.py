"""Command-line interface: verify, simulate, entropy, polarity.

Exit codes: 0 success, 1 verification failure, 2 input error.  Structured
output (`--format records`) is line-delimited with stable field order so
runs can be diffed byte-for-byte.
"""

from __future__ import annotations

import argparse
import os
import sys

from stabtensor import boolfn, oracles, relations
from stabtensor.circuits import CircuitParseError, circuit_state, parse_circuit
from stabtensor.generators import copy_tensor
from stabtensor.tensor import Tensor

ENV_TOL = "STABTENSOR_TOL"
DEFAULT_TOL = 1e-10

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


def _resolve_tol(arg_tol: float | None) -> float:
    if arg_tol is not None:
        return arg_tol
    env = os.environ.get(ENV_TOL)
    if env:
        try:
            return float(env)
        except ValueError:
            print(f"error: bad {ENV_TOL} value {env!r}", file=sys.stderr)
            raise SystemExit(EXIT_INPUT_ERROR) from None
    return DEFAULT_TOL


def _corrupted_copy_tensor() -> Tensor:
    # Test hook: one flipped entry must be caught by the copy laws.
    data = list(copy_tensor().data)
    data[0b010] = 1.0
    return Tensor(3, data)


def verification_reports(tol: float, inject_fault: bool = False):
    delta = _corrupted_copy_tensor() if inject_fault else None
    reports = [
        relations.verify_relation(rid, tol=tol, copy=delta)
        for rid in relations.RELATION_FAMILIES
    ]
    reports.append(relations.verify_xor_in_hadamard_basis(tol=tol))
    reports.append(relations.verify_xor_copies_plus_minus(tol=tol))
    reports.extend(relations.verify_clifford_recovery(tol=tol))
    for n in range(1, 5):
        reports.append(boolfn.verify_hadamard_column_indexing(n, tol=tol))
    reports.extend(relations.verify_cn_transcription(tol=tol))
    return reports


def _print_reports(reports, fmt: str) -> None:
    if fmt == "records":
        for rep in reports:
            print(rep.record())
        return
    width = max(len(r.relation_id) for r in reports)
    for rep in reports:
        status = rep.status.value
        if rep.expected_mismatch and not rep.holds:
            status += " (expected, documented)"
        lam = "-" if rep.scalar is None else f"{rep.scalar:.6g}"
        print(f"{rep.relation_id:<{width}}  {status:<32} "
              f"lambda={lam:<12} deviation={rep.max_deviation:.3e}")


def cmd_verify(args) -> int:
    tol = _resolve_tol(args.tol)
    reports = verification_reports(tol, inject_fault=args.selftest_fault)
    _print_reports(reports, args.format)
    bad = [r for r in reports if not r.holds and not r.expected_mismatch]
    if bad:
        print(f"{len(bad)} relation(s) failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_simulate(args) -> int:
    tol = _resolve_tol(args.tol)
    try:
        text = open(args.circuit, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        circuit = parse_circuit(text)
    except CircuitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    state = circuit_state(circuit)
    n = circuit.width
    if args.format == "records":
        print(f"state wires={n}")
        for k, amp in enumerate(state.data):
            print(f"amp index={k:0{n}b} re={amp.real!r} im={amp.imag!r}")
    else:
        print(f"output state on {n} wire(s):")
        for k, amp in enumerate(state.data):
            print(f"  |{k:0{n}b}>  {amp.real:+.10f}{amp.imag:+.10f}j")
    if not args.crosscheck:
        return EXIT_OK
    result = oracles.crosscheck_circuit(circuit, seed=args.seed)
    ok = result.ok(tol)
    if args.format == "records":
        print(f"crosscheck amp_delta={result.amplitude_delta!r} "
              f"scalar_magnitude={result.scalar_magnitude!r} "
              f"expectation_delta={result.expectation_delta!r} "
              f"paulis={result.paulis_checked} "
              f"status={'ok' if ok else 'disagree'}")
    else:
        print(f"crosscheck vs dense oracle: max amplitude delta "
              f"{result.amplitude_delta:.3e} (scalar magnitude "
              f"{result.scalar_magnitude:.6f})")
        print(f"crosscheck vs tableau oracle: max expectation delta "
              f"{result.expectation_delta:.3e} over {result.paulis_checked} "
              f"Pauli strings")
        print(f"crosscheck status: {'ok' if ok else 'DISAGREE'}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_entropy(args) -> int:
    try:
        text = open(args.table, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        table = boolfn.parse_truth_table(text)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    ds = boolfn.delta_entropy(table)
    gap = boolfn.output_entropy_gap(table)
    reversible = boolfn.is_reversible(table)
    hist = sorted(table.preimage_counts().items())
    if args.format == "records":
        print(f"bits={table.n}")
        print(f"delta_entropy={ds!r}")
        print(f"reversible={'yes' if reversible else 'no'}")
        print(f"output_entropy_gap={gap!r}")
        for value, count in hist:
            print(f"preimage value={value:0{table.n}b} count={count}")
    else:
        print(f"bits: {table.n}")
        print(f"delta entropy (input-indexed sum): {ds:.6f} bits")
        print(f"reversible (outputs form a permutation): "
              f"{'yes' if reversible else 'no'}")
        print(f"output entropy gap (zero iff reversible): {gap:.6f} bits")
        print("preimage counts:")
        for value, count in hist:
            print(f"  {value:0{table.n}b}: {count}")
    print("note: delta_entropy transcribes the input-indexed sum, which is "
          "zero on every permutation but not only on permutations; "
          "output_entropy_gap is the bijectivity witness")
    return EXIT_OK


def cmd_polarity(args) -> int:
    tol = _resolve_tol(args.tol)
    if not 1 <= args.n <= 6:
        print("error: --n must be in 1..6", file=sys.stderr)
        return EXIT_INPUT_ERROR
    forms = boolfn.linear_forms(args.n)
    if args.format == "records":
        for form in forms:
            vec = boolfn.polarity_vector(form)
            entries = ",".join(str(int(v.real)) for v in vec.data)
            print(f"form c={form.c} c0={form.c0} polarity={entries}")
    else:
        print(f"{len(forms)} linear forms on {args.n} bit(s):")
        for form in forms:
            vec = boolfn.polarity_vector(form)
            entries = " ".join(f"{int(v.real):+d}" for v in vec.data)
            print(f"  c={form.c}  ({entries})")
    report = boolfn.verify_hadamard_column_indexing(args.n, tol=tol)
    print(report.record())
    return EXIT_OK if report.holds else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabtensor",
        description="verify generator identities and simulate stabilizer "
        "circuits by tensor-network contraction",
    )
    parser.add_argument(
        "--format", choices=("human", "records"), default="human",
        help="human table or line-delimited records",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the full relation suite")
    p_verify.add_argument("--tol", type=float, default=None,
                          help=f"tolerance (default {ENV_TOL} or {DEFAULT_TOL})")
    p_verify.add_argument("--selftest-fault", action="store_true",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="contract a circuit file")
    p_sim.add_argument("circuit", help="circuit file (`wires N`, one op per line)")
    p_sim.add_argument("--crosscheck", action="store_true",
                       help="also compare against the dense and tableau oracles")
    p_sim.add_argument("--seed", type=int, default=0,
                       help="seed for the crosscheck Pauli sample")
    p_sim.add_argument("--tol", type=float, default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_ent = sub.add_parser("entropy", help="reversibility analysis of a truth table")
    p_ent.add_argument("table", help="truth-table file (`bits n` plus rows)")
    p_ent.set_defaults(func=cmd_entropy)

    p_pol = sub.add_parser("polarity", help="linear forms and Hadamard columns")
    p_pol.add_argument("--n", type=int, required=True, help="number of bits (1..6)")
    p_pol.add_argument("--tol", type=float, default=None)
    p_pol.set_defaults(func=cmd_polarity)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
