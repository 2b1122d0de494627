"""Command-line front end.

Subcommands: build, compare, verify, sweep, census, export. Output is
deterministic for a fixed invocation (including --seed, which defaults to a
constant); json/csv bytes are stable across runs. Files are written to a
temporary sibling and renamed into place so an error never leaves a partial
file behind.

Exit codes: 0 success, 1 verification mismatch, 2 invalid operands or ranges,
3 backend/resource errors.
"""
from __future__ import annotations

import json
import os
import sys
import tempfile
import time

import click

from . import qasm
from .circuit import circuit_to_json
from .comparator import (
    BuilderVariant,
    Operands,
    build_gqbsc,
    compare,
    encode_operands,
    soundness_check_exhaustive,
    soundness_check_random,
)
from .errors import OperandError, QbscError
from .resources import (
    CSV_HEADER,
    Case,
    Method,
    gate_growth,
    measured_report,
    sweep,
    sweep_notes,
)

DEFAULT_SEED = 1234
_SWEEP_GRID = (1, 80, 160, 240, 320, 400, 480, 560, 640, 720, 800, 880, 960, 1000)
_CENSUS_GRID = (1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100)

EXIT_MISMATCH = 1
EXIT_BAD_INPUT = 2
EXIT_BACKEND = 3


def _parse_operand(text: str):
    if text.startswith("bin:"):
        return text[len("bin:"):]
    try:
        return int(text, 10)
    except ValueError:
        raise click.BadParameter(f"operand must be decimal or bin:<bits>, got {text!r}")


def _emit(payload: str, out: str | None):
    """Write atomically to --out, or to stdout."""
    if out is None:
        click.echo(payload, nl=False)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qbsc-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows_payload(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    header = ",".join(rows[0].keys()) if rows else CSV_HEADER
    lines = [header]
    for row in rows:
        lines.append(",".join(str(v) for v in row.values()))
    return "\n".join(lines) + "\n"


variant_option = click.option(
    "--variant", type=click.Choice([v.value for v in BuilderVariant]),
    default=BuilderVariant.FIGURE.value, show_default=True)
backend_option = click.option(
    "--backend", type=click.Choice(["auto", "dense", "classical"]),
    default="auto", show_default=True)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                          help="Write output to this file (atomic).")
seed_option = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)


@click.group()
def main():
    """Bit-string comparator toolkit: build, run, verify, and cost circuits."""


@main.command("compare")
@click.option("--a", "a_text", required=True, help="Decimal or bin:<bits>.")
@click.option("--b", "b_text", required=True, help="Decimal or bin:<bits>.")
@variant_option
@backend_option
@seed_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@out_option
def cmd_compare(a_text, b_text, variant, backend, seed, fmt, out):
    """Compare two operands and report the class, flags, and resources."""
    try:
        a, b = _parse_operand(a_text), _parse_operand(b_text)
        outcome = compare(a, b, backend=backend, variant=BuilderVariant(variant), seed=seed)
        ops = encode_operands(a, b)
        # resource numbers refer to the value-independent body, executed with
        # the operands as the initial state (prep gates excluded throughout)
        body = build_gqbsc(Operands((0,) * ops.n, (0,) * ops.n), BuilderVariant(variant))
        measured = measured_report(body, ops)
    except OperandError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    except QbscError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    resources = {
        "qubits": measured.qubits,
        "width": measured.width_total,
        "ancilla": 2,
        "static_cost": measured.static_cost,
        "executed_cost": measured.executed_cost,
        "structural_delay": measured.structural_delay,
    }
    if fmt == "json":
        payload = json.dumps({
            "class": outcome.comparison.value,
            "r0": outcome.r0,
            "r1": outcome.r1,
            "n": outcome.n,
            "backend": outcome.backend,
            "variant": outcome.variant.value,
            "resources": resources,
        }, indent=2, sort_keys=True) + "\n"
    else:
        lines = [
            f"class: {outcome.comparison.value}",
            f"r0: {outcome.r0}",
            f"r1: {outcome.r1}",
            f"n: {outcome.n}",
            f"backend: {outcome.backend}",
            f"variant: {outcome.variant.value}",
        ] + [f"{k}: {v}" for k, v in resources.items()]
        payload = "\n".join(lines) + "\n"
    _emit(payload, out)


@main.command("build")
@click.option("--a", "a_text", required=True)
@click.option("--b", "b_text", required=True)
@variant_option
@click.option("--format", "--emit", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@out_option
def cmd_build(a_text, b_text, variant, fmt, out):
    """Build the comparator circuit and print a summary or its JSON form."""
    try:
        ops = encode_operands(_parse_operand(a_text), _parse_operand(b_text))
        circuit = build_gqbsc(ops, BuilderVariant(variant))
    except OperandError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    if fmt == "json":
        payload = json.dumps(circuit_to_json(circuit), indent=2, sort_keys=True) + "\n"
    else:
        measured = measured_report(circuit)
        payload = "\n".join([
            f"n: {ops.n}",
            f"qubits: {circuit.num_qubits}",
            f"clbits: {circuit.num_clbits}",
            f"instructions: {len(circuit.instructions)}",
            f"x: {measured.census.x}",
            f"ccx: {measured.census.ccx}",
            f"blocks_1bc: {measured.census.block_count_1bc}",
            f"measures: {measured.census.measure_count}",
            f"static_cost: {measured.static_cost}",
            f"structural_delay: {measured.structural_delay}",
        ]) + "\n"
    _emit(payload, out)


@main.command("export")
@click.option("--a", "a_text", required=True)
@click.option("--b", "b_text", required=True)
@variant_option
@out_option
def cmd_export(a_text, b_text, variant, out):
    """Serialize the comparator circuit to the textual subset."""
    try:
        ops = encode_operands(_parse_operand(a_text), _parse_operand(b_text))
        circuit = build_gqbsc(ops, BuilderVariant(variant))
        payload = qasm.export(circuit)
    except OperandError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    except QbscError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    _emit(payload, out)


def _random_widths(exhaustive_limit: int, max_bits: int) -> list[int]:
    """Doubling ladder of widths above the exhaustive range, ending at the max."""
    widths = []
    w = exhaustive_limit + 1
    while w < max_bits:
        widths.append(w)
        w *= 2
    if max_bits > exhaustive_limit:
        widths.append(max_bits)
    return widths


@main.command("verify")
@click.option("--max-bits", type=int, default=1000, show_default=True)
@click.option("--samples", type=int, default=100, show_default=True,
              help="Random pairs per sampled width beyond the exhaustive threshold.")
@click.option("--exhaustive-limit", type=int, default=8, show_default=True,
              help="Widths up to this are checked over all 4^n pairs.")
@click.option("--variant", type=click.Choice(["figure", "algorithmic", "both"]),
              default="figure", show_default=True)
@backend_option
@seed_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@out_option
def cmd_verify(max_bits, samples, exhaustive_limit, variant, backend, seed, fmt, out):
    """Check circuit outcomes against integer comparison over many pairs.

    Every width up to --exhaustive-limit is swept over all 4^n operand pairs;
    beyond that, seeded random pairs are drawn at a doubling ladder of widths
    ending at --max-bits.
    """
    if max_bits < 1 or samples < 0 or exhaustive_limit < 0:
        click.echo("error: widths and budgets must be positive", err=True)
        sys.exit(EXIT_BAD_INPUT)
    variants = ([BuilderVariant.FIGURE, BuilderVariant.ALGORITHMIC]
                if variant == "both" else [BuilderVariant(variant)])
    backend = "classical" if backend == "auto" else backend
    started = time.monotonic()
    per_n = []
    total_pairs = total_mismatches = 0
    try:
        for v in variants:
            widths = [(n, True) for n in range(1, min(max_bits, exhaustive_limit) + 1)]
            if samples > 0:
                widths += [(n, False) for n in _random_widths(exhaustive_limit, max_bits)]
            for n, exhaustive in widths:
                if exhaustive:
                    pairs, bad = soundness_check_exhaustive(n, v, backend)
                else:
                    pairs, bad = soundness_check_random(n, samples, seed, v, backend)
                per_n.append({"variant": v.value, "n": n, "pairs": pairs, "mismatches": bad})
                total_pairs += pairs
                total_mismatches += bad
    except QbscError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    elapsed = time.monotonic() - started
    if fmt == "json":
        payload = json.dumps({
            "pairs": total_pairs,
            "mismatches": total_mismatches,
            "per_n": per_n,
        }, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"variant={row['variant']} n={row['n']}: {row['pairs']} pairs,"
                 f" {row['mismatches']} mismatches" for row in per_n]
        lines.append(f"total: {total_pairs} pairs, {total_mismatches} mismatches"
                     f" ({elapsed:.2f}s)")
        payload = "\n".join(lines) + "\n"
    _emit(payload, out)
    if total_mismatches:
        sys.exit(EXIT_MISMATCH)


@main.command("sweep")
@click.option("--metric", type=click.Choice(["ancilla", "cost", "delay"]), required=True)
@click.option("--n", "n_values", type=int, multiple=True,
              help="Width(s); repeatable. Defaults to the standard grid.")
@click.option("--method", "methods", multiple=True,
              help="Method name(s); defaults to all seven.")
@click.option("--case", type=click.Choice(["equal", "unequal", "both"]), default="both",
              show_default=True, help="Cost/delay case for the Proposed method.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@out_option
def cmd_sweep(metric, n_values, methods, case, fmt, out):
    """Emit closed-form resource values as CSV or JSON rows."""
    ns = list(n_values) if n_values else list(_SWEEP_GRID)
    if any(n < 1 for n in ns):
        click.echo("error: widths must be >= 1", err=True)
        sys.exit(EXIT_BAD_INPUT)
    chosen_case = {"equal": Case.EQUAL, "unequal": Case.UNEQUAL, "both": None}[case]
    try:
        rows = sweep(list(methods) or None, ns, metric, chosen_case)
    except QbscError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    for note in sweep_notes(rows):
        click.echo(note, err=True)
    payload = _rows_payload(
        [{"method": r.method, "n": r.n, "case": r.case, "metric": r.metric,
          "value": r.value} for r in rows], fmt)
    _emit(payload, out)


@main.command("census")
@click.option("--n", "n_values", type=int, multiple=True,
              help="Width(s); repeatable. Defaults to the growth grid.")
@variant_option
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@out_option
def cmd_census(n_values, variant, fmt, out):
    """Gate census of the built comparator body at each width."""
    ns = list(n_values) if n_values else list(_CENSUS_GRID)
    if any(n < 1 for n in ns):
        click.echo("error: widths must be >= 1", err=True)
        sys.exit(EXIT_BAD_INPUT)
    growth = gate_growth(ns, BuilderVariant(variant))
    rows = []
    for g in growth:
        for metric, value in (("x", g.x_gates), ("ccx", g.ccx_gates),
                              ("1bc", g.blocks_1bc), ("block_measures", g.block_measures),
                              ("total_measures", g.total_measures), ("qubits", g.qubits),
                              ("width", g.width)):
            rows.append({"method": Method.PROPOSED.value, "n": g.n, "case": "-",
                         "metric": metric, "value": value})
    _emit(_rows_payload(rows, fmt), out)


if __name__ == "__main__":
    main()
