"""Command-line interface: ``symqubit <command> ...``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .circuit import CircuitError, compile_graph
from .dsl import boundary, check_wiring, gate_circuit, parse, parse_number, pi_multiple
from .modespace import LOGICAL_LABELS, LOGICAL_LABELS_BLIND

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOL_ENV = "SYMQUBIT_TOL"
DEFAULT_TOL = 1e-8


class UsageError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} is not a number: {raw!r}") from None


def matrix_json(u: np.ndarray, rows: Sequence[str], cols: Sequence[str]) -> dict:
    """Row-major [re, im] pairs plus basis labels."""
    return {
        "rows": list(rows),
        "cols": list(cols),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(u)],
    }


def format_matrix(u: np.ndarray, rows: Sequence[str], cols: Sequence[str]) -> str:
    def cell(z: complex) -> str:
        z = complex(z)
        re, im = round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0
        if im == 0.0:
            return f"{re:g}"
        if re == 0.0:
            return f"{im:g}i"
        return f"{re:g}{im:+g}i"

    cells = [[cell(z) for z in row] for row in np.asarray(u)]
    width = max([len(c) for r in cells for c in r] + [len(c) for c in cols])
    lw = max(len(r) for r in rows)
    out = [" " * lw + "  " + " ".join(c.rjust(width) for c in cols)]
    for label, r in zip(rows, cells):
        out.append(label.ljust(lw) + "  " + " ".join(c.rjust(width) for c in r))
    return "\n".join(out)


class Output:
    def __init__(self, as_json: bool, quiet: bool):
        self.as_json = as_json
        self.quiet = quiet

    def emit(self, record: dict, text: str) -> None:
        if self.as_json:
            print(json.dumps({"schema_version": SCHEMA_VERSION, **record}, indent=2))
        elif not self.quiet:
            print(text)


# -- file loading -----------------------------------------------------------

def load_graph(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    res = parse(data)
    diags = list(res.diagnostics)
    if res.ok:
        diags.extend(check_wiring(res.graph))
    if diags:
        raise UsageError("\n".join(f"{path}:{d.line}:{d.column}: {d.message}" for d in diags))
    return res.graph


def compile_file(path: str):
    graph = load_graph(path)
    try:
        return graph, compile_graph(graph)
    except CircuitError as exc:
        raise UsageError(f"{path}: {exc}") from None


def parse_phases(text: str, n: Optional[int] = None) -> tuple[float, ...]:
    try:
        values = tuple(parse_number(x.strip()) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is not None and len(values) != n:
        raise UsageError(f"expected {n} comma-separated phases, got {len(values)}")
    return values


# -- commands ---------------------------------------------------------------

def cmd_compile(args, out: Output) -> int:
    graph, c = compile_file(args.file)
    pairs = boundary(graph)
    record = {
        "command": "compile",
        "circuit": c.name,
        "elements": len(graph.elements),
        "polarized": c.polarized,
        "feed_forward": c.feed_forward,
        "input_modes": list(c.input_modes),
        "output_modes": list(c.output_modes),
        "boundary": None if pairs is None else {
            "left": [".".join(r) for r in pairs[0]],
            "right": [".".join(r) for r in pairs[1]],
        },
    }
    lines = [
        f"circuit {c.name}: {len(graph.elements)} elements, "
        f"{len(c.input_modes)} in x {len(c.output_modes)} out, {c.feed_forward}",
        "inputs:  " + " ".join(c.input_modes),
        "outputs: " + " ".join(c.output_modes),
    ]
    out.emit(record, "\n".join(lines))
    return EXIT_OK


def _symmetry_labels(polarized: bool) -> list[str]:
    pols = (":H", ":V") if polarized else ("",)
    return [f"{s}{d}{p}" for s in "SA" for d in "RL" for p in pols]


def cmd_unitary(args, out: Output) -> int:
    from .gates import LogicalLeakError, extract_logical_unitary

    graph, c = compile_file(args.file)
    if args.basis == "rail":
        u, rows, cols = c.unitary, c.output_modes, c.input_modes
    else:
        if boundary(graph) is None:
            raise UsageError(f"{args.file}: basis '{args.basis}' needs a dual-rail boundary")
        gate = gate_circuit(graph)
        try:
            if args.basis == "logical":
                u = extract_logical_unitary(gate)
                rows = cols = list(LOGICAL_LABELS if gate.polarized else LOGICAL_LABELS_BLIND)
            else:
                npol = 2 if gate.polarized else 1
                t = np.kron(np.array([[1, 1], [1, -1]]) / math.sqrt(2.0), np.eye(2 * npol))
                u = t @ gate.unitary @ t
                rows = cols = _symmetry_labels(gate.polarized)
        except LogicalLeakError as exc:
            out.emit({"command": "unitary", "error": str(exc)}, str(exc))
            return EXIT_FAIL
    record = {"command": "unitary", "circuit": c.name, "basis": args.basis,
              "matrix": matrix_json(u, rows, cols)}
    out.emit(record, format_matrix(u, rows, cols))
    return EXIT_OK


def cmd_truthtable(args, out: Output) -> int:
    from .gates import LogicalLeakError, NotClassicalError, truth_table

    graph, _ = compile_file(args.file)
    if boundary(graph) is None:
        raise UsageError(f"{args.file}: truth tables need a dual-rail boundary")
    try:
        table = truth_table(gate_circuit(graph), tol=args.tol)
    except (NotClassicalError, LogicalLeakError):
        out.emit({"command": "truthtable", "classical": False}, "not classical")
        return EXIT_FAIL
    rows = [
        {"in": list(k), "out": list(v[0]), "phase": float(np.angle(v[1]))}
        for k, v in table.rows.items()
    ]
    q = "".join(table.qubits)
    lines = [f"{q} -> {q}"] + [
        "".join(map(str, r["in"])) + " -> " + "".join(map(str, r["out"]))
        + (f"  (phase {r['phase']:+.6g})" if abs(r["phase"]) > args.tol else "")
        for r in rows
    ]
    out.emit({"command": "truthtable", "classical": True, "qubits": list(table.qubits),
              "rows": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    from .gates import (GATES, PRINTED_PROGRAMMABLE, compare_printed,
                        extract_logical_unitary, verify_gate)

    if args.gate not in GATES:
        raise UsageError(f"unknown gate '{args.gate}'; choose from {', '.join(GATES)}")
    spec = GATES[args.gate]
    phases = parse_phases(args.phases, spec.n_phases) if args.phases else ()
    if len(phases) != spec.n_phases:
        raise UsageError(f"gate '{args.gate}' takes {spec.n_phases} phase(s)")
    verdict = verify_gate(args.gate, phases, args.tol)
    gate = spec.build(*phases)
    u = extract_logical_unitary(gate, spec.fixed)
    n = u.shape[0]
    labels = [format(k, f"0{len(spec.qubits)}b") for k in range(n)]
    record = {"command": "verify", **verdict, "phases": list(phases),
              "matrix": matrix_json(u, labels, labels)}
    for key, (ph, printed) in PRINTED_PROGRAMMABLE.items():
        if args.gate == "programmable" and phases == ph:
            cmp = compare_printed(u, printed, args.tol)
            record["printed"] = {"case": key, "exact": cmp.exact, "max_error": cmp.max_error}
    text = (f"{args.gate}: {'PASS' if verdict['pass'] else 'FAIL'} "
            f"(max error {verdict['max_error']:.3g})\n" + format_matrix(u, labels, labels))
    out.emit(record, text)
    return EXIT_OK if verdict["pass"] else EXIT_FAIL


def _photons_label(photons) -> str:
    sd = lambda s, d: "SA"[s] + "RL"[d]  # noqa: E731
    return f"{sd(*photons[0])},{sd(*photons[1])}"


def cmd_twophoton(args, out: Output) -> int:
    from .twophoton import grover_two_photon_table, hom_separation

    both = not (args.hom or args.cnot_table)
    record, lines = {"command": "twophoton"}, []
    if args.cnot_table or both:
        table, products = grover_two_photon_table()
        record["products"] = [
            {"in": _photons_label(r.photons_in), "out": _photons_label(r.photons_out),
             "totals_in": list(r.totals_in), "totals_out": list(r.totals_out),
             "phase": [float(r.phase.real), float(r.phase.imag)]}
            for r in products
        ]
        record["cnot_table"] = [{"in": list(k), "out": list(v[0])} for k, v in table.rows.items()]
        lines.append("photons    S D -> S D   photons")
        for r in products:
            lines.append(f"{_photons_label(r.photons_in)}  {r.totals_in[0]} {r.totals_in[1]} -> "
                         f"{r.totals_out[0]} {r.totals_out[1]}   {_photons_label(r.photons_out)}")
    if args.hom or both:
        record["hom"] = []
        for s1 in (0, 1):
            for s2 in (0, 1):
                h = hom_separation(s1, s2)
                record["hom"].append({"s": [s1, s2], "p_coincidence": h.p_coincidence,
                                      "p_bunched_e": h.p_bunched_e,
                                      "p_bunched_f": h.p_bunched_f})
                lines.append(f"HOM {'SA'[s1]}{'SA'[s2]}: coincidence {h.p_coincidence:.6f}  "
                             f"ee {h.p_bunched_e:.6f}  ff {h.p_bunched_f:.6f}")
    out.emit(record, "\n".join(lines))
    return EXIT_OK


def _closedform_check(phases: tuple[float, ...]) -> tuple[bool, float]:
    from .closedform import PhaseQuad, programmable_closed_form
    from .gates import GATE_TOL, build_programmable, equal_up_to_global_phase, \
        extract_logical_unitary

    u = extract_logical_unitary(build_programmable(*phases))
    ref = programmable_closed_form(PhaseQuad(*phases))
    ok, theta = equal_up_to_global_phase(u, ref, GATE_TOL)
    return ok, float(np.max(np.abs(u - np.exp(1j * theta) * ref)))


def cmd_closedform(args, out: Output) -> int:
    from .closedform import PhaseQuad, programmable_closed_form

    phases = parse_phases(args.phases, 4)
    u = programmable_closed_form(PhaseQuad(*phases))
    _, err = _closedform_check(phases)
    ok = err <= args.tol
    labels = list(LOGICAL_LABELS)
    record = {"command": "closedform", "phases": list(phases), "matches_circuit": ok,
              "max_error": err, "matrix": matrix_json(u, labels, labels)}
    text = (format_matrix(u, labels, labels)
            + f"\ncircuit agreement: {'yes' if ok else 'NO'} (max error {err:.3g})")
    out.emit(record, text)
    return EXIT_OK if ok else EXIT_FAIL


def _sweep_point(point: tuple[int, ...], n: int) -> tuple[tuple[int, ...], bool, float]:
    phases = tuple(pi_multiple(2 * k, n) for k in point)
    ok, err = _closedform_check(phases)
    return point, ok, err


def sweep_grid(n: int, workers: Optional[int] = None) -> list[tuple[tuple[int, ...], bool, float]]:
    """Closed form vs compiled device over the n**4 grid of phases 2*pi*k/n.

    Results come back in grid order regardless of the worker count.
    """
    points = [(a, b, c, d) for a in range(n) for b in range(n)
              for c in range(n) for d in range(n)]
    if workers == 1 or len(points) < 32:
        return [_sweep_point(p, n) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_point, points, [n] * len(points),
                             chunksize=max(1, len(points) // 64)))


def cmd_sweep(args, out: Output) -> int:
    if args.gate != "programmable":
        raise UsageError("sweep supports only --gate programmable")
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    results = sweep_grid(args.grid, args.workers)
    failures = [r for r in results if not (r[1] and r[2] <= args.tol)]
    worst = max(r[2] for r in results)
    record = {
        "command": "sweep", "gate": args.gate, "grid": args.grid, "points": len(results),
        "failures": len(failures), "max_error": worst,
        "results": [{"index": list(p), "pass": bool(ok and e <= args.tol), "max_error": e}
                    for p, ok, e in results],
    }
    text = (f"{len(results)} points, {len(failures)} failures, max error {worst:.3g}")
    out.emit(record, text)
    return EXIT_OK if not failures else EXIT_FAIL


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help=f"comparison tolerance (default {DEFAULT_TOL:g}, env {TOL_ENV})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress text output; rely on the exit code")

    p = argparse.ArgumentParser(prog="symqubit", parents=[common],
                                description="Symmetry-qubit optical circuit tools.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("compile", parents=[common], help="validate a netlist, list its modes")
    c.add_argument("file")
    c.set_defaults(func=cmd_compile)

    u = sub.add_parser("unitary", parents=[common], help="print the total matrix")
    u.add_argument("file")
    u.add_argument("--basis", choices=("rail", "symmetry", "logical"), default="rail")
    u.set_defaults(func=cmd_unitary)

    t = sub.add_parser("truthtable", parents=[common], help="classical action on logical states")
    t.add_argument("file")
    t.set_defaults(func=cmd_truthtable)

    v = sub.add_parser("verify", parents=[common], help="check a built-in gate")
    v.add_argument("--gate", required=True)
    v.add_argument("--phases", help="comma-separated, e.g. pi,pi,0,0")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("twophoton", parents=[common], help="two-photon CNOT table and HOM")
    g = w.add_mutually_exclusive_group()
    g.add_argument("--hom", action="store_true")
    g.add_argument("--cnot-table", action="store_true")
    w.set_defaults(func=cmd_twophoton)

    f = sub.add_parser("closedform", parents=[common], help="analytic programmable-gate matrix")
    f.add_argument("--phases", required=True, help="phi1,phi2,phi3,phi4")
    f.set_defaults(func=cmd_closedform)

    s = sub.add_parser("sweep", parents=[common], help="closed form vs circuit on a phase grid")
    s.add_argument("--gate", required=True)
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if not hasattr(args, "tol"):
            args.tol = default_tol()
        out = Output(getattr(args, "json", False), getattr(args, "quiet", False))
        return args.func(args, out)
    except UsageError as exc:
        for line in str(exc).splitlines():
            print(f"error: {line}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
