"""Bundled example netlists, one per circuit built in :mod:`symqubit.gates`.

The ``.sqc`` files under ``corpus/`` are generated from the builders by
:func:`write_corpus` and checked against them by the test suite.
"""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path
from typing import Callable

from . import gates
from .circuit import PortGraph
from .components import polarizing_beam_splitter
from .dsl import pretty_print
from .twophoton import symmetry_router_graph


def _pbs_pair() -> PortGraph:
    """One PBS per rail: H continues along the line, V leaves by the side port."""
    g = PortGraph("pbs_pair")
    for r in "ab":
        g.add_element(polarizing_beam_splitter(), f"pbs_{r}")
    for r in "ab":
        g.add_input((f"pbs_{r}", "l"))
    for port in ("r", "s", "t"):
        for r in "ab":
            g.add_output((f"pbs_{r}", port))
    return g


CORPUS: dict[str, Callable[[], PortGraph]] = {
    "cnot_sd": lambda: gates.build_cnot_SD().graph,
    "not_s": lambda: gates.build_not_S().graph,
    "not_d": lambda: gates.build_not_D().graph,
    "hadamard_s": lambda: gates.build_hadamard_S().graph,
    "pauli_s_x": lambda: gates.build_pauli_S("X").graph,
    "pauli_s_y": lambda: gates.build_pauli_S("Y").graph,
    "pauli_s_z": lambda: gates.build_pauli_S("Z").graph,
    "phase_s_pi_4": lambda: gates.build_phase_gate_S(math.pi / 4).graph,
    "pauli_d_x": lambda: gates.build_pauli_D("X").graph,
    "pauli_d_y": lambda: gates.build_pauli_D("Y").graph,
    "pauli_d_z": lambda: gates.build_pauli_D("Z").graph,
    "swap_sd": lambda: gates.build_swap_SD().graph,
    "swap_then_not": lambda: gates.build_swap_then_not().graph,
    "double_cnot": lambda: gates.build_double_cnot_circuit().graph,
    "symmetry_router": symmetry_router_graph,
    "pbs_pair": _pbs_pair,
    "toffoli": lambda: gates.build_toffoli().graph,
    "fredkin": lambda: gates.build_fredkin().graph,
    "programmable_toffoli": lambda: gates.build_programmable(math.pi, math.pi, 0.0, 0.0).graph,
    "programmable_flip_s": lambda: gates.build_programmable(math.pi, 0.0, 0.0, math.pi).graph,
    "programmable_flip_s_d": lambda: gates.build_programmable(math.pi, 0.0, math.pi, 0.0).graph,
    "segment": lambda: gates.build_segment(math.pi / 2, math.pi / 3).graph,
}


def corpus_dir() -> Path:
    return Path(str(resources.files("symqubit") / "corpus"))


def corpus_files() -> dict[str, Path]:
    return {p.stem: p for p in sorted(corpus_dir().glob("*.sqc"))}


def malformed_files() -> list[Path]:
    return sorted((corpus_dir() / "malformed").glob("*.sqc"))


def write_corpus(directory: Path | None = None) -> list[Path]:
    directory = Path(directory) if directory is not None else corpus_dir()
    written = []
    for name, build in CORPUS.items():
        path = directory / f"{name}.sqc"
        path.write_text(pretty_print(build()))
        written.append(path)
    return written
