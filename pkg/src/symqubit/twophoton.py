"""Two-photon behaviour: distributed-qubit CNOT, HOM sorting, comparator reading."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circuit import PortGraph, compile_graph, CompiledCircuit
from .components import beam_splitter
from .gates import GateCircuit, TruthTable, build_cnot_SD, build_swap_SD
from .modespace import ATOL, SQRT1_2
from .photon_state import (
    TwoPhotonState,
    SinglePhotonState,
    evolve_two_photon,
    from_logical,
    to_logical,
    total_logical_bits,
)


class IndeterminateTotalsError(RuntimeError):
    pass


@dataclass(frozen=True)
class HomOutcome:
    p_coincidence: float
    p_bunched_e: float
    p_bunched_f: float

    def total(self) -> float:
        return self.p_coincidence + self.p_bunched_e + self.p_bunched_f


@dataclass(frozen=True)
class ProductRow:
    photons_in: tuple[tuple[int, int], tuple[int, int]]  # per-photon (S, D)
    totals_in: tuple[int, int]
    totals_out: tuple[int, int]
    photons_out: tuple[tuple[int, int], tuple[int, int]]
    phase: complex


def _single_outcome(gate: GateCircuit, s: int, d: int) -> tuple[tuple[int, int], complex]:
    out = gate.apply(from_logical(None, s, d, gate.wire))
    amps = to_logical(out).amplitudes
    k = int(np.argmax(np.abs(amps)))
    return ((k >> 1) & 1, k & 1), complex(amps[k])


def product_table(gate: GateCircuit) -> list[ProductRow]:
    """Evolve all 16 ordered products {S,A}x{R,L} per photon through ``gate``."""
    rows = []
    for (s1, d1), (s2, d2) in itertools.product(itertools.product((0, 1), repeat=2), repeat=2):
        state = TwoPhotonState.product(from_logical(None, s1, d1, gate.wire),
                                       from_logical(None, s2, d2, gate.wire))
        before = total_logical_bits(state)
        after_state = evolve_two_photon(gate, state)
        after = total_logical_bits(after_state)
        if not after.determinate:
            raise IndeterminateTotalsError(
                f"product ({s1}{d1}, {s2}{d2}) gave mixed totals {after.weights}"
            )
        # phase: overlap of the output with the product of the predicted single-photon images
        b1, _ = _single_outcome(gate, s1, d1)
        b2, _ = _single_outcome(gate, s2, d2)
        ideal = TwoPhotonState.product(from_logical(None, *b1, gate.wire),
                                       from_logical(None, *b2, gate.wire))
        overlap = 2.0 * np.vdot(ideal.matrix, after_state.matrix)
        rows.append(ProductRow(((s1, d1), (s2, d2)), before.bits, after.bits, (b1, b2),
                               complex(overlap)))
    return rows


def grover_two_photon_table() -> tuple[TruthTable, list[ProductRow]]:
    """(S_total, D_total) truth table of the Grover four-port over two photons.

    Raises if two products with equal input totals disagree on the output.
    """
    rows = product_table(build_cnot_SD())
    table = {}
    for r in rows:
        prev = table.get(r.totals_in)
        if prev is not None and prev[0] != r.totals_out:
            raise IndeterminateTotalsError(
                f"inputs with totals {r.totals_in} map to both {prev[0]} and {r.totals_out}"
            )
        table.setdefault(r.totals_in, (r.totals_out, r.phase))
    return TruthTable(("S", "D"), dict(sorted(table.items()))), rows


def _splitter() -> CompiledCircuit:
    g = PortGraph("hom").add_element(beam_splitter("e"), "bs")
    g.add_input(("bs", "c")).add_input(("bs", "d"))
    g.add_output(("bs", "e")).add_output(("bs", "f"))
    return compile_graph(g)


def hom_separation(s1: int, s2: int) -> HomOutcome:
    """Two right-moving photons with symmetries s1, s2 on one dual-rail pair
    meet the first beam splitter; returns the e/f detection statistics."""
    bs = _splitter()
    vecs = {0: np.array([SQRT1_2, SQRT1_2]), 1: np.array([SQRT1_2, -SQRT1_2])}
    state = TwoPhotonState.product(SinglePhotonState(vecs[s1], bs.input_modes),
                                   SinglePhotonState(vecs[s2], bs.input_modes))
    m = evolve_two_photon(bs, state).matrix
    return HomOutcome(
        p_coincidence=float(4.0 * abs(m[0, 1]) ** 2),
        p_bunched_e=float(2.0 * abs(m[0, 0]) ** 2),
        p_bunched_f=float(2.0 * abs(m[1, 1]) ** 2),
    )


def symmetry_router_graph() -> PortGraph:
    """Three splitters: the first sorts S/A onto single rails, the other two
    rebuild a symmetric pair (arm "bs_s") and an antisymmetric pair (arm "bs_a").

    Inputs are ``bs1.c``, ``bs1.d``; the arm outputs come first, then the
    unused ports of the rebuilding splitters.
    """
    g = PortGraph("symmetry_router")
    g.add_element(beam_splitter("e"), "bs1")
    g.add_element(beam_splitter("e"), "bs_s").add_element(beam_splitter("e"), "bs_a")
    g.connect(("bs1", "e"), ("bs_s", "e"))  # dotted side -> symmetric pair
    g.connect(("bs1", "f"), ("bs_a", "f"))  # undotted side -> antisymmetric pair
    g.add_input(("bs1", "c")).add_input(("bs1", "d"))
    for arm in ("bs_s", "bs_a"):
        g.add_output((arm, "c")).add_output((arm, "d"))
    for ref in g.unconnected_ports():
        g.add_output(ref)
    return g


def symmetry_router() -> CompiledCircuit:
    return compile_graph(symmetry_router_graph())


def router_arm_probabilities(amplitude_s: complex, amplitude_a: complex) -> dict:
    """Arm probabilities and the dual-rail symmetry of each arm's output.

    Input is the right-moving single-photon state amp_s|S> + amp_a|A>.
    """
    circ = symmetry_router()
    vin = np.array([amplitude_s * SQRT1_2 + amplitude_a * SQRT1_2,
                    amplitude_s * SQRT1_2 - amplitude_a * SQRT1_2])
    out = dict(zip(circ.output_modes, circ.unitary @ vin))
    res = {}
    for arm in ("bs_s", "bs_a"):
        a, b = out[f"{arm}.c"], out[f"{arm}.d"]
        res[arm] = {
            "probability": float(abs(a) ** 2 + abs(b) ** 2),
            "S": complex((a + b) * SQRT1_2),
            "A": complex((a - b) * SQRT1_2),
        }
    arms = {"bs_s.c", "bs_s.d", "bs_a.c", "bs_a.d"}
    res["leak"] = float(sum(abs(v) ** 2 for k, v in out.items() if k not in arms))
    return res


def comparator_verdict(state: TwoPhotonState) -> dict[str, str]:
    """Same/different reading of the two photons' S and D without measuring them.

    Each property is judged on its own: S can be determinate while D is not.
    """
    weights = total_logical_bits(state).weights
    word = ("same", "different")
    out = {}
    for k, name in enumerate(("S", "D")):
        values = {key[k] for key in weights}
        out[name] = word[values.pop()] if len(values) == 1 else "indeterminate"
    return out


def swap_two_photon_check() -> list[ProductRow]:
    """Evolve the 16 products through the SWAP circuit; each row must have
    its (S_total, D_total) interchanged."""
    rows = product_table(build_swap_SD())
    for r in rows:
        if r.totals_out != r.totals_in[::-1]:
            raise IndeterminateTotalsError(
                f"SWAP sent totals {r.totals_in} to {r.totals_out} for {r.photons_in}"
            )
    return rows
