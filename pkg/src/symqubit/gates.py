"""Gate circuits built from the element library, plus the verification harness.

Every builder returns a :class:`GateCircuit`: a netlist together with the
dual-rail boundary it acts on.  Right-moving light enters through the left
rail pair and leaves through the right pair; left-moving light does the
opposite.  Ports not on the boundary are declared output-only so any stray
amplitude is caught as a leak.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import components as comp
from .circuit import CompiledCircuit, PortGraph, PortRef, compile_graph
from .modespace import (
    ATOL,
    Direction,
    DirectedMode,
    Rail,
    is_unitary,
    logical_bits,
    wire_modes,
)
from .photon_state import SinglePhotonState, from_logical, to_logical

CLASSICAL_TOL = 1e-8
GATE_TOL = 1e-8


class LogicalLeakError(ValueError):
    """Amplitude left the logical subspace the gate is declared on."""


class NotClassicalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GateCircuit:
    name: str
    graph: PortGraph
    left: tuple[PortRef, PortRef]
    right: tuple[PortRef, PortRef]
    wire: str = "q"

    @functools.cached_property
    def compiled(self) -> CompiledCircuit:
        return compile_graph(self.graph)

    @property
    def polarized(self) -> bool:
        return self.graph.polarized

    @property
    def qubits(self) -> tuple[str, ...]:
        return ("P", "S", "D") if self.polarized else ("S", "D")

    @property
    def input_modes(self) -> tuple[DirectedMode, ...]:
        return wire_modes(self.wire, self.polarized)

    output_modes = input_modes

    def _label(self, mode: DirectedMode, incoming: bool) -> str:
        entering_left = (mode.direction == Direction.R) == incoming
        ref = (self.left if entering_left else self.right)[mode.rail]
        pol = "" if mode.polarization is None else ":" + mode.polarization.name
        return f"{ref[0]}.{ref[1]}{pol}"

    @functools.cached_property
    def unitary(self) -> np.ndarray:
        """Transfer matrix on the boundary wire modes (rail, direction, pol)."""
        c = self.compiled
        cols = [c.input_modes.index(self._label(m, True)) for m in self.input_modes]
        rows = [c.output_modes.index(self._label(m, False)) for m in self.output_modes]
        u = c.unitary[np.ix_(rows, cols)]
        leak = 1.0 - np.sum(np.abs(u) ** 2, axis=0)
        if np.max(np.abs(leak)) > ATOL:
            raise LogicalLeakError(
                f"{self.name}: amplitude leaks out of the dual-rail boundary "
                f"(max {np.max(leak):.3g})"
            )
        u.setflags(write=False)
        return u

    def apply(self, state: SinglePhotonState) -> SinglePhotonState:
        if tuple(state.modes) != self.input_modes:
            raise ValueError(f"state must be given on the modes of wire '{self.wire}'")
        return SinglePhotonState(self.unitary @ state.amplitudes, self.output_modes)


# -- graph helpers ----------------------------------------------------------

def _finalize(name: str, g: PortGraph, left, right) -> GateCircuit:
    left, right = tuple(map(tuple, left)), tuple(map(tuple, right))
    for ref in left + right:
        g.add_external(ref)
    for ref in g.unconnected_ports():
        g.add_output(ref)
    return GateCircuit(name, g, left, right)


def _embed(g: PortGraph, gate: GateCircuit, prefix: str):
    ids = g.include(gate.graph, prefix)
    lift = lambda pair: tuple((ids[i], p) for i, p in pair)  # noqa: E731
    return lift(gate.left), lift(gate.right)


def _dual_phase(g: PortGraph, id: str, phi: float):
    g.add_element(comp.phase_shifter(phi, Rail.b), id)
    return ((id, "al"), (id, "bl")), ((id, "ar"), (id, "br"))


def _wire_pairs(g: PortGraph, xs, ys) -> None:
    for x, y in zip(xs, ys):
        g.connect(x, y)


# -- builders ---------------------------------------------------------------

def build_cnot_SD() -> GateCircuit:
    """Single Grover four-port: CNOT with S as control, D as target."""
    g = PortGraph("cnot_sd").add_element(comp.grover_four_port(), "g")
    return _finalize("cnot_sd", g, [("g", "a"), ("g", "b")], [("g", "c"), ("g", "d")])


def build_not_S() -> GateCircuit:
    """Pi phase on one rail flips the symmetry in both travel directions."""
    g = PortGraph("not_s")
    left, right = _dual_phase(g, "p", math.pi)
    return _finalize("not_s", g, left, right)


def build_not_D() -> GateCircuit:
    """Grover, pi shifter, Grover."""
    g = PortGraph("not_d")
    g.add_element(comp.grover_four_port(), "g1").add_element(comp.grover_four_port(), "g2")
    pl, pr = _dual_phase(g, "p", math.pi)
    _wire_pairs(g, [("g1", "c"), ("g1", "d")], pl)
    _wire_pairs(g, pr, [("g2", "a"), ("g2", "b")])
    return _finalize("not_d", g, [("g1", "a"), ("g1", "b")], [("g2", "c"), ("g2", "d")])


def build_hadamard_S() -> GateCircuit:
    """One beam splitter; its single-rail outputs reread as a dual-rail pair."""
    g = PortGraph("hadamard_s").add_element(comp.beam_splitter("e"), "bs")
    return _finalize("hadamard_s", g, [("bs", "c"), ("bs", "d")], [("bs", "e"), ("bs", "f")])


def _split_recombine(name: str, second_dot: str, phase_e: float, phase_f: float) -> GateCircuit:
    g = PortGraph(name)
    g.add_element(comp.beam_splitter("e"), "bs1").add_element(comp.beam_splitter(second_dot), "bs2")
    for arm, phi in (("e", phase_e), ("f", phase_f)):
        if phi == 0.0:
            g.connect(("bs1", arm), ("bs2", arm))
        else:
            g.add_element(comp.phase_shifter(phi), f"p{arm}")
            g.connect(("bs1", arm), (f"p{arm}", "l"))
            g.connect((f"p{arm}", "r"), ("bs2", arm))
    return _finalize(name, g, [("bs1", "c"), ("bs1", "d")], [("bs2", "c"), ("bs2", "d")])


def build_pauli_S(which: str) -> GateCircuit:
    """Split S/A onto single rails, act on the arms, recombine.

    Moving the second splitter's dot to f exchanges S and A (X, Y); Y adds a
    pi phase on the symmetric arm, Z a pi phase on the antisymmetric arm.
    """
    which = which.upper()
    settings = {"X": ("f", 0.0, 0.0), "Y": ("f", math.pi, 0.0), "Z": ("e", 0.0, math.pi)}
    if which not in settings:
        raise ValueError("which must be X, Y or Z")
    return _split_recombine(f"pauli_s_{which.lower()}", *settings[which])


def build_phase_gate_S(phi: float) -> GateCircuit:
    return _split_recombine("phase_s", "e", 0.0, float(phi))


def build_pauli_D(which: str) -> GateCircuit:
    """Direction Paulis from mirrors (X, Y) and circulator arms (Z)."""
    which = which.upper()
    name = f"pauli_d_{which.lower()}"
    g = PortGraph(name)
    left, right = [], []
    if which in ("X", "Y"):
        for r in "ab":
            g.add_element(comp.mirror(), f"ml_{r}").add_element(comp.mirror(), f"mr_{r}")
            left.append((f"ml_{r}", "p"))
            if which == "X":
                right.append((f"mr_{r}", "p"))
            else:
                # extra pi/2 per pass for light arriving from the right
                g.add_element(comp.phase_shifter(math.pi / 2), f"py_{r}")
                g.connect((f"py_{r}", "l"), (f"mr_{r}", "p"))
                right.append((f"py_{r}", "r"))
    elif which == "Z":
        for r in "ab":
            g.add_element(comp.circulator(), f"cl_{r}").add_element(comp.circulator(), f"cr_{r}")
            # right-movers: arm with round trip pi/2 + pi + pi/2 = 2 pi
            g.add_element(comp.phase_shifter(math.pi / 2), f"pz_{r}")
            g.add_element(comp.mirror(), f"ma_{r}").add_element(comp.mirror(), f"mb_{r}")
            g.connect((f"cl_{r}", "p2"), (f"pz_{r}", "l"))
            g.connect((f"pz_{r}", "r"), (f"ma_{r}", "p"))
            # left-movers: bare mirror arm, round trip pi
            g.connect((f"cr_{r}", "p2"), (f"mb_{r}", "p"))
            g.connect((f"cl_{r}", "p3"), (f"cr_{r}", "p3"))
            left.append((f"cl_{r}", "p1"))
            right.append((f"cr_{r}", "p1"))
    else:
        raise ValueError("which must be X, Y or Z")
    return _finalize(name, g, left, right)


def build_swap_SD() -> GateCircuit:
    """Exchange S and D using circulators and four beam splitters.

    Circulators split each side into an incoming and an outgoing dual-rail
    path.  Splitters bs1/bs2 sort incoming light by symmetry; bs3 and bs4
    rebuild outgoing dual-rail states heading right and left.
    """
    g = PortGraph("swap_sd")
    for k in range(1, 5):
        g.add_element(comp.beam_splitter("e"), f"bs{k}")
    for r in "ab":
        g.add_element(comp.circulator(), f"cl_{r}").add_element(comp.circulator(), f"cr_{r}")
    for r, port in (("a", "c"), ("b", "d")):
        g.connect((f"cl_{r}", "p2"), ("bs1", port))
        g.connect((f"cr_{r}", "p2"), ("bs2", port))
        g.connect(("bs3", port), (f"cr_{r}", "p3"))
        g.connect(("bs4", port), (f"cl_{r}", "p3"))
    g.connect(("bs1", "e"), ("bs3", "e"))  # S, right-moving -> S, right-moving
    g.connect(("bs1", "f"), ("bs4", "e"))  # A, right-moving -> S, left-moving
    g.connect(("bs2", "e"), ("bs3", "f"))  # S, left-moving  -> A, right-moving
    g.connect(("bs2", "f"), ("bs4", "f"))  # A, left-moving  -> A, left-moving
    return _finalize("swap_sd", g, [("cl_a", "p1"), ("cl_b", "p1")], [("cr_a", "p1"), ("cr_b", "p1")])


def compose(name: str, *stages: GateCircuit) -> GateCircuit:
    """Logical product of gates: ``stages[0]`` acts first.

    Circulators on both sides of each stage separate its incoming and
    outgoing paths, so the outputs of one stage feed the inputs of the next
    regardless of direction.
    """
    if len(stages) < 2:
        raise ValueError("compose needs at least two stages")
    if len(stages) > 2:
        return compose(name, compose(f"{name}_head", *stages[:-1]), stages[-1])
    first, second = stages
    g = PortGraph(name)
    for k, gate in enumerate(stages, start=1):
        left, right = _embed(g, gate, f"s{k}_")
        for r in (0, 1):
            rl = "ab"[r]
            g.add_element(comp.circulator(), f"s{k}l_{rl}").add_element(comp.circulator(), f"s{k}r_{rl}")
            g.connect((f"s{k}l_{rl}", "p2"), left[r])
            g.connect((f"s{k}r_{rl}", "p2"), right[r])
    for rl in "ab":
        g.add_element(comp.circulator(), f"xl_{rl}").add_element(comp.circulator(), f"xr_{rl}")
        g.connect((f"xl_{rl}", "p2"), (f"s1l_{rl}", "p1"))   # R in -> stage 1 R in
        g.connect((f"xr_{rl}", "p2"), (f"s1r_{rl}", "p1"))   # L in -> stage 1 L in
        g.connect((f"s1r_{rl}", "p3"), (f"s2l_{rl}", "p1"))  # stage 1 R out -> stage 2 R in
        g.connect((f"s1l_{rl}", "p3"), (f"s2r_{rl}", "p1"))  # stage 1 L out -> stage 2 L in
        g.connect((f"s2r_{rl}", "p3"), (f"xr_{rl}", "p3"))   # stage 2 R out -> R out
        g.connect((f"s2l_{rl}", "p3"), (f"xl_{rl}", "p3"))   # stage 2 L out -> L out
    return _finalize(name, g, [("xl_a", "p1"), ("xl_b", "p1")], [("xr_a", "p1"), ("xr_b", "p1")])


def build_swap_then_not() -> GateCircuit:
    """SWAP followed by NOT on the symmetry qubit."""
    return compose("swap_then_not", build_swap_SD(), build_not_S())


def build_cnot_SD_corrected() -> GateCircuit:
    """Grover CNOT followed by Z on S, which cancels the -1 of reflected A states."""
    return compose("cnot_sd_corrected", build_cnot_SD(), build_pauli_S("Z"))


def build_double_cnot_circuit() -> GateCircuit:
    """CNOT(S->D), SWAP, CNOT(S->D) in sequence, with sign-corrected CNOTs."""
    return compose("double_cnot", build_cnot_SD_corrected(), build_swap_SD(),
                   build_cnot_SD_corrected())


def _polarization_device(name: str, v_arm: GateCircuit,
                         outer: Optional[tuple[float, float]] = None) -> GateCircuit:
    """PBS pair routing V through ``v_arm`` while H bypasses it.

    ``outer`` optionally places rail-b phase shifters on the shared line
    before the first and after the second PBS pair.
    """
    g = PortGraph(name)
    arm_left, arm_right = _embed(g, v_arm, "v_")
    outside_left, outside_right = [], []
    for r in "ab":
        g.add_element(comp.polarizing_beam_splitter(), f"pbl_{r}")
        g.add_element(comp.polarizing_beam_splitter(), f"pbr_{r}")
        g.connect((f"pbl_{r}", "r"), (f"pbr_{r}", "r"))  # H bypass
        outside_left.append((f"pbl_{r}", "l"))
        outside_right.append((f"pbr_{r}", "l"))
    _wire_pairs(g, [("pbl_a", "s"), ("pbl_b", "s")], arm_left)
    _wire_pairs(g, arm_right, [("pbr_a", "s"), ("pbr_b", "s")])
    left, right = outside_left, outside_right
    if outer is not None:
        ol, oli = _dual_phase(g, "p3", outer[0])
        ori, orr = _dual_phase(g, "p4", outer[1])
        _wire_pairs(g, oli, outside_left)
        _wire_pairs(g, outside_right, ori)
        left, right = ol, orr
    return _finalize(name, g, left, right)


def build_toffoli() -> GateCircuit:
    """Flip D iff P = 1 and S = 1: the Grover four-port in the V arm."""
    return _polarization_device("toffoli", build_cnot_SD())


def build_fredkin() -> GateCircuit:
    """Swap S and D iff P = 1: the SWAP gate in the V arm."""
    return _polarization_device("fredkin", build_swap_SD())


def build_segment(phi1: float, phi2: float) -> GateCircuit:
    """Rail-b shifter phi1, Grover four-port, rail-b shifter phi2."""
    g = PortGraph("segment").add_element(comp.grover_four_port(), "g")
    l1, r1 = _dual_phase(g, "p1", phi1)
    l2, r2 = _dual_phase(g, "p2", phi2)
    _wire_pairs(g, r1, [("g", "a"), ("g", "b")])
    _wire_pairs(g, [("g", "c"), ("g", "d")], l2)
    return _finalize("segment", g, l1, r2)


def build_programmable(phi1: float, phi2: float, phi3: float, phi4: float) -> GateCircuit:
    """Four-phase device: phi1/phi2 around the Grover in the V arm, phi3/phi4
    on the shared line before and after the polarization split."""
    for phi in (phi1, phi2, phi3, phi4):
        if not math.isfinite(phi):
            raise ValueError("phases must be finite")
    return _polarization_device("programmable", build_segment(phi1, phi2), (phi3, phi4))


# -- logical extraction -------------------------------------------------------

def _basis_indices(qubits: Sequence[str], fixed: Optional[dict]) -> list[int]:
    n = len(qubits)
    idx = []
    for k in range(2 ** n):
        bits = dict(zip(qubits, logical_bits(k, n == 3)))
        if fixed and any(bits[q] != v for q, v in fixed.items()):
            continue
        idx.append(k)
    return idx


def extract_logical_unitary(gate: GateCircuit, fixed: Optional[dict] = None) -> np.ndarray:
    """Logical matrix of a gate: column k is to_logical(apply(from_logical(k))).

    ``fixed`` (e.g. ``{"D": 0}``) restricts to the sub-block where those
    qubits hold the given values; the block must be closed under the gate.
    """
    qubits = gate.qubits
    if fixed and set(fixed) - set(qubits):
        raise ValueError(f"unknown qubit in {fixed}")
    full = []
    for k in range(2 ** len(qubits)):
        bits = logical_bits(k, gate.polarized)
        p = bits[0] if gate.polarized else None
        s, d = bits[-2:]
        full.append(to_logical(gate.apply(from_logical(p, s, d, gate.wire))).amplitudes)
    u = np.array(full).T
    if not is_unitary(u, ATOL):
        raise LogicalLeakError(f"{gate.name}: logical matrix is not unitary")
    idx = _basis_indices(qubits, fixed)
    block = u[np.ix_(idx, idx)]
    if fixed:
        outside = 1.0 - np.sum(np.abs(block) ** 2, axis=0)
        if np.max(np.abs(outside)) > ATOL:
            raise LogicalLeakError(f"{gate.name}: block {fixed} is not closed under the gate")
    return block


@dataclass(frozen=True)
class TruthTable:
    qubits: tuple[str, ...]
    rows: dict  # input bits -> (output bits, phase)

    def mapping(self) -> dict:
        return {k: v[0] for k, v in self.rows.items()}

    def is_reversible(self) -> bool:
        return sorted(self.mapping().values()) == sorted(self.rows)


def truth_table(gate, qubits: Optional[Sequence[str]] = None,
                tol: float = CLASSICAL_TOL) -> TruthTable:
    """Classical permutation (with phases) of a gate or logical matrix."""
    if isinstance(gate, GateCircuit):
        u = extract_logical_unitary(gate)
        qubits = gate.qubits
    else:
        u = np.asarray(gate)
    n = int(round(math.log2(u.shape[0])))
    if qubits is None:
        qubits = ("P", "S", "D")[-n:] if n <= 3 else tuple(f"q{k}" for k in range(n))
    rows = {}
    for col in range(u.shape[1]):
        mags = np.abs(u[:, col])
        row = int(np.argmax(mags))
        if mags[row] < 1.0 - tol:
            raise NotClassicalError("not a classical gate")
        bits_in = tuple((col >> (n - 1 - j)) & 1 for j in range(n))
        bits_out = tuple((row >> (n - 1 - j)) & 1 for j in range(n))
        ph = u[row, col]
        rows[bits_in] = (bits_out, complex(ph / abs(ph)))
    return TruthTable(tuple(qubits), rows)


def equal_up_to_global_phase(u, v, tol: float = GATE_TOL) -> tuple[bool, float]:
    """Whether ``u ~= e^{i theta} v``; returns (verdict, theta).

    theta comes from the largest-magnitude entry of ``v``.
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[k]) == 0.0:
        return bool(np.max(np.abs(u), initial=0.0) < tol), 0.0
    ratio = u[k] / v[k]
    theta = float(np.angle(ratio)) if abs(ratio) > 0 else 0.0
    err = np.max(np.abs(u - np.exp(1j * theta) * v))
    return bool(err < tol), theta


def equal_up_to_row_phases(u, v, tol: float = GATE_TOL) -> tuple[bool, np.ndarray]:
    """Whether ``u ~= diag(phases) @ v`` for unit phases; returns (verdict, phases).

    Each row phase is read off the largest-magnitude entry of that row of ``v``.
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    phases = np.ones(v.shape[0], dtype=complex)
    for i in range(v.shape[0]):
        j = int(np.argmax(np.abs(v[i])))
        r = u[i, j] / v[i, j] if v[i, j] != 0 else 1.0
        phases[i] = r / abs(r) if abs(r) > 0 else 1.0
    err = np.max(np.abs(u - phases[:, None] * v))
    return bool(err < tol), phases


def max_phase_error(u, v) -> float:
    _, theta = equal_up_to_global_phase(u, v)
    return float(np.max(np.abs(np.asarray(u) - np.exp(1j * theta) * np.asarray(v))))


@dataclass(frozen=True)
class PrintedComparison:
    exact: bool
    max_error: float
    sign_vector: Optional[tuple[int, ...]]  # row signs s with U = diag(s) @ printed

    @property
    def matches(self) -> bool:
        return self.exact or self.sign_vector is not None


def compare_printed(u, printed, tol: float = GATE_TOL) -> PrintedComparison:
    """Compare against a printed matrix literally, then up to row signs."""
    u, printed = np.asarray(u), np.asarray(printed)
    err = float(np.max(np.abs(u - printed)))
    if err < tol:
        return PrintedComparison(True, err, None)
    signs = []
    for i in range(u.shape[0]):
        j = int(np.argmax(np.abs(printed[i])))
        signs.append(1 if (u[i, j] * np.conj(printed[i, j])).real >= 0 else -1)
    err_s = float(np.max(np.abs(u - np.diag(signs) @ printed)))
    return PrintedComparison(False, err, tuple(signs) if err_s < tol else None)


# -- ideal reference gates (independent of any circuit) -------------------------

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)


def permutation_gate(n_bits: int, fn: Callable[..., tuple]) -> np.ndarray:
    """Matrix of the classical reversible map ``fn`` on n bits (MSB first)."""
    dim = 2 ** n_bits
    u = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        bits = tuple((k >> (n_bits - 1 - j)) & 1 for j in range(n_bits))
        out = fn(*bits)
        u[sum(b << (n_bits - 1 - j) for j, b in enumerate(out)), k] = 1.0
    return u


CNOT_SD = permutation_gate(2, lambda s, d: (s, d ^ s))
SWAP = permutation_gate(2, lambda s, d: (d, s))
TOFFOLI = permutation_gate(3, lambda p, s, d: (p, s, d ^ (p & s)))
FREDKIN = permutation_gate(3, lambda p, s, d: (p, d, s) if p else (p, s, d))


def phase_gate(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(complex)


def on_S(g: np.ndarray) -> np.ndarray:
    return np.kron(g, PAULI["I"])


def on_D(g: np.ndarray) -> np.ndarray:
    return np.kron(PAULI["I"], g)


# Printed example matrices of the programmable device, basis HSR..VAL.
def _printed(h_block, v_block) -> np.ndarray:
    u = np.zeros((8, 8), dtype=complex)
    u[:4, :4] = h_block
    u[4:, 4:] = v_block
    return u


_I4 = np.eye(4)
_FLIP_S = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
_FLIP_D_IF_S0 = np.array([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
_FLIP_D_IF_S1 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]])
PRINTED_PROGRAMMABLE = {
    "pi_pi_0_0": ((math.pi, math.pi, 0.0, 0.0), _printed(_I4, _FLIP_D_IF_S0)),
    "pi_0_0_pi": ((math.pi, 0.0, 0.0, math.pi), _printed(_FLIP_S, _FLIP_D_IF_S0)),
    "pi_0_pi_0": ((math.pi, 0.0, math.pi, 0.0), _printed(_FLIP_S, _FLIP_D_IF_S1)),
}


@dataclass(frozen=True)
class GateSpec:
    name: str
    qubits: tuple[str, ...]
    build: Callable[..., GateCircuit]
    reference: Callable[..., np.ndarray]
    fixed: Optional[dict] = None
    n_phases: int = 0
    row_phases: bool = False  # compare up to a phase per basis state


def _programmable_reference(*phases) -> np.ndarray:
    for _, (ph, printed) in PRINTED_PROGRAMMABLE.items():
        if np.allclose(phases, ph, atol=0.0):
            return printed
    from .closedform import PhaseQuad, programmable_closed_form

    return programmable_closed_form(PhaseQuad(*phases))


GATES: dict[str, GateSpec] = {
    "cnot_sd": GateSpec("cnot_sd", ("S", "D"), build_cnot_SD, lambda: CNOT_SD, row_phases=True),
    "cnot_sd_corrected": GateSpec("cnot_sd_corrected", ("S", "D"), build_cnot_SD_corrected,
                                  lambda: CNOT_SD),
    "not_s": GateSpec("not_s", ("S", "D"), build_not_S, lambda: on_S(PAULI["X"])),
    "not_d": GateSpec("not_d", ("S", "D"), build_not_D, lambda: on_D(PAULI["X"])),
    "hadamard_s": GateSpec("hadamard_s", ("S", "D"), build_hadamard_S, lambda: on_S(HADAMARD)),
    "phase_s": GateSpec("phase_s", ("S",), build_phase_gate_S, phase_gate, {"D": 0}, 1),
    "swap_sd": GateSpec("swap_sd", ("S", "D"), build_swap_SD, lambda: SWAP),
    "swap_then_not": GateSpec("swap_then_not", ("S", "D"), build_swap_then_not,
                              lambda: on_S(PAULI["X"]) @ SWAP),
    "double_cnot": GateSpec("double_cnot", ("S", "D"), build_double_cnot_circuit,
                            lambda: CNOT_SD @ SWAP @ CNOT_SD),
    "toffoli": GateSpec("toffoli", ("P", "S", "D"), build_toffoli, lambda: TOFFOLI,
                        row_phases=True),
    "fredkin": GateSpec("fredkin", ("P", "S", "D"), build_fredkin, lambda: FREDKIN,
                        row_phases=True),
    "programmable": GateSpec("programmable", ("P", "S", "D"), build_programmable,
                             _programmable_reference, None, 4),
}
for _w in "XYZ":
    GATES[f"pauli_s_{_w.lower()}"] = GateSpec(
        f"pauli_s_{_w.lower()}", ("S",), functools.partial(build_pauli_S, _w),
        functools.partial(PAULI.get, _w), {"D": 0})
    GATES[f"pauli_d_{_w.lower()}"] = GateSpec(
        f"pauli_d_{_w.lower()}", ("D",), functools.partial(build_pauli_D, _w),
        functools.partial(PAULI.get, _w), {"S": 0})


def verify_gate(name: str, phases: Sequence[float] = (), tol: float = GATE_TOL) -> dict:
    """Build a named gate and compare it with its ideal reference.

    Returns a verdict record ``{gate, pass, max_error, phase}``.
    """
    if name not in GATES:
        raise KeyError(f"unknown gate '{name}'")
    spec = GATES[name]
    if len(phases) != spec.n_phases:
        raise ValueError(f"gate '{name}' takes {spec.n_phases} phase(s), got {len(phases)}")
    gate = spec.build(*phases)
    u = extract_logical_unitary(gate, spec.fixed)
    ref = spec.reference(*phases)
    if spec.row_phases:
        ok, row = equal_up_to_row_phases(u, ref, tol)
        err = float(np.max(np.abs(u - row[:, None] * ref)))
        phase = [float(x) for x in np.angle(row)]
    else:
        ok, phase = equal_up_to_global_phase(u, ref, tol)
        err = float(np.max(np.abs(u - np.exp(1j * phase) * ref)))
    return {"gate": name, "pass": ok, "max_error": err, "phase": phase}
