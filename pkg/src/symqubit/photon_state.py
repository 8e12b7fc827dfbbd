"""Single- and two-photon states and the logical (P, S, D) encoding.

A two-photon state is stored as a symmetric matrix ``M`` with
``|psi> = sum_ij M_ij a_i^dag a_j^dag |0>``; it is normalized when
``2 * sum |M_ij|^2 == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

import numpy as np

from .modespace import (
    ATOL,
    LOGICAL_LABELS,
    LOGICAL_LABELS_BLIND,
    SQRT1_2,
    DirectedMode,
    Direction,
    Polarization,
    Rail,
    logical_bits,
    wire_modes,
    wire_to_logical,
)


class StateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SinglePhotonState:
    amplitudes: np.ndarray
    modes: tuple[Hashable, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "modes", tuple(self.modes))
        if amps.shape != (len(self.modes),):
            raise StateError("amplitude vector does not match mode table")
        if self.check and abs(self.norm - 1.0) > ATOL:
            raise StateError(f"state is not normalized (norm^2 = {self.norm:.12g})")

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, mode) -> complex:
        return complex(self.amplitudes[self.modes.index(mode)])

    def probabilities(self) -> dict:
        return {m: float(abs(a) ** 2) for m, a in zip(self.modes, self.amplitudes)}


@dataclass(frozen=True, eq=False)
class LogicalState:
    amplitudes: np.ndarray
    polarized: bool

    @property
    def labels(self) -> tuple[str, ...]:
        return LOGICAL_LABELS if self.polarized else LOGICAL_LABELS_BLIND

    def bits(self, index: int) -> tuple[int, ...]:
        return logical_bits(index, self.polarized)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def from_logical(p: Optional[int], s: int, d: int, wire: str = "q") -> SinglePhotonState:
    """Physical dual-rail state of one photon with the given logical bits.

    ``p=None`` gives a polarization-blind state.
    """
    for name, bit in (("s", s), ("d", d)) + ((("p", p),) if p is not None else ()):
        if bit not in (0, 1):
            raise StateError(f"{name} must be 0 or 1")
    modes = wire_modes(wire, polarized=p is not None)
    amps = np.zeros(len(modes), dtype=complex)
    pol = None if p is None else Polarization(p)
    for k, m in enumerate(modes):
        if m.direction == Direction(d) and m.polarization == pol:
            amps[k] = SQRT1_2 * (-1.0 if (s and m.rail == Rail.b) else 1.0)
    return SinglePhotonState(amps, modes)


def _single_wire(modes: Sequence[Hashable], amps: np.ndarray) -> tuple[str, bool]:
    wires = set()
    polarized = None
    for m, a in zip(modes, amps):
        if not isinstance(m, DirectedMode):
            raise StateError(f"mode {m!r} is not a dual-rail directed mode")
        pz = m.polarization is not None
        if polarized is None:
            polarized = pz
        elif polarized != pz:
            raise StateError("mixed polarization-blind and polarization-resolved modes")
        if abs(a) > ATOL:
            wires.add(m.wire)
    if len(wires) > 1:
        raise StateError(f"state is supported on several dual-rail pairs: {sorted(wires)}")
    if not wires:
        raise StateError("state has no support")
    return wires.pop(), bool(polarized)


def _wire_vector(state_modes, amps, wire, polarized) -> np.ndarray:
    full = wire_modes(wire, polarized)
    index = {m: k for k, m in enumerate(full)}
    vec = np.zeros(len(full), dtype=complex)
    for m, a in zip(state_modes, amps):
        if m.wire == wire:
            vec[index[m]] = a
    return vec


def to_logical(state: SinglePhotonState) -> LogicalState:
    """Express a one-wire dual-rail state in the logical basis."""
    wire, polarized = _single_wire(state.modes, state.amplitudes)
    vec = _wire_vector(state.modes, state.amplitudes, wire, polarized)
    return LogicalState(wire_to_logical(polarized) @ vec, polarized)


@dataclass(frozen=True, eq=False)
class TwoPhotonState:
    matrix: np.ndarray
    modes: tuple[Hashable, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "modes", tuple(self.modes))
        n = len(self.modes)
        if m.shape != (n, n):
            raise StateError("amplitude matrix does not match mode table")
        if self.check:
            if np.max(np.abs(m - m.T), initial=0.0) > ATOL:
                raise StateError("two-photon amplitude matrix must be symmetric")
            if abs(self.norm - 1.0) > ATOL:
                raise StateError(f"state is not normalized (2 sum|M|^2 = {self.norm:.12g})")

    @property
    def norm(self) -> float:
        return float(2.0 * np.sum(np.abs(self.matrix) ** 2))

    @classmethod
    def product(cls, first: SinglePhotonState, second: SinglePhotonState) -> "TwoPhotonState":
        """Symmetrized, normalized ``a_first^dag a_second^dag |0>``."""
        if first.modes != second.modes:
            raise StateError("photons must share a mode table")
        u, v = first.amplitudes, second.amplitudes
        m = 0.5 * (np.outer(u, v) + np.outer(v, u))
        n = np.sqrt(2.0 * np.sum(np.abs(m) ** 2))
        if n < ATOL:
            raise StateError("product state vanishes")
        return cls(m / n, first.modes)

    def pair_probabilities(self, atol: float = 0.0) -> dict[tuple, float]:
        """Detection probabilities for each unordered pair of modes."""
        out = {}
        n = len(self.modes)
        for i in range(n):
            for j in range(i, n):
                p = (2.0 if i == j else 4.0) * abs(self.matrix[i, j]) ** 2
                if p > atol:
                    out[(self.modes[i], self.modes[j])] = float(p)
        return out


def evolve_two_photon(circuit, state: TwoPhotonState) -> TwoPhotonState:
    """Send both photons through a linear-optical circuit: M -> U M U^T.

    ``circuit`` is anything with ``unitary``, ``input_modes`` and
    ``output_modes``.
    """
    if tuple(state.modes) != tuple(circuit.input_modes):
        raise StateError("two-photon state modes do not match circuit inputs")
    u = circuit.unitary
    return TwoPhotonState(u @ state.matrix @ u.T, circuit.output_modes)


def logical_pair_matrix(state: TwoPhotonState) -> tuple[np.ndarray, bool]:
    """Amplitude matrix of a one-wire two-photon state in the logical basis."""
    wire, polarized = _single_wire(state.modes, np.abs(state.matrix).sum(axis=0))
    full = wire_modes(wire, polarized)
    index = {m: k for k, m in enumerate(full)}
    m = np.zeros((len(full), len(full)), dtype=complex)
    sel = [k for k, md in enumerate(state.modes) if md.wire == wire]
    pos = [index[state.modes[k]] for k in sel]
    m[np.ix_(pos, pos)] = state.matrix[np.ix_(sel, sel)]
    t = wire_to_logical(polarized)
    return t @ m @ t.T, polarized


@dataclass(frozen=True)
class LogicalTotals:
    """Distributed (S, D) values of a two-photon state.

    ``s``/``d`` are None when components with different totals coexist;
    ``weights`` gives the probability of each (S_total, D_total).
    """

    s: Optional[int]
    d: Optional[int]
    weights: dict

    @property
    def determinate(self) -> bool:
        return self.s is not None

    @property
    def bits(self) -> Optional[tuple[int, int]]:
        return (self.s, self.d) if self.determinate else None


def total_logical_bits(state: TwoPhotonState, atol: float = ATOL) -> LogicalTotals:
    m, polarized = logical_pair_matrix(state)
    weights: dict[tuple[int, int], float] = {}
    n = m.shape[0]
    for i in range(n):
        for j in range(i, n):
            p = (2.0 if i == j else 4.0) * abs(m[i, j]) ** 2
            if p <= atol:
                continue
            bi, bj = logical_bits(i, polarized)[-2:], logical_bits(j, polarized)[-2:]
            key = (bi[0] ^ bj[0], bi[1] ^ bj[1])
            weights[key] = weights.get(key, 0.0) + p
    if len(weights) == 1:
        (s, d), = weights
        return LogicalTotals(s, d, weights)
    return LogicalTotals(None, None, weights)
