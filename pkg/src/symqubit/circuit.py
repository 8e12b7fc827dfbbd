"""Port-graph netlists and their compilation to a total scattering matrix.

A wire joins two element ports and carries one mode per travel direction
(per polarization).  Compilation follows light from the declared external
inputs through the directed-mode graph and returns the map from external
input modes to external output modes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from .components import ScatteringElement
from .modespace import ATOL

log = logging.getLogger(__name__)

PortRef = tuple[str, str]

# max |entry| of M^n below which a structurally cyclic network counts as feed-forward
NILPOTENT_ATOL = 1e-12


class CircuitError(Exception):
    """Base class for netlist construction and compilation errors."""

    def __init__(self, message: str, loc: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.loc = loc


class DuplicateIdError(CircuitError):
    pass


class UnknownPortError(CircuitError):
    pass


class AlreadyWiredError(CircuitError):
    pass


class DanglingPortError(CircuitError):
    pass


class CycleError(CircuitError):
    def __init__(self, message: str, modes: Sequence[str]):
        super().__init__(message)
        self.modes = list(modes)


class NonUnitaryError(CircuitError):
    pass


def _fmt(ref: PortRef) -> str:
    return f"{ref[0]}.{ref[1]}"


@dataclass
class PortGraph:
    """Mutable netlist: element instances, wires and external port declarations."""

    name: str = "circuit"
    elements: dict[str, ScatteringElement] = field(default_factory=dict)
    wires: list[tuple[PortRef, PortRef]] = field(default_factory=list)
    inputs: list[PortRef] = field(default_factory=list)
    outputs: list[PortRef] = field(default_factory=list)
    locations: dict[str, tuple[int, int]] = field(default_factory=dict)

    def add_element(self, element: ScatteringElement, id: str, loc=None) -> "PortGraph":
        if id in self.elements:
            raise DuplicateIdError(f"duplicate id '{id}'", loc)
        self.elements[id] = element
        if loc is not None:
            self.locations[id] = loc
        return self

    def _check_port(self, ref: PortRef, loc=None) -> None:
        inst, port = ref
        if inst not in self.elements:
            raise UnknownPortError(f"unknown element '{inst}'", loc)
        if port not in self.elements[inst].port_names:
            raise UnknownPortError(
                f"unknown port '{port}' on {inst} ({self.elements[inst].kind})", loc
            )

    def wired_ports(self) -> dict[PortRef, PortRef]:
        peers = {}
        for a, b in self.wires:
            peers[a] = b
            peers[b] = a
        return peers

    def connect(self, end_a: PortRef, end_b: PortRef, loc=None) -> "PortGraph":
        end_a, end_b = tuple(end_a), tuple(end_b)
        for ref in (end_a, end_b):
            self._check_port(ref, loc)
        if end_a == end_b:
            raise AlreadyWiredError(f"cannot wire {_fmt(end_a)} to itself", loc)
        peers = self.wired_ports()
        for ref in (end_a, end_b):
            if ref in peers:
                raise AlreadyWiredError(f"port {_fmt(ref)} already wired", loc)
            if ref in self.inputs or ref in self.outputs:
                raise AlreadyWiredError(f"port {_fmt(ref)} already declared external", loc)
        self.wires.append((end_a, end_b))
        return self

    def _declare(self, ref: PortRef, table: list, what: str, loc=None) -> "PortGraph":
        ref = tuple(ref)
        self._check_port(ref, loc)
        if ref in self.wired_ports():
            raise AlreadyWiredError(f"port {_fmt(ref)} already wired", loc)
        if ref in table:
            raise AlreadyWiredError(f"{what} {_fmt(ref)} declared twice", loc)
        table.append(ref)
        return self

    def add_input(self, ref: PortRef, loc=None) -> "PortGraph":
        return self._declare(ref, self.inputs, "input", loc)

    def add_output(self, ref: PortRef, loc=None) -> "PortGraph":
        return self._declare(ref, self.outputs, "output", loc)

    def add_external(self, ref: PortRef) -> "PortGraph":
        """Declare a port as both input and output."""
        return self.add_input(ref).add_output(ref)

    def include(self, other: "PortGraph", prefix: str) -> dict[str, str]:
        """Copy another graph's elements and wires under ``prefix``.

        The other graph's external declarations are dropped so its boundary
        ports can be wired here.  Returns the old-id -> new-id map.
        """
        ids = {old: f"{prefix}{old}" for old in other.elements}
        for old, el in other.elements.items():
            self.add_element(el, ids[old])
        for (ia, pa), (ib, pb) in other.wires:
            self.connect((ids[ia], pa), (ids[ib], pb))
        return ids

    def unconnected_ports(self) -> list[PortRef]:
        peers = self.wired_ports()
        ext = set(self.inputs) | set(self.outputs)
        return [
            (inst, p)
            for inst in sorted(self.elements)
            for p in self.elements[inst].port_names
            if (inst, p) not in peers and (inst, p) not in ext
        ]

    @property
    def polarized(self) -> bool:
        return any(el.polarized for el in self.elements.values())

    def same_as(self, other: "PortGraph") -> bool:
        """Structural equality: same elements, parameters, wires and externals."""
        if set(self.elements) != set(other.elements):
            return False
        if any(not self.elements[k].same_as(other.elements[k]) for k in self.elements):
            return False
        norm = lambda ws: sorted(tuple(sorted(w)) for w in ws)  # noqa: E731
        return (
            self.name == other.name
            and norm(self.wires) == norm(other.wires)
            and self.inputs == other.inputs
            and self.outputs == other.outputs
        )


@dataclass(frozen=True, eq=False)
class CompiledCircuit:
    """Immutable result of :func:`compile_graph`."""

    name: str
    input_modes: tuple[str, ...]
    output_modes: tuple[str, ...]
    unitary: np.ndarray
    mode_dag: tuple[str, ...]
    polarized: bool
    feed_forward: str  # "structural" or "interference"

    def apply(self, state):
        from .photon_state import SinglePhotonState

        if tuple(state.modes) != self.input_modes:
            if len(state.modes) != len(self.input_modes):
                raise ValueError(
                    f"state has {len(state.modes)} modes, circuit expects {len(self.input_modes)}"
                )
            raise ValueError("state mode labels do not match circuit input modes")
        out = self.unitary @ state.amplitudes
        return SinglePhotonState(out, self.output_modes)

    def reordered(self, inputs: Optional[Sequence[str]] = None,
                  outputs: Optional[Sequence[str]] = None) -> "CompiledCircuit":
        """Same circuit with external modes permuted into the given order."""
        inputs = tuple(inputs) if inputs is not None else self.input_modes
        outputs = tuple(outputs) if outputs is not None else self.output_modes
        if sorted(inputs) != sorted(self.input_modes) or sorted(outputs) != sorted(self.output_modes):
            raise ValueError("reordering must be a permutation of the existing modes")
        ci = [self.input_modes.index(m) for m in inputs]
        ro = [self.output_modes.index(m) for m in outputs]
        u = self.unitary[np.ix_(ro, ci)]
        return CompiledCircuit(self.name, inputs, outputs, u, self.mode_dag,
                               self.polarized, self.feed_forward)


def _label(ref: PortRef, pol: int, polarized: bool) -> str:
    return _fmt(ref) + ((":H", ":V")[pol] if polarized else "")


def compile_graph(graph: PortGraph, atol: float = ATOL) -> CompiledCircuit:
    """Compile a netlist into its external input -> output matrix.

    Raises DanglingPortError, CycleError or NonUnitaryError.
    """
    dangling = graph.unconnected_ports()
    if dangling:
        inst, port = dangling[0]
        raise DanglingPortError(
            f"port {inst}.{port} is neither wired nor declared external",
            graph.locations.get(inst),
        )
    polarized = graph.polarized
    npol = 2 if polarized else 1

    # Slots: (instance, port, pol).  in-slot = light entering the element there.
    ids = sorted(graph.elements)
    slot_index: dict[tuple[str, str, int], int] = {}
    blocks = []
    for inst in ids:
        el = graph.elements[inst]
        m = el.matrix if el.polarized or not polarized else np.kron(el.matrix, np.eye(2))
        blocks.append(m)
        for port in el.port_names:
            for pol in range(npol):
                slot_index[(inst, port, pol)] = len(slot_index)
    n = len(slot_index)
    s_big = np.zeros((n, n), dtype=complex)
    off = 0
    for m in blocks:
        k = m.shape[0]
        s_big[off:off + k, off:off + k] = m
        off += k

    peers = graph.wired_ports()
    # the in-slot at ref is fed by the out-slot at peers[ref]
    feeder = np.full(n, -1)
    for ref, peer in peers.items():
        for pol in range(npol):
            feeder[slot_index[(*ref, pol)]] = slot_index[(*peer, pol)]
    internal = [i for i in range(n) if feeder[i] >= 0]
    ext_in = [slot_index[(*ref, pol)] for ref in graph.inputs for pol in range(npol)]
    ext_out = [slot_index[(*ref, pol)] for ref in graph.outputs for pol in range(npol)]
    slot_of = {i: key for key, i in slot_index.items()}
    names: dict[int, str] = {}
    for (inst, port, pol), i in slot_index.items():
        if feeder[i] >= 0:
            src = slot_of[feeder[i]]
            names[i] = f"{src[0]}.{src[1]}>{inst}.{port}" + ((":H", ":V")[pol] if polarized else "")
        else:
            names[i] = _label((inst, port), pol, polarized)

    # Structural graph over in-slots: u -> v when light entering at u can feed v.
    g = nx.DiGraph()
    g.add_nodes_from(names[i] for i in ext_in + internal)
    for v in internal:
        row = s_big[feeder[v]]
        for u in np.flatnonzero(np.abs(row) > 0):
            if u in ext_in or feeder[u] >= 0:
                g.add_edge(names[u], names[v])
    reach = set()
    for i in ext_in:
        reach |= nx.descendants(g, names[i])
    reach_internal = [i for i in internal if names[i] in reach]
    sub = g.subgraph([names[i] for i in ext_in] + [names[i] for i in reach_internal])
    pos = {names[i]: k for k, i in enumerate(reach_internal)}
    x_in = np.zeros((len(reach_internal), len(ext_in)), dtype=complex)
    b = np.zeros_like(x_in)
    for k, v in enumerate(reach_internal):
        b[k] = s_big[feeder[v], ext_in]

    if nx.is_directed_acyclic_graph(sub):
        feed_forward = "structural"
        order = [m for m in nx.lexicographical_topological_sort(sub) if m in pos]
        for name in order:
            k = pos[name]
            v = reach_internal[k]
            row = s_big[feeder[v]]
            acc = b[k].copy()
            for name_u in sub.predecessors(name):
                if name_u in pos:
                    acc += row[reach_internal[pos[name_u]]] * x_in[pos[name_u]]
            x_in[k] = acc
        mode_dag = tuple(order)
    else:
        mm = s_big[np.ix_(feeder[reach_internal], reach_internal)]
        power = np.linalg.matrix_power(mm, len(reach_internal))
        if np.max(np.abs(power)) > NILPOTENT_ATOL:
            live = [names[reach_internal[k]] for k in range(len(reach_internal))
                    if np.any(np.abs(power[k]) > NILPOTENT_ATOL)
                    or np.any(np.abs(power[:, k]) > NILPOTENT_ATOL)]
            try:
                cyc = [e[0] for e in nx.find_cycle(g.subgraph(live))]
            except nx.NetworkXNoCycle:
                cyc = [e[0] for e in nx.find_cycle(sub)]
            raise CycleError("directed cycle (resonant loop): " + " -> ".join(cyc), cyc)
        feed_forward = "interference"
        x_in = np.linalg.solve(np.eye(len(reach_internal)) - mm, b)
        # longest remaining path first, ties by name
        depth = {}
        for k in range(len(reach_internal)):
            e = np.zeros(len(reach_internal))
            e[k] = 1.0
            steps = 0
            while np.max(np.abs(e), initial=0) > NILPOTENT_ATOL:
                e = mm @ e
                steps += 1
            depth[names[reach_internal[k]]] = steps
        mode_dag = tuple(sorted(depth, key=lambda m: (-depth[m], m)))
        log.debug("%s: structural cycles cancel by interference", graph.name)

    total = s_big[np.ix_(ext_out, ext_in)] + s_big[np.ix_(ext_out, reach_internal)] @ x_in
    in_labels = tuple(_label(r, p, polarized) for r in graph.inputs for p in range(npol))
    out_labels = tuple(_label(r, p, polarized) for r in graph.outputs for p in range(npol))
    if total.shape[1]:
        err = np.max(np.abs(total.conj().T @ total - np.eye(total.shape[1])))
        if err > atol:
            raise NonUnitaryError(
                f"total matrix of {graph.name} is not unitary (max deviation {err:.3g}); "
                "light reaches a port not declared as output"
            )
    return CompiledCircuit(graph.name, in_labels, out_labels, total, mode_dag,
                           polarized, feed_forward)


def series(first: PortGraph, second: PortGraph, links: Iterable[tuple[PortRef, PortRef]],
           name: str = "series") -> PortGraph:
    """Join two graphs, wiring outputs of ``first`` to inputs of ``second``.

    ``links`` pairs an output port of ``first`` with an input port of
    ``second``.  Remaining externals keep their declaration order.
    """
    links = [(tuple(a), tuple(b)) for a, b in links]
    g = PortGraph(name)
    ida = g.include(first, "x_")
    idb = g.include(second, "y_")
    used_a = {a for a, _ in links}
    used_b = {b for _, b in links}
    for a, b in links:
        g.connect((ida[a[0]], a[1]), (idb[b[0]], b[1]))
    for ref in first.inputs:
        if ref not in used_a:
            g.add_input((ida[ref[0]], ref[1]))
    for ref in second.inputs:
        if ref not in used_b:
            g.add_input((idb[ref[0]], ref[1]))
    for ref in first.outputs:
        if ref not in used_a:
            g.add_output((ida[ref[0]], ref[1]))
    for ref in second.outputs:
        if ref not in used_b:
            g.add_output((idb[ref[0]], ref[1]))
    return g
