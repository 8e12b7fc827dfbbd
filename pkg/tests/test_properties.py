"""Randomized invariants across modules."""

import numpy as np
from hypothesis import assume, given, settings, strategies as st

from symqubit import components as comp
from symqubit import gates
from symqubit.circuit import CircuitError, PortGraph, compile_graph
from symqubit.dsl import parse, pretty_print
from symqubit.modespace import is_unitary
from symqubit.photon_state import SinglePhotonState, TwoPhotonState, evolve_two_photon

MAKERS = [
    lambda r: comp.grover_four_port(),
    lambda r: comp.beam_splitter(r.choice(["e", "f"])),
    lambda r: comp.phase_shifter(r.uniform(-3, 3)),
    lambda r: comp.phase_shifter(r.uniform(-3, 3), comp.Rail.b),
    lambda r: comp.mirror(),
    lambda r: comp.circulator(),
]


def random_graph(seed: int) -> PortGraph:
    """Random elements, random wiring, leftover ports declared both ways."""
    import random

    r = random.Random(seed)
    g = PortGraph(f"rand{seed}")
    for k in range(r.randint(1, 5)):
        g.add_element(r.choice(MAKERS)(r), f"e{k}")
    ports = [(i, p) for i in g.elements for p in g.elements[i].port_names]
    r.shuffle(ports)
    for _ in range(r.randint(0, len(ports) // 2)):
        a, b = ports.pop(), ports.pop()
        g.connect(a, b)
    for ref in ports:
        g.add_external(ref)
    return g


@given(st.integers(0, 10**6))
@settings(max_examples=150)
def test_random_netlists_compile_or_raise_cleanly(seed):
    g = random_graph(seed)
    try:
        c = compile_graph(g)
    except CircuitError:
        return
    assert is_unitary(c.unitary, 1e-10)


@given(st.integers(0, 10**6))
@settings(max_examples=60)
def test_random_netlists_roundtrip_through_text(seed):
    g = random_graph(seed)
    res = parse(pretty_print(g))
    assert res.ok and res.graph.same_as(g)


STAGES = ["not_s", "not_d", "swap_sd", "cnot_sd_corrected", "pauli_s_z", "pauli_d_x"]


@given(st.lists(st.sampled_from(STAGES), min_size=2, max_size=3))
@settings(max_examples=15)
def test_composition_is_matrix_product(names):
    built = [gates.GATES[n].build() for n in names]
    u = gates.extract_logical_unitary(gates.compose("c", *built))
    ref = np.eye(4)
    for b in built:
        ref = gates.extract_logical_unitary(b) @ ref
    assert gates.equal_up_to_global_phase(u, ref, 1e-8)[0]


@given(st.integers(0, 2**32 - 1), st.sampled_from(["toffoli", "fredkin", "swap_then_not"]))
@settings(max_examples=30)
def test_evolution_preserves_norm(seed, name):
    c = gates.GATES[name].build().compiled
    rng = np.random.default_rng(seed)
    n = len(c.input_modes)
    vs = []
    for _ in range(2):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        vs.append(SinglePhotonState(v / np.linalg.norm(v), c.input_modes))
    out = c.apply(vs[0])
    assert abs(out.norm - 1) < 1e-10
    two = evolve_two_photon(c, TwoPhotonState.product(*vs))
    assert abs(two.norm - 1) < 1e-10
