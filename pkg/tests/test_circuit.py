import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symqubit import components as comp
from symqubit.circuit import (
    AlreadyWiredError,
    CycleError,
    DanglingPortError,
    DuplicateIdError,
    NonUnitaryError,
    PortGraph,
    UnknownPortError,
    compile_graph,
    series,
)
from symqubit.gates import build_not_D
from symqubit.modespace import is_unitary
from symqubit.photon_state import SinglePhotonState


def shifter_line(phi, name="line"):
    g = PortGraph(name).add_element(comp.phase_shifter(phi), "p")
    g.add_external(("p", "l")).add_external(("p", "r"))
    return g


def test_single_element_compiles_to_its_matrix():
    c = compile_graph(shifter_line(0.5))
    assert c.input_modes == ("p.l", "p.r")
    assert np.allclose(c.unitary, [[0, np.exp(0.5j)], [np.exp(0.5j), 0]])
    assert c.feed_forward == "structural"


def test_wired_phases_add():
    g = PortGraph("two")
    g.add_element(comp.phase_shifter(0.25), "p1").add_element(comp.phase_shifter(0.5), "p2")
    g.connect(("p1", "r"), ("p2", "l"))
    g.add_input(("p1", "l")).add_output(("p2", "r"))
    c = compile_graph(g)
    assert np.isclose(c.unitary[0, 0], np.exp(0.75j))


def test_duplicate_id():
    g = PortGraph().add_element(comp.mirror(), "m")
    with pytest.raises(DuplicateIdError):
        g.add_element(comp.mirror(), "m", loc=(3, 4))


def test_unknown_port_and_element():
    g = PortGraph().add_element(comp.mirror(), "m")
    with pytest.raises(UnknownPortError):
        g.add_input(("m", "q"))
    with pytest.raises(UnknownPortError):
        g.connect(("m", "p"), ("x", "p"))


def test_already_wired_and_self_wire():
    g = PortGraph().add_element(comp.phase_shifter(0), "p").add_element(comp.mirror(), "m")
    g.add_element(comp.mirror(), "m2")
    g.connect(("p", "l"), ("m", "p"))
    with pytest.raises(AlreadyWiredError):
        g.connect(("p", "l"), ("m2", "p"))
    with pytest.raises(AlreadyWiredError):
        g.connect(("p", "r"), ("p", "r"))
    with pytest.raises(AlreadyWiredError):
        g.add_input(("m", "p"))


def test_external_port_cannot_be_wired():
    g = PortGraph().add_element(comp.phase_shifter(0), "p").add_element(comp.mirror(), "m")
    g.add_input(("p", "l"))
    with pytest.raises(AlreadyWiredError):
        g.connect(("p", "l"), ("m", "p"))


def test_dangling_port_carries_location():
    g = PortGraph().add_element(comp.phase_shifter(0), "p", loc=(2, 5))
    g.add_input(("p", "l"))
    with pytest.raises(DanglingPortError) as info:
        compile_graph(g)
    assert info.value.loc == (2, 5)


def test_resonant_loop_is_rejected():
    g = PortGraph("cavity").add_element(comp.grover_four_port(), "g")
    g.add_element(comp.mirror(), "mb").add_element(comp.mirror(), "mc")
    g.connect(("g", "b"), ("mb", "p"))
    g.connect(("g", "c"), ("mc", "p"))
    g.add_external(("g", "a")).add_external(("g", "d"))
    with pytest.raises(CycleError) as info:
        compile_graph(g)
    assert info.value.modes


def test_loop_cancelled_by_interference_is_accepted():
    c = build_not_D().compiled
    assert c.feed_forward == "interference"
    assert is_unitary(c.unitary, 1e-10)


def test_undeclared_output_reached_is_non_unitary():
    g = PortGraph().add_element(comp.phase_shifter(0), "p")
    g.add_input(("p", "l")).add_input(("p", "r"))
    with pytest.raises(NonUnitaryError):
        compile_graph(g)


def test_unused_input_region_is_ignored():
    # a port that only receives light is output-only, which is fine
    g = PortGraph().add_element(comp.beam_splitter("e"), "bs")
    g.add_input(("bs", "c"))
    for p in "def":
        g.add_output(("bs", p))
    c = compile_graph(g)
    assert c.unitary.shape == (3, 1)
    assert is_unitary(c.unitary)


def test_polarized_labels():
    g = PortGraph().add_element(comp.polarizing_beam_splitter(), "pbs")
    g.add_input(("pbs", "l"))
    for p in "rst":
        g.add_output(("pbs", p))
    c = compile_graph(g)
    assert c.input_modes == ("pbs.l:H", "pbs.l:V")
    out = dict(zip(c.output_modes, c.unitary[:, 1]))
    assert np.isclose(out["pbs.s:V"], 1)


def test_series_adds_phases():
    a, b = shifter_line(0.1, "a"), shifter_line(0.2, "b")
    g = series(a, b, [(("p", "r"), ("p", "l"))])
    c = compile_graph(g)
    i, o = c.input_modes.index("x_p.l"), c.output_modes.index("y_p.r")
    assert np.isclose(c.unitary[o, i], np.exp(0.3j))


def test_apply_and_reorder():
    c = compile_graph(shifter_line(math.pi / 2))
    out = c.apply(SinglePhotonState(np.array([1, 0]), c.input_modes))
    assert np.isclose(out.amplitude("p.r"), 1j)
    r = c.reordered(outputs=("p.r", "p.l"))
    assert np.isclose(r.unitary[0, 0], 1j)
    with pytest.raises(ValueError):
        c.reordered(inputs=("p.l",))
    with pytest.raises(ValueError):
        c.apply(SinglePhotonState(np.array([1.0]), ("x",)))


def test_same_as():
    assert shifter_line(0.1).same_as(shifter_line(0.1))
    assert not shifter_line(0.1).same_as(shifter_line(0.2))


@given(st.lists(st.floats(-7, 7), min_size=1, max_size=6), st.booleans())
def test_random_chains_are_unitary(phis, use_bs):
    g = PortGraph("chain")
    prev = None
    for k, phi in enumerate(phis):
        g.add_element(comp.phase_shifter(phi), f"p{k}")
        if prev is not None:
            g.connect(prev, (f"p{k}", "l"))
        prev = (f"p{k}", "r")
    g.add_external(("p0", "l")).add_external(prev)
    c = compile_graph(g)
    assert is_unitary(c.unitary, 1e-10)
    assert np.isclose(c.unitary[1, 0], np.exp(1j * sum(phis)))
