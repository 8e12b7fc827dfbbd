import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symqubit import components as comp
from symqubit.modespace import Rail, is_unitary


def test_grover_matrix():
    g = comp.grover_four_port()
    assert np.array_equal(g.matrix, 0.5 * (np.ones((4, 4)) - 2 * np.eye(4)))
    assert g.port_names == ("a", "b", "c", "d")


def test_grover_symmetric_transmits_antisymmetric_reflects():
    g = comp.grover_four_port().matrix
    s = np.array([1, 1, 0, 0]) / math.sqrt(2)
    a = np.array([1, -1, 0, 0]) / math.sqrt(2)
    assert np.allclose(g @ s, [0, 0, 1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert np.allclose(g @ a, -a)


def test_beam_splitter_dot_side():
    bs = comp.beam_splitter("e")
    s = np.array([1, 1]) / math.sqrt(2)
    a = np.array([1, -1]) / math.sqrt(2)
    fwd = np.array([[bs.transfer(src, dst) for src in "cd"] for dst in "ef"])
    assert np.allclose(fwd @ s, [1, 0])
    assert np.allclose(fwd @ a, [0, 1])
    bs_f = comp.beam_splitter("f")
    fwd_f = np.array([[bs_f.transfer(src, dst) for src in "cd"] for dst in "ef"])
    assert np.allclose(fwd_f @ s, [0, 1])
    assert bs.params == {"dot": 0.0} and bs_f.params == {"dot": 1.0}


def test_beam_splitter_twice_is_identity():
    bs = comp.beam_splitter("e")
    fwd = np.array([[bs.transfer(src, dst) for src in "cd"] for dst in "ef"])
    back = np.array([[bs.transfer(src, dst) for src in "ef"] for dst in "cd"])
    assert np.allclose(back @ fwd, np.eye(2))


def test_beam_splitter_bad_side():
    with pytest.raises(ValueError):
        comp.beam_splitter("x")


def test_pbs_routes_by_polarization():
    p = comp.polarizing_beam_splitter()
    assert p.polarized
    assert p.transfer("l", "r", 0) == 1 and p.transfer("l", "s", 0) == 0
    assert p.transfer("l", "s", 1) == 1 and p.transfer("l", "r", 1) == 0


def test_phase_shifter_single_and_dual():
    ps = comp.phase_shifter(0.3)
    assert np.isclose(ps.transfer("l", "r"), np.exp(0.3j))
    assert np.isclose(ps.transfer("r", "l"), np.exp(0.3j))
    dual = comp.phase_shifter(math.pi, Rail.b)
    assert np.isclose(dual.transfer("al", "ar"), 1)
    assert np.isclose(dual.transfer("bl", "br"), -1)


def test_mirror_and_circulator():
    m = comp.mirror()
    assert np.isclose(m.transfer("p", "p"), -1)
    assert np.isclose(comp.mirror(0.0).transfer("p", "p"), 1)
    c = comp.circulator()
    assert c.transfer("p1", "p2") == 1 and c.transfer("p2", "p3") == 1
    assert c.transfer("p3", "p1") == 1 and c.transfer("p2", "p1") == 0


def test_rotator_is_reciprocal():
    m = comp.polarization_rotator(0.4).matrix
    forward, backward = m[2:, :2], m[:2, 2:]
    assert np.allclose(backward, forward.T)
    assert np.allclose(forward, [[math.cos(0.4), -math.sin(0.4)], [math.sin(0.4), math.cos(0.4)]])


@given(st.floats(-10, 10), st.sampled_from([None, Rail.a, Rail.b]))
def test_phase_shifter_unitary(phi, rail):
    assert is_unitary(comp.phase_shifter(phi, rail).matrix, 1e-12)


@given(st.floats(-10, 10))
def test_rotator_unitary(theta):
    assert is_unitary(comp.polarization_rotator(theta).matrix, 1e-12)


def test_element_rejects_non_unitary():
    with pytest.raises(ValueError):
        comp.ScatteringElement("x", (comp.Port("p", "left"),), np.array([[2.0]]))


def test_make_element():
    assert comp.make_element("phase", {"phi": math.pi}).params["phi"] == math.pi
    assert comp.make_element("bs", {"dot": 1}).params["dot"] == 1.0
    with pytest.raises(KeyError):
        comp.make_element("bogus", {})
    with pytest.raises(ValueError):
        comp.make_element("phase", {})
    with pytest.raises(ValueError):
        comp.make_element("grover4", {"x": 1})
    with pytest.raises(ValueError):
        comp.make_element("phase", {"phi": 1, "rail": 3})


def test_same_as():
    assert comp.phase_shifter(1.0).same_as(comp.phase_shifter(1.0))
    assert not comp.phase_shifter(1.0).same_as(comp.phase_shifter(1.5))
