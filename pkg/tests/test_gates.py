import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symqubit import gates
from symqubit.gates import (
    GATES,
    LogicalLeakError,
    NotClassicalError,
    build_cnot_SD,
    build_hadamard_S,
    build_not_D,
    build_not_S,
    equal_up_to_global_phase,
    equal_up_to_row_phases,
    extract_logical_unitary,
    truth_table,
    verify_gate,
)
from symqubit.photon_state import from_logical, to_logical


def bits_after(gate, s, d):
    ls = to_logical(gate.apply(from_logical(None, s, d)))
    return ls.bits(int(np.argmax(ls.probabilities())))


@pytest.mark.parametrize("name", [n for n, s in GATES.items() if s.n_phases == 0])
def test_every_fixed_gate_verifies(name):
    v = verify_gate(name)
    assert v["pass"], v
    assert v["max_error"] < 1e-8


@given(st.floats(-math.pi, math.pi))
@settings(max_examples=20)
def test_phase_gate_any_angle(phi):
    assert verify_gate("phase_s", (phi,))["pass"]


def test_verify_rejects_bad_input():
    with pytest.raises(KeyError):
        verify_gate("nope")
    with pytest.raises(ValueError):
        verify_gate("programmable", (0.0,))


def test_not_s_flips_symmetry_only():
    for s in (0, 1):
        for d in (0, 1):
            assert bits_after(build_not_S(), s, d) == (1 - s, d)


def test_not_d_flips_direction_only():
    assert bits_after(build_not_D(), 0, 0) == (0, 1)
    for s in (0, 1):
        for d in (0, 1):
            assert bits_after(build_not_D(), s, d) == (s, 1 - d)


def test_grover_truth_table_and_signs():
    t = truth_table(build_cnot_SD())
    assert t.mapping() == {(0, 0): (0, 0), (0, 1): (0, 1), (1, 0): (1, 1), (1, 1): (1, 0)}
    assert [round(np.angle(v[1]) / math.pi) for v in t.rows.values()] == [0, 0, 1, 1]
    assert t.is_reversible()


def test_hadamard_is_not_classical():
    with pytest.raises(NotClassicalError):
        truth_table(build_hadamard_S())


def test_toffoli_fredkin_tables():
    tt = truth_table(gates.build_toffoli())
    assert tt.qubits == ("P", "S", "D")
    assert tt.mapping()[(1, 1, 0)] == (1, 1, 1)
    assert tt.mapping()[(0, 1, 0)] == (0, 1, 0)
    ft = truth_table(gates.build_fredkin())
    assert ft.mapping()[(1, 0, 1)] == (1, 1, 0)
    assert ft.mapping()[(0, 0, 1)] == (0, 0, 1)


def test_programmable_is_block_diagonal():
    u = extract_logical_unitary(gates.build_programmable(0.3, -1.1, 2.0, 0.7))
    assert np.allclose(u[:4, 4:], 0) and np.allclose(u[4:, :4], 0)


def test_programmable_printed_cases_exact():
    for phases, printed in gates.PRINTED_PROGRAMMABLE.values():
        u = extract_logical_unitary(gates.build_programmable(*phases))
        cmp = gates.compare_printed(u, printed)
        assert cmp.exact and cmp.max_error < 1e-12


def test_pauli_s_y_is_transposed_for_left_movers():
    u = extract_logical_unitary(gates.build_pauli_S("Y"))
    fwd = u[np.ix_([0, 2], [0, 2])]
    back = u[np.ix_([1, 3], [1, 3])]
    assert equal_up_to_global_phase(fwd, gates.PAULI["Y"])[0]
    assert equal_up_to_global_phase(back, gates.PAULI["Y"].T)[0]


def test_fixed_block_leak_detected():
    with pytest.raises(LogicalLeakError):
        extract_logical_unitary(build_cnot_SD(), {"D": 0})


def test_comparisons():
    u = np.diag([1, 1j])
    ok, theta = equal_up_to_global_phase(np.exp(0.4j) * u, u)
    assert ok and math.isclose(theta, 0.4)
    assert not equal_up_to_global_phase(np.diag([1, -1]), np.eye(2))[0]
    ok, row = equal_up_to_row_phases(np.diag([1, -1]), np.eye(2))
    assert ok and np.allclose(row, [1, -1])
    assert not equal_up_to_row_phases(np.array([[0, 1], [1, 0]]), np.eye(2))[0]


def test_compose_orders_stages():
    g = gates.compose("x", gates.build_swap_SD(), build_not_S())
    u = extract_logical_unitary(g)
    ref = gates.on_S(gates.PAULI["X"]) @ gates.SWAP
    assert equal_up_to_global_phase(u, ref)[0]
    assert not equal_up_to_global_phase(u, gates.SWAP @ gates.on_S(gates.PAULI["X"]))[0]
    with pytest.raises(ValueError):
        gates.compose("one", build_not_S())


def test_pauli_builders_reject_unknown():
    with pytest.raises(ValueError):
        gates.build_pauli_S("Q")
    with pytest.raises(ValueError):
        gates.build_pauli_D("Q")


def test_permutation_gate():
    assert np.array_equal(gates.CNOT_SD @ gates.CNOT_SD, np.eye(4))
    assert np.array_equal(gates.TOFFOLI[6:, 6:], [[0, 1], [1, 0]])
