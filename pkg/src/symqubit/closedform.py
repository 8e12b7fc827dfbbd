"""Closed-form matrices for the four-phase programmable device.

All matrices use the (SR, SL, AR, AL) ordering per polarization block, so
the full device matrix is in the HSR..VAL logical order.  The numerically
compiled circuit is the reference; the closed forms as originally printed
are reproduced literally (``printed_*``) and checked against it by
:func:`erratum_report`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .modespace import wire_to_logical


@dataclass(frozen=True)
class PhaseQuad:
    phi1: float
    phi2: float
    phi3: float
    phi4: float

    def __post_init__(self):
        if not all(math.isfinite(p) for p in self.as_tuple()):
            raise ValueError("phases must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.phi1, self.phi2, self.phi3, self.phi4)

    @property
    def phi(self) -> float:
        return 0.5 * (self.phi1 + self.phi2)

    @property
    def phi_doubleprime(self) -> float:
        return 0.5 * (self.phi3 + self.phi4)

    @property
    def left_half(self) -> float:
        """Half of the total rail-b phase met on the V path left of the Grover."""
        return 0.5 * (self.phi1 + self.phi3)

    @property
    def right_half(self) -> float:
        return 0.5 * (self.phi2 + self.phi4)


def grover_SA_matrix() -> np.ndarray:
    """Grover four-port on (SR, SL, AR, AL): S passes, A reflects with -1."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], dtype=complex
    )


def phase_segment_matrix(phi: float) -> np.ndarray:
    """Rail-b phase shifter written in the (SR, SL, AR, AL) basis.

    Built directly: diag phase on the rail basis, conjugated by the
    rail -> logical change of basis.
    """
    t = wire_to_logical(False)
    # wire order (rail, direction): aR, aL, bR, bL
    d = np.diag([1.0, 1.0, np.exp(1j * phi), np.exp(1j * phi)])
    return t @ d @ t.T


def half_angle_segment(phi: float) -> np.ndarray:
    """Same matrix as :func:`phase_segment_matrix` as an explicit formula."""
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return np.exp(0.5j * phi) * np.array(
        [[c, 0, -1j * s, 0], [0, c, 0, -1j * s], [-1j * s, 0, c, 0], [0, -1j * s, 0, c]]
    )


def segment_U2GU1(phi1: float, phi2: float) -> np.ndarray:
    """Formal product U(phi2) G U(phi1) of the first-principles matrices.

    This treats the three pieces as a sequence of operators; it is not the
    scattering matrix of the physical segment, where reflected light passes
    U(phi1) twice (see :func:`v_block`).
    """
    return phase_segment_matrix(phi2) @ grover_SA_matrix() @ phase_segment_matrix(phi1)


# --- device blocks, traced from the circuit layout --------------------------------

def _q(theta: float) -> np.ndarray:
    """Rail-b phase theta as a 2x2 map on (S, A); symmetric, so direction-free."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.exp(0.5j * theta) * np.array([[c, -1j * s], [-1j * s, c]])


_PS = np.diag([1.0, 0.0])
_PA = np.diag([0.0, 1.0])


def _assemble(rr, rl, lr, ll) -> np.ndarray:
    """4x4 (SR, SL, AR, AL) matrix from 2x2 (S, A) blocks out<-in by direction."""
    u = np.zeros((4, 4), dtype=complex)
    for (dout, din), blk in {(0, 0): rr, (1, 0): rl, (0, 1): lr, (1, 1): ll}.items():
        for so in range(2):
            for si in range(2):
                u[2 * so + dout, 2 * si + din] = blk[so, si]
    return u


def h_block(q: PhaseQuad) -> np.ndarray:
    """Horizontal light passes both outer shifters and nothing else."""
    qh = _q(q.phi3 + q.phi4)
    return _assemble(qh, np.zeros((2, 2)), np.zeros((2, 2)), qh)


def v_block(q: PhaseQuad) -> np.ndarray:
    """Vertical light: left phases, Grover, right phases.

    S transmits through the Grover; A reflects with -1 and crosses the same
    side's shifters again on the way out.
    """
    ql, qr = _q(q.phi1 + q.phi3), _q(q.phi2 + q.phi4)
    rr = qr @ _PS @ ql
    rl = -ql @ _PA @ ql
    ll = ql @ _PS @ qr
    lr = -qr @ _PA @ qr
    return _assemble(rr, rl, lr, ll)


def programmable_closed_form(q: PhaseQuad) -> np.ndarray:
    """8x8 logical matrix of the programmable device, H block then V block.

    The H block is e^{i phi''} A with phi'' = (phi3 + phi4) / 2.  The V block
    has the printed B structure once its angles are taken as the half phase
    sums on either side of the Grover, with prefactor e^{i(phi + phi')}.
    """
    u = np.zeros((8, 8), dtype=complex)
    u[:4, :4] = np.exp(1j * q.phi_doubleprime) * printed_A(q.phi_doubleprime)
    a, b = q.left_half, q.right_half
    u[4:, 4:] = np.exp(1j * (a + b)) * printed_B(a, b)
    return u


# --- the closed forms as printed -------------------------------------------------

def printed_phase_segment(phi: float, half_angle: bool = False, fix_entry: bool = False) -> np.ndarray:
    """U_j as printed: e^{i phi/2} with c = cos(phi), s = sin(phi), entry (3,3) = s.

    ``half_angle`` uses cos(phi/2), sin(phi/2); ``fix_entry`` puts c at (3,3).
    """
    ang = phi / 2 if half_angle else phi
    c, s = math.cos(ang), math.sin(ang)
    return np.exp(0.5j * phi) * np.array(
        [[c, 0, -1j * s, 0], [0, c, 0, -1j * s],
         [-1j * s, 0, c if fix_entry else s, 0], [0, -1j * s, 0, c]]
    )


def printed_U2GU1(phi1: float, phi2: float, half_angle: bool = False) -> np.ndarray:
    a1, a2 = (phi1 / 2, phi2 / 2) if half_angle else (phi1, phi2)
    c1, s1, c2, s2 = math.cos(a1), math.sin(a1), math.cos(a2), math.sin(a2)
    m = np.array([
        [c1 * c2, s1 * s2, -1j * c2 * s1, 1j * s2 * c1],
        [s1 * s2, c1 * c2, 1j * s2 * c1, -1j * c2 * s1],
        [-1j * s2 * c1, 1j * c2 * s1, -s1 * s2, -c2 * c1],
        [1j * c2 * s1, -1j * s2 * c1, -c1 * c2, -s1 * s2],
    ])
    return np.exp(0.5j * (phi1 + phi2)) * m


def printed_A(phi_dp: float) -> np.ndarray:
    c, s = math.cos(phi_dp), math.sin(phi_dp)
    return np.array(
        [[c, 0, -1j * s, 0], [0, c, 0, -1j * s], [-1j * s, 0, c, 0], [0, -1j * s, 0, c]]
    )


def printed_B(phi: float, phi_p: float) -> np.ndarray:
    c, s, cp, sp = math.cos(phi), math.sin(phi), math.cos(phi_p), math.sin(phi_p)
    em, ep = np.exp(-1j * (phi - phi_p)), np.exp(1j * (phi - phi_p))
    return np.array([
        [c * cp, sp**2 * em, -1j * s * cp, 1j * cp * sp * em],
        [s**2 * ep, c * cp, 1j * s * c * ep, -1j * c * sp],
        [-1j * c * sp, 1j * sp * cp * em, -s * sp, -cp**2 * em],
        [1j * s * c * ep, -1j * s * cp, -c**2 * ep, -s * sp],
    ])


def printed_programmable(q: PhaseQuad) -> np.ndarray:
    """U_total exactly as printed: phi = (phi1+phi2)/2, phi' = phi'' = (phi3+phi4)/2."""
    u = np.zeros((8, 8), dtype=complex)
    dp = q.phi_doubleprime
    u[:4, :4] = np.exp(1j * dp) * printed_A(dp)
    u[4:, 4:] = np.exp(1j * q.phi) * printed_B(q.phi, dp)
    return u


# --- erratum report --------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    claim: str
    holds: bool
    max_error: float
    note: str = ""


def _max_err(f: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]], samples) -> float:
    return max(float(np.max(np.abs(a - b))) for a, b in (f(x) for x in samples))


def _phase_err(a: np.ndarray, b: np.ndarray) -> float:
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    r = a[k] / b[k]
    return float(np.max(np.abs(a - r / abs(r) * b))) if abs(r) > 0 else float(np.max(np.abs(a)))


# candidate readings of the printed phi, phi' (functions of phi1..phi4)
ANGLE_CANDIDATES: dict[str, Callable[[PhaseQuad], float]] = {
    "(phi1+phi2)/2": lambda q: 0.5 * (q.phi1 + q.phi2),
    "(phi3+phi4)/2": lambda q: 0.5 * (q.phi3 + q.phi4),
    "(phi1+phi3)/2": lambda q: 0.5 * (q.phi1 + q.phi3),
    "(phi2+phi4)/2": lambda q: 0.5 * (q.phi2 + q.phi4),
    "(phi1+phi4)/2": lambda q: 0.5 * (q.phi1 + q.phi4),
    "(phi2+phi3)/2": lambda q: 0.5 * (q.phi2 + q.phi3),
}


def resolve_B_angles(oracle: Callable[[PhaseQuad], np.ndarray], samples) -> list[tuple[str, str]]:
    """Readings (phi, phi') under which e^{i.}B matches the oracle's V block up to phase."""
    hits = []
    for (na, fa), (nb, fb) in itertools.product(ANGLE_CANDIDATES.items(), repeat=2):
        if na == nb:
            continue
        err = max(_phase_err(oracle(q)[4:, 4:], printed_B(fa(q), fb(q))) for q in samples)
        if err < 1e-8:
            hits.append((na, nb))
    return hits


def erratum_report(oracle: Optional[Callable[[PhaseQuad], np.ndarray]] = None,
                    n_samples: int = 25, seed: int = 0) -> list[Finding]:
    """Check each printed closed form against first principles / the oracle.

    ``oracle`` maps a PhaseQuad to the compiled 8x8 logical matrix; by
    default the circuit compiler is used.
    """
    if oracle is None:
        from .gates import build_programmable, extract_logical_unitary

        oracle = lambda q: extract_logical_unitary(build_programmable(*q.as_tuple()))  # noqa: E731
    rng = np.random.default_rng(seed)
    quads = [PhaseQuad(*rng.uniform(-math.pi, math.pi, 4)) for _ in range(n_samples)]
    angles = [q.phi1 for q in quads]
    pairs = [(q.phi1, q.phi2) for q in quads]
    out = []

    from .gates import build_cnot_SD, extract_logical_unitary

    err = float(np.max(np.abs(extract_logical_unitary(build_cnot_SD()) - grover_SA_matrix())))
    out.append(Finding("G equals the compiled Grover four-port", err < 1e-10, err))

    for half, fix in ((False, False), (True, False), (True, True)):
        e = _max_err(lambda p: (printed_phase_segment(p, half, fix), phase_segment_matrix(p)), angles)
        label = "U_j as printed" if not (half or fix) else (
            "U_j with half-angle c_j, s_j" + (" and (3,3) entry c_j" if fix else ""))
        out.append(Finding(f"{label} equals the rail-b phase shifter", e < 1e-10, e))

    for half in (False, True):
        e = _max_err(lambda p: (printed_U2GU1(*p, half_angle=half), segment_U2GU1(*p)), pairs)
        out.append(Finding(
            "U2 G U1 closed form" + (" (half angles)" if half else " as printed")
            + " equals the product of first-principles factors", e < 1e-10, e))

    e = max(_phase_err(oracle(q)[:4, :4], np.exp(1j * q.phi_doubleprime) * printed_A(q.phi_doubleprime))
            for q in quads)
    out.append(Finding("e^{i phi''} A equals the compiled H block", e < 1e-8, e))

    e = max(float(np.max(np.abs(oracle(q) - printed_programmable(q)))) for q in quads)
    out.append(Finding("U_total as printed equals the compiled device", e < 1e-8, e))
    e = max(_phase_err(oracle(q)[4:, 4:], printed_B(q.phi, q.phi_doubleprime)) for q in quads)
    out.append(Finding("B with phi=(phi1+phi2)/2, phi'=(phi3+phi4)/2 matches the V block up to phase",
                       e < 1e-8, e))
    hits = resolve_B_angles(oracle, quads[:8])
    out.append(Finding("some reading of (phi, phi') makes B match the V block", bool(hits), 0.0,
                       "; ".join(f"phi={a}, phi'={b}" for a, b in hits) or "none found"))
    e = max(float(np.max(np.abs(oracle(q) - programmable_closed_form(q)))) for q in quads)
    out.append(Finding("resolved closed form (prefactor e^{i(phi+phi')}) equals the compiled device",
                       e < 1e-8, e))
    return out
