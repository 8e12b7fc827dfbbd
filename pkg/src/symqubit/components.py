"""Optical scattering elements.

Every element is a set of named ports.  Each port carries one incoming and
one outgoing mode (two of each when the element is polarization-resolved).
The scattering matrix maps incoming port modes to outgoing port modes, with
mode index ``port_index * npol + pol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .modespace import SQRT1_2, UNITARY_ATOL, Rail, is_unitary

KINDS = ("grover4", "beam_splitter", "pbs", "phase_shifter", "mirror", "circulator", "pol_rotator")


@dataclass(frozen=True)
class Port:
    name: str
    side: str  # "left" or "right"


@dataclass(frozen=True, eq=False)
class ScatteringElement:
    kind: str
    ports: tuple[Port, ...]
    matrix: np.ndarray
    params: Mapping[str, float] = field(default_factory=dict)
    polarized: bool = False

    def __post_init__(self):
        n = len(self.ports) * self.npol
        if self.matrix.shape != (n, n):
            raise ValueError(
                f"{self.kind}: matrix shape {self.matrix.shape} does not match {n} port modes"
            )
        if not is_unitary(self.matrix, UNITARY_ATOL):
            raise ValueError(f"{self.kind}: scattering matrix is not unitary")
        self.matrix.setflags(write=False)

    @property
    def npol(self) -> int:
        return 2 if self.polarized else 1

    @property
    def port_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.ports)

    def port_index(self, name: str) -> int:
        for i, p in enumerate(self.ports):
            if p.name == name:
                return i
        raise KeyError(f"{self.kind} has no port {name!r}")

    def transfer(self, src: str, dst: str, pol: int = 0) -> complex:
        """Amplitude for light entering at ``src`` to leave at ``dst``."""
        i, j = self.port_index(src), self.port_index(dst)
        return complex(self.matrix[j * self.npol + pol, i * self.npol + pol])

    def same_as(self, other: "ScatteringElement") -> bool:
        return (
            self.kind == other.kind
            and dict(self.params) == dict(other.params)
            and self.port_names == other.port_names
        )


def _ports(left: str, right: str) -> tuple[Port, ...]:
    return tuple(Port(n, "left") for n in left) + tuple(Port(n, "right") for n in right)


def grover_four_port() -> ScatteringElement:
    """Directionally unbiased four-port: -1/2 back out of the input, +1/2 elsewhere."""
    m = 0.5 * (np.ones((4, 4)) - 2.0 * np.eye(4))
    return ScatteringElement("grover4", _ports("ab", "cd"), m.astype(complex))


def beam_splitter(dot_side: str = "e") -> ScatteringElement:
    """50/50 splitter with dual-rail face (c, d) and single-rail face (e, f).

    ``dot_side`` names the single-rail port that carries the symmetric
    combination of c and d.  The reverse direction uses the transpose.
    """
    if dot_side not in ("e", "f"):
        raise ValueError("dot_side must be 'e' or 'f'")
    b = SQRT1_2 * np.array([[1.0, 1.0], [1.0, -1.0]])
    if dot_side == "f":
        b = b[::-1]
    m = np.zeros((4, 4), dtype=complex)
    m[2:, :2] = b
    m[:2, 2:] = b.T
    return ScatteringElement(
        "beam_splitter", (Port("c", "left"), Port("d", "left"), Port("e", "right"), Port("f", "right")),
        m, {"dot": 0.0 if dot_side == "e" else 1.0},
    )


def polarizing_beam_splitter() -> ScatteringElement:
    """PBS cube with main ports l, r and side ports s, t.

    H transmits (l <-> r, s <-> t); V reflects (l <-> s, r <-> t) with no extra
    phase.
    """
    ports = (Port("l", "left"), Port("r", "right"), Port("s", "right"), Port("t", "left"))
    pairs = {0: ((0, 1), (2, 3)), 1: ((0, 2), (1, 3))}
    m = np.zeros((8, 8), dtype=complex)
    for pol, links in pairs.items():
        for i, j in links:
            m[2 * j + pol, 2 * i + pol] = 1.0
            m[2 * i + pol, 2 * j + pol] = 1.0
    return ScatteringElement("pbs", ports, m, polarized=True)


def phase_shifter(phi: float, rail: Optional[Rail | str] = None) -> ScatteringElement:
    """Phase e^{i phi} on transmission, independent of direction.

    Without ``rail`` this is a single line with ports l, r.  With ``rail``
    it spans a dual-rail pair (ports al, bl, ar, br) and only the named rail
    picks up the phase.
    """
    if not math.isfinite(phi):
        raise ValueError("phase must be finite")
    ph = np.exp(1j * phi)
    if rail is None:
        m = np.array([[0, ph], [ph, 0]], dtype=complex)
        return ScatteringElement("phase_shifter", _ports("l", "r"), m, {"phi": float(phi)})
    rail = Rail[rail] if isinstance(rail, str) else Rail(rail)
    phases = (ph, 1.0) if rail == Rail.a else (1.0, ph)
    m = np.zeros((4, 4), dtype=complex)
    for r, p in enumerate(phases):
        m[2 + r, r] = p
        m[r, 2 + r] = p
    ports = (Port("al", "left"), Port("bl", "left"), Port("ar", "right"), Port("br", "right"))
    return ScatteringElement("phase_shifter", ports, m, {"phi": float(phi), "rail": float(rail)})


def mirror(reflection_phase: float = math.pi) -> ScatteringElement:
    """One-port retro-reflector."""
    m = np.array([[np.exp(1j * reflection_phase)]])
    return ScatteringElement("mirror", (Port("p", "left"),), m, {"phi": float(reflection_phase)})


def circulator() -> ScatteringElement:
    """Ideal three-port circulator: p1 -> p2 -> p3 -> p1."""
    m = np.zeros((3, 3), dtype=complex)
    m[1, 0] = m[2, 1] = m[0, 2] = 1.0
    ports = (Port("p1", "left"), Port("p2", "right"), Port("p3", "left"))
    return ScatteringElement("circulator", ports, m)


def polarization_rotator(theta: float) -> ScatteringElement:
    """Reciprocal rotation of the (H, V) pair on a single line (ports l, r)."""
    if not math.isfinite(theta):
        raise ValueError("rotation angle must be finite")
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s], [s, c]], dtype=complex)
    m = np.zeros((4, 4), dtype=complex)
    m[2:, :2] = rot
    m[:2, 2:] = rot.T
    return ScatteringElement("pol_rotator", _ports("l", "r"), m, {"theta": float(theta)}, polarized=True)


# DSL keyword -> (constructor, allowed params with defaults)
DSL_KINDS: dict[str, tuple[str, dict[str, Optional[float]]]] = {
    "grover4": ("grover4", {}),
    "bs": ("beam_splitter", {"dot": 0.0}),
    "pbs": ("pbs", {}),
    "phase": ("phase_shifter", {"phi": None, "rail": None}),
    "mirror": ("mirror", {"phi": math.pi}),
    "circ": ("circulator", {}),
    "rot": ("pol_rotator", {"theta": None}),
}
DSL_KEYWORD = {kind: kw for kw, (kind, _) in DSL_KINDS.items()}


def make_element(keyword: str, params: Mapping[str, float]) -> ScatteringElement:
    """Build an element from its DSL keyword and parameter map.

    Raises ``KeyError`` for an unknown keyword and ``ValueError`` for bad or
    missing parameters.
    """
    if keyword not in DSL_KINDS:
        raise KeyError(keyword)
    _, allowed = DSL_KINDS[keyword]
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise ValueError(f"unknown parameter '{unknown[0]}' for {keyword}")
    p = {k: params.get(k, default) for k, default in allowed.items()}
    if keyword == "grover4":
        return grover_four_port()
    if keyword == "bs":
        if p["dot"] not in (0.0, 1.0):
            raise ValueError("bs dot must be 0 (e) or 1 (f)")
        return beam_splitter("e" if p["dot"] == 0.0 else "f")
    if keyword == "pbs":
        return polarizing_beam_splitter()
    if keyword == "phase":
        if p["phi"] is None:
            raise ValueError("phase requires parameter 'phi'")
        if p["rail"] is not None and p["rail"] not in (0.0, 1.0):
            raise ValueError("phase rail must be 0 (a) or 1 (b)")
        return phase_shifter(p["phi"], None if p["rail"] is None else Rail(int(p["rail"])))
    if keyword == "mirror":
        return mirror(p["phi"])
    if keyword == "circ":
        return circulator()
    if p["theta"] is None:
        raise ValueError("rot requires parameter 'theta'")
    return polarization_rotator(p["theta"])
