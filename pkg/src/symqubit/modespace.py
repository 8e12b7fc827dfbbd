"""Mode labels, basis orderings and the rail/symmetry change of basis.

Physical amplitudes on a dual-rail wire are ordered lexicographically by
(rail, direction, polarization).  Logical amplitudes use the order
HSR, HSL, HAR, HAL, VSR, VSL, VAR, VAL, i.e. index ``4P + 2S + D``; the
polarization-blind logical space keeps only ``2S + D``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

SQRT1_2 = 1.0 / np.sqrt(2.0)

ATOL = 1e-10
UNITARY_ATOL = 1e-12


class Direction(enum.IntEnum):
    R = 0
    L = 1


class Polarization(enum.IntEnum):
    H = 0
    V = 1


class Rail(enum.IntEnum):
    a = 0
    b = 1


@dataclass(frozen=True, order=True)
class DirectedMode:
    """One optical mode: a rail of a wire, a travel direction, a polarization.

    ``polarization`` is ``None`` in polarization-blind circuits.
    """

    wire: str
    rail: Rail
    direction: Direction
    polarization: Optional[Polarization] = None

    def __str__(self) -> str:
        pol = "" if self.polarization is None else ":" + self.polarization.name
        return f"{self.wire}.{self.rail.name}{self.direction.name}{pol}"


LOGICAL_LABELS = ("HSR", "HSL", "HAR", "HAL", "VSR", "VSL", "VAR", "VAL")
LOGICAL_LABELS_BLIND = ("SR", "SL", "AR", "AL")


def _check_bit(x: int, name: str) -> int:
    if x not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {x!r}")
    return int(x)


def logical_index(p: int, s: int, d: int) -> int:
    """Position of the (P, S, D) basis state in the 8-dim logical ordering."""
    return 4 * _check_bit(p, "p") + 2 * _check_bit(s, "s") + _check_bit(d, "d")


def logical_bits(index: int, polarized: bool = True) -> tuple[int, ...]:
    """Inverse of :func:`logical_index`; returns (P, S, D) or (S, D)."""
    n = 8 if polarized else 4
    if not 0 <= index < n:
        raise ValueError(f"logical index {index} out of range for {n} states")
    bits = ((index >> 2) & 1, (index >> 1) & 1, index & 1)
    return bits if polarized else bits[1:]


def mod2_total(bits: Sequence[int]) -> int:
    """XOR of all per-photon bits; the distributed value of S or D."""
    if len(bits) == 0:
        raise ValueError("mod-2 total of an empty list is undefined")
    total = 0
    for b in bits:
        total ^= _check_bit(b, "bit")
    return total


@functools.lru_cache(maxsize=None)
def _hadamard2() -> np.ndarray:
    return SQRT1_2 * np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)


def symmetry_change_of_basis(n_rail_pairs: int) -> np.ndarray:
    """Block-diagonal map from (a, b) rail amplitudes to (S, A) amplitudes.

    Rail pairs are assumed adjacent: ``(a0, b0, a1, b1, ...)``.  The matrix
    is real, symmetric and its own inverse.
    """
    if n_rail_pairs < 1:
        raise ValueError("need at least one rail pair")
    return np.kron(np.eye(n_rail_pairs), _hadamard2())


def wire_modes(wire: str, polarized: bool) -> tuple[DirectedMode, ...]:
    """All directed modes of a dual-rail wire in (rail, direction, pol) order."""
    pols: tuple[Optional[Polarization], ...] = (
        (Polarization.H, Polarization.V) if polarized else (None,)
    )
    return tuple(
        DirectedMode(wire, r, d, p) for r in Rail for d in Direction for p in pols
    )


def wire_to_logical(polarized: bool) -> np.ndarray:
    """Unitary taking wire amplitudes (rail, dir, pol) to logical amplitudes.

    Row ``4P + 2S + D`` (or ``2S + D``) holds the physical rail vector of that
    logical state; the matrix is real orthogonal.
    """
    npol = 2 if polarized else 1
    ndir = 2
    n = 2 * ndir * npol
    h = _hadamard2().real
    out = np.zeros((n, n))
    for s in range(2):
        for d in range(ndir):
            for p in range(npol):
                row = (4 * p if polarized else 0) + 2 * s + d
                for r in range(2):
                    col = (r * ndir + d) * npol + p
                    out[row, col] = h[s, r]
    return out.astype(complex)


def is_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    """True when the columns of ``u`` are orthonormal (an isometry)."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] < u.shape[1]:
        return False
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1])), initial=0.0)
    return bool(err < atol)
