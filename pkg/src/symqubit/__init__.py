"""Linear-optical gates on symmetry, direction and polarization qubits."""

__version__ = "0.1.0"
