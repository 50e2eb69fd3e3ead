"""Kochen-Specker magic arrays over q qubits: symbolic proof, classical bounds, quantum values."""

__version__ = "0.1.0"
