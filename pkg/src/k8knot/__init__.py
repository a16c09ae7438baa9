"""Knot invariants of Hamiltonian cycles in straight-line spatial complete graphs."""

from .diagram import GaussCode, knot_diagram, link_diagram, linking_number, zeta_prime
from .embedding import Embedding
from .graph import complete_graph, hamiltonian_cycles, nu1, nu2, nu_audit
from .invariant import analyze, arf_witness, mu
from .knot import a2, a2_fast, arf, conway, fingerprint, flip_crossing, smooth_crossing

__version__ = "0.1.0"

__all__ = [
    "Embedding", "GaussCode", "a2", "a2_fast", "analyze", "arf", "arf_witness",
    "complete_graph", "conway", "fingerprint", "flip_crossing", "hamiltonian_cycles",
    "knot_diagram", "link_diagram", "linking_number", "mu", "nu1", "nu2", "nu_audit",
    "smooth_crossing", "zeta_prime",
]
