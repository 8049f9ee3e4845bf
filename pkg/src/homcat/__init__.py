"""homcat: exact homological algebra in morphism and submodule categories
over finite-dimensional local algebras, with oracle-verified almost split
sequences, horizontal linkage, and Auslander-Reiten translations."""

__version__ = "0.1.0"
