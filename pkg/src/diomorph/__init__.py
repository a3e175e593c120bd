"""diomorph: compile polynomial pairs into word-morphism and integer-matrix
encodings and test equation solvability against a Diophantine oracle."""

__version__ = "0.1.0"
