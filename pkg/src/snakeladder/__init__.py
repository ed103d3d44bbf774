"""Snakes and ladders as an absorbing Markov chain: finish times, pairwise edges,
intransitive triangles, Monte Carlo cross-checks, and intransitive dice."""

__version__ = "0.1.0"
