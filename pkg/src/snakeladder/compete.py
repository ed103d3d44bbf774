"""Pairwise win probabilities under the fair-round rule, and intransitive triangles.

A player on square ``i`` beats one on ``j`` when ``i`` finishes in a
strictly earlier round; finishing in the same round is a draw.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .chain import TAIL_WARN, DurationProfile


@dataclass(frozen=True)
class WinMatrix:
    states: tuple[int, ...]
    Q: np.ndarray
    X: np.ndarray
    draw: np.ndarray
    s_max: int

    def index(self, square: int) -> int:
        try:
            return self.states.index(square)
        except ValueError:
            raise ValueError(f"square {square} is not a state of this matrix") from None

    def q(self, i: int, j: int) -> float:
        return float(self.Q[self.index(i), self.index(j)])

    def x(self, i: int, j: int) -> float:
        return float(self.X[self.index(i), self.index(j)])

    def reordered(self, order) -> "WinMatrix":
        """Same matrix with rows and columns permuted to the given square order."""
        idx = [self.index(sq) for sq in order]
        grid = np.ix_(idx, idx)
        return WinMatrix(tuple(order), self.Q[grid], self.X[grid], self.draw[grid], self.s_max)


def win_matrix_from_q(states, Q: np.ndarray, s_max: int = 0) -> WinMatrix:
    Q = np.asarray(Q, dtype=float)
    X = Q - Q.T
    draw = 1.0 - Q - Q.T
    for arr in (Q, X, draw):
        arr.setflags(write=False)
    return WinMatrix(tuple(states), Q, X, draw, s_max)


def win_matrix(profile: DurationProfile) -> WinMatrix:
    """``Q[i, j] = sum_s f_i(s) (1 - g_j(s))`` for every pair of states.

    The sum of per-step outer products is a single matrix product.
    """
    worst = float(profile.tail.max())
    if worst > TAIL_WARN:
        warnings.warn(
            f"unfinished mass up to {worst:.3g} at s_max={profile.s_max}; Q is underestimated",
            RuntimeWarning,
            stacklevel=2,
        )
    Q = profile.f @ (1.0 - profile.g).T
    return win_matrix_from_q(profile.states, Q, profile.s_max)


@dataclass(frozen=True)
class Triangle:
    i: int
    j: int
    k: int
    edge_ij: float
    edge_jk: float
    edge_ki: float

    @property
    def c(self) -> float:
        return min(self.edge_ij, self.edge_jk, self.edge_ki)

    @property
    def squares(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def as_record(self) -> dict:
        return {
            "i": self.i, "j": self.j, "k": self.k,
            "edge_ij": self.edge_ij, "edge_jk": self.edge_jk, "edge_ki": self.edge_ki,
            "c": self.c,
        }


def _oriented(win: WinMatrix, a: int, b: int, c: int) -> Triangle:
    """Triangle for the cycle a->b->c->a, rotated to start at its smallest square."""
    sq = [win.states[a], win.states[b], win.states[c]]
    idx = [a, b, c]
    r = sq.index(min(sq))
    i, j, k = idx[r:] + idx[:r]
    X = win.X
    return Triangle(
        win.states[i], win.states[j], win.states[k],
        float(X[i, j]), float(X[j, k]), float(X[k, i]),
    )


def _min_edges(X: np.ndarray) -> np.ndarray:
    """``C[i, j, k] = min(X[i,j], X[j,k], X[k,i])``, with -inf where indices repeat."""
    n = X.shape[0]
    C = np.minimum(np.minimum(X[:, :, None], X[None, :, :]), X.T[:, None, :])
    r = np.arange(n)
    C[r, r, :] = -np.inf
    C[r, :, r] = -np.inf
    C[:, r, r] = -np.inf
    return C


def best_triangle(win: WinMatrix) -> Triangle:
    """Cycle i->j->k->i maximising the smallest of its three edges.

    Returned even when that edge is not positive. Ties go to the
    lexicographically smallest (i, j, k) after rotating each cycle to start
    at its smallest square.
    """
    n = len(win.states)
    if n < 3:
        raise ValueError("a triangle needs at least 3 states")
    C = _min_edges(win.X)
    best = C.max()
    tied = np.argwhere(C == best)
    return min((_oriented(win, *map(int, t)) for t in tied), key=lambda tri: tri.squares)


def triangles_above(win: WinMatrix, c_min: float) -> list[Triangle]:
    """Every cycle whose three edges are all at least ``c_min``, once per rotation class.

    Sorted by decreasing ``c``, then by squares.
    """
    if len(win.states) < 3:
        return []
    C = _min_edges(win.X)
    found = {}
    for t in np.argwhere(C >= c_min):
        tri = _oriented(win, *map(int, t))
        found[tri.squares] = tri
    return sorted(found.values(), key=lambda tri: (-tri.c, tri.squares))
