"""Absorbing Markov chain of a board and its finish-time distributions."""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

from .board import DIE_FACES, Board, resolve_move

DEFAULT_SMAX = 1000
TAIL_WARN = 1e-9


class UnreachableFinishError(ValueError):
    pass


@dataclass(frozen=True)
class GameChain:
    """States, the dense transition matrix, and the per-roll successor table.

    ``successors[i, r-1]`` is the dense index reached from state ``i`` with
    roll ``r``; the absorbing row maps to itself.
    """

    board: Board
    states: tuple[int, ...]
    index_of: dict
    transition: np.ndarray
    successors: np.ndarray
    absorbing_index: int

    @property
    def n_states(self) -> int:
        return len(self.states)

    def transient_indices(self) -> np.ndarray:
        return np.array([i for i in range(self.n_states) if i != self.absorbing_index], dtype=int)

    def index(self, square: int) -> int:
        try:
            return self.index_of[square]
        except KeyError:
            raise ValueError(f"square {square} is not a state of this chain") from None


def build_chain(board: Board) -> GameChain:
    states = tuple(board.resting_squares())
    index_of = {sq: i for i, sq in enumerate(states)}
    n = len(states)
    finish = index_of[board.finish]
    successors = np.empty((n, DIE_FACES), dtype=np.intp)
    counts = np.zeros((n, n), dtype=np.int64)
    for i, sq in enumerate(states):
        if i == finish:
            successors[i, :] = finish
        else:
            for roll in range(1, DIE_FACES + 1):
                successors[i, roll - 1] = index_of[resolve_move(board, sq, roll)]
        np.add.at(counts[i], successors[i], 1)
    transition = counts / DIE_FACES
    transition.setflags(write=False)
    successors.setflags(write=False)
    return GameChain(board, states, index_of, transition, successors, finish)


@dataclass(frozen=True)
class DurationProfile:
    """Finish-time distribution of every state up to a horizon.

    ``f[i, s]`` is the probability that a game from state ``i`` ends at
    exactly step ``s``; ``g[i, s]`` that it has ended within ``s`` steps.
    """

    states: tuple[int, ...]
    s_max: int
    f: np.ndarray
    g: np.ndarray
    tail: np.ndarray

    def row(self, square: int) -> int:
        return self.states.index(square)


def absorption_profile(chain: GameChain, s_max: int = DEFAULT_SMAX) -> DurationProfile:
    """Run the one-step recursion ``g(s) = A g(s-1)`` out to ``s_max``.

    The recursion is carried on the survival vector ``u = 1 - g`` so that
    tails far below machine epsilon relative to 1 are kept exactly; each
    step averages ``u`` over the six successors of every state. Floating
    addition is monotone, so ``u`` is nonincreasing and ``f`` never negative.
    """
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    n = chain.n_states
    u = np.empty((n, s_max + 1))
    u[:, 0] = 1.0
    u[chain.absorbing_index, 0] = 0.0
    succ = chain.successors
    for s in range(1, s_max + 1):
        u[:, s] = u[succ, s - 1].sum(axis=1) / DIE_FACES
    f = np.zeros_like(u)
    f[:, 1:] = u[:, :-1] - u[:, 1:]
    f[:, 0] = 1.0 - u[:, 0]
    g = 1.0 - u
    tail = u[:, s_max].copy()
    for arr in (f, g, tail):
        arr.setflags(write=False)
    return DurationProfile(chain.states, s_max, f, g, tail)


def expected_durations(profile: DurationProfile) -> np.ndarray:
    """Truncated mean finish time per state, ``sum_s s * f[i, s]``."""
    worst = float(profile.tail.max())
    if worst > TAIL_WARN:
        warnings.warn(
            f"unfinished mass up to {worst:.3g} at s_max={profile.s_max}; "
            "expected durations are underestimated",
            RuntimeWarning,
            stacklevel=2,
        )
    steps = np.arange(profile.s_max + 1)
    return profile.f @ steps


def check_reachability(chain: GameChain) -> None:
    """Raise if some state cannot reach the finish."""
    preds = [[] for _ in range(chain.n_states)]
    for i in range(chain.n_states):
        for j in set(chain.successors[i].tolist()):
            preds[j].append(i)
    seen = {chain.absorbing_index}
    queue = deque(seen)
    while queue:
        j = queue.popleft()
        for i in preds[j]:
            if i not in seen:
                seen.add(i)
                queue.append(i)
    stuck = [chain.states[i] for i in range(chain.n_states) if i not in seen]
    if stuck:
        raise UnreachableFinishError(
            f"finish square {chain.board.finish} is unreachable from square(s) {stuck}"
        )


def fundamental_matrix(chain: GameChain) -> np.ndarray:
    """``N = (I - Q_t)^-1`` over transient states, ordered as ``transient_indices()``."""
    check_reachability(chain)
    t = chain.transient_indices()
    q = chain.transition[np.ix_(t, t)]
    return np.linalg.inv(np.eye(len(t)) - q)


def expected_durations_exact(chain: GameChain) -> np.ndarray:
    """Mean finish time per state by solving ``(I - Q_t) E = 1``."""
    check_reachability(chain)
    t = chain.transient_indices()
    q = chain.transition[np.ix_(t, t)]
    e = np.zeros(chain.n_states)
    e[t] = np.linalg.solve(np.eye(len(t)) - q, np.ones(len(t)))
    return e


def return_probability(chain: GameChain, square: int) -> float:
    """Probability that a game now on ``square`` visits it again before finishing.

    The visit count from ``square`` is geometric with this parameter, so
    ``N[i, i] = 1 / (1 - p)``.
    """
    i = chain.index(square)
    if i == chain.absorbing_index:
        raise ValueError(f"square {square} is the absorbing finish, not transient")
    t = chain.transient_indices().tolist()
    n = fundamental_matrix(chain)
    k = t.index(i)
    return 1.0 - 1.0 / n[k, k]
