"""Monte Carlo engines that cross-check the exact chain results.

Games run vectorised over numpy arrays, but each game draws its rolls from
its own counter-based stream (see :mod:`snakeladder.rng`), so results do not
depend on how games are batched. Game ``g`` started from square ``s`` uses
stream ``(GAME, s, g)``; the paired-games estimator uses ``(PAIR_FIRST, i, g)``
and ``(PAIR_SECOND, j, g)`` so that ``i == j`` still gives independent players.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .board import Board, resolve_move
from .chain import GameChain, build_chain
from .rng import DieStream, rolls_array, stream_keys

DEFAULT_SEED = 697973
STEP_CAP = 10**6
CHUNK = 100_000

GAME, PAIR_FIRST, PAIR_SECOND = 0, 1, 2


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RngSeed:
    seed: int = DEFAULT_SEED
    stream: int = 0


def play_game(board: Board, start: int, rng: RngSeed = RngSeed(), cap: int = STEP_CAP) -> list[int]:
    """Path of one game from ``start`` to the finish, both ends included.

    This is game number ``rng.stream`` of the per-start simulation from
    ``start``; it replays the same rolls as the vectorised engine.
    """
    if not board.is_resting(start):
        raise ValueError(f"square {start} is not a resting square")
    die = DieStream(rng.seed, GAME, start, rng.stream)
    path = [start]
    sq = start
    while sq != board.finish:
        if len(path) > cap:
            raise SimulationError(f"game from {start} exceeded {cap} steps")
        sq = resolve_move(board, sq, die.roll())
        path.append(sq)
    return path


def _run_games(chain: GameChain, start: int, keys: np.ndarray, cap: int,
               record: bool = False, watch: int | None = None):
    """Play one game per key from ``start``.

    Returns durations, the per-step log ``[(game ids, dense states), ...]``
    of states occupied before each roll (if ``record``), and per-game visit
    counts of the square ``watch`` (start included).
    """
    n = len(keys)
    finish = chain.absorbing_index
    succ = chain.successors
    pos = np.full(n, chain.index(start), dtype=np.intp)
    dur = np.zeros(n, dtype=np.int64)
    visits = None
    if watch is not None:
        w = chain.index(watch)
        visits = (pos == w).astype(np.int64)
    log = []
    active = np.flatnonzero(pos != finish)
    step = 0
    while active.size:
        if step >= cap:
            raise SimulationError(f"games from {start} exceeded {cap} steps; is the board malformed?")
        here = pos[active]
        if record:
            log.append((active, here))
        nxt = succ[here, rolls_array(keys[active], step) - 1]
        pos[active] = nxt
        step += 1
        if visits is not None:
            visits[active] += nxt == w
        done = nxt == finish
        dur[active[done]] = step
        active = active[~done]
    return dur, log, visits


def _chunks(games: int, chunk: int):
    for lo in range(0, games, chunk):
        yield np.arange(lo, min(games, lo + chunk), dtype=np.uint64)


@dataclass
class DurationHistogram:
    """Duration sample counts per start square: ``counts[square][s]``."""

    counts: dict[int, np.ndarray] = field(default_factory=dict)

    def add(self, square: int, durations: np.ndarray) -> None:
        self.add_counts(square, np.bincount(durations))

    def add_counts(self, square: int, counts: np.ndarray) -> None:
        counts = np.asarray(counts, dtype=np.int64)
        old = self.counts.get(square)
        if old is None:
            self.counts[square] = counts.copy()
            return
        size = max(len(old), len(counts))
        merged = np.zeros(size, dtype=np.int64)
        merged[: len(old)] += old
        merged[: len(counts)] += counts
        self.counts[square] = merged

    def merged(self, other: "DurationHistogram") -> "DurationHistogram":
        out = DurationHistogram()
        for h in (self, other):
            for sq, c in h.counts.items():
                out.add_counts(sq, c)
        return out

    def total(self, square: int) -> int:
        c = self.counts.get(square)
        return 0 if c is None else int(c.sum())

    @property
    def totals(self) -> dict[int, int]:
        return {sq: int(c.sum()) for sq, c in sorted(self.counts.items())}

    @property
    def max_duration(self) -> int:
        return max((int(np.flatnonzero(c).max()) for c in self.counts.values() if c.any()), default=0)

    def mean(self, square: int) -> float:
        c = self.counts[square]
        return float(np.arange(len(c)) @ c) / c.sum()

    def rows(self):
        """``(square, duration, count)`` for every nonzero bucket, sorted."""
        for sq in sorted(self.counts):
            c = self.counts[sq]
            for d in np.flatnonzero(c):
                yield sq, int(d), int(c[d])

    def __eq__(self, other):
        if not isinstance(other, DurationHistogram):
            return NotImplemented
        return list(self.rows()) == list(other.rows())


def simulate_per_start(board: Board, starts, games_per_start: int, seed: int = DEFAULT_SEED,
                       cap: int = STEP_CAP, chunk: int = CHUNK) -> DurationHistogram:
    """One duration sample per independent game, ``games_per_start`` games from each start."""
    if games_per_start < 1:
        raise ValueError("games_per_start must be at least 1")
    chain = build_chain(board)
    hist = DurationHistogram()
    for start in starts:
        chain.index(start)
        for ids in _chunks(games_per_start, chunk):
            dur, _, _ = _run_games(chain, start, stream_keys(seed, (GAME, start), ids), cap)
            hist.add(start, dur)
    return hist


def simulate_trajectory_reuse(board: Board, games: int, seed: int = DEFAULT_SEED,
                              cap: int = STEP_CAP, chunk: int = CHUNK) -> DurationHistogram:
    """Games from square 0; each visit ``v_t`` of an ``n``-step game yields sample ``n - t``.

    The final visit to the finish contributes nothing, so a game of ``n``
    rolls contributes exactly ``n`` samples.
    """
    if games < 1:
        raise ValueError("games must be at least 1")
    chain = build_chain(board)
    n_states = chain.n_states
    hist = DurationHistogram()
    for ids in _chunks(games, chunk):
        dur, log, _ = _run_games(chain, 0, stream_keys(seed, (GAME, 0), ids), cap, record=True)
        width = int(dur.max()) + 1
        flat = np.zeros(n_states * width, dtype=np.int64)
        for t, (active, states) in enumerate(log):
            remaining = dur[active] - t
            flat += np.bincount(states * width + remaining, minlength=n_states * width)
        flat = flat.reshape(n_states, width)
        for i, sq in enumerate(chain.states):
            if flat[i].any():
                hist.add_counts(sq, flat[i])
    return hist


@dataclass(frozen=True)
class EdgeEstimate:
    win: float
    loss: float
    draw: float
    stderr: float | None = None

    @property
    def edge(self) -> float:
        return self.win - self.loss


def edge_from_histograms(hist: DurationHistogram, i: int, j: int) -> EdgeEstimate:
    """Compare every sample of ``i`` with every sample of ``j`` through their histograms.

    Shorter duration wins. No standard error: the pairwise comparisons
    share samples and are not independent.
    """
    hi, hj = hist.counts.get(i), hist.counts.get(j)
    if hi is None or hi.sum() == 0 or hj is None or hj.sum() == 0:
        raise ValueError(f"no samples for square {i if hi is None or hi.sum() == 0 else j}")
    size = max(len(hi), len(hj))
    a = np.zeros(size, dtype=object)
    b = np.zeros(size, dtype=object)
    a[: len(hi)] = [int(v) for v in hi]
    b[: len(hj)] = [int(v) for v in hj]
    ni, nj = sum(a), sum(b)
    below_b = np.cumsum(b)  # samples of j with duration <= s
    below_a = np.cumsum(a)
    wins = sum(a * (nj - below_b))
    losses = sum(b * (ni - below_a))
    draws = sum(a * b)
    total = ni * nj
    return EdgeEstimate(wins / total, losses / total, draws / total)


def edge_paired_games(board: Board, i: int, j: int, games: int, seed: int = DEFAULT_SEED,
                      cap: int = STEP_CAP, chunk: int = CHUNK) -> EdgeEstimate:
    """Play ``games`` independent (i, j) pairs and score each one.

    The standard error is that of the mean per-pair score (+1, 0, -1).
    """
    if games < 2:
        raise ValueError("paired estimation needs at least 2 games")
    chain = build_chain(board)
    wins = losses = 0
    for ids in _chunks(games, chunk):
        di, _, _ = _run_games(chain, i, stream_keys(seed, (PAIR_FIRST, i), ids), cap)
        dj, _, _ = _run_games(chain, j, stream_keys(seed, (PAIR_SECOND, j), ids), cap)
        wins += int(np.count_nonzero(di < dj))
        losses += int(np.count_nonzero(di > dj))
    draws = games - wins - losses
    mean = (wins - losses) / games
    var = (wins + losses - games * mean * mean) / (games - 1)
    return EdgeEstimate(wins / games, losses / games, draws / games, math.sqrt(max(var, 0.0) / games))


class VisitMethod(enum.Enum):
    PER_START = "per-start"
    TRAJECTORY_REUSE = "trajectory"


@dataclass(frozen=True)
class VisitCounts:
    """Empirical distribution of K, the number of visits from a sampled visit onward.

    ``counts[k]`` is the number of samples with ``K == k`` (``counts[0]`` is 0).
    """

    square: int
    method: VisitMethod
    games: int
    counts: np.ndarray

    @property
    def samples(self) -> int:
        return int(self.counts.sum())

    @property
    def empty(self) -> bool:
        return self.samples == 0


def visit_count_samples(board: Board, square: int, games: int, seed: int = DEFAULT_SEED,
                        method: VisitMethod = VisitMethod.PER_START,
                        cap: int = STEP_CAP, chunk: int = CHUNK) -> VisitCounts:
    """Sample the visit count K to ``square`` under one of the two sampling schemes.

    ``PER_START`` starts each game on ``square`` and records its total
    visits. ``TRAJECTORY_REUSE`` starts from 0 and, for a game visiting
    ``t`` times, records ``t, t-1, ..., 1``, one per visit.
    """
    method = VisitMethod(method)
    chain = build_chain(board)
    if chain.index(square) == chain.absorbing_index:
        raise ValueError("visit counts need a transient square")
    start = square if method is VisitMethod.PER_START else 0
    per_game = np.zeros(1, dtype=np.int64)
    for ids in _chunks(games, chunk):
        _, _, visits = _run_games(chain, start, stream_keys(seed, (GAME, start), ids), cap, watch=square)
        c = np.bincount(visits)
        if len(c) > len(per_game):
            c[: len(per_game)] += per_game
            per_game = c
        else:
            per_game[: len(c)] += c
    per_game[0] = 0
    if method is VisitMethod.PER_START:
        counts = per_game
    else:
        # A game with t visits contributes one sample at each k <= t.
        counts = np.cumsum(per_game[::-1])[::-1].copy()
        counts[0] = 0
    if counts.sum() == 0:
        warnings.warn(f"square {square} was never visited in {games} games", RuntimeWarning, stacklevel=2)
    return VisitCounts(square, method, games, counts)


def geometric_identity(p: float, k: int) -> tuple[float, float]:
    """Both sides of the size-biased sampling identity for visit counts.

    Left: the fraction of all sampled visits that are k-th-last, i.e.
    ``sum_{t>=k} p^(t-1)(1-p) / sum_{t>=1} t p^(t-1)(1-p)`` in closed form
    ``p^(k-1) / (1/(1-p))``. Right: the geometric law ``p^(k-1)(1-p)``.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if k < 1:
        raise ValueError("k must be a positive integer")
    numerator = p ** (k - 1)
    denominator = 1.0 / (1.0 - p)
    return numerator / denominator, p ** (k - 1) * (1.0 - p)
