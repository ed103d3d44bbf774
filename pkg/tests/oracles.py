"""Independent reference computations used by the tests.

None of these go through the chain's transition matrix or the numpy
recursion: they walk the board rule by rule with exact fractions or plain
Python floats.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from snakeladder.board import Board, resolve_move


def walk(board: Board, start: int, rolls) -> int | None:
    """Step at which a roll sequence finishes from ``start`` (None if it doesn't)."""
    sq = start
    if sq == board.finish:
        return 0
    for n, r in enumerate(rolls, start=1):
        sq = resolve_move(board, sq, r)
        if sq == board.finish:
            return n
    return None


def finished_within_bruteforce(board: Board, start: int, s: int) -> Fraction:
    """P(finished within s steps) by enumerating all 6**s roll sequences."""
    hits = sum(1 for rolls in itertools.product(range(1, 7), repeat=s)
               if walk(board, start, rolls) is not None)
    return Fraction(hits, 6**s)


def expected_moves_exact(board: Board) -> dict[int, Fraction]:
    """Solve E[i] = 1 + mean_r E[next(i, r)] by Gauss-Jordan elimination over fractions."""
    states = [sq for sq in board.resting_squares() if sq != board.finish]
    pos = {sq: n for n, sq in enumerate(states)}
    n = len(states)
    rows = []
    for sq in states:
        row = [Fraction(0)] * (n + 1)
        row[pos[sq]] += 1
        row[n] = Fraction(1)
        for r in range(1, 7):
            nxt = resolve_move(board, sq, r)
            if nxt != board.finish:
                row[pos[nxt]] -= Fraction(1, 6)
        rows.append(row)
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    out = {sq: rows[pos[sq]][n] for sq in states}
    out[board.finish] = Fraction(0)
    return out


def duration_distribution(board: Board, start: int, tol: float = 1e-15, limit: int = 100_000):
    """Exact-at-step float distribution of finish time, by pushing a dict of masses square by square."""
    mass = {start: 1.0}
    f = [1.0 if start == board.finish else 0.0]
    if start == board.finish:
        return f, 0.0
    while sum(mass.values()) > tol and len(f) < limit:
        nxt = {}
        for sq, m in mass.items():
            for r in range(1, 7):
                t = resolve_move(board, sq, r)
                nxt[t] = nxt.get(t, 0.0) + m / 6
        f.append(nxt.pop(board.finish, 0.0))
        mass = nxt
    return f, sum(mass.values())


def q_bruteforce(board: Board, tol: float = 1e-15) -> dict[tuple[int, int], float]:
    """Q[i, j] as an explicit double sum over the joint (independent) durations."""
    dists = {sq: duration_distribution(board, sq, tol) for sq in board.resting_squares()}
    q = {}
    for i, (fi, _) in dists.items():
        for j, (fj, tail_j) in dists.items():
            total = 0.0
            for a, pa in enumerate(fi):
                later = sum(fj[a + 1:]) + tail_j
                total += pa * later
            q[i, j] = total
    return q


def best_min_edge_bruteforce(states, x) -> tuple[float, list[tuple[int, int, int]]]:
    """Max over ordered distinct triples of the smallest edge, and every triple attaining it."""
    best, arg = float("-inf"), []
    for i, j, k in itertools.permutations(states, 3):
        c = min(x[i, j], x[j, k], x[k, i])
        if c > best:
            best, arg = c, [(i, j, k)]
        elif c == best:
            arg.append((i, j, k))
    return best, arg
