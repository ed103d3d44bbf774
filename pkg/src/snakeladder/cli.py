"""Command-line front end: ``snakeladder <subcommand> ...``.

Reports go to standard output as CSV unless ``--format json`` is given;
``--out PATH`` writes them to a file instead.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import reports
from .board import BoardError, read_board
from .chain import DEFAULT_SMAX, absorption_profile, build_chain, expected_durations, expected_durations_exact
from .compete import best_triangle, triangles_above, win_matrix
from .dice import CycleMode, DiceError, pair_qualifies, read_dice, verify_cycle
from .simulate import (DEFAULT_SEED, SimulationError, edge_from_histograms, edge_paired_games,
                       simulate_per_start, simulate_trajectory_reuse)

DEFAULT_BOARD = "paper-figure2"
DEFAULT_CMIN = 0.005


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _states(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad state list {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _profile(args):
    board = read_board(args.board)
    chain = build_chain(board)
    return board, chain, absorption_profile(chain, args.smax)


def cmd_expectations(args) -> None:
    board, chain, profile = _profile(args)
    if args.profile is not None:
        rows = reports.profile_rows(profile, args.profile)
        if args.format == "json":
            text = reports.to_json([dict(zip(("state", "s", "f", "g"), r)) for r in rows])
        else:
            text = reports.to_csv(["state", "s", "f", "g"], rows)
        _emit(text, args.out)
        return
    truncated = expected_durations(profile)
    exact = expected_durations_exact(chain)
    recs = reports.expectations_records(chain.states, truncated, exact)
    if args.format == "json":
        text = reports.to_json(recs)
    else:
        cols = ["state", "expected_moves", "expected_moves_exact"]
        text = reports.to_csv(cols, ([r[c] for c in cols] for r in recs))
    _emit(text, args.out)


def cmd_winmatrix(args) -> None:
    _, _, profile = _profile(args)
    win = win_matrix(profile)
    text = reports.matrix_json(win, args.matrix) if args.format == "json" else reports.matrix_csv(win, args.matrix)
    _emit(text, args.out)


def cmd_cycles(args) -> None:
    _, _, profile = _profile(args)
    win = win_matrix(profile)
    tris = [best_triangle(win)] if args.best else triangles_above(win, args.cmin)
    text = reports.triangles_json(tris) if args.format == "json" else reports.triangles_csv(tris)
    _emit(text, args.out)


def _pairs(states: list[int]) -> list[tuple[int, int]]:
    if len(states) == 2:
        return [(states[0], states[1])]
    return list(zip(states, [*states[1:], states[0]]))


def cmd_simulate(args) -> None:
    board = read_board(args.board)
    states = args.states
    if len(states) < 2:
        raise SystemExit("error: --states needs at least two squares")
    records = []
    hist = None
    if args.method == "paired":
        if args.games < 2:
            raise SystemExit("error: the paired method needs --games of at least 2")
        for i, j in _pairs(states):
            est = edge_paired_games(board, i, j, args.games, args.seed)
            records.append(reports.edge_record(i, j, est, args.method, args.games, args.seed))
    else:
        if args.method == "per-start":
            hist = simulate_per_start(board, states, args.games, args.seed)
        else:
            hist = simulate_trajectory_reuse(board, args.games, args.seed)
        for i, j in _pairs(states):
            if hist.total(i) == 0 or hist.total(j) == 0:
                print(f"warning: no samples for pair ({i}, {j}); skipped", file=sys.stderr)
                continue
            est = edge_from_histograms(hist, i, j)
            records.append(reports.edge_record(i, j, est, args.method, args.games, args.seed))
    text = reports.to_json(records) if args.format == "json" else reports.edges_csv(records)
    _emit(text, args.out)
    if args.histogram:
        if hist is None:
            raise SystemExit("error: --histogram is not available for the paired method")
        keep = set(states)
        sub = type(hist)({sq: c for sq, c in hist.counts.items() if sq in keep})
        Path(args.histogram).write_text(reports.histogram_csv(sub))


def cmd_dice(args) -> None:
    dset = read_dice(args.dice_file)
    lower = dset.lower_wins if args.wins is None else args.wins == "lower"
    mode = CycleMode(args.mode)
    results, cycle = verify_cycle(dset.dice, mode, lower_wins=lower)
    dice = dset.dice
    recs = [reports.duel_record(a, b, r, pair_qualifies(r, mode))
            for a, b, r in zip(dice, [*dice[1:], dice[0]], results)]
    if args.format == "json":
        text = reports.to_json({"name": dset.name, "wins": "lower" if lower else "higher",
                                "mode": mode.value, "cycle": cycle, "duels": recs})
    else:
        text = reports.duels_csv(recs)
    _emit(text, args.out)
    print(f"cycle ({mode.value}, {'lower' if lower else 'higher'} wins): {'yes' if cycle else 'no'}",
          file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snakeladder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, board=True):
        if board:
            p.add_argument("--board", default=DEFAULT_BOARD,
                           help="board file, or a bundled board name (default: %(default)s)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", help="write the report here instead of standard output")

    def smax(p):
        p.add_argument("--smax", type=_positive, default=DEFAULT_SMAX, help="truncation horizon")

    p = sub.add_parser("expectations", help="expected moves to finish from every state")
    common(p)
    smax(p)
    p.add_argument("--profile", type=int, metavar="S",
                   help="instead, emit f and g for every state and every s <= S")
    p.set_defaults(func=cmd_expectations)

    p = sub.add_parser("winmatrix", help="pairwise win, excess and draw matrices")
    common(p)
    smax(p)
    p.add_argument("--matrix", choices=["Q", "X", "draw"], default="Q")
    p.set_defaults(func=cmd_winmatrix)

    p = sub.add_parser("cycles", help="intransitive triangles of states")
    common(p)
    smax(p)
    p.add_argument("--cmin", type=float, default=DEFAULT_CMIN,
                   help="minimum edge on every side of a reported triangle (default: %(default)s)")
    p.add_argument("--best", action="store_true", help="report only the best triangle")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("simulate", help="Monte Carlo edge estimates between states")
    common(p)
    p.add_argument("--method", choices=["per-start", "trajectory", "paired"], default="per-start")
    p.add_argument("--states", type=_states, default=[69, 79, 73],
                   help="squares to compare, e.g. '69,79,73' (cyclic pairs)")
    p.add_argument("--games", type=_positive, default=100_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--histogram", metavar="PATH", help="also write the duration histogram CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("dice", help="duel a cycle of dice with exact fractions")
    common(p, board=False)
    p.add_argument("dice_file", help="dice JSON file, or a bundled set name")
    p.add_argument("--mode", choices=[m.value for m in CycleMode], default=CycleMode.POSITIVE_EDGE.value)
    p.add_argument("--wins", choices=["higher", "lower"], help="override the file's win direction")
    p.set_defaults(func=cmd_dice)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            args.func(args)
    except (FileNotFoundError, BoardError, DiceError, SimulationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
