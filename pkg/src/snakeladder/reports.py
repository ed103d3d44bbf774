"""CSV and JSON renderings of analysis results.

Floats are written with ``repr`` (shortest round-trip form), so identical
inputs give byte-identical reports.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import numpy as np

from .chain import DurationProfile
from .compete import Triangle, WinMatrix
from .dice import DuelResult, Die
from .simulate import DurationHistogram, EdgeEstimate

EDGE_COLUMNS = ["i", "j", "win", "loss", "draw", "edge", "stderr", "method", "games", "seed"]
TRIANGLE_COLUMNS = ["i", "j", "k", "edge_ij", "edge_jk", "edge_ki", "c"]


def _num(x):
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def expectations_records(states, truncated, exact=None):
    out = []
    for n, sq in enumerate(states):
        rec = {"state": sq, "expected_moves": float(truncated[n])}
        if exact is not None:
            rec["expected_moves_exact"] = float(exact[n])
        out.append(rec)
    return out


def profile_rows(profile: DurationProfile, s_cap: int):
    s_cap = min(s_cap, profile.s_max)
    for n, sq in enumerate(profile.states):
        for s in range(s_cap + 1):
            yield sq, s, float(profile.f[n, s]), float(profile.g[n, s])


def matrix_csv(win: WinMatrix, which: str) -> str:
    m = {"Q": win.Q, "X": win.X, "draw": win.draw}[which]
    rows = ([sq, *map(float, m[n])] for n, sq in enumerate(win.states))
    return to_csv(["state", *win.states], rows)


def matrix_json(win: WinMatrix, which: str) -> str:
    m = {"Q": win.Q, "X": win.X, "draw": win.draw}[which]
    return to_json({"matrix": which, "s_max": win.s_max, "states": list(win.states),
                    "values": m.tolist()})


def triangles_csv(tris: list[Triangle]) -> str:
    return to_csv(TRIANGLE_COLUMNS, ([r[c] for c in TRIANGLE_COLUMNS] for r in map(Triangle.as_record, tris)))


def triangles_json(tris: list[Triangle]) -> str:
    return to_json([t.as_record() for t in tris])


def histogram_csv(hist: DurationHistogram) -> str:
    return to_csv(["state", "duration", "count"], hist.rows())


def edge_record(i, j, est: EdgeEstimate, method: str, games: int, seed: int) -> dict:
    return {"i": i, "j": j, "win": est.win, "loss": est.loss, "draw": est.draw, "edge": est.edge,
            "stderr": est.stderr, "method": method, "games": games, "seed": seed}


def edges_csv(records) -> str:
    return to_csv(EDGE_COLUMNS, ([r[c] for c in EDGE_COLUMNS] for r in records))


def duel_record(a: Die, b: Die, r: DuelResult, ok: bool) -> dict:
    return {
        "a": a.label, "b": b.label,
        "win": str(r.win), "draw": str(r.draw), "loss": str(r.loss), "edge": str(r.edge),
        "win_approx": float(r.win), "draw_approx": float(r.draw),
        "loss_approx": float(r.loss), "edge_approx": float(r.edge),
        "pair_ok": ok,
    }


DUEL_COLUMNS = ["a", "b", "win", "draw", "loss", "edge",
                "win_approx", "draw_approx", "loss_approx", "edge_approx", "pair_ok"]


def duels_csv(records) -> str:
    return to_csv(DUEL_COLUMNS, ([r[c] for c in DUEL_COLUMNS] for r in records))
