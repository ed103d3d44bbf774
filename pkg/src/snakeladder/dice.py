"""Intransitive dice with exact rational probabilities.

By default the higher face wins a duel. Pass ``lower_wins=True`` to score
dice the way game durations are scored, where the smaller number wins;
``complement`` converts between the two views.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence


class DiceError(ValueError):
    pass


@dataclass(frozen=True)
class Die:
    faces: tuple[tuple[int, Fraction], ...]
    label: str = ""

    def __post_init__(self):
        faces = tuple((int(v), Fraction(p)) for v, p in self.faces)
        if not faces:
            raise DiceError("a die needs at least one face")
        if any(p <= 0 for _, p in faces):
            raise DiceError(f"die {self.label!r}: face probabilities must be positive")
        if sum(p for _, p in faces) != 1:
            raise DiceError(f"die {self.label!r}: face probabilities must sum to 1")
        object.__setattr__(self, "faces", faces)

    @classmethod
    def fair(cls, values: Iterable[int], label: str = "") -> "Die":
        values = list(values)
        return cls(tuple((v, Fraction(1, len(values))) for v in values), label)

    @classmethod
    def weighted(cls, pairs, label: str = "") -> "Die":
        return cls(tuple((v, Fraction(p)) for v, p in pairs), label)

    @property
    def values(self) -> list[int]:
        return [v for v, _ in self.faces]

    def __str__(self):
        body = ", ".join(f"{v}:{p}" for v, p in self.faces)
        return f"{self.label}({body})" if self.label else f"({body})"


@dataclass(frozen=True)
class DuelResult:
    win: Fraction
    draw: Fraction
    loss: Fraction

    @property
    def edge(self) -> Fraction:
        return self.win - self.loss


def duel(a: Die, b: Die, *, lower_wins: bool = False) -> DuelResult:
    win = draw = loss = Fraction(0)
    for va, pa in a.faces:
        for vb, pb in b.faces:
            p = pa * pb
            if va == vb:
                draw += p
            elif (va < vb) == lower_wins:
                win += p
            else:
                loss += p
    return DuelResult(win, draw, loss)


class CycleMode(enum.Enum):
    STRICT_MAJORITY = "strict"
    POSITIVE_EDGE = "edge"


def pair_qualifies(result: DuelResult, mode: CycleMode) -> bool:
    if mode is CycleMode.STRICT_MAJORITY:
        return result.win > Fraction(1, 2)
    return result.edge > 0


def verify_cycle(dice: Sequence[Die], mode: CycleMode = CycleMode.POSITIVE_EDGE, *,
                 lower_wins: bool = False) -> tuple[list[DuelResult], bool]:
    """Duel each die against the next one (wrapping) and test the cycle condition."""
    if len(dice) < 3:
        raise DiceError(f"a cycle needs at least 3 dice, got {len(dice)}")
    mode = CycleMode(mode)
    results = [duel(a, b, lower_wins=lower_wins) for a, b in zip(dice, [*dice[1:], dice[0]])]
    return results, all(pair_qualifies(r, mode) for r in results)


def complement(die: Die, c: int) -> Die:
    """Replace each face value ``v`` by ``c - v``; this reverses every duel."""
    return Die(tuple((c - v, p) for v, p in die.faces), die.label)


def probability_grid(max_denominator: int) -> list[Fraction]:
    """All fractions strictly between 0 and 1 with denominator at most ``max_denominator``."""
    return sorted({Fraction(n, d) for d in range(2, max_denominator + 1) for n in range(1, d)})


def candidate_dice(faces: int, values: Sequence[int], max_denominator: int):
    """Dice with ``faces`` distinct values from ``values`` and grid probabilities.

    Faces are listed in increasing value order. The last probability is
    whatever remains and is not itself restricted to the grid.
    """
    grid = probability_grid(max_denominator)
    for vals in itertools.combinations(sorted(set(values)), faces):
        if faces == 1:
            yield Die(((vals[0], Fraction(1)),))
            continue
        for probs in itertools.product(grid, repeat=faces - 1):
            rest = 1 - sum(probs)
            if rest > 0:
                yield Die(tuple(zip(vals, (*probs, rest))))


def search_cycles(face_counts: Sequence[int], values: Sequence[int], max_denominator: int,
                  mode: CycleMode = CycleMode.POSITIVE_EDGE, *, lower_wins: bool = False) -> list[list[Die]]:
    """Exhaustively search three-dice configurations for intransitive cycles.

    ``face_counts`` gives the number of faces of dice A, B and C. Both
    orientations A->B->C and A->C->B are tried; each hit is returned in the
    order that beats cyclically, in deterministic enumeration order.
    """
    if len(face_counts) != 3:
        raise ValueError("search_cycles handles exactly three dice")
    mode = CycleMode(mode)
    pools = [list(candidate_dice(k, values, max_denominator)) for k in face_counts]
    memo = {}

    def ok(x: int, a: Die, y: int, b: Die) -> bool:
        key = (x, id(a), y, id(b))
        if key not in memo:
            memo[key] = pair_qualifies(duel(a, b, lower_wins=lower_wins), mode)
        return memo[key]

    labelled = [[(n, d) for d in pool] for n, pool in enumerate(pools)]
    hits = []
    for (_, a), (_, b), (_, c) in itertools.product(*labelled):
        for order in ((0, a, 1, b, 2, c), (0, a, 2, c, 1, b)):
            x, p, y, q, z, r = order
            if ok(x, p, y, q) and ok(y, q, z, r) and ok(z, r, x, p):
                hits.append([Die(p.faces, "ABC"[x]), Die(q.faces, "ABC"[y]), Die(r.faces, "ABC"[z])])
    return hits


def search_112(values: Sequence[int] = range(1, 7), max_denominator: int = 12, *,
               lower_wins: bool = False) -> list[list[Die]]:
    """Two one-faced dice and one two-faced die: any positive-edge cycle? (Expected: none.)"""
    return search_cycles((1, 1, 2), values, max_denominator, CycleMode.POSITIVE_EDGE, lower_wins=lower_wins)


def search_122(values: Sequence[int] = range(1, 5), max_denominator: int = 9, *,
               lower_wins: bool = False) -> list[list[Die]]:
    return search_cycles((1, 2, 2), values, max_denominator, CycleMode.POSITIVE_EDGE, lower_wins=lower_wins)


# Dice-set documents:
#   {"wins": "higher" | "lower",
#    "dice": [{"label": "A", "faces": [2, 6, 7]},
#             {"label": "B", "faces": [[1, "1/3"], [3, "2/3"]]}]}
# A bare integer face is fair; all faces of a die must use the same form.

@dataclass(frozen=True)
class DiceSet:
    dice: tuple[Die, ...]
    lower_wins: bool = False
    name: str = ""


def _parse_die(doc, n: int) -> Die:
    if not isinstance(doc, dict) or "faces" not in doc:
        raise DiceError(f"die #{n + 1}: expected an object with 'faces'")
    label = str(doc.get("label", "ABCDEFGHIJKLMNOPQRSTUVWXYZ"[n % 26]))
    faces = doc["faces"]
    if not isinstance(faces, list) or not faces:
        raise DiceError(f"die {label!r}: 'faces' must be a non-empty list")
    if all(isinstance(f, int) and not isinstance(f, bool) for f in faces):
        return Die.fair(faces, label)
    pairs = []
    for f in faces:
        if not (isinstance(f, list) and len(f) == 2 and isinstance(f[0], int)):
            raise DiceError(f"die {label!r}: faces must all be integers or all be [value, probability] pairs")
        try:
            prob = Fraction(str(f[1]))
        except (ValueError, ZeroDivisionError):
            raise DiceError(f"die {label!r}: bad probability {f[1]!r}") from None
        pairs.append((f[0], prob))
    return Die.weighted(pairs, label)


def load_dice(text: str, name: str = "") -> DiceSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiceError(f"malformed dice document: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("dice"), list):
        raise DiceError("dice document must be an object with a 'dice' list")
    wins = doc.get("wins", "higher")
    if wins not in ("higher", "lower"):
        raise DiceError(f"'wins' must be 'higher' or 'lower', got {wins!r}")
    dice = tuple(_parse_die(d, n) for n, d in enumerate(doc["dice"]))
    return DiceSet(dice, wins == "lower", str(doc.get("name", name)))


BUNDLED_DICE = ("paper-three-face", "paper-233", "paper-ties", "paper-weighted")


def read_dice(source: str | Path) -> DiceSet:
    path = Path(source)
    if path.is_file():
        return load_dice(path.read_text(), path.stem)
    key = str(source).removeprefix("dicesets/")
    if key in BUNDLED_DICE:
        text = resources.files("snakeladder").joinpath("dicesets").joinpath(f"{key}.json").read_text()
        return load_dice(text, key)
    raise FileNotFoundError(f"dice file not found: {source}")
