"""Race-game boards: squares, snakes and ladders, and the overshoot rule.

A board is a strip of squares ``0..size``. Square 0 is the start (off the
board) and ``size`` is the finish. A *redirect* (a snake or a ladder) sends a
player who lands on its source square straight to its destination, so a
redirect source is never a resting position.

Two document formats are understood by :func:`load_board`:

* the canonical JSON document::

      {"name": "mini10", "size": 10, "overshoot": "reflect",
       "redirects": [[3, 7], [8, 2]]}

* a flat track: whitespace-separated integers where entry ``p`` (1-based) is
  the resting square reached by landing on ``p``. It has either ``size``
  entries or ``size + 5`` entries, the extra five being the resting squares
  for overshoots ``size+1 .. size+5`` under the reflecting rule.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

DIE_FACES = 6
# Largest possible overshoot is from size-1 with a roll of 6.
FLAT_OVERSHOOT_ENTRIES = DIE_FACES - 1


class BoardError(ValueError):
    """Raised for malformed or inconsistent board definitions."""


class Overshoot(enum.Enum):
    REFLECT = "reflect"
    STAY = "stay"
    FINISH = "finish"


@dataclass(frozen=True)
class Board:
    size: int
    redirects: Mapping[int, int] = field(default_factory=dict)
    overshoot: Overshoot = Overshoot.REFLECT
    name: str = ""

    def __post_init__(self):
        if isinstance(self.size, bool) or not isinstance(self.size, int) or self.size < 1:
            raise BoardError(f"board size must be a positive integer, got {self.size!r}")
        if not isinstance(self.overshoot, Overshoot):
            object.__setattr__(self, "overshoot", parse_overshoot(self.overshoot))
        redirects = {}
        for src, dst in dict(self.redirects).items():
            src, dst = int(src), int(dst)
            if src == 0:
                raise BoardError("square 0 (the start) cannot be a redirect source")
            if src == self.size:
                raise BoardError(f"square {self.size} (the finish) cannot be a redirect source")
            if not 1 <= src < self.size:
                raise BoardError(f"redirect source {src} outside 1..{self.size - 1}")
            if not 1 <= dst <= self.size:
                raise BoardError(f"redirect {src}->{dst}: destination outside 1..{self.size}")
            if src == dst:
                raise BoardError(f"redirect {src}->{dst} points at itself")
            redirects[src] = dst
        # Chains are allowed; cycles are not.
        for start in redirects:
            seen = {start}
            sq = redirects[start]
            while sq in redirects:
                if sq in seen:
                    raise BoardError(f"redirect cycle through square {sq}")
                seen.add(sq)
                sq = redirects[sq]
        object.__setattr__(self, "redirects", MappingProxyType(dict(sorted(redirects.items()))))

    @property
    def finish(self) -> int:
        return self.size

    def is_resting(self, square: int) -> bool:
        return 0 <= square <= self.size and square not in self.redirects

    def resting_squares(self) -> list[int]:
        """Every square a player can occupy, in increasing order (0 and finish included)."""
        return [sq for sq in range(self.size + 1) if sq not in self.redirects]

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "overshoot": self.overshoot.value,
            "redirects": [[src, dst] for src, dst in self.redirects.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_document(), indent=2) + "\n"

    def flat_track(self, overshoot_entries: bool = True) -> list[int]:
        """Resting square for each landing position 1..size, plus reflected overshoots."""
        track = [resting_square(self, p) for p in range(1, self.size + 1)]
        if overshoot_entries and self.overshoot is Overshoot.REFLECT:
            for raw in range(self.size + 1, self.size + FLAT_OVERSHOOT_ENTRIES + 1):
                track.append(resting_square(self, _apply_overshoot(self, self.size - 1, raw)))
        return track


def parse_overshoot(value) -> Overshoot:
    if isinstance(value, Overshoot):
        return value
    try:
        return Overshoot(str(value).lower())
    except ValueError:
        raise BoardError(
            f"unknown overshoot policy {value!r}; expected one of "
            + ", ".join(p.value for p in Overshoot)
        ) from None


def resting_square(board: Board, square: int) -> int:
    """Follow redirects from ``square`` until reaching a square that is not a source."""
    if not 0 <= square <= board.size:
        raise BoardError(f"square {square} outside 0..{board.size}")
    while square in board.redirects:
        square = board.redirects[square]
    return square


def _apply_overshoot(board: Board, state: int, raw: int) -> int:
    if raw <= board.size:
        return raw
    if board.overshoot is Overshoot.REFLECT:
        # Boards shorter than a die roll can bounce off square 0 as well.
        raw %= 2 * board.size
        return raw if raw <= board.size else 2 * board.size - raw
    if board.overshoot is Overshoot.STAY:
        return state
    return board.size


def resolve_move(board: Board, state: int, roll: int) -> int:
    """Square where a player resting on ``state`` ends up after rolling ``roll``.

    The overshoot rule is applied before redirects, so a reflection can land
    on a snake (99 + 3 reflects to 98, which may then slide further).
    """
    if not 1 <= roll <= DIE_FACES:
        raise ValueError(f"roll must be in 1..{DIE_FACES}, got {roll}")
    if state == board.size:
        raise ValueError("no moves are made from the finish square")
    if not board.is_resting(state):
        raise ValueError(f"square {state} is not a resting square")
    raw = _apply_overshoot(board, state, state + roll)
    return resting_square(board, raw)


def board_from_document(doc: Mapping) -> Board:
    if not isinstance(doc, Mapping):
        raise BoardError("board document must be a mapping")
    missing = {"size", "redirects"} - set(doc)
    if missing:
        raise BoardError(f"board document missing fields: {', '.join(sorted(missing))}")
    redirects = {}
    for pair in doc["redirects"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise BoardError(f"redirect entries must be [source, destination] pairs, got {pair!r}")
        src, dst = (_as_int(v) for v in pair)
        if src in redirects:
            raise BoardError(f"square {src} has more than one redirect")
        redirects[src] = dst
    return Board(
        size=_as_int(doc["size"]),
        redirects=redirects,
        overshoot=parse_overshoot(doc.get("overshoot", "reflect")),
        name=str(doc.get("name", "")),
    )


def board_from_flat_track(entries: list[int], name: str = "") -> Board:
    n = len(entries)
    if n == 0:
        raise BoardError("flat track is empty")
    # The finish square can only rest on itself; overshoot entries never do.
    if entries[-1] == n:
        size, extra = n, []
    elif n > FLAT_OVERSHOOT_ENTRIES and entries[n - FLAT_OVERSHOOT_ENTRIES - 1] == n - FLAT_OVERSHOOT_ENTRIES:
        size = n - FLAT_OVERSHOOT_ENTRIES
        extra = entries[size:]
    else:
        raise BoardError(
            f"flat track of {n} entries: expected the finish square to map to itself "
            f"at position {n} or {n - FLAT_OVERSHOOT_ENTRIES}"
        )
    redirects = {p: dst for p, dst in enumerate(entries[:size], start=1) if dst != p}
    board = Board(size=size, redirects=redirects, overshoot=Overshoot.REFLECT, name=name)
    # Entries are resting squares, so each redirect must already be at a fixpoint.
    for p, dst in redirects.items():
        if resting_square(board, dst) != dst:
            raise BoardError(f"flat entry {p} -> {dst} is not a resting square")
    for offset, got in enumerate(extra, start=1):
        raw = size + offset
        want = resting_square(board, 2 * size - raw)
        if got != want:
            raise BoardError(
                f"flat overshoot entry {raw} is {got}, but reflecting gives {want}"
            )
    return board


def load_board(source, name: str | None = None) -> Board:
    """Build a board from a canonical document (text or mapping) or a flat track.

    ``source`` may be a mapping, a JSON string, a whitespace-separated
    string of integers, or a sequence of integers.
    """
    if isinstance(source, Mapping):
        board = board_from_document(source)
    elif isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise BoardError(f"malformed board document: {exc}") from None
            board = board_from_document(doc)
        else:
            try:
                entries = [int(tok) for tok in text.split()]
            except ValueError:
                raise BoardError("flat track must contain only integers") from None
            board = board_from_flat_track(entries)
    else:
        board = board_from_flat_track([_as_int(v) for v in source])
    if name is not None and not board.name:
        board = Board(board.size, board.redirects, board.overshoot, name)
    return board


BUNDLED_BOARDS = {"paper-figure2": "paper-figure2.txt", "mini10": "mini10.json"}


def bundled_board(name: str) -> Board:
    key = name.removeprefix("boards/")
    if key not in BUNDLED_BOARDS:
        raise KeyError(f"no bundled board named {name!r}")
    text = resources.files("snakeladder").joinpath("boards").joinpath(BUNDLED_BOARDS[key]).read_text()
    return load_board(text, name=key)


def read_board(source: str | Path) -> Board:
    """Load a board from a file path, or a bundled name such as ``paper-figure2``."""
    path = Path(source)
    if path.is_file():
        return load_board(path.read_text(), name=path.stem)
    if str(source).removeprefix("boards/") in BUNDLED_BOARDS:
        return bundled_board(str(source))
    raise FileNotFoundError(f"board file not found: {source}")


def _as_int(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BoardError(f"expected an integer, got {value!r}")
    return value
