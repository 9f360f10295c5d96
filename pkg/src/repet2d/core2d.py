"""2D strings (matrices over a finite alphabet) and factor enumeration.

Conventions used across the whole package:

* indexing is 1-based and inclusive, so ``M[i1..i2][j1..j2]`` with
  ``1 <= i1 <= i2 <= rows`` is the rectangle whose top-left cell is (i1, j1);
* a *factor* of shape (k1, k2) is any contiguous k1 x k2 submatrix;
* occurrences are identified by the 1-based position of their top-left cell,
  and *RMO* (row-major order) of those positions is the canonical tie-break;
* factor equality is token equality: two factors are equal iff their token
  grids are equal, regardless of which matrices they were cut from.

Distinct-factor counting is exact: windows of a shape are dense-ranked by
iterated integer rank compression (np.unique), extending the shape one column
/ one row at a time. No hashing is involved, so there are no collisions to
resolve and results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .budget import WorkBudget, ensure_budget
from .errors import (
    ColMismatch,
    OutOfBounds,
    ParseError,
    RowMismatch,
    TooLarge,
)

Position = tuple[int, int]
TokenGrid = tuple[tuple[str, ...], ...]

#: hard cap on cells, matching the documented family caps (~16M)
MAX_CELLS = 1 << 24


@dataclass(frozen=True)
class FactorShape:
    """Shape (k1, k2) of a rectangular factor: k1 rows by k2 columns."""

    k1: int
    k2: int

    @property
    def area(self) -> int:
        return self.k1 * self.k2


@dataclass(frozen=True)
class Matrix2D:
    """An immutable m x n string over an ordered token alphabet.

    ``cells`` holds dense integer ids (row-major) into ``alphabet``, which is
    always the sorted tuple of the distinct tokens actually present, so two
    matrices are equal exactly when their token grids are equal.
    """

    rows: int
    cols: int
    cells: tuple[int, ...]
    alphabet: tuple[str, ...]

    @classmethod
    def from_tokens(cls, grid: Sequence[Sequence[object]]) -> "Matrix2D":
        """Build from rows of tokens (non-str tokens are str()-ed)."""
        if not grid or not grid[0]:
            raise TooLarge("a 2D string must have at least one cell")
        rows = len(grid)
        cols = len(grid[0])
        if rows * cols > MAX_CELLS:
            raise TooLarge(f"{rows}x{cols} exceeds the {MAX_CELLS}-cell cap")
        tokens: list[str] = []
        for r, row in enumerate(grid, start=1):
            if len(row) != cols:
                raise RowMismatch(
                    f"row {r} has {len(row)} tokens, expected {cols}"
                )
            for tok in row:
                tok = tok if isinstance(tok, str) else str(tok)
                if not tok or any(ch.isspace() for ch in tok):
                    raise ParseError(f"invalid token {tok!r}")
                tokens.append(tok)
        alphabet = tuple(sorted(set(tokens)))
        index = {tok: i for i, tok in enumerate(alphabet)}
        cells = tuple(index[tok] for tok in tokens)
        return cls(rows, cols, cells, alphabet)

    @cached_property
    def _grid(self) -> np.ndarray:
        arr = np.array(self.cells, dtype=np.int64)
        arr = arr.reshape(self.rows, self.cols)
        arr.setflags(write=False)
        return arr

    @property
    def area(self) -> int:
        return self.rows * self.cols

    def id_at(self, i: int, j: int) -> int:
        self._check_pos(i, j)
        return self.cells[(i - 1) * self.cols + (j - 1)]

    def at(self, i: int, j: int) -> str:
        """Token at 1-based position (i, j)."""
        return self.alphabet[self.id_at(i, j)]

    def tokens(self) -> TokenGrid:
        a = self.alphabet
        c = self.cells
        w = self.cols
        return tuple(
            tuple(a[c[r * w + j]] for j in range(w)) for r in range(self.rows)
        )

    def row_tokens(self, i: int) -> tuple[str, ...]:
        self._check_pos(i, 1)
        return self.tokens()[i - 1]

    def _check_pos(self, i: int, j: int) -> None:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise OutOfBounds(
                f"position ({i},{j}) outside {self.rows}x{self.cols}"
            )

    def __str__(self) -> str:
        return "\n".join(" ".join(row) for row in self.tokens())


def concat_h(a: Matrix2D, b: Matrix2D) -> Matrix2D:
    """Horizontal concatenation: glue b to the right of a (row counts match)."""
    if a.rows != b.rows:
        raise RowMismatch(
            f"horizontal concatenation needs equal row counts, "
            f"got {a.rows} and {b.rows}"
        )
    grid = [ra + rb for ra, rb in zip(a.tokens(), b.tokens())]
    return Matrix2D.from_tokens(grid)


def concat_v(a: Matrix2D, b: Matrix2D) -> Matrix2D:
    """Vertical concatenation: glue b below a (column counts match)."""
    if a.cols != b.cols:
        raise ColMismatch(
            f"vertical concatenation needs equal column counts, "
            f"got {a.cols} and {b.cols}"
        )
    return Matrix2D.from_tokens(a.tokens() + b.tokens())


def submatrix(m: Matrix2D, i1: int, j1: int, i2: int, j2: int) -> Matrix2D:
    """The factor M[i1..i2][j1..j2] (1-based, inclusive)."""
    if not (1 <= i1 <= i2 <= m.rows and 1 <= j1 <= j2 <= m.cols):
        raise OutOfBounds(
            f"rectangle ({i1},{j1})..({i2},{j2}) outside {m.rows}x{m.cols}"
        )
    grid = m.tokens()
    return Matrix2D.from_tokens(
        [row[j1 - 1 : j2] for row in grid[i1 - 1 : i2]]
    )


# ---------------------------------------------------------------------------
# exact distinct-window ranking
# ---------------------------------------------------------------------------


def _pair_rank(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dense ranks of the element-wise pairs (a, b); ids follow value order."""
    combo = a.astype(np.int64) * (int(b.max()) + 1) + b
    _, inv = np.unique(combo, return_inverse=True)
    return inv.reshape(a.shape).astype(np.int64)


def _check_shape(m: Matrix2D, k1: int, k2: int) -> None:
    if not (1 <= k1 <= m.rows and 1 <= k2 <= m.cols):
        raise OutOfBounds(
            f"factor shape {k1}x{k2} does not fit in {m.rows}x{m.cols}"
        )


def iter_shape_labels(
    m: Matrix2D,
    wanted: Iterable[tuple[int, int]],
    budget: WorkBudget | None = None,
) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield (k1, k2, labels) for every requested shape.

    ``labels`` is the (rows-k1+1) x (cols-k2+1) array of dense factor ids:
    two windows carry the same label iff their contents are equal. Shapes are
    yielded in ascending (k2, k1) order regardless of input order; each build
    step charges its window count to the budget.
    """
    budget = ensure_budget(budget)
    per_k2: dict[int, list[int]] = {}
    for k1, k2 in wanted:
        _check_shape(m, k1, k2)
        per_k2.setdefault(k2, []).append(k1)
    ids = m._grid
    horiz = ids
    for k2 in range(1, (max(per_k2) if per_k2 else 0) + 1):
        if k2 > 1:
            budget.charge(horiz.shape[0] * (m.cols - k2 + 1), "row ranking")
            horiz = _pair_rank(horiz[:, : m.cols - k2 + 1], ids[:, k2 - 1 :])
        k1s = sorted(set(per_k2.get(k2, ())))
        if not k1s:
            continue
        vert = horiz
        for k1 in range(1, max(k1s) + 1):
            if k1 > 1:
                budget.charge(
                    (m.rows - k1 + 1) * vert.shape[1], "column ranking"
                )
                vert = _pair_rank(
                    vert[: m.rows - k1 + 1, :], horiz[k1 - 1 :, :]
                )
            if k1 in k1s:
                yield k1, k2, vert


def shape_labels(
    m: Matrix2D, k1: int, k2: int, budget: WorkBudget | None = None
) -> np.ndarray:
    """Dense factor labels for a single shape (see iter_shape_labels)."""
    for _, _, labels in iter_shape_labels(m, [(k1, k2)], budget):
        return labels
    raise AssertionError("unreachable")


def factor_count(
    m: Matrix2D, k1: int, k2: int, budget: WorkBudget | None = None
) -> int:
    """P_M(k1, k2): the number of distinct k1 x k2 factors of M."""
    labels = shape_labels(m, k1, k2, budget)
    return int(labels.max()) + 1


@dataclass(frozen=True)
class Factor2D:
    """A distinct factor content plus all its occurrences (RMO top-lefts)."""

    shape: FactorShape
    content: TokenGrid
    occurrences: tuple[Position, ...]


def distinct_factors(
    m: Matrix2D, k1: int, k2: int, budget: WorkBudget | None = None
) -> tuple[Factor2D, ...]:
    """All distinct k1 x k2 factors, ordered by first occurrence in RMO.

    Each factor lists every occurrence position in RMO.
    """
    labels = shape_labels(m, k1, k2, budget)
    n_labels = int(labels.max()) + 1
    occs: list[list[Position]] = [[] for _ in range(n_labels)]
    height, width = labels.shape
    flat = labels.ravel()
    for idx in range(flat.size):
        occs[flat[idx]].append((idx // width + 1, idx % width + 1))
    order = sorted(range(n_labels), key=lambda lab: occs[lab][0])
    out = []
    for lab in order:
        i, j = occs[lab][0]
        content = submatrix(m, i, j, i + k1 - 1, j + k2 - 1).tokens()
        out.append(
            Factor2D(FactorShape(k1, k2), content, tuple(occs[lab]))
        )
    return tuple(out)


def naive_factor_index(
    m: Matrix2D, k1: int, k2: int
) -> dict[TokenGrid, list[Position]]:
    """Reference implementation: materialize every window. Test oracle only."""
    _check_shape(m, k1, k2)
    grid = m.tokens()
    out: dict[TokenGrid, list[Position]] = {}
    for i in range(m.rows - k1 + 1):
        for j in range(m.cols - k2 + 1):
            content = tuple(row[j : j + k2] for row in grid[i : i + k1])
            out.setdefault(content, []).append((i + 1, j + 1))
    return out


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------
#
# line 1:  2d <m> <n>
# then m lines of n whitespace-separated tokens. Blank lines are ignored
# everywhere; a line starting with '#' is a comment unless it splits into
# exactly n tokens while matrix rows are still expected (so alphabets that
# contain '#' round-trip).


def format_matrix(m: Matrix2D) -> str:
    lines = [f"2d {m.rows} {m.cols}"]
    lines.extend(" ".join(row) for row in m.tokens())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix2D:
    lines = text.splitlines()
    header: tuple[int, int] | None = None
    grid: list[list[str]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if line.startswith("#"):
                continue
            if len(parts) != 3 or parts[0] != "2d":
                raise ParseError(
                    f"line {lineno}: expected header '2d <m> <n>', got {line!r}"
                )
            try:
                rows, cols = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad dimensions") from exc
            if rows < 1 or cols < 1:
                raise ParseError(f"line {lineno}: dimensions must be >= 1")
            header = (rows, cols)
            continue
        if len(grid) < header[0]:
            if line.startswith("#") and len(parts) != header[1]:
                continue
            if len(parts) != header[1]:
                raise ParseError(
                    f"line {lineno}: expected {header[1]} tokens, "
                    f"got {len(parts)}"
                )
            grid.append(parts)
        elif not line.startswith("#"):
            raise ParseError(f"line {lineno}: trailing content {line!r}")
    if header is None:
        raise ParseError("missing '2d <m> <n>' header")
    if len(grid) != header[0]:
        raise ParseError(f"expected {header[0]} rows, got {len(grid)}")
    return Matrix2D.from_tokens(grid)


def read_matrix(path: str | Path) -> Matrix2D:
    return parse_matrix(Path(path).read_text())


def write_matrix(m: Matrix2D, path: str | Path) -> None:
    Path(path).write_text(format_matrix(m))
