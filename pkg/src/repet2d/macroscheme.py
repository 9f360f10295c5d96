"""Macro schemes: represent a matrix by explicit cells plus copied phrases.

A phrase copies a target rectangle from a source rectangle of the same shape
anywhere in the matrix (sources may overlap targets and other phrases). The
scheme is valid when targets plus explicit cells partition the grid, sources
stay in bounds, and following cell -> source-cell pointers always reaches an
explicit cell (no cycles). Size = #explicit + #phrases.

b_exact finds a smallest valid scheme by branch-and-bound over rectangle
partitions in row-major order; it is exponential and guarded by cell_limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .budget import WorkBudget, ensure_budget
from .core2d import Matrix2D, Position, factor_count
from .errors import (
    BadParam,
    CyclicMap,
    NotPartition,
    OutOfBounds,
    OutOfBoundsSource,
    ParseError,
    ShapeTooLarge,
    TooLarge,
)
from .grammar2d import (
    Grammar2D,
    Horiz,
    RunH,
    RunV,
    Terminal,
    Vert,
    validate_grammar,
)


@dataclass(frozen=True)
class Phrase:
    """Target rectangle (i1,j1)-(i2,j2) copied from the same-shape rectangle
    whose top-left corner is (si,sj). 1-based inclusive."""

    i1: int
    j1: int
    i2: int
    j2: int
    si: int
    sj: int


@dataclass(frozen=True)
class MacroScheme2D:
    rows: int
    cols: int
    explicit: Mapping[Position, str]
    phrases: tuple[Phrase, ...]

    @property
    def size(self) -> int:
        return len(self.explicit) + len(self.phrases)


@dataclass(frozen=True)
class SchemeCheck:
    """error is the name of the exception class decode() would raise."""

    ok: bool
    size: int
    error: str | None = None
    message: str | None = None

    def __bool__(self) -> bool:
        return self.ok


_ERRORS = {
    "BadParam": BadParam,
    "OutOfBounds": OutOfBounds,
    "OutOfBoundsSource": OutOfBoundsSource,
    "NotPartition": NotPartition,
    "CyclicMap": CyclicMap,
}


def _analyze(s: MacroScheme2D):
    """Shared validation: returns (error, message, source_of) where source_of
    maps the flat index of each phrase-covered cell to its source's flat
    index and explicit cells to -1."""
    n = s.cols
    total = s.rows * s.cols
    if s.rows < 1 or s.cols < 1:
        return "BadParam", f"scheme is {s.rows}x{s.cols}", None
    owner = [0] * total  # 0 free, 1 explicit, 2 phrase
    source_of = [-1] * total
    for (i, j), token in s.explicit.items():
        if not token or any(ch.isspace() for ch in token):
            return "BadParam", f"bad token {token!r} at ({i},{j})", None
        if not (1 <= i <= s.rows and 1 <= j <= s.cols):
            return "OutOfBounds", f"explicit cell ({i},{j}) out of bounds", None
        owner[(i - 1) * n + (j - 1)] = 1
    for p in s.phrases:
        if p.i1 > p.i2 or p.j1 > p.j2:
            return "BadParam", f"phrase corners inverted: {p}", None
        if not (1 <= p.i1 and p.i2 <= s.rows and 1 <= p.j1 and p.j2 <= s.cols):
            return "OutOfBounds", f"phrase target out of bounds: {p}", None
        h, w = p.i2 - p.i1 + 1, p.j2 - p.j1 + 1
        if not (
            1 <= p.si
            and p.si + h - 1 <= s.rows
            and 1 <= p.sj
            and p.sj + w - 1 <= s.cols
        ):
            return "OutOfBoundsSource", f"phrase source out of bounds: {p}", None
        for i in range(p.i1, p.i2 + 1):
            for j in range(p.j1, p.j2 + 1):
                idx = (i - 1) * n + (j - 1)
                if owner[idx]:
                    return (
                        "NotPartition",
                        f"cell ({i},{j}) covered twice",
                        None,
                    )
                owner[idx] = 2
                source_of[idx] = (p.si + i - p.i1 - 1) * n + (p.sj + j - p.j1 - 1)
    free = owner.count(0)
    if free:
        idx = owner.index(0)
        return (
            "NotPartition",
            f"{free} cells uncovered, first ({idx // n + 1},{idx % n + 1})",
            None,
        )
    state = [0] * total
    for start in range(total):
        path = []
        cur = start
        while cur >= 0 and state[cur] == 0:
            state[cur] = 1
            path.append(cur)
            cur = source_of[cur]
            if cur >= 0 and state[cur] == 1:
                return (
                    "CyclicMap",
                    f"copy chain through ({cur // n + 1},{cur % n + 1}) "
                    "never reaches an explicit cell",
                    None,
                )
        for c in path:
            state[c] = 2
    return None, None, source_of


def validate_scheme(s: MacroScheme2D) -> SchemeCheck:
    error, message, _ = _analyze(s)
    return SchemeCheck(error is None, s.size, error, message)


def decode(s: MacroScheme2D, budget: WorkBudget | None = None) -> Matrix2D:
    """The matrix the scheme represents; raises on invalid schemes."""
    error, message, source_of = _analyze(s)
    if error is not None:
        raise _ERRORS[error](message)
    budget = ensure_budget(budget)
    budget.charge(s.rows * s.cols, "scheme decode")
    n = s.cols
    tokens: list[str | None] = [None] * (s.rows * s.cols)
    for (i, j), token in s.explicit.items():
        tokens[(i - 1) * n + (j - 1)] = token
    assert source_of is not None
    for start in range(len(tokens)):
        if tokens[start] is not None:
            continue
        path = [start]
        cur = source_of[start]
        while tokens[cur] is None:
            path.append(cur)
            cur = source_of[cur]
        value = tokens[cur]
        for c in path:
            tokens[c] = value
    grid = [
        [tokens[i * n + j] for j in range(n)] for i in range(s.rows)
    ]
    return Matrix2D.from_tokens(grid)


def identity_scheme(n: int) -> MacroScheme2D:
    """A scheme of size 6 for the n x n identity matrix (any n >= 3): three
    explicit cells in the top-left corner, the rest of row 1 and column 1
    copied with a one-cell shift, and everything else copied from the
    diagonally shifted interior."""
    if n < 1:
        raise BadParam(f"n must be >= 1, got {n}")
    if n <= 2:
        cells = {
            (i, j): ("1" if i == j else "0")
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        }
        return MacroScheme2D(n, n, cells, ())
    explicit = {(1, 1): "1", (1, 2): "0", (2, 1): "0"}
    phrases = (
        Phrase(1, 3, 1, n, 1, 2),
        Phrase(3, 1, n, 1, 2, 1),
        Phrase(2, 2, n, n, 1, 1),
    )
    return MacroScheme2D(n, n, explicit, phrases)


def from_grammar(g: Grammar2D) -> MacroScheme2D:
    """Scheme with one explicit cell per terminal variable and one phrase per
    secondary occurrence or collapsed run, sourced at the variable's first
    (preorder) occurrence. Its size never exceeds the grammar's."""
    info = validate_grammar(g)
    dims = info.dims
    explicit: dict[Position, str] = {}
    phrases: list[Phrase] = []
    primary: dict[str, Position] = {}

    def visit(name: str, top: int, left: int) -> None:
        rows, cols = dims[name]
        if name in primary:
            si, sj = primary[name]
            phrases.append(
                Phrase(top, left, top + rows - 1, left + cols - 1, si, sj)
            )
            return
        primary[name] = (top, left)
        rule = g.rules[name]
        if isinstance(rule, Terminal):
            explicit[(top, left)] = rule.token
        elif isinstance(rule, Horiz):
            visit(rule.left, top, left)
            visit(rule.right, top, left + dims[rule.left][1])
        elif isinstance(rule, Vert):
            visit(rule.top, top, left)
            visit(rule.bottom, top + dims[rule.top][0], left)
        elif isinstance(rule, RunH):
            w = dims[rule.child][1]
            visit(rule.child, top, left)
            phrases.append(
                Phrase(top, left + w, top + rows - 1, left + cols - 1, top, left)
            )
        else:
            h = dims[rule.child][0]
            visit(rule.child, top, left)
            phrases.append(
                Phrase(top + h, left, top + rows - 1, left + cols - 1, top, left)
            )

    visit(g.axiom, 1, 1)
    return MacroScheme2D(info.rows, info.cols, explicit, tuple(phrases))


# ---------------------------------------------------------------------------
# exact smallest macro scheme
# ---------------------------------------------------------------------------


def b_exact(
    m: Matrix2D,
    cell_limit: int = 9,
    work_limit: int = 5_000_000,
    budget: WorkBudget | None = None,
) -> MacroScheme2D:
    """A smallest valid macro scheme for ``m``.

    Branch and bound over rectangle partitions: the first uncovered cell in
    row-major order is always the top-left of its part; 1x1 parts are made
    explicit (never worse than a 1x1 copy), larger parts require the same
    content somewhere else in the matrix and get their sources assigned by a
    nested search with incremental cycle checks.
    """
    total = m.area
    if total > cell_limit:
        raise TooLarge(
            f"b_exact is exponential; {m.rows}x{m.cols} has {total} cells "
            f"> cell_limit={cell_limit}"
        )
    budget = ensure_budget(budget)
    rows, cols = m.rows, m.cols
    ids = [[m.id_at(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)]

    def content(i: int, j: int, h: int, w: int) -> tuple:
        return tuple(tuple(ids[a][j : j + w]) for a in range(i, i + h))

    occ_memo: dict[tuple[int, int, int, int], list[Position]] = {}

    def occurrences(i: int, j: int, h: int, w: int) -> list[Position]:
        key = (i, j, h, w)
        if key in occ_memo:
            return occ_memo[key]
        want = content(i, j, h, w)
        out = [
            (a, b)
            for a in range(rows - h + 1)
            for b in range(cols - w + 1)
            if (a, b) != (i, j) and content(a, b, h, w) == want
        ]
        occ_memo[key] = out
        return out

    max_copy_area = 1
    for h in range(1, rows + 1):
        for w in range(1, cols + 1):
            if h * w == 1:
                continue
            seen: set[tuple] = set()
            for a in range(rows - h + 1):
                for b in range(cols - w + 1):
                    c = content(a, b, h, w)
                    if c in seen:
                        max_copy_area = max(max_copy_area, h * w)
                    seen.add(c)

    full_mask = (1 << total) - 1

    def rect_mask(i: int, j: int, h: int, w: int) -> int:
        seg = ((1 << w) - 1) << j
        out = 0
        for a in range(i, i + h):
            out |= seg << (a * cols)
        return out

    # parts: ("e", i, j) or ("p", i, j, h, w); all coordinates 0-based here
    all_explicit = [("e", i, j) for i in range(rows) for j in range(cols)]
    best: dict = {"size": total, "parts": all_explicit, "assignment": []}
    work = [0]

    def tick() -> None:
        work[0] += 1
        budget.charge(1, "scheme search")
        if work[0] > work_limit:
            raise ShapeTooLarge(
                f"scheme search exceeded work_limit={work_limit}"
            )

    def chains_ok(source_of: list[int]) -> bool:
        state = [0] * total
        for start in range(total):
            cur = start
            path = []
            while cur >= 0 and state[cur] == 0:
                state[cur] = 1
                path.append(cur)
                cur = source_of[cur]
                if cur >= 0 and state[cur] == 1:
                    return False
            for c in path:
                state[c] = 2
        return True

    def assign_sources(parts: list) -> list | None:
        copied = [p for p in parts if p[0] == "p"]
        if not copied:
            return []
        if not any(p[0] == "e" for p in parts):
            return None  # every chain would be infinite
        source_of = [-2] * total  # -2 unknown, -1 explicit
        for kind, i, j, *rest in parts:
            if kind == "e":
                source_of[i * cols + j] = -1

        chosen: list[Position] = []

        def fill(p, src: Position | None) -> None:
            _, i, j, h, w = p
            for a in range(h):
                for b in range(w):
                    idx = (i + a) * cols + (j + b)
                    source_of[idx] = (
                        -2 if src is None else (src[0] + a) * cols + (src[1] + b)
                    )

        def rec(pos: int) -> bool:
            if pos == len(copied):
                return True
            tick()
            p = copied[pos]
            for src in occurrences(p[1], p[2], p[3], p[4]):
                fill(p, src)
                if chains_ok(source_of):
                    chosen.append(src)
                    if rec(pos + 1):
                        return True
                    chosen.pop()
            fill(p, None)
            return False

        if not rec(0):
            return None
        return list(zip(copied, chosen))

    def dfs(covered: int, parts: list) -> None:
        tick()
        if covered == full_mask:
            assignment = assign_sources(parts)
            if assignment is not None:
                best["size"] = len(parts)
                best["parts"] = list(parts)
                best["assignment"] = assignment
            return
        free = total - bin(covered).count("1")
        if len(parts) + -(-free // max_copy_area) >= best["size"]:
            return
        idx = ((~covered) & (covered + 1)).bit_length() - 1  # lowest free cell
        i, j = divmod(idx, cols)
        options = []
        for h in range(1, rows - i + 1):
            for w in range(1, cols - j + 1):
                mask = rect_mask(i, j, h, w)
                if mask & covered:
                    continue
                if h * w > 1 and not occurrences(i, j, h, w):
                    continue
                options.append((h * w, h, w, mask))
        options.sort(key=lambda o: (-o[0], o[1], o[2]))
        for area, h, w, mask in options:
            if area == 1:
                parts.append(("e", i, j))
            else:
                parts.append(("p", i, j, h, w))
            dfs(covered | mask, parts)
            parts.pop()

    dfs(0, [])
    parts = best["parts"]
    sources = {tuple(p): src for p, src in best["assignment"]}
    explicit: dict[Position, str] = {}
    phrases: list[Phrase] = []
    for p in parts:
        if p[0] == "e":
            _, i, j = p
            explicit[(i + 1, j + 1)] = m.at(i + 1, j + 1)
        else:
            _, i, j, h, w = p
            si, sj = sources[tuple(p)]
            phrases.append(
                Phrase(i + 1, j + 1, i + h, j + w, si + 1, sj + 1)
            )
    return MacroScheme2D(rows, cols, explicit, tuple(phrases))


def unique_square_certificate(
    m: Matrix2D, k: int, budget: WorkBudget | None = None
) -> bool:
    """True iff every k x k factor of ``m`` occurs at most once — then any
    scheme built from k x k square phrases needs one phrase per tile, see
    square_phrase_bound."""
    if not (1 <= k <= min(m.rows, m.cols)):
        raise BadParam(f"k={k} does not fit in {m.rows}x{m.cols}")
    windows = (m.rows - k + 1) * (m.cols - k + 1)
    return factor_count(m, k, k, budget) == windows


def square_phrase_bound(m: Matrix2D, k: int) -> int:
    """ceil(rows/k) * ceil(cols/k): the phrase count any k x k square-phrase
    representation needs once unique_square_certificate(m, k) holds."""
    if not (1 <= k <= min(m.rows, m.cols)):
        raise BadParam(f"k={k} does not fit in {m.rows}x{m.cols}")
    return -(-m.rows // k) * -(-m.cols // k)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_scheme(s: MacroScheme2D) -> str:
    lines = [f"scheme {s.rows} {s.cols}"]
    for (i, j) in sorted(s.explicit):
        lines.append(f"exp {i} {j} {s.explicit[(i, j)]}")
    for p in s.phrases:
        lines.append(f"phr {p.i1} {p.j1} {p.i2} {p.j2} {p.si} {p.sj}")
    return "\n".join(lines) + "\n"


def parse_scheme(text: str) -> MacroScheme2D:
    header: tuple[int, int] | None = None
    explicit: dict[Position, str] = {}
    phrases: list[Phrase] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "scheme" or len(parts) != 3:
                raise ParseError(
                    f"line {lineno}: expected 'scheme <rows> <cols>', got {raw!r}"
                )
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError(
                    f"line {lineno}: non-integer dimensions in {raw!r}"
                ) from None
            continue
        try:
            if parts[0] == "exp" and len(parts) == 4:
                explicit[(int(parts[1]), int(parts[2]))] = parts[3]
            elif parts[0] == "phr" and len(parts) == 7:
                phrases.append(Phrase(*(int(v) for v in parts[1:])))
            else:
                raise ParseError(f"line {lineno}: malformed line {raw!r}")
        except ValueError:
            raise ParseError(
                f"line {lineno}: non-integer coordinate in {raw!r}"
            ) from None
    if header is None:
        raise ParseError("missing scheme header line")
    return MacroScheme2D(header[0], header[1], explicit, tuple(phrases))


def read_scheme(path) -> MacroScheme2D:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scheme(fh.read())


def write_scheme(s: MacroScheme2D, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_scheme(s))
