"""d-dimensional strings: axis concatenation, grammars, window complexity.

Everything in :mod:`core2d` has a d-dimensional counterpart here.  An
``NdString`` stores a dense id array in generalized row-major order (the
last axis varies fastest), grammars concatenate along an explicit axis,
and the window-complexity machinery ranks windows incrementally axis by
axis exactly like the 2D version.  The 2D types embed losslessly via
``to_nd``/``to_2d`` and ``grammar_to_nd``; the embeddings are exercised
as oracles by the test-bed.

Macro schemes generalize to boxes with source corners; only validation
and decoding are provided in dD (no exact solvers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .budget import WorkBudget, ensure_budget
from .core2d import MAX_CELLS, Matrix2D, _pair_rank
from .errors import (
    AxisMismatch,
    BadParam,
    CycleDetected,
    DanglingVariable,
    DimMismatch,
    DuplicateRHS,
    OutOfBounds,
    ParseError,
    TooLarge,
)
from .families import debruijn_bits
from .grammar2d import Grammar2D, Horiz, RunH, RunV, Terminal, Vert
from .macroscheme import _ERRORS, SchemeCheck


@dataclass(frozen=True)
class NdString:
    """A d-dimensional string over a finite alphabet.

    ``cells`` holds dense ids into ``alphabet`` in generalized row-major
    order; ``alphabet`` is the sorted tuple of tokens actually present,
    mirroring the 2D representation.
    """

    dims: tuple[int, ...]
    cells: tuple[int, ...]
    alphabet: tuple[str, ...]

    @classmethod
    def from_tokens(
        cls, dims: Sequence[int], tokens: Iterable[object]
    ) -> "NdString":
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise BadParam(f"dims must be a non-empty tuple of >= 1, got {dims}")
        total = prod(dims)
        if total > MAX_CELLS:
            raise TooLarge(f"{'x'.join(map(str, dims))} exceeds the {MAX_CELLS}-cell cap")
        toks: list[str] = []
        for tok in tokens:
            tok = tok if isinstance(tok, str) else str(tok)
            if not tok or any(ch.isspace() for ch in tok):
                raise ParseError(f"invalid token {tok!r}")
            toks.append(tok)
        if len(toks) != total:
            raise ParseError(
                f"expected {total} tokens for dims {dims}, got {len(toks)}"
            )
        alphabet = tuple(sorted(set(toks)))
        index = {t: i for i, t in enumerate(alphabet)}
        return cls(dims, tuple(index[t] for t in toks), alphabet)

    @cached_property
    def _grid(self) -> np.ndarray:
        arr = np.array(self.cells, dtype=np.int64).reshape(self.dims)
        arr.setflags(write=False)
        return arr

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def area(self) -> int:
        return prod(self.dims)

    def at(self, pos: Sequence[int]) -> str:
        """Token at a 1-based position tuple."""
        pos = tuple(pos)
        if len(pos) != self.ndim or any(
            not 1 <= p <= n for p, n in zip(pos, self.dims)
        ):
            raise OutOfBounds(f"position {pos} outside dims {self.dims}")
        return self.alphabet[int(self._grid[tuple(p - 1 for p in pos)])]

    def tokens_flat(self) -> tuple[str, ...]:
        return tuple(self.alphabet[i] for i in self.cells)


def to_nd(m: Matrix2D) -> NdString:
    """Embed a matrix as a 2-dimensional NdString (same cells, same ids)."""
    return NdString((m.rows, m.cols), m.cells, m.alphabet)


def to_2d(x: NdString) -> Matrix2D:
    if x.ndim != 2:
        raise BadParam(f"need a 2-dimensional string, got {x.ndim} axes")
    return Matrix2D(x.dims[0], x.dims[1], x.cells, x.alphabet)


def concat_axis(a: NdString, b: NdString, axis: int) -> NdString:
    """Concatenate along 1-based ``axis``; all other extents must agree."""
    if a.ndim != b.ndim:
        raise AxisMismatch(f"operands have {a.ndim} and {b.ndim} axes")
    if not 1 <= axis <= a.ndim:
        raise BadParam(f"axis must be in 1..{a.ndim}, got {axis}")
    for j, (p, q) in enumerate(zip(a.dims, b.dims), start=1):
        if j != axis and p != q:
            raise AxisMismatch(
                f"axis {j} extents differ ({p} vs {q}); only axis {axis} may"
            )
    alphabet = tuple(sorted(set(a.alphabet) | set(b.alphabet)))
    index = {t: i for i, t in enumerate(alphabet)}
    map_a = np.array([index[t] for t in a.alphabet], dtype=np.int64)
    map_b = np.array([index[t] for t in b.alphabet], dtype=np.int64)
    out = np.concatenate([map_a[a._grid], map_b[b._grid]], axis=axis - 1)
    if out.size > MAX_CELLS:
        raise TooLarge(f"concatenation exceeds the {MAX_CELLS}-cell cap")
    return NdString(tuple(out.shape), tuple(out.ravel().tolist()), alphabet)


# ---------------------------------------------------------------------------
# dD grammars
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TerminalNd:
    token: str


@dataclass(frozen=True)
class ConcatNd:
    axis: int
    first: str
    second: str


@dataclass(frozen=True)
class RunNd:
    axis: int
    count: int
    child: str


RuleNd = Union[TerminalNd, ConcatNd, RunNd]


def _children_nd(rule: RuleNd) -> tuple[str, ...]:
    if isinstance(rule, TerminalNd):
        return ()
    if isinstance(rule, ConcatNd):
        return (rule.first, rule.second)
    return (rule.child,)


@dataclass(frozen=True)
class GrammarNd:
    ndim: int
    axiom: str
    rules: Mapping[str, RuleNd]

    @property
    def size(self) -> int:
        return sum(
            1 if isinstance(r, TerminalNd) else 2 for r in self.rules.values()
        )


@dataclass(frozen=True)
class NdInfo:
    size: int
    dims: tuple[int, ...]
    var_dims: Mapping[str, tuple[int, ...]]


def validate_nd(g: GrammarNd) -> NdInfo:
    """Structural validation; returns per-variable extents.

    Same error taxonomy as the 2D validator: DanglingVariable, BadParam
    (axis out of range, run exponent < 2), DuplicateRHS, CycleDetected and
    DimMismatch when concatenated extents disagree off-axis.
    """
    if g.ndim < 1:
        raise BadParam(f"grammar needs >= 1 axes, got {g.ndim}")
    if g.axiom not in g.rules:
        raise DanglingVariable(f"axiom {g.axiom!r} has no rule")
    seen: dict[tuple, str] = {}
    for name, rule in g.rules.items():
        if isinstance(rule, (ConcatNd, RunNd)) and not 1 <= rule.axis <= g.ndim:
            raise BadParam(f"rule {name} uses axis {rule.axis}; have 1..{g.ndim}")
        if isinstance(rule, RunNd) and rule.count < 2:
            raise BadParam(f"run rule {name} has exponent {rule.count}; need >= 2")
        for child in _children_nd(rule):
            if child not in g.rules:
                raise DanglingVariable(
                    f"rule {name} references undefined variable {child!r}"
                )
        if isinstance(rule, TerminalNd):
            key: tuple = ("term", rule.token)
        elif isinstance(rule, ConcatNd):
            key = ("cat", rule.axis, rule.first, rule.second)
        else:
            key = ("run", rule.axis, rule.count, rule.child)
        if key in seen:
            raise DuplicateRHS(
                f"rules {seen[key]} and {name} have the same right-hand side"
            )
        seen[key] = name

    var_dims: dict[str, tuple[int, ...]] = {}
    state: dict[str, int] = {}

    def resolve(name: str) -> tuple[int, ...]:
        if state.get(name) == 2:
            return var_dims[name]
        if state.get(name) == 1:
            raise CycleDetected(f"variable {name} derives itself")
        state[name] = 1
        rule = g.rules[name]
        if isinstance(rule, TerminalNd):
            dim = (1,) * g.ndim
        elif isinstance(rule, ConcatNd):
            d1, d2 = resolve(rule.first), resolve(rule.second)
            a = rule.axis - 1
            for j in range(g.ndim):
                if j != a and d1[j] != d2[j]:
                    raise DimMismatch(
                        f"{name}: children {rule.first} and {rule.second} "
                        f"differ on axis {j + 1} ({d1[j]} vs {d2[j]})"
                    )
            dim = tuple(
                d1[j] + d2[j] if j == a else d1[j] for j in range(g.ndim)
            )
        else:
            d1 = resolve(rule.child)
            a = rule.axis - 1
            dim = tuple(
                d1[j] * rule.count if j == a else d1[j] for j in range(g.ndim)
            )
        var_dims[name] = dim
        state[name] = 2
        return dim

    for name in g.rules:
        resolve(name)
    return NdInfo(g.size, var_dims[g.axiom], var_dims)


def expand_nd(g: GrammarNd, budget: WorkBudget | None = None) -> NdString:
    """The d-dimensional string derived from the axiom."""
    info = validate_nd(g)
    budget = ensure_budget(budget)
    if prod(info.dims) > MAX_CELLS:
        raise TooLarge(
            f"expansion is {'x'.join(map(str, info.dims))}; refusing more "
            f"than {MAX_CELLS} cells"
        )
    reach: set[str] = set()
    stack = [g.axiom]
    while stack:
        name = stack.pop()
        if name in reach:
            continue
        reach.add(name)
        stack.extend(_children_nd(g.rules[name]))
    tokens = sorted(
        r.token
        for name, r in g.rules.items()
        if name in reach and isinstance(r, TerminalNd)
    )
    token_id = {t: i for i, t in enumerate(tokens)}

    order: list[str] = []
    done: set[str] = set()

    def topo(name: str) -> None:
        if name in done:
            return
        done.add(name)
        for child in _children_nd(g.rules[name]):
            topo(child)
        order.append(name)

    topo(g.axiom)
    arrays: dict[str, np.ndarray] = {}
    for name in order:
        rule = g.rules[name]
        budget.charge(prod(info.var_dims[name]), "grammar expansion")
        if isinstance(rule, TerminalNd):
            arr = np.full((1,) * g.ndim, token_id[rule.token], dtype=np.int64)
        elif isinstance(rule, ConcatNd):
            arr = np.concatenate(
                [arrays[rule.first], arrays[rule.second]], axis=rule.axis - 1
            )
        else:
            reps = [1] * g.ndim
            reps[rule.axis - 1] = rule.count
            arr = np.tile(arrays[rule.child], reps)
        arrays[name] = arr
    root = arrays[g.axiom]
    return NdString(info.dims, tuple(root.ravel().tolist()), tuple(tokens))


def grammar_to_nd(g: Grammar2D) -> GrammarNd:
    """Embed a 2D grammar: rows are axis 1, columns axis 2."""
    rules: dict[str, RuleNd] = {}
    for name, rule in g.rules.items():
        if isinstance(rule, Terminal):
            rules[name] = TerminalNd(rule.token)
        elif isinstance(rule, Horiz):
            rules[name] = ConcatNd(2, rule.left, rule.right)
        elif isinstance(rule, Vert):
            rules[name] = ConcatNd(1, rule.top, rule.bottom)
        elif isinstance(rule, RunH):
            rules[name] = RunNd(2, rule.count, rule.child)
        elif isinstance(rule, RunV):
            rules[name] = RunNd(1, rule.count, rule.child)
        else:
            raise BadParam(f"unknown rule type for {name}")
    return GrammarNd(2, g.axiom, rules)


# ---------------------------------------------------------------------------
# the d-dimensional de Bruijn hypercube and its grammar
# ---------------------------------------------------------------------------


def _check_bdk(d: int, k: int) -> None:
    if d < 1 or k < 1 or d * k > 18:
        raise BadParam(f"need d, k >= 1 and d*k <= 18, got d={d}, k={k}")


def _padded_debruijn(k: int) -> list[int]:
    bits = debruijn_bits(k)
    return bits + bits[: k - 1]


def bdk(d: int, k: int) -> NdString:
    """d-dimensional hypercube of side 2^k + k - 1 whose cell at (i_1..i_d)
    is the d-bit value D[i_1]...D[i_d] (first axis most significant), D the
    padded de Bruijn string of order k.  Every k x ... x k subcube encodes a
    distinct tuple of k-bit windows, so all 2^(dk) of them are distinct."""
    _check_bdk(d, k)
    seq = np.array(_padded_debruijn(k), dtype=np.int64)
    n = len(seq)
    if n**d > MAX_CELLS:
        raise TooLarge(f"side {n} in {d} axes exceeds the {MAX_CELLS}-cell cap")
    grid = np.zeros((n,) * d, dtype=np.int64)
    for i in range(d):
        shape = [1] * d
        shape[i] = n
        grid = grid * 2 + seq.reshape(shape)
    return NdString.from_tokens((n,) * d, grid.ravel().tolist())


def build_bdk_grammar(d: int, k: int) -> GrammarNd:
    """Grammar for bdk(d, k) by recursive doubling over the dimensions.

    Dimension step: two copies of the (d-1)-dimensional grammar handle the
    cells whose leading bit is 0 resp. 1, and a lift of the 1D balanced
    grammar for D concatenates whole slabs along the new leading axis.  The
    terminals of each copy are relabeled by prefixing the leading bit, so
    sizes follow |G_d| = 2 |G_(d-1)| + |G_1| - 2.
    """
    _check_bdk(d, k)
    dstr = "".join(str(b) for b in _padded_debruijn(k))
    rules: dict[str, RuleNd] = {}

    def slp(text: str, axis: int, prefix: str, leaf: Mapping[str, str]) -> str:
        """Balanced concatenation along ``axis`` with content deduplication."""
        memo: dict[str, str] = {}
        count = 0

        def build(s: str) -> str:
            nonlocal count
            if s in memo:
                return memo[s]
            if len(s) == 1:
                name = leaf[s]
            else:
                mid = len(s) // 2
                first, second = build(s[:mid]), build(s[mid:])
                count += 1
                name = f"{prefix}N{count}"
                rules[name] = ConcatNd(axis, first, second)
            memo[s] = name
            return name

        return build(text)

    def grammar_for(dim: int, tag: int) -> str:
        """Axiom for the dim-cube whose cell ids carry high bits ``tag``."""
        if dim == 1:
            leaf: dict[str, str] = {}
            for bit in "01":
                tok = str(tag * 2 + int(bit))
                tname = f"T{tok}"
                rules.setdefault(tname, TerminalNd(tok))
                leaf[bit] = tname
            return slp(dstr, d, f"D1T{tag}", leaf)
        a0 = grammar_for(dim - 1, tag * 2)
        a1 = grammar_for(dim - 1, tag * 2 + 1)
        return slp(dstr, d - dim + 1, f"D{dim}T{tag}", {"0": a0, "1": a1})

    axiom = grammar_for(d, 0)
    return GrammarNd(d, axiom, rules)


# ---------------------------------------------------------------------------
# dD window complexity
# ---------------------------------------------------------------------------


def iter_shape_labels_nd(
    x: NdString, budget: WorkBudget | None = None
) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yield (shape, labels) for every window shape, in odometer order
    (last axis fastest).  ``labels`` assigns equal ids to equal windows.

    Each shape is derived from its predecessor by one ranking pass, so the
    enumeration shares the per-axis passes instead of hashing every window
    of every shape from scratch.
    """
    budget = ensure_budget(budget)
    d = x.ndim

    def rec(
        axis: int, base: np.ndarray, prefix: tuple[int, ...]
    ) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
        n_axis = x.dims[axis - 1]
        cur = base
        for ka in range(1, n_axis + 1):
            if ka > 1:
                w = n_axis - ka + 1
                lo = [slice(None)] * d
                hi = [slice(None)] * d
                lo[axis - 1] = slice(0, w)
                hi[axis - 1] = slice(ka - 1, ka - 1 + w)
                budget.charge(cur[tuple(lo)].size, "window ranking")
                cur = _pair_rank(cur[tuple(lo)], base[tuple(hi)])
            if axis == d:
                yield prefix + (ka,), cur
            else:
                yield from rec(axis + 1, cur, prefix + (ka,))

    yield from rec(1, x._grid, ())


def shape_labels_nd(
    x: NdString, shape: Sequence[int], budget: WorkBudget | None = None
) -> np.ndarray:
    """Window labels for a single shape (one chain of ranking passes)."""
    budget = ensure_budget(budget)
    shape = tuple(int(k) for k in shape)
    if len(shape) != x.ndim or any(
        not 1 <= k <= n for k, n in zip(shape, x.dims)
    ):
        raise OutOfBounds(f"window shape {shape} does not fit in {x.dims}")
    d = x.ndim
    cur = x._grid
    for axis in range(d):
        base = cur
        n_axis = x.dims[axis]
        for ka in range(2, shape[axis] + 1):
            w = n_axis - ka + 1
            lo = [slice(None)] * d
            hi = [slice(None)] * d
            lo[axis] = slice(0, w)
            hi[axis] = slice(ka - 1, ka - 1 + w)
            budget.charge(cur[tuple(lo)].size, "window ranking")
            cur = _pair_rank(cur[tuple(lo)], base[tuple(hi)])
    return cur


def factor_count_nd(
    x: NdString, shape: Sequence[int], budget: WorkBudget | None = None
) -> int:
    """Number of distinct windows of the given shape."""
    return int(shape_labels_nd(x, shape, budget).max()) + 1


def delta_nd(x: NdString, budget: WorkBudget | None = None) -> Fraction:
    """max over window shapes of (#distinct windows) / (window volume)."""
    best = Fraction(0)
    for shape, labels in iter_shape_labels_nd(x, budget):
        val = Fraction(int(labels.max()) + 1, prod(shape))
        if val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# dD macro schemes (validator/decoder only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxNd:
    """A copied box: 1-based inclusive corners ``lo``..``hi`` with the
    source box of the same extents starting at corner ``src``."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]
    src: tuple[int, ...]


@dataclass(frozen=True)
class MacroSchemeNd:
    dims: tuple[int, ...]
    explicit: Mapping[tuple[int, ...], str]
    boxes: tuple[BoxNd, ...]

    @property
    def size(self) -> int:
        return len(self.explicit) + len(self.boxes)


def _nd_flat(dims: tuple[int, ...], pos: tuple[int, ...]) -> int:
    idx = 0
    for p, n in zip(pos, dims):
        idx = idx * n + (p - 1)
    return idx


def _analyze_nd(s: MacroSchemeNd):
    d = len(s.dims)
    total = prod(s.dims)
    if d < 1 or any(n < 1 for n in s.dims):
        return SchemeCheck(False, s.size, "BadParam", f"bad dims {s.dims}"), None
    if total > MAX_CELLS:
        return (
            SchemeCheck(False, s.size, "TooLarge", f"{total} cells exceed the cap"),
            None,
        )

    def in_bounds(pos: tuple[int, ...]) -> bool:
        return len(pos) == d and all(
            1 <= p <= n for p, n in zip(pos, s.dims)
        )

    # source_of[cell] = flat index copied from, or -1 when explicit
    source_of = np.full(total, -2, dtype=np.int64)
    tokens: dict[int, str] = {}
    for pos, tok in s.explicit.items():
        pos = tuple(pos)
        if not in_bounds(pos):
            return (
                SchemeCheck(False, s.size, "OutOfBounds", f"explicit cell {pos}"),
                None,
            )
        if not tok or any(ch.isspace() for ch in str(tok)):
            return (
                SchemeCheck(False, s.size, "BadParam", f"invalid token {tok!r}"),
                None,
            )
        f = _nd_flat(s.dims, pos)
        if source_of[f] != -2:
            return (
                SchemeCheck(False, s.size, "NotPartition", f"cell {pos} covered twice"),
                None,
            )
        source_of[f] = -1
        tokens[f] = str(tok)
    for box in s.boxes:
        lo, hi, src = tuple(box.lo), tuple(box.hi), tuple(box.src)
        if not (in_bounds(lo) and in_bounds(hi)) or any(
            a > b for a, b in zip(lo, hi)
        ):
            return (
                SchemeCheck(False, s.size, "OutOfBounds", f"box {lo}..{hi}"),
                None,
            )
        ext = tuple(b - a for a, b in zip(lo, hi))
        if not in_bounds(src) or not in_bounds(
            tuple(p + e for p, e in zip(src, ext))
        ):
            return (
                SchemeCheck(
                    False, s.size, "OutOfBoundsSource", f"box {lo}..{hi} from {src}"
                ),
                None,
            )
        for off in np.ndindex(*(e + 1 for e in ext)):
            pos = tuple(a + o for a, o in zip(lo, off))
            f = _nd_flat(s.dims, pos)
            if source_of[f] != -2:
                return (
                    SchemeCheck(
                        False, s.size, "NotPartition", f"cell {pos} covered twice"
                    ),
                    None,
                )
            source_of[f] = _nd_flat(s.dims, tuple(p + o for p, o in zip(src, off)))
    holes = np.flatnonzero(source_of == -2)
    if holes.size:
        return (
            SchemeCheck(
                False, s.size, "NotPartition", f"{holes.size} cells uncovered"
            ),
            None,
        )
    # acyclicity: every chain of copies must reach an explicit cell
    state = np.zeros(total, dtype=np.int8)  # 0 new, 1 on stack, 2 ok
    for start in range(total):
        if state[start] == 2:
            continue
        chain = []
        cell = start
        while True:
            if state[cell] == 1:
                return (
                    SchemeCheck(
                        False, s.size, "CyclicMap", f"copy cycle through cell {cell}"
                    ),
                    None,
                )
            if state[cell] == 2:
                break
            state[cell] = 1
            chain.append(cell)
            if source_of[cell] == -1:
                break
            cell = int(source_of[cell])
        for c in chain:
            state[c] = 2
    return SchemeCheck(True, s.size, None, None), (source_of, tokens)


def validate_nd_scheme(s: MacroSchemeNd) -> SchemeCheck:
    """Partition + bounds + acyclic copy map, reported without raising."""
    check, _ = _analyze_nd(s)
    return check


def decode_nd_scheme(s: MacroSchemeNd) -> NdString:
    """The unique d-dimensional string the scheme describes."""
    check, data = _analyze_nd(s)
    if not check.ok:
        raise _ERRORS[check.error](check.message)
    source_of, tokens = data
    total = prod(s.dims)
    out: list[str | None] = [None] * total
    for f, tok in tokens.items():
        out[f] = tok
    for start in range(total):
        if out[start] is not None:
            continue
        chain = [start]
        cell = int(source_of[start])
        while out[cell] is None:
            chain.append(cell)
            cell = int(source_of[cell])
        tok = out[cell]
        for c in reversed(chain):
            out[c] = tok
    return NdString.from_tokens(s.dims, out)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_nd(x: NdString) -> str:
    """Header ``nd <d> <n1> ... <nd>``, then tokens in generalized
    row-major order, one last-axis row per line."""
    head = "nd " + str(x.ndim) + " " + " ".join(map(str, x.dims))
    toks = x.tokens_flat()
    width = x.dims[-1]
    lines = [head]
    for i in range(0, len(toks), width):
        lines.append(" ".join(toks[i : i + width]))
    return "\n".join(lines) + "\n"


def parse_nd(text: str) -> NdString:
    lines = text.splitlines()
    header: list[str] | None = None
    toks: list[str] = []
    for line in lines:
        parts = line.split()
        if not parts:
            continue
        if header is None:
            header = parts
            continue
        toks.extend(parts)
    if header is None or len(header) < 2 or header[0] != "nd":
        raise ParseError("expected header 'nd <d> <n1> ... <nd>'")
    try:
        d = int(header[1])
        dims = tuple(int(t) for t in header[2:])
    except ValueError as exc:
        raise ParseError(f"bad header {' '.join(header)!r}") from exc
    if d < 1 or len(dims) != d:
        raise ParseError(f"header declares {d} axes but lists {len(dims)} extents")
    if any(n < 1 for n in dims):
        raise ParseError(f"extents must be >= 1, got {dims}")
    if prod(dims) > MAX_CELLS:
        raise TooLarge(f"{'x'.join(map(str, dims))} exceeds the {MAX_CELLS}-cell cap")
    if len(toks) != prod(dims):
        raise ParseError(
            f"expected {prod(dims)} tokens for dims {dims}, got {len(toks)}"
        )
    return NdString.from_tokens(dims, toks)


def read_nd(path) -> NdString:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_nd(fh.read())


def write_nd(path, x: NdString) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_nd(x))
