"""Straight-line programs on 2D strings.

A grammar has one rule per variable: a terminal (single symbol), a horizontal
or vertical concatenation of two variables, or — in run-length grammars — a
horizontal/vertical run X -> B^k with k >= 2. Size counts 1 per terminal rule
and 2 per other rule; run exponents are charged separately by bit_size.

g_exact performs an exhaustive branch-and-bound over "closed content sets":
a grammar of minimum size corresponds to a minimum-cost set of distinct
factor contents that contains the whole matrix and in which every non-unit
content can be split (or de-run) into members of the set. Only the set
matters for the size, which keeps the search space manageable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .budget import WorkBudget, ensure_budget
from .core2d import MAX_CELLS, Matrix2D, TokenGrid
from .errors import (
    BadParam,
    CycleDetected,
    DanglingVariable,
    DimMismatch,
    DuplicateRHS,
    ParseError,
    TooLarge,
)


@dataclass(frozen=True)
class Terminal:
    token: str


@dataclass(frozen=True)
class Horiz:
    left: str
    right: str


@dataclass(frozen=True)
class Vert:
    top: str
    bottom: str


@dataclass(frozen=True)
class RunH:
    count: int
    child: str


@dataclass(frozen=True)
class RunV:
    count: int
    child: str


Rule = Union[Terminal, Horiz, Vert, RunH, RunV]


def rule_size(rule: Rule) -> int:
    return 1 if isinstance(rule, Terminal) else 2


def rule_bit_size(rule: Rule) -> int:
    """Like rule_size but additionally charges the bits of run exponents."""
    if isinstance(rule, (RunH, RunV)):
        return 2 + rule.count.bit_length()
    return rule_size(rule)


def _children(rule: Rule) -> tuple[str, ...]:
    if isinstance(rule, Terminal):
        return ()
    if isinstance(rule, Horiz):
        return (rule.left, rule.right)
    if isinstance(rule, Vert):
        return (rule.top, rule.bottom)
    return (rule.child,)


def _rhs_key(rule: Rule) -> tuple:
    if isinstance(rule, Terminal):
        return ("term", rule.token)
    if isinstance(rule, Horiz):
        return ("h", rule.left, rule.right)
    if isinstance(rule, Vert):
        return ("v", rule.top, rule.bottom)
    if isinstance(rule, RunH):
        return ("rh", rule.count, rule.child)
    return ("rv", rule.count, rule.child)


@dataclass(frozen=True, eq=True)
class Grammar2D:
    axiom: str
    rules: Mapping[str, Rule]

    @property
    def size(self) -> int:
        return sum(rule_size(r) for r in self.rules.values())

    @property
    def bit_size(self) -> int:
        return sum(rule_bit_size(r) for r in self.rules.values())

    @property
    def is_runlength(self) -> bool:
        return any(isinstance(r, (RunH, RunV)) for r in self.rules.values())


@dataclass(frozen=True)
class GrammarInfo:
    size: int
    bit_size: int
    rows: int
    cols: int
    is_runlength: bool
    dims: Mapping[str, tuple[int, int]]


def validate_grammar(g: Grammar2D) -> GrammarInfo:
    """Check structural validity and return per-variable dimensions.

    Rejects: undefined axiom or child (DanglingVariable), run exponents < 2
    (BadParam), cyclic derivations (CycleDetected), mismatched concatenation
    dimensions (DimMismatch), and two variables with an identical right-hand
    side (DuplicateRHS).
    """
    if g.axiom not in g.rules:
        raise DanglingVariable(f"axiom {g.axiom!r} has no rule")
    seen_rhs: dict[tuple, str] = {}
    for name, rule in g.rules.items():
        if isinstance(rule, (RunH, RunV)) and rule.count < 2:
            raise BadParam(
                f"run rule {name} has exponent {rule.count}; need >= 2"
            )
        for child in _children(rule):
            if child not in g.rules:
                raise DanglingVariable(
                    f"rule {name} references undefined variable {child!r}"
                )
        key = _rhs_key(rule)
        if key in seen_rhs:
            raise DuplicateRHS(
                f"rules {seen_rhs[key]} and {name} have the same right-hand side"
            )
        seen_rhs[key] = name

    dims: dict[str, tuple[int, int]] = {}
    state: dict[str, int] = {}  # 1 = in progress, 2 = done

    def resolve(name: str) -> tuple[int, int]:
        if state.get(name) == 2:
            return dims[name]
        if state.get(name) == 1:
            raise CycleDetected(f"variable {name} derives itself")
        state[name] = 1
        rule = g.rules[name]
        if isinstance(rule, Terminal):
            dim = (1, 1)
        elif isinstance(rule, Horiz):
            (r1, c1), (r2, c2) = resolve(rule.left), resolve(rule.right)
            if r1 != r2:
                raise DimMismatch(
                    f"{name}: horizontal children {rule.left} ({r1} rows) "
                    f"and {rule.right} ({r2} rows) differ"
                )
            dim = (r1, c1 + c2)
        elif isinstance(rule, Vert):
            (r1, c1), (r2, c2) = resolve(rule.top), resolve(rule.bottom)
            if c1 != c2:
                raise DimMismatch(
                    f"{name}: vertical children {rule.top} ({c1} cols) "
                    f"and {rule.bottom} ({c2} cols) differ"
                )
            dim = (r1 + r2, c1)
        elif isinstance(rule, RunH):
            r, c = resolve(rule.child)
            dim = (r, c * rule.count)
        else:
            r, c = resolve(rule.child)
            dim = (r * rule.count, c)
        dims[name] = dim
        state[name] = 2
        return dim

    for name in g.rules:
        resolve(name)
    rows, cols = dims[g.axiom]
    return GrammarInfo(
        g.size, g.bit_size, rows, cols, g.is_runlength, dims
    )


def _reachable(g: Grammar2D) -> set[str]:
    out: set[str] = set()
    stack = [g.axiom]
    while stack:
        name = stack.pop()
        if name in out:
            continue
        out.add(name)
        stack.extend(_children(g.rules[name]))
    return out


def expand(g: Grammar2D, budget: WorkBudget | None = None) -> Matrix2D:
    """The matrix derived from the axiom."""
    info = validate_grammar(g)
    budget = ensure_budget(budget)
    if info.rows * info.cols > MAX_CELLS:
        raise TooLarge(
            f"expansion is {info.rows}x{info.cols}; refusing more than "
            f"{MAX_CELLS} cells"
        )
    reachable = _reachable(g)
    tokens = sorted(
        r.token
        for name, r in g.rules.items()
        if name in reachable and isinstance(r, Terminal)
    )
    token_id = {t: i for i, t in enumerate(tokens)}

    order: list[str] = []
    seen: set[str] = set()

    def topo(name: str) -> None:
        if name in seen:
            return
        seen.add(name)
        for child in _children(g.rules[name]):
            topo(child)
        order.append(name)

    topo(g.axiom)
    arrays: dict[str, np.ndarray] = {}
    for name in order:
        rule = g.rules[name]
        rows, cols = info.dims[name]
        budget.charge(rows * cols, "grammar expansion")
        if isinstance(rule, Terminal):
            arr = np.full((1, 1), token_id[rule.token], dtype=np.int64)
        elif isinstance(rule, Horiz):
            arr = np.concatenate(
                [arrays[rule.left], arrays[rule.right]], axis=1
            )
        elif isinstance(rule, Vert):
            arr = np.concatenate(
                [arrays[rule.top], arrays[rule.bottom]], axis=0
            )
        elif isinstance(rule, RunH):
            arr = np.tile(arrays[rule.child], (1, rule.count))
        else:
            arr = np.tile(arrays[rule.child], (rule.count, 1))
        arrays[name] = arr
    root = arrays[g.axiom]
    return Matrix2D(
        rows=info.rows,
        cols=info.cols,
        cells=tuple(root.ravel().tolist()),
        alphabet=tuple(tokens),
    )


# ---------------------------------------------------------------------------
# grammar trees (derivation trees with secondary occurrences pruned)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrammarTreeNode:
    """kind is one of 'primary' (first occurrence of a variable, in preorder),
    'secondary' (further occurrences, kept as leaves), 'terminal' (symbol
    leaf), or 'collapsed' (the remaining k-1 copies under a run rule)."""

    label: str
    kind: str
    top: int
    left: int
    rows: int
    cols: int
    children: tuple["GrammarTreeNode", ...] = ()


@dataclass(frozen=True)
class GrammarTree:
    root: GrammarTreeNode
    node_count: int


def grammar_tree(g: Grammar2D) -> GrammarTree:
    """The derivation tree in which only the preorder-first occurrence of each
    variable is expanded (left/top before right/bottom); later occurrences
    become secondary leaves, and the last k-1 copies of a run collapse into
    one leaf. Every node carries the rectangle it occupies in the expansion
    of the axiom (1-based top/left corner plus its own dimensions)."""
    info = validate_grammar(g)
    dims = info.dims
    expanded: set[str] = set()
    count = 0

    def visit(name: str, top: int, left: int) -> GrammarTreeNode:
        nonlocal count
        count += 1
        rows, cols = dims[name]
        if name in expanded:
            return GrammarTreeNode(name, "secondary", top, left, rows, cols)
        expanded.add(name)
        rule = g.rules[name]
        if isinstance(rule, Terminal):
            count += 1
            leaf = GrammarTreeNode(rule.token, "terminal", top, left, 1, 1)
            return GrammarTreeNode(name, "primary", top, left, 1, 1, (leaf,))
        if isinstance(rule, Horiz):
            a = visit(rule.left, top, left)
            b = visit(rule.right, top, left + dims[rule.left][1])
            return GrammarTreeNode(name, "primary", top, left, rows, cols, (a, b))
        if isinstance(rule, Vert):
            a = visit(rule.top, top, left)
            b = visit(rule.bottom, top + dims[rule.top][0], left)
            return GrammarTreeNode(name, "primary", top, left, rows, cols, (a, b))
        first = visit(rule.child, top, left)
        count += 1
        if isinstance(rule, RunH):
            w = dims[rule.child][1]
            rest = GrammarTreeNode(
                f"{rule.child}h^{rule.count - 1}",
                "collapsed",
                top,
                left + w,
                rows,
                cols - w,
            )
        else:
            h = dims[rule.child][0]
            rest = GrammarTreeNode(
                f"{rule.child}v^{rule.count - 1}",
                "collapsed",
                top + h,
                left,
                rows - h,
                cols,
            )
        return GrammarTreeNode(name, "primary", top, left, rows, cols, (first, rest))

    root = visit(g.axiom, 1, 1)
    return GrammarTree(root, count)


# ---------------------------------------------------------------------------
# exact smallest grammar
# ---------------------------------------------------------------------------

Content = TokenGrid


def _content_key(c: Content) -> tuple:
    return (len(c), len(c[0]), c)


def _h_split(c: Content, w: int) -> tuple[Content, Content]:
    return tuple(r[:w] for r in c), tuple(r[w:] for r in c)


def _v_split(c: Content, h: int) -> tuple[Content, Content]:
    return c[:h], c[h:]


def _options(
    c: Content, allow_runs: bool
) -> list[tuple[str, int, tuple[Content, ...]]]:
    rows, cols = len(c), len(c[0])
    opts: list[tuple[str, int, tuple[Content, ...]]] = []
    for w in range(1, cols):
        opts.append(("h", w, _h_split(c, w)))
    for h in range(1, rows):
        opts.append(("v", h, _v_split(c, h)))
    if allow_runs:
        for ell in range(2, cols + 1):
            if cols % ell:
                continue
            w = cols // ell
            base = tuple(r[:w] for r in c)
            if all(
                tuple(r[i * w : (i + 1) * w] for r in c) == base
                for i in range(1, ell)
            ):
                opts.append(("rh", ell, (base,)))
        for ell in range(2, rows + 1):
            if rows % ell:
                continue
            h = rows // ell
            base = c[:h]
            if all(c[i * h : (i + 1) * h] == base for i in range(1, ell)):
                opts.append(("rv", ell, (base,)))
    return opts


def _cost(c: Content) -> int:
    return 1 if len(c) == 1 and len(c[0]) == 1 else 2


class _WorkLimitHit(Exception):
    """Internal: unwinds the search when work_limit is exhausted."""


@dataclass
class _SearchState:
    allow_runs: bool
    work_limit: int
    content_limit: int
    budget: WorkBudget
    option_cache: dict[Content, list[tuple[str, int, tuple[Content, ...]]]] = field(
        default_factory=dict
    )
    work: int = 0

    def options(self, c: Content) -> list[tuple[str, int, tuple[Content, ...]]]:
        cached = self.option_cache.get(c)
        if cached is None:
            cached = _options(c, self.allow_runs)
            self.option_cache[c] = cached
            if len(self.option_cache) > self.content_limit:
                raise TooLarge(
                    f"grammar search visited more than {self.content_limit} "
                    "distinct factor contents"
                )
        return cached

    def tick(self) -> None:
        self.work += 1
        self.budget.charge(1, "grammar search")
        if self.work > self.work_limit:
            raise _WorkLimitHit


def _close_and_bound(
    state: _SearchState, members: set[Content], closed: set[Content]
) -> tuple[list[Content], int, list[Content]]:
    """Close every content that already splits within the set; return the
    still-open contents, an admissible lower bound on the extra cost to close
    them, and the list of contents newly marked closed (for undo)."""
    newly: list[Content] = []
    changed = True
    while changed:
        changed = False
        for c in list(members):
            if _cost(c) == 1 or c in closed:
                continue
            for _, _, parts in state.options(c):
                if all(p in members for p in parts):
                    closed.add(c)
                    newly.append(c)
                    changed = True
                    break
    opens = [
        c for c in members if _cost(c) == 2 and c not in closed
    ]
    bound = 0
    for c in opens:
        best = None
        for _, _, parts in state.options(c):
            added = sum(_cost(p) for p in set(parts) if p not in members)
            if best is None or added < best:
                best = added
        if best is None:  # non-unit content with no option cannot happen
            best = 0
        bound = max(bound, best)
    return opens, bound, newly


def _search(
    state: _SearchState,
    members: set[Content],
    closed: set[Content],
    cost: int,
    best: list,
) -> None:
    state.tick()
    opens, bound, newly = _close_and_bound(state, members, closed)
    if not opens:
        if cost < best[0]:
            best[0] = cost
            best[1] = set(members)
        for c in newly:
            closed.discard(c)
        return
    if cost + max(bound, 1) >= best[0]:
        for c in newly:
            closed.discard(c)
        return
    pivot = max(opens, key=_content_key)
    branches: list[tuple[int, int, tuple[Content, ...]]] = []
    seen_parts: set[tuple[Content, ...]] = set()
    for rank, (_, _, parts) in enumerate(state.options(pivot)):
        new = tuple(
            sorted(
                {p for p in parts if p not in members}, key=_content_key
            )
        )
        if not new or new in seen_parts:
            if not new:
                raise AssertionError("open content has a zero-cost option")
            continue
        seen_parts.add(new)
        branches.append((sum(_cost(p) for p in new), rank, new))
    branches.sort(key=lambda b: (b[0], b[1]))
    for added_cost, _, new in branches:
        if cost + added_cost >= best[0]:
            continue
        for p in new:
            members.add(p)
        _search(state, members, closed, cost + added_cost, best)
        for p in new:
            members.discard(p)
    for c in newly:
        closed.discard(c)


def _greedy_upper(state: _SearchState, root: Content) -> tuple[int, set[Content]]:
    members: set[Content] = {root}
    cost = _cost(root)
    while True:
        opens = [
            c
            for c in members
            if _cost(c) == 2
            and not any(
                all(p in members for p in parts)
                for _, _, parts in state.options(c)
            )
        ]
        if not opens:
            return cost, members
        c = max(opens, key=_content_key)
        best_new: tuple[Content, ...] | None = None
        best_added = None
        for _, _, parts in state.options(c):
            new = tuple(
                sorted({p for p in parts if p not in members}, key=_content_key)
            )
            added = sum(_cost(p) for p in new)
            if best_added is None or added < best_added:
                best_added = added
                best_new = new
        assert best_new is not None and best_added is not None
        members.update(best_new)
        cost += best_added


def _grammar_from_contents(
    root: Content, members: set[Content], allow_runs: bool
) -> Grammar2D:
    """Deterministic reconstruction: each content takes its first applicable
    option; variables are named X1, X2, ... in preorder from the axiom."""
    names: dict[Content, str] = {}
    rules: dict[str, Rule] = {}

    def build(c: Content) -> str:
        if c in names:
            return names[c]
        name = f"X{len(names) + 1}"
        names[c] = name
        if _cost(c) == 1:
            rules[name] = Terminal(c[0][0])
            return name
        for kind, param, parts in _options(c, allow_runs):
            if not all(p in members for p in parts):
                continue
            if kind == "h":
                rules[name] = Horiz(build(parts[0]), build(parts[1]))
            elif kind == "v":
                rules[name] = Vert(build(parts[0]), build(parts[1]))
            elif kind == "rh":
                rules[name] = RunH(param, build(parts[0]))
            else:
                rules[name] = RunV(param, build(parts[0]))
            return name
        raise AssertionError("content set is not closed")

    axiom = build(root)
    return Grammar2D(axiom, rules)


@dataclass(frozen=True)
class GrammarSearchResult:
    """optimal is False when work_limit ran out: the grammar is then only the
    best upper bound found so far."""

    grammar: Grammar2D
    optimal: bool
    work: int

    @property
    def size(self) -> int:
        return self.grammar.size


def g_exact(
    m: Matrix2D,
    allow_runs: bool = False,
    work_limit: int = 2_000_000,
    content_limit: int = 5000,
    budget: WorkBudget | None = None,
) -> GrammarSearchResult:
    """A smallest grammar generating ``m`` (smallest run-length grammar when
    allow_runs). Exponential-time branch and bound; raises TooLarge once more
    than content_limit distinct factor contents have been considered, and
    stops with optimal=False when work_limit search steps run out."""
    state = _SearchState(
        allow_runs, work_limit, content_limit, ensure_budget(budget)
    )
    root = m.tokens()
    if _cost(root) == 1:
        g = Grammar2D("X1", {"X1": Terminal(root[0][0])})
        return GrammarSearchResult(g, True, 0)
    upper_cost, upper_set = _greedy_upper(state, root)
    best: list = [upper_cost, upper_set]
    members: set[Content] = {root}
    closed: set[Content] = set()
    optimal = True
    try:
        _search(state, members, closed, _cost(root), best)
    except _WorkLimitHit:
        optimal = False
    grammar = _grammar_from_contents(root, best[1], allow_runs)
    return GrammarSearchResult(grammar, optimal, state.work)


# ---------------------------------------------------------------------------
# named constructions
# ---------------------------------------------------------------------------


def build_ek_grammar(k: int) -> Grammar2D:
    """Grammar of size 10k-6 (4 when k=1) for the k x 2**k bit-count matrix
    whose column j spells j in binary, least significant bit on top."""
    if not 1 <= k <= 20:
        raise BadParam(f"k must be in 1..20, got {k}")
    rules: dict[str, Rule] = {"X0": Terminal("0"), "Y0": Terminal("1")}
    for h in range(1, k):
        rules[f"X{h}"] = Horiz(f"X{h-1}", f"X{h-1}")
        rules[f"Y{h}"] = Horiz(f"Y{h-1}", f"Y{h-1}")
    rules["S1"] = Horiz("X0", "Y0")
    for h in range(2, k + 1):
        rules[f"R{h}"] = Horiz(f"S{h-1}", f"S{h-1}")
        rules[f"C{h}"] = Horiz(f"X{h-1}", f"Y{h-1}")
        rules[f"S{h}"] = Vert(f"R{h}", f"C{h}")
    return Grammar2D(f"S{k}", rules)


def build_zeros_rlslp(n: int) -> Grammar2D:
    """Size-5 run-length grammar for the n x n all-zero matrix (n >= 2)."""
    if n < 2:
        raise BadParam(f"n must be >= 2, got {n}")
    return Grammar2D(
        "X",
        {"X": RunV(n, "Y"), "Y": RunH(n, "Z"), "Z": Terminal("0")},
    )


def _slp_1d(
    text: str, prefix: str, terminal_names: Mapping[str, str]
) -> tuple[str, dict[str, Rule], list[tuple[str, str, str]]]:
    """Balanced SLP for a 1D string by recursive halving with content
    deduplication. Returns (axiom, rules, binary structure) where the
    structure lists (name, left, right) in creation order."""
    rules: dict[str, Rule] = {}
    structure: list[tuple[str, str, str]] = []
    memo: dict[str, str] = {}

    def build(s: str) -> str:
        if s in memo:
            return memo[s]
        if len(s) == 1:
            name = terminal_names[s]
            rules.setdefault(name, Terminal(s))
        else:
            mid = len(s) // 2
            left, right = build(s[:mid]), build(s[mid:])
            name = f"{prefix}{len(structure) + 1}"
            rules[name] = Horiz(left, right)
            structure.append((name, left, right))
        memo[s] = name
        return name

    return build(text), rules, structure


def build_bk_grammar(k: int) -> Grammar2D:
    """Grammar for the (2**k + k - 1)-square matrix with entries
    2*D[i] + D[j], D a binary de Bruijn-based string: two relabeled
    horizontal grammars for the rows, glued by a vertical copy of the same
    structure. Total size 3s - 2 for a 1D grammar of size s."""
    from .families import debruijn1d

    if not 1 <= k <= 12:
        raise BadParam(f"k must be in 1..12, got {k}")
    d = "".join(debruijn1d(k).row_tokens(1))
    ax0, rules0, struct0 = _slp_1d(d, "H", {"0": "T0", "1": "T1"})
    d_hi = d.translate(str.maketrans("01", "23"))
    ax1, rules1, _ = _slp_1d(d_hi, "J", {"2": "T2", "3": "T3"})
    rules: dict[str, Rule] = {}
    rules.update(rules0)
    rules.update(rules1)
    lift_name = {"T0": ax0, "T1": ax1}
    for name, left, right in struct0:
        vname = "V" + name[1:]
        rules[vname] = Vert(lift_name[left], lift_name[right])
        lift_name[name] = vname
    return Grammar2D(lift_name[ax0], rules)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_grammar(g: Grammar2D) -> str:
    """Header ``axiom <name>`` (with an ``rl`` flag when run rules are used),
    then one rule per line in preorder from the axiom; unreachable rules
    follow sorted by name."""
    lines = [f"axiom {g.axiom} rl" if g.is_runlength else f"axiom {g.axiom}"]
    emitted: set[str] = set()
    order: list[str] = []

    def walk(name: str) -> None:
        if name in emitted or name not in g.rules:
            return
        emitted.add(name)
        order.append(name)
        for child in _children(g.rules[name]):
            walk(child)

    walk(g.axiom)
    order.extend(sorted(set(g.rules) - emitted))
    for name in order:
        rule = g.rules[name]
        if isinstance(rule, Terminal):
            lines.append(f"{name} = term {rule.token}")
        elif isinstance(rule, Horiz):
            lines.append(f"{name} = h {rule.left} {rule.right}")
        elif isinstance(rule, Vert):
            lines.append(f"{name} = v {rule.top} {rule.bottom}")
        elif isinstance(rule, RunH):
            lines.append(f"{name} = rh {rule.count} {rule.child}")
        else:
            lines.append(f"{name} = rv {rule.count} {rule.child}")
    return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar2D:
    axiom: str | None = None
    runs_allowed = False
    rules: dict[str, Rule] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if axiom is None:
            if parts[0] != "axiom" or len(parts) not in (2, 3):
                raise ParseError(
                    f"line {lineno}: expected 'axiom <name> [rl]', got {raw!r}"
                )
            axiom = parts[1]
            if len(parts) == 3:
                if parts[2] != "rl":
                    raise ParseError(
                        f"line {lineno}: unknown axiom flag {parts[2]!r}"
                    )
                runs_allowed = True
            continue
        if len(parts) < 4 or parts[1] != "=":
            raise ParseError(f"line {lineno}: malformed rule {raw!r}")
        name, kind, args = parts[0], parts[2], parts[3:]
        if name in rules:
            raise ParseError(f"line {lineno}: duplicate rule for {name}")
        if kind == "term" and len(args) == 1:
            rules[name] = Terminal(args[0])
        elif kind == "h" and len(args) == 2:
            rules[name] = Horiz(args[0], args[1])
        elif kind == "v" and len(args) == 2:
            rules[name] = Vert(args[0], args[1])
        elif kind in ("rh", "rv") and len(args) == 2:
            if not runs_allowed:
                raise ParseError(
                    f"line {lineno}: run rule {name} requires the rl flag "
                    "on the axiom line"
                )
            try:
                count = int(args[0])
            except ValueError:
                raise ParseError(
                    f"line {lineno}: run exponent {args[0]!r} is not an integer"
                ) from None
            if count < 2:
                raise ParseError(
                    f"line {lineno}: run exponent must be >= 2, got {count}"
                )
            rules[name] = (
                RunH(count, args[1]) if kind == "rh" else RunV(count, args[1])
            )
        else:
            raise ParseError(f"line {lineno}: malformed rule {raw!r}")
    if axiom is None:
        raise ParseError("missing axiom line")
    return Grammar2D(axiom, rules)


def read_grammar(path) -> Grammar2D:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def write_grammar(g: Grammar2D, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_grammar(g))
