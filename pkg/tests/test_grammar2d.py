import random

from repet2d import (
    Grammar2D,
    alt,
    bk,
    build_bk_grammar,
    build_ek_grammar,
    build_zeros_rlslp,
    ek,
    expand,
    format_grammar,
    g_exact,
    grammar_tree,
    parse_grammar,
    validate_grammar,
    zeros,
)
from repet2d.accept import random_grammar, sample_rlslp, sample_slp
from repet2d.errors import (
    BadParam,
    CycleDetected,
    DanglingVariable,
    DimMismatch,
    DuplicateRHS,
    ParseError,
)
from repet2d.grammar2d import Horiz, RunH, Terminal, Vert

from util import mat, random_matrix, raises


def test_validate_reports_sizes_and_dims():
    g = sample_slp()
    info = validate_grammar(g)
    assert info.size == 12
    assert not info.is_runlength
    assert info.dims["S"] == (4, 6)
    assert info.dims["X"] == (1, 1)

    info_rl = validate_grammar(sample_rlslp())
    assert info_rl.size == 8
    assert info_rl.is_runlength


def test_validate_error_taxonomy():
    t = {"X": Terminal("0"), "Y": Terminal("1")}
    raises(DanglingVariable, validate_grammar, Grammar2D("S", t))
    raises(
        DanglingVariable,
        validate_grammar,
        Grammar2D("S", {"S": Horiz("X", "GONE"), **t}),
    )
    raises(
        CycleDetected,
        validate_grammar,
        Grammar2D("S", {"S": Horiz("A", "X"), "A": Vert("S", "X"), **t}),
    )
    raises(
        DuplicateRHS,
        validate_grammar,
        Grammar2D("S", {"S": Horiz("A", "B"), "A": Horiz("X", "Y"), "B": Horiz("X", "Y"), **t}),
    )
    # vertical glue of a 1x2 on a 1x1
    raises(
        DimMismatch,
        validate_grammar,
        Grammar2D("S", {"S": Vert("A", "X"), "A": Horiz("X", "Y"), **t}),
    )
    raises(
        BadParam,
        validate_grammar,
        Grammar2D("S", {"S": RunH(1, "X"), "X": Terminal("0")}),
    )


def test_expand_fixtures():
    assert expand(sample_slp()) == alt(4, 6)
    assert expand(sample_rlslp()) == alt(4, 6)
    assert expand(build_zeros_rlslp(7)) == zeros(7, 7)
    for k in (1, 2, 3, 4, 5):
        assert expand(build_ek_grammar(k)) == ek(k)
    for k in (1, 2, 3):
        assert expand(build_bk_grammar(k)) == bk(k)


def test_builder_sizes():
    # pinned constructions: linear in k for the bit-count family, quadratic
    # in k (logarithmic in the area) for the de Bruijn product
    for k in range(1, 8):
        assert build_ek_grammar(k).size == 10 * k - 6
    for k in range(1, 5):
        assert build_bk_grammar(k).size == 3 * k * k + 9 * k - 2
    assert build_zeros_rlslp(5).size == 5
    assert build_zeros_rlslp(64).size == 5
    raises(BadParam, build_ek_grammar, 0)
    raises(BadParam, build_bk_grammar, 0)
    raises(BadParam, build_zeros_rlslp, 0)


def naive_tree_count(g: Grammar2D) -> int:
    """Count pruned parse-tree nodes independently: expand the first
    occurrence of each variable in preorder, collapse run repeats; a
    terminal variable carries its symbol as a leaf child."""
    seen: set[str] = set()

    def walk(name: str) -> int:
        rule = g.rules[name]
        if name in seen:
            return 1  # secondary leaf
        seen.add(name)
        if isinstance(rule, Terminal):
            return 2
        if isinstance(rule, Horiz):
            return 1 + walk(rule.left) + walk(rule.right)
        if isinstance(rule, Vert):
            return 1 + walk(rule.top) + walk(rule.bottom)
        # run: expanded child once plus one collapsed leaf
        return 1 + walk(rule.child) + 1

    return walk(g.axiom)


def test_grammar_tree_against_naive_count():
    assert grammar_tree(sample_slp()).node_count == 13
    rng = random.Random(6)
    for _ in range(50):
        g = random_grammar(rng)
        t = grammar_tree(g)
        assert t.node_count == naive_tree_count(g)
        # the root covers the whole expansion
        m = expand(g)
        assert (t.root.rows, t.root.cols) == (m.rows, m.cols)
        assert (t.root.top, t.root.left) == (1, 1)


def test_grammar_tree_rectangles_tile():
    g = sample_rlslp()
    t = grammar_tree(g)
    m = expand(g)
    covered = [[0] * m.cols for _ in range(m.rows)]

    def paint(node):
        if node.children:
            for c in node.children:
                paint(c)
            return
        for y in range(node.top, node.top + node.rows):
            for x in range(node.left, node.left + node.cols):
                covered[y - 1][x - 1] += 1

    paint(t.root)
    assert all(v == 1 for row in covered for v in row)


def test_g_exact_optimal_small():
    res = g_exact(alt(4, 6))
    assert res.size == 12 and res.optimal
    assert expand(res.grammar) == alt(4, 6)
    res_rl = g_exact(alt(4, 6), allow_runs=True)
    assert res_rl.size == 8 and res_rl.optimal
    assert expand(res_rl.grammar) == alt(4, 6)


def test_g_exact_random_soundness():
    rng = random.Random(12)
    for _ in range(25):
        m = random_matrix(rng, 3, 3)
        plain = g_exact(m)
        rl = g_exact(m, allow_runs=True)
        assert plain.optimal and rl.optimal
        assert expand(plain.grammar) == m
        assert expand(rl.grammar) == m
        assert rl.size <= plain.size
        # any straight-line grammar needs ceil(log2 N) variables
        need = max(1, (m.area - 1).bit_length())
        assert len(plain.grammar.rules) >= need


def test_g_exact_single_cell():
    res = g_exact(mat("x"))
    assert res.size == 1 and res.optimal
    assert expand(res.grammar) == mat("x")


def test_g_exact_work_limit_flags_nonoptimal():
    res = g_exact(bk(2), allow_runs=True, work_limit=50)
    assert not res.optimal
    assert expand(res.grammar) == bk(2)  # still a correct upper bound


def test_format_parse_roundtrip():
    rng = random.Random(31)
    for _ in range(40):
        g = random_grammar(rng)
        back = parse_grammar(format_grammar(g))
        assert expand(back) == expand(g)
        assert back.size == g.size
    text = format_grammar(sample_rlslp())
    assert text.startswith("axiom S rl\n")


def test_parse_grammar_errors():
    raises(ParseError, parse_grammar, "")
    raises(ParseError, parse_grammar, "S = h A B\n")  # missing axiom header
    raises(ParseError, parse_grammar, "axiom S\nS = frob A B\n")
    raises(ParseError, parse_grammar, "axiom S\nS = h A\n")
    raises(ParseError, parse_grammar, "axiom S\nS = rh two X\nX = term 0\n")
    raises(ParseError, parse_grammar, "axiom S\nS = term 0\nS = term 1\n")
    # run rules require the rl flag on the header
    raises(ParseError, parse_grammar, "axiom S\nS = rh 3 X\nX = term 0\n")
