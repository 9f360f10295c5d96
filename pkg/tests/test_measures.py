import random
from fractions import Fraction

from repet2d import (
    AttractorSet,
    Matrix2D,
    WorkBudget,
    delta,
    delta_square,
    diagpad,
    diagpad_attractor,
    ek,
    gamma_exact,
    gamma_lower_bound_unique,
    identity,
    is_attractor,
    zeros,
)
from repet2d.errors import BadParam, ShapeTooLarge, TooLarge

from util import (
    mat,
    naive_delta,
    naive_delta_1d,
    naive_gamma,
    naive_is_attractor,
    random_matrix,
    raises,
    substring_complexity,
)


def test_delta_hand_values():
    assert delta(mat("0")).value == 1
    assert delta(zeros(3, 3)).value == 1
    assert delta(mat("01", "10")).value == Fraction(2, 1)
    # 2x2 identity: shapes (1,1)->2, (1,2)->2, (2,1)->2, (2,2)->1
    assert delta(identity(2)).value == 2
    res = delta(identity(2))
    assert (res.argmax_shape.k1, res.argmax_shape.k2) == (1, 1)


def test_delta_against_naive_oracle():
    rng = random.Random(20260814)
    for trial in range(120):
        m = random_matrix(rng, 5, 5, "01" if trial % 3 else "abc")
        assert delta(m).value == naive_delta(m), str(m)
        assert delta_square(m).value == naive_delta(m, square_only=True), str(m)
        assert delta_square(m).value <= delta(m).value


def test_delta_1d_matches_substring_complexity():
    """On one-row matrices delta must equal the classic 1D definition."""
    rng = random.Random(3)
    for n in list(range(1, 40)) + [100, 200]:
        s = "".join(rng.choice("01") for _ in range(n))
        m = Matrix2D.from_tokens([list(s)])
        assert delta(m).value == naive_delta_1d(s), s
    # Thue-Morse-ish sanity: delta of 0110100110010110 via the P(k) table
    s = "0110100110010110"
    table = substring_complexity(s)
    assert max(Fraction(p, k) for k, p in table.items()) == delta(
        Matrix2D.from_tokens([list(s)])
    ).value


def test_delta_table_option():
    m = ek(2)
    res = delta(m, with_table=True)
    assert res.table is not None
    assert res.table[(2, 2)] > 0
    assert res.value == max(
        Fraction(p, k1 * k2) for (k1, k2), p in res.table.items()
    )


def test_delta_budget_exhaustion():
    raises(ShapeTooLarge, delta, ek(4), budget=WorkBudget(limit=10))


def test_attractor_set_normalizes():
    a = AttractorSet.of([(2, 1), (1, 1), (2, 1)])
    assert a.positions == ((1, 1), (2, 1))
    assert len(a) == 2 and (2, 1) in a


def test_is_attractor_matches_naive():
    rng = random.Random(17)
    for _ in range(60):
        m = random_matrix(rng, 3, 4)
        cells = [
            (i, j) for i in range(1, m.rows + 1) for j in range(1, m.cols + 1)
        ]
        k = rng.randint(1, len(cells))
        cand = AttractorSet.of(rng.sample(cells, k))
        got = bool(is_attractor(m, cand))
        assert got == naive_is_attractor(m, cand.positions), f"{m}\n{cand}"


def test_is_attractor_reports_witness():
    m = mat("01", "10")
    chk = is_attractor(m, AttractorSet.of([(1, 1)]))
    assert not chk
    assert chk.shape is not None and chk.occurrence is not None
    # the reported factor really does avoid the candidate positions
    i, j = chk.occurrence
    assert not (i <= 1 < i + chk.shape.k1 and j <= 1 < j + chk.shape.k2)


def test_gamma_exact_minimal_and_valid():
    rng = random.Random(8)
    for _ in range(25):
        m = random_matrix(rng, 3, 3)
        att = gamma_exact(m)
        assert is_attractor(m, att)
        assert len(att) == naive_gamma(m), str(m)
        # minimality: dropping any position must break it
        for drop in att.positions:
            smaller = AttractorSet.of(p for p in att.positions if p != drop)
            if smaller.positions:
                assert not is_attractor(m, smaller)


def test_gamma_exact_known_values():
    assert len(gamma_exact(zeros(4, 4))) == 1
    assert len(gamma_exact(identity(2))) == 3
    assert len(gamma_exact(identity(3))) == 3
    assert len(gamma_exact(identity(4))) == 4
    assert len(gamma_exact(identity(3), square_only=True)) == 2
    assert len(gamma_exact(identity(4), square_only=True)) == 2
    # square-restricted never needs more positions than unrestricted
    rng = random.Random(4)
    for _ in range(20):
        m = random_matrix(rng, 3, 3)
        assert len(gamma_exact(m, square_only=True)) <= len(gamma_exact(m))


def test_gamma_exact_cell_limit():
    raises(TooLarge, gamma_exact, zeros(5, 5), cell_limit=20)
    assert len(gamma_exact(zeros(5, 5), cell_limit=25)) == 1


def test_gamma_lower_bound():
    rng = random.Random(11)
    for _ in range(25):
        m = random_matrix(rng, 3, 3)
        lb = gamma_lower_bound_unique(m)
        assert 0 <= lb <= len(gamma_exact(m)), str(m)
        # the full matrix occurs exactly once, so with its shape included
        # the bound is at least 1 and still sound
        lb_full = gamma_lower_bound_unique(m, extra_shapes=[(m.rows, m.cols)])
        assert 1 <= lb_full <= len(gamma_exact(m)), str(m)
    # the bound is strong on the bit-count family: doubles with each level
    assert gamma_lower_bound_unique(ek(2)) >= 4
    assert gamma_lower_bound_unique(ek(3)) >= 8
    assert gamma_lower_bound_unique(ek(6)) >= 64


def test_delta_le_gamma():
    rng = random.Random(23)
    for _ in range(40):
        m = random_matrix(rng, 3, 3)
        assert delta(m).value <= len(gamma_exact(m))


def test_diagpad_attractor_construction():
    for m, n in [(3, 3), (3, 4), (4, 3), (4, 6), (6, 4), (5, 5), (7, 9), (9, 7)]:
        mtx = diagpad(m, n)
        att = diagpad_attractor(m, n)
        assert is_attractor(mtx, att), (m, n)
        assert len(att) == min(m, n) + (1 if m != n else 0), (m, n)
        assert delta(mtx).value <= 2
    # the construction needs a 3x3 diagonal block to anchor on
    raises(BadParam, diagpad_attractor, 2, 5)
    raises(BadParam, diagpad_attractor, 5, 2)
