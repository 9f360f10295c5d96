"""Acceptance gate: one test per shipped criterion.

Each test prints a single ``criterion N (...): PASS|FAIL`` line (run pytest
with ``-s`` or check the captured output on failure) followed by the
per-check details, then asserts the verdict.

Criterion 2 is expected to fail: the smallest attractor of the 2x2 identity
matrix has size 3, not 2 — any single diagonal position misses one of the two
occurrences of the off-diagonal symbol, and any two positions still leave an
uncovered 1x1 or 2x2 window.  The check is kept faithful rather than widened.
"""

from repet2d import accept


def _run(number: int) -> None:
    res = accept.run_criterion(number)
    print()
    print(res.line)
    for d in res.details:
        print("   ", d)
    assert res.ok, res.line


def test_criterion_1_pinned_exact_values():
    _run(1)


def test_criterion_2_attractor_suite():
    _run(2)


def test_criterion_3_measure_ordering_invariants():
    _run(3)


def test_criterion_4_grammar_and_scheme_round_trips():
    _run(4)


def test_criterion_5_direct_access():
    _run(5)


def test_criterion_6_separation_directions():
    _run(6)


def test_criterion_7_linearization_suite():
    _run(7)


def test_criterion_8_d_dimensional_embedding():
    _run(8)


def test_criterion_9_declared_desk_scale_limits():
    _run(9)
