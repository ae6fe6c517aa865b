import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autoseq.basek import (
    DigitSum,
    Pattern,
    PatternCount,
    PolyMap,
    SequenceSpec,
    eval_seq,
    thue_morse_spec,
)
from autoseq.dfao import compile_spec
from autoseq.periodicity import (
    InsufficientData,
    InvalidMatchExponent,
    SearchCapExceeded,
    boundary_occurrence,
    check_poly_condition,
    construct_refutation,
    find_gap_multiple,
    render_scan_report,
    scan_everywhere_nonperiodic,
    scan_ultimate_period,
    solve_residue,
)

from .conftest import oracle_nonzero_count


def brute_gap_multiple(step, min_gap, base, floor_exp=0, limit=10**6):
    """Reference search: scan x upward and inspect the digits directly."""
    for x in range(1, limit):
        v = x * step
        nonzero = []
        e = 0
        while v:
            v, d = divmod(v, base)
            if d:
                nonzero.append((e, d))
            e += 1
        if nonzero[0][1] != 1 or nonzero[0][0] < floor_exp:
            continue
        if len(nonzero) == 1 or nonzero[1][0] - nonzero[0][0] > min_gap:
            return x
    return None


def test_gap_multiple_examples():
    w = find_gap_multiple(3, 2, 2)
    assert (w.factor, w.multiple, w.low_exp, w.gap) == (3, 9, 0, 3)
    w = find_gap_multiple(1, 5, 2)
    assert (w.factor, w.multiple, w.gap) == (1, 1, None)
    w = find_gap_multiple(5, 3, 2)
    assert (w.factor, w.multiple, w.low_exp, w.gap) == (13, 65, 0, 6)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 12), st.integers(0, 6), st.sampled_from([2, 3]), st.integers(0, 3))
def test_gap_multiple_is_least(step, min_gap, base, floor_exp):
    expected = brute_gap_multiple(step, min_gap, base, floor_exp)
    w = find_gap_multiple(step, min_gap, base, floor_exp)
    assert w.factor == expected
    assert w.multiple == expected * step


def test_gap_multiple_digit_invariants_reverify():
    # big parameters on purpose: only the congruence search reaches these
    for step, min_gap, base in [(49, 20, 10), (37, 15, 3), (50, 20, 2)]:
        w = find_gap_multiple(step, min_gap, base)
        digits = []
        v = w.multiple
        e = 0
        while v:
            v, d = divmod(v, base)
            if d:
                digits.append((e, d))
            e += 1
        assert digits[0] == (w.low_exp, 1)
        if len(digits) == 1:
            assert w.gap is None
        else:
            assert digits[1][0] - digits[0][0] == w.gap > min_gap


def test_gap_multiple_match_exponent():
    w = find_gap_multiple(3, 2, 2)
    bigger = find_gap_multiple(3, 40, 2, match_exp=w.low_exp)
    assert bigger.low_exp == w.low_exp
    assert bigger.gap_exceeds(40)


def test_gap_multiple_invalid_match():
    with pytest.raises(InvalidMatchExponent):
        find_gap_multiple(3, 2, 2, floor_exp=5, match_exp=1)


def test_gap_multiple_floor_is_respected():
    w = find_gap_multiple(3, 2, 2, floor_exp=7)
    assert w.low_exp >= 7


def test_solve_residue_examples():
    assert solve_residue(3, 1, 2, 2).factor == 7
    assert solve_residue(1, 1, 2, 2).factor == 1
    assert solve_residue(3, 2, 3, 2).factor == 1


def test_solve_residue_cap():
    with pytest.raises(SearchCapExceeded):
        solve_residue(3, 1, 2, 2, cap=3)


def test_solve_residue_constructive_self_verifies():
    for step in (1, 3, 5, 12, 29):
        for modulus in (2, 3, 5):
            for target in range(1, modulus + 1):
                for base in (2, 3):
                    r = solve_residue(step, target, modulus, base, strategy="construct")
                    assert (
                        oracle_nonzero_count(r.factor * step, base) % modulus
                        == target % modulus
                    )
                    assert r.trace  # the construction leaves a digit trail


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30), st.integers(2, 6), st.sampled_from([2, 3]))
def test_solve_residue_brute_post_verified(step, modulus, base):
    for target in range(1, modulus + 1):
        r = solve_residue(step, target, modulus, base)
        assert oracle_nonzero_count(r.factor * step, base) % modulus == target % modulus


def test_check_poly_condition_examples():
    c = check_poly_condition((0, 1), 2)
    assert c.passes and c.witness == 1
    c = check_poly_condition((0, 1, 1), 2)
    assert not c.passes
    assert c.table == (0, 0)
    c = check_poly_condition((1, 0, 0), 3)
    assert c.passes and c.witness == 1


def test_check_poly_condition_constant_term_via_wraparound():
    # 1 + s vanishes at s = 1 but not at s = 2, which reads the constant term
    c = check_poly_condition((1, 1), 2)
    assert c.passes and c.witness == 2


def test_check_poly_condition_failure_means_zero_table():
    c = check_poly_condition((0, 2, 2), 2)
    assert not c.passes
    assert all(v == 0 for v in c.table)


def test_boundary_occurrence():
    p01 = Pattern.from_string("01", 2)
    assert boundary_occurrence(0, p01) == 0
    assert boundary_occurrence(1, p01) == 1  # leading digit 1 matches the tail
    assert boundary_occurrence(2, p01) == 1  # leading digit of 10 is 1
    p011 = Pattern.from_string("011", 2)
    assert boundary_occurrence(1, p011) == 0  # needs two digits 11 on top
    assert boundary_occurrence(3, p011) == 1
    p11 = Pattern.from_string("11", 2)
    assert boundary_occurrence(3, p11) == 0  # no leading zeros in the pattern


def test_scan_everywhere_nonperiodic_rs(rs_spec):
    entries = scan_everywhere_nonperiodic(rs_spec, 20, 20, 10**4)
    assert len(entries) == 21 * 20
    assert all(e.witness is not None for e in entries)
    for e in entries[:40]:
        assert eval_seq(rs_spec, e.offset + e.witness * e.step) != eval_seq(rs_spec, e.offset)


def test_scan_everywhere_nonperiodic_constant():
    spec = SequenceSpec(2, 2, DigitSum(), (PolyMap((0, 1, 1)),))
    entries = scan_everywhere_nonperiodic(spec, 5, 5, 200)
    assert all(e.witness is None for e in entries)


def test_scan_everywhere_nonperiodic_tm(tm_spec):
    entries = scan_everywhere_nonperiodic(tm_spec, 20, 20, 10**4)
    assert all(e.witness is not None for e in entries)


def test_render_scan_report_format(rs_spec):
    entries = scan_everywhere_nonperiodic(rs_spec, 0, 1, 100)
    assert render_scan_report(entries) == ["N=0 l=1 witness=3 vN=0 vW=1"]
    spec = SequenceSpec(2, 2, DigitSum(), (PolyMap((0, 1, 1)),))
    entries = scan_everywhere_nonperiodic(spec, 0, 1, 7)
    assert render_scan_report(entries) == ["N=0 l=1 UNRESOLVED budget=7"]


def test_construct_refutation_brute_examples():
    w = construct_refutation(Pattern.from_string("11", 2), 2, 0, 1)
    assert (w.witness, w.value_at_offset, w.value_at_witness) == (3, 0, 1)
    w = construct_refutation(Pattern.from_string("1", 2), 2, 0, 3)
    assert w.witness == 7
    w = construct_refutation(Pattern.from_string("10", 2), 2, 1, 2)
    assert w.witness == 2
    assert eval_seq(
        SequenceSpec(2, 2, PatternCount(Pattern.from_string("10", 2))), 1 + 2 * w.witness
    ) != eval_seq(SequenceSpec(2, 2, PatternCount(Pattern.from_string("10", 2))), 1)


def test_construct_refutation_case1_construction():
    w = construct_refutation(Pattern.from_string("11", 2), 2, 0, 3, strategy="construct")
    assert w.path == "construct-case1"
    assert w.value_at_offset != w.value_at_witness
    assert any(line.startswith("Uxl ") for line in w.trace)
    assert any(line.startswith("TXl ") for line in w.trace)
    assert any("layout checks passed" in note for note in w.notes)


def test_construct_refutation_case2_separated():
    w = construct_refutation(Pattern.from_string("01", 2), 2, 0, 3, strategy="construct")
    assert w.path == "construct-case2-separated"
    assert any(line.startswith("QXl ") for line in w.trace)
    assert w.value_at_offset != w.value_at_witness


def test_construct_refutation_case2_straddling():
    w = construct_refutation(Pattern.from_string("01", 2), 2, 1, 3, strategy="construct")
    assert w.path == "construct-case2-straddling"
    assert any(line.startswith("V ") for line in w.trace)
    assert any(line.startswith("Sxl ") for line in w.trace)
    assert w.value_at_offset != w.value_at_witness


def test_construct_refutation_budget_falls_back():
    w = construct_refutation(
        Pattern.from_string("11", 2), 2, 50, 29, strategy="construct", digit_budget=2_000
    )
    assert w.path == "brute (construct fell back)"
    assert w.notes and "budget" in w.notes[0]
    assert w.value_at_offset != w.value_at_witness


def test_construct_refutation_verifies_either_way():
    # the paper-style construction and the scan must agree on inequality
    for word, offset, step in [("11", 0, 1), ("11", 4, 6), ("110", 2, 5), ("011", 0, 2)]:
        p = Pattern.from_string(word, 2)
        spec = SequenceSpec(2, 2, PatternCount(p))
        for strategy in ("brute", "construct"):
            w = construct_refutation(p, 2, offset, step, strategy=strategy)
            assert eval_seq(spec, offset + w.witness * step) == w.value_at_witness
            assert eval_seq(spec, offset) == w.value_at_offset
            assert w.value_at_witness != w.value_at_offset


def test_scan_ultimate_period_examples():
    r = scan_ultimate_period([0, 1] * 50, 8, 8)
    assert (r.found, r.period, r.preperiod) == (True, 2, 0)
    tm = thue_morse_spec()
    prefix = [eval_seq(tm, n) for n in range(4096)]
    r = scan_ultimate_period(prefix, 64, 256)
    assert not r.found
    r = scan_ultimate_period([7] + [0] * 99, 4, 4)
    assert (r.found, r.period, r.preperiod) == (True, 1, 1)


def test_scan_ultimate_period_insufficient_data():
    with pytest.raises(InsufficientData):
        scan_ultimate_period([0] * 20, 8, 8)


def naive_period_scan(vals, max_period, max_preperiod):
    for pre in range(max_preperiod + 1):
        for p in range(1, max_period + 1):
            if all(vals[n] == vals[n + p] for n in range(pre, len(vals) - p)):
                return (pre, p)
    return None


@settings(max_examples=200)
@given(st.lists(st.integers(0, 2), min_size=30, max_size=60), st.integers(1, 5), st.integers(0, 6))
def test_scan_ultimate_period_matches_naive(vals, max_period, max_preperiod):
    if len(vals) <= max_preperiod + 2 * max_period:
        return
    expected = naive_period_scan(vals, max_period, max_preperiod)
    r = scan_ultimate_period(vals, max_period, max_preperiod)
    if expected is None:
        assert not r.found
    else:
        assert (r.preperiod, r.period) == expected


def test_grid_scan_matches_compiled_machine(rs_spec):
    machine = compile_spec(rs_spec)
    via_machine = scan_everywhere_nonperiodic(rs_spec, 5, 5, 1000, evaluator=machine.run)
    direct = scan_everywhere_nonperiodic(rs_spec, 5, 5, 1000)
    assert via_machine == direct


def test_refutation_grid_base_three():
    # base-3 slice of the desk-scale non-periodicity property; the single
    # degenerate combination (P="1", L=2) is covered separately below
    words = ["1", "2", "12", "20", "112", "201"]
    for word in words:
        pattern = Pattern.from_string(word, 3)
        for modulus in (2, 3):
            if word == "1" and modulus == 2:
                continue
            spec = SequenceSpec(3, modulus, PatternCount(pattern))
            for offset in range(0, 13):
                for step in range(1, 9):
                    w = construct_refutation(pattern, modulus, offset, step)
                    assert eval_seq(spec, offset + w.witness * step) == w.value_at_witness
                    assert w.value_at_witness != eval_seq(spec, offset)


def test_base_three_single_one_mod_two_is_parity():
    # counting the digit 1 in base 3 mod 2 collapses to the parity of n,
    # because 3 = 1 mod 2 and the digit 2 is even; even-step subsequences
    # are therefore constant and honestly unrefutable
    pattern = Pattern.from_string("1", 3)
    spec = SequenceSpec(3, 2, PatternCount(pattern))
    for n in range(3000):
        assert eval_seq(spec, n) == n % 2
    with pytest.raises(SearchCapExceeded):
        construct_refutation(pattern, 2, 0, 2, cap=2000)
    # odd steps flip the parity at the very first index
    for step in (1, 3, 7):
        assert construct_refutation(pattern, 2, 4, step).witness == 1
