import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flagsurf.descendants import (
    ChernData,
    DescendantExpr,
    DescendantRecord,
    DescendantTableError,
    builtin_descendant_table,
    evaluate,
    hilbert_leading_terms,
    load_descendant_table,
    parse_descendant_table,
    projective_factor_dimension,
    reduce,
    s_for_projective_product,
    virtual_dimension,
)
from flagsurf.flagvariety import CurveClass, DivisorClass, parse_flag

from oracles import binomial_poly, leading_pair


def test_virtual_dimension_examples():
    assert virtual_dimension(0, 0, 3, 2) == 2
    for k in range(-3, 7):
        assert virtual_dimension(1, 0, k, 3) == k
    for m in range(0, 6):
        for dim in range(1, 8):
            assert virtual_dimension(0, 1, m + 2, dim) == m + dim
    with pytest.raises(ValueError):
        virtual_dimension(-1, 0, 3, 2)


def test_reduce_two_hyperplanes_on_a_line():
    line = CurveClass((1,))
    h = DivisorClass((1,))
    for n in range(2, 9):
        out = reduce(DescendantExpr(Fraction(1), n - 2, (h, h), line))
        assert out.is_reduced and out.coefficient == 1 and out.tau_power == n - 1
        # <tau_{n-1}(pt)> on P^n lines is f = 1
        assert evaluate(out, DescendantRecord(n - 1, 1)) == 1


def test_reduce_annihilates_orthogonal_divisor():
    e = DescendantExpr(Fraction(3), 2, (DivisorClass((0, 1)),), CurveClass((1, 0)))
    assert reduce(e).coefficient == 0


def test_reduce_is_idempotent():
    e = DescendantExpr(Fraction(5, 2), 3, (), CurveClass((1,)))
    assert reduce(e) is e
    e2 = DescendantExpr(Fraction(1), 0, (DivisorClass((2,)), DivisorClass((3,))), CurveClass((1,)))
    assert reduce(reduce(e2)) == reduce(e2)


divisors = st.lists(st.integers(0, 4), min_size=2, max_size=2).map(lambda c: DivisorClass(tuple(c)))


@given(st.lists(divisors, min_size=1, max_size=4), st.lists(divisors, min_size=1, max_size=4),
       st.integers(0, 3), st.permutations(range(8)))
def test_reduce_coefficients_multiply_and_commute(a, b, s, perm):
    curve = CurveClass((1, 2))
    whole = reduce(DescendantExpr(Fraction(1), s, tuple(a + b), curve))
    left = reduce(DescendantExpr(Fraction(1), s, tuple(a), curve))
    right = reduce(DescendantExpr(Fraction(1), s, tuple(b), curve))
    assert whole.coefficient == left.coefficient * right.coefficient
    # a block of k factors raises the psi power by k - 1
    assert whole.tau_power - s == (left.tau_power - s) + (right.tau_power - s) + 1
    shuffled = [(a + b)[i] for i in perm if i < len(a + b)]
    assert reduce(DescendantExpr(Fraction(1), s, tuple(shuffled), curve)) == whole


def test_chern_data_projective_product():
    c = ChernData.projective_product([1, 3])
    assert c.c1 == (2, 4)
    assert c.ch2 == ((1, 0), (0, 2))


@pytest.mark.parametrize("dims, factor, expected", [
    ([4], 1, (3, 1, 4, 4)),
    ([2], 1, (1, 1, 2, 2)),
    ([1, 3], 2, (2, 1, 3, 3)),
])
def test_s_for_projective_product(dims, factor, expected):
    r = s_for_projective_product(dims, factor)
    assert (r.m, r.f, r.s, r.q) == expected


def test_ruling_factor_has_no_s():
    with pytest.raises(ValueError, match="ruling"):
        s_for_projective_product([1, 3], 1)


@pytest.mark.parametrize("dims", [[2, 3], [5, 1, 2], [3, 3, 3]])
def test_cross_terms_vanish(dims):
    for k, n in enumerate(dims, start=1):
        if n >= 2:
            assert s_for_projective_product(dims, k).s == n


@pytest.mark.parametrize("record, expected", [
    (DescendantRecord(2, 1, 3), (Fraction(1, 2), Fraction(3, 2))),
    (DescendantRecord(1, 2, 2), (Fraction(2), Fraction(1))),
    (DescendantRecord(1, 1, 2), (Fraction(1), Fraction(1))),
])
def test_hilbert_leading_terms(record, expected):
    h = hilbert_leading_terms(record)
    assert (h.c_top, h.c_next) == expected
    assert h.c_next == h.c_top * h.relative_correction


def test_hilbert_leading_terms_m_zero():
    h = hilbert_leading_terms(DescendantRecord(0, 6))
    assert h.c_top == 6 and h.c_next is None


@pytest.mark.parametrize("n", range(2, 9))
def test_projective_record_matches_binomial_oracle(n):
    r = s_for_projective_product([n], 1)
    assert r.s == n
    h = hilbert_leading_terms(r)
    assert (h.c_next, h.c_top) == leading_pair(binomial_poly(n - 1, n - 1))[::-1]


def test_record_invariants():
    r = DescendantRecord(3, 2, 5)
    assert r.q * r.f == r.s
    assert DescendantRecord(2, 4, q=Fraction(3, 2)).s == 6
    with pytest.raises(ValueError):
        DescendantRecord(0, 1, 3)
    with pytest.raises(ValueError):
        DescendantRecord(2, 0)
    with pytest.raises(ValueError):
        DescendantRecord(2, 2, 3, Fraction(1))
    with pytest.raises(ValueError):
        DescendantRecord(2, 4, q=Fraction(1, 3))


@given(st.integers(1, 9), st.integers(1, 50), st.integers(-50, 50))
def test_q_times_f_is_s(m, f, s):
    r = DescendantRecord(m, f, s)
    assert r.q * r.f == r.s


def test_builtin_table():
    t = builtin_descendant_table(parse_flag("A1xA4/P{1,2}"))
    assert t[1] == DescendantRecord(0, 1)
    assert t[2] == DescendantRecord(3, 1, 4)
    # C3/P1 is P^5
    assert builtin_descendant_table(parse_flag("C3/P{1}"))[1] == DescendantRecord(4, 1, 5)
    assert builtin_descendant_table(parse_flag("A3/P{2}")) == {}
    assert projective_factor_dimension(parse_flag("B3/P{1}"), 1) is None


def test_descendant_table_parsing(tmp_path):
    flag = parse_flag("A3/P{2}")
    assert parse_descendant_table({"beta_2": {"f": 2, "s": 6}}, flag) == {2: (2, 6)}
    assert parse_descendant_table({"2": [2, 6]}) == {2: (2, 6)}
    with pytest.raises(DescendantTableError):
        parse_descendant_table({"1": [1, 1]}, flag)
    with pytest.raises(DescendantTableError):
        parse_descendant_table({"two": [1, 1]})
    with pytest.raises(DescendantTableError):
        parse_descendant_table({"2": [1.5, 1]})
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"b2": {"f": 2, "s": 6}}))
    assert load_descendant_table(path, flag) == {2: (2, 6)}
    path.write_text("{oops")
    with pytest.raises(DescendantTableError):
        load_descendant_table(path)
