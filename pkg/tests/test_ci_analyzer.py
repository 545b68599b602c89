import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flagsurf.ci_analyzer import (
    CIProblem,
    FreeConeError,
    Mode,
    Overall,
    SetupError,
    Status,
    free_cone_iso,
    generator_outcomes,
    induced_invariants,
    relative_invariants,
    validate,
    verdict,
)
from flagsurf.descendants import DescendantTableError
from flagsurf.flagvariety import build_flag, parse_flag
from flagsurf.rootsystem import CartanType, build_root_system

from oracles import ci_hilbert_poly, fs_from_hilbert, lines_through_point_types


def pn(n):
    return parse_flag(f"A{n}/P{{1}}")


def ci(n, degrees, **kw):
    return CIProblem.build(pn(n), [[d] for d in degrees], **kw)


def koszul_fs(n, degrees):
    """(f, s) of the lines through a point on the complete intersection, or (f, None) if finite."""
    types = [t for d in degrees for t in lines_through_point_types(d)]
    poly = ci_hilbert_poly(n - 1, types)
    if len(poly) == 1:
        return poly[0], None
    return fs_from_hilbert(poly)


def test_relative_invariants_examples():
    rel = relative_invariants(ci(4, [3]))[1]
    assert (rel.m_rel, rel.f_rel, rel.q_rel, rel.s_rel) == (3, 6, 6, 6)
    rel = relative_invariants(ci(5, [1, 1]))[1]
    assert (rel.m_rel, rel.f_rel, rel.q_rel) == (2, 1, 2)
    rel = relative_invariants(ci(5, []))[1]
    assert (rel.m_rel, rel.f_rel, rel.q_rel, rel.s_rel) == (0, 1, 0, 0)


def test_relative_invariants_need_f_for_s():
    p = CIProblem.build(parse_flag("A3/P{2}"), [[1]])
    assert relative_invariants(p)[2].s_rel is None


def test_free_cone_margins():
    assert free_cone_iso(ci(5, [2])).margins == {1: 2}
    assert not free_cone_iso(ci(4, [5]))
    res = free_cone_iso(ci(4, [3]))
    assert res and res.margins == {1: 0}


def test_induced_raises_when_cone_changes():
    with pytest.raises(FreeConeError, match="generators \\[1\\]"):
        induced_invariants(ci(4, [5]))


def test_induced_examples():
    q3 = induced_invariants(ci(4, [2]))[1]
    assert (q3.m, q3.f, q3.s, q3.q) == (1, 2, 2, 1)
    assert induced_invariants(ci(4, [3]))[1].f == 6
    for n in range(3, 10):
        h = induced_invariants(ci(n, [1]))[1]
        assert (h.m, h.f, h.s) == (n - 2, 1, n - 1)


@pytest.mark.parametrize("n, degrees", [
    (5, [2]), (6, [2]), (5, [3]), (8, [2, 3]), (9, [4]), (9, [2, 2, 2]), (7, [1, 2]), (9, [3, 3]), (6, [1, 1, 1]),
])
def test_induced_matches_koszul_oracle(n, degrees):
    rec = induced_invariants(ci(n, degrees))[1]
    f, s = koszul_fs(n, degrees)
    assert rec.f == f == math.prod(math.factorial(d) for d in degrees)
    assert rec.s == s


def test_quadric_four_fold_is_covered():
    v = verdict(ci(5, [2]))
    assert v.overall is Overall.COVERED and v.exit_code == 0
    assert v.outcome(1).status is Status.SATISFIED
    ind = v.outcome(1).induced
    assert (ind.m, ind.f, ind.s, ind.q) == (2, 2, 4, 2)


def test_cubic_threefold_not_determined():
    v = verdict(ci(4, [3]))
    assert v.overall is Overall.NOT_DETERMINED and v.exit_code == 2
    o = v.outcome(1)
    assert o.status is Status.FAILS and o.induced.f == 6
    assert "m_rel = 3 is not < m(Y) = 3" in o.reason
    assert "f(X) = 6" in o.reason


def test_p1_times_p4_bidegree_0_2():
    p = CIProblem.build(parse_flag("A1xA4/P{1,2}"), [[0, 2]])
    v = verdict(p)
    assert v.overall is Overall.COVERED
    assert v.outcome(1).in_case == "i" and v.outcome(2).in_case == "ii"


def test_cubic_fivefold_fails_strictness():
    o = verdict(ci(5, [3])).outcome(1)
    assert o.status is Status.FAILS and "s_rel = 6 is not < s(Y) = 5" in o.reason


def test_missing_descendants_are_unknown():
    v = verdict(CIProblem.build(parse_flag("A3/P{2}"), []))
    assert v.has_unknown and v.exit_code == 3
    v2 = verdict(CIProblem.build(parse_flag("A3/P{2}"), [], table={2: (2, 6)}))
    assert v2.overall is Overall.COVERED


def test_ruling_record_must_have_f_one():
    full = build_flag(build_root_system(CartanType.parse("A3")), [])
    with pytest.raises(DescendantTableError, match="ruling"):
        CIProblem.build(full, [], table={1: (2, None)})


@pytest.mark.parametrize("ambient, hyps, fragment", [
    ("A4/P{1}", [[1], [1]], "dim_C(X') >= 3"),
    ("A3/P{1}", [[1]], "dim_C(X') >= 3"),
    ("A1/P{1}", [], "projective line"),
    ("A1xA4/P{1,2}", [[1, 2]], "ruling class 1"),
    ("A1xA4/P{1,2}", [[0, -1]], "not nef"),
    ("A2xA4/P{1,3}", [[0, 2]], "not positive"),
    ("A4/P{1}", [[1, 1]], "coefficients"),
])
def test_invalid_setups(ambient, hyps, fragment):
    p = CIProblem.build(parse_flag(ambient), hyps)
    with pytest.raises(SetupError, match=fragment.replace("(", "\\(").replace(")", "\\)")):
        validate(p)
    v = verdict(p)
    assert v.overall is Overall.INVALID_SETUP and v.exit_code == 4


def test_equivalence_mode_weights():
    full = parse_flag("A1xA4/P{1,2}")
    p = CIProblem.build(full, [[0, 2]], mode=Mode.EQUIVALENCE)
    v = verdict(p)
    assert v.weights_defaulted and v.overall is Overall.COVERED
    bad = CIProblem.build(full, [[0, 2]], mode="equivalence", weights=[1, -1])
    assert verdict(bad).overall is Overall.INVALID_SETUP


def test_equivalence_needs_only_one_minimal_generator():
    # generator 2 fails strictness but generator 1 is ruling and minimal
    p = CIProblem.build(parse_flag("A1xA4/P{1,2}"), [[0, 4]], mode="equivalence", weights=[1, 5])
    v = verdict(p)
    assert v.outcome(2).status is Status.FAILS
    assert v.relevant == {1} and v.overall is Overall.COVERED
    d = verdict(CIProblem.build(parse_flag("A1xA4/P{1,2}"), [[0, 4]]))
    assert d.overall is Overall.NOT_DETERMINED


@pytest.mark.parametrize("n", range(5, 10))
def test_regrouping_a_hyperplane_is_consistent(n):
    # X = (d) in P^n equals (1, d) in P^(n+1)
    for d in range(2, 5):
        a = induced_invariants(ci(n, [d]))[1]
        b = induced_invariants(ci(n + 1, [1, d]))[1]
        if a is not None and b is not None:
            assert (a.m, a.f, a.s) == (b.m, b.f, b.s)


degree_lists = st.lists(st.integers(1, 9), min_size=0, max_size=4)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9), degree_lists, degree_lists)
def test_relative_invariants_compose(n, a, b):
    ra = relative_invariants(ci(n, a))[1]
    rb = relative_invariants(ci(n, b))[1]
    rab = relative_invariants(ci(n, a + b))[1]
    assert rab.f_rel == ra.f_rel * rb.f_rel
    assert rab.m_rel == ra.m_rel + rb.m_rel
    assert rab.q_rel == ra.q_rel + rb.q_rel


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9), degree_lists, st.integers(1, 9))
def test_adding_a_hypersurface_never_rescues(n, degrees, extra):
    before = generator_outcomes(ci(n, degrees))[0]
    after = generator_outcomes(ci(n, degrees + [extra]))[0]
    if before.status is Status.FAILS:
        assert after.status is Status.FAILS


def test_s_rel_scales_with_ambient_f():
    p = CIProblem.build(parse_flag("A3/P{2}"), [[2]], table={2: (2, 6)})
    rel = relative_invariants(p)[2]
    assert rel.s_rel == rel.q_rel * 2 == Fraction(6)
