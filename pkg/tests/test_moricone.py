import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flagsurf.flagvariety import CurveClass, build_flag, parse_flag
from flagsurf.moricone import (
    POINT,
    ClassKind,
    MoriSemigroup,
    classify,
    contraction_target,
    is_decomposable,
    is_integrally_fiber_type,
    is_simplicially_fano,
    omega_minimal,
    ruling_contraction,
)
from flagsurf.rootsystem import CartanType, build_root_system

from oracles import cartan_types_up_to


def flags_up_to(max_rank):
    for text in cartan_types_up_to(max_rank):
        rs = build_root_system(CartanType.parse(text))
        for r in range(rs.rank):
            for levi in itertools.combinations(rs.indices, r):
                yield build_flag(rs, levi)


def full_flag(text):
    return build_flag(build_root_system(CartanType.parse(text)), [])


def test_decomposable():
    assert is_decomposable(CurveClass((1, 0))) is False
    assert is_decomposable((1, 1)) is True
    with pytest.raises(ValueError, match="zero class"):
        is_decomposable((0, 0))
    with pytest.raises(ValueError, match="not effective"):
        is_decomposable((2, -1))


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5).filter(any))
def test_decomposable_iff_visible_split(coeffs):
    splits = [
        (a, tuple(c - x for c, x in zip(coeffs, a)))
        for a in itertools.product(*(range(c + 1) for c in coeffs))
    ]
    brute = any(any(a) and any(b) for a, b in splits)
    assert is_decomposable(coeffs) == brute


def test_omega_minimal():
    f = full_flag("A2")
    assert omega_minimal(f, (1, Fraction(5, 2))) == {1}
    assert omega_minimal(f, (3, 3)) == {1, 2}
    assert omega_minimal(parse_flag("A4/P{1}"), (7,)) == {1}
    with pytest.raises(ValueError, match="Kaehler"):
        omega_minimal(f, (1, 0))


@given(st.lists(st.fractions(min_value=Fraction(1, 100), max_value=100), min_size=3, max_size=3))
def test_omega_minimal_returns_indecomposable_generators(weights):
    m = MoriSemigroup(full_flag("A3"))
    chosen = omega_minimal(m, weights)
    assert chosen
    for i in chosen:
        assert not is_decomposable(m.generator_class(i))


def test_classify_examples():
    assert set(classify(full_flag("A2")).values()) == {ClassKind.RULING}
    for n in range(2, 8):
        assert classify(parse_flag(f"A{n}/P{{1}}")) == {1: ClassKind.TWO_FREE}
    assert classify(parse_flag("A1/P{1}")) == {1: ClassKind.EXCEPTIONAL}


def test_rank_one_of_dim_ge_2_is_two_free():
    for f in flags_up_to(5):
        if f.picard_rank == 1 and f.dimension >= 2:
            assert classify(f) == {f.delta_p[0]: ClassKind.TWO_FREE}, f


def test_contraction_examples():
    f = full_flag("A2")
    target = contraction_target(f, {1})
    assert target.levi_subset == {1} and target.dimension == 2
    assert contraction_target(parse_flag("A3/P{1}"), {1}) is POINT
    assert contraction_target(f, set()) == f
    with pytest.raises(KeyError):
        contraction_target(parse_flag("A3/P{2}"), {1})


def test_ruling_contraction_examples():
    target, kernel = ruling_contraction(full_flag("A2"))
    assert target is POINT and kernel == {1, 2}
    p3 = parse_flag("A3/P{1}")
    assert ruling_contraction(p3) == (p3, frozenset())
    target, kernel = ruling_contraction(parse_flag("A1xA2/P{1,2}"))
    assert kernel == {1}
    assert target.spec == "A1xA2/P{2}" and target.dimension == 2


def test_contractions_compose_rank_le_4():
    for f in flags_up_to(4):
        subsets = [set(c) for r in range(len(f.delta_p) + 1) for c in itertools.combinations(f.delta_p, r)]
        for a in subsets:
            first = contraction_target(f, a)
            for b in subsets:
                if first is POINT:
                    continue
                rest = b - a
                assert contraction_target(first, rest) == contraction_target(f, a | b)
        assert contraction_target(f, f.delta_p).dimension == 0


def test_flags_are_simplicially_fano_rank_le_4():
    for f in flags_up_to(4):
        assert is_integrally_fiber_type(f)
        assert is_simplicially_fano(f)


def test_fiber_type_predicate_detects_index_mismatch():
    f = parse_flag("A4/P{1}")
    assert not is_integrally_fiber_type(f, fiber_index={1: 3})
