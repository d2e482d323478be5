"""Fock polynomials and normally ordered operators."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.fock import (FockPolynomial, NormalOrderedOperator,
                        degree_operator, mono_degree, mono_weight,
                        naive_hamiltonian, weight_basis)
from hopfq.scalars import ExactScalar

monos = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 3)),
                 max_size=3).map(
    lambda kvs: tuple(sorted({k: v for k, v in kvs}.items())))


def polys():
    return st.dictionaries(monos, st.integers(-9, 9), max_size=4).map(
        lambda d: sum((FockPolynomial.monomial(m, c) for m, c in d.items()),
                      FockPolynomial.zero()))


def small_operators():
    term = st.tuples(monos, monos, st.integers(-5, 5))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((NormalOrderedOperator.term(a, b, c)
                        for a, b, c in ts), NormalOrderedOperator.zero()))


def test_mono_helpers():
    assert mono_weight(((1, 2), (3, 1))) == 5
    assert mono_degree(((1, 2), (3, 1))) == 3
    assert weight_basis(0) == [()]
    assert len(weight_basis(6)) == 11


def test_single_contraction():
    # p_k q_k = q_k p_k + hbar k
    p = NormalOrderedOperator.annihilation(2)
    q = NormalOrderedOperator.creation(2)
    expected = NormalOrderedOperator.term(((2, 1),), ((2, 1),)) + \
        NormalOrderedOperator.identity(ExactScalar.monomial(2, 2))
    assert p.compose(q) == expected


def test_apply_matches_differential_action():
    # p_2 acting on q_2^3 gives 3 * hbar * 2 * q_2^2
    p = NormalOrderedOperator.annihilation(2)
    f = FockPolynomial.monomial(((2, 3),))
    got = p.apply(f)
    assert got == FockPolynomial.monomial(((2, 2),), ExactScalar.monomial(6, 2))


@given(small_operators(), small_operators(), polys())
@settings(max_examples=40, deadline=None)
def test_compose_agrees_with_sequential_apply(a, b, f):
    assert a.compose(b).apply(f) == a.apply(b.apply(f))


@given(small_operators())
@settings(max_examples=40)
def test_transpose_involution(op):
    assert op.transpose().transpose() == op


def test_degree_operator():
    op = degree_operator(6)
    f = FockPolynomial.monomial(((1, 1), (2, 2)))
    assert op.apply(f) == f * ExactScalar.monomial(5, 2)


def test_weight_restriction_prunes_high_terms():
    op = naive_hamiltonian(1, 6)
    assert op.restrict_weight(3).is_weight_preserving()
    for (alpha, beta), _ in op.restrict_weight(3).sorted_terms():
        assert mono_weight(beta) <= 3


def test_compose_max_weight_consistency():
    a = naive_hamiltonian(1, 6)
    b = naive_hamiltonian(2, 6)
    full = a.compose(b)
    pruned = a.compose(b, max_weight=4)
    for f in [FockPolynomial.monomial(m) for m in weight_basis(4)]:
        assert full.apply(f) == pruned.apply(f)


def test_operator_json_roundtrip():
    op = naive_hamiltonian(2, 5)
    assert NormalOrderedOperator.from_json(op.to_json()) == op


def test_render_mentions_identity():
    op = NormalOrderedOperator.identity(ExactScalar.u0())
    assert op.render() == "(1 * u0^1) Id"
