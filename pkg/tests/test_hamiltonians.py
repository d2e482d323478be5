"""Quantum Hamiltonians, eigenvalues, and verification sweeps."""

from fractions import Fraction

from hopfq.fock import (FockPolynomial, NormalOrderedOperator,
                        degree_operator, naive_hamiltonian)
from hopfq.hamiltonians import (cut_and_join, eigenvalue_closed_form,
                                eigenvalue_frobenius_form, eigenvalue_series,
                                exponential_frobenius_form,
                                exponential_row_form, hamiltonian,
                                vacuum_constant, verify_commutativity,
                                verify_eigenvectors)
from hopfq.partitions import partitions_upto
from hopfq.scalars import ExactScalar
from hopfq.schur import scaled_schur


def test_bottom_hamiltonians():
    assert hamiltonian(-1, 4) == NormalOrderedOperator.identity(ExactScalar.u0())
    h0 = hamiltonian(0, 4)
    correction = NormalOrderedOperator.identity(
        ExactScalar.monomial(Fraction(1, 2), 0, 2)
        + ExactScalar.monomial(Fraction(-1, 24), 2))
    assert h0 == degree_operator(4) + correction


def test_explicit_correction_constants():
    for n, const in [(0, ExactScalar.monomial(Fraction(-1, 24), 2)),
                     (1, ExactScalar.monomial(Fraction(-1, 24), 2, 1))]:
        diff = hamiltonian(n, 6) - naive_hamiltonian(n, 6)
        assert diff == NormalOrderedOperator.identity(const)


def test_h2_correction_structure():
    # H_2 - H_2^0 = (hbar/24)(sum_k (2k^2 - 1) q_k p_k - u0^2/2) + 7 hbar^2/5760
    W = 6
    diff = hamiltonian(2, W) - naive_hamiltonian(2, W)
    expected = NormalOrderedOperator.identity(
        ExactScalar.monomial(Fraction(-1, 48), 2, 2)
        + ExactScalar.monomial(Fraction(7, 5760), 4))
    for k in range(1, W + 1):
        expected = expected + NormalOrderedOperator.term(
            ((k, 1),), ((k, 1),),
            ExactScalar.monomial(Fraction(2 * k * k - 1, 24), 2))
    assert diff == expected


def test_cut_and_join_is_h1_at_u0_zero():
    W = 6
    cj = cut_and_join(W)
    h1 = hamiltonian(1, W)
    dropped = NormalOrderedOperator(
        {ab: c.substitute(u0=0) for ab, c in h1.sorted_terms()
         if not c.substitute(u0=0).is_zero()})
    assert dropped == cj
    # action example: on q1^2 it yields hbar^2 q2
    got = cj.apply(FockPolynomial.monomial(((1, 2),)))
    assert got == FockPolynomial.monomial(((2, 1),), ExactScalar.eps(4))


def test_naive_commutator_formula():
    W = 8
    comm = naive_hamiltonian(1, W).commutator(naive_hamiltonian(2, W),
                                              max_weight=W)
    formula = NormalOrderedOperator.zero()
    for i in range(1, W):
        for j in range(1, W - i + 1):
            pair = ((i, 2),) if i == j else tuple(sorted([(i, 1), (j, 1)]))
            c = ExactScalar.monomial(Fraction(i * j * (i + j), 8), 4)
            formula = formula + NormalOrderedOperator.term(((i + j, 1),), pair, c)
            formula = formula - NormalOrderedOperator.term(pair, ((i + j, 1),), c)
    assert comm.restrict_weight(W) == formula.restrict_weight(W)


def test_commutativity_small_sweep():
    report = verify_commutativity(3, 6)
    assert report["failures"] == []
    assert report["pairs_checked"] == 10


def test_semiclassical_limit():
    # the lowest-eps part of each coefficient of H_n equals the naive operator's
    for n in range(-1, 4):
        quantum = hamiltonian(n, 6)
        naive = naive_hamiltonian(n, 6)
        for ab, c in naive.sorted_terms():
            qc = quantum.coefficient(*ab)
            for (e, u), v in c.terms.items():
                assert qc.terms.get((e, u)) == v, (n, ab)


def test_vacuum_constants():
    assert vacuum_constant(0).substitute(u0=0) == ExactScalar.monomial(
        Fraction(-1, 24), 2)
    assert vacuum_constant(1).substitute(u0=0).is_zero()
    assert vacuum_constant(2).substitute(u0=0) == ExactScalar.monomial(
        Fraction(7, 5760), 4)


def test_eigenvalue_series_matches_closed_forms():
    for lam in partitions_upto(5):
        series = eigenvalue_series(lam, 4)
        for k in range(-1, 5):
            closed = eigenvalue_closed_form(k, lam)
            assert series[k] == closed, (lam, k)
            assert eigenvalue_frobenius_form(k, lam) == closed, (lam, k)


def test_eigenvalue_examples():
    # E_{-1} = u0, E_0 = u0^2/2 + hbar(|lambda| - 1/24)
    lam = (2, 1)
    assert eigenvalue_closed_form(-1, lam) == ExactScalar.u0()
    e0 = eigenvalue_closed_form(0, lam)
    expected = ExactScalar.monomial(Fraction(1, 2), 0, 2) + \
        ExactScalar.monomial(Fraction(3) - Fraction(1, 24), 2)
    assert e0 == expected
    # E_1 at u0=0, hbar=1 is the content sum
    for lam in partitions_upto(6):
        content = sum(Fraction(li * (li - 2 * i + 1), 2)
                      for i, li in enumerate(lam, start=1))
        got = eigenvalue_closed_form(1, lam).substitute(eps=1, u0=0)
        assert got == ExactScalar.from_rational(content)


def test_exponential_forms_agree():
    for lam in partitions_upto(10):
        assert exponential_row_form(lam) == exponential_frobenius_form(lam)


def test_eigenvectors_small_sweep():
    report = verify_eigenvectors(3, 5)
    assert report["failures"] == []


def test_schur_eigenvector_single_case():
    op = hamiltonian(2, 4)
    vec = scaled_schur((2, 1))
    assert op.apply(vec) == vec * eigenvalue_closed_form(2, (2, 1))
