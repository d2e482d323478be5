"""Disk potential, pairing, degree slices, and factorization counts."""

from fractions import Fraction
from math import factorial

from hopfq.disk import (disk_potential, expand_in_t, fock_pairing,
                        hurwitz_match_report, hurwitz_oracle,
                        hurwitz_oracle_direct, integer_hbar_check,
                        p1_partition_function, schroedinger_check,
                        verify_printed_expansion)
from hopfq.fock import FockPolynomial
from hopfq.partitions import dim, partitions_of, partitions_upto, size
from hopfq.scalars import ExactScalar
from hopfq.schur import schur


def test_amplitude_table_shape():
    pot = disk_potential(3, 2)
    assert set(pot.amplitudes) == set(partitions_upto(3))
    amp = pot.amplitudes[(1,)]
    assert amp.prefactor == ExactScalar.eps(-1)
    # t_0 exponent relative to the vacuum is exactly 1
    vac = pot.amplitudes[()].exponents[0]
    assert amp.exponents[0] - vac == ExactScalar.one()


def test_vacuum_exponents_at_u0_zero():
    pot = disk_potential(0, 3)
    exps = [e.substitute(u0=0) for e in pot.amplitudes[()].exponents]
    assert exps[0] == ExactScalar.from_rational(Fraction(-1, 24))
    assert exps[1].is_zero()
    assert exps[2] == ExactScalar.monomial(Fraction(7, 5760), 2)
    assert exps[3].is_zero()


def test_expand_in_t_plane_wave_at_t_zero():
    pot = disk_potential(4, 0)
    table = expand_in_t(pot, [0])
    poly = table[(0,)]
    for n in range(5):
        mono = ((1, n),) if n else ()
        assert poly.coefficient(mono) == ExactScalar.monomial(
            Fraction(1, factorial(n)), -2 * n)


def test_printed_expansion_matches():
    issues = []
    assert verify_printed_expansion(issues)
    assert issues == []


def test_integer_hbar_property():
    assert integer_hbar_check(6)


def test_schroedinger_checks():
    for k in range(4):
        assert schroedinger_check(k, 6)


def test_fock_pairing_examples():
    p1, q1 = FockPolynomial.variable(1), FockPolynomial.variable(1)
    assert fock_pairing(p1, q1) == ExactScalar.hbar()
    for lam in partitions_upto(5):
        n = size(lam)
        ket = FockPolynomial.monomial(((1, n),) if n else ())
        assert fock_pairing(schur(lam), ket) == ExactScalar.monomial(
            dim(lam), 2 * n)


def test_schur_pairing_orthonormality():
    for lam in partitions_upto(5):
        for mu in partitions_upto(5):
            got = fock_pairing(schur(lam), schur(mu)).substitute(eps=1)
            assert got == ExactScalar.from_rational(int(lam == mu))


def test_p1_two_routes_agree():
    slices = p1_partition_function(4, 2)
    assert sorted(slices) == [0, 1, 2, 3, 4]
    assert [lam for lam, _, _ in slices[2]] == list(partitions_of(2))
    # degree-0 slice: only the vacuum with coefficient 1
    (lam, coeff, _), = slices[0]
    assert lam == () and coeff == ExactScalar.one()


def test_hurwitz_oracle_examples():
    assert hurwitz_oracle(1, 0, (1,)) == 1
    assert hurwitz_oracle(2, 2, (1, 1)) == Fraction(1, 2)
    assert hurwitz_oracle(3, 1, (3,)) == 0


def test_hurwitz_oracle_bound_refusal():
    try:
        hurwitz_oracle(7, 1, (7,))
        assert False
    except ValueError:
        pass


def test_hurwitz_oracle_matches_direct_enumeration():
    for n in range(1, 4):
        for m in range(4):
            for mu in partitions_of(n):
                assert hurwitz_oracle(n, m, mu) == \
                    hurwitz_oracle_direct(n, m, mu)


def test_hurwitz_series_against_oracle():
    report = hurwitz_match_report(4, 4)
    assert report["mismatches"] == []
    assert report["checked"] > 0
