"""Semi-infinite wedge model and the boson-fermion correspondence."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.fermion import (FermionVector, WedgeState, boson_fermion_map,
                           diagonal_operator_eigenvalue,
                           dressed_fermion_check,
                           fermionic_hamiltonian_eigenvalue_series, psi,
                           psi_star, state_for_partition_label,
                           state_of_partition)
from hopfq.fock import FockPolynomial
from hopfq.hamiltonians import eigenvalue_series, exponential_row_form
from hopfq.partitions import b_sign_exponent, partitions_of, partitions_upto
from hopfq.schur import schur

half_integers = st.integers(-4, 4).map(lambda n: Fraction(2 * n + 1, 2))
labels = st.integers(0, 5).flatmap(
    lambda n: st.sampled_from(partitions_of(n)))


def test_maya_roundtrip():
    for lam in partitions_upto(8):
        st_ = state_for_partition_label(lam)
        assert st_.partition() == lam
        assert st_.charge == 0
        assert st_.energy() == sum(lam)


def test_vacuum_annihilation():
    vac = FermionVector.vacuum()
    for k in [Fraction(1, 2), Fraction(3, 2)]:
        assert psi_star(k, vac).is_zero()   # removing an empty slot
        assert psi(-k, vac).is_zero()       # inserting an occupied sea slot


@given(half_integers, half_integers, labels)
@settings(max_examples=60)
def test_anticommutation_relations(a, b, lam):
    v = FermionVector.basis(state_for_partition_label(lam))
    assert (psi(a, psi(b, v)) + psi(b, psi(a, v))).is_zero()
    assert (psi_star(a, psi_star(b, v)) + psi_star(b, psi_star(a, v))).is_zero()
    anti = psi(a, psi_star(b, v)) + psi_star(b, psi(a, v))
    assert anti == (v if a == b else FermionVector.zero())


def test_creation_string_reaches_maya_state_with_sign():
    for lam in partitions_upto(7):
        vec = state_of_partition(lam)
        assert len(vec.terms) == 1
        (state, coeff), = vec.terms.items()
        assert state == state_for_partition_label(lam)
        sign = (-1) ** b_sign_exponent(lam)
        assert coeff == FockPolynomial.constant(sign)


def test_boson_fermion_map_gives_schur():
    for lam in partitions_upto(6):
        maya = FermionVector.basis(state_for_partition_label(lam))
        assert boson_fermion_map(maya) == schur(lam)
        string = state_of_partition(lam)
        sign = (-1) ** b_sign_exponent(lam)
        assert boson_fermion_map(string) == schur(lam) * sign


def test_diagonal_operator_eigenvalue_matches_row_form():
    for lam in partitions_upto(8):
        assert diagonal_operator_eigenvalue(lam) == exponential_row_form(lam)


def test_dressed_fermions():
    for j in (-3, -1, 1, 3):
        assert dressed_fermion_check(Fraction(j, 2), 3)


def test_fermionic_series_matches_bosonic_eigenvalues():
    K = 4
    for lam in partitions_upto(5):
        fer = fermionic_hamiltonian_eigenvalue_series(lam, K + 2)
        bos = eigenvalue_series(lam, K)
        for n in range(-1, K + 1):
            assert bos[n].substitute(eps=1) == fer[n + 2].substitute(eps=1)


def test_nonzero_charge_states():
    # remove a single deep sea slot: charge -1
    v = psi_star(Fraction(-5, 2), FermionVector.vacuum())
    (state, _), = v.terms.items()
    assert state.charge == -1 and state.energy() == 2
    assert isinstance(state, WedgeState)
