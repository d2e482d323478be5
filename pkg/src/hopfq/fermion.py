"""Charge-graded fermionic Fock space as a semi-infinite wedge.

Half-integer mode indices k are stored through m = k + 1/2 (an integer); the
vacuum occupies every m <= 0.  A wedge state is the pair of finite deviations
(added occupied slots with m >= 1, removed vacuum slots with m <= 0), kept in
strictly decreasing wedge order so every insertion or removal counts its
transpositions exactly.  Charge-zero states are in bijection with partitions
(Maya diagrams), and the whole module serves as an independent oracle for the
Schur eigenbasis: the boson-fermion map, the diagonal operator
O(z) = sum_k e^{kz} :psi_k psi_k*:, and the dressed-fermion conjugation
identities are all evaluated exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .fock import FockPolynomial
from .partitions import frobenius
from .scalars import ExactScalar
from .schur import complete_homogeneous


def _to_m(k):
    """Half-integer mode index k -> integer slot m = k + 1/2."""
    m = Fraction(k) + Fraction(1, 2)
    if m.denominator != 1:
        raise ValueError(f"index {k} is not a half-integer")
    return int(m)


def _to_k(m):
    return Fraction(2 * m - 1, 2)


def _as_poly(coeff):
    if isinstance(coeff, FockPolynomial):
        return coeff
    return FockPolynomial.constant(coeff)


class WedgeState(NamedTuple):
    """Occupied slots = ({m <= 0} minus removed) union added."""

    added: tuple    # decreasing, all >= 1
    removed: tuple  # decreasing, all <= 0

    @property
    def charge(self):
        return len(self.added) - len(self.removed)

    def energy(self):
        return sum(self.added) - sum(self.removed)

    def occupied(self, m):
        if m >= 1:
            return m in self.added
        return m not in self.removed

    def position(self, m):
        """Number of occupied slots strictly above m."""
        above = sum(1 for a in self.added if a > m)
        if m <= 0:
            above += -m - sum(1 for r in self.removed if r > m)
        return above

    def partition(self):
        """Row lengths lambda_i = m_i + i - 1 over occupied slots in
        decreasing order; only meaningful at charge zero."""
        if self.charge != 0:
            raise ValueError("state has nonzero charge")
        rows = []
        occ = sorted(self.added, reverse=True)
        vac = [m for m in range(0, min(self.removed, default=1) - 1, -1)
               if m not in self.removed]
        for i, m in enumerate(occ + vac, start=1):
            lam = m + i - 1
            if lam == 0:
                break
            rows.append(lam)
        return tuple(rows)

    def render(self):
        from .partitions import render
        if self.charge == 0:
            return render(self.partition())
        return f"charge={self.charge}, added={self.added}, removed={self.removed}"


VACUUM = WedgeState((), ())


def state_for_partition_label(partition):
    """The wedge state whose Maya diagram is the given partition."""
    occupied = [partition[i - 1] - i + 1 for i in range(1, len(partition) + 1)]
    added = tuple(sorted((m for m in occupied if m >= 1), reverse=True))
    vacated = {-i + 1 for i in range(1, len(partition) + 1)}
    kept = {m for m in occupied if m <= 0}
    removed = tuple(sorted(vacated - kept, reverse=True))
    return WedgeState(added, removed)


class FermionVector:
    """Finite linear combination of wedge states with FockPolynomial
    coefficients (polynomials in the bosonic q-variables appear while
    expanding e^{K(q)})."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def vacuum(cls):
        return cls.basis(VACUUM)

    @classmethod
    def basis(cls, state, coeff=None):
        coeff = FockPolynomial.one() if coeff is None else _as_poly(coeff)
        if coeff.is_zero():
            return cls()
        return cls({state: coeff})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, FermionVector):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        result = dict(self.terms)
        for state, c in other.terms.items():
            new = result.get(state)
            new = c if new is None else new + c
            if new.is_zero():
                result.pop(state, None)
            else:
                result[state] = new
        return FermionVector(result)

    def __neg__(self):
        return FermionVector({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, coeff):
        coeff = _as_poly(coeff)
        result = {}
        for s, c in self.terms.items():
            prod = c * coeff
            if not prod.is_zero():
                result[s] = prod
        return FermionVector(result)

    __rmul__ = __mul__

    def coefficient(self, state):
        return self.terms.get(state, FockPolynomial.zero())

    def max_energy(self):
        return max((s.energy() for s in self.terms), default=0)

    def render(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c.render()}) |{s.render()}>"
                          for s, c in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# generator actions


def _psi_state(state, m):
    """Insert slot m; returns (sign, state) or None."""
    if state.occupied(m):
        return None
    sign = -1 if state.position(m) % 2 else 1
    if m >= 1:
        new = WedgeState(tuple(sorted(state.added + (m,), reverse=True)),
                         state.removed)
    else:
        removed = tuple(r for r in state.removed if r != m)
        if len(removed) == len(state.removed):
            raise AssertionError("slot bookkeeping broken")
        new = WedgeState(state.added, removed)
    return sign, new


def _psi_star_state(state, m):
    """Remove slot m; returns (sign, state) or None."""
    if not state.occupied(m):
        return None
    sign = -1 if state.position(m) % 2 else 1
    if m >= 1:
        new = WedgeState(tuple(a for a in state.added if a != m), state.removed)
    else:
        new = WedgeState(state.added,
                         tuple(sorted(state.removed + (m,), reverse=True)))
    return sign, new


def psi(k, vector):
    """Wedge insertion psi_k = e_k wedge (exterior multiplication)."""
    m = _to_m(k)
    result = FermionVector.zero()
    for state, c in vector.terms.items():
        hit = _psi_state(state, m)
        if hit:
            sign, new = hit
            result = result + FermionVector.basis(new, c * sign)
    return result


def psi_star(k, vector):
    """Interior derivative psi_k* = d/de_k."""
    m = _to_m(k)
    result = FermionVector.zero()
    for state, c in vector.terms.items():
        hit = _psi_star_state(state, m)
        if hit:
            sign, new = hit
            result = result + FermionVector.basis(new, c * sign)
    return result


def state_of_partition(partition):
    """|lambda> = psi_{alpha_1 + 1/2} ... psi_{alpha_d + 1/2}
    psi*_{-beta_d - 1/2} ... psi*_{-beta_1 - 1/2} |0>, built by applying the
    creation string right-to-left to the vacuum."""
    coords = frobenius(tuple(partition))
    vec = FermionVector.vacuum()
    for beta_i in coords.beta:
        vec = psi_star(-Fraction(2 * beta_i + 1, 2), vec)
    for alpha_i in reversed(coords.alpha):
        vec = psi(Fraction(2 * alpha_i + 1, 2), vec)
    return vec


# ---------------------------------------------------------------------------
# boson-fermion correspondence


def shift_operator(n, vector):
    """sum_j :psi_j psi*_{j+n}: for n >= 1 (the q_n-component of K)."""
    result = FermionVector.zero()
    for state, c in vector.terms.items():
        sources = list(state.added)
        sources += [m for m in range(0, min(state.removed, default=1) - 1 - n, -1)
                    if m not in state.removed]
        for src in sources:
            dst = src - n
            if state.occupied(dst):
                continue
            s1, mid = _psi_star_state(state, src)
            s2, new = _psi_state(mid, dst)
            result = result + FermionVector.basis(new, c * (s1 * s2))
    return result


def apply_K(vector):
    """K(q) = sum_{n >= 1} (q_n / n) sum_j :psi_j psi*_{j+n}:.

    Strictly lowers the energy grading, so repeated application terminates.
    """
    result = FermionVector.zero()
    for state, c in vector.terms.items():
        ceiling = state.energy() - _min_energy(state.charge)
        single = FermionVector.basis(state, c)
        for n in range(1, ceiling + 1):
            moved = shift_operator(n, single)
            if moved:
                result = result + moved * (FockPolynomial.variable(n) * Fraction(1, n))
    return result


def _min_energy(charge):
    # lowest energy in the charge sector: slots packed against the Dirac sea
    # (charge +c adds slots 1..c, charge -c vacates slots 0, -1, ..., 1-c)
    if charge >= 0:
        return charge * (charge + 1) // 2
    return -charge * (-charge - 1) // 2


def exp_K(vector, inverse=False):
    """e^{K(q)} (or e^{-K(q)}) applied by the finite nilpotent expansion."""
    total = vector
    power = vector
    order = 0
    while power:
        order += 1
        power = apply_K(power)
        if inverse and order % 2:
            total = total - power * Fraction(1, factorial(order))
        else:
            total = total + power * Fraction(1, factorial(order))
    return total


def boson_fermion_map(vector):
    """Phi(xi |0>) = <0| e^{K(q)} xi |0>: the vacuum coefficient of the
    exponentiated shift action, a polynomial in q."""
    return exp_K(vector).coefficient(VACUUM)


# ---------------------------------------------------------------------------
# diagonal operator and dressed fermions


def diagonal_operator_eigenvalue(partition):
    """Eigenvalue of O(z) = sum_k e^{kz} :psi_k psi_k*: on |lambda>, applied
    slot by slot; returned as a canonical map exponent -> integer coefficient
    representing sum c_e e^{z e}."""
    state = state_for_partition_label(tuple(partition))
    counts = {}
    for m in state.added:        # occupied positive slots: +e^{kz}
        k = _to_k(m)
        counts[k] = counts.get(k, 0) + 1
    for m in state.removed:      # vacated negative slots: -e^{kz}
        k = _to_k(m)
        counts[k] = counts.get(k, 0) - 1
    return {e: c for e, c in counts.items() if c}


def render_exponential_sum(counts):
    """Sorted list of [coefficient, numerator of 2*exponent]."""
    return [[c, int(2 * e)] for e, c in sorted(counts.items())]


def dressed_fermion_check(k, max_energy):
    """Verify e^{K} psi_k e^{-K} = sum_{m >= 0} h_m(q) psi_{k-m} (and the
    psi* version with h_m(-q)) on every charge-zero state of energy <= E.

    Both sides are finite: the conjugated side because K is energy-lowering,
    the h-side because psi_{k-m} hits an occupied Dirac-sea slot for large m.
    """
    from .partitions import partitions_upto
    k = Fraction(k)
    m_slot = _to_m(k)
    for lam in partitions_upto(max_energy):
        state = state_for_partition_label(lam)
        base = FermionVector.basis(state)

        # insertion: psi_{k-m} is nonzero only while the target slot can be
        # unoccupied, i.e. down to the lowest vacated Dirac-sea slot
        lhs = exp_K(psi(k, exp_K(base, inverse=True)))
        rhs = FermionVector.zero()
        floor = min(state.removed, default=1)
        for shift in range(max(0, m_slot - floor) + 1):
            lowered = psi(k - shift, base)
            if lowered:
                rhs = rhs + lowered * complete_homogeneous(shift)
        if lhs != rhs:
            return False

        # removal: psi*_{k+m} is nonzero only up to the highest occupied slot
        lhs = exp_K(psi_star(k, exp_K(base, inverse=True)))
        rhs = FermionVector.zero()
        top = max(state.added, default=0)
        for shift in range(max(-1, max(top, 0) - m_slot) + 1):
            raised = psi_star(k + shift, base)
            if raised:
                rhs = rhs + raised * complete_homogeneous(shift).map_variables(-1)
        if lhs != rhs:
            return False
    return True


def fermionic_hamiltonian_eigenvalue_series(partition, order):
    """z-series of e^{z u0} (z * eig_O(lambda) + 1/s(z)) at hbar = 1: the
    fermionic form of the Hamiltonian acting on |lambda>.

    Agreement with the bosonic eigenvalue series at eps = 1 is the
    independent wedge-side check of the eigenbasis theorem.
    """
    from .hamiltonians import _exp_u0_series, _series_mul
    from .scalars import inv_s_series
    inner = [ExactScalar.from_rational(inv_s_series(order)[n])
             for n in range(order + 1)]
    for e, c in diagonal_operator_eigenvalue(partition).items():
        # z * e^{z e} contributes c * e^(n-1) z^n / (n-1)!
        for n in range(1, order + 1):
            inner[n] = inner[n] + ExactScalar.from_rational(
                c * Fraction(e) ** (n - 1) / factorial(n - 1))
    return _series_mul(_exp_u0_series(order), inner, order)
