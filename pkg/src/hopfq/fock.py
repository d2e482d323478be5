"""Bosonic Fock space C[q1, q2, ...] with grading deg q_i = i, and normally
ordered operators sum c * q^alpha p^beta with p_k = hbar k d/dq_k (hbar = eps^2).

Monomials (multi-indices) are sparse tuples of (variable index, multiplicity)
pairs sorted by index; the canonical term order is (weight, alpha, beta) so
every rendering and dump is reproducible byte-for-byte.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .partitions import partitions_of
from .scalars import ExactScalar

# ---------------------------------------------------------------------------
# sparse multi-indices

EMPTY = ()


def mono_from_partition(partition):
    """Partition (3,2,2) -> multi-index ((2,2),(3,1)): q_2^2 q_3."""
    counts = {}
    for p in partition:
        counts[p] = counts.get(p, 0) + 1
    return tuple(sorted(counts.items()))


def partition_from_mono(mono):
    parts = []
    for k, m in mono:
        parts.extend([k] * m)
    return tuple(sorted(parts, reverse=True))


def mono_weight(mono):
    return sum(k * m for k, m in mono)


def mono_degree(mono):
    """Number of variable factors counted with multiplicity."""
    return sum(m for _, m in mono)


def mono_mul(a, b):
    counts = dict(a)
    for k, m in b:
        counts[k] = counts.get(k, 0) + m
    return tuple(sorted(counts.items()))


def mono_sub(a, b):
    """a - b as multi-indices, or None if b is not contained in a."""
    counts = dict(a)
    for k, m in b:
        have = counts.get(k, 0)
        if have < m:
            return None
        if have == m:
            del counts[k]
        else:
            counts[k] = have - m
    return tuple(sorted(counts.items()))


def render_mono(mono, letter="q"):
    if not mono:
        return "1"
    return " ".join(f"{letter}{k}" + (f"^{m}" if m > 1 else "")
                    for k, m in mono)


# ---------------------------------------------------------------------------


class FockPolynomial:
    """Sparse polynomial in q1, q2, ... with ExactScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.constant(ExactScalar.one())

    @classmethod
    def constant(cls, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = ExactScalar.from_rational(scalar)
        if scalar.is_zero():
            return cls()
        return cls({EMPTY: scalar})

    @classmethod
    def variable(cls, k, power=1):
        return cls({((k, power),): ExactScalar.one()})

    @classmethod
    def monomial(cls, mono, coeff=None):
        coeff = ExactScalar.one() if coeff is None else coeff
        if isinstance(coeff, (int, Fraction)):
            coeff = ExactScalar.from_rational(coeff)
        if coeff.is_zero():
            return cls()
        return cls({tuple(mono): coeff})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, FockPolynomial):
            return self.terms == other.terms
        return NotImplemented

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), ExactScalar.zero())

    def __add__(self, other):
        result = dict(self.terms)
        for mono, c in other.terms.items():
            new = result.get(mono)
            new = c if new is None else new + c
            if new.is_zero():
                result.pop(mono, None)
            else:
                result[mono] = new
        return FockPolynomial(result)

    def __neg__(self):
        return FockPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other)
        if isinstance(other, ExactScalar):
            if other.is_zero():
                return FockPolynomial()
            return FockPolynomial({m: c * other for m, c in self.terms.items()})
        result = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = mono_mul(m1, m2)
                c = c1 * c2
                new = result.get(mono)
                new = c if new is None else new + c
                if new.is_zero():
                    result.pop(mono, None)
                else:
                    result[mono] = new
        return FockPolynomial(result)

    __rmul__ = __mul__

    def map_variables(self, scalar_per_factor):
        """Multiply the coefficient of every monomial by s^degree; implements
        uniform substitutions q_k -> s * q_k (e.g. s = -1 or s = 1/eps)."""
        if isinstance(scalar_per_factor, (int, Fraction)):
            scalar_per_factor = ExactScalar.from_rational(scalar_per_factor)
        result = {}
        for m, c in self.terms.items():
            scaled = c * scalar_per_factor ** mono_degree(m)
            if not scaled.is_zero():
                result[m] = scaled
        return FockPolynomial(result)

    def substitute_scalars(self, eps=None, u0=None):
        result = {}
        for m, c in self.terms.items():
            c = c.substitute(eps=eps, u0=u0)
            if not c.is_zero():
                result[m] = c
        return FockPolynomial(result)

    def weights(self):
        return sorted({mono_weight(m) for m in self.terms})

    def weight_component(self, w):
        return FockPolynomial({m: c for m, c in self.terms.items()
                               if mono_weight(m) == w})

    def is_homogeneous(self, w=None):
        ws = self.weights()
        if not ws:
            return True
        return ws == [w if w is not None else ws[0]]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (mono_weight(t[0]), t[0]))

    def render(self, letter="q"):
        if not self.terms:
            return "0"
        return " + ".join(f"({c.render()}) {render_mono(m, letter)}"
                          for m, c in self.sorted_terms())

    def __repr__(self):
        return f"FockPolynomial({self.render()})"


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _contraction_weights(a, b, k):
    # p_k^b q_k^a = sum_j j! C(a,j) C(b,j) (hbar k)^j q_k^(a-j) p_k^(b-j)
    out = []
    for j in range(min(a, b) + 1):
        coeff = Fraction(factorial(j) * comb(a, j) * comb(b, j) * k ** j)
        out.append((j, ExactScalar.monomial(coeff, eps_power=2 * j)))
    return tuple(out)


class NormalOrderedOperator:
    """Normally ordered operator: sparse map (alpha, beta) -> ExactScalar.

    A term (alpha, beta, c) acts on f as c * q^alpha * prod_k (hbar k d/dq_k)^beta_k f.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def identity(cls, coeff=None):
        coeff = ExactScalar.one() if coeff is None else coeff
        return cls.term(EMPTY, EMPTY, coeff)

    @classmethod
    def term(cls, alpha, beta, coeff=None):
        coeff = ExactScalar.one() if coeff is None else coeff
        if isinstance(coeff, (int, Fraction)):
            coeff = ExactScalar.from_rational(coeff)
        if coeff.is_zero():
            return cls()
        return cls({(tuple(alpha), tuple(beta)): coeff})

    @classmethod
    def creation(cls, k, power=1):
        return cls.term(((k, power),), EMPTY)

    @classmethod
    def annihilation(cls, k, power=1):
        return cls.term(EMPTY, ((k, power),))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NormalOrderedOperator):
            return self.terms == other.terms
        return NotImplemented

    def coefficient(self, alpha, beta):
        return self.terms.get((tuple(alpha), tuple(beta)), ExactScalar.zero())

    def __add__(self, other):
        result = dict(self.terms)
        for key, c in other.terms.items():
            new = result.get(key)
            new = c if new is None else new + c
            if new.is_zero():
                result.pop(key, None)
            else:
                result[key] = new
        return NormalOrderedOperator(result)

    def __neg__(self):
        return NormalOrderedOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = ExactScalar.from_rational(scalar)
        if scalar.is_zero():
            return NormalOrderedOperator()
        return NormalOrderedOperator({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def transpose(self):
        """Swap creation and annihilation multi-indices in every term."""
        result = {}
        for (alpha, beta), c in self.terms.items():
            key = (beta, alpha)
            new = result.get(key)
            result[key] = c if new is None else new + c
        return NormalOrderedOperator(result)

    def is_weight_preserving(self):
        return all(mono_weight(a) == mono_weight(b) for a, b in self.terms)

    def restrict_weight(self, max_weight):
        return NormalOrderedOperator({
            (a, b): c for (a, b), c in self.terms.items()
            if mono_weight(a) <= max_weight and mono_weight(b) <= max_weight})

    # -- action -----------------------------------------------------------

    def apply(self, f):
        """Linear action on a FockPolynomial: annihilation part first."""
        result = {}
        for (alpha, beta), c in self.terms.items():
            for mono, cm in f.terms.items():
                rest = mono_sub(mono, beta)
                if rest is None:
                    continue
                factor = Fraction(1)
                have = dict(mono)
                for k, b in beta:
                    mk = have[k]
                    for i in range(b):
                        factor *= k * (mk - i)
                coeff = c * cm * ExactScalar.monomial(
                    factor, eps_power=2 * mono_degree(beta))
                out = mono_mul(rest, alpha)
                new = result.get(out)
                new = coeff if new is None else new + coeff
                if new.is_zero():
                    result.pop(out, None)
                else:
                    result[out] = new
        return FockPolynomial(result)

    def compose(self, other, max_weight=None):
        """Normally ordered product self . other.

        apply(compose(A, B), f) == apply(A, apply(B, f)) for every f whose
        weight the truncation admits.  When max_weight is given, output terms
        whose annihilation weight exceeds it are dropped; such terms kill
        every polynomial of weight <= max_weight, so the truncated composite
        acts identically there.
        """
        result = {}
        for (a1, b1), c1 in self.terms.items():
            b1d = dict(b1)
            w_b1 = mono_weight(b1)
            for (a2, b2), c2 in other.terms.items():
                if max_weight is not None:
                    # cheapest bound: full contraction of b1 against a2
                    max_contract = sum(
                        k * min(m, b1d.get(k, 0)) for k, m in a2 if k in b1d)
                    if w_b1 + mono_weight(b2) - max_contract > max_weight:
                        continue
                # contract b1 (p-part of the left factor) against a2
                options = []
                a2_rest = []
                b1_rest = dict(b1d)
                for k, a in a2:
                    b = b1d.get(k, 0)
                    if b:
                        options.append((k, a, b))
                    else:
                        a2_rest.append((k, a))
                base = c1 * c2
                partial = [(a2_rest, dict(b1_rest), base)]
                for k, a, b in options:
                    nxt = []
                    for alpha_acc, beta_acc, coeff in partial:
                        for j, w in _contraction_weights(a, b, k):
                            alpha2 = list(alpha_acc)
                            if a - j:
                                alpha2.append((k, a - j))
                            beta2 = dict(beta_acc)
                            if b - j:
                                beta2[k] = b - j
                            else:
                                del beta2[k]
                            nxt.append((alpha2, beta2, coeff * w))
                    partial = nxt
                for alpha_acc, beta_acc, coeff in partial:
                    alpha = mono_mul(a1, tuple(sorted(alpha_acc)))
                    beta = mono_mul(b2, tuple(sorted(beta_acc.items())))
                    if max_weight is not None and mono_weight(beta) > max_weight:
                        continue
                    key = (alpha, beta)
                    new = result.get(key)
                    new = coeff if new is None else new + coeff
                    if new.is_zero():
                        result.pop(key, None)
                    else:
                        result[key] = new
        return NormalOrderedOperator(result)

    def commutator(self, other, max_weight=None):
        return self.compose(other, max_weight) - other.compose(self, max_weight)

    # -- rendering and serialization --------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: (mono_weight(t[0][0]), t[0][0], t[0][1]))

    def render(self):
        if not self.terms:
            return "0"
        out = []
        for (alpha, beta), c in self.sorted_terms():
            factors = []
            if alpha:
                factors.append(render_mono(alpha, "q"))
            if beta:
                factors.append(render_mono(beta, "p"))
            if not factors:
                factors.append("Id")
            out.append(f"({c.render()}) " + " ".join(factors))
        return " + ".join(out)

    def __repr__(self):
        return f"NormalOrderedOperator({self.render()})"

    def to_json(self):
        return [{"alpha": [list(km) for km in alpha],
                 "beta": [list(km) for km in beta],
                 "coeff": c.to_json()}
                for (alpha, beta), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        terms = {}
        for entry in data:
            alpha = tuple((int(k), int(m)) for k, m in entry["alpha"])
            beta = tuple((int(k), int(m)) for k, m in entry["beta"])
            coeff = ExactScalar.from_json(entry["coeff"])
            if not coeff.is_zero():
                terms[(alpha, beta)] = coeff
        return cls(terms)


# ---------------------------------------------------------------------------


def degree_operator(max_weight):
    """sum_k q_k p_k: multiplies weight-n monomials by hbar * n."""
    terms = {}
    for k in range(1, max_weight + 1):
        terms[(((k, 1),), ((k, 1),))] = ExactScalar.one()
    return NormalOrderedOperator(terms)


def naive_hamiltonian(n, max_weight):
    """Normally ordered multinomial expansion of (1/2pi) int u^(n+2)/(n+2)! dx
    with u = u0 + sum_k (q_k e^(ikx) + p_k e^(-ikx)).

    The x-integral keeps exactly the terms with equal creation and
    annihilation weight; a term (alpha, beta) with m = n+2-|alpha|-|beta|
    residual u0 factors carries u0^m / (m! prod alpha_k! beta_k!).
    """
    if n < -1:
        raise ValueError("n must be >= -1")
    order = n + 2
    result = {}
    for w in range(max_weight + 1):
        for ap in partitions_of(w):
            if len(ap) > order:
                continue
            for bp in partitions_of(w):
                m = order - len(ap) - len(bp)
                if m < 0:
                    continue
                alpha = mono_from_partition(ap)
                beta = mono_from_partition(bp)
                denom = factorial(m)
                for _, mult in alpha:
                    denom *= factorial(mult)
                for _, mult in beta:
                    denom *= factorial(mult)
                result[(alpha, beta)] = ExactScalar.monomial(
                    Fraction(1, denom), u0_power=m)
    return NormalOrderedOperator(result)


def weight_basis(n):
    """Monomial basis of V_n: partitions of n in rev-lex order."""
    return [mono_from_partition(p) for p in partitions_of(n)]


def matrix_on_weight(op, n, basis="monomial"):
    """Matrix of a weight-preserving operator on V_n.

    Columns are images of basis vectors; entry [i][j] is the coefficient of
    basis vector i in op(basis vector j).  basis is "monomial" or "schur"
    (the eps-scaled Schur basis s_lambda(q/eps)).
    """
    if not op.is_weight_preserving():
        raise ValueError("operator does not preserve the grading")
    if basis == "monomial":
        monos = weight_basis(n)
        index = {m: i for i, m in enumerate(monos)}
        cols = []
        for m in monos:
            image = op.apply(FockPolynomial.monomial(m))
            col = [ExactScalar.zero()] * len(monos)
            for mono, c in image.terms.items():
                col[index[mono]] = c
            cols.append(col)
        return [[cols[j][i] for j in range(len(monos))] for i in range(len(monos))]
    if basis == "schur":
        from .schur import scaled_schur, expand_in_scaled_schur
        labels = partitions_of(n)
        cols = []
        for lam in labels:
            image = op.apply(scaled_schur(lam))
            coeffs = expand_in_scaled_schur(image, n)
            cols.append([coeffs[mu] for mu in labels])
        return [[cols[j][i] for j in range(len(labels))] for i in range(len(labels))]
    raise ValueError(f"unknown basis {basis!r}")
