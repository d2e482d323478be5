"""Hirota bilinear machinery and exact KP verification.

The disk potential becomes a tau-function after substituting the t-variables.
To keep everything exact, each active exponential e^{t_k/d_k} is replaced by
a formal Laurent variable v_k, where d_k is the common denominator of the
rational exponents E_k/hbar over all partitions in range; the truncated tau
is then a weight-graded polynomial in p_1, p_2, ... whose coefficients are
Laurent polynomials in the v-variables.  Hirota operators, the generating
bilinear identity expanded in y, and the second-log-derivative PDE are all
checked identically in the v-variables.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial, lcm

from .fock import FockPolynomial, mono_mul, mono_weight, render_mono
from .scalars import ExactScalar
from .schur import complete_homogeneous

# ---------------------------------------------------------------------------
# Laurent coefficients in the v-variables: plain dicts {exponent tuple: ExactScalar}


def vl_constant(scalar):
    if isinstance(scalar, (int, Fraction)):
        scalar = ExactScalar.from_rational(scalar)
    if scalar.is_zero():
        return {}
    return {(): scalar}


def vl_monomial(exponents, scalar=None):
    scalar = ExactScalar.one() if scalar is None else scalar
    if scalar.is_zero():
        return {}
    return {tuple(exponents): scalar}


def vl_add(a, b):
    result = dict(a)
    for e, c in b.items():
        new = result.get(e)
        new = c if new is None else new + c
        if new.is_zero():
            result.pop(e, None)
        else:
            result[e] = new
    return result


def vl_neg(a):
    return {e: -c for e, c in a.items()}


def vl_scale(a, scalar):
    if isinstance(scalar, (int, Fraction)):
        scalar = ExactScalar.from_rational(scalar)
    if scalar.is_zero():
        return {}
    return {e: c * scalar for e, c in a.items()}


def vl_mul(a, b):
    result = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2)) if e1 and e2 else (e1 or e2)
            c = c1 * c2
            new = result.get(e)
            new = c if new is None else new + c
            if new.is_zero():
                result.pop(e, None)
            else:
                result[e] = new
    return result


def vl_render(a, names=None):
    if not a:
        return "0"
    parts = []
    for e, c in sorted(a.items()):
        factors = [f"({c.render()})"]
        for i, p in enumerate(e):
            if p:
                factors.append(f"v{i}^{p}")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------


class TruncatedTau:
    """Weight-truncated series in the p-variables with v-Laurent coefficients.

    `valid_weight` tracks up to which total weight the coefficients are
    complete; operations shrink it accordingly.
    """

    __slots__ = ("terms", "valid_weight", "eps")

    def __init__(self, terms, valid_weight, eps=None):
        self.terms = terms          # {p-mono: v-laurent dict}
        self.valid_weight = valid_weight
        self.eps = eps              # Fraction, or None if symbolic

    @classmethod
    def zero(cls, valid_weight, eps=None):
        return cls({}, valid_weight, eps)

    def copy_meta(self, terms, valid_weight=None):
        return TruncatedTau(terms,
                            self.valid_weight if valid_weight is None
                            else valid_weight, self.eps)

    def truncate(self):
        """Drop monomials above the valid weight."""
        return self.copy_meta({m: c for m, c in self.terms.items()
                               if mono_weight(m) <= self.valid_weight})

    def __add__(self, other):
        valid = min(self.valid_weight, other.valid_weight)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            new = vl_add(terms.get(m, {}), c)
            if new:
                terms[m] = new
            else:
                terms.pop(m, None)
        return self.copy_meta(terms, valid)

    def __neg__(self):
        return self.copy_meta({m: vl_neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        """Multiply by an ExactScalar/rational or a v-Laurent dict."""
        if isinstance(scalar, dict):
            return self.copy_meta({m: vl_mul(c, scalar)
                                   for m, c in self.terms.items()})
        return self.copy_meta({m: vl_scale(c, scalar)
                               for m, c in self.terms.items()})

    def __mul__(self, other):
        valid = min(self.valid_weight, other.valid_weight)
        terms = {}
        for m1, c1 in self.terms.items():
            w1 = mono_weight(m1)
            if w1 > valid:
                continue
            for m2, c2 in other.terms.items():
                if w1 + mono_weight(m2) > valid:
                    continue
                m = mono_mul(m1, m2)
                new = vl_add(terms.get(m, {}), vl_mul(c1, c2))
                if new:
                    terms[m] = new
                else:
                    terms.pop(m, None)
        return self.copy_meta(terms, valid)

    def derivative(self, k):
        """d/dp_k; the result is complete one k-weight lower."""
        terms = {}
        for mono, c in self.terms.items():
            for i, (var, power) in enumerate(mono):
                if var == k:
                    reduced = (mono[:i] + ((var, power - 1),) + mono[i + 1:]
                               if power > 1 else mono[:i] + mono[i + 1:])
                    terms[reduced] = vl_add(terms.get(reduced, {}),
                                            vl_scale(c, power))
                    break
        terms = {m: c for m, c in terms.items() if c}
        return self.copy_meta(terms, self.valid_weight - k)

    def is_zero_to_valid(self):
        return all(not c or mono_weight(m) > self.valid_weight
                   for m, c in self.terms.items())

    def max_residual_term(self):
        for m, c in sorted(self.terms.items(),
                           key=lambda t: (mono_weight(t[0]), t[0])):
            if c and mono_weight(m) <= self.valid_weight:
                return f"{render_mono(m, 'p')}: {vl_render(c)}"
        return None

    def constant_coefficient(self):
        return self.terms.get((), {})

    def render(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{vl_render(c)}] {render_mono(m, 'p')}"
                          for m, c in sorted(self.terms.items(),
                                             key=lambda t: (mono_weight(t[0]), t[0])))


def tau_from_disk(pot, active_k, u0, eps=None):
    """Substitute the t-exponentials of the disk potential by v-variables.

    active_k lists which t-variables are kept (the rest are set to zero).
    For each active k every exponent E_k/hbar must specialize to a rational;
    otherwise the run is refused with an explanation.
    """
    active = sorted(active_k)
    if any(k > pot.K for k in active):
        raise ValueError("active index beyond the potential's K")
    exponents = {}
    denominators = [1] * len(active)
    for lam, amp in pot.amplitudes.items():
        row = []
        for i, k in enumerate(active):
            val = amp.exponents[k].substitute(eps=eps, u0=u0)
            if not val.is_rational():
                raise ValueError(
                    f"exponent for t_{k} at {lam} is not rational "
                    f"({val.render()}); keep u0 and eps numeric for k >= 1")
            q = val.as_fraction()
            row.append(q)
            denominators[i] = lcm(denominators[i], q.denominator)
        exponents[lam] = row
    terms = {}
    for lam, amp in pot.amplitudes.items():
        vexp = tuple(int(q * d) for q, d in zip(exponents[lam], denominators))
        poly = amp.polynomial_part().substitute_scalars(eps=eps, u0=u0)
        for mono, c in poly.terms.items():
            new = vl_add(terms.get(mono, {}), vl_monomial(vexp, c))
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
    return TruncatedTau(terms, pot.max_weight, eps)


# ---------------------------------------------------------------------------
# Hirota operators (represented as FockPolynomials in symbols D_1, D_2, ...)


def hirota_apply(P, f, g):
    """P(D) f.g with D^a f.g = sum_b prod C(a_k, b_k) (-1)^{|a-b|}
    (d^b f)(d^{a-b} g); valid to min validity minus the top D-weight."""
    valid = min(f.valid_weight, g.valid_weight)
    if P.terms:
        valid -= max(mono_weight(m) for m in P.terms)
    acc = TruncatedTau.zero(valid, f.eps)
    for dmono, coeff in P.terms.items():
        for choice in itertools.product(*(range(a + 1) for _, a in dmono)):
            fac = Fraction(1)
            df, dg = f, g
            flips = 0
            for (k, a), b in zip(dmono, choice):
                fac *= comb(a, b)
                flips += a - b
                for _ in range(b):
                    df = df.derivative(k)
                for _ in range(a - b):
                    dg = dg.derivative(k)
            term = (df * dg).scale(coeff * (fac if flips % 2 == 0 else -fac))
            acc = acc + term.copy_meta(term.terms, valid)
    return acc.truncate()


def _hbar_scalar(eps):
    h = ExactScalar.hbar()
    return h.substitute(eps=eps) if eps is not None else h


def printed_bilinear(which, eps=None):
    """The two displayed bilinear equations:
    1: 12 D2^2 - 12 D1 D3 + hbar D1^4;  2: 6 D2 D3 - 6 D1 D4 + hbar D1^3 D2."""
    h = _hbar_scalar(eps)
    if which == 1:
        return (FockPolynomial.monomial(((2, 2),), 12)
                + FockPolynomial.monomial(((1, 1), (3, 1)), -12)
                + FockPolynomial.monomial(((1, 4),), h))
    if which == 2:
        return (FockPolynomial.monomial(((2, 1), (3, 1)), 6)
                + FockPolynomial.monomial(((1, 1), (4, 1)), -6)
                + FockPolynomial.monomial(((1, 3), (2, 1)), h))
    raise ValueError("which must be 1 or 2")


def kp_bilinear_check(which, tau):
    """Exact vanishing of a printed bilinear equation on tau."""
    residual = hirota_apply(printed_bilinear(which, tau.eps), tau, tau)
    return residual.is_zero_to_valid()


# ---------------------------------------------------------------------------
# the generating identity, expanded in y


def _d_tilde_substitution(j, eps=None):
    """h_j with q_k -> eps * k * D_k (as a FockPolynomial in D-symbols)."""
    e = ExactScalar.eps() if eps is None else ExactScalar.from_rational(eps)
    acc = FockPolynomial.zero()
    for mono, c in complete_homogeneous(j).terms.items():
        factor = Fraction(1)
        degree = 0
        for k, a in mono:
            factor *= Fraction(k) ** a
            degree += a
        acc = acc + FockPolynomial.monomial(mono, c * factor * e ** degree)
    return acc


def generating_identity_coefficients(y_order, y_vars=4, eps=None):
    """y-expansion of sum_j h_j(-2y) h_{j+1}(eps D-tilde) e^{eps sum y_k D_k}:
    map from a y-exponent tuple (length y_vars, total degree <= y_order) to
    the Hirota polynomial multiplying it."""
    e = ExactScalar.eps() if eps is None else ExactScalar.from_rational(eps)
    out = {}
    max_y_weight = y_vars * y_order
    for j in range(max_y_weight + 1):
        hj = complete_homogeneous(j, num_vars=y_vars)
        hd = _d_tilde_substitution(j + 1, eps)
        for ymono, c1 in hj.terms.items():
            ydeg1 = sum(a for _, a in ymono)
            if ydeg1 > y_order:
                continue
            scalar1 = c1 * Fraction(-2) ** ydeg1
            # exponential factor up to the remaining y-degree
            for extra in _y_tuples(y_vars, y_order - ydeg1):
                fac = ExactScalar.one()
                dmono = ()
                for k, a in enumerate(extra, start=1):
                    if a:
                        fac = fac * (e ** a) * Fraction(1, factorial(a))
                        dmono = mono_mul(dmono, ((k, a),))
                total = [0] * y_vars
                for k, a in ymono:
                    total[k - 1] += a
                for k, a in enumerate(extra):
                    total[k] += a
                key = tuple(total)
                contribution = hd * FockPolynomial.monomial(dmono, fac * scalar1)
                prev = out.get(key, FockPolynomial.zero())
                out[key] = prev + contribution
    return {k: v for k, v in out.items() if not v.is_zero()}


def _y_tuples(n, max_total):
    for total in range(max_total + 1):
        for cuts in itertools.combinations(range(total + n - 1), n - 1):
            prev = -1
            parts = []
            for c in cuts + (total + n - 1,):
                parts.append(c - prev - 1)
                prev = c
            yield tuple(parts)


def _drop_odd(P):
    """Remove odd-total-degree D-monomials (they annihilate any f.f)."""
    return FockPolynomial({m: c for m, c in P.terms.items()
                           if sum(a for _, a in m) % 2 == 0})


def kp_hierarchy_check(tau, y_order=2, y_vars=4):
    """Every y-coefficient of the generating identity (total degree <=
    y_order in y_1..y_{y_vars}) annihilates tau.tau up to its valid weight.

    The pure y3 and y4 coefficients are additionally asserted (after
    dropping odd monomials) to be exact scalar multiples of the two printed
    bilinear equations; the report records the factors.
    """
    coeffs = generating_identity_coefficients(y_order, y_vars, tau.eps)
    report = {"checked": 0, "failures": [], "factors": {}}
    for ymono, P in sorted(coeffs.items()):
        residual = hirota_apply(P, tau, tau)
        report["checked"] += 1
        if not residual.is_zero_to_valid():
            report["failures"].append((ymono, residual.max_residual_term()))
    # proportionality to the printed pair
    e2 = ExactScalar.eps(2) if tau.eps is None else \
        ExactScalar.from_rational(Fraction(tau.eps) ** 2)
    expectations = {
        (0, 0, 1, 0): (printed_bilinear(1, tau.eps), e2 * Fraction(-1, 36)),
        (0, 0, 0, 1): (printed_bilinear(2, tau.eps), e2 * Fraction(-1, 12)),
    }
    for ymono, (target, factor) in expectations.items():
        if sum(ymono) > y_order or len(ymono) != y_vars:
            continue
        got = _drop_odd(coeffs.get(ymono, FockPolynomial.zero()))
        expected = FockPolynomial.zero()
        for m, c in target.terms.items():
            expected = expected + FockPolynomial.monomial(m, c * factor)
        if got != expected:
            report["failures"].append((ymono, "proportionality mismatch"))
        else:
            report["factors"][ymono] = factor.render()
    return report


# ---------------------------------------------------------------------------
# the PDE for the second logarithmic derivative


def log_series(tau):
    """log(tau / c0) where c0 is the constant coefficient (required to be a
    single invertible Laurent monomial)."""
    c0 = tau.constant_coefficient()
    if len(c0) != 1:
        raise ValueError("constant term is not a single monomial")
    (vexp, coeff), = c0.items()
    if len(coeff.terms) != 1:
        raise ValueError("constant coefficient is not invertible")
    (ce, cu), cval = next(iter(coeff.terms.items()))
    if cu != 0:
        raise ValueError("constant coefficient involves u0")
    zeros = (0,) * len(vexp)
    inv = vl_monomial(tuple(-x for x in vexp),
                      ExactScalar.monomial(1 / cval, -ce))
    r = tau.scale(inv)
    r = r + TruncatedTau({(): vl_monomial(zeros, ExactScalar.from_rational(-1))},
                         tau.valid_weight, tau.eps)
    if any(mono_weight(m) == 0 for m, c in r.terms.items() if c):
        raise AssertionError("normalized tau does not start at 1")
    acc = TruncatedTau.zero(tau.valid_weight, tau.eps)
    power = TruncatedTau({(): vl_monomial(zeros)}, tau.valid_weight, tau.eps)
    for m in range(1, tau.valid_weight + 1):
        power = (power * r).truncate()
        acc = acc + power.scale(Fraction((-1) ** (m + 1), m))
    return acc.truncate()


def kp_equation_check(tau):
    """Residual of u_xt = u_yy + (u u_x + (hbar/12) u_xxx)_x for
    u = eps^2 d^2/dp_1^2 log tau, with x = p_1, y = p_2, t = p_3."""
    hbar = _hbar_scalar(tau.eps)
    eps2 = hbar  # eps^2 == hbar
    u = log_series(tau).derivative(1).derivative(1).scale(eps2)
    u_xt = u.derivative(1).derivative(3)
    u_yy = u.derivative(2).derivative(2)
    inner = u * u.derivative(1) + \
        u.derivative(1).derivative(1).derivative(1).scale(
            hbar * Fraction(1, 12))
    residual = u_xt - u_yy - inner.derivative(1)
    return residual.is_zero_to_valid()
