"""Exact coefficient arithmetic.

The universal coefficient ring is Q[u0][eps, eps^-1], with the quantization
parameter hbar represented as eps^2 throughout (half-integer hbar powers occur
in the disk amplitudes, so eps is the primitive variable).  Also provides
Bernoulli numbers and the two power series s(t) = sinh(t/2)/(t/2) and 1/s(t)
that govern the quantum corrections.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


class ExactScalar:
    """Element of Q[u0][eps, eps^-1], stored as a sparse map
    (eps power, u0 power) -> Fraction with no zero entries.

    eps powers may be negative; u0 powers are non-negative (the ring is never
    localized at u0).  Instances are immutable by convention.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms is trusted to be reduced (no zero values, u0 powers >= 0)
        self.terms = terms or {}

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, value):
        value = Fraction(value)
        if value == 0:
            return cls()
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, value, eps_power=0, u0_power=0):
        value = Fraction(value)
        if u0_power < 0:
            raise ValueError("u0 powers must be non-negative")
        if value == 0:
            return cls()
        return cls({(eps_power, u0_power): value})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def eps(cls, power=1):
        return cls({(power, 0): Fraction(1)})

    @classmethod
    def u0(cls, power=1):
        return cls.monomial(1, 0, power)

    @classmethod
    def hbar(cls, power=1):
        """hbar^power = eps^(2*power); power may be a half-integer Fraction."""
        p = Fraction(power) * 2
        if p.denominator != 1:
            raise ValueError("hbar power must be a multiple of 1/2")
        return cls.eps(int(p))

    # -- ring structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ExactScalar.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_rational(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        result = dict(self.terms)
        for key, val in other.terms.items():
            new = result.get(key, 0) + val
            if new:
                result[key] = new
            else:
                result.pop(key, None)
        return ExactScalar(result)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExactScalar)
                       else ExactScalar.from_rational(-Fraction(other)))

    def __rsub__(self, other):
        return ExactScalar.from_rational(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ExactScalar()
            return ExactScalar({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, ExactScalar):
            return NotImplemented
        result = {}
        for (e1, u1), v1 in self.terms.items():
            for (e2, u2), v2 in other.terms.items():
                key = (e1 + e2, u1 + u2)
                new = result.get(key, 0) + v1 * v2
                if new:
                    result[key] = new
                else:
                    del result[key]
        return ExactScalar(result)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = ExactScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- views and specializations ---------------------------------------

    def shift_eps(self, power):
        """Multiply by eps^power (power may be negative)."""
        return ExactScalar({(e + power, u): v for (e, u), v in self.terms.items()})

    def substitute(self, eps=None, u0=None):
        """Substitution homomorphism eps -> rational and/or u0 -> rational."""
        result = {}
        for (e, u), v in self.terms.items():
            if eps is not None:
                if eps == 0 and e < 0:
                    raise ZeroDivisionError("negative eps power at eps=0")
                v = v * Fraction(eps) ** e
                e = 0
            if u0 is not None:
                v = v * Fraction(u0) ** u
                u = 0
            key = (e, u)
            new = result.get(key, 0) + v
            if new:
                result[key] = new
            else:
                result.pop(key, None)
        return ExactScalar(result)

    def as_fraction(self):
        """Value as a rational; raises if eps or u0 survive."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {(0, 0)}:
            raise ValueError(f"not a pure rational: {self.render()}")
        return self.terms[(0, 0)]

    def is_rational(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def min_eps_order(self):
        if not self.terms:
            raise ValueError("zero has no eps order")
        return min(e for e, _ in self.terms)

    def eps_component(self, power):
        """The u0-polynomial multiplying eps^power."""
        return ExactScalar({(e, u): v for (e, u), v in self.terms.items()
                            if e == power})

    def lowest_eps_part(self):
        """(order, component) at the minimal eps power; zero -> (0, 0)."""
        if not self.terms:
            return 0, ExactScalar()
        order = self.min_eps_order()
        return order, self.eps_component(order)

    def eps_powers(self):
        return sorted({e for e, _ in self.terms})

    # -- rendering --------------------------------------------------------

    def render(self):
        """Canonical text form: sum of `c * u0^a * eps^b`, sorted by (b, a)."""
        if not self.terms:
            return "0"
        parts = []
        for (e, u), v in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            factors = [str(v)]
            if u:
                factors.append(f"u0^{u}")
            if e:
                factors.append(f"eps^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"ExactScalar({self.render()})"

    def to_json(self):
        """Array of [eps power, u0 power, numerator, denominator], sorted."""
        return [[e, u, v.numerator, v.denominator]
                for (e, u), v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        terms = {}
        for e, u, num, den in data:
            val = Fraction(num, den)
            if val:
                terms[(e, u)] = val
        return cls(terms)


ZERO = ExactScalar.zero()
ONE = ExactScalar.one()


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli number B_n in the convention B_1 = -1/2.

    Computed from sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    total = sum(comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -total / (n + 1)


class UnivariateSeries:
    """Truncated power series in one formal variable over Q.

    coeffs[i] is the coefficient of t^i; the order (= len(coeffs) - 1) is
    explicit and all arithmetic truncates to the shorter order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [Fraction(c) for c in coeffs]

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        return isinstance(other, UnivariateSeries) and self.coeffs == other.coeffs

    def __mul__(self, other):
        order = min(self.order, other.order)
        coeffs = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[:order + 1 - i]):
                coeffs[i + j] += a * b
        return UnivariateSeries(coeffs)

    def __pow__(self, n):
        result = UnivariateSeries([1] + [0] * self.order)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self):
        """Multiplicative inverse; requires an invertible constant term."""
        if not self.coeffs[0]:
            raise ZeroDivisionError("constant term vanishes")
        inv = [1 / self.coeffs[0]]
        for n in range(1, self.order + 1):
            acc = sum(self.coeffs[k] * inv[n - k]
                      for k in range(1, min(n, self.order) + 1))
            inv.append(-acc / self.coeffs[0])
        return UnivariateSeries(inv)

    def __repr__(self):
        return f"UnivariateSeries({self.coeffs})"


def s_series(order):
    """Taylor coefficients of s(t) = sinh(t/2) / (t/2) up to the given order.

    s(t) = 1 + sum_{n>=1} t^(2n) / (2^(2n) (2n+1)!); odd coefficients vanish.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = []
    fact = 1
    for n in range(order + 1):
        if n:
            fact *= n + 1
        if n % 2 == 0:
            coeffs.append(Fraction(1, 2 ** n * fact))
        else:
            coeffs.append(Fraction(0))
    return UnivariateSeries(coeffs)


def inv_s_series(order):
    """Coefficients of 1/s(t): (2^(1-n) - 1) B_n / n! at t^n."""
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = []
    fact = 1
    for n in range(order + 1):
        if n:
            fact *= n
        coeffs.append((Fraction(2) ** (1 - n) - 1) * bernoulli(n) / fact)
    return UnivariateSeries(coeffs)
