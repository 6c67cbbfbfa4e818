"""Exact Laurent polynomial arithmetic in one indeterminate v over Z,
and the fraction field Q(v) with exact power-series expansion at v = 0.

A LaurentPoly is stored sparsely as {exponent: coefficient} with no zero
coefficients.  All arithmetic is exact (arbitrary-precision integers /
rationals); there is no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """An element of Z[v, v^-1] (integer coefficients by convention, but
    rational coefficients are tolerated so intermediate Q-linear algebra
    can reuse the same class)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def v_power(cls, e, c=1):
        return cls({e: c})

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Top exponent; raises on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def valuation(self):
        """Bottom exponent; raises on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def __getitem__(self, e):
        return self.coeffs.get(e, 0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero()
            r = LaurentPoly.__new__(LaurentPoly)
            r.coeffs = {e: c * other for e, c in self.coeffs.items()}
            return r
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = out
        return r

    __rmul__ = __mul__

    def shifted(self, k):
        """Multiply by v^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return r

    def bar(self):
        """The bar involution v^i -> v^-i."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {-e: c for e, c in self.coeffs.items()}
        return r

    def subs_v_squared(self):
        """Substitute v -> v^2 (used to turn polynomials in q into
        Laurent polynomials in v with q = v^2)."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.coeffs = {2 * e: c for e, c in self.coeffs.items()}
        return r

    def evaluate(self, x):
        """Evaluate at a nonzero scalar (exact for int/Fraction input)."""
        total = 0
        for e, c in self.coeffs.items():
            if e >= 0:
                total += c * x**e
            else:
                total += c * Fraction(1, x ** (-e)) if isinstance(x, int) else c * x**e
        return total

    def at_one(self):
        """Evaluate at v = 1 (always exact)."""
        return sum(self.coeffs.values())

    def truncate_above(self, k):
        """Drop all terms of exponent > k."""
        return LaurentPoly({e: c for e, c in self.coeffs.items() if e <= k})

    # -- display / serialization --------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.text()!r})"

    def text(self):
        """Canonical text form, terms in increasing exponent,
        e.g. "-v^-2+3+2*v^3"."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            sign = "-" if c < 0 else ("+" if parts else "")
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if a == 1 else f"{a}*{var}"
            parts.append(sign + body)
        return "".join(parts)

    def to_json(self):
        """JSON object mapping exponent (string) to coefficient
        (integer, or string for values that overflow doubles)."""
        out = {}
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            out[str(e)] = c if abs(c) < 2**53 else str(c)
        return out

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): int(c) for e, c in obj.items()})


# convenient module-level constants
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
V = LaurentPoly.v_power(1)
VINV = LaurentPoly.v_power(-1)


# -- integer-coefficient polynomial gcd helpers (for Q(v) reduction) ---


def _to_dense(p):
    """(valuation, [c0, c1, ...]) with c0 != 0, for nonzero p."""
    lo = p.valuation()
    hi = p.degree()
    return lo, [p.coeffs.get(e, 0) for e in range(lo, hi + 1)]


def _from_dense(lo, cs):
    return LaurentPoly({lo + i: c for i, c in enumerate(cs) if c})


def _content(cs):
    from math import gcd

    g = 0
    for c in cs:
        g = gcd(g, abs(c))
    return g


def _prim(cs):
    g = _content(cs)
    if g > 1:
        cs = [c // g for c in cs]
    if cs and cs[-1] < 0:
        cs = [-c for c in cs]
    return cs


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense integer polynomial lists (deg a >= deg b)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(p, q):
    """Gcd in Z[v, v^-1] up to units, via the primitive PRS.  Returns a
    primitive polynomial with nonnegative valuation 0 and positive
    leading coefficient (1 for coprime inputs)."""
    if p.is_zero():
        return _normalize_unit(q)
    if q.is_zero():
        return _normalize_unit(p)
    _, a = _to_dense(p)
    _, b = _to_dense(q)
    a, b = _prim(a), _prim(b)
    if len(a) < len(b):
        a, b = b, a
    while any(b):
        r = _pseudo_rem(a, b)
        a, b = b, _prim(r)
    return _from_dense(0, _prim(a))


def _normalize_unit(p):
    """Divide by the unit +-v^k so valuation is 0 and leading coeff > 0,
    then make primitive."""
    if p.is_zero():
        return p
    _, cs = _to_dense(p)
    return _from_dense(0, _prim(cs))


def poly_divide_exact(p, q):
    """Exact division p / q in Q[v] shifted to Laurent; raises if not exact."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero()
    lo_p, a = _to_dense(p)
    lo_q, b = _to_dense(q)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    a = [Fraction(c) for c in a]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        out[i] = c
        if c:
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
    if any(a):
        raise ValueError("inexact polynomial division")
    res = {}
    for i, c in enumerate(out):
        if c:
            if c.denominator != 1:
                raise ValueError("inexact polynomial division over Z")
            res[lo_p - lo_q + i] = int(c)
    return LaurentPoly(res)


class RationalFunction:
    """An element of Q(v), stored as num/den with integer LaurentPoly
    parts in a canonical reduced form: gcd(num, den) = 1, den a genuine
    polynomial with nonzero constant term and positive leading
    coefficient, and all v-powers pushed into num."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = ONE
        elif isinstance(den, int):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._reduce(num, den)

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return ZERO, ONE
        # clear denominators of any Fraction coefficients
        def clear(p):
            from math import lcm

            m = 1
            for c in p.coeffs.values():
                if isinstance(c, Fraction):
                    m = lcm(m, c.denominator)
            if m != 1:
                p = LaurentPoly({e: int(c * m) for e, c in p.coeffs.items()})
            else:
                p = LaurentPoly({e: int(c) for e, c in p.coeffs.items()})
            return p, m

        num, mn = clear(num)
        den, md = clear(den)
        num = num * md
        den = den * mn
        g = poly_gcd(num, den)
        if not (g == ONE):
            num = poly_divide_exact(num, g)
            den = poly_divide_exact(den, g)
        # push the unit of den into num: den valuation 0, positive lead
        k = den.valuation()
        num = num.shifted(-k)
        den = den.shifted(-k)
        if den.coeffs[den.degree()] < 0:
            num, den = -num, -den
        # cancel integer content
        from math import gcd as igcd

        cn = 0
        for c in num.coeffs.values():
            cn = igcd(cn, abs(c))
        cd = 0
        for c in den.coeffs.values():
            cd = igcd(cd, abs(c))
        g = igcd(cn, cd)
        if g > 1:
            num = LaurentPoly({e: c // g for e, c in num.coeffs.items()})
            den = LaurentPoly({e: c // g for e, c in den.coeffs.items()})
        return num, den

    @classmethod
    def zero(cls):
        return cls(ZERO, ONE)

    @classmethod
    def one(cls):
        return cls(ONE, ONE)

    @classmethod
    def from_poly(cls, p):
        return cls(p, ONE)

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        return cls(LaurentPoly.const(q.numerator), LaurentPoly.const(q.denominator))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        return other / self

    def inverse(self):
        return RationalFunction.one() / self

    def valuation(self):
        """Order of vanishing at v = 0 (negative for a pole); raises on 0."""
        return self.num.valuation() - self.den.valuation()

    def series_coeff(self, k):
        """Exact coefficient of v^k in the Laurent expansion at v = 0.

        The expansion has no terms below ``self.valuation()``; requests
        below it correctly return 0 (the valuation is available
        explicitly rather than being silently truncated away)."""
        if self.num.is_zero():
            return Fraction(0)
        val = self.valuation()
        if k < val:
            return Fraction(0)
        # den has valuation 0 after reduction
        d0 = self.den[0]
        order = k - val
        # recurrence: num_shift = sum_{j<=order} s_j v^j * den  (mod v^{order+1})
        nlo = self.num.valuation()
        s = []
        for j in range(order + 1):
            acc = Fraction(self.num[nlo + j])
            for i, si in enumerate(s):
                acc -= si * self.den[j - i]
            s.append(acc / d0)
        return s[order]

    def series(self, upto):
        """Dict of expansion coefficients {k: Fraction} for valuation <= k <= upto."""
        if self.num.is_zero():
            return {}
        val = self.valuation()
        return {k: self.series_coeff(k) for k in range(val, upto + 1) if self.series_coeff(k)}

    def as_poly(self):
        """Return self as a LaurentPoly if the denominator is 1; raise otherwise."""
        if self.den == ONE:
            return self.num
        raise ValueError(f"not a Laurent polynomial: {self.text()}")

    def as_fraction(self):
        """Return self as a Fraction if constant; raise otherwise."""
        p = self.as_poly()
        if p.is_zero():
            return Fraction(0)
        if set(p.coeffs) <= {0}:
            return Fraction(p[0])
        raise ValueError(f"not a constant: {self.text()}")

    def at_one(self):
        d = self.den.at_one()
        if d == 0:
            raise ZeroDivisionError("pole at v = 1")
        return Fraction(self.num.at_one(), d)

    def text(self):
        if self.den == ONE:
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self):
        return f"RationalFunction({self.text()!r})"


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.from_poly(x)
    if isinstance(x, int):
        return RationalFunction(x)
    if isinstance(x, Fraction):
        return RationalFunction.from_fraction(x)
    return NotImplemented


def lp_mul(a, b):
    """Product of two Laurent polynomials."""
    return a * b


def lp_bar(a):
    """The bar involution v^i -> v^-i."""
    return a.bar()


def series_coeff(f, k):
    """Coefficient of v^k in the expansion of f at v = 0 (exact)."""
    return f.series_coeff(k)
