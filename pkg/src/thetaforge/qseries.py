"""Truncated q-series with exact rational coefficients.

Exponents live on the grid (1/48)Z and are stored as integer multiples
of 1/48.  48 is the least common denominator of every exponent that
shows up in this package: eta prefactors contribute 1/24, half-norm
theta exponents contribute 1/2, and the quarter-shifted thetas of the
super-code construction contribute 1/16.

A series knows its coefficients exactly for all exponents strictly
below ``trunc48`` (also in 48ths) and nothing beyond.  Arithmetic
propagates truncations honestly, so multiplying by a series with a
negative leading exponent shrinks the window the way it should.
"""

from __future__ import annotations

from fractions import Fraction

DEN = 48


class PrecisionError(ValueError):
    """A coefficient at or beyond the truncation bound was requested."""


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def to_exp48(e):
    """Convert an exponent given in q-units to integer 48ths."""
    e48 = Fraction(e) * DEN
    if e48.denominator != 1:
        raise ValueError("exponent %s is not a multiple of 1/%d" % (e, DEN))
    return int(e48)


def iroot(n, k):
    """Exact integer k-th root of n >= 0, or None if n is not a k-th power."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    lo, hi = 1, 1 << ((n.bit_length() + k - 1) // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def rational_power(c, r):
    """Exact c**r for rational c and r, or raise ValueError.

    Negative bases are only allowed for integer r.
    """
    c = Fraction(c)
    r = Fraction(r)
    if r.denominator == 1:
        return c ** int(r)
    if c <= 0:
        raise ValueError("cannot take a fractional power of %s exactly" % c)
    pn = iroot(c.numerator, r.denominator)
    pd = iroot(c.denominator, r.denominator)
    if pn is None or pd is None:
        raise ValueError("%s has no exact %d-th root" % (c, r.denominator))
    return Fraction(pn, pd) ** r.numerator


def binom_frac(r, k):
    """Generalized binomial coefficient C(r, k) for rational r, integer k >= 0."""
    out = Fraction(1)
    for i in range(k):
        out *= (r - i)
        out /= (i + 1)
    return out


class QSeries:
    """A q-series known exactly below its truncation exponent.

    ``coeffs`` maps exponent (in 48ths) to a nonzero int or Fraction;
    ``trunc48`` is the exclusive bound below which the series is exact.
    Instances are immutable by convention: no method mutates self.
    """

    __slots__ = ("coeffs", "trunc48")

    def __init__(self, coeffs, trunc48):
        trunc48 = int(trunc48)
        clean = {}
        for e, c in coeffs.items():
            e = int(e)
            if e >= trunc48:
                continue
            c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
            if c:
                clean[e] = c
        self.coeffs = clean
        self.trunc48 = trunc48

    @classmethod
    def _raw(cls, coeffs, trunc48):
        out = object.__new__(cls)
        out.coeffs = coeffs
        out.trunc48 = trunc48
        return out

    # ---------- constructors ----------

    @classmethod
    def zero(cls, trunc48):
        return cls._raw({}, int(trunc48))

    @classmethod
    def one(cls, trunc48):
        return cls.monomial(1, 0, trunc48)

    @classmethod
    def monomial(cls, coeff, exp48, trunc48):
        coeff = _norm_coeff(coeff)
        if not coeff or exp48 >= trunc48:
            return cls.zero(trunc48)
        return cls._raw({int(exp48): coeff}, int(trunc48))

    @classmethod
    def from_pairs(cls, pairs, trunc):
        """Build from (exponent, coefficient) pairs, exponents in q-units."""
        coeffs = {}
        for e, c in pairs:
            e48 = to_exp48(e)
            coeffs[e48] = coeffs.get(e48, 0) + c
        return cls(coeffs, to_exp48(trunc))

    # ---------- inspection ----------

    def is_zero(self):
        return not self.coeffs

    def valuation48(self):
        """Smallest known exponent, or trunc48 for the zero series."""
        return min(self.coeffs) if self.coeffs else self.trunc48

    def lead_coeff(self):
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[self.valuation48()]

    def coeff48(self, e48):
        if e48 >= self.trunc48:
            raise PrecisionError(
                "coefficient at %s/48 is beyond the truncation %s/48"
                % (e48, self.trunc48))
        return self.coeffs.get(e48, 0)

    def coefficient(self, e):
        """Coefficient at exponent e (int or Fraction, in q-units)."""
        return self.coeff48(to_exp48(e))

    def integer_coefficients(self, lo, hi):
        """Coefficients at q^lo, ..., q^hi inclusive."""
        return [self.coeff48(k * DEN) for k in range(lo, hi + 1)]

    def exponents48(self):
        return sorted(self.coeffs)

    def is_integral(self):
        """True when all exponents are integers and coefficients are integers."""
        return all(e % DEN == 0 and isinstance(c, int)
                   for e, c in self.coeffs.items())

    def matches(self, other):
        """Coefficientwise equality below the smaller truncation."""
        return self.first_mismatch48(other) is None

    def first_mismatch48(self, other):
        """Smallest exponent (48ths) where the two series differ, or None."""
        t = min(self.trunc48, other.trunc48)
        exps = set(self.coeffs) | set(other.coeffs)
        bad = [e for e in exps
               if e < t and self.coeffs.get(e, 0) != other.coeffs.get(e, 0)]
        return min(bad) if bad else None

    # ---------- arithmetic ----------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc48 == other.trunc48 and self.coeffs == other.coeffs

    __hash__ = None

    def __neg__(self):
        return QSeries._raw({e: -c for e, c in self.coeffs.items()}, self.trunc48)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(other, 0, self.trunc48)
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc48, other.trunc48)
        out = {e: c for e, c in self.coeffs.items() if e < t}
        for e, c in other.coeffs.items():
            if e < t:
                s = out.get(e, 0) + c
                if s:
                    out[e] = _norm_coeff(s)
                else:
                    out.pop(e, None)
        return QSeries._raw(out, t)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__add__(-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QSeries.zero(self.trunc48)
            return QSeries._raw(
                {e: _norm_coeff(c * other) for e, c in self.coeffs.items()},
                self.trunc48)
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.valuation48() + other.trunc48,
                other.valuation48() + self.trunc48)
        out = {}
        a = sorted(self.coeffs.items())
        b = sorted(other.coeffs.items())
        for e1, c1 in a:
            for e2, c2 in b:
                e = e1 + e2
                if e >= t:
                    break
                out[e] = out.get(e, 0) + c1 * c2
        clean = {}
        for e, c in out.items():
            if c:
                clean[e] = _norm_coeff(c)
        return QSeries._raw(clean, t)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / other
            return self.__mul__(inv)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.pow_rational(-1)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.pow_rational(n)
        if n == 0:
            if self.trunc48 <= 0:
                raise PrecisionError("cannot represent 1 below truncation 0")
            return QSeries.one(self.trunc48)
        base, out = self, None
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def pow_rational(self, r):
        """Exact f**r for rational r, via the binomial series.

        Writes f = c q^v (1 + h) and expands; requires c**r to be an
        exact rational and r*v to stay on the exponent grid.
        """
        r = Fraction(r)
        if not self.coeffs:
            if r > 0:
                return QSeries.zero(int(self.trunc48 * r))
            raise ValueError("cannot raise the zero series to a nonpositive power")
        if r.denominator == 1 and r >= 0:
            return self ** int(r)
        v = self.valuation48()
        c = self.coeffs[v]
        rv = r * v
        if rv.denominator != 1:
            raise ValueError("power %s of leading exponent %s/48 leaves the grid"
                             % (r, v))
        cr = rational_power(c, r)
        trel = self.trunc48 - v
        ci = Fraction(1, 1) / c
        h = QSeries._raw(
            {e - v: _norm_coeff(cc * ci) for e, cc in self.coeffs.items() if e != v},
            trel)
        out = QSeries.one(trel)
        if not h.is_zero():
            step = h.valuation48()
            hk = QSeries.one(trel)
            k = 1
            while k * step < trel:
                hk = hk * h
                out = out + binom_frac(r, k) * hk
                k += 1
        shifted = {e + int(rv): _norm_coeff(cr * cc)
                   for e, cc in out.coeffs.items()}
        return QSeries._raw({e: c2 for e, c2 in shifted.items() if c2},
                            trel + int(rv))

    def dilate(self, m):
        """Replace q by q**m for a positive integer m."""
        m = int(m)
        if m < 1:
            raise ValueError("dilation factor must be a positive integer")
        return QSeries._raw({e * m: c for e, c in self.coeffs.items()},
                            self.trunc48 * m)

    def truncate48(self, t48):
        t48 = min(int(t48), self.trunc48)
        return QSeries._raw({e: c for e, c in self.coeffs.items() if e < t48}, t48)

    def truncate(self, t):
        """Drop all terms at exponent >= t (q-units)."""
        return self.truncate48(to_exp48(t))

    # ---------- serialization / display ----------

    def to_json_obj(self):
        pairs = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            pairs.append([e, c if isinstance(c, int)
                          else "%d/%d" % (c.numerator, c.denominator)])
        return {"lead_num48": self.valuation48(),
                "trunc_num48": self.trunc48,
                "coeffs": pairs}

    @classmethod
    def from_json_obj(cls, obj):
        coeffs = {}
        for e, c in obj["coeffs"]:
            if isinstance(c, str):
                num, den = c.split("/")
                c = Fraction(int(num), int(den))
            coeffs[int(e)] = c
        return cls(coeffs, obj["trunc_num48"])

    def __str__(self):
        if not self.coeffs:
            return "0 + O(q^%s)" % _exp_str(Fraction(self.trunc48, DEN))
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                term = str(mag)
            else:
                qpow = "q" if e == DEN else "q^%s" % _exp_str(Fraction(e, DEN))
                term = qpow if mag == 1 else "%s%s" % (mag, qpow)
            if not bits:
                bits.append(term if sign == "+" else "-" + term)
            else:
                bits.append("%s %s" % (sign, term))
        bits.append("+ O(q^%s)" % _exp_str(Fraction(self.trunc48, DEN)))
        return " ".join(bits)

    def __repr__(self):
        return "QSeries(%d terms, trunc %s/48)" % (len(self.coeffs), self.trunc48)


def _exp_str(e):
    return str(e.numerator) if e.denominator == 1 else "(%s)" % e


# ---------- the basic series ----------

def eta(scale, trunc48):
    """Dedekind eta of q**scale: q^(scale/24) prod (1 - q^(scale*n)).

    Expanded with Euler's pentagonal number theorem, so building one is
    cheap at any truncation used here.
    """
    scale = int(scale)
    if scale < 1:
        raise ValueError("eta scale must be a positive integer")
    coeffs = {}
    k = 0
    while True:
        placed = False
        for kk in ((k, -k) if k else (0,)):
            e48 = scale * (2 + 24 * kk * (3 * kk - 1))
            if e48 < trunc48:
                coeffs[e48] = 1 if kk % 2 == 0 else -1
                placed = True
        if not placed and k > 0:
            break
        k += 1
    return QSeries._raw(coeffs, trunc48)


def shifted_theta(weight, shift, trunc48, alternating=False):
    """Sum over n of (-1)^(n if alternating) q^(weight*(n+shift)^2).

    weight is a positive rational, shift is a rational in [0, 1).
    Exponents must land on the 1/48 grid.
    """
    weight = Fraction(weight)
    shift = Fraction(shift)
    if weight <= 0:
        raise ValueError("theta weight must be positive")
    coeffs = {}

    def put(n):
        e = weight * (n + shift) ** 2 * DEN
        if e.denominator != 1:
            raise ValueError(
                "theta exponent %s leaves the 1/%d grid" % (e / DEN, DEN))
        e = int(e)
        if e >= trunc48:
            return False
        s = -1 if (alternating and n % 2) else 1
        c = coeffs.get(e, 0) + s
        if c:
            coeffs[e] = c
        else:
            coeffs.pop(e, None)
        return True

    n = 0
    while put(n):
        n += 1
    n = -1
    while put(n):
        n -= 1
    return QSeries._raw(coeffs, trunc48)


def theta2(t, trunc48):
    """Jacobi theta_2 of q**t: sum q^(t(n+1/2)^2/2)."""
    return shifted_theta(Fraction(t, 2), Fraction(1, 2), trunc48)


def theta3(t, trunc48):
    """Jacobi theta_3 of q**t: sum q^(t n^2/2)."""
    return shifted_theta(Fraction(t, 2), 0, trunc48)


def theta4(t, trunc48):
    """Jacobi theta_4 of q**t: sum (-1)^n q^(t n^2/2)."""
    return shifted_theta(Fraction(t, 2), 0, trunc48, alternating=True)
