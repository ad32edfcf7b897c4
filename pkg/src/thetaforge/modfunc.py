"""Eta products, theta quotients, and Faber-polynomial replicability.

Dividing a fixed-sublattice theta series by the eta product of the
orbit type and raising the result to 24/N gives a q-expansion with a
simple pole at infinity.  This module builds those eta products and
quotients, expands Faber polynomials to test replicability of such a
series, and matches candidates against a small catalog of closed-form
eta expansions (the T_nX series of monstrous moonshine).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import DomainError, ParseError
from .lattice import catalog_theta
from .qseries import DEN, PrecisionError, QSeries, eta

_PART_RE = re.compile(r"(\d+)(?:\^(\d+))?\Z")


def parse_orbit_type(spec):
    """Normalize an orbit type to a sorted tuple of (length, count) pairs.

    Accepts a dict {length: count} as produced by cycle_type(), a bare
    iterable of cycle lengths, or a string such as "2^2 4^1".
    """
    if isinstance(spec, str):
        counts = {}
        for tok in spec.split():
            m = _PART_RE.match(tok)
            if not m:
                raise ParseError("bad orbit-type token %r in %r" % (tok, spec))
            t = int(m.group(1))
            counts[t] = counts.get(t, 0) + int(m.group(2) or 1)
    elif isinstance(spec, dict):
        counts = dict(spec)
    else:
        counts = {}
        for part in spec:
            if isinstance(part, tuple):
                t, r = part
            else:
                t, r = part, 1
            counts[t] = counts.get(t, 0) + r
    if not counts:
        raise DomainError("empty orbit type")
    for t, r in counts.items():
        if not (isinstance(t, int) and isinstance(r, int) and t >= 1 and r >= 1):
            raise DomainError("orbit type needs positive integer parts, got %r" % (spec,))
    return tuple(sorted(counts.items()))


def orbit_degree(orbit_type):
    """Number of points moved or fixed: sum of length * count."""
    return sum(t * r for t, r in parse_orbit_type(orbit_type))


def eta_product(orbit_type, trunc48):
    """Product of eta(q^t)^count over the orbit type, truncated."""
    out = QSeries.one(trunc48)
    for t, r in parse_orbit_type(orbit_type):
        out = out * eta(t, trunc48) ** r
    return out.truncate48(trunc48)


def theta_quotient(theta, orbit_type, N=None):
    """theta / eta_product, raised to 24/N when a rank N is given.

    With N omitted the bare quotient is returned.  The truncation of
    the result is whatever survives the division; callers wanting k
    integer powers of output should supply theta with some headroom.
    """
    orbit_type = parse_orbit_type(orbit_type)
    if theta.is_zero() or theta.valuation48() != 0 or theta.lead_coeff() != 1:
        raise DomainError("theta series must start with constant term 1")
    quo = theta / eta_product(orbit_type, theta.trunc48)
    if N is None:
        return quo
    N = int(N)
    if N <= 0 or N % 8:
        raise DomainError("rank must be a positive multiple of 8, got %d" % N)
    return quo.pow_rational(Fraction(24, N))


# ---------- Faber polynomials and replicability ----------

class ReplicabilityReport:
    """Faber coefficient table plus the bounded replicability verdict."""

    def __init__(self, K_rep, table=None, verdict=None, violations=(),
                 identified_as=None, constant_delta=None):
        self.K_rep = K_rep
        self.table = table
        self.verdict = verdict
        self.violations = list(violations)
        self.identified_as = identified_as
        self.constant_delta = constant_delta

    def to_json_obj(self):
        delta = self.constant_delta
        if delta is not None:
            delta = Fraction(delta)
            delta = "%d/%d" % (delta.numerator, delta.denominator)
        return {
            "verdict": self.verdict,
            "K_rep": self.K_rep,
            "violations": [list(v) for v in self.violations],
            "identified_as": self.identified_as,
            "constant_delta": delta,
        }


def strip_constant(f):
    """Split f into (f - constant term, constant term)."""
    c = f.coeffs.get(0, 0)
    if c:
        return f - c, Fraction(c)
    return f, Fraction(0)


def _check_hauptmodul_shape(f):
    if f.is_zero() or f.valuation48() != -DEN or f.lead_coeff() != 1:
        raise DomainError("need a series of the form q^-1 + O(q)")
    for e in f.exponents48():
        if e % DEN:
            raise DomainError("series has exponent %s/48 off the integer grid" % e)


def faber_table(f, K_rep):
    """Coefficients a[n][k] of the Faber polynomials of f, 1 <= n,k <= K_rep.

    F_1 = f and F_{k+1} = f*F_k - sum_{n=1}^{k-1} a_{k-n} F_n - (k+1) a_k,
    each expanded as a q-series; a[n][k] is read off from
    F_k = q^-k + k * sum_n a[n][k] q^n.  The input must be normalized to
    q^-1 + sum_{n>=1} a_n q^n with the constant already removed, and must
    carry coefficients through q^(2*K_rep).
    """
    K = int(K_rep)
    if K < 1:
        raise DomainError("K_rep must be at least 1")
    _check_hauptmodul_shape(f)
    if f.coeffs.get(0, 0):
        raise DomainError("constant term must be removed before tabulation")
    if f.trunc48 <= 2 * K * DEN:
        raise PrecisionError(
            "replicability at K_rep=%d needs coefficients through q^%d" % (K, 2 * K))

    a1 = [None] + [f.coeff48(n * DEN) for n in range(1, 2 * K + 1)]
    table = [[None] * (K + 1) for _ in range(K + 1)]
    polys = [None, f]
    for n in range(1, K + 1):
        table[n][1] = Fraction(a1[n])
    for k in range(1, K):
        nxt = f * polys[k]
        for n in range(1, k):
            nxt = nxt - a1[k - n] * polys[n]
        nxt = nxt - (k + 1) * a1[k]
        polys.append(nxt)
        assert nxt.coeff48(-(k + 1) * DEN) == 1
        for e in range(-k * DEN, DEN, DEN):
            assert nxt.coeff48(e) == 0, "Faber recurrence lost normalization"
        for n in range(1, K + 1):
            table[n][k + 1] = Fraction(nxt.coeff48(n * DEN), k + 1)
    for n in range(1, K + 1):
        for k in range(1, n):
            assert table[n][k] == table[k][n], \
                "Faber table asymmetric at (%d, %d)" % (n, k)
    return ReplicabilityReport(K, table=table)


def is_replicable(f, K_rep=12):
    """Bounded replicability check: a[n][k] must match a[r][s] whenever
    the pairs share their gcd and lcm.  The constant term is stripped
    before tabulation.  Never a proof, only a verdict up to K_rep.
    """
    f0, _ = strip_constant(f)
    try:
        report = faber_table(f0, K_rep)
    except PrecisionError:
        return ReplicabilityReport(int(K_rep), verdict="insufficient-precision")
    classes = {}
    violations = []
    for n in range(1, report.K_rep + 1):
        for k in range(n, report.K_rep + 1):
            key = (gcd(n, k), n * k)
            if key not in classes:
                classes[key] = (n, k)
                continue
            r, s = classes[key]
            if report.table[n][k] != report.table[r][s]:
                violations.append((n, k, r, s))
    report.violations = violations
    report.verdict = "not-replicable" if violations else "replicable-up-to-K_rep"
    return report


# ---------- catalog of closed-form expansions ----------

MT_NAMES = ("T_1A", "T_4A", "T_8B", "T_16a", "T_3A", "T_6b", "T_12A", "T_7A")

_PAD = 6 * DEN


def _build_t4a(t48):
    pad = t48 + _PAD
    f = (eta(2, pad) ** 2 / (eta(1, pad) * eta(4, pad))) ** 24
    return f


def _build_t8b(t48):
    return _build_t4a((t48 + DEN) // 2).dilate(2).pow_rational(Fraction(1, 2))


def _build_t16a(t48):
    return _build_t4a((t48 + 3 * DEN) // 4).dilate(4).pow_rational(Fraction(1, 4))


def _build_t3a(t48):
    pad = t48 + _PAD
    u = eta(1, pad) ** 6 / eta(3, pad) ** 6
    return (u + 27 * u.pow_rational(-1)) ** 2


def _build_t6b(t48):
    return _build_t3a((t48 + DEN) // 2).dilate(2).pow_rational(Fraction(1, 2))


def _build_t12a(t48):
    pad = t48 + _PAD
    num = eta(2, pad) ** 2 * eta(6, pad) ** 2
    den = eta(1, pad) * eta(4, pad) * eta(3, pad) * eta(12, pad)
    return (num / den) ** 6


def _build_t7a(t48):
    pad = t48 + _PAD
    a = eta(1, pad) * eta(7, pad) / (eta(2, pad) * eta(14, pad))
    return (a + 4 * a.pow_rational(-2)) ** 3


def _build_t1a(t48):
    pad = t48 + _PAD
    f = (catalog_theta("E8", 1, pad) / eta(1, pad) ** 8) ** 3
    return f - 744


_BUILDERS = {
    "T_1A": _build_t1a,
    "T_4A": _build_t4a,
    "T_8B": _build_t8b,
    "T_16a": _build_t16a,
    "T_3A": _build_t3a,
    "T_6b": _build_t6b,
    "T_12A": _build_t12a,
    "T_7A": _build_t7a,
}

_mt_cache = {}


def mckay_thompson(name, trunc48):
    """Closed-form expansion of the named catalog series, q^-1 + O(1)."""
    if name not in _BUILDERS:
        raise DomainError("unknown series %r; catalog has %s"
                          % (name, ", ".join(MT_NAMES)))
    cached = _mt_cache.get(name)
    if cached is None or cached.trunc48 < trunc48:
        cached = _BUILDERS[name](trunc48)
        assert cached.trunc48 >= trunc48
        assert cached.valuation48() == -DEN and cached.lead_coeff() == 1
        assert cached.is_integral()
        _mt_cache[name] = cached
    return cached.truncate48(trunc48)


def identify(f):
    """Match f against the catalog, ignoring constant terms.

    Needs at least 8 positive integer powers of f.  Returns a
    (name, constant_delta) pair, or (None, None) when nothing in the
    catalog matches on the full comparable window.
    """
    if f.trunc48 <= 8 * DEN:
        raise PrecisionError("identification needs at least 8 positive q-powers")
    if f.is_zero() or f.valuation48() != -DEN or f.lead_coeff() != 1:
        return None, None
    f0, c = strip_constant(f)
    for name in MT_NAMES:
        entry, ce = strip_constant(mckay_thompson(name, f.trunc48))
        if f0.matches(entry):
            return name, c - ce
    return None, None
