"""Exact q-combinatorics for spaces of matrix tuples.

Counts (compositions, Gaussian binomials, sphere and ball volumes,
decomposable-subspace counts) are exact Python integers.  The two-sided
volume bounds involve the irrational constant prod_{i>=1}(1 - q^-i); those
comparisons happen in the log-base-q domain at 120-bit precision with a
declared margin, never in binary floating point on the raw counts.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .galois import FieldSpec

# Mantissa bits for all log-domain bound work.
_PREC = 120

# Default slack used when comparing exact counts against irrational bounds.
LOG_MARGIN = 1e-9


@dataclass(frozen=True)
class SpaceParams:
    """Shape of the ambient space: ell blocks of m x eta matrices over field."""

    field: FieldSpec
    m: int
    eta: int
    ell: int

    def __post_init__(self):
        for name in ("m", "eta", "ell"):
            value = getattr(self, name)
            if not (isinstance(value, int) and value >= 1):
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def q(self):
        return self.field.q

    @property
    def n(self):
        """Code length: eta * ell."""
        return self.eta * self.ell

    @property
    def total_dim(self):
        """F_q dimension of the whole space, m * eta * ell."""
        return self.m * self.eta * self.ell

    @property
    def block_rank_cap(self):
        return min(self.m, self.eta)

    @property
    def max_weight(self):
        return self.ell * self.block_rank_cap

    @property
    def b(self):
        """Aspect ratio eta / m as an exact rational."""
        return Fraction(self.eta, self.m)

    def to_json(self):
        return {"field": self.field.to_json(), "m": self.m,
                "eta": self.eta, "ell": self.ell}


# -- compositions ----------------------------------------------------------

def _normalize_bounds(parts, bound, default):
    if bound is None:
        return [default] * parts
    if isinstance(bound, int):
        return [bound] * parts
    out = [int(v) for v in bound]
    if len(out) != parts:
        raise ValueError(f"expected {parts} bounds, got {len(out)}")
    return out


def bounded_compositions(total, parts, upper=None, lower=None):
    """Yield ordered compositions of total into parts, lexicographically.

    Part i ranges over [lower_i, upper_i]; lower defaults to all zeros and
    upper to no cap.  Bounds may be a single int or a per-part sequence.
    """
    if parts < 0 or total < 0:
        raise ValueError("total and parts must be nonnegative")
    lo = _normalize_bounds(parts, lower, 0)
    hi = _normalize_bounds(parts, upper, total)
    if parts == 0:
        if total == 0:
            yield ()
        return
    min_rest = [0] * (parts + 1)
    max_rest = [0] * (parts + 1)
    for i in range(parts - 1, -1, -1):
        min_rest[i] = min_rest[i + 1] + lo[i]
        max_rest[i] = max_rest[i + 1] + hi[i]

    def rec(i, remaining, prefix):
        if i == parts:
            yield tuple(prefix)
            return
        low = max(lo[i], remaining - max_rest[i + 1])
        high = min(hi[i], remaining - min_rest[i + 1])
        for v in range(low, high + 1):
            prefix.append(v)
            yield from rec(i + 1, remaining - v, prefix)
            prefix.pop()

    yield from rec(0, total, [])


def count_bounded_compositions(total, parts, upper=None, lower=None):
    """Exact count of the compositions bounded_compositions would yield."""
    if parts < 0 or total < 0:
        raise ValueError("total and parts must be nonnegative")
    lo = _normalize_bounds(parts, lower, 0)
    hi = _normalize_bounds(parts, upper, total)
    ways = [0] * (total + 1)
    ways[0] = 1
    for i in range(parts):
        nxt = [0] * (total + 1)
        for s in range(total + 1):
            w = ways[s]
            if w:
                for v in range(lo[i], min(hi[i], total - s) + 1):
                    nxt[s + v] += w
        ways = nxt
    return ways[total]


# -- Gaussian binomials and matrix counts ----------------------------------

def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of an n-dimensional F_q space.

    Evaluated as an exact quotient of q-factorial products; zero outside
    0 <= k <= n.
    """
    if n < 0 or q < 2:
        raise ValueError("need n >= 0 and q >= 2")
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def rank_matrix_count(m, eta, r, q):
    """Number of m x eta matrices over F_q of rank exactly r."""
    if not 0 <= r <= min(m, eta):
        raise ValueError(f"rank r = {r} outside [0, {min(m, eta)}]")
    num = 1
    den = 1
    for j in range(r):
        num *= (q ** m - q ** j) * (q ** eta - q ** j)
        den *= q ** r - q ** j
    assert num % den == 0
    return num // den


# -- the Euler product constant --------------------------------------------

def euler_product_interval(q, tol):
    """Exact rational interval enclosing prod_{i>=1}(1 - q^-i), width <= tol.

    The truncated product overestimates; the tail is controlled by
    prod_{i>N}(1 - q^-i) >= 1 - sum_{i>N} q^-i = 1 - q^-N/(q-1).
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    tol = Fraction(tol) if not isinstance(tol, float) else Fraction(str(tol))
    if tol <= 0:
        raise ValueError("tol must be positive")
    partial = Fraction(1)
    i = 0
    while True:
        i += 1
        partial *= 1 - Fraction(1, q ** i)
        tail = Fraction(1, q ** i * (q - 1))
        if partial * tail <= tol:
            return (partial * (1 - tail), partial)


@functools.lru_cache(maxsize=None)
def _logq_euler_product(q):
    """log_q of the Euler product, accurate far below LOG_MARGIN."""
    lo, hi = euler_product_interval(q, Fraction(1, 10 ** 36))
    mid = (lo + hi) / 2
    with mp.workprec(_PREC):
        value = mp.log(mpf(mid.numerator) / mpf(mid.denominator)) / mp.log(q)
    return value


def logq_int(value, q):
    """log_q of a positive integer via 120-bit floats; exact conversion first."""
    if value <= 0:
        raise ValueError("value must be positive")
    with mp.workprec(_PREC):
        return mp.log(mpf(value)) / mp.log(q)


def gaussian_binomial_bounds_ok(n, k, q, margin=LOG_MARGIN):
    """Check q^((n-k)k) <= [n k]_q <= q^((n-k)k) / prod(1 - q^-i).

    Comparison in the log-base-q domain with the declared margin.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    exact = logq_int(gaussian_binomial(n, k, q), q)
    base = (n - k) * k
    lower = base
    upper = base - _logq_euler_product(q)
    return float(exact) >= float(lower) - margin and float(exact) <= float(upper) + margin


# -- sphere and ball volumes -----------------------------------------------

@functools.lru_cache(maxsize=None)
def sphere_volume(params, r):
    """Exact number of tuples at sum-rank weight r around any fixed center."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    if r == 0:
        return 1
    q, m, eta = params.q, params.m, params.eta
    total = 0
    for comp in bounded_compositions(r, params.ell, upper=params.block_rank_cap):
        term = 1
        for part in comp:
            term *= rank_matrix_count(m, eta, part, q)
        total += term
    return total


@functools.lru_cache(maxsize=None)
def ball_volume(params, r):
    """Exact number of tuples at sum-rank distance <= r from a fixed center."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    return sum(sphere_volume(params, s) for s in range(r + 1))


def _volume_exponent(params, r):
    # (m + eta - r/ell) * r as an exact rational
    return (Fraction(params.m + params.eta) - Fraction(r, params.ell)) * r


def sphere_bounds_logq(params, r):
    """Two-sided sphere volume bounds, returned as log_q values."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    q, ell = params.q, params.ell
    logk = _logq_euler_product(q)
    expo = _volume_exponent(params, r)
    with mp.workprec(_PREC):
        expo_mp = mpf(expo.numerator) / mpf(expo.denominator)
        lower = ell * logk + expo_mp - mpf(ell) / 4
        upper = -ell * logk + logq_int(math.comb(ell + r - 1, r), q) + expo_mp
    return float(lower), float(upper)


def ball_bounds_logq(params, r):
    """Two-sided ball volume bounds, returned as log_q values."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    q, ell = params.q, params.ell
    logk = _logq_euler_product(q)
    expo = _volume_exponent(params, r)
    with mp.workprec(_PREC):
        expo_mp = mpf(expo.numerator) / mpf(expo.denominator)
        lower = ell * logk + expo_mp - mpf(ell) / 4
        upper = -ell * logk + logq_int(math.comb(ell + r, ell), q) + expo_mp
    return float(lower), float(upper)


def sphere_bounds_ok(params, r, margin=LOG_MARGIN):
    exact = float(logq_int(sphere_volume(params, r), params.q))
    lower, upper = sphere_bounds_logq(params, r)
    return lower - margin <= exact <= upper + margin


def ball_bounds_ok(params, r, margin=LOG_MARGIN):
    exact = float(logq_int(ball_volume(params, r), params.q))
    lower, upper = ball_bounds_logq(params, r)
    return lower - margin <= exact <= upper + margin


# -- decomposable subspace counts ------------------------------------------

@functools.lru_cache(maxsize=None)
def decomposable_count(eta, ell, w, q):
    """Number of products of per-block subspaces with total dimension w."""
    if not 0 <= w <= eta * ell:
        raise ValueError(f"w = {w} outside [0, {eta * ell}]")
    total = 0
    for comp in bounded_compositions(w, ell, upper=eta):
        term = 1
        for part in comp:
            term *= gaussian_binomial(eta, part, q)
        total += term
    return total


def decomposable_bounds_logq(eta, ell, w, q):
    """Two-sided bounds on the decomposable count, as log_q values."""
    if not 0 <= w <= eta * ell:
        raise ValueError(f"w = {w} outside [0, {eta * ell}]")
    logk = _logq_euler_product(q)
    expo = Fraction(eta * w) - Fraction(w * w, ell)
    with mp.workprec(_PREC):
        expo_mp = mpf(expo.numerator) / mpf(expo.denominator)
        lower = expo_mp
        upper = -ell * logk + logq_int(math.comb(w + ell - 1, ell - 1), q) + expo_mp
    return float(lower), float(upper)


def decomposable_bounds_ok(eta, ell, w, q, margin=LOG_MARGIN):
    count = decomposable_count(eta, ell, w, q)
    exact = float(logq_int(count, q))
    lower, upper = decomposable_bounds_logq(eta, ell, w, q)
    return lower - margin <= exact <= upper + margin


def decomposable_le_grassmannian(eta, ell, w, q):
    """Exact integer check: decomposable spaces never outnumber w-subspaces."""
    return decomposable_count(eta, ell, w, q) <= gaussian_binomial(eta * ell, w, q)


# -- capacity curves -------------------------------------------------------

def _as_fraction(x):
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def capacity_penalty(rho, b):
    """Rate loss at relative radius rho for block aspect ratio b = eta/m.

    Exact rational: rho + rho*b - rho^2*b.
    """
    rho = _as_fraction(rho)
    b = _as_fraction(b)
    if not 0 < rho < 1:
        raise ValueError(f"rho = {rho} outside (0, 1)")
    if not 0 < b <= 1:
        raise ValueError(f"b = {b} outside (0, 1]")
    return rho + rho * b - rho * rho * b


def list_decoding_capacity(rho, b):
    """Largest achievable rate at relative radius rho: 1 minus the penalty."""
    return 1 - capacity_penalty(rho, b)


def q_ary_entropy(rho, q):
    """H_q(rho) = rho log_q(q-1) - rho log_q rho - (1-rho) log_q(1-rho)."""
    rho = float(rho)
    if not 0 < rho < 1:
        raise ValueError(f"rho = {rho} outside (0, 1)")
    if q < 2:
        raise ValueError("q must be >= 2")
    logq = math.log(q)
    return (rho * math.log(q - 1) - rho * math.log(rho)
            - (1 - rho) * math.log(1 - rho)) / logq
