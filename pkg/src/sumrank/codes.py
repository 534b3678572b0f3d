"""Random code ensembles in the sum-rank metric and list-size statistics.

Two ensembles: general codes include every point of the space independently
with probability q^((R-1)mn), drawn exactly as an integer Bernoulli (success
iff a uniform draw below q^((1-R)mn) is zero); linear codes are row spaces
of uniform full-rank k x mn generators with k = R*mn.  Both require the
code dimension R*mn to be an integer, which keeps every inclusion
probability a rational with power-of-q denominator.
"""

import math
from fractions import Fraction

from . import linalg, metric
from .counting import ball_volume, _as_fraction
from .guards import require_within
from .metric import BlockTuple, sum_rank_distance, tuple_code, zero_tuple
from .montecarlo import EstimateResult

# Full-space sweeps (general-code draws, exhaustive list sizes) cap here.
MAX_CODE_SPACE = 2 ** 20
# Linear codeword iteration caps at this many words.
MAX_CODEWORDS = 2 ** 20


def radius_for(params, rho):
    """Decoding radius floor(rho * n) for relative radius rho in (0, 1)."""
    rho = _as_fraction(rho)
    if not 0 < rho < 1:
        raise ValueError(f"rho = {rho} outside (0, 1)")
    return int(rho * params.n)


def _dimension_from_rate(params, rate):
    rate = _as_fraction(rate)
    if not 0 < rate <= 1:
        raise ValueError(f"rate = {rate} outside (0, 1]")
    k = rate * params.total_dim
    if k.denominator != 1:
        raise ValueError(
            f"rate {rate} gives non-integral dimension {k} for mn = {params.total_dim}")
    return int(k)


class Code:
    """A code in the metric space, either linear (basis) or general (set)."""

    __slots__ = ("params", "basis", "words", "_flat")

    def __init__(self, params, basis=None, words=None):
        if (basis is None) == (words is None):
            raise ValueError("provide exactly one of basis and words")
        self.params = params
        self._flat = None
        if basis is not None:
            basis = tuple(basis)
            for x in basis:
                if x.params != params:
                    raise ValueError("basis element has mismatched params")
            rows = [x.to_vector() for x in basis]
            if rows and linalg._rank_rows(params.field, rows) != len(rows):
                raise ValueError("basis rows are linearly dependent")
            self.basis = basis
            self.words = None
        else:
            words = frozenset(words)
            for x in words:
                if x.params != params:
                    raise ValueError("codeword has mismatched params")
            self.basis = None
            self.words = words

    @property
    def is_linear(self):
        return self.basis is not None

    @property
    def dimension(self):
        if not self.is_linear:
            raise ValueError("general codes have no dimension")
        return len(self.basis)

    @property
    def size(self):
        if self.is_linear:
            return self.params.q ** len(self.basis)
        return len(self.words)

    @property
    def rate(self):
        """k/mn as an exact rational for linear codes, log_q|C|/mn otherwise."""
        if self.is_linear:
            return Fraction(len(self.basis), self.params.total_dim)
        if not self.words:
            return None
        return math.log(len(self.words), self.params.q) / self.params.total_dim

    def _flat_subspace(self):
        if self._flat is None:
            field = self.params.field
            self._flat = linalg.Subspace.span(
                field, self.params.total_dim, [x.to_vector() for x in self.basis])
        return self._flat

    def contains(self, x):
        if self.is_linear:
            return self._flat_subspace().contains(x.to_vector())
        return x in self.words

    def codewords(self):
        """All codewords; for linear codes iterates q^k combinations."""
        if not self.is_linear:
            return list(self.words)
        require_within(self.size, MAX_CODEWORDS, "codeword count")
        params = self.params
        words = [zero_tuple(params)]
        for b in self.basis:
            scaled = [b.scale(c) for c in range(1, params.q)]
            words = words + [w.add(s) for s in scaled for w in words]
        assert len(words) == self.size
        return words

    def to_json(self):
        if self.is_linear:
            return {"kind": "linear", "basis": [x.to_json() for x in self.basis]}
        ordered = sorted(self.words, key=tuple_code)
        return {"kind": "general", "codewords": [x.to_json() for x in ordered]}


def sample_linear_code(params, rate, rng):
    """Row space of a uniform full-rank k x mn generator, k = rate * mn."""
    k = _dimension_from_rate(params, rate)
    rows = linalg.sample_full_rank(params.field, k, params.total_dim, rng)
    basis = tuple(BlockTuple.from_vector(params, row) for row in rows)
    return Code(params, basis=basis)


def sample_general_code(params, rate, rng):
    """Each point included independently with probability q^((rate-1)mn).

    The Bernoulli draw is exact: include iff randrange(q^((1-rate)mn)) == 0.
    Guarded: sweeps the whole space, q^mn points.
    """
    k = _dimension_from_rate(params, rate)
    space = params.q ** params.total_dim
    require_within(space, MAX_CODE_SPACE, "code space size")
    denom = params.q ** (params.total_dim - k)
    words = []
    for code in range(space):
        if rng.randrange(denom) == 0:
            words.append(metric.tuple_from_code(params, code))
    return Code(params, words=words)


# -- list sizes ------------------------------------------------------------

def list_size_at(code, center, radius):
    """Exact |B(center, radius) meet C|.

    Linear codes iterate whichever is smaller of the codeword set and the
    ball; general codes scan their explicit word set.
    """
    params = code.params
    if not 0 <= radius <= params.max_weight:
        raise ValueError(f"radius {radius} outside [0, {params.max_weight}]")
    if not code.is_linear:
        return sum(1 for w in code.words
                   if sum_rank_distance(w, center) <= radius)
    if code.size <= ball_volume(params, radius):
        return sum(1 for w in code.codewords()
                   if sum_rank_distance(w, center) <= radius)
    hits = 0
    for offset in metric.enumerate_ball(params, radius):
        if code.contains(center.add(offset)):
            hits += 1
    return hits


def _iter_ball_points(params, radius):
    # Streaming ball enumeration for spreading; guarded by the caller via
    # the full space size.
    for code in range(params.q ** params.total_dim):
        x = metric.tuple_from_code(params, code)
        if x.weight() <= radius:
            yield x


def _occupancy_by_center(code, radius):
    """Map center -> |B(center, radius) meet C| for all centers hit.

    Spreads each codeword over the ball around it; centers never hit hold
    list size zero and are omitted.
    """
    params = code.params
    space = params.q ** params.total_dim
    require_within(space, MAX_CODE_SPACE, "code space size")
    words = code.codewords()
    counts = {}
    for offset in _iter_ball_points(params, radius):
        for w in words:
            center = w.add(offset)
            key = tuple_code(center)
            counts[key] = counts.get(key, 0) + 1
    return counts


def max_list_size(code, radius, mode="exhaustive", trials=None, rng=None):
    """Largest list size over centers, with a witness center.

    mode "exhaustive" covers every center (guarded at MAX_CODE_SPACE points
    of space); mode "sampled" draws uniform centers and returns the largest
    list observed, a lower bound.
    """
    params = code.params
    if not 0 <= radius <= params.max_weight:
        raise ValueError(f"radius {radius} outside [0, {params.max_weight}]")
    if mode == "exhaustive":
        counts = _occupancy_by_center(code, radius)
        if not counts:
            return 0, zero_tuple(params)
        best_key = None
        best = -1
        for key, value in counts.items():
            if value > best or (value == best and key < best_key):
                best = value
                best_key = key
        return best, metric.tuple_from_code(params, best_key)
    if mode == "sampled":
        if not trials or rng is None:
            raise ValueError("sampled mode needs trials and rng")
        best = -1
        best_center = None
        for _ in range(trials):
            center = metric.sample_uniform_tuple(params, rng)
            size = list_size_at(code, center, radius)
            if size > best:
                best = size
                best_center = center
        return best, best_center
    raise ValueError(f"unknown mode {mode!r}")


def expected_ball_occupancy(code, radius):
    """(closed form, exhaustive average) of |B(X, radius) meet C| over
    uniform centers X.

    Closed form: |C| * ball_volume / q^mn.  The exhaustive side recomputes
    the average from scratch, one distance at a time over every center and
    codeword pair, so agreement is a real check and not an algebraic echo.
    """
    params = code.params
    space = params.q ** params.total_dim
    require_within(space, MAX_CODE_SPACE, "code space size")
    closed = Fraction(code.size * ball_volume(params, radius), space)
    words = code.codewords()
    hits = 0
    for center in metric.iter_all_tuples(params):
        for w in words:
            if sum_rank_distance(w, center) <= radius:
                hits += 1
    return closed, Fraction(hits, space)


# -- correlation style estimators ------------------------------------------

def correlation_estimate(params, rho, trials, stream, center=None):
    """Estimate Pr[X1 + X2 in B(center, radius)] for independent uniform
    ball draws X1, X2 at radius floor(rho * n); center defaults to zero."""
    radius = radius_for(params, rho)
    if center is None:
        center = zero_tuple(params)
    successes = 0
    for i in range(trials):
        rng = stream.child(i)
        x1 = metric.sample_ball_uniform(params, radius, rng)
        x2 = metric.sample_ball_uniform(params, radius, rng)
        if sum_rank_distance(x1.add(x2), center) <= radius:
            successes += 1
    return EstimateResult.from_counts(successes, trials)


def span_ball_count(points, radius):
    """Number of distinct span elements of the given points inside
    B(0, radius); guarded at q^len(points) combinations."""
    if not points:
        raise ValueError("need at least one point")
    params = points[0].params
    for x in points:
        if x.params != params:
            raise ValueError("points live in different spaces")
    gamma = len(points)
    require_within(params.q ** gamma, MAX_CODE_SPACE, "span combination count")
    seen = set()
    hits = 0
    combos = [zero_tuple(params)]
    for x in points:
        scaled = [x.scale(c) for c in range(1, params.q)]
        combos = combos + [c.add(s) for s in scaled for c in combos]
    for combo in combos:
        key = tuple_code(combo)
        if key not in seen:
            seen.add(key)
            if combo.weight() <= radius:
                hits += 1
    return hits


def limited_correlation_estimate(params, rho, gamma, bound_factor, trials, stream):
    """Estimate Pr[|span(X1..Xgamma) meet B(0, radius)| >= bound_factor * gamma]
    for independent uniform ball draws at radius floor(rho * n)."""
    radius = radius_for(params, rho)
    threshold = _as_fraction(bound_factor) * gamma
    successes = 0
    for i in range(trials):
        rng = stream.child(i)
        points = [metric.sample_ball_uniform(params, radius, rng)
                  for _ in range(gamma)]
        if span_ball_count(points, radius) >= threshold:
            successes += 1
    return EstimateResult.from_counts(successes, trials)


def subset_span_event_estimate(params, rho, coefficient_vectors, trials, stream):
    """Estimate the probability that every listed coefficient combination of
    gamma independent ball draws lands back in B(0, radius).

    coefficient_vectors holds rows over [0, q), all of one length gamma.
    """
    radius = radius_for(params, rho)
    vectors = [tuple(int(c) for c in row) for row in coefficient_vectors]
    if not vectors:
        raise ValueError("need at least one coefficient vector")
    gamma = len(vectors[0])
    q = params.q
    for row in vectors:
        if len(row) != gamma:
            raise ValueError("coefficient vectors have unequal lengths")
        if any(not 0 <= c < q for c in row):
            raise ValueError("coefficient outside field range")
    successes = 0
    for i in range(trials):
        rng = stream.child(i)
        points = [metric.sample_ball_uniform(params, radius, rng)
                  for _ in range(gamma)]
        ok = True
        for row in vectors:
            combo = zero_tuple(params)
            for c, x in zip(row, points):
                if c:
                    combo = combo.add(x.scale(c))
            if combo.weight() > radius:
                ok = False
                break
        if ok:
            successes += 1
    return EstimateResult.from_counts(successes, trials)
