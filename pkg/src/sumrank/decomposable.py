"""Products of per-block subspaces of F_q^eta.

A decomposable subspace is a tuple of ell factors, one subspace per block;
its total dimension is the sum of the factor dimensions.  Intersections and
sums factor blockwise, so dimensions of intersections and sums are sums of
the per-block ones.  Uniform sampling is two-stage: first the dimension
composition, weighted by the product of Grassmannian sizes, then each factor
uniform from its Grassmannian independently.
"""

import itertools
from fractions import Fraction

from . import counting, linalg
from .guards import require_within
from .montecarlo import EstimateResult

# enumerate_decomposable refuses families larger than this.
MAX_DECOMPOSABLE = 10 ** 6


class DecomposableSubspace:
    """A product of per-block subspaces, all with the same ambient eta."""

    __slots__ = ("field", "eta", "ell", "factors")

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one factor")
        field = factors[0].field
        eta = factors[0].ambient
        for f in factors:
            if f.field != field:
                raise ValueError("factors use different fields")
            if f.ambient != eta:
                raise ValueError("factors have different ambient dimensions")
        self.field = field
        self.eta = eta
        self.ell = len(factors)
        self.factors = factors

    @property
    def composition(self):
        """Per-block dimensions."""
        return tuple(f.dim for f in self.factors)

    @property
    def total_dim(self):
        return sum(f.dim for f in self.factors)

    def intersect(self, other):
        self._check(other)
        return DecomposableSubspace(
            tuple(a.intersect(b) for a, b in zip(self.factors, other.factors)))

    def add(self, other):
        self._check(other)
        return DecomposableSubspace(
            tuple(a.add(b) for a, b in zip(self.factors, other.factors)))

    def flatten(self):
        """The same space inside F_q^(eta*ell); block i occupies coordinates
        [i*eta, (i+1)*eta)."""
        ambient = self.eta * self.ell
        rows = []
        for i, f in enumerate(self.factors):
            for row in f.basis:
                flat = [0] * ambient
                flat[i * self.eta:(i + 1) * self.eta] = row
                rows.append(tuple(flat))
        return linalg.Subspace.span(self.field, ambient, rows)

    def _check(self, other):
        if (self.field != other.field or self.eta != other.eta
                or self.ell != other.ell):
            raise ValueError("decomposable subspaces have different shapes")

    def __eq__(self, other):
        return (isinstance(other, DecomposableSubspace)
                and self.factors == other.factors)

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return (f"DecomposableSubspace(dims={self.composition}, "
                f"eta={self.eta}, q={self.field.q})")

    def to_json(self):
        return {"eta": self.eta, "ell": self.ell,
                "factors": [[list(r) for r in f.basis] for f in self.factors]}


def decomposable_build(factors):
    """Validate and assemble a decomposable subspace from factor subspaces."""
    return DecomposableSubspace(factors)


def enumerate_decomposable(field, eta, ell, w):
    """All decomposable subspaces of total dimension w; guarded brute force."""
    if not 0 <= w <= eta * ell:
        raise ValueError(f"w = {w} outside [0, {eta * ell}]")
    expected = counting.decomposable_count(eta, ell, w, field.q)
    require_within(expected, MAX_DECOMPOSABLE, "decomposable family size")
    out = []
    for comp in counting.bounded_compositions(w, ell, upper=eta):
        per_block = [linalg.enumerate_subspaces(field, eta, k) for k in comp]
        for combo in itertools.product(*per_block):
            out.append(DecomposableSubspace(combo))
    assert len(out) == expected
    return out


def sample_decomposable_uniform(field, eta, ell, w, rng):
    """A uniform decomposable subspace of total dimension w.

    Stage one draws the dimension composition with probability proportional
    to the product of Grassmannian sizes (exact integer inverse CDF); stage
    two draws each factor uniformly and independently.
    """
    if not 0 <= w <= eta * ell:
        raise ValueError(f"w = {w} outside [0, {eta * ell}]")
    q = field.q
    cells = []
    cum = 0
    for comp in counting.bounded_compositions(w, ell, upper=eta):
        mass = 1
        for part in comp:
            mass *= counting.gaussian_binomial(eta, part, q)
        cum += mass
        cells.append((cum, comp))
    assert cum == counting.decomposable_count(eta, ell, w, q)
    u = rng.randrange(cum)
    comp = next(c for bound, c in cells if u < bound)
    return DecomposableSubspace(
        tuple(linalg.sample_subspace(field, eta, k, rng) for k in comp))


def _event_threshold(w_x, min_fraction, exact_dim):
    if (min_fraction is None) == (exact_dim is None):
        raise ValueError("specify exactly one of min_fraction and exact_dim")
    if min_fraction is not None:
        frac = Fraction(str(min_fraction)) if isinstance(min_fraction, float) \
            else Fraction(min_fraction)
        threshold = -(-frac.numerator * w_x // frac.denominator)  # ceil
        return lambda d: d >= threshold
    return lambda d: d == exact_dim


def intersection_dimension_estimate(field, eta, ell, w_x, w_y, trials, stream,
                                    min_fraction=None, exact_dim=None):
    """Monte Carlo law of dim(X meet Y) for independent uniform decomposable
    X, Y of total dimensions w_x, w_y.

    The event is either dim >= min_fraction * w_x or dim == exact_dim.
    Returns an EstimateResult whose mean_value is the empirical mean
    intersection dimension.  Trial i uses stream.child(i), so the estimate
    is independent of scheduling.
    """
    event = _event_threshold(w_x, min_fraction, exact_dim)
    successes = 0
    dim_total = 0
    for i in range(trials):
        rng = stream.child(i)
        x = sample_decomposable_uniform(field, eta, ell, w_x, rng)
        y = sample_decomposable_uniform(field, eta, ell, w_y, rng)
        d = x.intersect(y).total_dim
        dim_total += d
        if event(d):
            successes += 1
    return EstimateResult.from_counts(successes, trials, dim_total / trials)


def intersection_event_probability_exact(field, eta, ell, w_x, w_y,
                                         min_fraction=None, exact_dim=None):
    """Exact event probability by double enumeration; guarded like
    enumerate_decomposable."""
    event = _event_threshold(w_x, min_fraction, exact_dim)
    xs = enumerate_decomposable(field, eta, ell, w_x)
    ys = enumerate_decomposable(field, eta, ell, w_y) if w_y != w_x else xs
    hits = 0
    for x in xs:
        for y in ys:
            if event(x.intersect(y).total_dim):
                hits += 1
    return Fraction(hits, len(xs) * len(ys))
