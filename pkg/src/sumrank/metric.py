"""The sum-rank metric space: tuples of matrices, weights, balls, samplers.

A point is an ell-tuple of m x eta matrices over F_q; its weight is the sum
of the block ranks.  Enumeration code indexes points by integers (blocks in
base q^(m*eta), most significant block first; entries within a block
row-major, most significant first), which keeps brute-force oracles cheap
and deterministic.

Two exact samplers live here.  The ball sampler draws weight and per-block
ranks by inverse CDF on exact integer counts, then factors each block as
U V with uniform full-rank factors; every rank-r matrix has the same number
of such factorizations, so the result is exactly uniform on the ball.  The
rows-from-subspace sampler draws a uniform decomposable subspace and fills
each block with m uniform rows from its factor, giving weight at most w and
weight exactly w with probability bounded below by the Euler product
constant to the power ell.
"""

import functools
import itertools
from dataclasses import dataclass

from . import counting, decomposable, linalg
from .counting import SpaceParams, ball_volume, sphere_volume
from .guards import require_within

# Hard cap on full-space enumeration, q^(m*eta*ell) points.
MAX_ENUMERATION = 2 ** 16


class BlockTuple:
    """An immutable point of the metric space: ell grids of element indices."""

    __slots__ = ("params", "blocks", "_weight")

    def __init__(self, params, blocks):
        blocks = tuple(tuple(tuple(int(v) for v in row) for row in block)
                       for block in blocks)
        if len(blocks) != params.ell:
            raise ValueError(f"expected {params.ell} blocks, got {len(blocks)}")
        q = params.q
        for block in blocks:
            if len(block) != params.m or any(len(row) != params.eta for row in block):
                raise ValueError("block shape does not match params")
            for row in block:
                for v in row:
                    if not 0 <= v < q:
                        raise ValueError(f"entry {v} outside field of order {q}")
        self.params = params
        self.blocks = blocks
        self._weight = None

    def weight(self):
        """Sum of the block ranks; cached after the first call."""
        if self._weight is None:
            field = self.params.field
            self._weight = sum(linalg._rank_rows(field, block) for block in self.blocks)
        return self._weight

    def add(self, other):
        self._check(other)
        add = self.params.field._add
        return BlockTuple(self.params, tuple(
            tuple(tuple(add[x][y] for x, y in zip(r1, r2))
                  for r1, r2 in zip(b1, b2))
            for b1, b2 in zip(self.blocks, other.blocks)))

    def neg(self):
        neg = self.params.field._neg
        return BlockTuple(self.params, tuple(
            tuple(tuple(neg[x] for x in row) for row in block)
            for block in self.blocks))

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        mrow = self.params.field._mul[self.params.field.check(c)]
        return BlockTuple(self.params, tuple(
            tuple(tuple(mrow[x] for x in row) for row in block)
            for block in self.blocks))

    def to_vector(self):
        """Flatten to a length m*eta*ell tuple, blocks in order, row-major."""
        out = []
        for block in self.blocks:
            for row in block:
                out.extend(row)
        return tuple(out)

    @classmethod
    def from_vector(cls, params, vector):
        vector = tuple(vector)
        if len(vector) != params.total_dim:
            raise ValueError("vector length does not match params")
        per_block = params.m * params.eta
        blocks = []
        for i in range(params.ell):
            chunk = vector[i * per_block:(i + 1) * per_block]
            blocks.append(tuple(chunk[r * params.eta:(r + 1) * params.eta]
                                for r in range(params.m)))
        return cls(params, blocks)

    def _check(self, other):
        if self.params != other.params:
            raise ValueError("points live in different spaces")

    def __eq__(self, other):
        return (isinstance(other, BlockTuple)
                and self.params == other.params and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.params, self.blocks))

    def __repr__(self):
        return f"BlockTuple(weight={self.weight()}, params={self.params!r})"

    def to_json(self):
        return [[list(row) for row in block] for block in self.blocks]


def zero_tuple(params):
    zero_block = tuple((0,) * params.eta for _ in range(params.m))
    return BlockTuple(params, (zero_block,) * params.ell)


def sum_rank_weight(x):
    return x.weight()


def sum_rank_distance(x, y):
    return x.sub(y).weight()


@dataclass(frozen=True)
class BallSpec:
    """A metric ball given by its center and radius."""

    center: BlockTuple
    radius: int

    def __post_init__(self):
        if not 0 <= self.radius <= self.center.params.max_weight:
            raise ValueError(
                f"radius {self.radius} outside [0, {self.center.params.max_weight}]")

    def contains(self, x):
        return sum_rank_distance(x, self.center) <= self.radius


# -- integer codes for points ----------------------------------------------

def matrix_code(q, block):
    code = 0
    for row in block:
        for v in row:
            code = code * q + v
    return code


def matrix_from_code(q, m, eta, code):
    if not 0 <= code < q ** (m * eta):
        raise ValueError(f"matrix code {code} outside [0, {q ** (m * eta)})")
    entries = []
    for _ in range(m * eta):
        code, v = divmod(code, q)
        entries.append(v)
    entries.reverse()
    return tuple(tuple(entries[r * eta:(r + 1) * eta]) for r in range(m))


def tuple_code(x):
    params = x.params
    base = params.q ** (params.m * params.eta)
    code = 0
    for block in x.blocks:
        code = code * base + matrix_code(params.q, block)
    return code


def tuple_from_code(params, code):
    space = params.q ** params.total_dim
    if not 0 <= code < space:
        raise ValueError(f"tuple code {code} outside [0, {space})")
    base = params.q ** (params.m * params.eta)
    blocks = []
    for _ in range(params.ell):
        code, bc = divmod(code, base)
        blocks.append(matrix_from_code(params.q, params.m, params.eta, bc))
    blocks.reverse()
    return BlockTuple(params, blocks)


def iter_all_tuples(params):
    """Every point of the space in code order; caller guards the size."""
    for code in range(params.q ** params.total_dim):
        yield tuple_from_code(params, code)


@functools.lru_cache(maxsize=None)
def rank_table(field, m, eta):
    """Rank of every m x eta matrix, indexed by matrix code."""
    size = field.q ** (m * eta)
    require_within(size, MAX_ENUMERATION, "matrix table size")
    out = []
    for code in range(size):
        block = matrix_from_code(field.q, m, eta, code)
        out.append(linalg._rank_rows(field, block))
    return tuple(out)


def weight_histogram(params):
    """Exact weight distribution by enumerating every point of the space.

    This is the brute-force oracle for the volume formulas: entry w counts
    the points of weight w among all q^(m*eta*ell).  Guarded at
    MAX_ENUMERATION points.
    """
    space = params.q ** params.total_dim
    require_within(space, MAX_ENUMERATION, "space size")
    table = rank_table(params.field, params.m, params.eta)
    hist = [0] * (params.max_weight + 1)
    for ranks in itertools.product(table, repeat=params.ell):
        hist[sum(ranks)] += 1
    return hist


def _codes_with_weight(params, keep):
    space = params.q ** params.total_dim
    require_within(space, MAX_ENUMERATION, "space size")
    table = rank_table(params.field, params.m, params.eta)
    base = len(table)
    out = []
    for code in range(space):
        c = code
        w = 0
        for _ in range(params.ell):
            c, bc = divmod(c, base)
            w += table[bc]
        if keep(w):
            out.append(code)
    return out


def enumerate_sphere(params, r):
    """All points at weight exactly r, as BlockTuples; brute force, guarded."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    return [tuple_from_code(params, c)
            for c in _codes_with_weight(params, lambda w: w == r)]


def enumerate_ball(params, r):
    """All points at weight <= r, as BlockTuples; brute force, guarded."""
    if not 0 <= r <= params.max_weight:
        raise ValueError(f"radius r = {r} outside [0, {params.max_weight}]")
    return [tuple_from_code(params, c)
            for c in _codes_with_weight(params, lambda w: w <= r)]


# -- samplers --------------------------------------------------------------

def sample_uniform_matrix_of_rank(field, m, eta, r, rng):
    """A uniform m x eta matrix of rank exactly r, as a grid of rows.

    Factors as U V with U uniform full-rank m x r and V uniform full-rank
    r x eta; each rank-r matrix has exactly |GL_r| such factorizations, so
    the product is uniform.
    """
    if not 0 <= r <= min(m, eta):
        raise ValueError(f"rank r = {r} outside [0, {min(m, eta)}]")
    if r == 0:
        return tuple((0,) * eta for _ in range(m))
    left = linalg.sample_full_rank(field, m, r, rng)
    right = linalg.sample_full_rank(field, r, eta, rng)
    return tuple(linalg.mat_mul(field, left, right))


@functools.lru_cache(maxsize=None)
def _ball_sampler_table(params, radius):
    # Flat inverse-CDF table over (weight, composition) cells: entries are
    # (cumulative count, composition); cell mass is the product of per-block
    # rank counts, so one uniform draw below the ball volume picks a cell
    # with the exact conditional law.
    q, m, eta = params.q, params.m, params.eta
    cells = []
    cum = 0
    for s in range(radius + 1):
        for comp in counting.bounded_compositions(s, params.ell,
                                                  upper=params.block_rank_cap):
            mass = 1
            for part in comp:
                mass *= counting.rank_matrix_count(m, eta, part, q)
            cum += mass
            cells.append((cum, comp))
    assert cum == ball_volume(params, radius)
    return tuple(cells), cum


def sample_ball_uniform(params, radius, rng):
    """A point uniform on the ball of the given radius around zero."""
    if not 0 <= radius <= params.max_weight:
        raise ValueError(f"radius {radius} outside [0, {params.max_weight}]")
    cells, total = _ball_sampler_table(params, radius)
    u = rng.randrange(total)
    lo, hi = 0, len(cells) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if u < cells[mid][0]:
            hi = mid
        else:
            lo = mid + 1
    comp = cells[lo][1]
    field = params.field
    blocks = [sample_uniform_matrix_of_rank(field, params.m, params.eta, part, rng)
              for part in comp]
    return BlockTuple(params, blocks)


def sample_uniform_tuple(params, rng):
    """A point uniform on the whole space."""
    q = params.q
    blocks = [tuple(tuple(rng.randrange(q) for _ in range(params.eta))
                    for _ in range(params.m))
              for _ in range(params.ell)]
    return BlockTuple(params, blocks)


def sample_decomposable_rows(params, w, rng):
    """Draw a uniform decomposable subspace of total dimension w, then fill
    each block with m uniform rows from its factor.

    The result always has weight <= w; it attains w with probability at
    least the Euler product constant to the power ell when eta <= m.
    """
    space = decomposable.sample_decomposable_uniform(
        params.field, params.eta, params.ell, w, rng)
    blocks = []
    for factor in space.factors:
        rows = tuple(factor.random_vector(rng) for _ in range(params.m))
        blocks.append(rows)
    return BlockTuple(params, blocks)
