"""Chains of vectors with steadily growing support inside shifted sets.

Given a set A of vectors over F_q^gamma, a shift w, and a step size c, a
valid chain inside A + w is a sequence in which every vector contributes at
least c coordinates not supported by its predecessors.  The greedy extractor
repeatedly takes the vector adding the most new support (ties broken by
lexicographic, i.e. canonical integer, order).  Greedy can be beaten: a
single full-support vector swallows every coordinate at once, so an exact
search over cover states backs the harness when greedy misses a target.
"""

import math
from dataclasses import dataclass

from .guards import require_within

# Exhaustive shift search sweeps q^gamma shifts; cap here.
MAX_SHIFTS = 2 ** 20


def support(vector):
    """Indices of the nonzero coordinates."""
    return frozenset(i for i, v in enumerate(vector) if v)


def is_increasing_chain(vectors, c):
    """True when every vector adds at least c coordinates of new support."""
    cover = frozenset()
    for v in vectors:
        gain = support(v) - cover
        if len(gain) < c:
            return False
        cover = cover | gain
    return True


@dataclass(frozen=True)
class ChainInstance:
    """A chain search problem: vector set, ambient length, step size."""

    field: "object"
    gamma: int
    vectors: tuple
    c: int

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError("gamma must be positive")
        if self.c < 1:
            raise ValueError("c must be positive")
        vectors = tuple(sorted(tuple(v) for v in self.vectors))
        if len(set(vectors)) != len(vectors):
            raise ValueError("vector set contains duplicates")
        q = self.field.q
        for v in vectors:
            if len(v) != self.gamma:
                raise ValueError("vector length does not match gamma")
            if any(not 0 <= x < q for x in v):
                raise ValueError("vector entry outside field range")
        object.__setattr__(self, "vectors", vectors)

    @property
    def size(self):
        return len(self.vectors)


def _encode(vector, q):
    code = 0
    for x in vector:
        code = code * q + x
    return code


def _decode(code, q, gamma):
    out = []
    for _ in range(gamma):
        code, x = divmod(code, q)
        out.append(x)
    out.reverse()
    return tuple(out)


def _shifted_items(instance, shift_code):
    """(support mask, canonical value) per vector of A + w, in set order."""
    q = instance.field.q
    gamma = instance.gamma
    if q == 2:
        # value bits are the support mask directly
        out = []
        for v in instance.vectors:
            val = _encode(v, 2) ^ shift_code
            out.append((val, val))
        return out
    add = instance.field._add
    shift = _decode(shift_code, q, gamma)
    out = []
    for v in instance.vectors:
        mask = 0
        val = 0
        for x, s in zip(v, shift):
            y = add[x][s]
            val = val * q + y
            if y:
                mask |= 1
            mask <<= 1
        out.append((mask >> 1, val))
    return out


def _greedy_masks(items, c):
    """Greedy chain on (mask, val) pairs; returns the chosen vals in order."""
    cover = 0
    chosen = []
    remaining = list(items)
    while True:
        best_gain = c - 1
        best_val = None
        best_idx = -1
        for idx, (mask, val) in enumerate(remaining):
            gain = (mask & ~cover).bit_count()
            if gain > best_gain or (gain == best_gain and best_idx >= 0
                                    and gain >= c and val < best_val):
                best_gain = gain
                best_val = val
                best_idx = idx
        if best_idx < 0 or best_gain < c:
            break
        cover |= remaining[best_idx][0]
        chosen.append(best_val)
        del remaining[best_idx]
    return chosen


def greedy_chain(instance, shift):
    """Greedy chain inside A + shift; returns the shifted vectors picked."""
    shift = tuple(shift)
    if len(shift) != instance.gamma:
        raise ValueError("shift length does not match gamma")
    q = instance.field.q
    items = _shifted_items(instance, _encode(shift, q))
    vals = _greedy_masks(items, instance.c)
    return [_decode(v, q, instance.gamma) for v in vals]


@dataclass(frozen=True)
class ChainSearchResult:
    shift: tuple
    chain: tuple
    length: int
    exact_used: bool = False


def best_shift_chain(instance, mode="exhaustive", trials=None, rng=None):
    """Best greedy chain over shifts.

    mode "exhaustive" scans every shift in canonical order (guarded at
    MAX_SHIFTS) and stops early once the ceiling floor(gamma / c) is hit;
    mode "random" tries `trials` uniform shifts from rng.  Either way the
    reported shift is the first one attaining the best length, so results
    are reproducible.
    """
    q = instance.field.q
    gamma = instance.gamma
    cap = gamma // instance.c
    best = None
    if mode == "exhaustive":
        total = q ** gamma
        require_within(total, MAX_SHIFTS, "shift count")
        shift_codes = range(total)
    elif mode == "random":
        if not trials or rng is None:
            raise ValueError("random mode needs trials and rng")
        shift_codes = (rng.randrange(q ** gamma) for _ in range(trials))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for shift_code in shift_codes:
        items = _shifted_items(instance, shift_code)
        vals = _greedy_masks(items, instance.c)
        if best is None or len(vals) > best[0]:
            best = (len(vals), shift_code, vals)
            if len(vals) >= cap:
                break
    length, shift_code, vals = best
    return ChainSearchResult(
        shift=_decode(shift_code, q, gamma),
        chain=tuple(_decode(v, q, gamma) for v in vals),
        length=length)


def max_chain_exact(instance, shift, target=None):
    """Longest chain inside A + shift by search over cover states.

    With a target, stops as soon as any chain of that length is found.
    Without one, memoizes on the cover mask: reusing a vector never helps,
    so the best continuation depends on the cover alone.
    """
    shift = tuple(shift)
    q = instance.field.q
    gamma = instance.gamma
    c = instance.c
    items = sorted(_shifted_items(instance, _encode(shift, q)),
                   key=lambda mv: mv[1])

    if target is not None:
        def dfs(cover, depth, acc):
            if depth >= target:
                return list(acc)
            free = gamma - cover.bit_count()
            if depth + free // c < target:
                return None
            for mask, val in items:
                if (mask & ~cover).bit_count() >= c:
                    acc.append(val)
                    found = dfs(cover | mask, depth + 1, acc)
                    if found is not None:
                        return found
                    acc.pop()
            return None
        vals = dfs(0, 0, []) or []
    else:
        memo = {}

        def longest(cover):
            if cover in memo:
                return memo[cover]
            best = []
            for mask, val in items:
                if (mask & ~cover).bit_count() >= c:
                    cand = [val] + longest(cover | mask)
                    if len(cand) > len(best):
                        best = cand
            memo[cover] = best
            return best
        vals = longest(0)
    return [_decode(v, q, gamma) for v in vals]


def chain_length_bound(set_size, q, gamma, c):
    """Guaranteed chain length over the best shift:
    (1/c) log_q(|A|/2) - (1 - 1/c) log_q((q-1) gamma)."""
    if set_size < 1 or gamma < 1 or c < 1 or q < 2:
        raise ValueError("need set_size, gamma, c >= 1 and q >= 2")
    return (math.log(set_size / 2, q) / c
            - (1 - 1 / c) * math.log((q - 1) * gamma, q))


def bound_target(set_size, q, gamma, c):
    """The integer length the bound demands, never negative; a hair of
    float slack keeps exact-integer bounds from rounding up."""
    return max(0, math.ceil(chain_length_bound(set_size, q, gamma, c) - 1e-9))


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one instance against the guaranteed length."""

    bound: float
    target: int
    greedy_length: int
    achieved: bool
    exact_used: bool
    exact_length: int | None
    shift: tuple
    chain: tuple


def bound_attainment_report(instance, mode="exhaustive", trials=None, rng=None):
    """Check the instance against the guaranteed chain length.

    Greedy over shifts first; when greedy falls short of the target the
    exact search takes over, shift by shift, stopping at the first shift
    that reaches the target.  That separates greedy suboptimality from a
    genuine bound violation.
    """
    bound = chain_length_bound(instance.size, instance.field.q,
                               instance.gamma, instance.c)
    target = bound_target(instance.size, instance.field.q,
                          instance.gamma, instance.c)
    greedy = best_shift_chain(instance, mode=mode, trials=trials, rng=rng)
    if greedy.length >= target:
        return BoundReport(bound, target, greedy.length, True, False, None,
                           greedy.shift, greedy.chain)
    q = instance.field.q
    total = q ** instance.gamma
    require_within(total, MAX_SHIFTS, "shift count")
    for shift_code in range(total):
        shift = _decode(shift_code, q, instance.gamma)
        chain = max_chain_exact(instance, shift, target=target)
        if len(chain) >= target:
            return BoundReport(bound, target, greedy.length, True, True,
                               len(chain), shift, tuple(chain))
    # no shift attains the target even exactly: a real violation
    best_shift = None
    best_chain = ()
    for shift_code in range(total):
        shift = _decode(shift_code, q, instance.gamma)
        chain = max_chain_exact(instance, shift)
        if len(chain) > len(best_chain):
            best_chain = tuple(chain)
            best_shift = shift
    return BoundReport(bound, target, greedy.length, False, True,
                       len(best_chain), best_shift, best_chain)


def random_chain_instance(field, gamma, set_size, c, rng):
    """A ChainInstance whose vector set is uniform among size-set_size sets."""
    q = field.q
    total = q ** gamma
    if set_size > total:
        raise ValueError(f"set_size {set_size} exceeds space size {total}")
    chosen = set()
    while len(chosen) < set_size:
        chosen.add(rng.randrange(total))
    vectors = tuple(_decode(code, q, gamma) for code in sorted(chosen))
    return ChainInstance(field, gamma, vectors, c)
