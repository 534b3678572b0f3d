"""Deterministic random streams and Monte Carlo result containers.

Streams are ordinary ``random.Random`` generators whose state is keyed by
SHA-256 of a canonical key path.  A stream derived as
``RandomStream(master_seed).child(i)`` depends only on the key path, never on
draw order elsewhere, so per-trial streams partition identically no matter
how trials are scheduled.  Reruns with the same master seed are byte
reproducible; matching another language port bit for bit is a non-goal, the
derivation scheme is what ports should copy.
"""

import hashlib
import math
import random
from dataclasses import dataclass

from mpmath import mp, mpf, gammainc

# Master seed used by the command line harness unless --seed is given.
DEFAULT_MASTER_SEED = 1729

# z for a central 95% normal interval.
_Z95 = 1.959963984540054


class RandomStream(random.Random):
    """random.Random keyed by a path of ints/strings, with child derivation."""

    def __new__(cls, *key):
        # the C-level __new__ only accepts a single seed argument
        return super().__new__(cls)

    def __init__(self, *key):
        for part in key:
            if not isinstance(part, (int, str)):
                raise TypeError(f"stream key parts must be int or str, got {part!r}")
        self._key = tuple(key)
        material = "/".join(repr(part) for part in self._key)
        digest = hashlib.sha256(material.encode("utf-8")).digest()
        super().__init__(int.from_bytes(digest, "big"))

    def child(self, *indices):
        """Derive an independent stream for a sub-task, e.g. a trial index."""
        return RandomStream(*self._key, *indices)

    @property
    def key(self):
        return self._key


def wilson_interval(successes, trials, z=_Z95):
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    # at the boundary the limit is exactly the endpoint; rounding would
    # otherwise leave a sub-epsilon residue above 0 (or below 1)
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return (low, high)


@dataclass(frozen=True)
class EstimateResult:
    """A binomial Monte Carlo estimate with its 95% Wilson interval."""

    successes: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float
    mean_value: float | None = None

    @classmethod
    def from_counts(cls, successes, trials, mean_value=None):
        low, high = wilson_interval(successes, trials)
        return cls(successes, trials, successes / trials, low, high, mean_value)

    def separated_below(self, other):
        """True when this interval sits strictly below the other one."""
        return self.ci_high < other.ci_low


def chi_squared_uniform_pvalue(counts):
    """Upper tail p-value of Pearson's chi-squared against the uniform law.

    counts holds one observed count per category; expected counts are equal.
    """
    k = len(counts)
    if k < 2:
        raise ValueError("need at least two categories")
    total = sum(counts)
    if total == 0:
        raise ValueError("no observations")
    expected = total / k
    stat = sum((c - expected) ** 2 for c in counts) / expected
    with mp.workprec(80):
        p = gammainc(mpf(k - 1) / 2, mpf(stat) / 2, mp.inf, regularized=True)
    return float(p)
