"""Matrices and subspaces over a finite field.

Matrices are immutable grids of canonical element indices.  A subspace is
identified with the reduced row echelon basis of its row space, so equality
of subspaces is grid equality of bases.  Enumeration walks pivot patterns;
sampling is rejection on uniform full-rank matrices, which is exactly
uniform on the Grassmannian because every subspace has the same number of
spanning k x n matrices.
"""

from itertools import combinations, product

from . import counting
from .guards import GuardError, require_within

# enumerate_subspaces refuses Grassmannians larger than this.
MAX_GRASSMANNIAN = 10 ** 6


def _rref(field, rows):
    """In-place style reduced row echelon form on copied rows.

    Returns (reduced row list without zero rows, pivot column tuple).
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    mul = field._mul
    sub_row = field.sub
    pivots = []
    prow = 0
    for col in range(ncols):
        pivot = None
        for i in range(prow, nrows):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[prow], mat[pivot] = mat[pivot], mat[prow]
        lead = mat[prow][col]
        if lead != 1:
            inv = field.inv(lead)
            row = mat[prow]
            mrow = mul[inv]
            for j in range(col, ncols):
                row[j] = mrow[row[j]]
        for i in range(nrows):
            if i != prow and mat[i][col]:
                factor = mat[i][col]
                mrow = mul[factor]
                target = mat[i]
                source = mat[prow]
                for j in range(col, ncols):
                    if source[j]:
                        target[j] = sub_row(target[j], mrow[source[j]])
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return [tuple(r) for r in mat[:prow]], tuple(pivots)


def _rank_rows(field, rows):
    return len(_rref(field, rows)[0])


class MatrixFq:
    """An immutable nrows x ncols matrix of canonical element indices."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field, entries):
        entries = tuple(tuple(int(v) for v in row) for row in entries)
        if not entries:
            raise ValueError("matrix needs at least one row")
        ncols = len(entries[0])
        if ncols == 0 or any(len(row) != ncols for row in entries):
            raise ValueError("rows must be nonempty and of equal length")
        q = field.q
        for row in entries:
            for v in row:
                if not 0 <= v < q:
                    raise ValueError(f"entry {v} outside field of order {q}")
        self.field = field
        self.nrows = len(entries)
        self.ncols = ncols
        self.entries = entries

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, tuple((0,) * ncols for _ in range(nrows)))

    def __eq__(self, other):
        return (isinstance(other, MatrixFq)
                and self.field == other.field and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        return f"MatrixFq({self.nrows}x{self.ncols} over F_{self.field.q})"

    def to_json(self):
        return [list(row) for row in self.entries]


def rref(matrix):
    """Reduced row echelon form of a MatrixFq.

    Returns (reduced matrix padded with zero rows to the original shape,
    rank, pivot columns).
    """
    rows, pivots = _rref(matrix.field, matrix.entries)
    rank = len(rows)
    padded = list(rows) + [(0,) * matrix.ncols] * (matrix.nrows - rank)
    return MatrixFq(matrix.field, padded), rank, pivots


def rank(matrix):
    return _rank_rows(matrix.field, matrix.entries)


def mat_mul(field, a_rows, b_rows):
    """Raw row-tuple matrix product over field."""
    mul = field._mul
    add = field._add
    b_cols = len(b_rows[0])
    out = []
    for arow in a_rows:
        row = [0] * b_cols
        for k, coeff in enumerate(arow):
            if coeff:
                mrow = mul[coeff]
                brow = b_rows[k]
                for j in range(b_cols):
                    if brow[j]:
                        row[j] = add[row[j]][mrow[brow[j]]]
        out.append(tuple(row))
    return out


def vec_add(field, u, v):
    add = field._add
    return tuple(add[x][y] for x, y in zip(u, v))


def vec_scale(field, c, u):
    mrow = field._mul[c]
    return tuple(mrow[x] for x in u)


class Subspace:
    """A subspace of F_q^ambient, canonically held as its RREF basis."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field, ambient, basis):
        self.field = field
        self.ambient = ambient
        self.basis = basis

    @classmethod
    def span(cls, field, ambient, rows):
        """Subspace spanned by arbitrary rows; rows may be dependent."""
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"row length {len(r)} != ambient {ambient}")
            for v in r:
                field.check(v)
        if not rows:
            return cls(field, ambient, ())
        reduced, _ = _rref(field, rows)
        return cls(field, ambient, tuple(reduced))

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, ())

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vector):
        """Membership test by reduction against the RREF basis."""
        vector = tuple(vector)
        if len(vector) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        field = self.field
        residue = list(vector)
        sub = field.sub
        mul = field._mul
        for row in self.basis:
            lead = next(j for j, v in enumerate(row) if v)
            coeff = residue[lead]
            if coeff:
                mrow = mul[coeff]
                for j in range(lead, self.ambient):
                    if row[j]:
                        residue[j] = sub(residue[j], mrow[row[j]])
        return not any(residue)

    def intersect(self, other):
        """Zassenhaus intersection: reduce [[A A], [B 0]] and read off the
        rows whose left half vanished."""
        self._check_compatible(other)
        n = self.ambient
        stacked = [row + row for row in self.basis]
        zero = (0,) * n
        stacked += [row + zero for row in other.basis]
        if not stacked:
            return Subspace.zero(self.field, n)
        reduced, _ = _rref(self.field, stacked)
        inter_rows = [row[n:] for row in reduced if not any(row[:n])]
        return Subspace.span(self.field, n, inter_rows)

    def add(self, other):
        """Smallest subspace containing both (the subspace sum)."""
        self._check_compatible(other)
        return Subspace.span(self.field, self.ambient,
                             list(self.basis) + list(other.basis))

    def vectors(self):
        """Iterate all q^dim vectors of the subspace."""
        field = self.field
        if not self.basis:
            yield (0,) * self.ambient
            return
        for coeffs in product(range(field.q), repeat=self.dim):
            vec = (0,) * self.ambient
            for c, row in zip(coeffs, self.basis):
                if c:
                    vec = vec_add(field, vec, vec_scale(field, c, row))
            yield vec

    def random_vector(self, rng):
        """A uniformly random element of the subspace."""
        field = self.field
        vec = (0,) * self.ambient
        for row in self.basis:
            c = rng.randrange(field.q)
            if c:
                vec = vec_add(field, vec, vec_scale(field, c, row))
        return vec

    def _check_compatible(self, other):
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, q={self.field.q})"

    def to_json(self):
        return {"ambient": self.ambient, "basis": [list(r) for r in self.basis]}


def enumerate_subspaces(field, ambient, k):
    """All k-dimensional subspaces of F_q^ambient, one per RREF basis.

    Walks pivot-column patterns and fills free entries; refuses Grassmannians
    above MAX_GRASSMANNIAN elements.
    """
    if not 0 <= k <= ambient:
        raise ValueError(f"k = {k} outside [0, {ambient}]")
    expected = counting.gaussian_binomial(ambient, k, field.q)
    require_within(expected, MAX_GRASSMANNIAN, "Grassmannian size")
    out = []
    if k == 0:
        return [Subspace.zero(field, ambient)]
    for pivots in combinations(range(ambient), k):
        pivot_set = set(pivots)
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, ambient)
                if j not in pivot_set]
        base = [[0] * ambient for _ in range(k)]
        for i, col in enumerate(pivots):
            base[i][col] = 1
        for values in product(range(field.q), repeat=len(free)):
            rows = [list(r) for r in base]
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            out.append(Subspace(field, ambient, tuple(tuple(r) for r in rows)))
    assert len(out) == expected
    return out


def sample_full_rank(field, nrows, ncols, rng):
    """Uniform full-rank nrows x ncols row tuples by rejection.

    Needs nrows <= ncols or ncols <= nrows accordingly; the acceptance rate
    is at least the Euler product constant, so a handful of tries suffice.
    """
    target = min(nrows, ncols)
    q = field.q
    while True:
        rows = [tuple(rng.randrange(q) for _ in range(ncols)) for _ in range(nrows)]
        if _rank_rows(field, rows) == target:
            return rows


def sample_subspace(field, ambient, k, rng):
    """A uniformly random k-dimensional subspace of F_q^ambient."""
    if not 0 <= k <= ambient:
        raise ValueError(f"k = {k} outside [0, {ambient}]")
    if k == 0:
        return Subspace.zero(field, ambient)
    rows = sample_full_rank(field, k, ambient, rng)
    return Subspace.span(field, ambient, rows)
