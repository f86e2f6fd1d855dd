"""Exact sparse linear algebra over the rationals.

Everything downstream (algebra constructors, derivation solvers, the
certifier) runs on the primitives in this module.  Scalars are
`fractions.Fraction`, so every rank / kernel / membership decision is exact:
a rational solution space has the same dimension as its complex counterpart,
which is what lets integer structure constants stand in for the complex
field.

Vectors are sparse dicts ``{index: Fraction}`` with no stored zeros.
Subspaces are kept in reduced row echelon form (RREF), which is unique per
row space, so subspace equality is plain row-list equality and all outputs
are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[int, Fraction]

_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# sparse vector helpers


def vec_from(items: Iterable[Tuple[int, Fraction]]) -> Vec:
    v: Vec = {}
    for k, c in items:
        c = Fraction(c)
        if c:
            s = v.get(k)
            if s is None:
                v[k] = c
            else:
                s += c
                if s:
                    v[k] = s
                else:
                    del v[k]
    return v


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s += c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_sub(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k)
        if s is None:
            out[k] = -c
        else:
            s -= c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_axpy_inplace(u: Vec, c: Fraction, v: Vec) -> None:
    """u += c * v, destructively."""
    if not c:
        return
    for k, x in v.items():
        s = u.get(k)
        if s is None:
            u[k] = c * x
        else:
            s += c * x
            if s:
                u[k] = s
            else:
                del u[k]


def vec_dot(u: Vec, v: Vec) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    total = Fraction(0)
    for k, c in u.items():
        x = v.get(k)
        if x is not None:
            total += c * x
    return total


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Sparse rational matrix; rows are sparse dicts, no stored zeros."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Dict[int, Vec]] = None):
        self.rows = rows
        self.cols = cols
        self.data: Dict[int, Vec] = data if data is not None else {}

    @classmethod
    def from_rows(cls, rows: Sequence[Vec], cols: int) -> "Matrix":
        data = {i: dict(r) for i, r in enumerate(rows) if r}
        return cls(len(rows), cols, data)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "Matrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        data: Dict[int, Vec] = {}
        for i, row in enumerate(dense):
            r = {j: Fraction(x) for j, x in enumerate(row) if x}
            if r:
                data[i] = r
        return cls(nrows, ncols, data)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data.get(i, {}).get(j, Fraction(0))

    def set_entry(self, i: int, j: int, x) -> None:
        x = Fraction(x)
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        row = self.data.setdefault(i, {})
        if x:
            row[j] = x
        else:
            row.pop(j, None)
            if not row:
                del self.data[i]

    def row_list(self) -> List[Vec]:
        return [dict(self.data.get(i, {})) for i in range(self.rows)]

    def matvec(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, row in self.data.items():
            s = vec_dot(row, v)
            if s:
                out[i] = s
        return out

    def transpose(self) -> "Matrix":
        data: Dict[int, Vec] = {}
        for i, row in self.data.items():
            for j, x in row.items():
                data.setdefault(j, {})[i] = x
        return Matrix(self.cols, self.rows, data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={sum(len(r) for r in self.data.values())})"


# ---------------------------------------------------------------------------
# echelon machinery
#
# Pivoting rule: pivots are chosen at the first nonzero column, rows in the
# order given.  The final back-reduction makes the result the (unique) RREF
# of the row space, so golden tests see one canonical basis.


class Echelon:
    """Incremental row echelon structure over sparse rational rows."""

    def __init__(self):
        self.pivots: Dict[int, Vec] = {}

    def insert(self, row: Vec) -> bool:
        """Reduce row against the current pivots; keep it if independent.

        Returns True when the row increased the rank.
        """
        v = dict(row)
        pivots = self.pivots
        while v:
            lead = min(v)
            prow = pivots.get(lead)
            if prow is None:
                c = v[lead]
                if c != 1:
                    inv = _ONE / c
                    v = {k: x * inv for k, x in v.items()}
                pivots[lead] = v
                return True
            vec_axpy_inplace(v, -v[lead], prow)
        return False

    def reduce(self, row: Vec) -> Vec:
        """Remainder of row after full reduction (zero iff in the row space)."""
        v = dict(row)
        pivots = self.pivots
        while v:
            lead = min(v)
            prow = pivots.get(lead)
            if prow is None:
                return v
            vec_axpy_inplace(v, -v[lead], prow)
        return v

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref_rows(self) -> Tuple[List[Vec], List[int]]:
        """Back-reduce and return RREF rows with strictly increasing pivots."""
        cols = sorted(self.pivots)
        reduced: Dict[int, Vec] = {}
        for p in reversed(cols):
            row = dict(self.pivots[p])
            for k in sorted(row):
                if k != p and k in reduced:
                    vec_axpy_inplace(row, -row[k], reduced[k])
            reduced[p] = row
        return [reduced[p] for p in cols], cols


def rref(rows: Iterable[Vec]) -> Tuple[List[Vec], List[int]]:
    ech = Echelon()
    for r in rows:
        ech.insert(r)
    return ech.rref_rows()


def rank(m: Matrix) -> int:
    """Rank over the rationals via exact Gaussian elimination."""
    ech = Echelon()
    for i in sorted(m.data):
        ech.insert(m.data[i])
    return ech.rank


def _kernel_rows(rref_rows: List[Vec], piv: List[int], ncols: int) -> List[Vec]:
    piv_set = set(piv)
    col_of_piv = {p: idx for idx, p in enumerate(piv)}
    out: List[Vec] = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v: Vec = {free: _ONE}
        for p in piv:
            c = rref_rows[col_of_piv[p]].get(free)
            if c:
                v[p] = -c
        out.append(v)
    return out


def kernel(m: Matrix) -> "Subspace":
    """All v with m·v = 0, as an RREF-based subspace of dimension cols - rank."""
    rows, piv = rref(m.data[i] for i in sorted(m.data))
    kern = _kernel_rows(rows, piv, m.cols)
    return Subspace.from_vectors(kern, m.cols)


def kernel_of_rows(rows: Iterable[Vec], ncols: int) -> List[Vec]:
    """Kernel basis (RREF) of the linear system given by constraint rows."""
    rr, piv = rref(rows)
    kern = _kernel_rows(rr, piv, ncols)
    kern_rref, _ = rref(kern)
    return kern_rref


def solve(m: Matrix, b) -> Optional[Vec]:
    """Some v with m·v = b, or None when b is outside the column space.

    Deterministic: after echelonization the free variables are set to zero.
    """
    if isinstance(b, (list, tuple)):
        b = {i: Fraction(x) for i, x in enumerate(b) if x}
    aug_col = m.cols
    ech = Echelon()
    for i in range(m.rows):
        row = dict(m.data.get(i, {}))
        c = b.get(i)
        if c:
            row[aug_col] = c
        if row:
            ech.insert(row)
    if aug_col in ech.pivots:
        return None
    rows, piv = ech.rref_rows()
    sol: Vec = {}
    for p, row in zip(piv, rows):
        c = row.get(aug_col)
        if c:
            sol[p] = c
    return sol


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^ambient, stored as the unique RREF basis of its span."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows: List[Vec], pivots: List[int]):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, vectors: Iterable[Vec], ambient: int) -> "Subspace":
        rows, piv = rref(vectors)
        return cls(ambient, rows, piv)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, [], [])

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        rows = [{i: _ONE} for i in range(ambient)]
        return cls(ambient, rows, list(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Vec) -> bool:
        v = dict(v)
        piv_index = {p: i for i, p in enumerate(self.pivots)}
        while v:
            lead = min(v)
            i = piv_index.get(lead)
            if i is None:
                return False
            vec_axpy_inplace(v, -v[lead], self.rows[i])
        return True

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def annihilator_rows(self) -> List[Vec]:
        """RREF rows spanning {w : w·u = 0 for all u in the subspace}.

        Over Q the standard dot product is anisotropic, so v is a member
        iff every annihilator row kills it.
        """
        return kernel_of_rows(self.rows, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection; requires matching ambient dimension."""
        if self.ambient != other.ambient:
            raise ValueError(
                f"ambient mismatch: {self.ambient} != {other.ambient}"
            )
        n = self.ambient
        stacked: List[Vec] = []
        for r in self.rows:
            row = dict(r)
            for k, c in r.items():
                row[k + n] = c
            stacked.append(row)
        stacked.extend(dict(r) for r in other.rows)
        rows, _ = rref(stacked)
        inter = []
        for row in rows:
            if min(row) >= n:
                inter.append({k - n: c for k, c in row.items()})
        return Subspace.from_vectors(inter, n)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError(
                f"ambient mismatch: {self.ambient} != {other.ambient}"
            )
        return Subspace.from_vectors(list(self.rows) + list(other.rows), self.ambient)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def member(s: Subspace, v) -> bool:
    if isinstance(v, (list, tuple)):
        if len(v) != s.ambient:
            raise ValueError(f"vector length {len(v)} != ambient {s.ambient}")
        v = {i: Fraction(x) for i, x in enumerate(v) if x}
    return s.contains(v)


class SpanSolver:
    """Echelon with transform tracking: express vectors in a fixed spanning set.

    Rows are added once; ``express`` then writes any vector of the span as a
    coordinate dict over the original row indices (None if outside the span).
    """

    def __init__(self):
        self.pivots: Dict[int, Tuple[Vec, Vec]] = {}  # lead -> (row, coeffs)
        self.count = 0

    def add(self, row: Vec) -> bool:
        v = dict(row)
        coeffs: Vec = {self.count: _ONE}
        self.count += 1
        while v:
            lead = min(v)
            hit = self.pivots.get(lead)
            if hit is None:
                c = v[lead]
                if c != 1:
                    inv = _ONE / c
                    v = {k: x * inv for k, x in v.items()}
                    coeffs = {k: x * inv for k, x in coeffs.items()}
                self.pivots[lead] = (v, coeffs)
                return True
            prow, pcoef = hit
            c = v[lead]
            vec_axpy_inplace(v, -c, prow)
            vec_axpy_inplace(coeffs, -c, pcoef)
        return False

    def express(self, v: Vec) -> Optional[Vec]:
        v = dict(v)
        coeffs: Vec = {}
        while v:
            lead = min(v)
            hit = self.pivots.get(lead)
            if hit is None:
                return None
            prow, pcoef = hit
            c = v[lead]
            vec_axpy_inplace(v, -c, prow)
            vec_axpy_inplace(coeffs, c, pcoef)
        return coeffs
