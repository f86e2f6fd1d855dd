"""Constructors for the Cartan type families W(n), S(n), S~(n), H(n).

All four live inside the superderivation algebra of the exterior algebra on
n generators.  Every model is built over a fixed ambient basis of monomial
vector fields f*d_j (the W(n) basis, ordered degree-major), with a single
closed-form bracket

    [f d_i, g d_j] = f d_i(g) d_j - (-1)^((|f|+1)(|g|+1)) g d_j(f) d_i

and the subfamilies carved out exactly:

* S(n):  the kernel of the divergence map, echelonized over the monomial
  ordering, which yields a deterministic canonical basis.
* S~(n): the degree -1 slice replaced by the fields d_i - x_1...x_n d_i,
  all other slices shared with S(n); degrees live in Z_n, stored as
  representatives in {-1, ..., n-2}.
* H(n):  the Hamiltonian fields of the monomials of degree 1..n-1 (the
  constant inputs are annihilated, so they contribute nothing).

Cartan subalgebras are the diagonal tori matching the degree-0 parts
gl(n), sl(n), so(n):

    W:    h_i = x_i d_i                 (i = 1..n)
    S,S~: h_i = x_i d_i - x_{i+1} d_{i+1}   (i = 1..n-1)
    H:    h_i = x_i d_i - x_{i'} d_{i'}     (i = 1..[n/2])

Weights are the exact ad-eigenvalue vectors against those chains; the
constructors verify the eigenvector property entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exterior import (
    ExtElem,
    check_n,
    mono_degree,
    mono_mul,
    mono_partial,
)
from .liesuper import (
    AlgebraModel,
    BasisDesc,
    Combo,
    GradingElement,
    Ham,
    VectorField,
    WeightVec,
)
from .linalg import Matrix, SpanSolver, Subspace, Vec, kernel, vec_axpy_inplace

_ONE = Fraction(1)


class FamilyError(ValueError):
    """A family/n combination outside the defined range."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int

    def validate(self) -> None:
        f, n = self.family, self.n
        if f not in ("W", "S", "Stilde", "H"):
            raise FamilyError(f"unknown family {f!r} (expected W, S, Stilde or H)")
        check_n(n)
        if f in ("W", "S") and n < 4:
            raise FamilyError(f"{f} requires n >= 4")
        if f == "Stilde":
            if n < 4:
                raise FamilyError("Stilde requires n >= 4")
            if n % 2:
                raise FamilyError("Stilde requires even n")
        if f == "H" and n <= 4:
            raise FamilyError("H requires n > 4")


def involution(i: int, n: int) -> int:
    """The index pairing i': i+r for i <= r, i-r for r < i <= 2r, else fixed."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of 1..{n}")
    r = n // 2
    if i <= r:
        return i + r
    if i <= 2 * r:
        return i - r
    return i


# ---------------------------------------------------------------------------
# the ambient W(n) coordinate system


@lru_cache(maxsize=None)
def w_basis(n: int) -> Tuple[Tuple[int, int], ...]:
    """Ambient basis (mask, j) of W(n), ordered by (deg f, mask, j)."""
    check_n(n)
    masks = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    return tuple((m, j) for m in masks for j in range(1, n + 1))


@lru_cache(maxsize=None)
def w_index(n: int) -> Dict[Tuple[int, int], int]:
    return {fj: i for i, fj in enumerate(w_basis(n))}


def w_unit(n: int, mask: int, j: int, coeff=1) -> Vec:
    return {w_index(n)[(mask, j)]: Fraction(coeff)}


def w_bracket_pair(n: int, a: Tuple[int, int], b: Tuple[int, int]) -> Vec:
    """Closed-form bracket of two monomial fields, over the W(n) index."""
    f, i = a
    g, j = b
    idx = w_index(n)
    out: Vec = {}
    hit = mono_partial(i, g)
    if hit is not None:
        s1, g1 = hit
        s2, m = mono_mul(f, g1)
        if s2:
            out[idx[(m, j)]] = Fraction(s1 * s2)
    hit = mono_partial(j, f)
    if hit is not None:
        s1, f1 = hit
        s2, m = mono_mul(g, f1)
        if s2:
            sign = -1 if ((mono_degree(f) + 1) * (mono_degree(g) + 1)) % 2 == 0 else 1
            k = idx[(m, i)]
            c = out.get(k, Fraction(0)) + Fraction(sign * s1 * s2)
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def w_bracket(n: int, a: Vec, b: Vec) -> Vec:
    """Bilinear bracket of two fields given in W(n) coordinates."""
    basis = w_basis(n)
    out: Vec = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            w = w_bracket_pair(n, basis[ia], basis[ib])
            if w:
                vec_axpy_inplace(out, ca * cb, w)
    return out


def divergence(n: int, v: Vec) -> ExtElem:
    """sum_i d_i(f_i) of a field sum_i f_i d_i given in W(n) coordinates."""
    basis = w_basis(n)
    out = ExtElem.zero(n)
    terms: Dict[int, Fraction] = {}
    for i, c in v.items():
        mask, j = basis[i]
        hit = mono_partial(j, mask)
        if hit is None:
            continue
        sign, m = hit
        s = terms.get(m, Fraction(0)) + (c if sign > 0 else -c)
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    out.terms = terms
    return out


def ham(f: ExtElem) -> Vec:
    """The Hamiltonian field D_H(f) = (-1)^|f| sum_i d_i(f) d_{i'}, in W coords.

    f must be parity-homogeneous; the sign prefactor is undefined otherwise.
    """
    p = f.parity()
    if p is None:
        raise ValueError("ham requires a parity-homogeneous element")
    n = f.n
    idx = w_index(n)
    pref = -1 if p else 1
    out: Vec = {}
    for mask, c in f.terms.items():
        for i in range(1, n + 1):
            hit = mono_partial(i, mask)
            if hit is None:
                continue
            sign, m = hit
            k = idx[(m, involution(i, n))]
            s = out.get(k, Fraction(0)) + c * pref * sign
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def xi(i: int, n: int) -> Vec:
    """The top-monomial field x_1...x_n d_i."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of 1..{n}")
    return w_unit(n, (1 << n) - 1, i)


def euler(n: int) -> Vec:
    """The grading field sum_i x_i d_i."""
    out: Vec = {}
    for i in range(1, n + 1):
        out.update(w_unit(n, 1 << (i - 1), i))
    return out


def cartan_chain_w(family: str, n: int) -> List[Vec]:
    """The standard Cartan basis h_1..h_l in W(n) coordinates."""
    def diag(i: int) -> Vec:
        return w_unit(n, 1 << (i - 1), i)

    if family == "W":
        return [diag(i) for i in range(1, n + 1)]
    if family in ("S", "Stilde"):
        out = []
        for i in range(1, n):
            h = diag(i)
            vec_axpy_inplace(h, Fraction(-1), diag(i + 1))
            out.append(h)
        return out
    if family == "H":
        out = []
        for i in range(1, n // 2 + 1):
            h = diag(i)
            vec_axpy_inplace(h, Fraction(-1), diag(involution(i, n)))
            out.append(h)
        return out
    raise FamilyError(f"unknown family {family!r}")


def desc_to_w(n: int, desc: BasisDesc) -> Vec:
    """Expand a basis descriptor into ambient W(n) coordinates."""
    if isinstance(desc, VectorField):
        return w_unit(n, desc.mono, desc.j)
    if isinstance(desc, Ham):
        return ham(ExtElem.monomial(n, desc.mono))
    if isinstance(desc, GradingElement):
        return euler(n)
    if isinstance(desc, Combo):
        out: Vec = {}
        for c, m, j in desc.terms:
            vec_axpy_inplace(out, Fraction(c), w_unit(n, m, j))
        return out
    raise TypeError(f"unknown descriptor {desc!r}")


# ---------------------------------------------------------------------------
# model assembly


def _row_desc(n: int, row: Vec) -> BasisDesc:
    basis = w_basis(n)
    if len(row) == 1:
        ((i, c),) = row.items()
        if c == 1:
            mask, j = basis[i]
            return VectorField(mask, j)
    terms = tuple(
        (row[i], basis[i][0], basis[i][1]) for i in sorted(row)
    )
    return Combo(terms)


def _finish_model(
    family: str,
    n: int,
    rows: List[Vec],
    descs: List[BasisDesc],
    chain_family: str,
    modulus: Optional[int] = None,
    extended: bool = False,
) -> AlgebraModel:
    """Assemble an AlgebraModel from basis rows given in W(n) coordinates.

    Verifies along the way that every row is homogeneous in parity and
    (possibly modular) degree, and is an exact simultaneous eigenvector of
    the Cartan chain; any failure is a constructor bug, not user error.
    """
    basis_w = w_basis(n)

    def norm_deg(d: int) -> int:
        if modulus is None:
            return d
        return (d + 1) % modulus - 1

    parity: List[int] = []
    degree: List[int] = []
    for row in rows:
        degs = {norm_deg(mono_degree(basis_w[i][0]) - 1) for i in row}
        pars = {(mono_degree(basis_w[i][0]) + 1) % 2 for i in row}
        if len(degs) != 1 or len(pars) != 1:
            raise AssertionError(f"{family}({n}): basis row not bigraded")
        degree.append(degs.pop())
        parity.append(pars.pop())

    chain_w = cartan_chain_w(chain_family, n)
    weight: List[WeightVec] = []
    for row in rows:
        wt = []
        for h in chain_w:
            z = w_bracket(n, h, row)
            lead = min(row)
            lam = z.get(lead, Fraction(0)) / row[lead]
            if z != {k: lam * c for k, c in row.items() if lam * c}:
                raise AssertionError(f"{family}({n}): basis row not a weight vector")
            if lam.denominator != 1:
                raise AssertionError(f"{family}({n}): non-integer weight")
            wt.append(int(lam))
        weight.append(tuple(wt))

    span = SpanSolver()
    for row in rows:
        if not span.add(row):
            raise AssertionError(f"{family}({n}): dependent basis rows")

    chain_model: List[Vec] = []
    for h in chain_w:
        coords = span.express(h)
        if coords is None:
            raise AssertionError(f"{family}({n}): Cartan chain escapes the span")
        chain_model.append(coords)

    dim = len(rows)
    table: Dict[Tuple[int, int], Vec] = {}
    for i in range(dim):
        for j in range(dim):
            z = w_bracket(n, rows[i], rows[j])
            if not z:
                continue
            coords = span.express(z)
            if coords is None:
                raise AssertionError(
                    f"{family}({n}): bracket of basis {i},{j} leaves the span"
                )
            if coords:
                table[(i, j)] = coords

    zero_wt = tuple([0] * len(chain_w))
    cartan = [
        i for i in range(dim) if degree[i] == 0 and weight[i] == zero_wt
    ]
    cartan_space = Subspace.from_vectors([rows[i] for i in cartan], len(basis_w))
    chain_space = Subspace.from_vectors(chain_w, len(basis_w))
    if extended:
        # the grading element enlarges the zero cell of L'; the chain must
        # still sit inside it
        if not cartan_space.contains_subspace(chain_space):
            raise AssertionError(f"{family}({n}): chain escapes the Cartan cell")
    elif cartan_space != chain_space:
        raise AssertionError(f"{family}({n}): Cartan cell does not match the chain")

    return AlgebraModel(
        family,
        n,
        descs,
        table,
        parity,
        degree,
        weight,
        cartan,
        grading_modulus=modulus,
        w_coords=rows,
        cartan_chain=chain_model,
    )


def _divergence_kernel(n: int) -> Subspace:
    """ker(div) inside W(n), echelonized over the monomial-ordered basis."""
    basis = w_basis(n)
    idx_l = {m: i for i, m in enumerate(sorted(range(1 << n), key=lambda m: (m.bit_count(), m)))}
    data: Dict[int, Vec] = {}
    for col, (mask, j) in enumerate(basis):
        hit = mono_partial(j, mask)
        if hit is None:
            continue
        sign, m = hit
        data.setdefault(idx_l[m], {})[col] = Fraction(sign)
    div = Matrix(1 << n, len(basis), data)
    return kernel(div)


def build(spec, n: Optional[int] = None) -> AlgebraModel:
    """Build the AlgebraModel for a family spec (or family tag plus n)."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(spec, n)
    spec.validate()
    family, n = spec.family, spec.n

    if family == "W":
        rows = [w_unit(n, mask, j) for mask, j in w_basis(n)]
        descs: List[BasisDesc] = [VectorField(mask, j) for mask, j in w_basis(n)]
        return _finish_model("W", n, rows, descs, "W")

    if family == "S":
        ker = _divergence_kernel(n)
        rows = [dict(r) for r in ker.rows]
        descs = [_row_desc(n, r) for r in rows]
        return _finish_model("S", n, rows, descs, "S")

    if family == "Stilde":
        ker = _divergence_kernel(n)
        rows: List[Vec] = []
        for i in range(1, n + 1):
            row = w_unit(n, 0, i)
            vec_axpy_inplace(row, Fraction(-1), xi(i, n))
            rows.append(row)
        basis_w = w_basis(n)
        for r in ker.rows:
            if mono_degree(basis_w[min(r)][0]) - 1 >= 0:
                rows.append(dict(r))
        descs = [_row_desc(n, r) for r in rows]
        return _finish_model("Stilde", n, rows, descs, "Stilde", modulus=n)

    if family == "H":
        rows = []
        descs = []
        for mask, j in w_basis(n):
            if j != 1:
                continue
            d = mono_degree(mask)
            if 1 <= d <= n - 1:
                rows.append(ham(ExtElem.monomial(n, mask)))
                descs.append(Ham(mask))
        return _finish_model("H", n, rows, descs, "H")

    raise FamilyError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# the extended algebra L'


@dataclass
class LPrimeModel:
    """L together with the extension L' acting on it by superderivations.

    L' = L for W and S~, L + C*euler for S, and Htilde + C*euler for H,
    where Htilde adds the Hamiltonian field of the top monomial.  The
    embedding of L into L' is the identity on the first dim(L) indices.
    """

    base: AlgebraModel
    ext: AlgebraModel
    extra: List[str] = field(default_factory=list)

    @property
    def dim_l(self) -> int:
        return self.base.dim

    @property
    def dim_lprime(self) -> int:
        return self.ext.dim


def build_lprime(A: AlgebraModel) -> LPrimeModel:
    family, n = A.family, A.n
    if A.w_coords is None:
        attach_derived(A)
    if family in ("W", "Stilde"):
        return LPrimeModel(A, A, [])

    rows = [dict(r) for r in A.w_coords]
    descs = list(A.basis)
    extra: List[str] = []
    if family == "H":
        top = Ham((1 << n) - 1)
        rows.append(desc_to_w(n, top))
        descs.append(top)
        extra.append(str(top))
    grading = GradingElement()
    rows.append(euler(n))
    descs.append(grading)
    extra.append(str(grading))

    ext = _finish_model(family + "'", n, rows, descs, family, modulus=None, extended=True)
    return LPrimeModel(A, ext, extra)


def cartan_and_roots(A: AlgebraModel) -> Tuple[List[int], List[WeightVec]]:
    """Recompute the Cartan cell indices and the weight of every basis vector."""
    if A.w_coords is None:
        attach_derived(A)
    n = A.n
    chain_w = cartan_chain_w(A.family.rstrip("'"), n)
    weights: List[WeightVec] = []
    for row in A.w_coords:
        wt = []
        for h in chain_w:
            z = w_bracket(n, h, row)
            lead = min(row)
            lam = z.get(lead, Fraction(0)) / row[lead]
            wt.append(int(lam))
        weights.append(tuple(wt))
    zero_wt = tuple([0] * len(chain_w))
    cartan = [
        i
        for i in range(A.dim)
        if A.degree[i] == 0 and weights[i] == zero_wt
    ]
    return cartan, weights


def attach_derived(A: AlgebraModel) -> AlgebraModel:
    """Recompute w_coords and the Cartan chain for a deserialized model."""
    n = A.n
    rows = [desc_to_w(n, d) for d in A.basis]
    span = SpanSolver()
    for row in rows:
        if not span.add(row):
            raise AssertionError("dependent basis rows in model")
    chain = []
    for h in cartan_chain_w(A.family.rstrip("'"), n):
        coords = span.express(h)
        if coords is None:
            raise AssertionError("Cartan chain escapes the model span")
        chain.append(coords)
    A.w_coords = rows
    A.cartan_chain = chain
    return A
