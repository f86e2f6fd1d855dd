"""Finite-dimensional graded Lie superalgebra container.

A model is a basis-indexed structure: a sparse bracket table over the basis,
plus per-basis-element parity (Z_2), degree (Z, or Z_n residues stored as
representatives in {-1, ..., n-2}), an integer weight vector (the eigenvalue
list against the chosen Cartan elements), and the indices of a basis of the
Cartan subalgebra.

The bracket table is populated once by the constructors in
:mod:`cartansuper.families` and then only read; downstream solvers consult it
on the order of dim^2 times, so lookups have to stay O(1).

Axioms checked by :func:`check_axioms`:

* super anticommutativity  [x, y] = -(-1)^{|x||y|} [y, x]
* super Jacobi  [x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]
* degree additivity  [L_i, L_j] <= L_{i+j}  (mod n for the Z_n-graded family)
* weight additivity  [L_a, L_b] <= L_{a+b}
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exterior import mono_str, parse_mono
from .linalg import Matrix, Vec, vec_axpy_inplace

SuperVec = Vec
WeightVec = Tuple[int, ...]

FAMILIES = ("W", "S", "Stilde", "H")


class ModelFormatError(ValueError):
    """Raised when serialized model data does not parse or validate."""


# ---------------------------------------------------------------------------
# basis descriptors


@dataclass(frozen=True)
class VectorField:
    """The monomial vector field f * d_j."""

    mono: int
    j: int

    def __str__(self) -> str:
        return f"{mono_str(self.mono)}*d{self.j}"


@dataclass(frozen=True)
class Ham:
    """The Hamiltonian field obtained by applying D_H to a monomial."""

    mono: int

    def __str__(self) -> str:
        return f"DH({mono_str(self.mono)})"


@dataclass(frozen=True)
class GradingElement:
    """The Euler field sum_i x_i d_i."""

    def __str__(self) -> str:
        return "C"


@dataclass(frozen=True)
class Combo:
    """A rational combination of monomial vector fields (kernel-basis rows)."""

    terms: Tuple[Tuple[Fraction, int, int], ...]  # (coeff, mono, j)

    def __str__(self) -> str:
        return " + ".join(
            f"{c}*{mono_str(m)}*d{j}" for c, m, j in self.terms
        )


BasisDesc = Union[VectorField, Ham, GradingElement, Combo]


def parse_desc(s: str) -> BasisDesc:
    s = s.strip()
    if s == "C":
        return GradingElement()
    if s.startswith("DH(") and s.endswith(")"):
        return Ham(parse_mono(s[3:-1]))
    if " + " in s:
        terms = []
        for part in s.split(" + "):
            c, m, d = part.split("*")
            if not d.startswith("d"):
                raise ModelFormatError(f"bad combo term {part!r}")
            terms.append((Fraction(c), parse_mono(m), int(d[1:])))
        return Combo(tuple(terms))
    try:
        m, d = s.split("*")
    except ValueError:
        raise ModelFormatError(f"bad basis descriptor {s!r}") from None
    if not d.startswith("d"):
        raise ModelFormatError(f"bad basis descriptor {s!r}")
    return VectorField(parse_mono(m), int(d[1:]))


# ---------------------------------------------------------------------------
# the algebra model


class AlgebraModel:
    """Graded Lie superalgebra with an explicit sparse bracket table."""

    def __init__(
        self,
        family: str,
        n: int,
        basis: List[BasisDesc],
        table: Dict[Tuple[int, int], Vec],
        parity: List[int],
        degree: List[int],
        weight: List[WeightVec],
        cartan: List[int],
        grading_modulus: Optional[int] = None,
        w_coords: Optional[List[Vec]] = None,
        cartan_chain: Optional[List[Vec]] = None,
    ):
        self.family = family
        self.n = n
        self.basis = basis
        self.table = table
        self.parity = parity
        self.degree = degree
        self.weight = weight
        self.cartan = cartan
        self.grading_modulus = grading_modulus
        # derived data, attached by the constructors (not serialized):
        self.w_coords = w_coords          # basis vectors over the ambient W(n) basis
        self.cartan_chain = cartan_chain  # h_1..h_l in model coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.cartan_chain) if self.cartan_chain else len(self.cartan)

    def zero_weight(self) -> WeightVec:
        return tuple([0] * len(self.weight[0])) if self.weight else ()

    # -- grading arithmetic (Z, or Z_n stored as representatives -1..n-2)

    def deg_norm(self, d: int) -> int:
        m = self.grading_modulus
        if m is None:
            return d
        return (d + 1) % m - 1

    def deg_add(self, d1: int, d2: int) -> int:
        return self.deg_norm(d1 + d2)

    def deg_sub(self, d1: int, d2: int) -> int:
        return self.deg_norm(d1 - d2)

    def cell_of(self, i: int) -> Tuple[int, WeightVec]:
        return (self.degree[i], self.weight[i])

    def cells(self) -> Dict[Tuple[int, WeightVec], List[int]]:
        out: Dict[Tuple[int, WeightVec], List[int]] = {}
        for i in range(self.dim):
            out.setdefault(self.cell_of(i), []).append(i)
        return out

    # -- bracket

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.table.get((i, j), {})

    def bracket(self, a: Vec, b: Vec) -> Vec:
        """Bilinear extension of the bracket table."""
        out: Vec = {}
        table = self.table
        for i, ca in a.items():
            for j, cb in b.items():
                w = table.get((i, j))
                if w:
                    vec_axpy_inplace(out, ca * cb, w)
        return out

    def __repr__(self) -> str:
        return f"AlgebraModel({self.family}({self.n}), dim={self.dim})"


def ad_matrix(A: AlgebraModel, u: Vec, restrict: Optional[int] = None) -> Matrix:
    """Matrix of x -> [u, x] on A's basis.

    With ``restrict=m`` the map is taken on the first m basis vectors only
    (the standard identity-prefix embedding of L inside L'); a bracket value
    escaping that prefix raises, since ad(L') must preserve L.
    """
    m = A.dim if restrict is None else restrict
    data: Dict[int, Vec] = {}
    for b in range(m):
        col: Vec = {}
        table = A.table
        for i, c in u.items():
            w = table.get((i, b))
            if w:
                vec_axpy_inplace(col, c, w)
        for k, c in col.items():
            if k >= m:
                raise ValueError(
                    f"ad(u) leaves the restricted subalgebra at basis {b}"
                )
            data.setdefault(k, {})[b] = c
    return Matrix(m, m, data)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomReport:
    ok: bool
    pairs_checked: int
    triples_checked: int
    first_violation: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "first_violation": self.first_violation,
        }


def _bracket_left(A: AlgebraModel, i: int, v: Vec) -> Vec:
    out: Vec = {}
    table = A.table
    for m, c in v.items():
        w = table.get((i, m))
        if w:
            vec_axpy_inplace(out, c, w)
    return out


def _bracket_right(A: AlgebraModel, v: Vec, k: int) -> Vec:
    out: Vec = {}
    table = A.table
    for m, c in v.items():
        w = table.get((m, k))
        if w:
            vec_axpy_inplace(out, c, w)
    return out


def check_axioms(
    A: AlgebraModel,
    jacobi_triples: Optional[int] = None,
    seed: int = 0,
) -> AxiomReport:
    """Verify the superalgebra axioms plus degree and weight additivity.

    Anticommutativity and the grading checks always run over every basis
    pair.  Jacobi runs over all dim^3 ordered triples when ``jacobi_triples``
    is None, otherwise over that many seeded random triples.  The first
    violation, if any, is reported with the offending pair or triple.
    """
    dim = A.dim
    pairs = 0

    def fail(msg: str, triples: int = 0) -> AxiomReport:
        return AxiomReport(False, pairs, triples, msg)

    for i in range(dim):
        pi = A.parity[i]
        for j in range(i, dim):
            pairs += 1
            w = A.bracket_basis(i, j)
            back = A.bracket_basis(j, i)
            sign = -1 if (pi * A.parity[j]) % 2 == 0 else 1
            expect = {k: sign * c for k, c in w.items()}
            if back != expect:
                return fail(f"anticommutativity fails at pair ({i},{j})")
            dsum = A.deg_add(A.degree[i], A.degree[j])
            wsum = tuple(x + y for x, y in zip(A.weight[i], A.weight[j]))
            for k in w:
                if A.degree[k] != dsum:
                    return fail(f"degree additivity fails at pair ({i},{j})")
                if A.weight[k] != wsum:
                    return fail(f"weight additivity fails at pair ({i},{j})")

    if jacobi_triples is None:
        triple_iter = (
            (i, j, k) for i in range(dim) for j in range(dim) for k in range(dim)
        )
    else:
        rng = random.Random(seed)
        triple_iter = (
            (rng.randrange(dim), rng.randrange(dim), rng.randrange(dim))
            for _ in range(jacobi_triples)
        )

    triples = 0
    for i, j, k in triple_iter:
        triples += 1
        inner = A.bracket_basis(j, k)
        lhs = _bracket_left(A, i, inner) if inner else {}
        left = _bracket_right(A, A.bracket_basis(i, j), k)
        rhs = dict(left)
        sign = 1 if (A.parity[i] * A.parity[j]) % 2 == 0 else -1
        inner2 = A.bracket_basis(i, k)
        if inner2:
            vec_axpy_inplace(rhs, Fraction(sign), _bracket_left(A, j, inner2))
        if lhs != rhs:
            return fail(f"Jacobi fails at triple ({i},{j},{k})", triples)

    return AxiomReport(True, pairs, triples)


def bigrade_blocks(A: AlgebraModel) -> Dict[Tuple[int, WeightVec], List[int]]:
    """Partition of basis indices by (degree, weight), deterministically ordered."""
    cells = A.cells()
    return {key: cells[key] for key in sorted(cells)}


# ---------------------------------------------------------------------------
# serialization
#
# Format (one JSON object, canonical key order, fractions as "num/den"):
#   {family, n, basis: ["x1*d2", ...],
#    bracket: [[i, j, [[k, "num/den"], ...]], ...],
#    parity: [...], degree: [...], weight: [[...], ...], cartan: [...]}


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _parse_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def to_json_dict(A: AlgebraModel) -> dict:
    bracket = []
    for (i, j) in sorted(A.table):
        w = A.table[(i, j)]
        if not w:
            continue
        bracket.append([i, j, [[k, _frac_str(w[k])] for k in sorted(w)]])
    return {
        "family": A.family,
        "n": A.n,
        "basis": [str(d) for d in A.basis],
        "bracket": bracket,
        "parity": list(A.parity),
        "degree": list(A.degree),
        "weight": [list(w) for w in A.weight],
        "cartan": list(A.cartan),
    }


def model_to_json(A: AlgebraModel) -> str:
    return json.dumps(to_json_dict(A), separators=(",", ":"))


def from_json_dict(obj: dict) -> AlgebraModel:
    try:
        family = obj["family"]
        n = int(obj["n"])
        basis = [parse_desc(s) for s in obj["basis"]]
        dim = len(basis)
        table: Dict[Tuple[int, int], Vec] = {}
        for i, j, entries in obj["bracket"]:
            w = {int(k): _parse_frac(s) for k, s in entries}
            table[(int(i), int(j))] = w
        parity = [int(p) for p in obj["parity"]]
        degree = [int(d) for d in obj["degree"]]
        weight = [tuple(int(x) for x in w) for w in obj["weight"]]
        cartan = [int(c) for c in obj["cartan"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model data: {exc}") from exc
    if family not in FAMILIES:
        raise ModelFormatError(f"unknown family {family!r}")
    if not (len(parity) == len(degree) == len(weight) == dim):
        raise ModelFormatError("basis/parity/degree/weight length mismatch")
    for (i, j), w in table.items():
        if not (0 <= i < dim and 0 <= j < dim) or any(
            not 0 <= k < dim for k in w
        ):
            raise ModelFormatError(f"bracket index out of range at ({i},{j})")
    if any(not 0 <= c < dim for c in cartan):
        raise ModelFormatError("cartan index out of range")
    modulus = n if family == "Stilde" else None
    return AlgebraModel(
        family, n, basis, table, parity, degree, weight, cartan, modulus
    )


def model_from_json(text: str) -> AlgebraModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ModelFormatError("model JSON must be an object")
    return from_json_dict(obj)
