"""Structure-constant algebras, coalgebras and Hopf algebras, with exact
axiom checkers.

A :class:`StructureAlgebra` is a finite-dimensional unital algebra given by
its multiplication tensor (``mult[i][j][k]`` = coefficient of e_k in
e_i * e_j) and unit vector. Coalgebras store the transposed data
(``comult[i][j][k]`` = coefficient of e_j (x) e_k in the coproduct of e_i).
Axiom checkers return witness-carrying reports instead of raising: a bad
structure constant is data to be reported, not an error.

Above :data:`FAST_DIM_THRESHOLD` the associativity check dispatches to the
int64 sparse kernel in ``_fastops`` (identical witnesses, much faster); the
pure dict expansion is always available via ``mode="pure"``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _fastops
from ._dictops import add_scaled, mul_rows
from .fields import FieldSpec, Scalar
from .linalg import Matrix, Tensor3, Vec
from .report import CheckReport, ClauseResult, clause_from_witnesses

FAST_DIM_THRESHOLD = 28


@dataclass(frozen=True)
class StructureAlgebra:
    """Finite-dimensional unital algebra given by structure constants."""

    field: FieldSpec
    dim: int
    basis_labels: tuple[str, ...]
    mult: Tensor3
    unit: Vec

    def __post_init__(self):
        if len(self.basis_labels) != self.dim:
            raise ValueError("basis label count does not match dimension")
        if self.mult.dims != (self.dim, self.dim, self.dim):
            raise ValueError("multiplication tensor has wrong shape")
        if self.unit.n != self.dim:
            raise ValueError("unit vector has wrong length")

    def basis(self, i: int) -> Vec:
        return Vec.basis(self.dim, i, self.field)

    def mul(self, u: Vec, v: Vec) -> Vec:
        return Vec(self.dim, mul_rows(self.mult.pairs, u.data, v.data), self.field)

    def left_mult_matrix(self, u: Vec) -> Matrix:
        """Matrix of x -> u * x."""
        cols = [self.mul(u, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.field, self.dim)

    def right_mult_matrix(self, u: Vec) -> Matrix:
        """Matrix of x -> x * u."""
        cols = [self.mul(self.basis(j), u) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.field, self.dim)

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim}, field={self.field})"


@dataclass(frozen=True)
class Coalgebra:
    field: FieldSpec
    dim: int
    comult: Tensor3
    counit: Vec

    def __post_init__(self):
        if self.comult.dims != (self.dim, self.dim, self.dim):
            raise ValueError("comultiplication tensor has wrong shape")
        if self.counit.n != self.dim:
            raise ValueError("counit vector has wrong length")

    def coproduct_terms(self, i: int) -> dict[tuple[int, int], Scalar]:
        """The coproduct of basis element i as {(j, k): coefficient}."""
        out: dict[tuple[int, int], Scalar] = {}
        row = self.comult.pairs
        for (i0, j), r in row.items():
            if i0 == i:
                for k, v in r.items():
                    out[(j, k)] = v
        return out

    def comult_matrix(self) -> Matrix:
        """The coproduct as a dim^2 x dim matrix (row-major pair rows)."""
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), r in self.comult.pairs.items():
            for k, v in r.items():
                rows.setdefault(j * self.dim + k, {})[i] = v
        return Matrix(self.dim * self.dim, self.dim, rows, self.field)

    def __repr__(self):
        return f"Coalgebra(dim={self.dim}, field={self.field})"


@dataclass(frozen=True)
class HopfAlgebra:
    """Bialgebra data plus an antipode and its stored (validated) inverse."""

    algebra: StructureAlgebra
    coalgebra: Coalgebra
    antipode: Matrix
    antipode_inv: Matrix

    def __post_init__(self):
        d = self.algebra.dim
        if self.coalgebra.dim != d:
            raise ValueError("algebra and coalgebra dimensions differ")
        if (self.antipode.nrows, self.antipode.ncols) != (d, d):
            raise ValueError("antipode matrix has wrong shape")
        if (self.antipode_inv.nrows, self.antipode_inv.ncols) != (d, d):
            raise ValueError("antipode inverse matrix has wrong shape")
        if self.antipode @ self.antipode_inv != Matrix.identity(d, self.field):
            raise ValueError("stored antipode inverse is not inverse to the antipode")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return self.algebra.basis_labels

    def __repr__(self):
        return f"HopfAlgebra(dim={self.dim}, field={self.field})"


# ---------------------------------------------------------------------------
# Checkers

def _assoc_witnesses_pure(mult: Tensor3) -> list[tuple[int, int, int, int]]:
    d = mult.d0
    pairs = mult.pairs
    out = []
    for i in range(d):
        for j in range(d):
            pij = pairs.get((i, j), {})
            for k in range(d):
                lhs: dict[int, Scalar] = {}
                for m, c in pij.items():
                    row = pairs.get((m, k))
                    if row:
                        add_scaled(lhs, row, c)
                rhs: dict[int, Scalar] = {}
                for m, c in pairs.get((j, k), {}).items():
                    row = pairs.get((i, m))
                    if row:
                        add_scaled(rhs, row, c)
                if lhs != rhs:
                    for l in sorted(set(lhs) | set(rhs)):
                        if lhs.get(l) != rhs.get(l):
                            out.append((i, j, k, l))
    return sorted(out)


def associativity_witnesses(mult: Tensor3, mode: str = "auto") -> list[tuple[int, int, int, int]]:
    """All failed associativity tuples (i, j, k, l) of a multiplication tensor."""
    if mode not in ("auto", "pure", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fast" or (mode == "auto" and mult.d0 >= FAST_DIM_THRESHOLD):
        fast = _fastops.assoc_witnesses(mult)
        if fast is not None:
            return fast
        if mode == "fast":
            raise RuntimeError("accelerated associativity kernel unavailable for this input")
    return _assoc_witnesses_pure(mult)


def check_algebra(a: StructureAlgebra, mode: str = "auto") -> CheckReport:
    """Associativity on all basis triples plus the two-sided unit laws."""
    assoc = associativity_witnesses(a.mult, mode)
    left, right = [], []
    for j in range(a.dim):
        ej = a.basis(j)
        if a.mul(a.unit, ej) != ej:
            left.append((j,))
        if a.mul(ej, a.unit) != ej:
            right.append((j,))
    return CheckReport(
        f"algebra axioms (dim {a.dim}, {a.field})",
        (
            clause_from_witnesses("associativity", assoc),
            clause_from_witnesses("unit-left", left),
            clause_from_witnesses("unit-right", right),
        ),
    )


def _coalgebra_clauses(c: Coalgebra) -> list[ClauseResult]:
    d = c.dim
    delta: dict[int, dict[tuple[int, int], Scalar]] = {}
    for (i, j), r in c.comult.pairs.items():
        tgt = delta.setdefault(i, {})
        for k, v in r.items():
            tgt[(j, k)] = v

    coassoc = []
    for i in range(d):
        lhs: dict[tuple[int, int, int], Scalar] = {}
        rhs: dict[tuple[int, int, int], Scalar] = {}
        for (j, k), v in delta.get(i, {}).items():
            for (j1, j2), w in delta.get(j, {}).items():
                _acc3(lhs, (j1, j2, k), v * w)
            for (k1, k2), w in delta.get(k, {}).items():
                _acc3(rhs, (j, k1, k2), v * w)
        if lhs != rhs:
            for key in sorted(set(lhs) | set(rhs)):
                if lhs.get(key) != rhs.get(key):
                    coassoc.append((i,) + key)

    counit_left, counit_right = [], []
    eps = c.counit.data
    for i in range(d):
        lvec: dict[int, Scalar] = {}
        rvec: dict[int, Scalar] = {}
        for (j, k), v in delta.get(i, {}).items():
            ej = eps.get(j)
            if ej is not None:
                _acc1(lvec, k, ej * v)
            ek = eps.get(k)
            if ek is not None:
                _acc1(rvec, j, ek * v)
        expected = {i: c.field.one}
        if lvec != expected:
            counit_left.append((i,))
        if rvec != expected:
            counit_right.append((i,))

    return [
        clause_from_witnesses("coassociativity", sorted(coassoc)),
        clause_from_witnesses("counit-left", counit_left),
        clause_from_witnesses("counit-right", counit_right),
    ]


def _acc1(acc: dict, key, v) -> None:
    s = acc.get(key)
    s = v if s is None else s + v
    if s == 0:
        acc.pop(key, None)
    else:
        acc[key] = s


_acc3 = _acc1


def check_hopf(h: HopfAlgebra, mode: str = "auto") -> CheckReport:
    """Full Hopf axiom check: algebra and coalgebra axioms, multiplicativity
    of coproduct and counit, the antipode identity on every basis element,
    and two-sided agreement of the stored antipode inverse."""
    a = h.algebra
    c = h.coalgebra
    d = h.dim
    field = h.field

    clauses = [ClauseResult(f"algebra.{cl.clause}", cl.status, cl.witnesses, cl.detail)
               for cl in check_algebra(a, mode).clauses]
    clauses.extend(
        ClauseResult(f"coalgebra.{cl.clause}", cl.status, cl.witnesses, cl.detail)
        for cl in _coalgebra_clauses(c)
    )

    delta_vec = [Vec(d * d, {j * d + k: v for (j, k), v in c.coproduct_terms(i).items()}, field)
                 for i in range(d)]
    tensor_sq_rows = tensor_algebra(a, a).mult.pairs

    comult_mult = []
    for i in range(d):
        for j in range(d):
            lhs: dict[int, Scalar] = {}
            for m, cv in a.mult.row(i, j).items():
                add_scaled(lhs, delta_vec[m].data, cv)
            rhs = mul_rows(tensor_sq_rows, delta_vec[i].data, delta_vec[j].data)
            if lhs != rhs:
                comult_mult.append((i, j))
    comult_unital = []
    if c.comult_matrix().apply(a.unit) != a.unit.kron(a.unit):
        comult_unital.append((0,))

    eps = c.counit
    counit_mult = []
    for i in range(d):
        for j in range(d):
            lhs_s = field.zero
            for m, v in a.mult.row(i, j).items():
                w = eps.data.get(m)
                if w is not None:
                    lhs_s = lhs_s + v * w
            if lhs_s != eps.get(i) * eps.get(j):
                counit_mult.append((i, j))
    counit_unital = []
    unit_eps = field.zero
    for m, v in a.unit.data.items():
        w = eps.data.get(m)
        if w is not None:
            unit_eps = unit_eps + v * w
    if unit_eps != field.one:
        counit_unital.append((0,))

    ant_left, ant_right = [], []
    s_cols = [h.antipode.column(j) for j in range(d)]
    for i in range(d):
        acc_l = Vec.zeros(d, field)
        acc_r = Vec.zeros(d, field)
        for (j, k), v in c.coproduct_terms(i).items():
            acc_l = acc_l + a.mul(s_cols[j], a.basis(k)).scaled(v)
            acc_r = acc_r + a.mul(a.basis(j), s_cols[k]).scaled(v)
        target = a.unit.scaled(eps.get(i))
        if acc_l != target:
            ant_left.append((i,))
        if acc_r != target:
            ant_right.append((i,))

    ident = Matrix.identity(d, field)
    inv_wit = []
    if h.antipode @ h.antipode_inv != ident or h.antipode_inv @ h.antipode != ident:
        inv_wit.append((0,))

    clauses.extend([
        clause_from_witnesses("comult-multiplicative", comult_mult),
        clause_from_witnesses("comult-unital", comult_unital),
        clause_from_witnesses("counit-multiplicative", counit_mult),
        clause_from_witnesses("counit-unital", counit_unital),
        clause_from_witnesses("antipode-left", ant_left),
        clause_from_witnesses("antipode-right", ant_right),
        clause_from_witnesses("antipode-inverse", inv_wit),
    ])
    return CheckReport(f"Hopf algebra axioms (dim {d}, {field})", tuple(clauses))


# ---------------------------------------------------------------------------
# Constructions

def opposite(a: StructureAlgebra) -> StructureAlgebra:
    """Same space, reversed multiplication."""
    pairs = {(j, i): dict(r) for (i, j), r in a.mult.pairs.items()}
    return StructureAlgebra(a.field, a.dim, a.basis_labels,
                            Tensor3(a.dim, a.dim, a.dim, pairs, a.field), a.unit)


def tensor_algebra(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    """Componentwise product on the row-major tensor basis: (x(x)y)(x'(x)y') = xx'(x)yy'."""
    if a.field != b.field:
        raise ValueError("tensor factors live over different fields")
    db = b.dim
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (i0, j0), r0 in a.mult.pairs.items():
        for (i1, j1), r1 in b.mult.pairs.items():
            row = pairs.setdefault((i0 * db + i1, j0 * db + j1), {})
            for k0, v0 in r0.items():
                for k1, v1 in r1.items():
                    row[k0 * db + k1] = v0 * v1
    labels = tuple(f"{la}⊗{lb}" for la in a.basis_labels for lb in b.basis_labels)
    dim = a.dim * b.dim
    return StructureAlgebra(a.field, dim, labels,
                            Tensor3(dim, dim, dim, pairs, a.field),
                            a.unit.kron(b.unit))


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis.

    Multiplication is the transpose of the coproduct, the coproduct the
    transpose of the multiplication, and the antipode the transpose of the
    antipode; applying this twice returns the original data on the nose.
    """
    d = h.dim
    field = h.field
    mult_pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (k, i), r in h.coalgebra.comult.pairs.items():
        for j, v in r.items():
            mult_pairs.setdefault((i, j), {})[k] = v
    comult_pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (j, k), r in h.algebra.mult.pairs.items():
        for i, v in r.items():
            comult_pairs.setdefault((i, j), {})[k] = v
    labels = tuple(f"{l}^*" for l in h.basis_labels)
    algebra = StructureAlgebra(field, d, labels,
                               Tensor3(d, d, d, mult_pairs, field),
                               Vec(d, dict(h.coalgebra.counit.data), field))
    coalgebra = Coalgebra(field, d,
                          Tensor3(d, d, d, comult_pairs, field),
                          Vec(d, dict(h.algebra.unit.data), field))
    return HopfAlgebra(algebra, coalgebra,
                       h.antipode.transpose(), h.antipode_inv.transpose())


def hopf_opposite(h: HopfAlgebra) -> HopfAlgebra:
    """Opposite multiplication, same coproduct; the antipode inverts."""
    return HopfAlgebra(opposite(h.algebra), h.coalgebra, h.antipode_inv, h.antipode)


def hopf_tensor(h1: HopfAlgebra, h2: HopfAlgebra) -> HopfAlgebra:
    """Tensor product of Hopf algebras with componentwise structure."""
    algebra = tensor_algebra(h1.algebra, h2.algebra)
    d2 = h2.dim
    d = h1.dim * d2
    field = h1.field
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (i0, j0), r0 in h1.coalgebra.comult.pairs.items():
        for (i1, j1), r1 in h2.coalgebra.comult.pairs.items():
            row = pairs.setdefault((i0 * d2 + i1, j0 * d2 + j1), {})
            for k0, v0 in r0.items():
                for k1, v1 in r1.items():
                    row[k0 * d2 + k1] = v0 * v1
    coalgebra = Coalgebra(field, d, Tensor3(d, d, d, pairs, field),
                          h1.coalgebra.counit.kron(h2.coalgebra.counit))
    return HopfAlgebra(algebra, coalgebra,
                       h1.antipode.kron(h2.antipode),
                       h1.antipode_inv.kron(h2.antipode_inv))


def iterated_coproduct(h: HopfAlgebra, n: int, extend: str = "last") -> Matrix:
    """The n-fold coproduct as a dim^n x dim matrix (n = 1 is the identity).

    Each step applies the coproduct to one tensor slot; by coassociativity the
    slot choice does not matter, and the ``extend`` switch ("last"/"first")
    exists so tests can confirm that on concrete data.
    """
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    if extend not in ("last", "first"):
        raise ValueError(f"unknown slot extension {extend!r}")
    d = h.dim
    out = Matrix.identity(d, h.field)
    delta = h.coalgebra.comult_matrix()
    for slots in range(1, n):
        eye = Matrix.identity(d ** (slots - 1), h.field)
        if extend == "last":
            step = eye.kron(delta)
        else:
            step = delta.kron(eye)
        out = step @ out
    return out


def sweedler_columns(h: HopfAlgebra, n: int) -> list[list[tuple[Scalar, tuple[int, ...]]]]:
    """Per basis element, the n-fold coproduct as (coefficient, index tuple) terms."""
    mat = iterated_coproduct(h, n)
    d = h.dim
    cols: list[list[tuple[Scalar, tuple[int, ...]]]] = [[] for _ in range(d)]
    for flat, i, v in mat.entries():
        idx = []
        rem = flat
        for _ in range(n):
            rem, r = divmod(rem, d)
            idx.append(r)
        cols[i].append((v, tuple(reversed(idx))))
    for col in cols:
        col.sort(key=lambda t: t[1])
    return cols


def is_involutive(h: HopfAlgebra) -> bool:
    """True iff the antipode squares to the identity matrix exactly."""
    return h.antipode @ h.antipode == Matrix.identity(h.dim, h.field)
