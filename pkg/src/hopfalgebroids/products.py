"""The four product algebras on a (bi)module algebra and a Hopf algebra, and
the explicit algebra isomorphisms between them.

All products are materialized as full structure-constant tensors so that
claims about them reduce to tensor equality or to the generic algebra-map
checker. Basis orders are fixed once and for all (row-major):

* smash / crossed products on CA (x) H: index = phi * dim(H) + h
* diamond product on A (x) A (x) H: index = (a * dim(A) + b) * dim(H) + h
* sandwich product on A (x) H (x) A: index = (a * dim(H) + h) * dim(A) + b

With these orders the A(x)H(x)A -> (A(x)A^op)(x)H comparison map is a pure
index permutation, and the diamond product coincides entry for entry with
the smash product of the enveloping bimodule algebra.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _fastops
from ._dictops import add_scaled, kron_into, mul_rows
from .actions import BimoduleAlgebra, LeftModuleAlgebra
from .algebra import (FAST_DIM_THRESHOLD, HopfAlgebra, StructureAlgebra,
                      sweedler_columns)
from .fields import Scalar
from .linalg import Matrix, SingularMatrix, Tensor3, Vec, matrix_inverse
from .report import CheckReport, ClauseResult, Status, clause_from_witnesses


class ProductKind(enum.Enum):
    LR_SMASH = "lr-smash"
    DIAGONAL_CROSSED = "diagonal-crossed"
    KADISON_DIAMOND = "diamond"
    CM_ODOT = "odot"


@dataclass(frozen=True)
class ProductFactors:
    """Provenance of a product algebra's inputs."""

    hopf: HopfAlgebra
    bimodule: BimoduleAlgebra | None = None
    module: LeftModuleAlgebra | None = None


@dataclass(frozen=True)
class ProductAlgebra:
    underlying: StructureAlgebra
    kind: ProductKind
    factors: ProductFactors

    @property
    def dim(self) -> int:
        return self.underlying.dim

    def __repr__(self):
        return f"ProductAlgebra({self.kind.value}, dim={self.dim})"


def _kron3_into(acc: dict, u: dict, v: dict, w: dict, n2: int, n3: int, c) -> None:
    """acc += c * (u (x) v (x) w) with row-major flattening ((i*n2)+j)*n3+k."""
    if c == 0:
        return
    for i, cu in u.items():
        ci = c * cu
        if ci == 0:
            continue
        base_i = i * n2
        for j, cv in v.items():
            cij = ci * cv
            if cij == 0:
                continue
            base_ij = (base_i + j) * n3
            for k, cw in w.items():
                key = base_ij + k
                s = acc.get(key)
                s = cij * cw if s is None else s + cij * cw
                if s == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = s


def _product_labels(*factor_labels: tuple[str, ...]) -> tuple[str, ...]:
    out = [""]
    for labels in factor_labels:
        out = [f"{p}⊗{l}" if p else l for p in out for l in labels]
    return tuple(out)


def lr_smash(b: BimoduleAlgebra) -> ProductAlgebra:
    """Product on CA (x) H: (phi # h)(phi' # h') = (phi.h'_2)(h_1.phi') # h_2 h'_1."""
    A, H = b.alg, b.hopf
    dA, dH = A.dim, H.dim
    field = A.field
    sw2 = sweedler_columns(H, 2)
    hrows = H.algebra.mult.pairs
    arows = A.mult.pairs
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i2 in range(dH):
        for c1, (h1, h2) in sw2[i2]:
            for j2 in range(dH):
                for c2, (h1p, h2p) in sw2[j2]:
                    c = c1 * c2
                    for i1 in range(dA):
                        rvec = b.right_act.pairs.get((i1, h2p))
                        if not rvec:
                            continue
                        for j1 in range(dA):
                            lvec = b.left_act.pairs.get((h1, j1))
                            if not lvec:
                                continue
                            apart = mul_rows(arows, rvec, lvec)
                            if not apart:
                                continue
                            hpart = hrows.get((h2, h1p))
                            if not hpart:
                                continue
                            acc = pairs.setdefault((i1 * dH + i2, j1 * dH + j2), {})
                            for m, va in apart.items():
                                kron_into(acc, {m: va}, hpart, dH, c)
    dim = dA * dH
    mult = Tensor3(dim, dim, dim, pairs, field)
    unit = A.unit.kron(Vec(dH, dict(H.algebra.unit.data), field))
    underlying = StructureAlgebra(field, dim,
                                  _product_labels(A.basis_labels, H.basis_labels),
                                  mult, unit)
    return ProductAlgebra(underlying, ProductKind.LR_SMASH, ProductFactors(H, bimodule=b))


def diagonal_crossed(b: BimoduleAlgebra) -> ProductAlgebra:
    """Product on CA (x) H: (phi >< h)(phi' >< h') = phi (h_1.phi'.Sinv(h_3)) >< h_2 h'."""
    A, H = b.alg, b.hopf
    dA, dH = A.dim, H.dim
    field = A.field
    sw3 = sweedler_columns(H, 3)
    hrows = H.algebra.mult.pairs
    arows = A.mult.pairs
    sinv_cols = [H.antipode_inv.column(j).data for j in range(dH)]
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i2 in range(dH):
        for c, (h1, h2, h3) in sw3[i2]:
            for j1 in range(dA):
                # phi' . Sinv(h3), then h1 . (that)
                mid: dict[int, Scalar] = {}
                for s, cs in sinv_cols[h3].items():
                    row = b.right_act.pairs.get((j1, s))
                    if row:
                        add_scaled(mid, row, cs)
                if not mid:
                    continue
                w: dict[int, Scalar] = {}
                for m, cm in mid.items():
                    row = b.left_act.pairs.get((h1, m))
                    if row:
                        add_scaled(w, row, cm)
                if not w:
                    continue
                for i1 in range(dA):
                    apart: dict[int, Scalar] = {}
                    for m, cm in w.items():
                        row = arows.get((i1, m))
                        if row:
                            add_scaled(apart, row, cm)
                    if not apart:
                        continue
                    for j2 in range(dH):
                        hpart = hrows.get((h2, j2))
                        if not hpart:
                            continue
                        acc = pairs.setdefault((i1 * dH + i2, j1 * dH + j2), {})
                        kron_into(acc, apart, hpart, dH, c)
    dim = dA * dH
    mult = Tensor3(dim, dim, dim, pairs, field)
    unit = A.unit.kron(Vec(dH, dict(H.algebra.unit.data), field))
    underlying = StructureAlgebra(field, dim,
                                  _product_labels(A.basis_labels, H.basis_labels),
                                  mult, unit)
    return ProductAlgebra(underlying, ProductKind.DIAGONAL_CROSSED, ProductFactors(H, bimodule=b))


def kadison_diamond(m: LeftModuleAlgebra) -> ProductAlgebra:
    """Product on A (x) A (x) H, basis order (a, b, h):

    (a (x) b (x) h)(a' (x) b' (x) h') = a(h_1.a') (x) b'(S(h'_2).b) (x) h_2 h'_1,
    the second component multiplied in A itself.
    """
    A, H = m.alg, m.hopf
    dA, dH = A.dim, H.dim
    field = A.field
    sw2 = sweedler_columns(H, 2)
    hrows = H.algebra.mult.pairs
    arows = A.mult.pairs
    s_cols = [H.antipode.column(j).data for j in range(dH)]
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i3 in range(dH):
        for c1, (h1, h2) in sw2[i3]:
            firsts = []
            for j1 in range(dA):
                v1 = m.act.pairs.get((h1, j1))
                if not v1:
                    firsts.append(None)
                    continue
                per_a = []
                for i1 in range(dA):
                    first: dict[int, Scalar] = {}
                    for mm, cm in v1.items():
                        row = arows.get((i1, mm))
                        if row:
                            add_scaled(first, row, cm)
                    per_a.append(first or None)
                firsts.append(per_a)
            for j3 in range(dH):
                for c2, (h1p, h2p) in sw2[j3]:
                    hpart = hrows.get((h2, h1p))
                    if not hpart:
                        continue
                    c = c1 * c2
                    for i2 in range(dA):
                        # S(h'_2) . b
                        sb: dict[int, Scalar] = {}
                        for s, cs in s_cols[h2p].items():
                            row = m.act.pairs.get((s, i2))
                            if row:
                                add_scaled(sb, row, cs)
                        if not sb:
                            continue
                        for j2 in range(dA):
                            second: dict[int, Scalar] = {}
                            for mm, cm in sb.items():
                                row = arows.get((j2, mm))
                                if row:
                                    add_scaled(second, row, cm)
                            if not second:
                                continue
                            for j1 in range(dA):
                                if firsts[j1] is None:
                                    continue
                                for i1 in range(dA):
                                    first = firsts[j1][i1]
                                    if not first:
                                        continue
                                    acc = pairs.setdefault(
                                        ((i1 * dA + i2) * dH + i3,
                                         (j1 * dA + j2) * dH + j3), {})
                                    _kron3_into(acc, first, second, hpart, dA, dH, c)
    dim = dA * dA * dH
    mult = Tensor3(dim, dim, dim, pairs, field)
    unit = A.unit.kron(A.unit).kron(Vec(dH, dict(H.algebra.unit.data), field))
    underlying = StructureAlgebra(
        field, dim,
        _product_labels(A.basis_labels, A.basis_labels, H.basis_labels),
        mult, unit)
    return ProductAlgebra(underlying, ProductKind.KADISON_DIAMOND, ProductFactors(H, module=m))


def cm_odot(m: LeftModuleAlgebra) -> ProductAlgebra:
    """Product on A (x) H (x) A, basis order (a, h, b):

    (a (x) h (x) b)(a' (x) h' (x) b') = a(h_1.a') (x) h_2 h' (x) (h_3.b')b.
    """
    A, H = m.alg, m.hopf
    dA, dH = A.dim, H.dim
    field = A.field
    sw3 = sweedler_columns(H, 3)
    hrows = H.algebra.mult.pairs
    arows = A.mult.pairs
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i2 in range(dH):
        for c, (h1, h2, h3) in sw3[i2]:
            for j1 in range(dA):
                v1 = m.act.pairs.get((h1, j1))
                if not v1:
                    continue
                for j3 in range(dA):
                    v3 = m.act.pairs.get((h3, j3))
                    if not v3:
                        continue
                    for i3 in range(dA):
                        third: dict[int, Scalar] = {}
                        for mm, cm in v3.items():
                            row = arows.get((mm, i3))
                            if row:
                                add_scaled(third, row, cm)
                        if not third:
                            continue
                        for i1 in range(dA):
                            first: dict[int, Scalar] = {}
                            for mm, cm in v1.items():
                                row = arows.get((i1, mm))
                                if row:
                                    add_scaled(first, row, cm)
                            if not first:
                                continue
                            for j2 in range(dH):
                                hpart = hrows.get((h2, j2))
                                if not hpart:
                                    continue
                                acc = pairs.setdefault(
                                    ((i1 * dH + i2) * dA + i3,
                                     (j1 * dH + j2) * dA + j3), {})
                                _kron3_into(acc, first, hpart, third, dH, dA, c)
    dim = dA * dH * dA
    mult = Tensor3(dim, dim, dim, pairs, field)
    unit = A.unit.kron(Vec(dH, dict(H.algebra.unit.data), field)).kron(A.unit)
    underlying = StructureAlgebra(
        field, dim,
        _product_labels(A.basis_labels, H.basis_labels, A.basis_labels),
        mult, unit)
    return ProductAlgebra(underlying, ProductKind.CM_ODOT, ProductFactors(H, module=m))


# ---------------------------------------------------------------------------
# The explicit isomorphisms

def iso_nu(b: BimoduleAlgebra) -> Matrix:
    """Crossed -> smash: phi >< h maps to phi.h_2 # h_1."""
    A, H = b.alg, b.hopf
    dA, dH = A.dim, H.dim
    sw2 = sweedler_columns(H, 2)
    entries: dict[tuple[int, int], Scalar] = {}
    for i1 in range(dA):
        for i2 in range(dH):
            col = i1 * dH + i2
            for c, (h1, h2) in sw2[i2]:
                row = b.right_act.pairs.get((i1, h2))
                if not row:
                    continue
                for mm, v in row.items():
                    key = (mm * dH + h1, col)
                    s = entries.get(key, A.field.zero) + c * v
                    if s == 0:
                        entries.pop(key, None)
                    else:
                        entries[key] = s
    d = dA * dH
    return Matrix.from_entries(d, d, entries, A.field)


def iso_nu_inv(b: BimoduleAlgebra) -> Matrix:
    """Smash -> crossed: phi # h maps to phi.Sinv(h_2) >< h_1."""
    A, H = b.alg, b.hopf
    dA, dH = A.dim, H.dim
    sw2 = sweedler_columns(H, 2)
    sinv_cols = [H.antipode_inv.column(j).data for j in range(dH)]
    entries: dict[tuple[int, int], Scalar] = {}
    for i1 in range(dA):
        for i2 in range(dH):
            col = i1 * dH + i2
            for c, (h1, h2) in sw2[i2]:
                acted: dict[int, Scalar] = {}
                for s, cs in sinv_cols[h2].items():
                    row = b.right_act.pairs.get((i1, s))
                    if row:
                        add_scaled(acted, row, cs)
                for mm, v in acted.items():
                    key = (mm * dH + h1, col)
                    s2 = entries.get(key, A.field.zero) + c * v
                    if s2 == 0:
                        entries.pop(key, None)
                    else:
                        entries[key] = s2
    d = dA * dH
    return Matrix.from_entries(d, d, entries, A.field)


def iso_cm_to_diagonal(m: LeftModuleAlgebra) -> Matrix:
    """A(x)H(x)A -> (A(x)A^op)(x)H: the basis permutation a(x)h(x)b -> (a(x)b)(x)h."""
    A, H = m.alg, m.hopf
    dA, dH = A.dim, H.dim
    one = A.field.one
    entries = {}
    for a in range(dA):
        for h in range(dH):
            for bb in range(dA):
                entries[((a * dA + bb) * dH + h, (a * dH + h) * dA + bb)] = one
    d = dA * dH * dA
    return Matrix.from_entries(d, d, entries, A.field)


def iso_diamond_to_odot(m: LeftModuleAlgebra) -> Matrix:
    """(a (x) b (x) h) maps to a (x) h_1 (x) h_2.b."""
    A, H = m.alg, m.hopf
    dA, dH = A.dim, H.dim
    sw2 = sweedler_columns(H, 2)
    entries: dict[tuple[int, int], Scalar] = {}
    for a in range(dA):
        for bb in range(dA):
            for h in range(dH):
                col = (a * dA + bb) * dH + h
                for c, (h1, h2) in sw2[h]:
                    row = m.act.pairs.get((h2, bb))
                    if not row:
                        continue
                    for mm, v in row.items():
                        key = ((a * dH + h1) * dA + mm, col)
                        s = entries.get(key, A.field.zero) + c * v
                        if s == 0:
                            entries.pop(key, None)
                        else:
                            entries[key] = s
    d = dA * dA * dH
    return Matrix.from_entries(d, d, entries, A.field)


def iso_odot_to_diamond(m: LeftModuleAlgebra) -> Matrix:
    """(a (x) h (x) b) maps to a (x) S(h_2).b (x) h_1."""
    A, H = m.alg, m.hopf
    dA, dH = A.dim, H.dim
    sw2 = sweedler_columns(H, 2)
    s_cols = [H.antipode.column(j).data for j in range(dH)]
    entries: dict[tuple[int, int], Scalar] = {}
    for a in range(dA):
        for h in range(dH):
            for bb in range(dA):
                col = (a * dH + h) * dA + bb
                for c, (h1, h2) in sw2[h]:
                    acted: dict[int, Scalar] = {}
                    for s, cs in s_cols[h2].items():
                        row = m.act.pairs.get((s, bb))
                        if row:
                            add_scaled(acted, row, cs)
                    for mm, v in acted.items():
                        key = ((a * dA + mm) * dH + h1, col)
                        s2 = entries.get(key, A.field.zero) + c * v
                        if s2 == 0:
                            entries.pop(key, None)
                        else:
                            entries[key] = s2
    d = dA * dA * dH
    return Matrix.from_entries(d, d, entries, A.field)


# ---------------------------------------------------------------------------
# Checkers

def algebra_map_witnesses(f: Matrix, src: StructureAlgebra, dst: StructureAlgebra,
                          mode: str = "auto") -> list[tuple[int, int]]:
    """Basis pairs (i, j) with f(e_i e_j) != f(e_i) f(e_j)."""
    if mode not in ("auto", "pure", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fast" or (mode == "auto" and max(src.dim, dst.dim) >= FAST_DIM_THRESHOLD):
        fast = _fastops.algebra_map_witnesses(f, src.mult, dst.mult)
        if fast is not None:
            return fast
        if mode == "fast":
            raise RuntimeError("accelerated algebra-map kernel unavailable for this input")
    cols = [f.column(i) for i in range(src.dim)]
    out = []
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = Vec.zeros(dst.dim, dst.field)
            for mm, c in src.mult.row(i, j).items():
                lhs = lhs + cols[mm].scaled(c)
            rhs = dst.mul(cols[i], cols[j])
            if lhs != rhs:
                out.append((i, j))
    return sorted(out)


def check_algebra_map(f: Matrix, src: StructureAlgebra, dst: StructureAlgebra,
                      require_iso: bool = False, mode: str = "auto") -> CheckReport:
    """f(xy) = f(x)f(y) on all basis pairs and f(1) = 1; optionally invertibility."""
    if (f.nrows, f.ncols) != (dst.dim, src.dim):
        raise ValueError(
            f"map shape {f.nrows}x{f.ncols} does not match dims {dst.dim}<-{src.dim}")
    clauses = [
        clause_from_witnesses("multiplicative", algebra_map_witnesses(f, src, dst, mode)),
        clause_from_witnesses(
            "unital", [] if f.apply(src.unit) == dst.unit else [(0,)]),
    ]
    if require_iso:
        try:
            matrix_inverse(f)
            invertible = True
        except SingularMatrix:
            invertible = False
        clauses.append(ClauseResult(
            "invertible",
            Status.PASS if invertible else Status.FAIL,
            () if invertible else ((0,),),
        ))
    return CheckReport(f"algebra map ({src.dim} -> {dst.dim}, {src.field})", tuple(clauses))


def check_prop22_equality(m: LeftModuleAlgebra) -> CheckReport:
    """Literal structure-constant equality of the diamond product with the
    smash product of the enveloping bimodule algebra (same basis order)."""
    from .actions import enveloping_bimodule_algebra
    diamond = kadison_diamond(m).underlying
    smash = lr_smash(enveloping_bimodule_algebra(m)).underlying
    witnesses = []
    keys = set(diamond.mult.pairs) | set(smash.mult.pairs)
    for (i, j) in sorted(keys):
        r1 = diamond.mult.pairs.get((i, j), {})
        r2 = smash.mult.pairs.get((i, j), {})
        if r1 != r2:
            for k in sorted(set(r1) | set(r2)):
                if r1.get(k) != r2.get(k):
                    witnesses.append((i, j, k))
    unit_wit = [] if diamond.unit == smash.unit else [(0,)]
    return CheckReport(
        f"diamond = smash as structure constants (dim {diamond.dim}, {diamond.field})",
        (
            clause_from_witnesses("mult-tensor-equal", witnesses),
            clause_from_witnesses("unit-equal", unit_wit),
        ),
    )
