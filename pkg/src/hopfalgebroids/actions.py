"""Module-algebra and bimodule-algebra structures.

Actions are stored as explicit 3-tensors so that every axiom check reduces to
finite exact linear algebra:

* left action: ``act[h][a][b]`` = coefficient of e_b in e_h . e_a
* right action: ``act[a][h][b]`` = coefficient of e_b in e_a . e_h

The right module-algebra convention used throughout is
``(a*b).h = (a.h1)(b.h2)`` and ``1.h = eps(h)1``; every checker that depends
on it records the convention in its report notes. Under this convention the
derived right action a.h = S(h).a makes the *opposite* algebra a right
module algebra, and the enveloping construction A (x) A^op an H-bimodule
algebra with H acting on the left factor from the left and on the right
factor through S.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._dictops import add_scaled, mul_rows
from .algebra import (HopfAlgebra, StructureAlgebra, dual_hopf, hopf_opposite,
                      hopf_tensor, opposite, sweedler_columns, tensor_algebra)
from .fields import Scalar
from .linalg import Tensor3, Vec
from .report import CheckReport, clause_from_witnesses

_RIGHT_CONVENTION_NOTE = (
    "right module-algebra convention: (a*b).h = (a.h1)(b.h2) and 1.h = eps(h)1"
)


@dataclass(frozen=True)
class LeftModuleAlgebra:
    """An algebra with a left action of a Hopf algebra, act[h][a][b]."""

    hopf: HopfAlgebra
    alg: StructureAlgebra
    act: Tensor3

    def __post_init__(self):
        if self.act.dims != (self.hopf.dim, self.alg.dim, self.alg.dim):
            raise ValueError("action tensor has wrong shape")
        if self.hopf.field != self.alg.field:
            raise ValueError("module algebra fields differ")

    def apply(self, hvec: Vec, avec: Vec) -> Vec:
        """The action of an element of H on an element of A."""
        out: dict[int, Scalar] = {}
        for h, ch in hvec.data.items():
            for a, ca in avec.data.items():
                row = self.act.pairs.get((h, a))
                if row:
                    add_scaled(out, row, ch * ca)
        return Vec(self.alg.dim, out, self.alg.field)


@dataclass(frozen=True)
class RightModuleAlgebra:
    """An algebra with a right action of a Hopf algebra, act[a][h][b]."""

    hopf: HopfAlgebra
    alg: StructureAlgebra
    act: Tensor3

    def __post_init__(self):
        if self.act.dims != (self.alg.dim, self.hopf.dim, self.alg.dim):
            raise ValueError("action tensor has wrong shape")
        if self.hopf.field != self.alg.field:
            raise ValueError("module algebra fields differ")

    def apply(self, avec: Vec, hvec: Vec) -> Vec:
        out: dict[int, Scalar] = {}
        for a, ca in avec.data.items():
            for h, ch in hvec.data.items():
                row = self.act.pairs.get((a, h))
                if row:
                    add_scaled(out, row, ca * ch)
        return Vec(self.alg.dim, out, self.alg.field)


@dataclass(frozen=True)
class BimoduleAlgebra:
    """Commuting left and right actions of one Hopf algebra on one algebra."""

    hopf: HopfAlgebra
    alg: StructureAlgebra
    left_act: Tensor3   # [h][a][b]
    right_act: Tensor3  # [a][h][b]

    def __post_init__(self):
        if self.left_act.dims != (self.hopf.dim, self.alg.dim, self.alg.dim):
            raise ValueError("left action tensor has wrong shape")
        if self.right_act.dims != (self.alg.dim, self.hopf.dim, self.alg.dim):
            raise ValueError("right action tensor has wrong shape")

    def apply_left(self, hvec: Vec, avec: Vec) -> Vec:
        out: dict[int, Scalar] = {}
        for h, ch in hvec.data.items():
            for a, ca in avec.data.items():
                row = self.left_act.pairs.get((h, a))
                if row:
                    add_scaled(out, row, ch * ca)
        return Vec(self.alg.dim, out, self.alg.field)

    def apply_right(self, avec: Vec, hvec: Vec) -> Vec:
        out: dict[int, Scalar] = {}
        for a, ca in avec.data.items():
            for h, ch in hvec.data.items():
                row = self.right_act.pairs.get((a, h))
                if row:
                    add_scaled(out, row, ca * ch)
        return Vec(self.alg.dim, out, self.alg.field)


# ---------------------------------------------------------------------------
# Checkers

def check_left_module_algebra(m: LeftModuleAlgebra) -> CheckReport:
    """All four left module-algebra axiom families on every basis tuple."""
    H, A = m.hopf, m.alg
    dH, dA = H.dim, A.dim
    field = A.field

    assoc = []
    for h1 in range(dH):
        for h2 in range(dH):
            prod = Vec(dH, dict(H.algebra.mult.row(h1, h2)), field)
            for a in range(dA):
                ea = A.basis(a)
                lhs = m.apply(prod, ea)
                rhs = m.apply(H.algebra.basis(h1), m.apply(H.algebra.basis(h2), ea))
                if lhs != rhs:
                    assoc.append((h1, h2, a))

    unital = []
    for a in range(dA):
        ea = A.basis(a)
        if m.apply(H.algebra.unit, ea) != ea:
            unital.append((a,))

    sweed = sweedler_columns(H, 2)
    multiplicative = []
    for h in range(dH):
        terms = sweed[h]
        eh = H.algebra.basis(h)
        for a in range(dA):
            ea = A.basis(a)
            for b in range(dA):
                eb = A.basis(b)
                lhs = m.apply(eh, A.mul(ea, eb))
                rhs = Vec.zeros(dA, field)
                for c, (t1, t2) in terms:
                    rhs = rhs + A.mul(m.apply(H.algebra.basis(t1), ea),
                                      m.apply(H.algebra.basis(t2), eb)).scaled(c)
                if lhs != rhs:
                    multiplicative.append((h, a, b))

    counital = []
    eps = H.coalgebra.counit
    for h in range(dH):
        lhs = m.apply(H.algebra.basis(h), A.unit)
        if lhs != A.unit.scaled(eps.get(h)):
            counital.append((h,))

    return CheckReport(
        f"left module-algebra axioms (H dim {dH} on A dim {dA}, {field})",
        (
            clause_from_witnesses("action-associative", assoc),
            clause_from_witnesses("action-unital", unital),
            clause_from_witnesses("action-multiplicative", multiplicative),
            clause_from_witnesses("action-counital", counital),
        ),
    )


def check_right_module_algebra(m: RightModuleAlgebra) -> CheckReport:
    H, A = m.hopf, m.alg
    dH, dA = H.dim, A.dim
    field = A.field

    assoc = []
    for a in range(dA):
        ea = A.basis(a)
        for h1 in range(dH):
            for h2 in range(dH):
                prod = Vec(dH, dict(H.algebra.mult.row(h1, h2)), field)
                lhs = m.apply(ea, prod)
                rhs = m.apply(m.apply(ea, H.algebra.basis(h1)), H.algebra.basis(h2))
                if lhs != rhs:
                    assoc.append((a, h1, h2))

    unital = [(a,) for a in range(dA)
              if m.apply(A.basis(a), H.algebra.unit) != A.basis(a)]

    sweed = sweedler_columns(H, 2)
    multiplicative = []
    for a in range(dA):
        ea = A.basis(a)
        for b in range(dA):
            eb = A.basis(b)
            ab = A.mul(ea, eb)
            for h in range(dH):
                lhs = m.apply(ab, H.algebra.basis(h))
                rhs = Vec.zeros(dA, field)
                for c, (t1, t2) in sweed[h]:
                    rhs = rhs + A.mul(m.apply(ea, H.algebra.basis(t1)),
                                      m.apply(eb, H.algebra.basis(t2))).scaled(c)
                if lhs != rhs:
                    multiplicative.append((a, b, h))

    eps = H.coalgebra.counit
    counital = []
    for h in range(dH):
        if m.apply(A.unit, H.algebra.basis(h)) != A.unit.scaled(eps.get(h)):
            counital.append((h,))

    return CheckReport(
        f"right module-algebra axioms (A dim {dA}, H dim {dH}, {field})",
        (
            clause_from_witnesses("action-associative", assoc),
            clause_from_witnesses("action-unital", unital),
            clause_from_witnesses("action-multiplicative", multiplicative),
            clause_from_witnesses("action-counital", counital),
        ),
        notes=(_RIGHT_CONVENTION_NOTE,),
    )


def check_bimodule_algebra(b: BimoduleAlgebra) -> CheckReport:
    """Left and right module-algebra axioms plus commuting of the two actions."""
    left = check_left_module_algebra(
        LeftModuleAlgebra(b.hopf, b.alg, b.left_act)).prefixed("left.")
    right = check_right_module_algebra(
        RightModuleAlgebra(b.hopf, b.alg, b.right_act)).prefixed("right.")

    commute = []
    dH, dA = b.hopf.dim, b.alg.dim
    for h1 in range(dH):
        eh1 = b.hopf.algebra.basis(h1)
        for a in range(dA):
            ea = b.alg.basis(a)
            la = b.apply_left(eh1, ea)
            for h2 in range(dH):
                eh2 = b.hopf.algebra.basis(h2)
                lhs = b.apply_right(la, eh2)
                rhs = b.apply_left(eh1, b.apply_right(ea, eh2))
                if lhs != rhs:
                    commute.append((h1, a, h2))

    report = CheckReport.merge(
        f"bimodule-algebra axioms (H dim {dH} on A dim {dA}, {b.alg.field})",
        [left, right],
        notes=(_RIGHT_CONVENTION_NOTE,),
    )
    clauses = report.clauses + (clause_from_witnesses("actions-commute", commute),)
    return CheckReport(report.title, clauses, (_RIGHT_CONVENTION_NOTE,))


# ---------------------------------------------------------------------------
# Constructions

def right_action_from_left(m: LeftModuleAlgebra) -> RightModuleAlgebra:
    """The right action a.h = S(h).a, carried by the opposite algebra."""
    H, A = m.hopf, m.alg
    dH, dA = H.dim, A.dim
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for h in range(dH):
        s_h = H.antipode.column(h)
        for a in range(dA):
            out: dict[int, Scalar] = {}
            for s_idx, c in s_h.data.items():
                row = m.act.pairs.get((s_idx, a))
                if row:
                    add_scaled(out, row, c)
            if out:
                pairs[(a, h)] = out
    act = Tensor3(dA, dH, dA, pairs, A.field)
    return RightModuleAlgebra(H, opposite(A), act)


def enveloping_bimodule_algebra(m: LeftModuleAlgebra) -> BimoduleAlgebra:
    """A (x) A^op as an H-bimodule algebra: h.(a (x) b).h' = h.a (x) S(h').b."""
    H, A = m.hopf, m.alg
    dH, dA = H.dim, A.dim
    right = right_action_from_left(m)
    env = tensor_algebra(A, opposite(A))

    left_pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (h, a), row in m.act.pairs.items():
        for a1 in range(dA):
            out = left_pairs.setdefault((h, a * dA + a1), {})
            for b, v in row.items():
                out[b * dA + a1] = v
    left_act = Tensor3(dH, dA * dA, dA * dA, left_pairs, A.field)

    right_pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (a1, h), row in right.act.pairs.items():
        for a0 in range(dA):
            out = right_pairs.setdefault((a0 * dA + a1, h), {})
            for b, v in row.items():
                out[a0 * dA + b] = v
    right_act = Tensor3(dA * dA, dH, dA * dA, right_pairs, A.field)

    return BimoduleAlgebra(H, env, left_act, right_act)


def regular_actions(h: HopfAlgebra) -> tuple[Tensor3, Tensor3]:
    """The two regular actions of H on its dual basis.

    Returns (harpoon_l, harpoon_r), both indexed [t][u][x]:
    harpoon_l[t][u][x] is the coefficient of delta_x in e_t -> delta_u, where
    (e_t -> f)(y) = f(y e_t); harpoon_r[t][u][x] is the coefficient of
    delta_x in delta_u <- e_t, where (f <- e_t)(y) = f(e_t y).
    """
    d = h.dim
    field = h.field
    lpairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    rpairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (x, t), row in h.algebra.mult.pairs.items():
        for u, v in row.items():
            lpairs.setdefault((t, u), {})[x] = v
    for (t, x), row in h.algebra.mult.pairs.items():
        for u, v in row.items():
            rpairs.setdefault((t, u), {})[x] = v
    return (Tensor3(d, d, d, lpairs, field), Tensor3(d, d, d, rpairs, field))


def hstar_module_algebra(h: HopfAlgebra) -> LeftModuleAlgebra:
    """The dual algebra H* as a left module algebra over H (x) H^op.

    The action is (x (x) y) . f = x -> f <- y through the two regular
    actions; its restriction to H (x) 1 is -> and to 1 (x) H^op is <-.
    """
    d = h.dim
    field = h.field
    acting = hopf_tensor(h, hopf_opposite(h))
    dual_alg = dual_hopf(h).algebra
    harpoon_l, harpoon_r = regular_actions(h)
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for t1 in range(d):
        for t2 in range(d):
            ht = t1 * d + t2
            for u in range(d):
                mid = harpoon_l.pairs.get((t1, u))
                if not mid:
                    continue
                out: dict[int, Scalar] = {}
                for y, c in mid.items():
                    row = harpoon_r.pairs.get((t2, y))
                    if row:
                        add_scaled(out, row, c)
                if out:
                    pairs[(ht, u)] = out
    act = Tensor3(d * d, d, d, pairs, field)
    return LeftModuleAlgebra(acting, dual_alg, act)
