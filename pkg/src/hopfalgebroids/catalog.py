"""Concrete finite-dimensional instances used by the tests and demos.

Group algebras (with their grouplike Hopf structure), function algebras with
translation actions, the 4-dimensional Hopf algebra with nilpotent generator
and non-involutive antipode, matrix algebras for noncommutative smoke tests,
and the trivial one-dimensional cases.

The default prime field is GF(7): odd characteristic keeps the sign structure
of the 4-dimensional example intact, and 7 exceeds every denominator that
occurs in catalog structure constants.
"""

from __future__ import annotations

from itertools import permutations

from .actions import LeftModuleAlgebra
from .algebra import Coalgebra, HopfAlgebra, StructureAlgebra
from .fields import GF, QQ, FieldSpec, Scalar
from .linalg import Matrix, Tensor3, Vec

DEFAULT_PRIME = 7


class NotAGroup(Exception):
    """Raised when a claimed multiplication table is not a group table."""


def _validate_group(cayley: list[list[int]]) -> tuple[int, list[int]]:
    """Return (identity index, inverse list) or raise :class:`NotAGroup`."""
    n = len(cayley)
    for row in cayley:
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise NotAGroup("table is not square over 0..n-1")
    identity = None
    for e in range(n):
        if all(cayley[e][x] == x and cayley[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity element")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if cayley[cayley[i][j]][k] != cayley[i][cayley[j][k]]:
                    raise NotAGroup(f"associativity fails at ({i}, {j}, {k})")
    inverses = []
    for i in range(n):
        inv = [j for j in range(n) if cayley[i][j] == identity and cayley[j][i] == identity]
        if len(inv) != 1:
            raise NotAGroup(f"element {i} has no unique inverse")
        inverses.append(inv[0])
    return identity, inverses


def group_algebra(cayley: list[list[int]], inverses: list[int] | None = None,
                  field: FieldSpec = QQ,
                  labels: tuple[str, ...] | None = None) -> HopfAlgebra:
    """Group algebra kG with grouplike coproduct, counit 1 and antipode g -> g^-1."""
    identity, derived_inv = _validate_group(cayley)
    if inverses is not None and list(inverses) != derived_inv:
        raise NotAGroup("supplied inverse list does not match the table")
    inverses = derived_inv
    n = len(cayley)
    if labels is None:
        labels = tuple(f"g{i}" for i in range(n))
    one = field.one
    mult = Tensor3(n, n, n, {(i, j): {cayley[i][j]: one}
                             for i in range(n) for j in range(n)}, field)
    unit = Vec.basis(n, identity, field)
    algebra = StructureAlgebra(field, n, labels, mult, unit)
    comult = Tensor3(n, n, n, {(i, i): {i: one} for i in range(n)}, field)
    counit = Vec(n, {i: one for i in range(n)}, field)
    coalgebra = Coalgebra(field, n, comult, counit)
    antipode = Matrix.from_entries(n, n, {(inverses[i], i): one for i in range(n)}, field)
    return HopfAlgebra(algebra, coalgebra, antipode, antipode)


def trivial_hopf(field: FieldSpec = QQ) -> HopfAlgebra:
    """The ground field as a one-dimensional Hopf algebra."""
    return group_algebra([[0]], field=field, labels=("1",))


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_3() -> tuple[list[list[int]], tuple[str, ...], list[int]]:
    """Cayley table of the permutations of three points, with labels and parities.

    Elements are ordered lexicographically as permutation tuples; composition
    is (s*t)(x) = s(t(x)).
    """
    elems = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in elems] for p in elems]
    labels = tuple("".join(str(x) for x in p) for p in elems)
    parities = []
    for p in elems:
        swaps = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        parities.append(swaps % 2)
    return table, labels, parities


def function_algebra(cayley: list[list[int]], field: FieldSpec = QQ,
                     labels: tuple[str, ...] | None = None) -> StructureAlgebra:
    """Pointwise function algebra k^G on the index set of a group table."""
    n = len(cayley)
    if labels is None:
        labels = tuple(f"d{i}" for i in range(n))
    one = field.one
    mult = Tensor3(n, n, n, {(i, i): {i: one} for i in range(n)}, field)
    unit = Vec(n, {i: one for i in range(n)}, field)
    return StructureAlgebra(field, n, labels, mult, unit)


def function_algebra_with_translation(cayley: list[list[int]],
                                      field: FieldSpec = QQ) -> LeftModuleAlgebra:
    """k^G with kG acting by translation: g . delta_x = delta_{gx}."""
    hopf = group_algebra(cayley, field=field)
    alg = function_algebra(cayley, field=field)
    n = len(cayley)
    one = field.one
    act = Tensor3(n, n, n, {(g, x): {cayley[g][x]: one}
                            for g in range(n) for x in range(n)}, field)
    return LeftModuleAlgebra(hopf, alg, act)


def translation_action_via_hom(acting_cayley: list[list[int]],
                               target_cayley: list[list[int]],
                               hom: list[int],
                               field: FieldSpec = QQ) -> LeftModuleAlgebra:
    """k^G' as a module algebra over kG through a group homomorphism G -> G'."""
    na, nt = len(acting_cayley), len(target_cayley)
    if len(hom) != na or any(not 0 <= h < nt for h in hom):
        raise NotAGroup("homomorphism list has wrong shape")
    for i in range(na):
        for j in range(na):
            if hom[acting_cayley[i][j]] != target_cayley[hom[i]][hom[j]]:
                raise NotAGroup(f"not a homomorphism at ({i}, {j})")
    hopf = group_algebra(acting_cayley, field=field)
    alg = function_algebra(target_cayley, field=field)
    one = field.one
    act = Tensor3(na, nt, nt, {(g, x): {target_cayley[hom[g]][x]: one}
                               for g in range(na) for x in range(nt)}, field)
    return LeftModuleAlgebra(hopf, alg, act)


def sign_action_module_algebra(field: FieldSpec = QQ) -> LeftModuleAlgebra:
    """k^C2 as a module algebra over the dim-6 group algebra, via parity."""
    table, _labels, parities = symmetric_group_3()
    return translation_action_via_hom(table, cyclic_table(2), parities, field)


def sweedler_h4(field: FieldSpec = QQ) -> HopfAlgebra:
    """The 4-dimensional Hopf algebra k<g, x>/(g^2-1, x^2, xg+gx).

    Basis (1, g, x, gx). The coproduct sends g to g(x)g and x to
    x(x)1 + g(x)x; the antipode fixes 1 and g and sends x to -gx, so its
    square is conjugation by g and the algebra is not involutive.
    """
    one = field.one
    labels = ("1", "g", "x", "gx")
    # indices: 0 = 1, 1 = g, 2 = x, 3 = gx
    entries = {
        (0, 0): {0: one}, (0, 1): {1: one}, (0, 2): {2: one}, (0, 3): {3: one},
        (1, 0): {1: one}, (1, 1): {0: one}, (1, 2): {3: one}, (1, 3): {2: one},
        (2, 0): {2: one}, (2, 1): {3: -one},
        (3, 0): {3: one}, (3, 1): {2: -one},
    }
    mult = Tensor3(4, 4, 4, entries, field)
    algebra = StructureAlgebra(field, 4, labels, mult, Vec.basis(4, 0, field))
    comult_entries = {
        (0, 0): {0: one},
        (1, 1): {1: one},
        (2, 2): {0: one},
        (2, 1): {2: one},
        (3, 3): {1: one},
        (3, 0): {3: one},
    }
    comult = Tensor3(4, 4, 4, comult_entries, field)
    counit = Vec(4, {0: one, 1: one}, field)
    coalgebra = Coalgebra(field, 4, comult, counit)
    antipode = Matrix.from_entries(4, 4, {(0, 0): one, (1, 1): one,
                                          (3, 2): -one, (2, 3): one}, field)
    antipode_inv = Matrix.from_entries(4, 4, {(0, 0): one, (1, 1): one,
                                              (3, 2): one, (2, 3): -one}, field)
    return HopfAlgebra(algebra, coalgebra, antipode, antipode_inv)


def sweedler_module_algebra(field: FieldSpec = QQ) -> LeftModuleAlgebra:
    """k[y]/(y^2) acted on by the dim-4 Hopf algebra: g.y = -y, x.y = 1."""
    hopf = sweedler_h4(field)
    one = field.one
    labels = ("1", "y")
    mult = Tensor3(2, 2, 2, {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}, field)
    alg = StructureAlgebra(field, 2, labels, mult, Vec.basis(2, 0, field))
    act_entries = {
        (0, 0): {0: one}, (0, 1): {1: one},        # 1 acts as identity
        (1, 0): {0: one}, (1, 1): {1: -one},       # g
        (2, 1): {0: one},                          # x: y -> 1, 1 -> 0
        (3, 1): {0: one},                          # gx: y -> 1
    }
    act = Tensor3(4, 2, 2, act_entries, field)
    return LeftModuleAlgebra(hopf, alg, act)


def trivial_module_algebra(hopf: HopfAlgebra, alg: StructureAlgebra) -> LeftModuleAlgebra:
    """The counit action h.a = eps(h) a."""
    dH, dA = hopf.dim, alg.dim
    eps = hopf.coalgebra.counit
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for h in range(dH):
        c = eps.data.get(h)
        if c is None:
            continue
        for a in range(dA):
            pairs[(h, a)] = {a: c}
    return LeftModuleAlgebra(hopf, alg, Tensor3(dH, dA, dA, pairs, alg.field))


def trivial_pair(field: FieldSpec = QQ) -> LeftModuleAlgebra:
    """The fully degenerate instance: the ground field acting on itself."""
    h = trivial_hopf(field)
    return trivial_module_algebra(h, h.algebra)


def full_matrix_algebra(n: int, field: FieldSpec = QQ) -> StructureAlgebra:
    """The algebra of n x n matrices on the matrix-unit basis (row-major)."""
    one = field.one
    labels = tuple(f"E{i}{j}" for i in range(n) for j in range(n))
    entries: dict[tuple[int, int, int], Scalar] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # E_ij E_jk = E_ik
                entries[(i * n + j, j * n + k, i * n + k)] = one
    mult = Tensor3(n * n, n * n, n * n, _group_entries(entries), field)
    unit = Vec(n * n, {i * n + i: one for i in range(n)}, field)
    return StructureAlgebra(field, n * n, labels, mult, unit)


def upper_triangular_matrix_algebra(n: int, field: FieldSpec = QQ) -> StructureAlgebra:
    """Upper-triangular n x n matrices; the smallest algebra not equal to its opposite."""
    one = field.one
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: q for q, p in enumerate(positions)}
    labels = tuple(f"E{i}{j}" for i, j in positions)
    d = len(positions)
    entries: dict[tuple[int, int, int], Scalar] = {}
    for (i, j) in positions:
        for (k, l) in positions:
            if j == k:
                entries[(index[(i, j)], index[(k, l)], index[(i, l)])] = one
    mult = Tensor3(d, d, d, _group_entries(entries), field)
    unit = Vec(d, {index[(i, i)]: one for i in range(n)}, field)
    return StructureAlgebra(field, d, labels, mult, unit)


def _group_entries(entries: dict[tuple[int, int, int], Scalar]) -> dict:
    pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (i, j, k), v in entries.items():
        pairs.setdefault((i, j), {})[k] = v
    return pairs


def all_instances(fields: tuple[FieldSpec, ...] = (QQ, GF(DEFAULT_PRIME)),
                  ) -> list[tuple[LeftModuleAlgebra, str]]:
    """The module-algebra instances every verification should hold on.

    Covers the degenerate pair, the involutive translation family, the sign
    action (involutive with a genuinely smaller target), and the
    non-involutive dim-4 example, each over every requested field.
    """
    out: list[tuple[LeftModuleAlgebra, str]] = []
    for field in fields:
        out.append((trivial_pair(field), f"A=k, H=k over {field}"))
        out.append((function_algebra_with_translation(cyclic_table(2), field=field),
                    f"A=k^C2, H=kC2 over {field}"))
        table, _, _ = symmetric_group_3()
        out.append((function_algebra_with_translation(table, field=field),
                    f"A=k^S3, H=kS3 over {field}"))
        out.append((sweedler_module_algebra(field),
                    f"A=k[y]/(y^2), H=H4 over {field}"))
        out.append((sign_action_module_algebra(field),
                    f"A=k^C2, H=kS3 (parity action) over {field}"))
    return out
