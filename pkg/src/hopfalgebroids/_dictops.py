"""Internal helpers for sparse coefficient dicts (index -> nonzero scalar).

The bilinear expansions that build product algebras run over these raw dicts
rather than Vec wrappers; zero results are dropped on write so the dicts stay
canonical.
"""

from __future__ import annotations


def add_scaled(acc: dict, d: dict, c) -> None:
    """acc += c * d, in place."""
    if c == 0:
        return
    for k, v in d.items():
        s = acc.get(k)
        s = c * v if s is None else s + c * v
        if s == 0:
            acc.pop(k, None)
        else:
            acc[k] = s


def mul_rows(rows: dict, u: dict, v: dict) -> dict:
    """Bilinear product of coefficient dicts through structure-constant rows.

    ``rows`` maps (i, j) to the coefficient dict of e_i * e_j.
    """
    acc: dict = {}
    for i, cu in u.items():
        for j, cv in v.items():
            row = rows.get((i, j))
            if row:
                add_scaled(acc, row, cu * cv)
    return acc


def kron_into(acc: dict, u: dict, v: dict, n2: int, c) -> None:
    """acc += c * (u tensor v), with row-major pair flattening by n2."""
    if c == 0:
        return
    for i, cu in u.items():
        base = i * n2
        w = c * cu
        if w == 0:
            continue
        for j, cv in v.items():
            k = base + j
            s = acc.get(k)
            s = w * cv if s is None else s + w * cv
            if s == 0:
                acc.pop(k, None)
            else:
                acc[k] = s
