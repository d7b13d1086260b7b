"""Independent membership oracle by exact linear algebra.

Decides whether p = sum_i q_i g_i with deg q_i <= bound by solving the linear
system on the coefficients of the q_i.  Nothing here touches Groebner bases.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

import flint

from ..polycore.poly import Polynomial

UNKNOWN = "unknown"


def monomials_up_to(nvars: int, degree: int) -> list[tuple]:
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def oracle_member(p: Polynomial, gens: Sequence[Polynomial], degree_bound: int):
    """True if a certificate of degree <= degree_bound exists, else "unknown"."""
    R = p.ring
    K = R.field
    if not p:
        return True
    gens = [g for g in gens if g]
    if not gens:
        return UNKNOWN
    cols = []  # each column: dict monomial -> coefficient of m * g
    for g in gens:
        for m in monomials_up_to(R.nvars, degree_bound):
            cols.append({tuple(a + b for a, b in zip(m, gm)): c for gm, c in g.terms.items()})
    rows = {}
    for col in cols:
        for m in col:
            rows.setdefault(m, len(rows))
    for m in p.terms:
        if m not in rows:
            return UNKNOWN
    nrows, ncols = len(rows), len(cols)
    if K.p:
        A = flint.nmod_mat(nrows, ncols + 1, K.p)
    else:
        A = flint.fmpq_mat(nrows, ncols + 1)
    for j, col in enumerate(cols):
        for m, c in col.items():
            A[rows[m], j] = _conv(c, K)
    for m, c in p.terms.items():
        A[rows[m], ncols] = _conv(c, K)
    E, rank = A.rref()
    # inconsistent iff some pivot sits in the augmented column
    for i in range(rank):
        lead = next(j for j in range(ncols + 1) if E[i, j] != 0)
        if lead == ncols:
            return UNKNOWN
    return True


def _conv(c, K):
    if K.p:
        return int(c)
    return flint.fmpq(int(c.numerator), int(c.denominator))
