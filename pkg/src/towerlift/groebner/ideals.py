"""Ideal-level operations in a polynomial ring built on Buchberger."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import ImproperIdeal
from ..polycore.poly import Polynomial, PolyRing
from .buchberger import GroebnerBasis, buchberger
from .orders import GREVLEX, TermOrder, block_order


def _nonzero(gens):
    out = [g for g in gens if g]
    return out


def groebner(gens: Sequence[Polynomial], order: TermOrder = GREVLEX, track=False, ring=None):
    """Groebner basis, treating the empty/zero ideal gracefully."""
    gens = list(gens)
    nz = _nonzero(gens)
    if not nz:
        R = ring or (gens[0].ring if gens else None)
        if R is None:
            raise ValueError("cannot infer the ring of an empty generator list")
        return GroebnerBasis(R, order, [], gens, [] if track else None, [])
    if track:
        # keep the caller's generator positions (zeros get zero cofactors)
        gb = buchberger(nz, order, track=True)
        idx = [i for i, g in enumerate(gens) if g]
        R = nz[0].ring
        cof = []
        for row in gb.cofactors:
            full = [R.zero] * len(gens)
            for j, c in zip(idx, row):
                full[j] = c
            cof.append(full)
        return GroebnerBasis(R, order, gb.polys, gens, cof, gb.lms)
    return buchberger(nz, order)


def with_extra_variable(ring: PolyRing, name: str = "w_"):
    """Ring with one extra variable appended, and the embedding index map."""
    ext = ring.extend([name])
    return ext, list(range(ring.nvars))


def elim_contract(gens: Sequence[Polynomial], eliminate: Sequence[int]) -> list[Polynomial]:
    """Generators of I intersected with the subring free of ``eliminate``."""
    gens = _nonzero(gens)
    if not gens:
        return []
    R = gens[0].ring
    elim = set(eliminate)
    if not elim:
        return list(groebner(gens).polys)
    gb = buchberger(gens, block_order(R.nvars, sorted(elim)))
    return [g for g in gb.polys if not (g.support() & elim)]


def saturate(gens: Sequence[Polynomial], u: Polynomial) -> list[Polynomial]:
    """Generators of I : u^infinity (one extra variable, then elimination)."""
    if not u:
        raise ValueError("cannot saturate at zero")
    gens = _nonzero(gens)
    if not gens:
        return []
    R = gens[0].ring
    if u.is_constant():
        return list(groebner(gens).polys)
    ext, _ = with_extra_variable(R)
    w = ext.gen(R.nvars)
    lifted = [g.change_ring(ext, range(R.nvars)) for g in gens]
    lifted.append(ext.one - w * u.change_ring(ext, range(R.nvars)))
    gb = buchberger(lifted, block_order(ext.nvars, [R.nvars]))
    keep = [g for g in gb.polys if g.degree(R.nvars) == 0]
    return [g.change_ring(R, list(range(R.nvars)) + [0]) for g in keep]


def radical_member(p: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """p in sqrt(I) iff 1 in I + (1 - w p) (Rabinowitsch)."""
    R = p.ring
    if not p:
        return True
    ext, _ = with_extra_variable(R)
    w = ext.gen(R.nvars)
    lifted = [g.change_ring(ext, range(R.nvars)) for g in _nonzero(gens)]
    lifted.append(ext.one - w * p.change_ring(ext, range(R.nvars)))
    return buchberger(lifted).is_unit()


def ideal_equal(I: Sequence[Polynomial], J: Sequence[Polynomial]) -> bool:
    """Mutual membership of generators."""
    I, J = _nonzero(I), _nonzero(J)
    if not I or not J:
        return not I and not J
    gi, gj = buchberger(I), buchberger(J)
    return all(gj.contains(g) for g in I) and all(gi.contains(g) for g in J)


def max_independent_set(lms: Sequence[tuple], nvars: int) -> tuple[int, ...]:
    """Largest variable set U with no leading monomial supported inside U."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return U
    raise ImproperIdeal("the unit ideal has no independent set")


def dimension_height(gens: Sequence[Polynomial], ring: PolyRing | None = None) -> tuple[int, int]:
    """(Krull dimension of S/I, height of I) from grevlex leading terms."""
    gens = list(gens)
    R = ring or gens[0].ring
    nz = _nonzero(gens)
    if not nz:
        return R.nvars, 0
    gb = buchberger(nz)
    if gb.is_unit():
        raise ImproperIdeal("dimension of the unit ideal is undefined")
    dim = len(max_independent_set(gb.lms, R.nvars))
    return dim, R.nvars - dim
