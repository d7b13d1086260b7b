"""Buchberger's algorithm with optional cofactor tracking.

Pairs are selected by sugar degree, then by the order on their lcm, then by
index, and pruned with the Gebauer-Moeller criteria, so the output is a
deterministic function of the input list and the order.  Sugar keeps
elimination orders from wandering into huge intermediate degrees.
"""

from __future__ import annotations

import heapq

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import DomainError
from ..polycore.poly import Polynomial, PolyRing
from .orders import GREVLEX, TermOrder


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _axpy(acc: dict, c, shift, terms: dict, p: int):
    """acc -= c * x^shift * terms (in place)."""
    get = acc.get
    for m, v in terms.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        w = get(mm, 0) - c * v
        if p:
            w %= p
        if w:
            acc[mm] = w
        else:
            acc.pop(mm, None)


def _add_term(acc: dict, shift, c, p: int):
    w = acc.get(shift, 0) + c
    if p:
        w %= p
    if w:
        acc[shift] = w
    else:
        acc.pop(shift, None)


class _Reducer:
    """Full reduction of dict polynomials by a list of monic dict polynomials."""

    def __init__(self, ring: PolyRing, order: TermOrder):
        self.ring = ring
        self.p = ring.field.p
        base = order.key
        cache: dict = {}
        ncache: dict = {}

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = base(m)
            return k

        def nkey(m):
            k = ncache.get(m)
            if k is None:
                k = ncache[m] = tuple(-x for x in key(m))
            return k

        self.key = key
        self.nkey = nkey

    def lead(self, terms: dict):
        return max(terms, key=self.key)

    def reduce(self, terms: dict, basis: Sequence[tuple], track: bool = False):
        """Return (remainder, quotients) with quotients {basis index: dict}."""
        p = self.p
        nkey = self.nkey
        work = dict(terms)
        heap = [(nkey(m), m) for m in work]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        rem: dict = {}
        quots: dict[int, dict] = {}
        while heap:
            _, lm = pop(heap)
            c = work.get(lm)
            if c is None:
                continue  # cancelled, or a duplicate heap entry
            for idx, (g, glm) in enumerate(basis):
                if _divides(glm, lm):
                    shift = _sub(lm, glm)
                    get = work.get
                    for m, v in g.items():
                        mm = tuple(x + y for x, y in zip(m, shift))
                        old = get(mm)
                        w = (0 if old is None else old) - c * v
                        if p:
                            w %= p
                        if w:
                            work[mm] = w
                            if old is None:
                                push(heap, (nkey(mm), mm))
                        elif old is not None:
                            del work[mm]
                    if track:
                        _add_term(quots.setdefault(idx, {}), shift, c, p)
                    break
            else:
                rem[lm] = c
                del work[lm]
        return rem, quots


def _normalize(terms: dict, lm, K):
    lc = terms[lm]
    if K.is_one(lc):
        return terms, K.one
    inv = K.inv(lc)
    p = K.p
    if p:
        return {m: c * inv % p for m, c in terms.items()}, inv
    return {m: c * inv for m, c in terms.items()}, inv


def _scale_dict(terms: dict, c, p: int) -> dict:
    if p:
        return {m: v * c % p for m, v in terms.items() if v * c % p}
    return {m: v * c for m, v in terms.items()}


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis, optionally with cofactors over the inputs.

    ``cofactors[k][j]`` is the coefficient of ``gens[j]`` in ``polys[k]``.
    """

    ring: PolyRing
    order: TermOrder
    polys: list[Polynomial]
    gens: list[Polynomial]
    cofactors: list[list[Polynomial]] | None = None
    lms: list[tuple] = field(default_factory=list)

    def __post_init__(self):
        if not self.lms:
            key = self.order.key
            self.lms = [max(g.terms, key=key) for g in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def _basis(self):
        return [(g.terms, lm) for g, lm in zip(self.polys, self.lms)]

    def reduce(self, p: Polynomial, track: bool = False):
        """Normal form of p; with track=True also cofactors over ``gens``.

        The cofactors q satisfy p - NF(p) = sum_j q[j] * gens[j].
        """
        if p.ring != self.ring:
            raise DomainError("polynomial and basis live in different rings")
        red = _Reducer(self.ring, self.order)
        rem, quots = red.reduce(p.terms, self._basis(), track)
        r = Polynomial(self.ring, rem)
        if not track:
            return r, None
        if self.cofactors is None:
            raise ValueError("basis was computed without cofactor tracking")
        R = self.ring
        cof = [R.zero for _ in self.gens]
        for k, q in quots.items():
            qp = Polynomial(R, q)
            for j, c in enumerate(self.cofactors[k]):
                if c:
                    cof[j] = cof[j] + qp * c
        return r, cof

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)[0]

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "basis": [str(g) for g in self.polys]}


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder = GREVLEX,
    track: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    R = gens[0].ring
    for g in gens:
        if g.ring != R:
            raise DomainError("generators live in different rings")
    K = R.field
    p = K.p
    ngens = len(gens)
    red = _Reducer(R, order)
    key = red.key

    polys: list[dict] = []
    sugar: list[int] = []
    lms: list[tuple] = []
    cofs: list[list[dict]] = []  # cofs[k][j]: dict coefficient of gens[j]
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()

    def unit_cof(j):
        row = [{} for _ in range(ngens)]
        row[j] = {(0,) * R.nvars: K.one}
        return row

    def neg(c):
        return (p - c) % p if p else -c

    def combine(rows_with_mult):
        """sum of coef * x^shift * row over (shift, coef, row)."""
        out = [{} for _ in range(ngens)]
        for shift, c, row in rows_with_mult:
            for j in range(ngens):
                if row[j]:
                    _axpy(out[j], neg(c), shift, row[j], p)
        return out

    def add_poly(terms, cof, sug):
        sugar.append(sug)
        lm = red.lead(terms)
        terms, inv = _normalize(terms, lm, K)
        if track and not K.is_one(inv):
            cof = [_scale_dict(c, inv, p) for c in cof]
        polys.append(terms)
        lms.append(lm)
        cofs.append(cof if track else None)
        update(len(polys) - 1)

    def update(h):
        nonlocal active, pairs
        lh = lms[h]
        cands = [(g, _lcm(lh, lms[g])) for g in active]
        chosen = []
        for idx, (g1, l1) in enumerate(cands):
            if _disjoint(lh, lms[g1]):
                chosen.append((g1, l1))
                continue
            rest = cands[idx + 1:]
            if any(_divides(l2, l1) for _, l2 in rest) or any(
                _divides(l2, l1) for _, l2 in chosen
            ):
                continue
            chosen.append((g1, l1))
        new_pairs = {(g, h) for g, _ in chosen if not _disjoint(lh, lms[g])}
        old = set()
        for (a, b) in pairs:
            l = _lcm(lms[a], lms[b])
            if (
                _divides(lh, l)
                and _lcm(lms[a], lh) != l
                and _lcm(lms[b], lh) != l
            ):
                continue
            old.add((a, b))
        pairs = old | new_pairs
        active = [g for g in active if not _divides(lh, lms[g])] + [h]

    for j, g in enumerate(gens):
        if not g:
            continue
        rem, quots = red.reduce(g.terms, [(polys[k], lms[k]) for k in active], track)
        if not rem:
            continue
        cof = None
        if track:
            cof = unit_cof(j)
            sub = combine(
                [(m, neg(c), cofs[active[k]]) for k, q in quots.items() for m, c in q.items()]
            )
            cof = [_merge(cof[i], sub[i], p) for i in range(ngens)]
        add_poly(rem, cof, g.total_degree())

    def pair_key(ij):
        i, j = ij
        l = _lcm(lms[i], lms[j])
        sug = max(sugar[i] + sum(l) - sum(lms[i]), sugar[j] + sum(l) - sum(lms[j]))
        return (sug, key(l), ij)

    while pairs:
        sug, _, (i, j) = min(map(pair_key, pairs))
        pairs.discard((i, j))
        l = _lcm(lms[i], lms[j])
        si, sj = _sub(l, lms[i]), _sub(l, lms[j])
        s: dict = {}
        _axpy(s, K(-1) if not p else p - 1, si, polys[i], p)
        _axpy(s, K.one, sj, polys[j], p)
        if not s:
            continue
        basis_idx = list(active)
        rem, quots = red.reduce(s, [(polys[k], lms[k]) for k in basis_idx], track)
        if not rem:
            continue
        cof = None
        if track:
            minus_one = p - 1 if p else K(-1)
            terms = [(si, K.one, cofs[i]), (sj, minus_one, cofs[j])]
            terms += [
                (m, neg(c), cofs[basis_idx[k]])
                for k, q in quots.items()
                for m, c in q.items()
            ]
            cof = combine(terms)
        add_poly(rem, cof, sug)

    # minimal basis
    act = sorted(active, key=lambda k: key(lms[k]))
    minimal = []
    for k in act:
        if not any(_divides(lms[g], lms[k]) for g in minimal):
            minimal.append(k)
    # interreduce
    out_polys, out_lms, out_cofs = [], [], []
    for k in minimal:
        others = [(polys[g], lms[g]) for g in minimal if g != k]
        head = {lms[k]: polys[k][lms[k]]}
        tail = {m: c for m, c in polys[k].items() if m != lms[k]}
        rem, quots = red.reduce(tail, others, track)
        rem.update(head)
        out_polys.append(Polynomial(R, rem))
        out_lms.append(lms[k])
        if track:
            others_idx = [g for g in minimal if g != k]
            sub = combine(
                [
                    (m, neg(c), cofs[others_idx[i]])
                    for i, q in quots.items()
                    for m, c in q.items()
                ]
            )
            out_cofs.append(
                [Polynomial(R, _merge(cofs[k][jj], sub[jj], p)) for jj in range(ngens)]
            )
    return GroebnerBasis(
        R, order, out_polys, gens, out_cofs if track else None, out_lms
    )


def _merge(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        _add_term(out, m, c, p)
    return out


def normal_form(p: Polynomial, gb: GroebnerBasis, track: bool = False):
    """NF(p) w.r.t. gb; with track=True returns (NF, cofactors over gb.gens)."""
    r, cof = gb.reduce(p, track)
    return (r, cof) if track else r
