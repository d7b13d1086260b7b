"""Normalization automorphisms and their certified witnesses.

Three searches are provided, one per automorphism family:

* ``suslin_monicize``: x_i -> x_i + v^{s_i}, making the ideal contain a
  polynomial monic in v;
* ``laurent_monicize``: x_i -> x_i + y_n^{t_i} + y_n^{-t'_i},
  y_j -> y_j y_n^{l_j}, making the ideal contain 1 + y_n h monic in y_n;
* ``combined_normalize``: x_i -> x_i + t^{t_i} + f^{-s_i}, y_j -> y_j f^{l_j},
  making the ideal contain a polynomial monic in t and an element 1 + f h.

Each search tries the identity first, then a single parameter N = 1, 2, ...
with exponents N, N+1, ... assigned to consecutive variables.  Distinct
exponents matter: with equal ones, x_1 - x_2 is fixed by every map.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded, HeightTooSmall, ImproperIdeal, LevelMismatch, Unsupported
from .groebner.ideals import groebner
from .groebner.orders import GREVLEX, block_order
from .polycore.element import Element
from .polycore.poly import Polynomial
from .tower import (
    Automorphism,
    IdealHandle,
    RingTower,
    _eval_w,
    apply_automorphism,
    combined_automorphism,
    contract_ideal,
    height_at_level,
    laurent_automorphism,
    suslin_automorphism,
)

DEFAULT_MAX_EXPONENT = 12


# -- low-level certificates ---------------------------------------------------


def unit_combination(T: RingTower, polys: Sequence[Polynomial], inv: Polynomial) -> list[Element] | None:
    """Cofactors c with 1 = sum c_i polys_i in S[1/inv], or None if impossible.

    The c_i have only powers of ``inv`` in their denominators.
    """
    R = T.ring
    polys = list(polys)
    if not any(polys):
        return None
    if inv.is_constant():
        gb = groebner(polys, GREVLEX, track=True, ring=R)
        if not gb.is_unit():
            return None
        rem, cof = gb.reduce(R.one, track=True)
        return [Element(T, c) for c in cof]
    ext = R.extend(["w_"])
    w = ext.gen(R.nvars)
    emb = list(range(R.nvars))
    lifted = [p.change_ring(ext, emb) for p in polys]
    lifted.append(ext.one - w * inv.change_ring(ext, emb))
    gb = groebner(lifted, GREVLEX, track=True, ring=ext)
    if not gb.is_unit():
        return None
    _, cof = gb.reduce(ext.one, track=True)
    inv_e = Element(T, R.one) / Element(T, inv)
    return [_eval_w(c, inv_e, T) for c in cof[:-1]]


def _inverted_y(I: IdealHandle) -> Polynomial:
    T = I.tower
    p = T.ring.one
    for i in I.level.inverted_y:
        p = p * T.ring.gen(i)
    return p


def _is_coefficient_unit(c: Polynomial, I: IdealHandle) -> bool:
    """Scalar times a monomial in the inverted Laurent variables."""
    if len(c.terms) != 1:
        return False
    (m,) = c.terms
    inv = set(I.level.inverted_y)
    return all(e == 0 or i in inv for i, e in enumerate(m))


def _var_index(T: RingTower, v) -> int:
    return v if isinstance(v, int) else T.ring.index(v)


def leading_coefficient(e: Element, v) -> Element:
    coeffs = e.coefficients_in(v)
    return coeffs[max(coeffs)]


def _unit_led(polys, vi: int, I: IdealHandle) -> Element | None:
    best = None
    for g in polys:
        e = g.degree(vi)
        if e <= 0:
            continue
        c = g.coefficients_in(vi)[e]
        if _is_coefficient_unit(c, I):
            key = (e, len(g.terms), str(g))
            if best is None or key < best[0]:
                best = (key, g, c)
    if best is None:
        return None
    _, g, c = best
    return Element(I.tower, g) / Element(I.tower, c)


def contains_monic(I: IdealHandle, v) -> Element | None:
    """An element of I monic in v (leading coefficient exactly 1), or None.

    The leading v-coefficients of a Groebner basis for a v-first block order
    generate the ideal of all leading v-coefficients; a monic element exists
    iff that ideal contains a unit of the coefficient ring.
    """
    T = I.tower
    vi = _var_index(T, v)
    if vi not in I.level.variables or vi in I.level.inverted_y:
        raise LevelMismatch(f"{T.ring.names[vi]} is not a polynomial variable at level {I.level.name}")
    pre = I.preimage()
    if not pre:
        return None
    # a grevlex basis element with a unit leading coefficient is a witness
    # already; only otherwise pay for the elimination-style block order
    found = _unit_led(I.gb(GREVLEX).polys, vi, I)
    if found is not None:
        return found
    gb = I.gb(block_order(T.ring.nvars, [vi]))
    polys = list(gb.polys)
    found = _unit_led(polys, vi, I)
    if found is not None:
        return found
    degs = [g.degree(vi) for g in polys]
    lcs = [g.coefficients_in(vi)[e] for g, e in zip(polys, degs)]
    cands = [(g, e, c) for g, e, c in zip(polys, degs, lcs) if e > 0]
    if not cands:
        return None
    cof = unit_combination(T, [c for _, _, c in cands], _inverted_y(I))
    if cof is None:
        return None
    # clear the y-denominators: Y^K = sum c'_i lc_i with polynomial c'_i
    K = max(c.a for c in cof)
    E = max(e for (_, e, _), c in zip(cands, cof) if c)
    R = T.ring
    W = R.zero
    for (g, e, _), c in zip(cands, cof):
        if not c:
            continue
        cp = c.num * T.ypow(K - c.a)
        shift = [0] * R.nvars
        shift[vi] = E - e
        W = W + cp.mul_term(tuple(shift), T.field.one) * g
    w = Element(T, W)
    return w / leading_coefficient(w, vi)


def contains_unit_shift(I: IdealHandle, v) -> Element | None:
    """h with 1 + v*h in I, or None.

    Decided by 1 in K + (v) where K is I contracted to the ring in which only
    the Laurent variables of the level are inverted (f never is), so h has
    no f in its denominator.
    """
    T = I.tower
    v = T.element(v)
    if not v.is_polynomial():
        raise LevelMismatch("the shift element must be a polynomial")
    pre = I.preimage()
    cof = unit_combination(T, list(pre) + [v.num], _inverted_y(I))
    if cof is None:
        return None
    return -cof[-1]


# -- witnesses ----------------------------------------------------------------


@dataclass
class NormalizationWitness:
    """An automorphism with the certified witnesses it produced."""

    automorphism: Automorphism
    ideal: IdealHandle
    image: IdealHandle
    monic: Element | None = None
    monic_var: str | None = None
    unit_shift_v: str | None = None
    unit_shift_h: Element | None = None
    flags: dict = field(default_factory=dict)
    attempts: int = 1

    @property
    def unit_shift(self) -> Element | None:
        if self.unit_shift_h is None:
            return None
        T = self.ideal.tower
        v = T.f_element if self.unit_shift_v == "f" else T.var(self.unit_shift_v)
        return 1 + v * self.unit_shift_h

    def cofactors(self) -> dict:
        """Representations of the witnesses over the generators of the image."""
        out = {}
        if self.monic is not None:
            out["monic"] = self.image.express(self.monic)
        if self.unit_shift_h is not None:
            out["unit_shift"] = self.image.express(self.unit_shift)
        return out

    def verify(self) -> bool:
        """Independent re-check: fresh normal-form membership and shape."""
        img = IdealHandle(self.image.tower, self.image.level.name, self.image.generators)
        if self.monic is not None:
            if not img.contains(self.monic):
                return False
            if leading_coefficient(self.monic, self.monic_var) != 1:
                return False
        if self.unit_shift_h is not None:
            if not img.contains(self.unit_shift):
                return False
            if self.unit_shift_h.b:
                return False
        return True

    def to_json(self, with_cofactors: bool = False) -> dict:
        out = {"automorphism": self.automorphism.to_json(), "attempts": self.attempts}
        if self.monic is not None:
            out["monic"] = str(self.monic)
            out["monic_var"] = self.monic_var
        if self.unit_shift_h is not None:
            out["unit_shift"] = {
                "v": self.unit_shift_v,
                "h": str(self.unit_shift_h),
                "element": str(self.unit_shift),
            }
        if self.flags:
            out["flags"] = dict(self.flags)
        if with_cofactors:
            out["cofactors"] = {k: [str(c) for c in v] for k, v in self.cofactors().items()}
        return out


# -- search scaffolding ----------------------------------------------------------


def staggered(N: int, count: int) -> list[int]:
    return [N + i if N else 0 for i in range(count)]


class _Clock:
    def __init__(self, budget_ms: int | None, stage: str):
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self.stage = stage

    def check(self, last):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"{self.stage}: time budget exhausted", stage=self.stage, last=last)


def _require_height(I: IdealHandle, what: str):
    T = I.tower
    if not I.is_proper():
        raise ImproperIdeal(f"{what}: the ideal is the unit ideal")
    h = height_at_level(I)
    if h <= T.d:
        raise HeightTooSmall(f"{what}: height {h} is not greater than d = {T.d}")
    return h


def _search(I, candidates, attempt, stage, budget_ms):
    clock = _Clock(budget_ms, stage)
    last = None
    for k, theta in enumerate(candidates, 1):
        last = theta.to_json()
        clock.check(last)
        res = attempt(theta)
        if res is not None:
            res.attempts = k
            return res
    raise BudgetExceeded(f"{stage}: no exponents up to the bound worked", stage=stage, last=last)


# -- Suslin ---------------------------------------------------------------------------


def suslin_monicize(
    I: IdealHandle,
    target,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    exponents: Sequence[int] | None = None,
    shifted: Sequence[str] | None = None,
    check_height: bool = True,
) -> NormalizationWitness:
    """x -> x + target^{s} until the image contains a polynomial monic in target."""
    T = I.tower
    v = target if isinstance(target, str) else T.ring.names[target]
    if check_height:
        _require_height(I, "suslin_monicize")
    if shifted is None:
        shifted = [T.ring.names[i] for i in T.x_idx if T.ring.names[i] != v and i in I.level.variables]

    def attempt(theta):
        img = apply_automorphism(I, theta)
        w = contains_monic(img, v)
        if w is None:
            return None
        return NormalizationWitness(theta, I, img, monic=w, monic_var=v)

    if exponents is not None:
        cands = [suslin_automorphism(T, v, exponents, shifted)]
    else:
        cands = (suslin_automorphism(T, v, staggered(N, len(shifted)), shifted) for N in range(max_exponent + 1))
    return _search(I, cands, attempt, "suslin_monicize", budget_ms)


# -- Laurent ----------------------------------------------------------------------------


def _laurent_witness(K: IdealHandle, yn: str) -> tuple[Element, dict] | None:
    """An element 1 + y_n h of K that is monic in y_n, with property flags."""
    T = K.tower
    h = contains_unit_shift(K, yn)
    if h is None:
        return None
    y = T.var(yn)
    G = 1 + y * h
    lc = leading_coefficient(G, yn)
    if G.degree_in(yn) > 0 and lc.is_unit() and _unit_in_coefficients(lc, K):
        flags = {"constant_term_one": True, "unit_leading_coefficient": True, "leading_coefficient_one": lc == 1}
        return G, flags
    F = contains_monic(K, yn)
    if F is None:
        return None
    g, e = G.degree_in(yn), F.degree_in(yn)
    N = max(1, g - e + 1)
    W = G + y**N * F
    flags = {"constant_term_one": True, "unit_leading_coefficient": True, "leading_coefficient_one": True}
    return W, flags


def _unit_in_coefficients(c: Element, K: IdealHandle) -> bool:
    """Unit of the coefficient ring: scalar times a monomial in the inverted y's."""
    if c.b or len(c.num.terms) != 1:
        return False
    T = K.tower
    (m,) = c.num.terms
    allowed = set(K.level.inverted_y)
    for i, e in enumerate(m):
        if i in allowed:
            continue
        # a y not inverted here must cancel exactly against the denominator
        want = c.a if i in T.y_idx else 0
        if e != want:
            return False
    return True


def laurent_monicize(
    J: IdealHandle,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    exponents: dict | None = None,
    shift_t: bool = False,
    check_height: bool = True,
) -> NormalizationWitness:
    """Find Theta fixing R[y_n^{+-1}] with 1 + y_n h in Theta(J) monic in y_n.

    J lives at level B or B[Y]; with ``shift_t`` the variable t is treated
    as one more polynomial variable and shifted as well.
    """
    T = J.tower
    if T.n < 1:
        raise Unsupported("laurent_monicize needs n >= 1")
    if J.level.name not in ("B", "B[Y]"):
        raise LevelMismatch("laurent_monicize works at level B or B[Y]")
    if not J.is_proper():
        raise ImproperIdeal("laurent_monicize: the ideal is the unit ideal")
    if check_height:
        _require_height(J, "laurent_monicize")
    names = T.ring.names
    yn = names[T.y_idx[-1]]
    shifted = [names[i] for i in T.x_idx]
    if shift_t and T.t_idx in J.level.variables:
        shifted.append("t")

    def attempt(theta):
        img = apply_automorphism(J, theta)
        K = contract_ideal(img, "Ln" if J.level.name == "B[Y]" else "Bn") if img.is_proper() else None
        if K is None:
            return None
        found = _laurent_witness(K, yn)
        if found is None:
            return None
        W, flags = found
        return NormalizationWitness(
            theta, J, img, monic=W, monic_var=yn, unit_shift_v=yn,
            unit_shift_h=(W - 1) / T.var(yn), flags=flags,
        )

    k = len(shifted)
    if exponents is not None:
        cands = [laurent_automorphism(T, exponents["ti"], exponents["tpi"], exponents["lj"], shifted)]
    else:
        cands = (
            laurent_automorphism(T, staggered(N, k), staggered(N, k), staggered(N, k + T.n - 1)[k:], shifted)
            for N in range(max_exponent + 1)
        )
    return _search(J, cands, attempt, "laurent_monicize", budget_ms)


# -- combined -----------------------------------------------------------------------


def combined_normalize(
    I: IdealHandle,
    want_monic: bool | None = None,
    want_unit_shift: bool = True,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    exponents: dict | None = None,
) -> NormalizationWitness:
    """x_i -> x_i + t^{t_i} + f^{-s_i}, y_j -> y_j f^{l_j} with both witnesses.

    ``want_monic`` defaults to whether f is monic in t; requesting it for a
    non-monic f is unsupported.
    """
    T = I.tower
    if I.level.name != "A":
        raise LevelMismatch("combined_normalize works at level A")
    if want_monic is None:
        want_monic = T.f_monic
    if want_monic and not T.f_monic:
        raise Unsupported("a monic witness in t needs f monic in t")
    _require_height(I, "combined_normalize")
    m, n = T.m, T.n
    no_f = T.f.is_constant()

    def attempt(theta):
        img = apply_automorphism(I, theta)
        J = contract_ideal(img, "B[Y]")
        out = NormalizationWitness(theta, I, img)
        if want_unit_shift:
            h = contains_unit_shift(J, T.f_element)
            if h is None:
                return None
            out.unit_shift_v, out.unit_shift_h = "f", h
        if want_monic:
            w = contains_monic(J, "t")
            if w is None:
                return None
            out.monic, out.monic_var = w, "t"
        return out

    if exponents is not None:
        cands = [combined_automorphism(T, exponents["ti"], exponents["si"], exponents["lj"])]
    else:
        # the y-scalings continue the staggering past the x-shifts so that no
        # t-degree is hit by both
        cands = (
            combined_automorphism(
                T, staggered(N, m), [0] * m if no_f else staggered(N, m),
                [0] * n if no_f else staggered(N, m + n)[m:],
            )
            for N in range(max_exponent + 1)
        )
    return _search(I, cands, attempt, "combined_normalize", budget_ms)


# -- the s^2-analytic endomorphism ---------------------------------------------------


class AnalyticDelta:
    """The B-algebra endomorphism of B[Y] with t -> t + s^2 b'^2 (1 - t).

    Equivalently t - 1 -> (t - 1)(1 - b'^2 s^2); everything in B is fixed, so
    delta(a) - a lies in s^2 B[Y] for every a.
    """

    def __init__(self, tower: RingTower, b, s):
        self.tower = tower
        self.b = tower.element(b)
        self.s = tower.element(s)
        for e in (self.b, self.s):
            if e.b or e.num.degree(tower.t_idx) > 0:
                raise LevelMismatch("b' and s must lie in B")
        self.image_t = tower.var("t") + self.s**2 * self.b**2 * (1 - tower.var("t"))

    def __call__(self, alpha) -> Element:
        alpha = self.tower.element(alpha)
        if alpha.b:
            raise LevelMismatch("delta acts on B[Y]; the argument has f in its denominator")
        return alpha.substitute({"t": self.image_t})

    def to_json(self) -> dict:
        return {"b": str(self.b), "s": str(self.s), "t_image": str(self.image_t)}


def analytic_delta(tower: RingTower, b, s) -> AnalyticDelta:
    return AnalyticDelta(tower, b, s)
