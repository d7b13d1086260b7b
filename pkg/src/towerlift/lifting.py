"""Lifting surjections I/I^2 <<- A^p to surjections A^p ->> I, with certificates.

The engine works in three layers:

* ``mandal_lift`` lifts over a polynomial ring whose ideal contains a monic
  polynomial in the last variable.  It is a seeded search over perturbations
  eps_i in K^2 (optionally vanishing at t = 1); every candidate is accepted
  only after a Groebner check that the perturbed generators give all of K.
* ``lift_T2`` normalizes the ideal of A, contracts to the polynomial side,
  lifts there and transports the lift back, re-verifying over A.
* ``lift_T3`` additionally prescribes the values at t = 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .certificates import CertificateBuilder, power_generators, strs, verify_certificate
from .errors import (
    BudgetExceeded,
    HeightTooSmall,
    ImproperIdeal,
    IncompatibleBoundary,
    LevelMismatch,
    LocalizationMismatch,
    NotComaximal,
    NotInIdeal,
    PreconditionError,
    RankTooSmall,
    Unsupported,
)
from .polycore.element import Element
from .tower import (
    level as level_of,
    IdealHandle,
    RingTower,
    contract_ideal,
    dim_at_level,
    height_at_level,
)
from .transforms import (
    DEFAULT_MAX_EXPONENT,
    NormalizationWitness,
    _Clock,
    combined_normalize,
    contains_monic,
    leading_coefficient,
    laurent_monicize,
    suslin_monicize,
)

DEFAULT_MAX_DEGREE = 4
DEFAULT_MAX_COEFFICIENT = 8
DEFAULT_PER_ROUND = 24


# -- the data of a surjection modulo I^2 -------------------------------------------


@dataclass
class SurjectionModI2:
    """Generators f_1..f_p of I with (f) + I^2 = I, or a counterexample."""

    ideal: IdealHandle
    gens: list
    valid: bool
    witness: Element | None = None

    def __bool__(self):
        return self.valid

    def transcript(self, builder: CertificateBuilder, tid: str):
        left = list(self.gens) + self.ideal.power_generators(2)
        builder.ideal_equal(tid, self.ideal.level.name, left, self.ideal.generators)


def check_surjection_mod_sq(I: IdealHandle, gens: Sequence) -> SurjectionModI2:
    T = I.tower
    gens = [T.element(g) for g in gens]
    for g in gens:
        if not I.contains(g):
            raise NotInIdeal(f"{g} is not in the ideal")
    M = IdealHandle(T, I.level.name, gens + I.power_generators(2))
    for k in I.generators:
        if not M.contains(k):
            return SurjectionModI2(I, gens, False, k)
    return SurjectionModI2(I, gens, True)


# -- patching over a Zariski cover A_f, A_g ----------------------------------------


@dataclass
class LocalizedMatrix:
    """The matrix num / den^power over A_den."""

    num: list
    den: Element
    power: int = 0


@dataclass
class GlueResult:
    xi: list
    a: Element
    b: Element
    surjective: bool | None = None


def fiber_glue(phi: LocalizedMatrix, psi: LocalizedMatrix, target: IdealHandle | None = None, level: str = "A") -> GlueResult:
    """xi over A with xi = phi over A_f and xi = psi over A_g, where fA + gA = A."""
    f, g = phi.den, psi.den
    T = f.tower
    if not IdealHandle(T, level, [f, g]).contains(1):
        raise NotComaximal(f"{f} and {g} generate a proper ideal")
    if len(phi.num) != len(psi.num) or any(len(r) != len(s) for r, s in zip(phi.num, psi.num)):
        raise LocalizationMismatch("matrix shapes differ")
    fk, gl = f**phi.power, g**psi.power
    for r, s in zip(phi.num, psi.num):
        for x, y in zip(r, s):
            if x * gl != y * fk:
                raise LocalizationMismatch("the maps disagree over A_fg")
    cof = IdealHandle(T, level, [fk, gl]).express(1)
    a, b = cof
    xi = [[a * x + b * y for x, y in zip(r, s)] for r, s in zip(phi.num, psi.num)]
    # localizing back: xi * f^k = phi.num and xi * g^l = psi.num
    for r, s, q in zip(phi.num, psi.num, xi):
        for x, y, z in zip(r, s, q):
            if z * fk != x or z * gl != y:
                raise AssertionError("glued map does not localize back")
    out = GlueResult(xi, a, b)
    if target is not None:
        entries = [x for row in xi for x in row]
        out.surjective = IdealHandle(T, target.level.name, entries).equals(target)
    return out


# -- lift certificates -----------------------------------------------------------------


@dataclass
class LiftCertificate:
    """Lifted generators g_i = f_i + eps_i of an ideal, with stage records."""

    ideal: IdealHandle
    gens: list
    lifted: list
    boundary: list | None = None
    params: dict = field(default_factory=dict)
    stages: list = field(default_factory=list)
    transcripts: list = field(default_factory=list)
    cofactors: bool = True

    @property
    def deltas(self) -> list:
        return [g - f for g, f in zip(self.lifted, self.gens)]

    def check(self) -> bool:
        """Direct re-check with a fresh engine, at the level of the ideal."""
        I = IdealHandle(self.ideal.tower, self.ideal.level.name, self.ideal.generators)
        if not all(I.contains(g) for g in self.lifted):
            return False
        sq = I.square()
        if not all(sq.contains(e) for e in self.deltas):
            return False
        if not IdealHandle(I.tower, I.level.name, self.lifted).equals(I):
            return False
        if self.boundary is not None:
            if any(g.evaluate_at_one() != d for g, d in zip(self.lifted, self.boundary)):
                return False
        return True

    def certificate(self) -> dict:
        I = self.ideal
        T = I.tower
        b = CertificateBuilder("lift", T, I, self.params)
        for st in self.stages:
            b.stage(**st)
        for t in self.transcripts:
            b.add(**t)
        sq = power_generators(I.generators, 2, T)
        sqI = IdealHandle(T, I.level.name, sq, check=False)
        for i, (g, e) in enumerate(zip(self.lifted, self.deltas)):
            b.membership(f"final.member.{i}", I, g, I.express(g) if self.cofactors else None)
            b.membership(f"final.delta.{i}", sqI, e, sqI.express(e) if self.cofactors else None)
        b.ideal_equal("final.generation", I.level.name, self.lifted, I.generators)
        if self.boundary is not None:
            for i, (g, d) in enumerate(zip(self.lifted, self.boundary)):
                b.add(f"final.boundary.{i}", "boundary", element=str(g), expected=str(d))
        result = {
            "gens": strs(self.gens),
            "lifted": strs(self.lifted),
            "deltas": strs(self.deltas),
            "boundary": None if self.boundary is None else strs(self.boundary),
        }
        return b.build(result)

    def verify(self) -> bool:
        return verify_certificate(self.certificate())["ok"]


def _stage_transcript(tid, ttype, **payload) -> dict:
    return {"tid": tid, "ttype": ttype, **payload}


def _membership_t(tid, I: IdealHandle, e) -> dict:
    return _stage_transcript(tid, "membership", level=I.level.name, generators=strs(I.generators), element=str(e), cofactors=None)


def _normalization_transcripts(prefix: str, W: NormalizationWitness) -> list[dict]:
    out = [_stage_transcript(f"{prefix}.automorphism", "automorphism_inverse", automorphism=W.automorphism.to_json())]
    img = W.image
    if W.unit_shift_h is not None:
        out.append(_stage_transcript(
            f"{prefix}.unit_shift", "unit_shift", level=img.level.name, generators=strs(img.generators),
            v=W.unit_shift_v, h=str(W.unit_shift_h),
            automorphism=W.automorphism.to_json(), source=strs(W.ideal.generators),
        ))
    return out


# -- Mandal-style lifting over a polynomial ring ------------------------------------------


def _default_monic_var(K: IdealHandle) -> str:
    T = K.tower
    if K.level.name in ("Ln",):
        return T.ring.names[T.y_idx[-1]]
    return "t"


def _random_monomial(rng: random.Random, T: RingTower, variables: Sequence[int], degree: int) -> Element:
    e = Element.constant(T, 1)
    if degree <= 0 or not variables:
        return e
    for _ in range(rng.randint(0, degree)):
        e = e * T.var(T.ring.names[rng.choice(variables)])
    return e


def _schedule(max_degree: int, max_coefficient: int) -> list[tuple[int, int]]:
    """(degree bound, coefficient height) per round, both doubling."""
    out = []
    D, H = 0, 1
    while True:
        out.append((D, H))
        if D >= max_degree and H >= max_coefficient:
            return out
        D = min(max_degree, 1 if D == 0 else 2 * D)
        H = min(max_coefficient, 2 * H)


def _boundary_ring(K: IdealHandle) -> str:
    return "Bn" if K.level.name == "Ln" else "B"


def _boundary_correct(K: IdealHandle, gens: list, boundary: list) -> list:
    """Subtract sum alpha_ab k_a k_b (alpha free of t) so that g_i(1) = delta_i."""
    T = K.tower
    lv = _boundary_ring(K)
    ks = [k for k in K.generators if k]
    pairs = [(a, b) for a in range(len(ks)) for b in range(a, len(ks))]
    at_one = [ks[a].evaluate_at_one() * ks[b].evaluate_at_one() for a, b in pairs]
    K1sq = IdealHandle(T, lv, at_one, check=False)
    out = []
    for f, d in zip(gens, boundary):
        diff = f.evaluate_at_one() - d
        if not diff:
            out.append(f)
            continue
        cof = K1sq.express(diff)
        if cof is None:
            raise IncompatibleBoundary(f"{f}(1) - {d} is not in the square of the ideal at t = 1")
        corr = Element.constant(T, 0)
        for c, (a, b) in zip(cof, pairs):
            corr = corr + c * ks[a] * ks[b]
        out.append(f - corr)
    return out


def _generates(T: RingTower, level_name: str, cand: list, targets: list) -> bool:
    G = IdealHandle(T, level_name, cand)
    return all(G.contains(k) for k in targets)


class Perturbations:
    """The deterministic-then-seeded candidate order used by the lifting searches.

    Candidates are the base itself, base entries reduced modulo ``reducer``,
    single +-product perturbations, then rounds of random sums
    c * monomial * product with the (degree, height) schedule doubling.
    """

    def __init__(self, T: RingTower, level_name: str, products: list, reducer: IdealHandle | None, seed: int,
                 max_degree: int, max_coefficient: int, per_round: int, extra: Sequence = ()):
        self.T = T
        lv = level_of(T, level_name)
        self.poly_vars = sorted(i for i in lv.variables if i not in lv.inverted_y)
        self.products = products
        self.reducer = reducer
        self.rng = random.Random(seed)
        self.max_degree = max_degree
        self.max_coefficient = max_coefficient
        self.per_round = per_round
        self.extra = list(extra)
        self.last = None

    def candidates(self, base: list):
        T, p = self.T, len(base)
        yield base, "unperturbed", None
        if self.reducer is not None:
            reduced = [Element(T, self.reducer.reduce(g.num), g.a, g.b) for g in base]
            for i in reversed(range(p)):
                if reduced[i] != base[i]:
                    yield base[:i] + [reduced[i]] + base[i + 1:], "reduced", None
            if sum(r != g for r, g in zip(reduced, base)) > 1:
                yield reduced, "reduced", None
        for i in reversed(range(p)):
            for e in self.extra:
                cand = list(base)
                cand[i] = e
                yield cand, "replaced", None
        for i in reversed(range(p)):
            for pr in self.products:
                for c in (-1, 1):
                    cand = list(base)
                    cand[i] = cand[i] + c * pr
                    yield cand, "single", {"degree": 0, "height": 1}
        rng = self.rng
        for D, H in _schedule(self.max_degree, self.max_coefficient):
            self.last = {"degree": D, "height": H}
            for _ in range(self.per_round):
                cand = list(base)
                for i in rng.sample(range(p), rng.randint(1, p)):
                    eps = Element.constant(T, 0)
                    for _ in range(rng.randint(1, 2)):
                        c = rng.choice([x for x in range(-H, H + 1) if x])
                        eps = eps + c * _random_monomial(rng, T, self.poly_vars, D) * rng.choice(self.products)
                    cand[i] = cand[i] + eps
                yield cand, "random", self.last


def mandal_lift(
    K: IdealHandle,
    gens: Sequence,
    boundary: Sequence | None = None,
    monic_var: str | None = None,
    seed: int = 0,
    max_perturbation_degree: int = DEFAULT_MAX_DEGREE,
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT,
    per_round: int = DEFAULT_PER_ROUND,
    budget_ms: int | None = None,
    check_rank: bool = True,
) -> LiftCertificate:
    """Lift (f) + K^2 = K to generators of K over a polynomial ring with a monic."""
    T = K.tower
    if K.level.invert_f:
        raise LevelMismatch("mandal_lift works over a polynomial ring, not at level A")
    gens = [T.element(g) for g in gens]
    p = len(gens)
    if not K.is_proper():
        raise ImproperIdeal("mandal_lift: the ideal is the unit ideal")
    v = monic_var or _default_monic_var(K)
    monic = contains_monic(K, v)
    if monic is None:
        raise PreconditionError(f"mandal_lift: the ideal contains no polynomial monic in {v}")
    if check_rank:
        dim = dim_at_level(K)
        if p < dim + 2:
            raise RankTooSmall(f"mandal_lift: p = {p} < dim + 2 = {dim + 2}")
    surj = check_surjection_mod_sq(K, gens)
    if not surj:
        raise PreconditionError(f"mandal_lift: {surj.witness} is not in (gens) + K^2")
    start = gens
    if boundary is not None:
        boundary = [T.element(d) for d in boundary]
        if len(boundary) != p:
            raise PreconditionError("one boundary value per generator")
        K1 = IdealHandle(T, _boundary_ring(K), [k.evaluate_at_one() for k in K.generators], check=False)
        if not IdealHandle(T, K1.level.name, boundary).equals(K1):
            raise PreconditionError("the boundary values do not generate the ideal at t = 1")
        start = _boundary_correct(K, gens, boundary)

    ks = [k for k in K.generators if k]
    sq = IdealHandle(T, K.level.name, power_generators(ks, 2, T), check=False)
    products = [ks[a] * ks[b] for a in range(len(ks)) for b in range(a, len(ks))]
    search = Perturbations(T, K.level.name, products, sq, seed, max_perturbation_degree, max_coefficient, per_round)
    clock = _Clock(budget_ms, "mandal_lift")
    attempts = 0

    def generates(cand):
        nonlocal attempts
        attempts += 1
        return _generates(T, K.level.name, cand, ks)

    def finish(cand, how, round_info):
        cert = LiftCertificate(
            K, gens, list(cand), boundary,
            params={"seed": seed, "max_perturbation_degree": max_perturbation_degree,
                    "max_coefficient": max_coefficient, "per_round": per_round},
        )
        cert.stages.append({
            "name": "mandal", "how": how, "attempts": attempts, "round": round_info,
            "monic_var": v, "monic": str(monic),
        })
        cert.transcripts.append(_stage_transcript(
            "mandal.monic", "monic", level=K.level.name, generators=strs(K.generators),
            element=str(monic), var=v,
        ))
        return cert

    if boundary is None:
        for cand, how, rnd in search.candidates(start):
            clock.check(search.last or {"stage": how})
            if generates(cand):
                return finish(cand, how, rnd)
        raise BudgetExceeded("mandal_lift: perturbation schedule exhausted", stage="mandal_lift", last=search.last)

    # boundary: first find any lift, then move its values at t = 1 by row
    # operations with coefficients in K; these keep generation and the class mod K^2
    if generates(start):
        return finish(start, "unperturbed", None)
    for cand, how, rnd in search.candidates(start):
        clock.check(search.last or {"stage": how})
        if not generates(cand):
            continue
        moved = _transport_boundary(K, ks, cand, boundary)
        if moved is not None:
            return finish(moved, how + "+row-operations", rnd)
    raise BudgetExceeded("mandal_lift: perturbation schedule exhausted", stage="mandal_lift", last=search.last)


def _nf_cofactors(T: RingTower, e: Element, gens: list[Element]):
    """e = r + sum c_i gens_i with r a normal form; all elements free of f."""
    from .groebner.ideals import groebner

    nums = [g.num for g in gens]
    gb = groebner(nums, track=True, ring=T.ring)
    rem, cof = gb.reduce(e.num, track=True)
    out = [Element(T, c * T.ypow(g.a), e.a) for c, g in zip(cof, gens)]
    return Element(T, rem, e.a), out


def _is_unit_value(e: Element, lv_inverted) -> bool:
    if len(e.num.terms) != 1:
        return False
    (m,) = e.num.terms
    return all(x == 0 or i in lv_inverted for i, x in enumerate(m))


def _transport_boundary(K: IdealHandle, ks: list, h: list, delta: list, passes: int = 3) -> list | None:
    """Row operations g_i += sum_j a_ij g_j, a_ij in K, taking h(1) to delta.

    The multipliers are found at t = 1 in the ideal K(1) and lifted to K by
    replacing each k(1) with k.  Returns the new generators or None.
    """
    T = K.tower
    lv = _boundary_ring(K)
    inverted = set(level_of(T, lv).inverted_y)
    k1 = [k.evaluate_at_one() for k in ks]
    p = len(h)

    def apply(rows, lifts, i, coeffs):
        add_v = Element.constant(T, 0)
        add_g = Element.constant(T, 0)
        for (m, j), c in coeffs.items():
            if c:
                add_v = add_v + c * k1[m] * rows[j]
                if lifts is not None:
                    add_g = add_g + c * ks[m] * lifts[j]
        rows[i] = rows[i] + add_v
        if lifts is not None:
            lifts[i] = lifts[i] + add_g

    def pairs(i):
        return [(m, j) for m in range(len(ks)) for j in range(p) if j != i]

    def try_set(rows, lifts, i, target):
        pr = pairs(i)
        gens = [k1[m] * rows[j] for m, j in pr]
        cof = IdealHandle(T, lv, gens, check=False).express(target - rows[i])
        if cof is None:
            return False
        apply(rows, lifts, i, dict(zip(pr, cof)))
        return rows[i] == target

    def reduce_to_unit(rows, lifts, log):
        for _ in range(passes * p):
            for i in range(p):
                if _is_unit_value(rows[i], inverted):
                    return i
            changed = False
            for i in range(p):
                pr = pairs(i)
                gens = [k1[m] * rows[j] for m, j in pr]
                if not any(gens):
                    continue
                r, cof = _nf_cofactors(T, rows[i], gens)
                if r == rows[i]:
                    continue
                coeffs = {q: -c for q, c in zip(pr, cof)}
                apply(rows, lifts, i, coeffs)
                if log is not None:
                    log.append((i, coeffs))
                changed = True
                if _is_unit_value(rows[i], inverted):
                    return i
            if not changed:
                return None
        return None

    g = list(h)
    cur = [x.evaluate_at_one() for x in g]
    # direct: fix coordinates one at a time
    for _ in range(passes):
        for i in range(p):
            if cur[i] != delta[i]:
                try_set(cur, g, i, delta[i])
        if cur == delta:
            return g
    # through rows with a unit entry (only possible when K(1) is the unit ideal)
    if p < 2:
        return None
    ui = reduce_to_unit(cur, g, None)
    if ui is None:
        return None
    drow = list(delta)
    log: list = []
    vi = reduce_to_unit(drow, None, log)
    if vi is None:
        return None
    # connect cur (unit at ui) to drow (unit at vi)
    if ui == vi:
        other = (ui + 1) % p
        if not try_set(cur, g, other, Element.constant(T, 1)):
            return None
        if not try_set(cur, g, ui, drow[ui]):
            return None
        for j in range(p):
            if j != ui and not try_set(cur, g, j, drow[j]):
                return None
    else:
        if not try_set(cur, g, vi, drow[vi]):
            return None
        for j in range(p):
            if j != vi and not try_set(cur, g, j, drow[j]):
                return None
    # undo the reduction of delta
    for i, coeffs in reversed(log):
        apply(cur, g, i, {q: -c for q, c in coeffs.items()})
    return g if cur == delta else None


# -- the pipelines over A ------------------------------------------------------------------


def _check_A(I: IdealHandle):
    if I.level.name != "A":
        raise LevelMismatch("the pipeline works with ideals of A")
    if not I.is_proper():
        raise ImproperIdeal("the ideal is the unit ideal")


def _y_deficit(e: Element, yi: int) -> int:
    """Least l with y^l * e free of y in the denominator."""
    if not e.a:
        return 0
    low = min(m[yi] for m in e.num.terms) if e.num.terms else 0
    return max(0, e.a - low)


def _to_polynomial_side(
    W: NormalizationWitness, gens: list, stages: list, transcripts: list, max_exponent, budget_ms
):
    """Contract Theta(I) to B[Y], then to a polynomial ring K with a monic.

    Returns (K, lifted-side generators, unwind function, monic variable).
    """
    T = W.ideal.tower
    theta = W.automorphism
    J = contract_ideal(W.image, "B[Y]")
    img = [theta(g) for g in gens]
    k = max(e.b for e in img)
    fk = T.f_element**k
    psi = [e * fk for e in img]
    stages.append({"name": "contract", "k": k, "J": strs(J.generators)})
    for i, e in enumerate(psi):
        transcripts.append(_membership_t(f"contract.psi.{i}", J, e))
    if T.n > 0:
        W2 = laurent_monicize(J, max_exponent=max_exponent, budget_ms=budget_ms, shift_t=True, check_height=False)
        theta2 = W2.automorphism
        yn = T.ring.names[T.y_idx[-1]]
        K = contract_ideal(W2.image, "Ln")
        psi2 = [theta2(e) for e in psi]
        l = max(_y_deficit(e, T.y_idx[-1]) for e in psi2)
        ynl = T.var(yn) ** l
        side = [e * ynl for e in psi2]
        stages.append({"name": "laurent", **W2.to_json(), "l": l, "K": strs(K.generators)})
        transcripts.extend(_normalization_transcripts("laurent", W2))
        transcripts.append(_stage_transcript(
            "laurent.witness", "monic", level=W2.image.level.name, generators=strs(W2.image.generators),
            element=str(W2.monic / leading_coefficient(W2.monic, yn)), var=yn,
        ))

        def unwind(g):
            return theta.apply_inverse(theta2.apply_inverse(g / ynl) / fk)

        return K, side, unwind, yn
    if W.monic is not None:
        stages.append({"name": "monic", "source": "normalize", "monic": str(W.monic)})

        def unwind(g):
            return theta.apply_inverse(g / fk)

        return J, psi, unwind, "t"
    W2 = suslin_monicize(J, "t", max_exponent=max_exponent, budget_ms=budget_ms, check_height=False)
    theta2 = W2.automorphism
    stages.append({"name": "suslin", **W2.to_json()})
    transcripts.extend(_normalization_transcripts("suslin", W2))

    def unwind(g):
        return theta.apply_inverse(theta2.apply_inverse(g) / fk)

    return W2.image, [theta2(e) for e in psi], unwind, "t"


def lift_T2(
    I: IdealHandle,
    gens: Sequence,
    seed: int = 0,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    max_perturbation_degree: int = DEFAULT_MAX_DEGREE,
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT,
    per_round: int = DEFAULT_PER_ROUND,
) -> LiftCertificate:
    """Lift f_1..f_p with (f) + I^2 = I to generators of I over A."""
    T = I.tower
    _check_A(I)
    gens = [T.element(g) for g in gens]
    p = len(gens)
    ht = height_at_level(I)
    if ht < T.d + 1:
        raise HeightTooSmall(f"height {ht} is below d + 1 = {T.d + 1}")
    bound = max(T.dim_A - p + 2, T.d + 1)
    if p < bound:
        raise RankTooSmall(f"p = {p} is below max(dim A - p + 2, d + 1) = {bound}")
    surj = check_surjection_mod_sq(I, gens)
    if not surj:
        raise PreconditionError(f"{surj.witness} is not in (gens) + I^2")
    return _pipeline(I, gens, None, seed, max_exponent, budget_ms, max_perturbation_degree, max_coefficient, per_round,
                     want_monic=T.n == 0 and T.f_monic, kind="T2")


def _pipeline(I, gens, boundary, seed, max_exponent, budget_ms, max_degree, max_coefficient, per_round, want_monic, kind):
    T = I.tower
    stages: list = []
    transcripts: list = []
    start = gens
    if boundary is not None:
        start = _boundary_correct_A(I, gens, boundary)
        stages.append({"name": "boundary_correction", "corrected": strs(start)})
    W = combined_normalize(I, want_monic=want_monic, max_exponent=max_exponent, budget_ms=budget_ms)
    stages.append({"name": "normalize", **W.to_json()})
    transcripts.extend(_normalization_transcripts("normalize", W))
    if boundary is None:
        K, side, unwind, v = _to_polynomial_side(W, start, stages, transcripts, max_exponent, budget_ms)
        side_boundary = None
    else:
        theta = W.automorphism
        K = contract_ideal(W.image, "B[Y]")
        img = [theta(g) for g in start]
        k = max(e.b for e in img)
        fk = T.f_element**k
        side = [e * fk for e in img]
        f1k = Element.constant(T, T.f_at_one()) ** k
        side_boundary = [f1k * theta(d).evaluate_at_one() for d in boundary]
        stages.append({"name": "contract", "k": k, "J": strs(K.generators), "boundary": strs(side_boundary)})
        v = "t"

        def unwind(g):
            return theta.apply_inverse(g / fk)

    res = mandal_lift(
        K, side, boundary=side_boundary, monic_var=v, seed=seed, max_perturbation_degree=max_degree,
        max_coefficient=max_coefficient, per_round=per_round, budget_ms=budget_ms, check_rank=False,
    )
    stages.extend(res.stages)
    stages[-1]["lifted"] = strs(res.lifted)
    transcripts.extend(res.transcripts)
    lifted = [unwind(g) for g in res.lifted]
    stages.append({"name": "unwind", "lifted": strs(lifted)})
    cert = LiftCertificate(
        I, list(gens), lifted, None if boundary is None else list(boundary),
        params={"pipeline": kind, "seed": seed, "max_exponent": max_exponent,
                "max_perturbation_degree": max_degree, "max_coefficient": max_coefficient, "per_round": per_round},
        stages=stages, transcripts=transcripts,
    )
    if not cert.check():
        raise AssertionError("transported lift failed the direct check over A")
    return cert


def _boundary_correct_A(I: IdealHandle, gens: list, boundary: list) -> list:
    """f_i - sum alpha_ab k_a k_b with alpha in B, so that the values at t = 1 are delta_i."""
    T = I.tower
    ks = [k for k in I.generators if k]
    pairs = [(a, b) for a in range(len(ks)) for b in range(a, len(ks))]
    at_one = [ks[a].evaluate_at_one() * ks[b].evaluate_at_one() for a, b in pairs]
    sq1 = IdealHandle(T, "B", at_one, check=False)
    out = []
    for f, d in zip(gens, boundary):
        diff = f.evaluate_at_one() - d
        if not diff:
            out.append(f)
            continue
        cof = sq1.express(diff)
        if cof is None:
            raise IncompatibleBoundary(f"{f} at t = 1 differs from {d} outside I(1)^2")
        corr = Element.constant(T, 0)
        for c, (a, b) in zip(cof, pairs):
            corr = corr + c * ks[a] * ks[b]
        out.append(f - corr)
    return out


def lift_T3(
    I: IdealHandle,
    gens: Sequence,
    boundary: Sequence,
    seed: int = 0,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    max_perturbation_degree: int = DEFAULT_MAX_DEGREE,
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT,
    per_round: int = DEFAULT_PER_ROUND,
) -> LiftCertificate:
    """As lift_T2, with the values of the lifted generators at t = 1 prescribed."""
    T = I.tower
    _check_A(I)
    if not T.f_monic:
        raise Unsupported("boundary lifting needs f monic in t")
    if T.f_at_one() is None:
        raise Unsupported("boundary lifting needs f(1) to be a unit")
    gens = [T.element(g) for g in gens]
    boundary = [T.element(d) for d in boundary]
    p = len(gens)
    if len(boundary) != p:
        raise PreconditionError("one boundary value per generator")
    for d in boundary:
        if d.b or d.num.degree(T.t_idx) > 0:
            raise LevelMismatch(f"boundary value {d} does not lie in B")
    dim = dim_at_level(I)
    bound = max(T.d + 1, dim + 2)
    if p < bound:
        raise RankTooSmall(f"p = {p} is below max(d + 1, dim(A/I) + 2) = {bound}")
    surj = check_surjection_mod_sq(I, gens)
    if not surj:
        raise PreconditionError(f"{surj.witness} is not in (gens) + I^2")
    I1 = IdealHandle(T, "B", [k.evaluate_at_one() for k in I.generators], check=False)
    if not IdealHandle(T, "B", boundary).equals(I1):
        raise PreconditionError("the boundary values do not generate I(1)")
    return _pipeline(I, gens, boundary, seed, max_exponent, budget_ms, max_perturbation_degree, max_coefficient,
                     per_round, want_monic=True, kind="T3")
