"""Consequences of the lifting theorems.

* set-theoretic generation: I with (f_1..f_n) + I^2 = I is the radical of an
  ideal J = (f_1..f_{n-1}) + I^{(n-1)!} generated by n elements;
* Euler-class triviality: a surjective lift witnesses (I, phi) = 0;
* unimodularity of an element of a projective module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from .certificates import CertificateBuilder, power_generators, strs, verify_certificate
from .errors import (
    HeightTooSmall,
    ImproperIdeal,
    LevelMismatch,
    NotEulerDatum,
    NotInModule,
    PreconditionError,
    RankTooSmall,
    Unsupported,
)
from .groebner.orders import GREVLEX, block_order
from .lifting import (
    DEFAULT_MAX_COEFFICIENT,
    DEFAULT_MAX_DEGREE,
    DEFAULT_PER_ROUND,
    LiftCertificate,
    Perturbations,
    _generates,
    _normalization_transcripts,
    _stage_transcript,
    check_surjection_mod_sq,
    lift_T2,
)
from .polycore.element import Element
from .tower import IdealHandle, contract_ideal, height_at_level
from .transforms import DEFAULT_MAX_EXPONENT, _Clock, combined_normalize, suslin_monicize
from .errors import BudgetExceeded

DEFAULT_MAX_N = 4


# -- set-theoretic generation ---------------------------------------------------------


@dataclass
class SetTheoreticCertificate:
    ideal: IdealHandle
    gens: list
    exponent: int
    generators: list
    params: dict = field(default_factory=dict)
    stages: list = field(default_factory=list)
    transcripts: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.gens)

    def J(self) -> IdealHandle:
        T = self.ideal.tower
        extra = power_generators(self.ideal.generators, self.exponent, T)
        return IdealHandle(T, "A", list(self.gens[: self.n - 1]) + extra, check=False)

    def radical_exponents(self) -> list[int]:
        """Exponents k_i with f_i^{k_i} in (h); f_n^{(n-1)!} always lies in J."""
        H = IdealHandle(self.ideal.tower, "A", self.generators)
        out = []
        for f in self.gens:
            k = next((k for k in range(1, self.exponent + 1) if H.contains(f**k)), None)
            out.append(k)
        return out

    def certificate(self) -> dict:
        I = self.ideal
        T = I.tower
        b = CertificateBuilder("settheoretic", T, I, self.params)
        for st in self.stages:
            b.stage(**st)
        for t in self.transcripts:
            b.add(**t)
        J = self.J()
        b.ideal_equal("final.J", "A", self.generators, J.generators)
        for i, (f, k) in enumerate(zip(self.gens, self.radical_exponents())):
            b.add(f"final.rad.f.{i}", "radical", level="A", generators=strs(self.generators), element=str(f), exponent=k)
        for j, h in enumerate(self.generators):
            b.add(f"final.rad.h.{j}", "radical", level="A", generators=strs(I.generators), element=str(h), exponent=1)
        result = {"gens": strs(self.gens), "generators": strs(self.generators), "exponent": self.exponent}
        return b.build(result)

    def check(self) -> bool:
        T = self.ideal.tower
        H = IdealHandle(T, "A", self.generators)
        if len(self.generators) != self.n or not H.equals(self.J()):
            return False
        I = IdealHandle(T, "A", self.ideal.generators)
        return all(I.contains(h) for h in self.generators)

    def verify(self) -> bool:
        return verify_certificate(self.certificate())["ok"]


def settheoretic_generators(
    I: IdealHandle,
    gens: Sequence,
    seed: int = 0,
    max_n: int = DEFAULT_MAX_N,
    max_exponent: int = DEFAULT_MAX_EXPONENT,
    budget_ms: int | None = None,
    max_perturbation_degree: int = DEFAULT_MAX_DEGREE,
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT,
    per_round: int = DEFAULT_PER_ROUND,
) -> SetTheoreticCertificate:
    """n generators of J = (f_1..f_{n-1}) + I^{(n-1)!}, so that sqrt(J) = sqrt(I)."""
    T = I.tower
    if I.level.name != "A":
        raise LevelMismatch("settheoretic_generators works with ideals of A")
    if not I.is_proper():
        raise ImproperIdeal("the ideal is the unit ideal")
    gens = [T.element(g) for g in gens]
    n = len(gens)
    if n < 1:
        raise PreconditionError("at least one generator is needed")
    if n > max_n:
        raise Unsupported(f"n = {n} exceeds the limit {max_n}; I^{{(n-1)!}} grows too fast")
    ht = height_at_level(I)
    if ht <= T.d:
        raise HeightTooSmall(f"height {ht} is not greater than d = {T.d}")
    surj = check_surjection_mod_sq(I, gens)
    if not surj:
        raise PreconditionError(f"{surj.witness} is not in (gens) + I^2")
    e = math.factorial(n - 1)
    stages: list = []
    transcripts: list = []

    # normalize so that Theta(I) contains 1 + f h (and a monic in t when f is monic)
    W = combined_normalize(I, want_monic=T.f_monic, max_exponent=max_exponent, budget_ms=budget_ms)
    theta = W.automorphism
    stages.append({"name": "normalize", **W.to_json()})
    transcripts.extend(_normalization_transcripts("normalize", W))
    K = contract_ideal(W.image, "B[Y]")
    img = [theta(g) for g in gens]
    N = max(x.b for x in img)
    fN = T.f_element**N
    fp = [x * fN for x in img]
    stages.append({"name": "contract", "N": N, "K": strs(K.generators)})
    theta2 = None
    if W.monic is None:
        W2 = suslin_monicize(K, "t", max_exponent=max_exponent, budget_ms=budget_ms, check_height=False)
        theta2 = W2.automorphism
        K = W2.image
        fp = [theta2(x) for x in fp]
        stages.append({"name": "suslin", **W2.to_json()})
        transcripts.extend(_normalization_transcripts("suslin", W2))

    # L = (f'_1..f'_{n-1}) + K^e inside B[Y]
    ks = [k for k in K.generators if k]
    L = IdealHandle(T, "B[Y]", fp[: n - 1] + power_generators(ks, e, T), check=False)
    Lgens = [x for x in L.generators if x]
    base = fp[: n - 1] + [fp[n - 1] ** e]
    extra = []
    for order in (GREVLEX, block_order(T.ring.nvars, [i for i in range(T.ring.nvars) if i != T.t_idx])):
        for g in L.gb(order).polys:
            x = Element(T, g)
            if x not in extra:
                extra.append(x)
    extra.sort(key=lambda x: (x.num.total_degree(), len(x.num.terms), str(x)))
    products = [k * l for k in ks for l in Lgens]
    KL = IdealHandle(T, "B[Y]", products, check=False)
    search = Perturbations(T, "B[Y]", products, KL, seed, max_perturbation_degree, max_coefficient, per_round,
                           extra=extra[:12])
    clock = _Clock(budget_ms, "settheoretic")
    attempts = 0
    found = None
    for cand, how, rnd in search.candidates(base):
        clock.check(search.last or {"stage": how})
        attempts += 1
        if _generates(T, "B[Y]", cand, Lgens):
            found = (cand, how, rnd)
            break
    if found is None:
        raise BudgetExceeded("settheoretic: perturbation schedule exhausted", stage="settheoretic", last=search.last)
    h, how, rnd = found
    stages.append({"name": "generators", "how": how, "attempts": attempts, "round": rnd, "h": strs(h)})
    transcripts.append(_stage_transcript("generators.L", "ideal_equal", level="B[Y]", left=strs(h), right=strs(L.generators)))

    def unwind(x):
        if theta2 is not None:
            x = theta2.apply_inverse(x)
        return theta.apply_inverse(x)

    H = [unwind(x) for x in h]
    stages.append({"name": "unwind", "generators": strs(H)})
    cert = SetTheoreticCertificate(
        I, gens, e, H,
        params={"seed": seed, "max_n": max_n, "max_exponent": max_exponent,
                "max_perturbation_degree": max_perturbation_degree, "max_coefficient": max_coefficient,
                "per_round": per_round},
        stages=stages, transcripts=transcripts,
    )
    if not cert.check():
        raise AssertionError("transported generators failed the direct check over A")
    return cert


# -- Euler class triviality ----------------------------------------------------------------


def euler_trivial_witness(I: IdealHandle, gens: Sequence, **kwargs) -> LiftCertificate:
    """A surjective lift of (I, phi) with height I = p, certifying the class is zero."""
    T = I.tower
    gens = [T.element(g) for g in gens]
    p = len(gens)
    if I.level.name != "A":
        raise LevelMismatch("Euler class data live over A")
    if not I.is_proper():
        raise ImproperIdeal("the ideal is the unit ideal")
    ht = height_at_level(I)
    if ht != p:
        raise NotEulerDatum(f"height {ht} differs from p = {p}")
    bound = max(T.dim_A - p + 3, T.d + 1)
    if p < bound:
        raise RankTooSmall(f"p = {p} is below max(dim A - p + 3, d + 1) = {bound}")
    cert = lift_T2(I, gens, **kwargs)
    cert.params["purpose"] = "euler-class-triviality"
    return cert


# -- unimodular elements ----------------------------------------------------------------------


@dataclass
class UnimodularResult:
    unimodular: bool
    vector: list
    functional: list | None
    idempotent: list | None
    transcript: dict | None

    def __bool__(self):
        return self.unimodular

    def certificate(self, tower, params=None) -> dict:
        b = CertificateBuilder("unimodular", tower, None, params or {})
        if self.transcript is not None:
            b.add(**self.transcript)
        return b.build({"vector": strs(self.vector), "unimodular": self.unimodular})


def _matvec(E, v):
    out = []
    for row in E:
        s = Element.constant(v[0].tower, 0)
        for a, b in zip(row, v):
            s = s + a * b
        out.append(s)
    return out


def unimodular_certify(v: Sequence, tower=None, idempotent: Sequence[Sequence] | None = None) -> UnimodularResult:
    """Is v unimodular in P = image of the idempotent (or the free module)?

    For v in P the order ideal O_P(v) is generated by the coordinates of v,
    because every functional on P is w^T e and w^T e v = w^T v.
    """
    T = tower if tower is not None else v[0].tower
    v = [T.element(x) for x in v]
    E = None
    if idempotent is not None:
        E = [[T.element(x) for x in row] for row in idempotent]
        if len(E) != len(v) or any(len(r) != len(v) for r in E):
            raise NotInModule("matrix and vector sizes differ")
        cols = [list(c) for c in zip(*E)]
        if [_matvec(E, c) for c in cols] != cols:
            raise NotInModule("the matrix is not idempotent")
        if _matvec(E, v) != v:
            raise NotInModule("v is not in the image of the idempotent")
    O = IdealHandle(T, "A", v)
    cof = O.express(1)
    if cof is None:
        return UnimodularResult(False, v, None, None if E is None else E, None)
    psi = cof
    if E is not None:
        cols = [list(c) for c in zip(*E)]
        psi = _matvec(cols, cof)
    transcript = _stage_transcript(
        "final.unimodular", "unimodular", vector=strs(v), functional=strs(psi),
        idempotent=None if E is None else [strs(r) for r in E],
    )
    return UnimodularResult(True, v, psi, E, transcript)


def find_unimodular(tower, idempotent: Sequence[Sequence] | None = None, rank: int | None = None,
                    max_degree: int = 2, limit: int = 2000) -> UnimodularResult | None:
    """Brute-force search over projections of vectors with monomial entries."""
    T = tower
    E = None if idempotent is None else [[T.element(x) for x in row] for row in idempotent]
    r = len(E) if E is not None else rank
    if r is None:
        raise PreconditionError("give the idempotent or the rank of the free module")
    names = T.ring.names
    monos = [Element.constant(T, 0), Element.constant(T, 1)]
    for d in range(1, max_degree + 1):
        for combo in iproduct(range(len(names)), repeat=d):
            if list(combo) != sorted(combo):
                continue
            m = Element.constant(T, 1)
            for i in combo:
                m = m * T.var(names[i])
            monos.append(m)
    tried = 0
    for entries in iproduct(monos, repeat=r):
        if tried >= limit:
            break
        if not any(entries):
            continue
        tried += 1
        v = list(entries) if E is None else _matvec(E, list(entries))
        if not any(v):
            continue
        res = unimodular_certify(v, T, E)
        if res:
            return res
    return None
