"""The ring tower R = k[z] in B = R[x, y^{+-1}] in B[t] in A = B[t, 1/f].

Every level is a localization of a polynomial subring of the cover
S = k[z, x, y, t].  An ideal at a level is represented by generators, and its
contraction to the cover (the *preimage*) is the ideal of numerators
saturated at the product u of the inverted elements.  Heights, dimensions,
membership and equality are all computed on preimages.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ImproperIdeal,
    InvalidSubstitution,
    InvalidTower,
    LevelMismatch,
    ParseError,
)
from .groebner.buchberger import GroebnerBasis
from .groebner.ideals import dimension_height, elim_contract, groebner, ideal_equal, saturate
from .groebner.orders import GREVLEX, TermOrder
from .polycore.element import Element
from .polycore.fields import make_field
from .polycore.parse import parse_element, parse_poly
from .polycore.poly import Polynomial, PolyRing


class RingTower:
    """Ambient data (d, m, n, f) with the cover ring S = k[z, x, y, t]."""

    def __init__(self, d: int, m: int, n: int, f: str | Polynomial, field=None):
        if min(d, m, n) < 0:
            raise InvalidTower("d, m, n must be nonnegative")
        self.d, self.m, self.n = d, m, n
        self.field = field if field is not None else make_field("Q")
        names = (
            [f"z{i}" for i in range(1, d + 1)]
            + [f"x{i}" for i in range(1, m + 1)]
            + [f"y{i}" for i in range(1, n + 1)]
            + ["t"]
        )
        self.ring = PolyRing(names, self.field)
        self.z_idx = tuple(range(d))
        self.x_idx = tuple(range(d, d + m))
        self.y_idx = tuple(range(d + m, d + m + n))
        self.t_idx = d + m + n
        if isinstance(f, str):
            try:
                f = parse_poly(f, self.ring)
            except ParseError as exc:
                raise InvalidTower(f"cannot parse f: {exc}") from None
        elif f.ring != self.ring:
            f = f.change_ring(self.ring)
        if not f:
            raise InvalidTower("f must be nonzero")
        if f.support() & (set(self.x_idx) | set(self.y_idx)):
            raise InvalidTower("f must lie in k[z][t]")
        self.f = f
        Y = self.ring.one
        for i in self.y_idx:
            Y = Y * self.ring.gen(i)
        self.Y = Y
        self.unit_base = Y * f
        self._ypow = {0: self.ring.one}
        self._fpow = {0: self.ring.one}
        self._lock = threading.Lock()

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.d, self.m, self.n, str(self.f), self.field.name, self.field.p)

    def __eq__(self, other):
        return isinstance(other, RingTower) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"RingTower(d={self.d}, m={self.m}, n={self.n}, f={str(self.f)!r})"

    # -- cached powers ------------------------------------------------------
    def ypow(self, k: int) -> Polynomial:
        p = self._ypow.get(k)
        if p is None:
            p = self.Y**k
            with self._lock:
                self._ypow.setdefault(k, p)
        return p

    def fpow(self, k: int) -> Polynomial:
        p = self._fpow.get(k)
        if p is None:
            p = self.f**k
            with self._lock:
                self._fpow.setdefault(k, p)
        return p

    # -- properties of f ----------------------------------------------------
    def f_at_one(self):
        """f(1) as a scalar when it is a unit of R, else None."""
        v = self.f.evaluate(self.t_idx, 1)
        if v and v.is_constant():
            return v.constant_value()
        return None

    @property
    def f_monic(self) -> bool:
        lead = self.f.coefficients_in(self.t_idx)[self.f.degree(self.t_idx)]
        return lead.is_constant()

    @property
    def f_is_unit(self) -> bool:
        return self.f.is_constant()

    @property
    def dim_A(self) -> int:
        return self.d + self.m + self.n + 1

    # -- element helpers ----------------------------------------------------
    def parse(self, text: str) -> Element:
        return parse_element(text, self)

    def poly(self, text: str) -> Polynomial:
        return parse_poly(text, self.ring)

    def element(self, x) -> Element:
        if isinstance(x, Element):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Polynomial):
            return Element(self, x)
        return Element.constant(self, x)

    def var(self, name: str) -> Element:
        return Element.var(self, name)

    @property
    def f_element(self) -> Element:
        return Element.from_poly(self, self.f)

    def describe(self) -> dict:
        f1 = self.f_at_one()
        return {
            "d": self.d,
            "m": self.m,
            "n": self.n,
            "f": str(self.f),
            "field": self.field.name,
            "prime": self.field.p or None,
            "f_monic": self.f_monic,
            "f_at_one": str(self.f.evaluate(self.t_idx, 1)),
            "f_at_one_unit": f1 is not None,
        }

    def to_json(self) -> dict:
        out = {"d": self.d, "m": self.m, "n": self.n, "f": str(self.f), "field": self.field.name}
        if self.field.p:
            out["prime"] = self.field.p
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "RingTower":
        field = make_field(data.get("field", "Q"), data.get("prime"))
        return cls(data["d"], data["m"], data["n"], data["f"], field)


def make_tower(d: int, m: int, n: int, f: str, field: str = "Q", prime: int | None = None) -> RingTower:
    return RingTower(d, m, n, f, make_field(field, prime))


# -- levels -----------------------------------------------------------------

LEVEL_NAMES = ("S", "R", "B", "B[Y]", "A", "Ln", "Bn")
_ALIASES = {"BY": "B[Y]", "B[t]": "B[Y]", "C[Y,Yn]": "Ln"}


@dataclass(frozen=True)
class Level:
    """A ring in the tower: which variables occur and which are inverted.

    ``Ln`` is B[Y] with y_n not inverted, the polynomial side used when
    monicizing in the innermost Laurent variable; ``Bn`` is B likewise.
    """

    name: str
    variables: frozenset
    inverted_y: tuple
    invert_f: bool

    def u(self, tower: RingTower) -> Polynomial:
        p = tower.ring.one
        for i in self.inverted_y:
            p = p * tower.ring.gen(i)
        if self.invert_f:
            p = p * tower.f
        return p


def level(tower: RingTower, name: str) -> Level:
    name = _ALIASES.get(name, name)
    z, x, y, t = set(tower.z_idx), set(tower.x_idx), tower.y_idx, tower.t_idx
    if name == "S":
        return Level(name, frozenset(z | x | set(y) | {t}), (), False)
    if name == "R":
        return Level(name, frozenset(z), (), False)
    if name == "B":
        return Level(name, frozenset(z | x | set(y)), y, False)
    if name == "B[Y]":
        return Level(name, frozenset(z | x | set(y) | {t}), y, False)
    if name == "A":
        return Level(name, frozenset(z | x | set(y) | {t}), y, True)
    if name == "Ln":
        if not y:
            raise LevelMismatch("level Ln needs n >= 1")
        return Level(name, frozenset(z | x | set(y) | {t}), y[:-1], False)
    if name == "Bn":
        if not y:
            raise LevelMismatch("level Bn needs n >= 1")
        return Level(name, frozenset(z | x | set(y)), y[:-1], False)
    raise LevelMismatch(f"unknown level {name!r}")


def _check_at_level(e: Element, lv: Level, tower: RingTower):
    extra = e.num.support() - lv.variables
    if extra:
        names = ", ".join(tower.ring.names[i] for i in sorted(extra))
        raise LevelMismatch(f"{e} involves {names}, absent at level {lv.name}")
    if e.b and not lv.invert_f:
        raise LevelMismatch(f"{e} has f in the denominator, not allowed at level {lv.name}")
    if e.a and len(lv.inverted_y) != len(tower.y_idx):
        raise LevelMismatch(f"{e} has y in the denominator, not allowed at level {lv.name}")


# -- ideals -----------------------------------------------------------------


class IdealHandle:
    """An ideal of a tower level, given by generators.

    Groebner bases of the saturated preimage are memoized per term order; the
    memo is filled at most once per key under a lock.
    """

    def __init__(self, tower: RingTower, level_name: str, generators: Iterable, check: bool = True):
        self.tower = tower
        self.level = level(tower, level_name)
        gens = [tower.element(g) for g in generators]
        if check:
            for g in gens:
                _check_at_level(g, self.level, tower)
        self.generators: tuple[Element, ...] = tuple(gens)
        self._preimage: list[Polynomial] | None = None
        self._gb: dict[TermOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @property
    def level_name(self) -> str:
        return self.level.name

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"IdealHandle({self.level.name}: ({gens}))"

    @property
    def u(self) -> Polynomial:
        return self.level.u(self.tower)

    def numerators(self) -> list[Polynomial]:
        return [g.num for g in self.generators]

    def preimage(self) -> list[Polynomial]:
        """Generators of I intersected with the polynomial cover."""
        if self._preimage is None:
            nums = [p for p in self.numerators() if p]
            if not nums:
                pre = []
            elif self.u.is_constant():
                pre = list(groebner(nums).polys)
            else:
                pre = saturate(nums, self.u)
            with self._lock:
                if self._preimage is None:
                    self._preimage = pre
        return self._preimage

    def gb(self, order: TermOrder = GREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            pre = self.preimage()
            gb = groebner(pre, order, ring=self.tower.ring)
            with self._lock:
                gb = self._gb.setdefault(order, gb)
        return gb

    def is_proper(self) -> bool:
        return not self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.preimage()

    def contains(self, e) -> bool:
        e = self.tower.element(e)
        return not self.gb().reduce(e.num)[0]

    def reduce(self, e) -> Polynomial:
        e = self.tower.element(e)
        return self.gb().reduce(e.num)[0]

    def express(self, e) -> list[Element] | None:
        """Cofactors c with e = sum c_i g_i in the level ring, or None."""
        T = self.tower
        e = T.element(e)
        gens = self.generators
        if not gens:
            return None if e else []
        u = self.u
        R = T.ring
        if u.is_constant():
            gb = groebner([g.num for g in gens], GREVLEX, track=True, ring=R)
            rem, cof = gb.reduce(e.num, track=True)
            if rem:
                return None
            cofs = [Element(T, c) for c in cof]
        else:
            ext = R.extend(["w_"])
            w = ext.gen(R.nvars)
            emb = list(range(R.nvars))
            lifted = [g.num.change_ring(ext, emb) for g in gens]
            lifted.append(ext.one - w * u.change_ring(ext, emb))
            gb = groebner(lifted, GREVLEX, track=True, ring=ext)
            rem, cof = gb.reduce(e.num.change_ring(ext, emb), track=True)
            if rem:
                return None
            inv_u = Element(T, R.one) / Element(T, u)
            cofs = [_eval_w(c, inv_u, T) for c in cof[:-1]]
        # e.num = sum cofs_i * g_i.num; rescale by the denominators
        den_e = Element(T, T.ypow(e.a) * T.fpow(e.b))
        out = []
        for c, g in zip(cofs, gens):
            den_g = Element(T, T.ypow(g.a) * T.fpow(g.b))
            out.append(c * den_g / den_e)
        return out

    def at_level(self, name: str) -> "IdealHandle":
        """The same generators viewed at another level (extension)."""
        return IdealHandle(self.tower, name, self.generators)

    def equals(self, other: "IdealHandle") -> bool:
        if self.tower != other.tower:
            raise LevelMismatch("ideals live in different towers")
        if self.level != other.level:
            raise LevelMismatch(f"levels differ: {self.level.name} vs {other.level.name}")
        return ideal_equal(self.preimage(), other.preimage())

    def power_generators(self, k: int) -> list[Element]:
        """Generators of I^k (all monomials in the generators)."""
        from itertools import combinations_with_replacement

        gens = [g for g in self.generators if g]
        out = []
        for combo in combinations_with_replacement(range(len(gens)), k):
            p = Element.constant(self.tower, 1)
            for i in combo:
                p = p * gens[i]
            out.append(p)
        return out

    def square(self) -> "IdealHandle":
        return IdealHandle(self.tower, self.level.name, self.power_generators(2), check=False)

    def plus(self, extra: Iterable) -> "IdealHandle":
        return IdealHandle(self.tower, self.level.name, list(self.generators) + list(extra))


def _eval_w(c: Polynomial, inv_u: Element, T: RingTower) -> Element:
    """Substitute w = 1/u into a polynomial of S[w]."""
    w = T.ring.nvars
    total = Element(T, T.ring.zero)
    for k, coeff in c.coefficients_in(w).items():
        base = Element(T, coeff.change_ring(T.ring, list(range(T.ring.nvars)) + [0]))
        total = total + base * inv_u**k
    return total


def ideal(tower: RingTower, level_name: str, generators: Iterable) -> IdealHandle:
    return IdealHandle(tower, level_name, generators)


def contract_ideal(I: IdealHandle, target: str = "B[Y]") -> IdealHandle:
    """Generators of the contraction of I to a lower level of the tower."""
    T = I.tower
    tgt = level(T, target)
    if not I.is_proper():
        raise ImproperIdeal("cannot contract the unit ideal")
    if not set(tgt.inverted_y) <= set(I.level.inverted_y) or (tgt.invert_f and not I.level.invert_f):
        raise LevelMismatch(f"{tgt.name} is not a subring of {I.level.name}")
    if not tgt.variables <= I.level.variables:
        raise LevelMismatch(f"{tgt.name} is not a subring of {I.level.name}")
    drop = sorted(I.level.variables - tgt.variables)
    pre = I.preimage()
    gens = elim_contract(pre, drop) if drop else list(pre)
    return IdealHandle(T, tgt.name, [Element(T, g) for g in gens])


def dim_height_at_level(I: IdealHandle) -> tuple[int, int]:
    """(dim of the level ring modulo I, height of I)."""
    T = I.tower
    pre = I.preimage()
    dim_s, ht = dimension_height(pre, T.ring)
    absent = T.ring.nvars - len(I.level.variables)
    return dim_s - absent, ht


def height_at_level(I: IdealHandle) -> int:
    return dim_height_at_level(I)[1]


def dim_at_level(I: IdealHandle) -> int:
    return dim_height_at_level(I)[0]


# -- automorphisms ----------------------------------------------------------

FAMILIES = ("combined", "suslin", "laurent")


class Automorphism:
    """x -> x + sum of base powers, y -> y * unit, with the inverse stored.

    ``shifts`` maps a variable name to ((base, exponent), ...) and ``scales``
    maps a Laurent variable to ((base, exponent), ...); a base is a variable
    name or "f".  Bases are never moved by the map, which makes the inverse
    x -> x - shift, y -> y / scale.
    """

    def __init__(self, tower: RingTower, family: str, params: Mapping, shifts: Mapping, scales: Mapping):
        if family not in FAMILIES:
            raise ValueError(f"unknown automorphism family {family!r}")
        self.tower = tower
        self.family = family
        self.params = {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in params.items()}
        self.shifts = {k: tuple(v) for k, v in shifts.items() if v}
        self.scales = {k: tuple(v) for k, v in scales.items() if v}
        moved = set(self.shifts) | set(self.scales)
        for terms in list(self.shifts.values()) + list(self.scales.values()):
            for base, _ in terms:
                if base in moved:
                    raise InvalidSubstitution(f"base {base} is moved by the map")
        for name in self.scales:
            if tower.ring.index(name) not in tower.y_idx:
                raise InvalidSubstitution(f"only Laurent variables can be rescaled, not {name}")
        self.sign = 1
        self._fwd = None
        self._inv = None

    def _base(self, base: str, e: int) -> Element:
        T = self.tower
        b = T.f_element if base == "f" else T.var(base)
        return b**e

    def _images(self, sign: int) -> dict[str, Element]:
        T = self.tower
        sign *= self.sign
        out = {}
        for name, terms in self.shifts.items():
            s = Element.constant(T, 0)
            for base, e in terms:
                s = s + self._base(base, e)
            out[name] = T.var(name) + s if sign > 0 else T.var(name) - s
        for name, terms in self.scales.items():
            s = Element.constant(T, 1)
            for base, e in terms:
                s = s * self._base(base, sign * e)
            out[name] = T.var(name) * s
        return out

    @property
    def forward(self) -> dict[str, Element]:
        if self._fwd is None:
            self._fwd = self._images(+1)
        return self._fwd

    @property
    def backward(self) -> dict[str, Element]:
        if self._inv is None:
            self._inv = self._images(-1)
        return self._inv

    def is_identity(self) -> bool:
        return not self.shifts and not self.scales

    def needs_f_inverse(self) -> bool:
        return any(b == "f" and e < 0 for terms in self.shifts.values() for b, e in terms) or any(
            b == "f" for terms in self.scales.values() for b, _ in terms
        )

    def __call__(self, e) -> Element:
        return self.tower.element(e).substitute(self.forward)

    def apply_inverse(self, e) -> Element:
        return self.tower.element(e).substitute(self.backward)

    def inverse(self) -> "Automorphism":
        inv = Automorphism(self.tower, self.family, self.params, self.shifts, self.scales)
        inv.sign = -self.sign
        return inv

    def fixes_generators(self) -> bool:
        """Composition with the inverse is the identity on every ring generator."""
        T = self.tower
        for name in T.ring.names:
            v = T.var(name)
            if v.substitute(self.forward).substitute(self.backward) != v:
                return False
            if v.substitute(self.backward).substitute(self.forward) != v:
                return False
        return True

    def to_json(self) -> dict:
        out = {"family": self.family}
        out.update(self.params)
        if self.sign < 0:
            out["inverse"] = True
        return out

    def __repr__(self):
        return f"Automorphism({self.to_json()})"

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.tower == other.tower and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(str(sorted(self.to_json().items())))

    @classmethod
    def from_json(cls, tower: RingTower, data: Mapping) -> "Automorphism":
        fam = data["family"]
        if fam == "combined":
            theta = combined_automorphism(tower, data["ti"], data["si"], data["lj"])
        elif fam == "suslin":
            theta = suslin_automorphism(tower, data["v"], data["si"], data.get("shifted"))
        elif fam == "laurent":
            theta = laurent_automorphism(tower, data["ti"], data["tpi"], data["lj"], data.get("shifted"))
        else:
            raise ValueError(f"unknown automorphism family {fam!r}")
        return theta.inverse() if data.get("inverse") else theta


def combined_automorphism(tower: RingTower, ti: Sequence[int], si: Sequence[int], lj: Sequence[int]) -> Automorphism:
    """x_i -> x_i + t^{t_i} + f^{-s_i}, y_j -> y_j f^{l_j}; a zero exponent drops its term."""
    if len(ti) != tower.m or len(si) != tower.m or len(lj) != tower.n:
        raise ValueError("exponent vectors must have lengths m, m, n")
    if tower.f.is_constant() and any(si):
        raise InvalidSubstitution("f is a scalar; f-power shifts are not automorphisms of interest")
    names = tower.ring.names
    shifts = {}
    for k, i in enumerate(tower.x_idx):
        terms = []
        if ti[k]:
            terms.append(("t", ti[k]))
        if si[k]:
            terms.append(("f", -si[k]))
        shifts[names[i]] = terms
    scales = {names[i]: ([("f", lj[k])] if lj[k] else []) for k, i in enumerate(tower.y_idx)}
    params = {"ti": list(ti), "si": list(si), "lj": list(lj)}
    return Automorphism(tower, "combined", params, shifts, scales)


def suslin_automorphism(tower: RingTower, v: str, si: Sequence[int], shifted: Sequence[str] | None = None) -> Automorphism:
    """x -> x + v^{s} for each shifted variable x (default: all x_i other than v)."""
    names = tower.ring.names
    if shifted is None:
        shifted = [names[i] for i in tower.x_idx if names[i] != v]
    shifted = list(shifted)
    if len(si) != len(shifted):
        raise ValueError("one exponent per shifted variable")
    if tower.ring.index(v) in tower.y_idx:
        raise InvalidSubstitution("suslin shifts use a polynomial variable")
    shifts = {x: ([(v, s)] if s else []) for x, s in zip(shifted, si)}
    params = {"v": v, "si": list(si), "shifted": shifted}
    return Automorphism(tower, "suslin", params, shifts, {})


def laurent_automorphism(
    tower: RingTower,
    ti: Sequence[int],
    tpi: Sequence[int],
    lj: Sequence[int],
    shifted: Sequence[str] | None = None,
) -> Automorphism:
    """x -> x + y_n^{t} + y_n^{-t'}, y_j -> y_j y_n^{l_j} (j < n)."""
    if tower.n < 1:
        raise InvalidSubstitution("the Laurent family needs n >= 1")
    names = tower.ring.names
    yn = names[tower.y_idx[-1]]
    if shifted is None:
        shifted = [names[i] for i in tower.x_idx]
    shifted = list(shifted)
    if len(ti) != len(shifted) or len(tpi) != len(shifted) or len(lj) != tower.n - 1:
        raise ValueError("exponent vectors have the wrong lengths")
    shifts = {}
    for x, a, b in zip(shifted, ti, tpi):
        terms = []
        if a:
            terms.append((yn, a))
        if b:
            terms.append((yn, -b))
        shifts[x] = terms
    scales = {names[i]: ([(yn, l)] if l else []) for i, l in zip(tower.y_idx[:-1], lj)}
    params = {"ti": list(ti), "tpi": list(tpi), "lj": list(lj), "shifted": shifted}
    return Automorphism(tower, "laurent", params, shifts, scales)


def identity_automorphism(tower: RingTower) -> Automorphism:
    return combined_automorphism(tower, [0] * tower.m, [0] * tower.m, [0] * tower.n)


def _compatible(theta: Automorphism, lv: Level, tower: RingTower) -> bool:
    if theta.needs_f_inverse() and not lv.invert_f:
        return False
    for name, terms in list(theta.shifts.items()) + list(theta.scales.items()):
        if tower.ring.index(name) not in lv.variables:
            return False
        for base, e in terms:
            if base == "f":
                if not lv.invert_f and e < 0:
                    return False
                continue
            i = tower.ring.index(base)
            if i not in lv.variables:
                return False
            if e < 0 and i not in lv.inverted_y:
                return False
    for name in theta.scales:
        if tower.ring.index(name) not in lv.inverted_y:
            return False
    return True


def apply_automorphism(I: IdealHandle, theta: Automorphism, check_height: bool = False) -> IdealHandle:
    """Generator-wise image of I; optionally re-checks that height is preserved."""
    if theta.tower != I.tower:
        raise LevelMismatch("automorphism and ideal live in different towers")
    if not _compatible(theta, I.level, I.tower):
        raise LevelMismatch(f"{theta.family} automorphism is not defined at level {I.level.name}")
    out = IdealHandle(I.tower, I.level.name, [theta(g) for g in I.generators])
    if check_height and I.is_proper():
        if height_at_level(out) != height_at_level(I):
            raise AssertionError("automorphism changed the height")
    return out


def apply_inverse(I: IdealHandle, theta: Automorphism) -> IdealHandle:
    return IdealHandle(I.tower, I.level.name, [theta.apply_inverse(g) for g in I.generators])
