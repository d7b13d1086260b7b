"""Elements of the localized ring A = S[(y_1...y_n)^-1, f^-1].

An element is num / ((y_1*...*y_n)^a * f^b) with num a polynomial in the
cover S = k[z, x, y, t].  The constructor always returns the canonical form:
a and b are as small as possible.  Because f involves only z and t, the two
denominator factors are coprime, so the canonical triple is unique and
equality is triple equality.
"""

from __future__ import annotations

from typing import Mapping

from ..errors import BoundaryUndefined, DomainError, InvalidSubstitution, NotAUnit
from .poly import Polynomial


def _strip(tower, num: Polynomial, a: int, b: int):
    if not num.terms:
        return num, 0, 0
    if a:
        if not tower.y_idx:
            a = 0
        else:
            k = min(min(m[i] for m in num.terms) for i in tower.y_idx)
            k = min(k, a)
            if k:
                ys = tower.y_idx
                out = {}
                for m, c in num.terms.items():
                    e = list(m)
                    for i in ys:
                        e[i] -= k
                    out[tuple(e)] = c
                num = Polynomial(num.ring, out)
                a -= k
    if b:
        f = tower.f
        if f.is_constant():
            num = num.scale(tower.field.inv(f.constant_value()) ** b)
            b = 0
        else:
            while b:
                q = num.divexact(f)
                if q is None:
                    break
                num, b = q, b - 1
    return num, a, b


class Element:
    """An element of A, stored canonically."""

    __slots__ = ("tower", "num", "a", "b")

    def __init__(self, tower, num: Polynomial, a: int = 0, b: int = 0):
        if num.ring is not tower.ring and num.ring != tower.ring:
            raise DomainError("numerator is not in the tower's polynomial cover")
        if a < 0 or b < 0:
            raise ValueError("denominator exponents must be nonnegative")
        num, a, b = _strip(tower, num, a, b)
        self.tower = tower
        self.num = num
        self.a = a
        self.b = b

    @classmethod
    def _raw(cls, tower, num, a, b):
        e = object.__new__(cls)
        e.tower, e.num, e.a, e.b = tower, num, a, b
        return e

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_poly(cls, tower, p: Polynomial) -> "Element":
        return cls._raw(tower, p, 0, 0)

    @classmethod
    def constant(cls, tower, c) -> "Element":
        return cls._raw(tower, tower.ring.constant(c), 0, 0)

    @classmethod
    def var(cls, tower, name) -> "Element":
        return cls._raw(tower, tower.ring.gen(name), 0, 0)

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.num.terms)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, Element):
            return (
                self.tower == other.tower
                and self.a == other.a
                and self.b == other.b
                and self.num == other.num
            )
        if isinstance(other, int):
            return self == Element.constant(self.tower, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.a, self.b))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.tower is not self.tower and other.tower != self.tower:
                raise DomainError("elements belong to different towers")
            return other
        if isinstance(other, Polynomial):
            return Element(self.tower, other)
        return Element.constant(self.tower, other)

    def _lift(self, a: int, b: int) -> Polynomial:
        """Numerator over the common denominator Y^a f^b (a >= self.a, b >= self.b)."""
        T = self.tower
        num = self.num
        if a > self.a:
            num = num * T.ypow(a - self.a)
        if b > self.b:
            num = num * T.fpow(b - self.b)
        return num

    def __add__(self, other):
        other = self._coerce(other)
        a, b = max(self.a, other.a), max(self.b, other.b)
        return Element(self.tower, self._lift(a, b) + other._lift(a, b), a, b)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.tower, -self.num, self.a, self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Element(self.tower, self.num * other.num, self.a + other.a, self.b + other.b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Element(self.tower, self.num**k, self.a * k, self.b * k)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def inverse(self) -> "Element":
        """Inverse in A; raises NotAUnit unless num divides a power of Y*f."""
        T = self.tower
        num = self.num
        if not num.terms:
            raise ZeroDivisionError("inverse of zero")
        if num.is_constant():
            c = T.field.inv(num.constant_value())
            return Element(T, T.ypow(self.a) * T.fpow(self.b), 0, 0) * c
        u = T.unit_base
        if u.is_constant():
            raise NotAUnit(f"{self} is not a unit")
        bound = num.total_degree()
        power = T.ring.one
        for k in range(1, bound + 1):
            power = power * u
            q = power.divexact(num)
            if q is not None:
                ka = k if T.y_idx else 0
                return Element(T, q * T.ypow(self.a) * T.fpow(self.b), ka, k)
        raise NotAUnit(f"{self} is not a unit")

    def is_unit(self) -> bool:
        try:
            self.inverse()
        except NotAUnit:
            return False
        return True

    # -- maps -------------------------------------------------------------
    def substitute(self, mapping: Mapping) -> "Element":
        """Ring-homomorphic image under var -> Element (identity elsewhere)."""
        T = self.tower
        images: dict[int, Element] = {}
        for var, img in mapping.items():
            i = var if isinstance(var, int) else T.ring.index(var)
            images[i] = self._coerce(img)
        for i in T.y_idx:
            if i in images and not images[i].is_unit():
                raise InvalidSubstitution(
                    f"image of {T.ring.names[i]} is not a unit: {images[i]}"
                )
        num_img = _apply(T, self.num, images)
        if self.a == 0 and self.b == 0:
            return num_img
        den = Element.from_poly(T, T.ypow(self.a) * T.fpow(self.b))
        den_img = _apply(T, den.num, images)
        try:
            return num_img * den_img.inverse()
        except NotAUnit:
            raise InvalidSubstitution(
                f"denominator image {den_img} is not a unit"
            ) from None

    def evaluate_at_one(self) -> "Element":
        """Image under t -> 1 (an element with no t and no f-denominator)."""
        T = self.tower
        f1 = T.f_at_one()
        if f1 is None:
            raise BoundaryUndefined(f"f(1) = {T.f.evaluate(T.t_idx, 1)} is not a unit")
        num = self.num.evaluate(T.t_idx, 1)
        if self.b:
            num = num.scale(T.field.inv(f1) ** self.b)
        return Element(T, num, self.a, 0)

    def coefficients_in(self, var) -> dict[int, "Element"]:
        """Expand as sum_k c_k var^k with var-free coefficients c_k.

        var may be t (then b must be 0 unless f is constant) or a Laurent y_j,
        in which case negative degrees can occur.
        """
        T = self.tower
        i = var if isinstance(var, int) else T.ring.index(var)
        if i == T.t_idx and self.b and not T.f.is_constant():
            raise DomainError("not a polynomial in t: f appears in the denominator")
        shift = self.a if i in T.y_idx else 0
        out = {}
        for k, c in self.num.coefficients_in(i).items():
            if shift:
                e = [0] * T.ring.nvars
                e[i] = shift
                c = c.mul_term(tuple(e), T.field.one)
            out[k - shift] = Element(T, c, self.a, self.b)
        return out

    def degree_in(self, var) -> int:
        return max(self.coefficients_in(var))

    # -- printing ---------------------------------------------------------
    def __str__(self):
        T = self.tower
        if self.a == 0 and self.b == 0:
            return str(self.num)
        den = []
        if self.a:
            y = "*".join(T.ring.names[i] for i in T.y_idx)
            den.append(f"({y})^{self.a}")
        if self.b:
            den.append(f"({T.f})^{self.b}")
        return f"({self.num})/({'*'.join(den)})"

    def __repr__(self):
        return f"Element({str(self)!r})"


def _apply(T, num: Polynomial, images: dict) -> Element:
    """Image of a polynomial numerator under a substitution, as an Element."""
    if not images or not num.terms:
        return Element.from_poly(T, num)
    R = T.ring
    cache: dict = {}

    def power(i, e):
        key = (i, e)
        v = cache.get(key)
        if v is None:
            img = images[i]
            v = (img.num**e, img.a * e, img.b * e)
            cache[key] = v
        return v

    groups: dict[tuple[int, int], Polynomial] = {}
    for m, c in num.terms.items():
        fixed = [0] * R.nvars
        acc = None
        a = b = 0
        for i, e in enumerate(m):
            if not e:
                continue
            if i in images:
                pn, pa, pb = power(i, e)
                acc = pn if acc is None else acc * pn
                a += pa
                b += pb
            else:
                fixed[i] = e
        term = Polynomial(R, {tuple(fixed): c})
        if acc is not None:
            term = term * acc
        key = (a, b)
        groups[key] = groups[key] + term if key in groups else term
    amax = max(k[0] for k in groups)
    bmax = max(k[1] for k in groups)
    total = R.zero
    for (a, b), p in groups.items():
        if a < amax:
            p = p * T.ypow(amax - a)
        if b < bmax:
            p = p * T.fpow(bmax - b)
        total = total + p
    return Element(T, total, amax, bmax)
