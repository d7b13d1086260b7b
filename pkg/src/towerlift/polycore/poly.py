"""Sparse multivariate polynomials over an exact field.

A polynomial is a map from exponent tuples to nonzero coefficients.  Instances
are treated as immutable; every operation returns a new object.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import DomainError


class PolyRing:
    """k[v_1, ..., v_N] with a fixed variable order."""

    def __init__(self, names: Sequence[str], field):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.field = field
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != self.nvars:
            raise ValueError("duplicate variable names")

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.names == self.names
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = self.field(c)
        if not c:
            return self.zero
        return Polynomial(self, {tuple(exps): c})

    def gen(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.index(var)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def from_terms(self, terms: Mapping[tuple, object]) -> "Polynomial":
        K = self.field
        out = {}
        for m, c in terms.items():
            c = K(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def extend(self, names: Sequence[str]) -> "PolyRing":
        """Ring with extra variables appended after the existing ones."""
        return PolyRing(self.names + tuple(names), self.field)


def _check(a: "Polynomial", b: "Polynomial"):
    if a.ring is not b.ring and a.ring != b.ring:
        raise DomainError("polynomials live in different rings")


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and not any(next(iter(self.terms)))
        )

    def constant_value(self):
        """Coefficient of the monomial 1."""
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check(self, other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if p:
                    v %= p
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        _check(self, other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: tuple, c) -> "Polynomial":
        p = self.ring.field.p
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if p:
                w %= p
            out[tuple(x + y for x, y in zip(m, mono))] = w
        return Polynomial(self.ring, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure --------------------------------------------------------
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def min_degree(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return 0
        return min(m[i] for m in self.terms)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        s = set()
        for m in self.terms:
            s.update(i for i, e in enumerate(m) if e)
        return s

    def coefficients_in(self, var) -> dict[int, "Polynomial"]:
        """Split as sum_k c_k * var^k; returns {k: c_k} with var absent from c_k."""
        i = var if isinstance(var, int) else self.ring.index(var)
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = m[i]
            parts.setdefault(k, {})[m[:i] + (0,) + m[i + 1:]] = c
        return {k: Polynomial(self.ring, t) for k, t in parts.items()}

    def evaluate(self, var, value) -> "Polynomial":
        """Substitute a scalar for one variable."""
        i = var if isinstance(var, int) else self.ring.index(var)
        K = self.ring.field
        value = K(value)
        out = self.ring.zero
        for k, c in sorted(self.coefficients_in(i).items()):
            out = out + c.scale(pow(value, k, K.p) if K.p else value**k)
        return out

    def compose(self, images: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Polynomial substitution v_i -> images[i] (identity elsewhere)."""
        R = self.ring
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        result = R.zero
        for m, c in self.terms.items():
            fixed = [0] * R.nvars
            term = None
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in images:
                    term = power(i, e) if term is None else term * power(i, e)
                else:
                    fixed[i] = e
            mono = Polynomial(R, {tuple(fixed): c})
            result = result + (mono if term is None else mono * term)
        return result

    def divexact(self, other: "Polynomial") -> "Polynomial | None":
        """Exact quotient self/other, or None when other does not divide self."""
        _check(self, other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        K = self.ring.field
        lm_o = max(other.terms)
        inv_lc = K.inv(other.terms[lm_o])
        rem = self
        quot: dict = {}
        while rem.terms:
            lm = max(rem.terms)
            if any(a < b for a, b in zip(lm, lm_o)):
                return None
            shift = tuple(a - b for a, b in zip(lm, lm_o))
            c = rem.terms[lm] * inv_lc
            if K.p:
                c %= K.p
            quot[shift] = c
            rem = rem - other.mul_term(shift, c)
        return Polynomial(self.ring, quot)

    def monic_scalar(self) -> "Polynomial":
        """Divide by the coefficient of the lex-largest monomial."""
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.terms[max(self.terms)]))

    def change_ring(self, ring: PolyRing, mapping: Sequence[int] | None = None):
        """Move into another ring; mapping[i] is the target index of variable i."""
        if mapping is None:
            mapping = [ring.index(n) for n in self.ring.names]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    e[mapping[i]] = k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # -- printing ---------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _mono_str(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    K = p.ring.field
    out = []
    for m, c in p.sorted_terms():
        if K.p and c > K.p // 2:
            # print residues symmetrically for readability; parsing maps back
            c = c - K.p
        neg = c < 0
        a = -c if neg else c
        ms = _mono_str(p.ring.names, m)
        if not ms:
            body = K.to_str(a)
        elif a == 1:
            body = ms
        else:
            body = f"{K.to_str(a)}*{ms}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def poly_sum(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    out = ring.zero
    for q in polys:
        out = out + q
    return out
