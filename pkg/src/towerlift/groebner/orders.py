"""Monomial orders: lex, grevlex and block (product) orders."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


def _grevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``blocks`` is an ordered partition of variable indices for block orders;
    monomials are compared by grevlex on the first block, ties broken by
    grevlex on the next block, and so on.
    """

    kind: str = "grevlex"
    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs a variable partition")

    @cached_property
    def key(self):
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        blocks = self.blocks

        def key(m):
            out = []
            for blk in blocks:
                sub = [m[i] for i in blk]
                out.append(sum(sub))
                out.extend(-e for e in reversed(sub))
            return tuple(out)

        return key

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "block":
            d["blocks"] = [list(b) for b in self.blocks]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "TermOrder":
        return cls(d["kind"], tuple(tuple(b) for b in d.get("blocks", ())))


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


def block_order(nvars: int, first: Sequence[int]) -> TermOrder:
    """Elimination order: the variables in ``first`` dominate the rest."""
    first = tuple(first)
    rest = tuple(i for i in range(nvars) if i not in first)
    blocks = tuple(b for b in (first, rest) if b)
    return TermOrder("block", blocks)
