"""Functional types and their Lambek (bi-closed) witnesses.

A pivotal or compact closed type is functional when it is one positive
generator, or has at least one positive and at least one negative factor.
In the self-dual systems every non-unit type is functional.

>>> from typelift.kernel import parse_type, System
>>> str(lambek_witness(parse_type(System.PIVOTAL, "n*.s.n*")))
'((n \\\\ s) / n)'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import NotFunctional, SystemMismatch, UnsupportedSystem
from .kernel import System, Type, dual, tensor


def is_functional(system: System, t: Type) -> bool:
    if system is System.AUTONOMOUS:
        raise UnsupportedSystem("functionality of autonomous types is not decided here")
    if t.system is not system:
        raise SystemMismatch(f"type is {t.system.value}, expected {system.value}")
    if system.self_dual:
        return len(t) > 0
    signs = {s for _, s in t.factors}
    if len(t) == 1:
        return signs == {1}
    return signs == {1, -1}


@dataclass(frozen=True)
class Leaf:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Over:
    """``left / right``: expects ``right`` on its right."""

    left: "LambekType"
    right: "LambekType"

    def __str__(self):
        return f"({self.left} / {self.right})"


@dataclass(frozen=True)
class Under:
    """``left \\ right``: expects ``left`` on its left."""

    left: "LambekType"
    right: "LambekType"

    def __str__(self):
        return f"({self.left} \\ {self.right})"


LambekType = Union[Leaf, Over, Under]


def lambek_image(L: LambekType) -> Type:
    if isinstance(L, Leaf):
        return Type(System.PIVOTAL, ((L.name, 1),))
    left, right = lambek_image(L.left), lambek_image(L.right)
    if isinstance(L, Over):
        return tensor(left, dual(System.PIVOTAL, right))
    return tensor(dual(System.PIVOTAL, left), right)


def _all(t: Type, sign: int) -> bool:
    return all(s == sign for _, s in t.factors)


def lambek_witness(t: Type) -> LambekType:
    """Build a Lambek type whose pivotal image is ``t``.

    Recurses on the last factor; the four cases are tried in a fixed order so
    the result is deterministic.
    """
    if t.system is not System.PIVOTAL:
        raise SystemMismatch("Lambek witnesses are built for pivotal types")
    if not is_functional(System.PIVOTAL, t):
        raise NotFunctional(f"{t} is not functional")
    return _witness(t)


def _witness(t: Type) -> LambekType:
    f = t.factors
    if len(f) == 1:
        return Leaf(f[0][0])
    last = f[-1][0]
    prefix = Type(System.PIVOTAL, f[:-1])
    suffix = Type(System.PIVOTAL, f[1:])
    if f[-1][1] < 0:
        if is_functional(System.PIVOTAL, prefix):
            return Over(_witness(prefix), Leaf(last))
        if _all(prefix, 1):
            return Over(Leaf(f[0][0]), _witness(dual(System.PIVOTAL, suffix)))
    else:
        flipped = dual(System.PIVOTAL, prefix)
        if is_functional(System.PIVOTAL, flipped):
            return Under(_witness(flipped), Leaf(last))
        if _all(prefix, -1):
            return Under(Leaf(f[0][0]), _witness(suffix))
    raise AssertionError(f"no witness case applies to {t}")  # unreachable for functional t
