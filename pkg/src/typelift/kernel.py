"""Type systems, signatures and the functors between them.

Objects of the free categories are stored as canonical forms of their
isomorphism class, so equality of :class:`Type` values is isomorphism:

==============  =====================  ==================================
system          factor                 container
==============  =====================  ==================================
autonomous      ``(name, exponent)``   ordered, exponent in Z (0 = plain)
pivotal         ``(name, sign)``       ordered, sign in {+1, -1}
sdp             ``name``               ordered
cc              ``(name, sign)``       sorted multiset
sdcc            ``name``               sorted multiset
==============  =====================  ==================================

No cancellation ever happens at construction: ``a . a*`` is not the unit.

>>> sig = load_signature("gen n\\ngen s\\nsentence s")
>>> t = parse_type(System.AUTONOMOUS, "n^1.s.n^-1", sig)
>>> format_type(image(Functor.AUT_TO_PIV, t))
'n*.s.n*'
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    CycleInSubtyping,
    InvalidName,
    MissingDistinguished,
    ParseError,
    SystemMismatch,
    UnknownGenerator,
)

_NAME_RE = re.compile(r"[^\s*^:#.,{}]+")


def check_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.fullmatch(name) or name == "1":
        raise InvalidName(f"invalid generator name {name!r}")
    return name


class System(enum.Enum):
    AUTONOMOUS = "autonomous"
    PIVOTAL = "pivotal"
    SELF_DUAL_PIVOTAL = "sdp"
    COMPACT_CLOSED = "cc"
    SELF_DUAL_COMPACT_CLOSED = "sdcc"

    @property
    def ordered(self) -> bool:
        return self in (System.AUTONOMOUS, System.PIVOTAL, System.SELF_DUAL_PIVOTAL)

    @property
    def signed(self) -> bool:
        return self in (System.AUTONOMOUS, System.PIVOTAL, System.COMPACT_CLOSED)

    @property
    def self_dual(self) -> bool:
        return self in (System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED)

    @classmethod
    def parse(cls, text: str) -> "System":
        key = text.strip().lower().replace("-", "_")
        aliases = {
            "autonomous": cls.AUTONOMOUS, "aut": cls.AUTONOMOUS, "pregroup": cls.AUTONOMOUS,
            "pivotal": cls.PIVOTAL, "piv": cls.PIVOTAL,
            "sdp": cls.SELF_DUAL_PIVOTAL, "self_dual_pivotal": cls.SELF_DUAL_PIVOTAL,
            "cc": cls.COMPACT_CLOSED, "compact_closed": cls.COMPACT_CLOSED,
            "sdcc": cls.SELF_DUAL_COMPACT_CLOSED,
            "self_dual_compact_closed": cls.SELF_DUAL_COMPACT_CLOSED,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ParseError(f"unknown system {text!r}") from None


@dataclass(frozen=True)
class Signature:
    """Generators, a subtyping partial order on them and the sentence type.

    ``edges`` holds pairs ``(x, y)`` meaning ``x <= y``. The reflexive
    transitive closure is computed once; cycles are rejected.
    """

    generators: frozenset
    edges: frozenset
    distinguished: str
    _up: Mapping = field(init=False, repr=False, compare=False)
    _component: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", frozenset(self.generators))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        for g in self.generators:
            check_name(g)
        if self.distinguished not in self.generators:
            raise MissingDistinguished(
                f"sentence type {self.distinguished!r} is not a generator")
        succ = {g: set() for g in self.generators}
        for x, y in self.edges:
            for end in (x, y):
                if end not in succ:
                    raise UnknownGenerator(f"subtype edge mentions unknown generator {end!r}")
            succ[x].add(y)
        up = {}
        for g in self.generators:
            seen = {g}
            todo = [g]
            while todo:
                for nxt in succ[todo.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
            up[g] = frozenset(seen)
        for x in self.generators:
            for y in up[x]:
                if y != x and x in up[y]:
                    raise CycleInSubtyping(f"{x!r} and {y!r} are subtypes of each other")
        object.__setattr__(self, "_up", up)
        # connected components of the comparability graph
        nbrs = {g: set() for g in self.generators}
        for x, y in self.edges:
            nbrs[x].add(y)
            nbrs[y].add(x)
        comp = {}
        for g in sorted(self.generators):
            if g in comp:
                continue
            comp[g] = g
            queue = deque([g])
            while queue:
                for nxt in nbrs[queue.popleft()]:
                    if nxt not in comp:
                        comp[nxt] = g
                        queue.append(nxt)
        object.__setattr__(self, "_component", comp)

    @classmethod
    def make(cls, generators: Iterable[str], edges: Iterable = (), distinguished: str = "s"):
        return cls(frozenset(generators), frozenset(tuple(e) for e in edges), distinguished)

    def _known(self, g):
        if g not in self._up:
            raise UnknownGenerator(f"unknown generator {g!r}")

    def leq(self, x: str, y: str) -> bool:
        self._known(x)
        self._known(y)
        return y in self._up[x]

    def upper(self, x: str) -> frozenset:
        self._known(x)
        return self._up[x]

    def joinable(self, x: str, y: str) -> bool:
        """True when ``x`` and ``y`` have a common upper bound."""
        self._known(x)
        self._known(y)
        return not self._up[x].isdisjoint(self._up[y])

    def component(self, x: str) -> str:
        self._known(x)
        return self._component[x]

    def extend(self, generators: Iterable[str] = (), edges: Iterable = ()) -> "Signature":
        return Signature(self.generators | frozenset(generators),
                         self.edges | frozenset(tuple(e) for e in edges),
                         self.distinguished)

    def union(self, other: "Signature") -> "Signature":
        if other.distinguished != self.distinguished:
            raise SystemMismatch("signatures have different sentence types")
        return self.extend(other.generators, other.edges)


def leq(sig: Signature, x: str, y: str) -> bool:
    return sig.leq(x, y)


def load_signature(text: str) -> Signature:
    """Read the line format ``gen NAME`` / ``sub X Y`` / ``sentence NAME``."""
    gens, edges, sentence = [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "gen" and len(args) >= 1:
            gens.extend(args)
        elif head == "sub" and len(args) == 2:
            edges.append((args[0], args[1]))
        elif head == "sentence" and len(args) == 1:
            if sentence is not None and sentence != args[0]:
                raise ParseError("sentence type declared twice", lineno)
            sentence = args[0]
        else:
            raise ParseError(f"unrecognised signature line {line!r}", lineno, 1)
    if sentence is None:
        raise MissingDistinguished("no 'sentence' line")
    for g in gens:
        try:
            check_name(g)
        except InvalidName as exc:
            raise ParseError(str(exc)) from None
    return Signature.make(gens, edges, sentence)


def dump_signature(sig: Signature) -> str:
    lines = [f"gen {g}" for g in sorted(sig.generators)]
    lines += [f"sub {x} {y}" for x, y in sorted(sig.edges)]
    lines.append(f"sentence {sig.distinguished}")
    return "\n".join(lines) + "\n"


# -- types ------------------------------------------------------------------


def _canonical(system: System, factors) -> tuple:
    factors = tuple(tuple(f) if isinstance(f, list) else f for f in factors)
    for f in factors:
        if system.signed:
            if not (isinstance(f, tuple) and len(f) == 2 and isinstance(f[0], str)
                    and isinstance(f[1], int)):
                raise SystemMismatch(f"{system.value} factor must be (name, int), got {f!r}")
            if system is not System.AUTONOMOUS and f[1] not in (1, -1):
                raise SystemMismatch(f"{system.value} sign must be +1 or -1, got {f[1]!r}")
        elif not isinstance(f, str):
            raise SystemMismatch(f"{system.value} factor must be a name, got {f!r}")
    if not system.ordered:
        factors = tuple(sorted(factors))
    return factors


@dataclass(frozen=True, order=True)
class Type:
    """An object of one of the free type systems, in canonical form."""

    system: System = field(compare=False)
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", _canonical(self.system, self.factors))

    def __eq__(self, other):
        return (isinstance(other, Type) and self.system is other.system
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.system, self.factors))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __str__(self):
        return format_type(self)

    def __repr__(self):
        return f"Type({self.system.value}, {format_type(self)!r})"

    def names(self) -> list:
        return [f if isinstance(f, str) else f[0] for f in self.factors]


def unit(system: System) -> Type:
    return Type(system, ())


def check_type(sig: Signature, t: Type) -> Type:
    for name in t.names():
        if name not in sig.generators:
            raise UnknownGenerator(f"unknown generator {name!r}")
    return t


def _same_system(*types: Type) -> System:
    systems = {t.system for t in types}
    if len(systems) != 1:
        raise SystemMismatch(f"types from different systems: {sorted(s.value for s in systems)}")
    return systems.pop()


def tensor(*types: Type) -> Type:
    if not types:
        raise ValueError("tensor of nothing has no system; use unit()")
    system = _same_system(*types)
    return Type(system, tuple(f for t in types for f in t.factors))


def dual(system: System, t: Type) -> Type:
    """The dual object. In autonomous systems this is the left adjoint."""
    if t.system is not system:
        raise SystemMismatch(f"type is {t.system.value}, expected {system.value}")
    if system is System.AUTONOMOUS:
        return dual_left(t)
    if system is System.PIVOTAL:
        return Type(system, tuple((g, -s) for g, s in reversed(t.factors)))
    if system is System.COMPACT_CLOSED:
        return Type(system, tuple((g, -s) for g, s in t.factors))
    if system is System.SELF_DUAL_PIVOTAL:
        return Type(system, tuple(reversed(t.factors)))
    return t


def dual_left(t: Type) -> Type:
    if t.system is not System.AUTONOMOUS:
        raise SystemMismatch("left adjoints are only distinguished in autonomous systems")
    return Type(t.system, tuple((g, e - 1) for g, e in reversed(t.factors)))


def dual_right(t: Type) -> Type:
    if t.system is not System.AUTONOMOUS:
        raise SystemMismatch("right adjoints are only distinguished in autonomous systems")
    return Type(t.system, tuple((g, e + 1) for g, e in reversed(t.factors)))


def isomorphic(system: System, t1: Type, t2: Type) -> bool:
    if t1.system is not system or t2.system is not system:
        raise SystemMismatch("isomorphism test across systems")
    return t1.factors == t2.factors


# -- functors -----------------------------------------------------------------


class Functor(enum.Enum):
    """The forgetful functors of the lower hierarchy, named source-to-target."""

    AUT_TO_PIV = (System.AUTONOMOUS, System.PIVOTAL)
    PIV_TO_CC = (System.PIVOTAL, System.COMPACT_CLOSED)
    PIV_TO_SDP = (System.PIVOTAL, System.SELF_DUAL_PIVOTAL)
    CC_TO_SDCC = (System.COMPACT_CLOSED, System.SELF_DUAL_COMPACT_CLOSED)
    SDP_TO_SDCC = (System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED)
    PIV_TO_SDCC = (System.PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED)

    @property
    def source(self) -> System:
        return self.value[0]

    @property
    def target(self) -> System:
        return self.value[1]

    @classmethod
    def between(cls, source: System, target: System) -> "Functor":
        for f in cls:
            if f.source is source and f.target is target:
                return f
        raise SystemMismatch(f"no functor from {source.value} to {target.value}")


def image(f: Functor, t: Type) -> Type:
    if t.system is not f.source:
        raise SystemMismatch(f"{f.name} expects a {f.source.value} type, got {t.system.value}")
    if f is Functor.AUT_TO_PIV:
        return Type(f.target, tuple((g, -1 if e % 2 else 1) for g, e in t.factors))
    if f is Functor.PIV_TO_CC:
        return Type(f.target, t.factors)
    if f in (Functor.PIV_TO_SDP, Functor.CC_TO_SDCC, Functor.PIV_TO_SDCC):
        return Type(f.target, tuple(g for g, _ in t.factors))
    return Type(f.target, t.factors)  # SDP_TO_SDCC


# -- text form ----------------------------------------------------------------


def format_factor(system: System, f) -> str:
    if system is System.AUTONOMOUS:
        g, e = f
        return g if e == 0 else f"{g}^{e}"
    if system.signed:
        g, s = f
        return g if s > 0 else g + "*"
    return f


def format_type(t: Type) -> str:
    if not t.factors:
        return "1"
    body = [format_factor(t.system, f) for f in t.factors]
    if t.system.ordered:
        return ".".join(body)
    return "{" + ",".join(body) + "}"


def _parse_factor(system: System, text: str):
    if system is System.AUTONOMOUS:
        name, _, exp = text.partition("^")
        check_name(name)
        if not _:
            return (name, 0)
        try:
            return (name, int(exp))
        except ValueError:
            raise ParseError(f"bad exponent in {text!r}") from None
    if "^" in text:
        raise ParseError(f"exponents are only allowed in autonomous types: {text!r}")
    if system.signed:
        if text.endswith("*"):
            return (check_name(text[:-1]), -1)
        return (check_name(text), 1)
    if text.endswith("*"):
        raise ParseError(f"self-dual types carry no signs: {text!r}")
    return check_name(text)


def parse_type(system: System, text: str, sig: Signature | None = None) -> Type:
    """Parse ``a.b*.c`` (ordered systems) or ``{a,b*}`` (commutative ones)."""
    text = text.strip()
    if text in ("1", "{}"):
        if system.ordered and text == "{}":
            raise ParseError(f"bag notation used for ordered system {system.value}")
        return unit(system)
    if system.ordered:
        if text.startswith("{"):
            raise ParseError(f"bag notation used for ordered system {system.value}")
        parts = text.split(".")
    else:
        if not (text.startswith("{") and text.endswith("}")):
            raise ParseError(f"{system.value} types are written as {{...}} bags: {text!r}")
        parts = [p.strip() for p in text[1:-1].split(",")]
    if any(not p for p in parts):
        raise ParseError(f"empty factor in {text!r}")
    try:
        factors = tuple(_parse_factor(system, p) for p in parts)
    except InvalidName as exc:
        raise ParseError(str(exc)) from None
    t = Type(system, factors)
    if sig is not None:
        check_type(sig, t)
    return t
