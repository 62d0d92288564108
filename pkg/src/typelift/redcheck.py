"""Deciding whether a tensor of types reduces to the unit or to the sentence type.

A reduction is certified by a :class:`Matching`: a set of cancelling pairs of
occurrence positions (0-based, over the concatenated factors) plus, when the
target is the sentence type, one leftover occurrence below it.

Planar systems (autonomous, pivotal, sdp) need non-crossing pairs and an
unenclosed leftover; they are decided by interval dynamic programming.
Compact closed bags are a bipartite matching problem (positives against
negatives); self-dual bags are a general pairing problem, solved here by
memoised search over per-generator counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import SystemMismatch
from .kernel import Signature, System, Type, check_type


class Target(enum.Enum):
    UNIT = "unit"
    DISTINGUISHED = "distinguished"
    S = "distinguished"


@dataclass(frozen=True)
class Matching:
    pairs: tuple
    leftover: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(tuple(p) for p in self.pairs)))

    def key(self):
        return (self.pairs, -1 if self.leftover is None else self.leftover)

    def __str__(self):
        body = " ".join(f"({i},{j})" for i, j in self.pairs)
        if self.leftover is not None:
            body = (body + " " if body else "") + f"leftover {self.leftover}"
        return body or "empty"


def flatten(system: System, ts) -> list:
    if isinstance(ts, Type):
        ts = [ts]
    letters = []
    for t in ts:
        if t.system is not system:
            raise SystemMismatch(f"expected {system.value} types, got {t.system.value}")
        letters.extend(t.factors)
    return letters


def _name(system, letter):
    return letter if system.self_dual else letter[0]


def pair_ok(system: System, sig: Signature, x, y) -> bool:
    """Cancellation rule for letters ``x`` (left) and ``y`` (right)."""
    if system.self_dual:
        return sig.joinable(x, y)
    (gx, ex), (gy, ey) = x, y
    if system is System.AUTONOMOUS:
        if ey != ex + 1:
            return False
        return sig.leq(gx, gy) if ex % 2 == 0 else sig.leq(gy, gx)
    if ex == ey:
        return False
    return sig.leq(gx, gy) if ex > 0 else sig.leq(gy, gx)


def leftover_ok(system: System, sig: Signature, x) -> bool:
    if system.self_dual:
        return sig.leq(x, sig.distinguished)
    g, e = x
    positive = e == 0 if system is System.AUTONOMOUS else e > 0
    return positive and sig.leq(g, sig.distinguished)


def _balanced(system, sig, letters, target) -> bool:
    """Necessary condition: per subtyping component, signed counts must match."""
    n = len(letters)
    if n % 2 != (1 if target is Target.DISTINGUISHED else 0):
        return False
    net = {}
    for x in letters:
        if system.self_dual:
            c = sig.component(x)
            net[c] = net.get(c, 0) ^ 1
        else:
            g, e = x
            c = sig.component(g)
            sign = (-1 if e % 2 else 1) if system is System.AUTONOMOUS else e
            net[c] = net.get(c, 0) + sign
    want = sig.component(sig.distinguished) if target is Target.DISTINGUISHED else None
    for c, v in net.items():
        if v != (1 if c == want else 0):
            return False
    return target is Target.UNIT or want in net


# -- planar systems -------------------------------------------------------------


def _interval_table(system, sig, letters):
    n = len(letters)
    ok = [[pair_ok(system, sig, letters[i], letters[j]) if i < j else False
           for j in range(n)] for i in range(n)]
    can = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        can[i][i] = True
    for length in range(2, n + 1, 2):
        for i in range(0, n - length + 1):
            j = i + length
            row = ok[i]
            for k in range(i + 1, j, 2):
                if row[k] and can[i + 1][k] and can[k + 1][j]:
                    can[i][j] = True
                    break
    return ok, can


def _least_planar(ok, can, i, j, out):
    # lexicographically least non-crossing perfect matching of [i, j)
    while i < j:
        for k in range(i + 1, j, 2):
            if ok[i][k] and can[i + 1][k] and can[k + 1][j]:
                out.append((i, k))
                _least_planar(ok, can, i + 1, k, out)
                i = k + 1
                break
        else:
            raise AssertionError("interval table out of sync")


def _reduce_planar(system, sig, letters, target):
    n = len(letters)
    ok, can = _interval_table(system, sig, letters)
    if target is Target.UNIT:
        if not can[0][n]:
            return None
        out = []
        _least_planar(ok, can, 0, n, out)
        return Matching(tuple(out))
    best = None
    for p in range(0, n, 2):
        if can[0][p] and can[p + 1][n] and leftover_ok(system, sig, letters[p]):
            out = []
            _least_planar(ok, can, 0, p, out)
            _least_planar(ok, can, p + 1, n, out)
            m = Matching(tuple(out), p)
            if best is None or m.key() < best.key():
                best = m
    return best


# -- compact closed bags ----------------------------------------------------------


def _bipartite_perfect(sig, letters, alive, leftover_slot):
    """Kuhn matching of alive positives onto alive negatives (+ a virtual S* slot)."""
    pos = [i for i in alive if letters[i][1] > 0]
    neg = [i for i in alive if letters[i][1] < 0]
    slots = neg + (["S*"] if leftover_slot else [])
    if len(pos) != len(slots):
        return False
    adj = {}
    for i in pos:
        gi = letters[i][0]
        row = [k for k, j in enumerate(neg) if sig.leq(gi, letters[j][0])]
        if leftover_slot and sig.leq(gi, sig.distinguished):
            row.append(len(neg))
        adj[i] = row
    owner = [None] * len(slots)

    def augment(i, seen):
        for k in adj[i]:
            if k in seen:
                continue
            seen.add(k)
            if owner[k] is None or augment(owner[k], seen):
                owner[k] = i
                return True
        return False

    for i in pos:
        if not augment(i, set()):
            return False
    return True


def _reduce_cc(sig, letters, target):
    alive = list(range(len(letters)))
    need_left = target is Target.DISTINGUISHED
    if not _bipartite_perfect(sig, letters, alive, need_left):
        return None
    pairs, leftover = [], None
    while alive:
        i = alive[0]
        rest = alive[1:]
        chosen = False
        tried = set()
        for j in rest:
            if letters[j] in tried or not pair_ok(System.COMPACT_CLOSED, sig, letters[i], letters[j]):
                continue
            tried.add(letters[j])
            remain = [k for k in rest if k != j]
            if _bipartite_perfect(sig, letters, remain, need_left):
                pairs.append((i, j))
                alive = remain
                chosen = True
                break
        if not chosen:
            # only possible when i must be the leftover
            leftover, alive, need_left = i, rest, False
    return Matching(tuple(pairs), leftover)


# -- self-dual bags -------------------------------------------------------------


def _reduce_sdcc(sig, letters, target):
    names = sorted(set(letters))
    index = {g: k for k, g in enumerate(names)}
    compat = [[sig.joinable(a, b) for b in names] for a in names]
    below_s = [sig.leq(a, sig.distinguished) for a in names]

    @lru_cache(maxsize=None)
    def feasible(counts, need_left):
        k = next((k for k, c in enumerate(counts) if c), None)
        if k is None:
            return not need_left
        lst = list(counts)
        lst[k] -= 1
        if need_left and below_s[k] and feasible(tuple(lst), False):
            return True
        for h in range(k, len(names)):
            if lst[h] and compat[k][h]:
                lst[h] -= 1
                hit = feasible(tuple(lst), need_left)
                lst[h] += 1
                if hit:
                    return True
        return False

    counts = [0] * len(names)
    for x in letters:
        counts[index[x]] += 1
    need_left = target is Target.DISTINGUISHED
    if not feasible(tuple(counts), need_left):
        return None
    alive = list(range(len(letters)))
    pairs, leftover = [], None
    while alive:
        i = alive[0]
        counts[index[letters[i]]] -= 1
        rest = alive[1:]
        chosen = False
        tried = set()
        for j in rest:
            gj = letters[j]
            if gj in tried or not compat[index[letters[i]]][index[gj]]:
                continue
            tried.add(gj)
            counts[index[gj]] -= 1
            if feasible(tuple(counts), need_left):
                pairs.append((i, j))
                alive = [k for k in rest if k != j]
                chosen = True
                break
            counts[index[gj]] += 1
        if not chosen:
            leftover, alive, need_left = i, rest, False
    return Matching(tuple(pairs), leftover)


# -- public entry points ------------------------------------------------------------


def reduces(system: System, sig: Signature, ts: Sequence[Type] | Type,
            target: Target = Target.DISTINGUISHED) -> Optional[Matching]:
    """Return the least witness matching, or ``None`` when no reduction exists."""
    if isinstance(ts, Type):
        ts = [ts]
    for t in ts:
        check_type(sig, t)
    letters = flatten(system, ts)
    if not _balanced(system, sig, letters, target):
        return None
    if system.ordered:
        return _reduce_planar(system, sig, letters, target)
    if system is System.COMPACT_CLOSED:
        return _reduce_cc(sig, letters, target)
    return _reduce_sdcc(sig, letters, target)


def is_grammatical(system: System, sig: Signature, ts, target: Target = Target.DISTINGUISHED) -> bool:
    return reduces(system, sig, ts, target) is not None


def verify_matching(system: System, sig: Signature, ts, target: Target, m: Matching) -> bool:
    """Check a witness against every matching invariant; never raises."""
    try:
        letters = flatten(system, ts)
        n = len(letters)
        seen = [False] * n
        for pair in m.pairs:
            i, j = pair
            if not (0 <= i < j < n) or seen[i] or seen[j]:
                return False
            seen[i] = seen[j] = True
            if not pair_ok(system, sig, letters[i], letters[j]):
                return False
        if target is Target.UNIT:
            if m.leftover is not None:
                return False
        else:
            p = m.leftover
            if p is None or not (0 <= p < n) or seen[p]:
                return False
            seen[p] = True
            if not leftover_ok(system, sig, letters[p]):
                return False
        if not all(seen):
            return False
        if system.ordered:
            for i, j in m.pairs:
                if m.leftover is not None and i < m.leftover < j:
                    return False
                for k, l in m.pairs:
                    if i < k < j < l:
                        return False
        return True
    except Exception:
        return False
