"""Brute-force reference implementations used to cross-check the fast code.

Nothing here calls into the checker, the solver or the gadget code. Only the
plain data containers (:class:`~typelift.kernel.Type`, the system and
functor enums) are shared; the subtyping closure, cancellation rules,
functor images and search are all recomputed from scratch.
Inputs are guarded by hard size limits and :class:`TooLarge` is raised
beyond them.
"""

from __future__ import annotations

import itertools

from .errors import TooLarge
from .kernel import System, Type

MAX_GROUND = 7
MAX_VARS = 12
MAX_WORD = 12
MAX_KEYS = 6


def _guard(what, value, limit):
    if value > limit:
        raise TooLarge(f"{what} = {value} exceeds the oracle limit {limit}")


# -- orders and formulas ----------------------------------------------------------


def solve_betweenness_bruteforce(inst):
    """First total order (as a tuple) satisfying every triple, or None."""
    ground = tuple(inst.ground)
    _guard("|A|", len(ground), MAX_GROUND)
    for order in itertools.permutations(ground):
        rank = {x: k for k, x in enumerate(order)}
        if all(rank[a] < rank[b] < rank[c] or rank[c] < rank[b] < rank[a]
               for a, b, c in inst.triples):
            return order
    return None


def betweenness_holds(order, triples) -> bool:
    rank = {x: k for k, x in enumerate(order)}
    return all(min(rank[a], rank[c]) < rank[b] < max(rank[a], rank[c]) for a, b, c in triples)


def sat_bruteforce(f):
    """First satisfying assignment as a tuple of bools (variable i at i-1), or None."""
    _guard("p", f.variables, MAX_VARS)
    for bits in itertools.product((False, True), repeat=f.variables):
        if all(any(bits[i - 1] == pol for i, pol in clause) for clause in f.clauses):
            return bits
    return None


def evaluate_cnf(clauses, assignment) -> bool:
    """Second, clause-by-clause evaluator (used to cross-check sat_bruteforce)."""
    for clause in clauses:
        sat = False
        for i, pol in clause:
            value = assignment[i - 1]
            if not pol:
                value = not value
            if value:
                sat = True
                break
        if not sat:
            return False
    return True


# -- subtyping and reduction -----------------------------------------------------------


def _order(sig):
    gens = sorted(sig.generators)
    le = {(x, y): x == y for x in gens for y in gens}
    for x, y in sig.edges:
        le[(x, y)] = True
    for k in gens:
        for i in gens:
            if le[(i, k)]:
                for j in gens:
                    if le[(k, j)]:
                        le[(i, j)] = True
    return le


class BruteforceReducer:
    """Exhaustive contraction search for one (system, signature) pair.

    The memo is kept between calls so a sweep over many words reuses work.
    Ordered words are reduced by contracting adjacent cancelling letters;
    bags by trying every pairing of their letters.
    """

    def __init__(self, system: System, sig):
        self.system = system
        self.le = _order(sig)
        self.gens = sorted(sig.generators)
        self.s = sig.distinguished
        self.memo = {}

    def cancels(self, x, y) -> bool:
        le = self.le
        if self.system in (System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED):
            return any(le[(x, z)] and le[(y, z)] for z in self.gens)
        (gx, ex), (gy, ey) = x, y
        if self.system is System.AUTONOMOUS:
            if ey - ex != 1:
                return False
            return le[(gx, gy)] if ex % 2 == 0 else le[(gy, gx)]
        if ex == 1 and ey == -1:
            return le[(gx, gy)]
        if ex == -1 and ey == 1:
            return le[(gy, gx)]
        return False

    def final(self, x) -> bool:
        if self.system in (System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED):
            return self.le[(x, self.s)]
        g, e = x
        if self.system is System.AUTONOMOUS:
            return e == 0 and self.le[(g, self.s)]
        return e == 1 and self.le[(g, self.s)]

    def __call__(self, word, unit_target: bool) -> bool:
        if self.system in (System.COMPACT_CLOSED, System.SELF_DUAL_COMPACT_CLOSED):
            return self._bag(tuple(sorted(word)), not unit_target)
        return self._ordered(tuple(word), unit_target)

    def _ordered(self, w, unit_target):
        if not w:
            return unit_target
        if len(w) == 1 and not unit_target:
            return self.final(w[0])
        key = (w, unit_target)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = False
        for i in range(len(w) - 1):
            if self.cancels(w[i], w[i + 1]) and self._ordered(w[:i] + w[i + 2:], unit_target):
                result = True
                break
        self.memo[key] = result
        return result

    def _bag(self, w, need_final):
        if not w:
            return not need_final
        key = (w, need_final)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        first, rest = w[0], w[1:]
        result = need_final and self.final(first) and self._bag(rest, False)
        for k in range(len(rest)):
            if result:
                break
            other = rest[k]
            if self.cancels(first, other) or self.cancels(other, first):
                result = self._bag(rest[:k] + rest[k + 1:], need_final)
        self.memo[key] = result
        return result


def reduces_bruteforce(system: System, sig, word, target="distinguished") -> bool:
    """``target`` is ``"unit"`` or ``"distinguished"`` (an enum with that value works too)."""
    if isinstance(word, Type):
        word = [word]
    letters = [f for t in word for f in t.factors] if word and isinstance(word[0], Type) else list(word)
    _guard("word length", len(letters), MAX_WORD)
    name = getattr(target, "value", target)
    return BruteforceReducer(system, sig)(letters, name == "unit")


def free_group_normal_form(word) -> list:
    """Freely reduce a sequence of (generator, +-1) letters."""
    stack = []
    for g, s in word:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return stack


# -- functional types -----------------------------------------------------------------


def _lambek_trees(leaves, gens):
    if leaves == 1:
        for g in gens:
            yield ("leaf", g)
        return
    for k in range(1, leaves):
        for left in _lambek_trees(k, gens):
            for right in _lambek_trees(leaves - k, gens):
                yield ("/", left, right)
                yield ("\\", left, right)


def _lambek_word(tree):
    if tree[0] == "leaf":
        return [(tree[1], 1)]
    left, right = _lambek_word(tree[1]), _lambek_word(tree[2])
    if tree[0] == "/":
        return left + [(g, -s) for g, s in reversed(right)]
    return [(g, -s) for g, s in reversed(left)] + right


def lambek_search(t: Type, max_depth: int = 6):
    """Search all Lambek types with the right leaf count; return one whose image is t."""
    target = list(t.factors)
    _guard("word length", len(target), MAX_WORD)
    if not target:
        return None
    gens = sorted({g for g, _ in target})
    for tree in _lambek_trees(len(target), gens):
        if _depth(tree) <= max_depth and _lambek_word(tree) == target:
            return tree
    return None


def _depth(tree):
    return 0 if tree[0] == "leaf" else 1 + max(_depth(tree[1]), _depth(tree[2]))


# -- grammar induction -------------------------------------------------------------------


def _sem_image(src: System, dst: System, syn):
    """Image of a syntactic factor list, as a canonical tuple in the semantic system."""
    f = list(syn)
    if src is System.PIVOTAL and dst is System.SELF_DUAL_PIVOTAL:
        return tuple(g for g, _ in f)
    if dst is System.COMPACT_CLOSED:
        return tuple(sorted(f))
    if dst is System.SELF_DUAL_COMPACT_CLOSED:
        return tuple(sorted(x if isinstance(x, str) else x[0] for x in f))
    raise ValueError(f"unsupported direction {src.value} -> {dst.value}")


def _naive_candidates(src: System, dst: System, sem: Type, functional: bool):
    letters = [x if isinstance(x, str) else x[0] for x in sem.factors]
    sign_choices = [(1, -1)] if src in (System.PIVOTAL, System.COMPACT_CLOSED) else [None]
    out = set()
    names = letters
    if dst in (System.COMPACT_CLOSED, System.SELF_DUAL_COMPACT_CLOSED) and src.ordered:
        orders = set(itertools.permutations(range(len(names))))
    else:
        orders = {tuple(range(len(names)))}
    for perm in orders:
        seq = [names[k] for k in perm]
        if sign_choices[0] is None:
            cands = [tuple(seq)]
        else:
            cands = [tuple(zip(seq, signs)) for signs in itertools.product((1, -1), repeat=len(seq))]
        for c in cands:
            if not src.ordered:
                c = tuple(sorted(c))
            if _sem_image(src, dst, c) != tuple(sem.factors):
                continue
            if functional:
                if src.signed:
                    sg = {s for _, s in c}
                    if not ((len(c) == 1 and sg == {1}) or sg == {1, -1}):
                        continue
                elif not c:
                    continue
            out.add(c)
    return sorted(out)


def solve_induction_naive(p, max_keys: int = MAX_KEYS) -> list:
    """Every lexicon solving p, as dicts (word, semantic type) -> syntactic type.

    ``max_keys`` raises the key-count guard for a deliberate, slow check.
    """
    src, dst = p.direction.source, p.direction.target
    sample = p.sample
    keys = []
    for sent in sample.sentences:
        for key in sent.tokens:
            if key not in keys:
                keys.append(key)
    _guard("key count", len(keys), max_keys)
    reducer = BruteforceReducer(src, sample.signature)
    domains = []
    for _, sem in keys:
        _guard("word length", len(sem), MAX_WORD)
        domains.append(_naive_candidates(src, dst, sem, p.require_functional))
    solutions = []
    for choice in itertools.product(*domains):
        assign = dict(zip(keys, choice))
        good = True
        for sent in sample.sentences:
            letters = [x for key in sent.tokens for x in assign[key]]
            if not reducer(letters, False):
                good = False
                break
        if good:
            solutions.append({k: Type(src, v) for k, v in assign.items()})
    return solutions
