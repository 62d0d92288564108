"""Grammar induction: lift a semantically typed sample to syntactic types.

Every (word, semantic type) key gets a domain of candidate preimages under
the chosen functor. The search walks keys in order of first occurrence and
candidates in canonical order, so the first solution found is the least one
in the induced lexicographic order.

Pruning is done by constraint propagation over sentences:

* ordered syntactic systems (pivotal, sdp): for each sentence a backward
  pushdown pass computes, at every word boundary, the set of stacks the rest
  of the sentence can still absorb; a forward pass then keeps exactly the
  candidates that lead into such a stack. This is exact for a sentence
  whose words are pairwise distinct keys.
* compact closed syntax: per subtyping component, the achievable signed
  sums of the undecided words must still contain the required value.

A sentence whose keys are all decided is re-checked with the full checker.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .corpus import Lexicon, TrainingSample
from .errors import BudgetExceeded, SystemMismatch, TypeliftError, UnsupportedDirection
from .functional import is_functional
from .kernel import Functor, System, Type, image, isomorphic
from .redcheck import Target, leftover_ok, pair_ok, reduces

SUPPORTED = (
    Functor.PIV_TO_CC,
    Functor.CC_TO_SDCC,
    Functor.SDP_TO_SDCC,
    Functor.PIV_TO_SDP,
    Functor.PIV_TO_SDCC,
)


def _check_direction(direction: Functor):
    if direction not in SUPPORTED:
        raise UnsupportedDirection(
            f"induction from {direction.target.value} semantics to "
            f"{direction.source.value} syntax is not supported")


@dataclass(frozen=True)
class InductionProblem:
    """``direction`` maps syntax to semantics; the sample lives in its target system."""

    direction: Functor
    sample: TrainingSample
    require_functional: bool = True

    def __post_init__(self):
        _check_direction(self.direction)
        if self.sample.system is not self.direction.target:
            raise SystemMismatch(
                f"sample is {self.sample.system.value} but {self.direction.name} "
                f"expects {self.direction.target.value} semantics")

    @property
    def syntax(self) -> System:
        return self.direction.source

    @property
    def semantics(self) -> System:
        return self.direction.target


@dataclass(frozen=True)
class InductionSolution:
    lexicon: Lexicon

    def __getitem__(self, key):
        return self.lexicon[key]


class Unsat:
    """Returned by :func:`solve` when no lexicon exists."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unsat"


UNSAT = Unsat()


class SolutionList(list):
    """Solutions in canonical order; ``truncated`` is set when the cap was hit."""

    truncated = False


# -- preimages ---------------------------------------------------------------------------


def distinct_permutations(seq):
    """Distinct orderings of ``seq`` in lexicographic order (next-permutation)."""
    a = sorted(seq)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def _signed_bags(names):
    """All distinct signed multisets over an unsigned multiset of names."""
    groups = sorted({g: names.count(g) for g in names}.items())
    for split in itertools.product(*[range(c + 1) for _, c in groups]):
        bag = []
        for (g, c), neg in zip(groups, split):
            bag += [(g, -1)] * neg + [(g, 1)] * (c - neg)
        yield tuple(sorted(bag))


def _raw_preimages(direction: Functor, t: Type):
    f = t.factors
    if direction is Functor.PIV_TO_CC or direction is Functor.SDP_TO_SDCC:
        return distinct_permutations(f)
    if direction is Functor.CC_TO_SDCC:
        return _signed_bags(list(f))
    if direction is Functor.PIV_TO_SDP:
        return (tuple(zip(f, signs)) for signs in itertools.product((-1, 1), repeat=len(f)))
    if direction is Functor.PIV_TO_SDCC:
        return (p for bag in _signed_bags(list(f)) for p in distinct_permutations(bag))
    raise UnsupportedDirection(direction.name)


def preimages(direction: Functor, t: Type, functional_only: bool = True) -> list:
    """Every syntactic type whose image is ``t``, sorted, without duplicates."""
    _check_direction(direction)
    if t.system is not direction.target:
        raise SystemMismatch(f"{direction.name} preimages need a {direction.target.value} type")
    out = sorted(set(_raw_preimages(direction, t)))
    types = [Type(direction.source, c) for c in out]
    if functional_only:
        types = [c for c in types if is_functional(direction.source, c)]
    return types


# -- search engine ------------------------------------------------------------------------


class Search:
    """Constraint search for one problem.

    ``restrict`` optionally maps a key to a predicate on syntactic types,
    narrowing its initial domain (used by exactness checks).
    ``prune=False`` disables propagation: sentences are checked only once
    all their words are decided.
    """

    def __init__(self, problem: InductionProblem, restrict=None, prune: bool = True,
                 budget: Optional[int] = None):
        self.problem = problem
        self.syntax = problem.syntax
        self.sig = problem.sample.signature
        self.prune = prune
        self.budget = budget
        self.nodes = 0
        sample = problem.sample
        self.keys = sample.keys()
        index = {k: i for i, k in zip(itertools.count(), self.keys)}
        self.sentences = [[index[tok] for tok in s.tokens] for s in sample.sentences]
        self.watch = [[] for _ in self.keys]
        for si, toks in zip(itertools.count(), self.sentences):
            for k in sorted(set(toks)):
                self.watch[k].append(si)
        self.cands = []
        for key in self.keys:
            cs = preimages(problem.direction, key[1], problem.require_functional)
            if restrict and key in restrict:
                cs = [c for c in cs if restrict[key](c)]
            self.cands.append([c.factors for c in cs])
        self._ok = {}
        self._lo = {}
        self._full = {}

    # letter-level helpers, cached
    def ok(self, x, y):
        key = (x, y)
        hit = self._ok.get(key)
        if hit is None:
            hit = self._ok[key] = pair_ok(self.syntax, self.sig, x, y)
        return hit

    def lo(self, x):
        hit = self._lo.get(x)
        if hit is None:
            hit = self._lo[x] = leftover_ok(self.syntax, self.sig, x)
        return hit

    # -- ordered sentences ----------------------------------------------------

    def _run_back(self, configs, letters, room):
        # letters are consumed right to left; room bounds the stack height
        cur = configs
        for x in reversed(letters):
            nxt = set()
            for st, used in cur:
                if len(st) < room:
                    nxt.add((st + (x,), used))
                if st and self.ok(x, st[-1]):
                    nxt.add((st[:-1], used))
                if not st and not used and self.lo(x):
                    nxt.add(((), True))
            cur = nxt
        return cur

    def _run_fwd(self, configs, letters, accept):
        cur = configs
        for x in letters:
            nxt = set()
            for st, used in cur:
                nxt.add((st + (x,), used))
                if st and self.ok(st[-1], x):
                    nxt.add((st[:-1], used))
                if not st and not used and self.lo(x):
                    nxt.add(((), True))
            cur = nxt
        return cur & accept

    def _accept(self, back, universe):
        """Forward configurations compatible with some backward configuration."""
        partners = {}
        out = set()
        for rho, used in back:
            choices = []
            for y in rho:
                ps = partners.get(y)
                if ps is None:
                    ps = partners[y] = tuple(x for x in universe if self.ok(x, y))
                if not ps:
                    break
                choices.append(ps)
            else:
                for sigma in itertools.product(*choices):
                    out.add((sigma, not used))
        return out

    def _ordered_support(self, toks, domains):
        m = len(toks)
        lens = [len(self.cands[k][domains[k][0]]) for k in toks]
        before = [0] * (m + 1)
        for j in range(m):
            before[j + 1] = before[j] + lens[j]
        universes = [frozenset()] * (m + 1)
        acc = set()
        for j in range(m):
            for ci in domains[toks[j]]:
                acc.update(self.cands[toks[j]][ci])
            universes[j + 1] = frozenset(acc)
        # backward pass
        back = [None] * (m + 1)
        back[m] = {((), False)}
        for j in range(m - 1, -1, -1):
            k = toks[j]
            room = before[j]
            nxt = set()
            for ci in domains[k]:
                nxt |= self._run_back(back[j + 1], self.cands[k][ci], room + lens[j])
            uni = universes[j]
            keep = set()
            for rho, used in nxt:
                if len(rho) > before[j] - (0 if used else 1):
                    continue
                if all(any(self.ok(x, y) for x in uni) for y in rho):
                    keep.add((rho, used))
            if not keep:
                return None
            back[j] = keep
        if ((), True) not in back[0]:
            return None
        # forward pass
        fwd = {((), False)}
        support = {}
        for j in range(m):
            k = toks[j]
            accept = self._accept(back[j + 1], universes[j + 1])
            nxt = set()
            good = []
            for ci in domains[k]:
                out = self._run_fwd(fwd, self.cands[k][ci], accept)
                if out:
                    good.append(ci)
                    nxt |= out
            if not good:
                return None
            prev = support.get(k)
            support[k] = good if prev is None else [c for c in prev if c in set(good)]
            fwd = nxt
        return support

    # -- commutative sentences --------------------------------------------------

    def _net(self, letters):
        net = {}
        for g, s in letters:
            c = self.sig.component(g)
            net[c] = net.get(c, 0) + s
        return net

    def _bag_support(self, toks, domains):
        counts = {}
        for k in toks:
            counts[k] = counts.get(k, 0) + 1
        want_comp = self.sig.component(self.sig.distinguished)
        comps = set()
        nets = {}
        for k in counts:
            nets[k] = [self._net(self.cands[k][ci]) for ci in domains[k]]
            for n in nets[k]:
                comps.update(n)
        comps.add(want_comp)
        comps = sorted(comps)

        def sums(skip):
            per = {c: {0} for c in comps}
            for k, mult in counts.items():
                if k == skip:
                    continue
                for c in comps:
                    vals = {n.get(c, 0) * mult for n in nets[k]}
                    per[c] = {a + b for a in per[c] for b in vals}
            return per

        support = {}
        for k, mult in counts.items():
            per = sums(k)
            good = []
            for ci, n in zip(domains[k], nets[k]):
                if all((1 if c == want_comp else 0) - n.get(c, 0) * mult in per[c] for c in comps):
                    good.append(ci)
            if not good:
                return None
            support[k] = good
        return support

    # -- propagation ----------------------------------------------------------

    def _full_check(self, si, domains):
        toks = self.sentences[si]
        key = tuple(domains[k][0] for k in toks)
        hit = self._full.get((si, key))
        if hit is None:
            types = [Type(self.syntax, self.cands[k][domains[k][0]]) for k in toks]
            hit = reduces(self.syntax, self.sig, types, Target.DISTINGUISHED) is not None
            self._full[(si, key)] = hit
        return hit

    def propagate(self, domains, dirty):
        queue = deque(dirty)
        queued = set(dirty)
        while queue:
            si = queue.popleft()
            queued.discard(si)
            toks = self.sentences[si]
            if all(len(domains[k]) == 1 for k in toks):
                if not self._full_check(si, domains):
                    return False
                continue
            if not self.prune:
                continue
            if self.syntax.ordered:
                support = self._ordered_support(toks, domains)
            else:
                support = self._bag_support(toks, domains)
            if support is None:
                return False
            for k, good in support.items():
                if len(good) < len(domains[k]):
                    if not good:
                        return False
                    domains[k] = tuple(good)
                    for other in self.watch[k]:
                        if other not in queued:
                            queued.add(other)
                            queue.append(other)
        return True

    def initial(self):
        domains = [tuple(range(len(c))) for c in self.cands]
        if any(not d for d in domains):
            return None
        if not self.propagate(domains, range(len(self.sentences))):
            return None
        return domains

    def _tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes")

    def solutions(self):
        """Yield solutions (lists of factor tuples per key) in canonical order."""
        domains = self.initial()
        if domains is None:
            return
        yield from self._dfs(domains, 0)

    def _dfs(self, domains, i):
        self._tick()
        n = len(self.keys)
        while i < n and len(domains[i]) == 1:
            i += 1
        if i == n:
            if all(self._full_check(si, domains) for si in range(len(self.sentences))):
                yield [self.cands[k][domains[k][0]] for k in range(n)]
            return
        for ci in domains[i]:
            trial = list(domains)
            trial[i] = (ci,)
            if self.propagate(trial, self.watch[i]):
                yield from self._dfs(trial, i + 1)

    def lexicon(self, assignment) -> Lexicon:
        return Lexicon((key, Type(self.syntax, f)) for key, f in zip(self.keys, assignment))


def solve(p: InductionProblem, budget: Optional[int] = None):
    """The least solution in canonical order, or :data:`UNSAT`."""
    search = Search(p, budget=budget)
    for assignment in search.solutions():
        return InductionSolution(search.lexicon(assignment))
    return UNSAT


def enumerate_solutions(p: InductionProblem, cap: int = 100000, prune: bool = True,
                        budget: Optional[int] = None) -> SolutionList:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    search = Search(p, prune=prune, budget=budget)
    out = SolutionList()
    for assignment in search.solutions():
        if len(out) == cap:
            out.truncated = True
            break
        out.append(InductionSolution(search.lexicon(assignment)))
    return out


enumerate = enumerate_solutions  # noqa: A001  (public name of the operation)


def verify_solution(p: InductionProblem, sol) -> bool:
    """Check isomorphic images, functionality and grammaticality of every sentence."""
    if not isinstance(sol, InductionSolution):
        return False
    lex = sol.lexicon
    syn, sem = p.syntax, p.semantics
    try:
        for key in p.sample.keys():
            if key not in lex:
                return False
            t = lex[key]
            if t.system is not syn:
                return False
            if not isomorphic(sem, image(p.direction, t), key[1]):
                return False
            if p.require_functional and not is_functional(syn, t):
                return False
        for sent in p.sample.sentences:
            types = [lex[tok] for tok in sent.tokens]
            if reduces(syn, p.sample.signature, types, Target.DISTINGUISHED) is None:
                return False
    except TypeliftError:
        return False
    return True
