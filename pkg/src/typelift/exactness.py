"""Exact samples: checking them, building them, and composing them.

A sample is exact for a key when every solution gives that key the same
syntactic type. Samples with no solution at all are reported as not exact.

Two forcing constructions are provided by :func:`force_cc_type`:

* the literal one, meant for compact closed syntax, where auxiliary words of
  basic type pin the signed count of each generator;
* an order-free one for pivotal syntax, used by :func:`compose_cor1`. The
  word is followed by a single mirror word whose letters are fresh
  generators, one per letter of the forced type: a fresh top above ``g`` for
  each positive ``g`` and a fresh bottom below ``g`` for each negative one.
  Each fresh letter occurs once in the sentence, so it can only cancel
  against a distinct letter of the word with the required sign, while the
  mirror word is free to follow whatever order the word takes.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from .corpus import Sentence, TrainingSample, map_sample, rename_words
from .errors import (
    BudgetExceeded,
    ForcingFailed,
    KeyAbsent,
    SubtypedGenerator,
    SystemMismatch,
)
from .gadgets import BetweennessInstance, Mode, gen_betweenness_cc
from .kernel import Functor, Signature, System, Type, check_name, format_type, image
from .solver import InductionProblem, Search, enumerate_solutions

DEFAULT_CAP = 100000


@dataclass(frozen=True)
class Exact:
    kind = "exact"

    def __bool__(self):
        return True

    def __str__(self):
        return "EXACT"


@dataclass(frozen=True)
class NotExact:
    """``counterexample`` is a solution disagreeing on the key, or None if unsolvable."""

    counterexample: object = None
    kind = "not-exact"

    def __bool__(self):
        return False

    def __str__(self):
        if self.counterexample is None:
            return "NOT-EXACT (no solution)"
        return "NOT-EXACT"


@dataclass(frozen=True)
class Inconclusive:
    reason: str = "cap hit"
    kind = "inconclusive"

    def __bool__(self):
        return False

    def __str__(self):
        return f"INCONCLUSIVE ({self.reason})"


def _projector(p: InductionProblem, t_syn: Type, via: Optional[Functor]):
    if via is None and t_syn.system is not p.syntax:
        via = Functor.between(p.syntax, t_syn.system)
    if via is not None:
        if via.source is not p.syntax or via.target is not t_syn.system:
            raise SystemMismatch(f"{via.name} does not compare {p.syntax.value} with {t_syn.system.value}")
        return lambda t: image(via, t)
    return lambda t: t


def counterexample(p: InductionProblem, word: str, t_sem: Type, t_syn: Type,
                   budget: Optional[int] = None, via: Optional[Functor] = None):
    """A solution typing the key differently from ``t_syn`` (as a Lexicon), or None.

    None together with a solvable ``p`` means every solution agrees on the key,
    even when there are too many solutions to enumerate.
    """
    key = (word, t_sem)
    if key not in p.sample.keys():
        raise KeyAbsent(f"{word}:{format_type(t_sem)} does not occur in the sample")
    proj = _projector(p, t_syn, via)
    search = Search(p, restrict={key: lambda c: proj(c) != t_syn}, budget=budget)
    for assignment in search.solutions():
        return search.lexicon(assignment)
    return None


def is_exact(p: InductionProblem, word: str, t_sem: Type, t_syn: Type, cap: int = DEFAULT_CAP,
             via: Optional[Functor] = None):
    """Decide whether every solution of ``p`` types ``(word, t_sem)`` as ``t_syn``.

    ``t_syn`` may live in a system below the syntax; solutions are then compared
    through ``via`` (by default the functor between the two systems).
    A targeted search for a disagreeing solution runs first, so a
    counterexample is found even when full enumeration would hit the cap.
    """
    key = (word, t_sem)
    if key not in p.sample.keys():
        raise KeyAbsent(f"{word}:{format_type(t_sem)} does not occur in the sample")
    proj = _projector(p, t_syn, via)
    try:
        found = counterexample(p, word, t_sem, t_syn, budget=cap * 20, via=via)
    except BudgetExceeded:
        return Inconclusive(f"counterexample search exceeded {cap * 20} nodes")
    if found is not None:
        return NotExact(found)
    sols = enumerate_solutions(p, cap=cap)
    if not sols:
        return NotExact(None)
    if sols.truncated:
        return Inconclusive(f"more than {cap} solutions")
    for sol in sols:
        if proj(sol.lexicon[key]) != t_syn:
            return NotExact(sol.lexicon)
    return Exact()


# -- forcing ---------------------------------------------------------------------------


def _touches_edge(sig: Signature, g: str) -> bool:
    return any(g in e for e in sig.edges)


def force_cc_type(word: str, t: Type, sig: Signature, order_free: bool = False,
                  tag: Optional[str] = None) -> TrainingSample:
    """Sdcc sentences that pin the signs of ``word`` to the compact closed type ``t``.

    The fragment's signature extends ``sig`` with the fresh generators it uses.
    """
    if t.system is not System.COMPACT_CLOSED:
        raise SystemMismatch("force_cc_type expects a compact closed type")
    tag = word if tag is None else tag
    sd = System.SELF_DUAL_COMPACT_CLOSED
    for g, _ in t.factors:
        sig.upper(g)
    s = sig.distinguished
    head = [("S", Type(sd, [s])), (word, image(Functor.CC_TO_SDCC, t))]
    if order_free:
        return _mirror(head, t, sig, tag)
    bad = sorted({g for g, _ in t.factors if _touches_edge(sig, g)})
    if bad:
        raise SubtypedGenerator(f"generators with subtype edges cannot be forced: {', '.join(bad)}")
    gens, sents, main = set(), [], list(head)
    for k, (g, sign) in enumerate(t.factors):
        name = f"{tag}|{g}|{k}"
        if sign < 0:
            main.append((f"N[{name}]", Type(sd, [g])))
        else:
            f = check_name(f"f[{name}]")
            gens.add(f)
            aux = (f"A[{name}]", Type(sd, [g, f, f]))
            main.append(aux)
            sents.append(Sentence((head[0], aux, (f"B[{name}]", Type(sd, [g])))))
    sents.insert(0, Sentence(tuple(main)))
    return TrainingSample(sig.extend(gens), sd, tuple(sents))


def _mirror(head, t, sig, tag):
    sd = System.SELF_DUAL_COMPACT_CLOSED
    gens, edges, letters = [], [], []
    for k, (g, sign) in enumerate(t.factors):
        if sign > 0:
            fresh = check_name(f"hi[{tag}|{g}|{k}]")
            edges.append((g, fresh))
        else:
            fresh = check_name(f"lo[{tag}|{g}|{k}]")
            edges.append((fresh, g))
        gens.append(fresh)
        letters.append(fresh)
    # the mirror has the opposite signs of t; pad it when that is not functional
    positives = sum(1 for _, sign in t.factors if sign < 0)
    if not (positives == len(t) == 1 or 0 < positives < len(t)):
        pad = check_name(f"pad[{tag}]")
        gens.append(pad)
        letters += [pad, pad]
    sent = Sentence(tuple(head) + ((f"K[{tag}]", Type(sd, letters)),))
    return TrainingSample(sig.extend(gens, edges), sd, (sent,))


def disjoint_union(samples, shared=()) -> TrainingSample:
    """Concatenate samples, renaming words (``w#i`` for part i) unless listed in ``shared``."""
    samples = list(samples)
    if not samples:
        raise ValueError("nothing to combine")
    system = samples[0].system
    sig = samples[0].signature
    shared = set(shared)
    sentences = []
    for i, s in enumerate(samples):
        if s.system is not system:
            raise SystemMismatch(f"cannot combine {system.value} and {s.system.value} samples")
        sig = sig.union(s.signature)
        if s.words() - shared:
            renamed = rename_words(s, str(i))
            for sent, orig in zip(renamed.sentences, s.sentences):
                toks = [(w if w in shared else r, t) for (r, t), w in zip(sent.tokens, orig.words)]
                sentences.append(Sentence(tuple(toks)))
        else:
            sentences.extend(s.sentences)
    return TrainingSample(sig, system, tuple(sentences))


# -- the sdcc-to-pivotal pipeline ----------------------------------------------------------


@dataclass(frozen=True)
class ForcedKey:
    word: str
    semantic: Type
    target: Type
    fragment: TrainingSample
    verdict: object


def _needs_forcing(t: Type) -> bool:
    return not (len(t) == 1 and t.factors[0][1] > 0)


@functools.lru_cache(maxsize=256)
def _fragment_verdict(frag, word, t, cap):
    fp = InductionProblem(Functor.PIV_TO_SDCC, frag, True)
    return is_exact(fp, word, image(Functor.CC_TO_SDCC, t), t, cap=cap)


def cor1_fragments(inst: BetweennessInstance, cap: int = DEFAULT_CAP, check: bool = True):
    """(mapped gadget sample, list of ForcedKey); each fragment is checked on its own."""
    base = gen_betweenness_cc(inst, Mode.FUNCTIONAL_SAFE)
    mapped = map_sample(base.sample, Functor.CC_TO_SDCC)
    forced = []
    for k, (word, t) in enumerate(base.sample.keys()):
        if not _needs_forcing(t):
            continue
        frag = force_cc_type(word, t, base.sample.signature, order_free=True, tag=str(k))
        verdict = None
        if check:
            verdict = _fragment_verdict(frag, word, t, cap)
            if not isinstance(verdict, Exact):
                raise ForcingFailed(f"forcing {word}:{format_type(t)} gave {verdict}")
        forced.append(ForcedKey(word, image(Functor.CC_TO_SDCC, t), t, frag, verdict))
    return mapped, forced


def compose_cor1(inst: BetweennessInstance, cap: int = DEFAULT_CAP, check: bool = True) -> InductionProblem:
    """Betweenness as induction from sdcc semantics to pivotal syntax."""
    mapped, forced = cor1_fragments(inst, cap, check)
    parts = [mapped] + [fk.fragment for fk in forced]
    words = set().union(*(s.words() for s in parts))
    sample = disjoint_union(parts, shared=words)
    return InductionProblem(Functor.PIV_TO_SDCC, sample, True)
