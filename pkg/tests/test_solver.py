from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from typelift.corpus import Lexicon, Sentence, TrainingSample, load_sample, parse_sample
from typelift.errors import BudgetExceeded, SystemMismatch, UnsupportedDirection
from typelift.kernel import Functor, Signature, System, Type, dual, image, parse_type, tensor
from typelift.oracles import solve_induction_naive
from typelift.solver import (
    UNSAT,
    InductionProblem,
    InductionSolution,
    distinct_permutations,
    enumerate_solutions,
    preimages,
    solve,
    verify_solution,
)

FIX = Path(__file__).parent / "fixtures"
P, CC, SDP, SDCC = System.PIVOTAL, System.COMPACT_CLOSED, System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED


def test_distinct_permutations():
    assert list(distinct_permutations("aab")) == [("a", "a", "b"), ("a", "b", "a"), ("b", "a", "a")]
    assert list(distinct_permutations("")) == [()]


@pytest.mark.parametrize("direction, text, functional, count", [
    (Functor.PIV_TO_CC, "{a,b*}", True, 2),
    (Functor.PIV_TO_CC, "{a,b}", True, 0),
    (Functor.PIV_TO_CC, "{a,b}", False, 2),
    (Functor.CC_TO_SDCC, "{a,a}", True, 1),
    (Functor.CC_TO_SDCC, "{a,b}", True, 2),
    (Functor.CC_TO_SDCC, "{a}", True, 1),
    (Functor.PIV_TO_SDP, "a.b", True, 2),
    (Functor.SDP_TO_SDCC, "{a,a,b}", True, 3),
    (Functor.PIV_TO_SDCC, "{a,b}", True, 4),
])
def test_preimage_counts(direction, text, functional, count):
    t = parse_type(direction.target, text)
    got = preimages(direction, t, functional)
    assert len(got) == count
    assert got == sorted(got, key=lambda x: x.factors)


def test_direction_checks():
    s = load_sample(FIX / "intro.sample")
    with pytest.raises(UnsupportedDirection):
        InductionProblem(Functor.AUT_TO_PIV, s)
    with pytest.raises(SystemMismatch):
        InductionProblem(Functor.PIV_TO_SDP, s)


def test_intro_needs_nonfunctional_words():
    s = load_sample(FIX / "intro.sample")
    assert solve(InductionProblem(Functor.PIV_TO_CC, s)) is UNSAT
    sol = solve(InductionProblem(Functor.PIV_TO_CC, s, require_functional=False))
    assert sol and str(sol[("t1", parse_type(CC, "{A,B,C}"))]) == "A.C.B"


def test_intro_matches_naive_and_pruning_is_sound():
    p = InductionProblem(Functor.PIV_TO_CC, load_sample(FIX / "intro.sample"), require_functional=False)
    fast = enumerate_solutions(p)
    plain = enumerate_solutions(p, prune=False)
    naive = solve_induction_naive(p, max_keys=7)
    as_set = lambda sols: {frozenset(s.lexicon.items()) for s in sols}
    assert len(fast) == 128
    assert as_set(fast) == as_set(plain) == {frozenset(d.items()) for d in naive}
    assert all(verify_solution(p, s) for s in fast)


def test_cap_and_budget():
    p = InductionProblem(Functor.PIV_TO_CC, load_sample(FIX / "intro.sample"), require_functional=False)
    sols = enumerate_solutions(p, cap=5)
    assert len(sols) == 5 and sols.truncated
    with pytest.raises(BudgetExceeded):
        enumerate_solutions(p, budget=3)
    with pytest.raises(ValueError):
        enumerate_solutions(p, cap=0)


def test_verify_rejects_bad_lexicons():
    s = parse_sample("system cc\ngen n s\nsentence s\nw:{n} v:{n*,s}\n")
    p = InductionProblem(Functor.PIV_TO_CC, s)
    good = solve(p)
    assert verify_solution(p, good)
    assert not verify_solution(p, "nope")
    wrong = Lexicon({("w", parse_type(CC, "{n}")): parse_type(P, "n"),
                     ("v", parse_type(CC, "{n*,s}")): parse_type(P, "s.n*")})
    assert not verify_solution(p, InductionSolution(wrong))
    partial = Lexicon({("w", parse_type(CC, "{n}")): parse_type(P, "n")})
    assert not verify_solution(p, InductionSolution(partial))


def test_rigidity_couples_sentences():
    # v must be n*.s in the first sentence and s.n* in the second: no rigid lexicon
    text = "system cc\ngen n m s\nsentence s\nw:{n} v:{n*,s}\nv:{n*,s} w:{n}\n"
    p = InductionProblem(Functor.PIV_TO_CC, parse_sample(text))
    assert solve(p) is UNSAT


def test_self_dual_directions():
    text = "system sdcc\ngen a b s\nsub a b\nsentence s\nx:{a} y:{b,s}\n"
    s = parse_sample(text)
    for direction in (Functor.CC_TO_SDCC, Functor.PIV_TO_SDCC):
        sols = enumerate_solutions(InductionProblem(direction, s))
        naive = solve_induction_naive(InductionProblem(direction, s))
        assert len(sols) == len(naive) > 0
    sdp = parse_sample("system sdp\ngen a s\nsentence s\nx:a y:a.s\n")
    sols = enumerate_solutions(InductionProblem(Functor.PIV_TO_SDP, sdp))
    assert [str(s.lexicon[("y", parse_type(SDP, "a.s"))]) for s in sols] == ["a*.s"]


SEM = {
    Functor.PIV_TO_CC: CC,
    Functor.CC_TO_SDCC: SDCC,
    Functor.PIV_TO_SDP: SDP,
    Functor.SDP_TO_SDCC: SDCC,
    Functor.PIV_TO_SDCC: SDCC,
}


def _random_type(draw, system):
    n = draw(st.integers(1, 2))
    gens = [draw(st.sampled_from("abs")) for _ in range(n)]
    if system.signed:
        return Type(system, [(g, draw(st.sampled_from((1, -1)))) for g in gens])
    return Type(system, gens)


@st.composite
def problems(draw):
    """Random small problems; about half carry a planted solution.

    Planting picks syntactic types for a pool of words and closes each sentence
    with a fresh word typed as the dual of the rest followed by ``s``.
    """
    direction = draw(st.sampled_from(sorted(SEM, key=lambda f: f.name)))
    system = SEM[direction]
    syn = direction.source
    edges = draw(st.sampled_from([(), (("a", "b"),)]))
    sig = Signature.make("abs", edges, "s")
    planted = draw(st.booleans())
    pool = []
    for i in range(draw(st.integers(1, 3))):
        t = _random_type(draw, syn if planted else system)
        pool.append((f"w{i}", t))
    sents = []
    for k in range(draw(st.integers(1, 2))):
        toks = [draw(st.sampled_from(pool)) for _ in range(draw(st.integers(1, 2)))]
        if planted:
            body = tensor(*[t for _, t in toks])
            closer = tensor(dual(syn, body), Type(syn, [("s", 1)] if syn.signed else ["s"]))
            toks = [(w, image(direction, t)) for w, t in toks] + [(f"c{k}", image(direction, closer))]
        sents.append(Sentence(tuple(toks)))
    sample = TrainingSample(sig, system, tuple(sents))
    return InductionProblem(direction, sample, draw(st.booleans()))


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(problems())
def test_search_equals_naive_enumeration(p):
    space = 1
    for _, t in p.sample.keys():
        space *= max(1, len(preimages(p.direction, t, p.require_functional)))
    if space > 20000:
        return
    fast = {frozenset(s.lexicon.items()) for s in enumerate_solutions(p)}
    plain = {frozenset(s.lexicon.items()) for s in enumerate_solutions(p, prune=False)}
    naive = {frozenset(d.items()) for d in solve_induction_naive(p, max_keys=5)}
    assert fast == plain == naive
    first = solve(p)
    assert bool(first) == bool(naive)
    if first:
        assert verify_solution(p, first)
