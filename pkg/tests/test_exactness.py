import pytest

from typelift import gadgets
from typelift.corpus import Sentence, TrainingSample, parse_sample, validate_sample
from typelift.errors import KeyAbsent, SubtypedGenerator, SystemMismatch
from typelift.exactness import (
    Exact,
    Inconclusive,
    NotExact,
    compose_cor1,
    counterexample,
    cor1_fragments,
    disjoint_union,
    force_cc_type,
    is_exact,
)
from typelift.kernel import Functor, Signature, System, Type, image, parse_type
from typelift.solver import InductionProblem, enumerate_solutions, solve

CC, SDCC, P = System.COMPACT_CLOSED, System.SELF_DUAL_COMPACT_CLOSED, System.PIVOTAL


def sd(text):
    return parse_type(SDCC, text)


def cc(text):
    return parse_type(CC, text)


def problem(text, direction=Functor.CC_TO_SDCC, functional=True):
    return InductionProblem(direction, parse_sample(text), functional)


def test_single_sentence_word_is_exact():
    p = problem("system sdcc\ngen s\nsentence s\nw:{s}\n")
    assert isinstance(is_exact(p, "w", sd("{s}"), cc("{s}")), Exact)


def test_basic_word_is_positive_in_sat_gadget():
    f = gadgets.parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    p = gadgets.gen_sat_cc(f)
    assert isinstance(is_exact(p, "D[1]", sd("{d}"), cc("{d}")), Exact)
    assert isinstance(is_exact(p, "D[1]", sd("{d}"), cc("{d*}")), NotExact)


def test_two_sign_patterns_are_not_exact():
    p = problem("system sdcc\ngen a b s\nsentence s\nS:{s} w:{a,b} v:{a,b}\n")
    verdict = is_exact(p, "w", sd("{a,b}"), cc("{a,b*}"))
    assert isinstance(verdict, NotExact) and verdict.counterexample is not None
    signs = {sol.lexicon[("w", sd("{a,b}"))] for sol in enumerate_solutions(p)}
    assert signs == {cc("{a,b*}"), cc("{a*,b}")}


def test_unsolvable_is_not_exact_and_missing_key_raises():
    p = problem("system sdcc\ngen a s\nsentence s\nw:{a}\n")
    assert is_exact(p, "w", sd("{a}"), cc("{a}")) == NotExact(None)
    with pytest.raises(KeyAbsent):
        is_exact(p, "nope", sd("{a}"), cc("{a}"))


def test_cap_gives_inconclusive():
    inst = gadgets.BetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))
    _, forced = cor1_fragments(inst, check=False)
    y = forced[0]
    fp = InductionProblem(Functor.PIV_TO_SDCC, y.fragment)
    assert isinstance(is_exact(fp, y.word, y.semantic, y.target, cap=10), Inconclusive)
    assert isinstance(is_exact(fp, y.word, y.semantic, y.target), Exact)


SIG = Signature.make(["g", "h", "s"], (), "s")


@pytest.mark.parametrize("text", ["{g}", "{g,g*}", "{g*,h}", "{g,g*,h*}", "{g,g,h*}"])
def test_literal_forcing_in_compact_closed_syntax(text):
    t = cc(text)
    frag = force_cc_type("w", t, SIG)
    assert validate_sample(frag) == []
    p = InductionProblem(Functor.CC_TO_SDCC, frag)
    assert isinstance(is_exact(p, "w", image(Functor.CC_TO_SDCC, t), t, cap=10000), Exact)


def test_literal_forcing_refuses_subtyped_generators():
    sig = Signature.make(["g", "h", "s"], [("g", "h")], "s")
    with pytest.raises(SubtypedGenerator):
        force_cc_type("w", cc("{g}"), sig)
    with pytest.raises(SystemMismatch):
        force_cc_type("w", sd("{g}"), SIG)


def test_mirror_forcing_pins_signs_but_not_order():
    sig = Signature.make(["a", "b", "c", "s"], [("a", "c")], "s")
    t = cc("{a,b*,c}")
    frag = force_cc_type("w", t, sig, order_free=True)
    p = InductionProblem(Functor.PIV_TO_SDCC, frag)
    assert isinstance(is_exact(p, "w", image(Functor.CC_TO_SDCC, t), t), Exact)
    orders = {str(s.lexicon[("w", sd("{a,b,c}"))]) for s in enumerate_solutions(p)}
    assert len(orders) == 6


def test_disjoint_union():
    one = parse_sample("system sdcc\ngen a s\nsentence s\nw:{a} v:{a,s}\n")
    two = parse_sample("system sdcc\ngen b s\nsentence s\nw:{b} v:{b,s}\n")
    u = disjoint_union([one, two])
    assert u.words() == {"w#0", "v#0", "w#1", "v#1"}
    assert validate_sample(u) == []
    shared = disjoint_union([one, two], shared={"w"})
    assert shared.words() == {"w", "v#0", "v#1"}
    with pytest.raises(SystemMismatch):
        disjoint_union([one, parse_sample("system cc\ngen s\nsentence s\nw:{s}\n")])


def test_adding_sentences_keeps_exactness():
    base = parse_sample("system sdcc\ngen a b s\nsentence s\nS:{s} w:{a,b,b} v:{a}\n")
    p = InductionProblem(Functor.CC_TO_SDCC, base)
    key = ("w", sd("{a,b,b}"))
    assert isinstance(is_exact(p, *key, cc("{a*,b,b*}")), Exact)
    extra = parse_sample("system sdcc\ngen a b s\nsentence s\nS:{s} w:{a,b,b} x:{a,b} y:{b}\n")
    q = InductionProblem(Functor.CC_TO_SDCC, disjoint_union([base, extra], shared={"S", "w"}))
    assert solve(q)
    assert isinstance(is_exact(q, *key, cc("{a*,b,b*}")), Exact)


def test_composed_reduction_single_triple_and_contradiction():
    inst = gadgets.BetweennessInstance(("a", "b", "c"), (("c", "b", "a"),))
    p = compose_cor1(inst)
    assert p.direction is Functor.PIV_TO_SDCC and p.require_functional
    assert validate_sample(p.sample) == []
    sols = enumerate_solutions(p, cap=100)
    assert sols and all(gadgets.extract_betweenness(p, s)[1] == "b" for s in sols)
    bad = gadgets.BetweennessInstance(("a", "b", "c"), (("a", "b", "c"), ("b", "a", "c")))
    assert not solve(compose_cor1(bad))


def test_forced_keys_have_no_counterexample_in_the_composed_problem():
    # the composed problem has more than 10^5 solutions, so full enumeration is
    # inconclusive; the targeted search still proves there is no disagreeing solution
    inst = gadgets.BetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))
    p = compose_cor1(inst)
    assert solve(p)
    _, forced = cor1_fragments(inst)
    for fk in forced:
        if fk.word == "Y":
            continue  # too slow for the unit suite; checked on its fragment
        assert counterexample(p, fk.word, fk.semantic, fk.target) is None, fk.word
