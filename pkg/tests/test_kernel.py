import pytest
from hypothesis import given, strategies as st

from typelift.errors import (
    CycleInSubtyping,
    InvalidName,
    MissingDistinguished,
    ParseError,
    SystemMismatch,
    UnknownGenerator,
)
from typelift.kernel import (
    Functor,
    Signature,
    System,
    Type,
    check_type,
    dual,
    dual_left,
    dual_right,
    dump_signature,
    format_type,
    image,
    isomorphic,
    load_signature,
    parse_type,
    tensor,
    unit,
)

P, A, CC, SDP, SDCC = (System.PIVOTAL, System.AUTONOMOUS, System.COMPACT_CLOSED,
                       System.SELF_DUAL_PIVOTAL, System.SELF_DUAL_COMPACT_CLOSED)


@pytest.mark.parametrize("name", ["a b", "x*y", "1", "a.b", "n^2", "w:t", "#x", "{a}", "a,b", ""])
def test_bad_names(name):
    with pytest.raises(InvalidName):
        Signature.make([name, "s"], (), "s")


def test_signature_closure_and_joins():
    sig = Signature.make("abcds", [("a", "d"), ("c", "d"), ("d", "s")], "s")
    assert sig.leq("a", "s") and not sig.leq("s", "a")
    assert sig.joinable("a", "c") and not sig.joinable("a", "b")
    assert sig.component("a") == sig.component("s") != sig.component("b")
    with pytest.raises(UnknownGenerator):
        sig.leq("a", "zz")


def test_signature_errors():
    with pytest.raises(CycleInSubtyping):
        Signature.make("ab", [("a", "b"), ("b", "a")], "a")
    with pytest.raises(MissingDistinguished):
        Signature.make("ab", (), "s")
    with pytest.raises(UnknownGenerator):
        Signature.make("ab", [("a", "x")], "a")


def test_signature_text_roundtrip():
    text = "# comment\ngen a b\ngen s\nsub a b\nsentence s\n"
    sig = load_signature(text)
    assert load_signature(dump_signature(sig)) == sig
    with pytest.raises(ParseError):
        load_signature("gen a\nfrobnicate a\nsentence a\n")


def test_parse_and_format():
    t = parse_type(P, "a.b*.c")
    assert format_type(t) == "a.b*.c"
    assert format_type(parse_type(CC, "{b*, a}")) == "{a,b*}"
    assert format_type(parse_type(A, "n^-1.s.n^1")) == "n^-1.s.n^1"
    assert parse_type(CC, "{}") == unit(CC) and format_type(unit(P)) == "1"
    with pytest.raises(ParseError):
        parse_type(P, "{a}")
    with pytest.raises(ParseError):
        parse_type(CC, "a.b")
    with pytest.raises(UnknownGenerator):
        parse_type(P, "a.q", Signature.make("as", (), "s"))


def test_duals():
    t = parse_type(P, "a.b*.c")
    assert format_type(dual(P, t)) == "c*.b.a*"
    assert format_type(dual(CC, parse_type(CC, "{a,b*}"))) == "{a*,b}"
    assert dual(SDCC, parse_type(SDCC, "{a,b}")) == parse_type(SDCC, "{a,b}")
    assert format_type(dual(SDP, parse_type(SDP, "a.b"))) == "b.a"
    n1 = parse_type(A, "n^1")
    assert format_type(dual_left(n1)) == "n" and format_type(dual_right(n1)) == "n^2"
    assert dual_right(dual_left(n1)) == n1


def test_tensor_unit_and_mismatch():
    t = parse_type(P, "a.b*")
    assert tensor(unit(P), t, unit(P)) == t
    with pytest.raises(SystemMismatch):
        tensor(t, parse_type(CC, "{a}"))


def test_functor_images():
    t = parse_type(A, "n^-1.s.n^2")
    assert format_type(image(Functor.AUT_TO_PIV, t)) == "n*.s.n"
    p = parse_type(P, "a.b*.a")
    assert format_type(image(Functor.PIV_TO_CC, p)) == "{a,a,b*}"
    assert format_type(image(Functor.PIV_TO_SDP, p)) == "a.b.a"
    assert format_type(image(Functor.PIV_TO_SDCC, p)) == "{a,a,b}"
    assert Functor.between(P, CC) is Functor.PIV_TO_CC
    with pytest.raises(SystemMismatch):
        image(Functor.PIV_TO_CC, parse_type(CC, "{a}"))


def test_check_type_and_isomorphic():
    sig = Signature.make("as", (), "s")
    check_type(sig, parse_type(P, "a.s*"))
    with pytest.raises(UnknownGenerator):
        check_type(sig, parse_type(P, "b"))
    assert isomorphic(CC, parse_type(CC, "{a,b}"), parse_type(CC, "{b,a}"))
    assert not isomorphic(P, parse_type(P, "a.b"), parse_type(P, "b.a"))


def test_system_parse_aliases():
    assert System.parse("compact-closed") is CC and System.parse("Self-Dual-Pivotal") is SDP
    assert System.parse("pregroup") is A
    with pytest.raises(ParseError):
        System.parse("bogus")


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1))), max_size=8)


@given(letters)
def test_pivotal_dual_is_involution_and_antihomomorphic(w):
    t = Type(P, w)
    assert dual(P, dual(P, t)) == t
    half = len(w) // 2
    t1, t2 = Type(P, w[:half]), Type(P, w[half:])
    assert dual(P, tensor(t1, t2)) == tensor(dual(P, t2), dual(P, t1))


@given(letters)
def test_format_parse_roundtrip(w):
    for system, t in ((P, Type(P, w)), (CC, Type(CC, w))):
        assert parse_type(system, format_type(t)) == t


@given(st.lists(st.tuples(st.sampled_from("ab"), st.integers(-3, 3)), max_size=6))
def test_autonomous_roundtrip_and_adjoints(w):
    t = Type(A, w)
    assert parse_type(A, format_type(t)) == t
    assert dual_left(dual_right(t)) == t
