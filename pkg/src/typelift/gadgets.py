"""Hardness gadgets: betweenness and 3-SAT instances as induction problems.

Three generators are provided:

* :func:`gen_betweenness_cc`: compact closed semantics, pivotal syntax.
* :func:`gen_betweenness_sdcc`: the unsigned variant (sdcc semantics,
  sdp syntax), with the subtype edges pointing down from ``d`` so that the
  two outer elements of a triple cannot cancel each other.
* :func:`gen_sat_cc`: sdcc semantics, compact closed syntax.

Each comes with an extractor that reads the source-problem answer back out of
a lexicon, and the first and last come with explicit witness lexicons built
from a known answer.

Fresh names are deterministic: ``d[a|b|c]`` per triple, ``e[k]`` for
padding pairs, ``z[i|b]`` and ``y[i|b]`` per literal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .corpus import Lexicon, Sentence, TrainingSample
from .errors import (
    AssignmentInvalid,
    DegenerateInstance,
    EmptyFormula,
    MalformedSolution,
    NotThreeSat,
    OrderInvalid,
    ParseError,
    WitnessRejected,
)
from .functional import is_functional
from .kernel import Functor, Signature, System, Type, check_name
from .solver import InductionProblem, InductionSolution, verify_solution

SENTENCE = "S"
Y_WORD = "Y"


class Mode(enum.Enum):
    PAPER_EXACT = "paper-exact"
    FUNCTIONAL_SAFE = "functional-safe"


# -- instances ------------------------------------------------------------------------


@dataclass(frozen=True)
class BetweennessInstance:
    """Ground set (in the given order) and triples (a, b, c): b must lie between a and c."""

    ground: tuple
    triples: tuple = ()

    def __post_init__(self):
        ground = tuple(self.ground)
        if len(set(ground)) != len(ground):
            raise DegenerateInstance("repeated element in the ground set")
        for x in ground:
            check_name(x)
            if x == SENTENCE or "[" in x or "]" in x:
                raise DegenerateInstance(f"element name {x!r} clashes with gadget names")
        members = set(ground)
        triples = []
        for t in self.triples:
            t = tuple(t)
            if len(t) != 3 or len(set(t)) != 3:
                raise DegenerateInstance(f"triple {t!r} must have three distinct elements")
            if not set(t) <= members:
                raise DegenerateInstance(f"triple {t!r} uses elements outside the ground set")
            if t not in triples:
                triples.append(t)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "triples", tuple(triples))


@dataclass(frozen=True)
class Cnf3Formula:
    """``clauses`` holds triples of literals ``(variable, polarity)``, variables from 1."""

    variables: int
    clauses: tuple

    def __post_init__(self):
        clauses = []
        for c in self.clauses:
            c = tuple((int(i), bool(pol)) for i, pol in c)
            if len(c) != 3:
                raise NotThreeSat(f"clause {c!r} does not have exactly three literals")
            for i, _ in c:
                if not 1 <= i <= self.variables:
                    raise ParseError(f"variable {i} outside 1..{self.variables}")
            clauses.append(c)
        object.__setattr__(self, "clauses", tuple(clauses))

    def occurrences(self, i: int, b: int) -> int:
        return sum(1 for c in self.clauses for j, pol in c if j == i and int(pol) == b)

    def satisfied_by(self, assignment) -> bool:
        return all(any(assignment[i - 1] == pol for i, pol in c) for c in self.clauses)


def parse_dimacs(text: str) -> Cnf3Formula:
    """Read DIMACS CNF; short clauses are padded by repeating their last literal."""
    header = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected a single 'p cnf VARS CLAUSES' header", lineno, 1)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-numeric header", lineno, 1) from None
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", lineno, 1)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno, raw.find(tok) + 1) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                if len(current) > 3:
                    raise NotThreeSat(f"clause with {len(current)} literals", lineno)
                while len(current) < 3:
                    current.append(current[-1])
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"variable {abs(lit)} exceeds header count {header[0]}", lineno)
                current.append((abs(lit), lit > 0))
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return Cnf3Formula(header[0], tuple(clauses))


def format_dimacs(f: Cnf3Formula) -> str:
    lines = [f"p cnf {f.variables} {len(f.clauses)}"]
    for c in f.clauses:
        lines.append(" ".join(str(i if pol else -i) for i, pol in c) + " 0")
    return "\n".join(lines) + "\n"


def parse_betweenness(text: str) -> BetweennessInstance:
    ground, triples = None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "set":
            if ground is not None:
                raise ParseError("second 'set' line", lineno, 1)
            ground = parts[1:]
        elif parts[0] == "triple":
            if len(parts) != 4:
                raise ParseError("expected 'triple a b c'", lineno, 1)
            if ground is None:
                raise ParseError("'triple' before 'set'", lineno, 1)
            for tok in parts[1:]:
                if tok not in ground:
                    raise ParseError(f"unknown element {tok!r}", lineno, raw.find(tok) + 1)
            triples.append(tuple(parts[1:]))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno, 1)
    if ground is None:
        raise ParseError("missing 'set' line")
    return BetweennessInstance(tuple(ground), tuple(triples))


def format_betweenness(inst: BetweennessInstance) -> str:
    lines = ["set " + " ".join(inst.ground)]
    lines += ["triple " + " ".join(t) for t in inst.triples]
    return "\n".join(lines) + "\n"


# -- betweenness gadgets ----------------------------------------------------------------


def d_name(t) -> str:
    return "d[" + "|".join(t) + "]"


def _words(t):
    tag = "|".join(t)
    return [f"W{k}[{tag}]" for k in (1, 2, 3, 4)]


def _check_size(inst):
    if len(inst.ground) < 3:
        raise DegenerateInstance("betweenness needs at least three elements")


def gen_betweenness_cc(inst: BetweennessInstance, mode: Mode = Mode.FUNCTIONAL_SAFE) -> InductionProblem:
    _check_size(inst)
    cc = System.COMPACT_CLOSED
    gens = set(inst.ground) | {SENTENCE} | {d_name(t) for t in inst.triples}
    edges = set()
    for t in inst.triples:
        edges |= {(t[0], d_name(t)), (t[2], d_name(t))}
    y = [(x, 1) for x in inst.ground]
    raw = []
    for t in inst.triples:
        a, b, c = t
        w = [x for x in inst.ground if x not in t]
        neg_w = [(x, -1) for x in w]
        c1 = [(d_name(t), -1)] + neg_w + [(x, 1) for x in w]
        c2 = [(b, -1)] + neg_w + [(x, 1) for x in w]
        w1, w2, w3, w4 = _words(t)
        if mode is Mode.FUNCTIONAL_SAFE:
            last = neg_w + [(SENTENCE, 1)]
            raw.append([(Y_WORD, y), (w1, c1), (w2, c2), (w3, c1), (w4, last)])
        else:
            raw.append([(SENTENCE, [(SENTENCE, 1)]), (Y_WORD, y), (w1, c1), (w2, c2), (w3, c1), (w4, neg_w)])
    pads = {}
    if mode is Mode.FUNCTIONAL_SAFE:
        for sent in raw:
            for word, f in sent:
                key = (word, Type(cc, f))
                if key not in pads and not is_functional(cc, key[1]):
                    pads[key] = f"e[{len(pads)}]"
        gens |= set(pads.values())
    sentences = []
    for sent in raw:
        toks = []
        for word, f in sent:
            key = (word, Type(cc, f))
            if key in pads:
                f = list(f) + [(pads[key], 1), (pads[key], -1)]
            toks.append((word, Type(cc, f)))
        sentences.append(Sentence(tuple(toks)))
    sig = Signature.make(gens, edges, SENTENCE)
    sample = TrainingSample(sig, cc, tuple(sentences))
    return InductionProblem(Functor.PIV_TO_CC, sample, mode is Mode.FUNCTIONAL_SAFE)


def gen_betweenness_sdcc(inst: BetweennessInstance, upward_edges: bool = False) -> InductionProblem:
    """Unsigned gadget. ``upward_edges`` keeps a <= d, c <= d (a known failure mode)."""
    _check_size(inst)
    sd = System.SELF_DUAL_COMPACT_CLOSED
    gens = set(inst.ground) | {SENTENCE} | {d_name(t) for t in inst.triples}
    edges = set()
    for t in inst.triples:
        if upward_edges:
            edges |= {(t[0], d_name(t)), (t[2], d_name(t))}
        else:
            edges |= {(d_name(t), t[0]), (d_name(t), t[2])}
    sentences = []
    for t in inst.triples:
        w = [x for x in inst.ground if x not in t]
        w1, w2, w3, w4 = _words(t)
        c1 = Type(sd, [d_name(t)] + w + w)
        c2 = Type(sd, [t[1]] + w + w)
        sentences.append(Sentence((
            (Y_WORD, Type(sd, inst.ground)), (w1, c1), (w2, c2), (w3, c1),
            (w4, Type(sd, w + [SENTENCE])))))
    sig = Signature.make(gens, edges, SENTENCE)
    return InductionProblem(Functor.SDP_TO_SDCC, TrainingSample(sig, sd, tuple(sentences)), True)


def _y_type(problem: InductionProblem):
    for key in problem.sample.keys():
        if key[0] == Y_WORD:
            return key
    raise MalformedSolution("problem has no Y word")


def extract_betweenness(problem: InductionProblem, sol: InductionSolution) -> tuple:
    """Order of the ground elements as they appear in the syntactic type of Y."""
    key = _y_type(problem)
    try:
        t = sol.lexicon[key]
    except KeyError:
        raise MalformedSolution("solution has no entry for Y") from None
    names = t.names()
    sig = problem.sample.signature
    ground = [g for g in names if g != SENTENCE and not g.startswith("e[") and not g.startswith("d[")]
    sem_names = [g for g in key[1].names() if g != SENTENCE and not g.startswith("e[")]
    if sorted(ground) != sorted(sem_names) or len(set(ground)) != len(ground):
        raise MalformedSolution(f"Y is typed {t}, not an ordering of the ground set")
    for g in ground:
        if g not in sig.generators:
            raise MalformedSolution(f"unknown generator {g!r} in Y")
    return tuple(ground)


def _between(order, triples) -> bool:
    rank = {x: k for k, x in enumerate(order)}
    return all(min(rank[a], rank[c]) < rank[b] < max(rank[a], rank[c]) for a, b, c in triples)


def _inv(seq):
    return [(g, -s) for g, s in reversed(seq)]


def witness_solution_thm1(inst: BetweennessInstance, order, mode: Mode = Mode.FUNCTIONAL_SAFE,
                          problem: InductionProblem | None = None) -> InductionSolution:
    """Explicit pivotal lexicon for a valid order, checked before it is returned."""
    order = tuple(order)
    if sorted(order) != sorted(inst.ground) or not _between(order, inst.triples):
        raise OrderInvalid(f"{order} is not a betweenness solution")
    if problem is None:
        problem = gen_betweenness_cc(inst, mode)
    cc = System.COMPACT_CLOSED
    piv = System.PIVOTAL
    pads = {}
    for key in problem.sample.keys():
        extra = [g for g, s in key[1].factors if g.startswith("e[")]
        if extra:
            pads[key] = extra[0]
    lex = Lexicon()

    def bind(word, sem, seq):
        key = (word, sem)
        if key in pads:
            seq = list(seq) + [(pads[key], 1), (pads[key], -1)]
        lex.bind(key, Type(piv, seq))

    y_sem = _y_type(problem)[1]
    yprime = [(x, 1) for x in order]
    bind(Y_WORD, y_sem, yprime)
    if mode is Mode.PAPER_EXACT:
        lex.bind((SENTENCE, Type(cc, [(SENTENCE, 1)])), Type(piv, [(SENTENCE, 1)]))
    for sent, t in zip(problem.sample.sentences, inst.triples):
        a, b, c = t
        rank = {x: k for k, x in enumerate(order)}
        lo, hi = sorted((rank[a], rank[c]))
        p, q = yprime[:lo], yprime[lo + 1:rank[b]]
        r, u = yprime[rank[b] + 1:hi], yprime[hi + 1:]
        d = [(d_name(t), -1)]
        pqr = p + q + r
        w1 = _inv(u) + d + u + pqr + _inv(pqr)
        w2 = _inv(r + u) + [(b, -1)] + r + u + (p + q) + _inv(p + q)
        w3 = _inv(q + r + u) + d + q + r + u + p + _inv(p)
        w4 = _inv(p + q + r + u)
        if mode is Mode.FUNCTIONAL_SAFE:
            w4 = w4 + [(SENTENCE, 1)]
        toks = [tok for tok in sent.tokens if tok[0] != SENTENCE and tok[0] != Y_WORD]
        for (word, sem), seq in zip(toks, (w1, w2, w3, w4)):
            bind(word, sem, seq)
    sol = InductionSolution(lex)
    if not verify_solution(problem, sol):
        raise WitnessRejected(f"explicit lexicon for order {order} does not verify")
    return sol


def witness_solution_thm2(inst: BetweennessInstance, order,
                          problem: InductionProblem | None = None) -> InductionSolution:
    """Unsigned counterpart of :func:`witness_solution_thm1` (inverse = reversal)."""
    order = tuple(order)
    if sorted(order) != sorted(inst.ground) or not _between(order, inst.triples):
        raise OrderInvalid(f"{order} is not a betweenness solution")
    if problem is None:
        problem = gen_betweenness_sdcc(inst)
    sdp = System.SELF_DUAL_PIVOTAL
    lex = Lexicon()
    lex.bind(_y_type(problem), Type(sdp, order))
    rank = {x: k for k, x in enumerate(order)}
    for sent, t in zip(problem.sample.sentences, inst.triples):
        a, b, c = t
        lo, hi = sorted((rank[a], rank[c]))
        seq = list(order)
        p, q, r, u = seq[:lo], seq[lo + 1:rank[b]], seq[rank[b] + 1:hi], seq[hi + 1:]
        d = [d_name(t)]

        def rev(s):
            return list(reversed(s))

        words = (rev(u) + d + u + p + q + r + rev(p + q + r),
                 rev(r + u) + [b] + r + u + p + q + rev(p + q),
                 rev(q + r + u) + d + q + r + u + p + rev(p),
                 rev(p + q + r + u) + [SENTENCE])
        for (word, sem), seq_w in zip(sent.tokens[1:], words):
            lex.bind((word, sem), Type(sdp, seq_w))
    sol = InductionSolution(lex)
    if not verify_solution(problem, sol):
        raise WitnessRejected(f"explicit lexicon for order {order} does not verify")
    return sol


# -- 3-SAT gadget ------------------------------------------------------------------------


def z_name(i, b):
    return f"z[{i}|{b}]"


def y_name(i, b):
    return f"y[{i}|{b}]"


def x_word(i, b):
    return f"X[{i}|{b}]"


def gen_sat_cc(f: Cnf3Formula, require_functional: bool = True) -> InductionProblem:
    """One sentence enforcing every clause plus one negation sentence per variable."""
    if f.variables < 1 or not f.clauses:
        raise EmptyFormula("formula needs at least one variable and one clause")
    sd = System.SELF_DUAL_COMPACT_CLOSED
    s, d = "s", "d"
    gens = {s, d}
    for i in range(1, f.variables + 1):
        for b in (0, 1):
            gens |= {z_name(i, b), y_name(i, b)}
    sig = Signature.make(gens, (), s)

    def v(i, b):
        return Type(sd, [z_name(i, b), y_name(i, b), y_name(i, b)])

    main = [("S", Type(sd, [s]))]
    for j, clause in enumerate(f.clauses, 1):
        main.append((f"C[{j}]", Type(sd, [d] + [z_name(i, int(pol)) for i, pol in clause])))
        main.append((f"D[{j}]", Type(sd, [d])))
    for i in range(1, f.variables + 1):
        for b in (0, 1):
            main += [(x_word(i, b), v(i, b))] * f.occurrences(i, b)
    sentences = [Sentence(tuple(main))]
    for i in range(1, f.variables + 1):
        sentences.append(Sentence((
            ("S", Type(sd, [s])), (x_word(i, 0), v(i, 0)),
            (f"Z[{i}]", Type(sd, [z_name(i, 0), z_name(i, 1)])), (x_word(i, 1), v(i, 1)))))
    sample = TrainingSample(sig, sd, tuple(sentences))
    return InductionProblem(Functor.CC_TO_SDCC, sample, require_functional)


def _formula_vars(problem):
    n = 0
    for word, _ in problem.sample.keys():
        if word.startswith("Z["):
            n = max(n, int(word[2:-1]))
    return n


def extract_assignment(problem: InductionProblem, sol: InductionSolution) -> tuple:
    """x_i is true exactly when z[i|1] is negative in the type of X[i|1]."""
    p = _formula_vars(problem)
    if p == 0:
        raise MalformedSolution("problem has no negation sentences")
    values = []
    for i in range(1, p + 1):
        key = next((k for k in problem.sample.keys() if k[0] == x_word(i, 1)), None)
        if key is None or key not in sol.lexicon:
            raise MalformedSolution(f"no entry for {x_word(i, 1)}")
        signs = [sg for g, sg in sol.lexicon[key].factors if g == z_name(i, 1)]
        if len(signs) != 1:
            raise MalformedSolution(f"{x_word(i, 1)} should contain {z_name(i, 1)} once")
        values.append(signs[0] < 0)
    return tuple(values)


def witness_solution_thm3(f: Cnf3Formula, assignment, problem: InductionProblem | None = None) -> InductionSolution:
    assignment = tuple(bool(a) for a in assignment)
    if len(assignment) != f.variables or not f.satisfied_by(assignment):
        raise AssignmentInvalid(f"{assignment} does not satisfy the formula")
    if problem is None:
        problem = gen_sat_cc(f)
    cc = System.COMPACT_CLOSED
    sd = System.SELF_DUAL_COMPACT_CLOSED
    lex = Lexicon()
    lex.bind(("S", Type(sd, ["s"])), Type(cc, [("s", 1)]))

    def e_x(i, b):
        return -1 if b == int(assignment[i - 1]) else 1

    for i in range(1, f.variables + 1):
        for b in (0, 1):
            sem = Type(sd, [z_name(i, b), y_name(i, b), y_name(i, b)])
            lex.bind((x_word(i, b), sem),
                     Type(cc, [(z_name(i, b), e_x(i, b)), (y_name(i, b), -1), (y_name(i, b), 1)]))
        lex.bind((f"Z[{i}]", Type(sd, [z_name(i, 0), z_name(i, 1)])),
                 Type(cc, [(z_name(i, 0), -e_x(i, 0)), (z_name(i, 1), -e_x(i, 1))]))
    for j, clause in enumerate(f.clauses, 1):
        sem = Type(sd, ["d"] + [z_name(i, int(pol)) for i, pol in clause])
        syn = [("d", -1)] + [(z_name(i, int(pol)), 1 if pol == assignment[i - 1] else -1)
                             for i, pol in clause]
        lex.bind((f"C[{j}]", sem), Type(cc, syn))
        lex.bind((f"D[{j}]", Type(sd, ["d"])), Type(cc, [("d", 1)]))
    sol = InductionSolution(lex)
    if not verify_solution(problem, sol):
        raise WitnessRejected(f"explicit lexicon for {assignment} does not verify")
    return sol
