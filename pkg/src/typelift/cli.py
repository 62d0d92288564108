"""Command line interface: ``typelift <command> ...``.

Results go to stdout, one record per line; diagnostics go to stderr.
Exit codes: 0 positive result, 1 negative result, 2 usage or input error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import gadgets
from .corpus import Sentence, TrainingSample, load_sample, serialize_sample, validate_sample
from .errors import TypeliftError
from .exactness import Exact, Inconclusive, compose_cor1, is_exact
from .functional import is_functional, lambek_witness
from .kernel import Functor, System, load_signature, parse_type
from .oracles import sat_bruteforce, solve_betweenness_bruteforce
from .redcheck import Target, reduces
from .solver import InductionProblem, enumerate_solutions, solve

OK, NEGATIVE, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _direction(text: str) -> Functor:
    sem, sep, syn = text.partition(":")
    if not sep:
        raise TypeliftError(f"direction must look like SEM:SYN, got {text!r}")
    return Functor.between(System.parse(syn), System.parse(sem))


def _direction_text(f: Functor) -> str:
    return f"{f.target.value}:{f.source.value}"


def _parse_sentence(system, text, sig):
    toks = []
    for token in text.split():
        word, colon, ttext = token.partition(":")
        if not colon:
            raise TypeliftError(f"expected word:TYPE, got {token!r}")
        toks.append((word, parse_type(system, ttext, sig)))
    return Sentence(tuple(toks))


# -- commands ------------------------------------------------------------------------


def cmd_check(args, out):
    system = System.parse(args.system)
    sig = load_signature(_read(args.sig))
    sent = _parse_sentence(system, args.sentence, sig)
    m = reduces(system, sig, sent.types, Target(args.target))
    if m is None:
        print("NOT-GRAMMATICAL", file=out)
        return NEGATIVE
    print(f"MATCHING {m}", file=out)
    return OK


def _lexicon_lines(problem, lex, out):
    for line in lex.lines(problem.sample.keys()):
        print(line, file=out)


def cmd_solve(args, out):
    sample = load_sample(args.sample)
    problem = InductionProblem(_direction(args.direction), sample, not args.no_functional)
    if not args.all:
        sol = solve(problem)
        if not sol:
            print("UNSAT", file=out)
            return NEGATIVE
        print("SAT", file=out)
        _lexicon_lines(problem, sol.lexicon, out)
        return OK
    sols = enumerate_solutions(problem, cap=args.cap)
    for k, sol in enumerate(sols, 1):
        print(f"solution {k}", file=out)
        _lexicon_lines(problem, sol.lexicon, out)
    print(f"solutions {len(sols)}" + (" truncated" if sols.truncated else ""), file=out)
    return OK if sols else NEGATIVE


def _emit_problem(problem: InductionProblem, path, out):
    flags = "" if problem.require_functional else " --no-functional"
    header = f"# solve with --direction {_direction_text(problem.direction)}{flags}\n"
    _write(path, header + serialize_sample(problem.sample))
    print(f"wrote {path} direction {_direction_text(problem.direction)}"
          f" functional {'yes' if problem.require_functional else 'no'}", file=out)


def cmd_reduce(args, out):
    text = _read(args.input)
    if args.source == "betweenness":
        inst = gadgets.parse_betweenness(text)
        if args.unsigned:
            problem = gadgets.gen_betweenness_sdcc(inst)
        else:
            mode = gadgets.Mode.PAPER_EXACT if args.paper_exact else gadgets.Mode.FUNCTIONAL_SAFE
            problem = gadgets.gen_betweenness_cc(inst, mode)
    elif args.source == "3sat":
        problem = gadgets.gen_sat_cc(gadgets.parse_dimacs(text))
    else:
        problem = compose_cor1(gadgets.parse_betweenness(text), cap=args.cap)
    _emit_problem(problem, args.output, out)
    return OK


def cmd_roundtrip(args, out):
    text = _read(args.input)
    if args.source == "betweenness":
        inst = gadgets.parse_betweenness(text)
        if args.unsigned:
            problem = gadgets.gen_betweenness_sdcc(inst)
        else:
            mode = gadgets.Mode.PAPER_EXACT if args.paper_exact else gadgets.Mode.FUNCTIONAL_SAFE
            problem = gadgets.gen_betweenness_cc(inst, mode)
        expected = solve_betweenness_bruteforce(inst)
        sol = solve(problem)
        answer = gadgets.extract_betweenness(problem, sol) if sol and inst.triples else None
        valid = answer is None or gadgets._between(answer, inst.triples)
        shown = " ".join(answer) if answer else ""
    else:
        f = gadgets.parse_dimacs(text)
        problem = gadgets.gen_sat_cc(f)
        expected = sat_bruteforce(f)
        sol = solve(problem)
        answer = gadgets.extract_assignment(problem, sol) if sol else None
        valid = answer is None or f.satisfied_by(answer)
        shown = " ".join(str(i if v else -i) for i, v in enumerate(answer, 1)) if answer else ""
    agree = bool(sol) == (expected is not None) and valid
    verdict = ("SAT" if sol else "UNSAT") + ("-AGREES" if agree else "-DISAGREES")
    print(f"{verdict} {shown}".rstrip(), file=out)
    return OK if agree else NEGATIVE


def cmd_functional(args, out):
    system = System.parse(args.system)
    t = parse_type(system, args.type)
    if not is_functional(system, t):
        print("NOT-FUNCTIONAL", file=out)
        return NEGATIVE
    if system is System.PIVOTAL:
        print(f"FUNCTIONAL {lambek_witness(t)}", file=out)
    else:
        print("FUNCTIONAL", file=out)
    return OK


def cmd_exact(args, out):
    sample = load_sample(args.sample)
    direction = _direction(args.direction)
    problem = InductionProblem(direction, sample, not args.no_functional)
    sem = parse_type(direction.target, args.semtype, sample.signature)
    syn_system = System.parse(args.synsystem) if args.synsystem else direction.source
    syn = parse_type(syn_system, args.syntype, sample.signature)
    verdict = is_exact(problem, args.word, sem, syn, cap=args.cap)
    print(str(verdict), file=out)
    if isinstance(verdict, Exact):
        return OK
    if isinstance(verdict, Inconclusive):
        return INCONCLUSIVE
    if verdict.counterexample is not None:
        lex = verdict.counterexample
        _lexicon_lines(problem, lex, out)
    return NEGATIVE


def cmd_validate(args, out):
    problems = validate_sample(load_sample(args.sample))
    for p in problems:
        print(p, file=out)
    print("VALID" if not problems else "INVALID", file=out)
    return NEGATIVE if problems else OK


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="typelift", description="Type checking and grammar induction for lower type systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="check that a typed sentence reduces")
    p.add_argument("--system", required=True)
    p.add_argument("--sig", required=True, help="signature file")
    p.add_argument("--sentence", required=True, help='"w:TYPE w:TYPE ..."')
    p.add_argument("--target", choices=[t.value for t in Target], default="distinguished")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="induce a lexicon from a sample")
    p.add_argument("--direction", required=True, help="SEM:SYN, e.g. cc:pivotal")
    p.add_argument("--sample", required=True)
    p.add_argument("--all", action="store_true", help="enumerate every solution")
    p.add_argument("--cap", type=int, default=100000)
    p.add_argument("--no-functional", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="encode an instance as an induction problem")
    p.add_argument("source", choices=["betweenness", "3sat", "cor1"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--paper-exact", action="store_true", help="literal gadget, no padding")
    p.add_argument("--unsigned", action="store_true", help="sdcc to sdp betweenness gadget")
    p.add_argument("--cap", type=int, default=100000)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("roundtrip", help="encode, solve, decode and compare with brute force")
    p.add_argument("source", choices=["betweenness", "3sat"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--paper-exact", action="store_true")
    p.add_argument("--unsigned", action="store_true")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("functional", help="decide functionality and print a Lambek witness")
    p.add_argument("--type", required=True)
    p.add_argument("--system", default="pivotal")
    p.set_defaults(func=cmd_functional)

    p = sub.add_parser("exact", help="check that a sample pins the type of one word")
    p.add_argument("--sample", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--semtype", required=True)
    p.add_argument("--syntype", required=True)
    p.add_argument("--synsystem", help="compare through the functor into this system")
    p.add_argument("--cap", type=int, default=100000)
    p.add_argument("--no-functional", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("validate", help="check that every sentence of a sample is grammatical")
    p.add_argument("--sample", required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with contextlib.redirect_stderr(err):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args, out)
    except (TypeliftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
