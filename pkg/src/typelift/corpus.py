"""Typed sentences, training samples, lexicons and the sample file format.

Sample files are line oriented::

    system cc
    gen A B C S
    sentence S
    t1:{A,B,C} t2:{A*,B*,C*,S}

Header lines (``system``, ``gen``, ``sub``, ``sentence``, ``include PATH``)
come first; every following line is one sentence made of ``word:TYPE``
tokens. Whitespace inside ``{...}`` does not split tokens. Lines starting
with ``#`` are comments. Blank lines are allowed in the header and at the
end of the file; a blank line between sentences is an empty sentence and
is rejected.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    ParseError,
    RigidityViolation,
    SystemMismatch,
    TypeliftError,
    UnknownGenerator,
)
from .kernel import (
    Functor,
    Signature,
    System,
    Type,
    check_type,
    dump_signature,
    format_type,
    image,
    load_signature,
    parse_type,
)
from .redcheck import Target, reduces

_HEADER = ("system", "gen", "sub", "sentence", "include")


def check_word(word: str) -> str:
    if not word or ":" in word or any(c.isspace() for c in word) or word.startswith("#"):
        raise ParseError(f"invalid word {word!r}")
    return word


@dataclass(frozen=True)
class Sentence:
    tokens: tuple

    def __post_init__(self):
        toks = tuple((w, t) for w, t in self.tokens)
        if not toks:
            raise ValueError("a sentence needs at least one word")
        if len({t.system for _, t in toks}) != 1:
            raise SystemMismatch("sentence mixes type systems")
        object.__setattr__(self, "tokens", toks)

    @property
    def words(self):
        return [w for w, _ in self.tokens]

    @property
    def types(self):
        return [t for _, t in self.tokens]

    @property
    def system(self) -> System:
        return self.tokens[0][1].system

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(f"{w}:{format_type(t)}" for w, t in self.tokens)


@dataclass(frozen=True)
class TrainingSample:
    signature: Signature
    system: System
    sentences: tuple

    def __post_init__(self):
        sents = tuple(s if isinstance(s, Sentence) else Sentence(tuple(s)) for s in self.sentences)
        for s in sents:
            if s.system is not self.system:
                raise SystemMismatch(
                    f"sentence of system {s.system.value} in a {self.system.value} sample")
        object.__setattr__(self, "sentences", sents)

    def keys(self) -> list:
        """Distinct (word, type) pairs in order of first occurrence."""
        seen = {}
        for s in self.sentences:
            for key in s.tokens:
                seen.setdefault(key, None)
        return list(seen)

    def words(self) -> set:
        return {w for s in self.sentences for w in s.words}

    def __len__(self):
        return len(self.sentences)


class Lexicon(Mapping):
    """Rigid association (word, semantic type) -> syntactic type.

    Semantic types are canonical forms, so two isomorphic keys are equal.
    Binding a key twice to different types raises :class:`RigidityViolation`.
    """

    def __init__(self, entries: Iterable = ()):
        self._map = {}
        if isinstance(entries, Mapping):
            entries = entries.items()
        for key, value in entries:
            self.bind(key, value)

    def bind(self, key, value: Type):
        word, sem = key
        key = (word, sem)
        old = self._map.get(key)
        if old is not None and old != value:
            raise RigidityViolation(
                f"{word}:{format_type(sem)} bound to both {old} and {value}")
        self._map[key] = value

    def __getitem__(self, key):
        return self._map[tuple(key)]

    def __iter__(self) -> Iterator:
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, Lexicon):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return f"Lexicon({len(self)} entries)"

    def lines(self, order=None) -> list:
        keys = order if order is not None else list(self._map)
        return [f"{w}:{format_type(sem)} -> {format_type(self._map[(w, sem)])}"
                for w, sem in keys]


def validate_sample(s: TrainingSample) -> list:
    """Report every sentence that does not reduce to the sentence type."""
    problems = []
    for k, sent in enumerate(s.sentences, 1):
        try:
            if reduces(s.system, s.signature, sent.types, Target.DISTINGUISHED) is None:
                problems.append(f"sentence {k}: not grammatical: {sent}")
        except TypeliftError as exc:
            problems.append(f"sentence {k}: {exc}")
    return problems


def rename_words(s: TrainingSample, suffix: str) -> TrainingSample:
    if not suffix:
        raise ValueError("suffix must be non-empty")
    check_word("w#" + suffix)
    sents = [Sentence(tuple((f"{w}#{suffix}", t) for w, t in sent.tokens)) for sent in s.sentences]
    return TrainingSample(s.signature, s.system, tuple(sents))


def map_sample(s: TrainingSample, f: Functor) -> TrainingSample:
    """Apply a functor to every type of a sample (words unchanged)."""
    if f.source is not s.system:
        raise SystemMismatch(f"{f.name} does not apply to a {s.system.value} sample")
    sents = [Sentence(tuple((w, image(f, t)) for w, t in sent.tokens)) for sent in s.sentences]
    return TrainingSample(s.signature, f.target, tuple(sents))


# -- text format --------------------------------------------------------------------


def _split_tokens(line: str, lineno: int):
    """Yield (column, token) for whitespace-separated tokens, braces kept whole."""
    tok, start, depth = [], None, 0
    for col, ch in enumerate(line, 1):
        if ch.isspace() and depth == 0:
            if tok:
                yield start, "".join(tok)
                tok = []
            continue
        if not tok:
            start = col
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced '}'", lineno, col)
        if not ch.isspace():
            tok.append(ch)
    if depth:
        raise ParseError("unclosed '{'", lineno, start)
    if tok:
        yield start, "".join(tok)


def parse_sample(text: str, base_dir: str | None = None) -> TrainingSample:
    system = None
    sig_lines = []
    pending = []
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    in_body = False
    for lineno, raw in enumerate(lines, 1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            if in_body:
                raise ParseError("empty sentence", lineno, 1)
            continue
        head = stripped.split()[0]
        if head in _HEADER:
            if in_body:
                raise ParseError(f"header line {head!r} after the first sentence", lineno, 1)
            args = stripped.split()[1:]
            if head == "system":
                if len(args) != 1:
                    raise ParseError("expected 'system NAME'", lineno, 1)
                try:
                    system = System.parse(args[0])
                except ParseError as exc:
                    raise ParseError(str(exc), lineno, 8) from None
            elif head == "include":
                if len(args) != 1:
                    raise ParseError("expected 'include PATH'", lineno, 1)
                path = args[0]
                if base_dir is not None and not os.path.isabs(path):
                    path = os.path.join(base_dir, path)
                try:
                    with open(path, encoding="utf-8") as fh:
                        sig_lines.extend(fh.read().splitlines())
                except OSError as exc:
                    raise ParseError(f"cannot include {args[0]!r}: {exc.strerror}", lineno, 9) from None
            else:
                sig_lines.append(stripped)
            continue
        in_body = True
        pending.append((lineno, raw))
    if system is None:
        raise ParseError("missing 'system NAME' header")
    sig = load_signature("\n".join(sig_lines))
    sentences = []
    for lineno, raw in pending:
        toks = []
        for col, token in _split_tokens(raw, lineno):
            word, colon, ttext = token.partition(":")
            if not colon or not word or not ttext:
                raise ParseError(f"expected word:TYPE, got {token!r}", lineno, col)
            try:
                check_word(word)
                t = parse_type(system, ttext)
            except ParseError as exc:
                raise ParseError(str(exc), lineno, col) from None
            try:
                check_type(sig, t)
            except UnknownGenerator as exc:
                raise UnknownGenerator(f"line {lineno}, column {col}: {exc}") from None
            toks.append((word, t))
        sentences.append(Sentence(tuple(toks)))
    return TrainingSample(sig, system, tuple(sentences))


def serialize_sample(s: TrainingSample) -> str:
    out = [f"system {s.system.value}"]
    out += dump_signature(s.signature).splitlines()
    out += [str(sent) for sent in s.sentences]
    return "\n".join(out) + "\n"


def load_sample(path: str) -> TrainingSample:
    with open(path, encoding="utf-8") as fh:
        return parse_sample(fh.read(), os.path.dirname(os.path.abspath(path)))
