"""Lexicon file format, lookup and lexical insertion.

An entry maps a surface token sequence to a type and a term.  The
literal token ``1`` inside a surface marks a point of discontinuity; an
entry must contain exactly as many ``1`` tokens as its type's sort, and
may neither start nor end with one.

Insertion covers an input token sequence exactly with entries:
continuous entries occupy contiguous blocks and become leaves (or
vector hyperleaves), while a discontinuous entry's segments occupy
blocks in order and the material between consecutive segments is
recursively inserted to form the hyperleaf's fillers.  A ``1`` input
token inserts as a bare separator, so discontinuous strings themselves
can be parsed.
"""

from __future__ import annotations

import re
from importlib import resources
from typing import Iterable, Optional

from .config import Config, HyperLeaf, Leaf, SEP, mk_item
from .semterm import (
    SemType,
    SemTerm,
    SemTypeError,
    TermParseError,
    sem_type,
    parse_term,
    typecheck,
)
from .semterm import BaseType, ArrowType, PairType, E, T, UNIT
from .syntax import ParseError, parse_type
from .types import InvalidTypeError, TypeFormula

SEPARATOR_TOKEN = "1"


class LexiconError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where
        self.msg = msg


class LexEntry:
    __slots__ = ("surface", "type", "term", "segments")

    def __init__(self, surface: tuple, type_: TypeFormula, term: SemTerm):
        self.surface = tuple(surface)
        self.type = type_
        self.term = term
        segs: list = [[]]
        for tok in self.surface:
            if tok == SEPARATOR_TOKEN:
                segs.append([])
            else:
                segs[-1].append(tok)
        self.segments = tuple(tuple(s) for s in segs)

    def __repr__(self) -> str:
        return f"LexEntry({' '.join(self.surface)} : {self.type!r})"


class Lexicon:
    def __init__(self, entries: Iterable[LexEntry], atoms: dict):
        self.entries = tuple(entries)
        self.atoms = dict(atoms)
        self._by_first: dict = {}
        for e in self.entries:
            self._by_first.setdefault(e.segments[0][0], []).append(e)

    def entries_starting_with(self, token: str) -> list:
        return self._by_first.get(token, [])

    def lookup(self, tokens) -> list:
        """Entries whose surface matches the given contiguous token
        sequence: exactly, or segment-wise for discontinuous entries
        (their segments concatenated)."""
        tokens = tuple(tokens)
        out = []
        for e in self.entries:
            if e.surface == tokens:
                out.append(e)
            elif len(e.segments) > 1 and sum(e.segments, ()) == tokens:
                out.append(e)
        return out

    def known_token(self, token: str) -> bool:
        if token == SEPARATOR_TOKEN:
            return True
        return any(token in seg for e in self.entries for seg in e.segments)


def _parse_semtype(text: str, where: str) -> SemType:
    text = text.strip()
    tokens = text.replace("(", " ( ").replace(")", " ) ").replace("->", " -> ").replace("*", " * ").split()
    pos = [0]

    def atom() -> SemType:
        if pos[0] >= len(tokens):
            raise LexiconError(where, f"bad semantic type {text!r}")
        tok = tokens[pos[0]]
        pos[0] += 1
        if tok == "(":
            t = expr()
            if pos[0] >= len(tokens) or tokens[pos[0]] != ")":
                raise LexiconError(where, f"unbalanced parentheses in {text!r}")
            pos[0] += 1
            return t
        if tok == "e":
            return E
        if tok == "t":
            return T
        if tok == "unit":
            return UNIT
        raise LexiconError(where, f"unknown semantic type {tok!r}")

    def expr() -> SemType:
        left = atom()
        if pos[0] < len(tokens) and tokens[pos[0]] == "->":
            pos[0] += 1
            return ArrowType(left, expr())
        if pos[0] < len(tokens) and tokens[pos[0]] == "*":
            pos[0] += 1
            return PairType(left, expr())
        return left

    t = expr()
    if pos[0] != len(tokens):
        raise LexiconError(where, f"trailing input in semantic type {text!r}")
    return t


def loads_lexicon(text: str, name: str = "<lexicon>") -> Lexicon:
    """Parse lexicon text: ``#`` comments, ``atom N : e`` table lines,
    and ``surface tokens : TYPE : TERM`` entry lines.  Every entry is
    validated: surface/sort agreement and term typing at the entry
    type's semantic type."""
    atoms: dict = {}
    entries: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{name}:{lineno}"
        parts = [p.strip() for p in re.split(r"\s:\s|\s:$|^:\s", line)]
        if parts[0].startswith("atom "):
            if len(parts) != 2:
                raise LexiconError(where, "atom lines read 'atom NAME : SEMTYPE'")
            atom_name = parts[0][5:].strip()
            atoms[atom_name] = _parse_semtype(parts[1], where)
            continue
        if len(parts) != 3:
            raise LexiconError(
                where, "entry lines read 'surface tokens : TYPE : TERM'"
            )
        surface = tuple(parts[0].split())
        if not surface:
            raise LexiconError(where, "empty surface")
        if surface[0] == SEPARATOR_TOKEN or surface[-1] == SEPARATOR_TOKEN:
            raise LexiconError(where, "surface may not start or end with '1'")
        try:
            type_ = parse_type(parts[1])
        except (ParseError, InvalidTypeError) as e:
            raise LexiconError(where, f"bad type: {e}") from e
        n_seps = sum(1 for t in surface if t == SEPARATOR_TOKEN)
        if n_seps != type_.sort:
            raise LexiconError(
                where,
                f"surface has {n_seps} separator tokens but type "
                f"{type_!r} has sort {type_.sort}",
            )
        try:
            term = parse_term(parts[2])
        except TermParseError as e:
            raise LexiconError(where, f"bad term: {e}") from e
        entries.append(LexEntry(surface, type_, term))

    lex = Lexicon(entries, atoms)
    for e in lex.entries:
        try:
            expected = sem_type(e.type, lex.atoms)
        except SemTypeError as exc:
            raise LexiconError(name, f"{e!r}: {exc}") from exc
        try:
            typecheck(e.term, expected=expected, what=f"entry {' '.join(e.surface)}")
        except SemTypeError as exc:
            raise LexiconError(name, f"{e!r}: ill-typed term: {exc}") from exc
    return lex


def load_lexicon(path) -> Lexicon:
    with open(path, "r", encoding="utf-8") as f:
        return loads_lexicon(f.read(), name=str(path))


def default_lexicon() -> Lexicon:
    data = resources.files("displace").joinpath("data/core.lex").read_text("utf-8")
    return loads_lexicon(data, name="core.lex")


# ---------------------------------------------------------------------------
# insertion


def insertions(tokens, lex: Lexicon) -> list:
    """All labeled antecedent configurations covering ``tokens`` exactly.
    Deduplicated, deterministic order.  Empty when the tokens cannot be
    covered (use :func:`unknown_tokens` for the diagnostic)."""
    tokens = tuple(tokens)
    memo: dict = {}

    def cover(i: int, j: int) -> list:
        """Configurations covering tokens[i:j]."""
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        memo[key] = []  # cycle-safe: ranges strictly shrink, but be defensive
        if i == j:
            memo[key] = [()]
            return memo[key]
        results: list = []
        if tokens[i] == SEPARATOR_TOKEN:
            for rest in cover(i + 1, j):
                results.append((SEP,) + rest)
        for entry in lex.entries_starting_with(tokens[i]):
            for item, nxt in _matches(entry, i, j, cover):
                for rest in cover(nxt, j):
                    results.append((item,) + rest)
        seen = set()
        uniq = []
        for c in results:
            if c not in seen:
                seen.add(c)
                uniq.append(c)
        memo[key] = uniq
        return uniq

    def _matches(entry: LexEntry, i: int, j: int, cover) -> list:
        """Ways to consume entry starting at i: (item, next index)."""
        seg0 = entry.segments[0]
        if tokens[i : i + len(seg0)] != seg0:
            return []
        if len(entry.segments) == 1:
            return [(Leaf(entry.type, entry.term), i + len(seg0))]
        out: list = []

        def gaps(seg_idx: int, at: int, fillers: tuple):
            if seg_idx == len(entry.segments):
                out.append(
                    (HyperLeaf(entry.type, fillers, entry.term), at)
                )
                return
            seg = entry.segments[seg_idx]
            for end in range(at, j + 1):
                if tokens[end : end + len(seg)] != seg:
                    continue
                for filler in cover(at, end):
                    gaps(seg_idx + 1, end + len(seg), fillers + (filler,))

        gaps(1, i + len(seg0), ())
        return out

    return cover(0, len(tokens))


def unknown_tokens(tokens, lex: Lexicon) -> list:
    return [t for t in tokens if not lex.known_token(t)]
