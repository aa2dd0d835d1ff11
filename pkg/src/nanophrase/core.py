"""Alphabets, Gauss phrases, canonical forms and the phrase-document format.

A nanophrase is stored structurally: an :class:`AlphabetSpec` (the symbol set
with its involutions ``tau``/``nu`` and the homotopy triples), a projection of
every letter to a symbol, and a tuple of components, each a tuple of letter
ids.  The component separator ``|`` never appears in-band.

All values are immutable; every operation returns a new phrase.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "AlphabetSpec",
    "Letter",
    "NanoPhrase",
    "PhraseError",
    "PhraseSyntaxError",
    "UndeclaredSymbolError",
    "GaussViolation",
    "BUILTIN_ALPHABETS",
    "builtin_alphabet",
    "parse_phrase",
    "format_phrase",
    "validate_gauss",
    "canonicalize",
    "project_word",
    "relabel",
    "phrase_from_words",
    "enumerate_phrases",
]


class PhraseError(ValueError):
    """Base class for malformed phrases and documents."""


class PhraseSyntaxError(PhraseError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredSymbolError(PhraseError):
    def __init__(self, symbol: str, line: int | None = None, column: int | None = None):
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(f"{where}undeclared symbol {symbol!r}")
        self.symbol = symbol
        self.line = line
        self.column = column


class GaussViolation(PhraseError):
    """Raised when some letter does not occur exactly twice."""

    def __init__(self, counts: Mapping[str, int]):
        self.counts = dict(counts)
        listed = ", ".join(f"{k}:{v}" for k, v in self.counts.items())
        super().__init__(f"Gauss condition violated: {listed}")


def _symmetric(pairs: Mapping[str, str]) -> dict[str, str]:
    out = dict(pairs)
    for a, b in pairs.items():
        if out.setdefault(b, a) != a:
            raise PhraseError(f"conflicting images for {b!r}")
    return out


@dataclass(frozen=True)
class AlphabetSpec:
    """An alphabet with involutions ``tau``, ``nu`` and homotopy triples ``S``.

    ``tau`` and ``nu`` are stored as image tuples aligned with ``symbols``.
    The declaration order of ``symbols`` is the canonical order used to break
    every tie (orbit representatives, enumeration order, ...).
    """

    symbols: tuple[str, ...]
    tau_images: tuple[str, ...]
    nu_images: tuple[str, ...]
    triples: frozenset[tuple[str, str, str]] = frozenset()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            dup = [s for s, c in Counter(self.symbols).items() if c > 1]
            raise PhraseError(f"duplicate symbols: {dup}")
        if len(self.tau_images) != len(self.symbols) or len(self.nu_images) != len(self.symbols):
            raise PhraseError("involution tables must cover every symbol")
        index = {s: i for i, s in enumerate(self.symbols)}
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_tau", dict(zip(self.symbols, self.tau_images)))
        object.__setattr__(self, "_nu", dict(zip(self.symbols, self.nu_images)))
        for label, table in (("tau", self._tau), ("nu", self._nu)):
            for a, b in table.items():
                if b not in index:
                    raise UndeclaredSymbolError(b)
                if table[b] != a:
                    raise PhraseError(f"{label} is not an involution at {a!r}")
        for triple in self.triples:
            for s in triple:
                if s not in index:
                    raise UndeclaredSymbolError(s)

    @classmethod
    def build(
        cls,
        symbols: Sequence[str],
        tau: Mapping[str, str] | None = None,
        nu: Mapping[str, str] | None = None,
        triples: Iterable[tuple[str, str, str]] = (),
        name: str | None = None,
    ) -> "AlphabetSpec":
        """Build from partial maps; pairs are symmetric, unlisted symbols are fixed points."""
        tau = _symmetric(tau or {})
        nu = _symmetric(nu or {})
        return cls(
            tuple(symbols),
            tuple(tau.get(s, s) for s in symbols),
            tuple(nu.get(s, s) for s in symbols),
            frozenset(tuple(t) for t in triples),
            name,
        )

    def tau(self, a: str) -> str:
        return self._tau[a]

    def nu(self, a: str) -> str:
        return self._nu[a]

    def order(self, a: str) -> int:
        return self._index[a]

    def __contains__(self, a: object) -> bool:
        return a in self._index

    def with_triples(self, triples: Iterable[tuple[str, str, str]]) -> "AlphabetSpec":
        return AlphabetSpec(self.symbols, self.tau_images, self.nu_images,
                            frozenset(triples), self.name)

    def commutes(self) -> str | None:
        """Return a witness symbol where ``tau nu != nu tau``, or None."""
        for a in self.symbols:
            if self.tau(self.nu(a)) != self.nu(self.tau(a)):
                return a
        return None


def _alpha_star() -> AlphabetSpec:
    s = ("a+", "a-", "b+", "b-")
    tau = {"a+": "b-", "a-": "b+", "b+": "a-", "b-": "a+"}
    nu = {"a+": "b+", "a-": "b-", "b+": "a+", "b-": "a-"}
    triples = set()
    for p, m in (("+", "-"), ("-", "+")):
        for x in "ab":
            triples |= {(x + p, x + p, x + p), (x + p, x + p, x + m), (x + m, x + p, x + p)}
    return AlphabetSpec.build(s, tau, nu, triples, "star")


BUILTIN_ALPHABETS: dict[str, AlphabetSpec] = {
    "star": _alpha_star(),
    "alpha0": AlphabetSpec.build(("a", "b"), {"a": "b"}, {"a": "b"},
                                 {("a", "a", "a"), ("b", "b", "b")}, "alpha0"),
    "alpha1": AlphabetSpec.build(
        ("1", "-1"), {"1": "-1"}, {},
        {("1", "1", "1"), ("1", "1", "-1"), ("-1", "1", "1"),
         ("-1", "-1", "-1"), ("-1", "-1", "1"), ("1", "-1", "-1")},
        "alpha1"),
    "alpha2": AlphabetSpec.build(
        ("c", "d"), {}, {"c": "d"},
        {("c", "c", "c"), ("c", "c", "d"), ("d", "c", "c"),
         ("d", "d", "d"), ("d", "d", "c"), ("c", "d", "d")},
        "alpha2"),
    "alphaG": AlphabetSpec.build(("a",), {}, {}, {("a", "a", "a")}, "alphaG"),
}


def builtin_alphabet(name: str) -> AlphabetSpec:
    try:
        return BUILTIN_ALPHABETS[name]
    except KeyError:
        raise PhraseError(f"unknown built-in alphabet {name!r}") from None


@dataclass(frozen=True)
class Letter:
    id: str
    proj: str


@dataclass(frozen=True)
class NanoPhrase:
    """A Gauss phrase over an alphabet.

    ``proj`` is a tuple of ``(letter id, symbol)`` pairs sorted by id, so
    that field-wise equality is well defined and the value is hashable.
    """

    alphabet: AlphabetSpec
    components: tuple[tuple[str, ...], ...]
    proj: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "_proj", dict(self.proj))

    @classmethod
    def make(cls, alphabet: AlphabetSpec, components: Iterable[Iterable[str]],
             proj: Mapping[str, str], check: bool = True) -> "NanoPhrase":
        comps = tuple(tuple(c) for c in components)
        used = {a for c in comps for a in c}
        proj_items = tuple(sorted((a, proj[a]) for a in used))
        phrase = cls(alphabet, comps, proj_items)
        if check:
            for _, s in proj_items:
                if s not in alphabet:
                    raise UndeclaredSymbolError(s)
            report = validate_gauss(phrase)
            if report:
                raise GaussViolation(report)
        return phrase

    # -- accessors -------------------------------------------------------
    def symbol(self, letter: str) -> str:
        return self._proj[letter]

    @property
    def projections(self) -> dict[str, str]:
        return dict(self._proj)

    @property
    def letters(self) -> dict[str, Letter]:
        return {a: Letter(a, s) for a, s in self.proj}

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def n_letters(self) -> int:
        return len(self.proj)

    @property
    def is_empty_phrase(self) -> bool:
        """True for the length-0 phrase (no components at all)."""
        return not self.components

    def concatenation(self) -> tuple[str, ...]:
        return tuple(a for c in self.components for a in c)

    def locate(self, position: int) -> tuple[int, int]:
        """Map a position in the concatenation to ``(component, index)``."""
        if position < 0:
            raise IndexError(position)
        for ci, comp in enumerate(self.components):
            if position < len(comp):
                return ci, position
            position -= len(comp)
        raise IndexError("position outside phrase")

    def replace(self, components=None, proj=None, alphabet=None) -> "NanoPhrase":
        comps = self.components if components is None else components
        projs = self._proj if proj is None else proj
        return NanoPhrase.make(alphabet or self.alphabet, comps, projs, check=False)

    def key(self) -> str:
        """Deterministic serialization used for ordering and tie-breaking."""
        return format_phrase_line(self)

    def __str__(self) -> str:
        return format_phrase_line(self)


def validate_gauss(P: NanoPhrase) -> dict[str, int]:
    """Return ``{letter: count}`` for every letter not occurring exactly twice.

    An empty dict means the phrase is a Gauss phrase.  Letters that carry a
    projection but never occur are reported with count 0.
    """
    counts = Counter(P.concatenation())
    bad = {a: c for a, c in counts.items() if c != 2}
    for a, _ in P.proj:
        if a not in counts:
            bad[a] = 0
    return dict(sorted(bad.items()))


def canonicalize(P: NanoPhrase) -> NanoPhrase:
    """Rename letters ``X1, X2, ...`` in order of first occurrence."""
    names: dict[str, str] = {}
    for a in P.concatenation():
        if a not in names:
            names[a] = f"X{len(names) + 1}"
    comps = tuple(tuple(names[a] for a in c) for c in P.components)
    proj = {names[a]: s for a, s in P.proj if a in names}
    return NanoPhrase.make(P.alphabet, comps, proj, check=False)


def _twist_counts(P: NanoPhrase, occurrences: Iterable[str]) -> dict[str, str]:
    counts = Counter(occurrences)
    proj = P.projections
    alpha = P.alphabet
    for a, c in counts.items():
        if c == 1:
            proj[a] = alpha.tau(proj[a])
        elif c == 2:
            proj[a] = alpha.nu(proj[a])
    return proj


def project_word(P: NanoPhrase, w: tuple[int, int] | Iterable[str]) -> NanoPhrase:
    """Return ``P_w``: ``tau`` on letters occurring once in ``w``, ``nu`` on twice.

    ``w`` is either a half-open position range ``(start, stop)`` in the
    concatenation (component boundaries are transparent) or an explicit
    multiset of letter occurrences.
    """
    if isinstance(w, tuple) and len(w) == 2 and all(isinstance(i, int) for i in w):
        start, stop = w
        word = P.concatenation()
        if not 0 <= start <= stop <= len(word):
            raise IndexError(f"range {w} outside phrase of length {len(word)}")
        occ = word[start:stop]
    else:
        occ = list(w)
        for a in occ:
            if a not in P._proj:
                raise KeyError(f"letter {a!r} not in phrase")
    return P.replace(proj=_twist_counts(P, occ))


def relabel(P: NanoPhrase, target: AlphabetSpec, mapping: Mapping[str, str]) -> NanoPhrase:
    """Relabel every projection through ``mapping`` onto ``target``."""
    return NanoPhrase.make(target, P.components,
                           {a: mapping[s] for a, s in P.proj}, check=False)


def phrase_from_words(alphabet: AlphabetSpec, words: str, proj: Mapping[str, str]) -> NanoPhrase:
    """Convenience constructor: ``phrase_from_words(a1, "AB|AB", {"A": "1", ...})``.

    Each character other than ``|`` and whitespace is a letter id.
    """
    comps = [[ch for ch in part if not ch.isspace()] for part in words.split("|")]
    return NanoPhrase.make(alphabet, comps, proj)


# -- phrase document format ---------------------------------------------------

_LETTER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TRIPLE_RE = re.compile(r"\(\s*([^(),\s]+)\s*,\s*([^(),\s]+)\s*,\s*([^(),\s]+)\s*\)")


def _resolve_symbol(token: str, alphabet: AlphabetSpec, line: int, col: int) -> str:
    if token in alphabet:
        return token
    if token.startswith("+") and token[1:] in alphabet:
        return token[1:]
    raise UndeclaredSymbolError(token, line, col)


def _parse_pairs(tokens, symbols, line_no, cols):
    table = {}
    for tok, col in zip(tokens, cols):
        if tok.count(":") != 1:
            raise PhraseSyntaxError(f"expected <sym>:<sym>, got {tok!r}", line_no, col)
        a, b = tok.split(":")
        for s in (a, b):
            if s not in symbols:
                raise UndeclaredSymbolError(s, line_no, col)
        table[a] = b
        table.setdefault(b, a)
    return table


def _tokens(text: str) -> Iterator[tuple[str, int]]:
    for m in re.finditer(r"\S+", text):
        yield m.group(0), m.start() + 1


def parse_phrase(text: str) -> NanoPhrase:
    """Parse a phrase document.

    The document is line oriented; ``#`` starts a comment.  Recognised
    directives are ``alphabet``, ``tau``, ``nu``, ``S`` and ``phrase``.
    ``alphabet`` accepts either a symbol list or one built-in name
    (``star``, ``alpha0``, ``alpha1``, ``alpha2``, ``alphaG``); a built-in
    brings its own involutions and triples, which later lines may override.
    Omitting the ``phrase`` line yields the length-0 phrase.
    """
    symbols: list[str] | None = None
    tau: dict[str, str] = {}
    nu: dict[str, str] = {}
    triples: set | None = None
    s_mode: str | None = None
    name = None
    phrase_line = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        head, head_col = toks[0]
        rest = toks[1:]
        if head == "alphabet":
            if symbols is not None:
                raise PhraseSyntaxError("duplicate alphabet line", line_no, head_col)
            if not rest:
                raise PhraseSyntaxError("empty alphabet", line_no, head_col)
            if len(rest) == 1 and rest[0][0] in BUILTIN_ALPHABETS:
                spec = BUILTIN_ALPHABETS[rest[0][0]]
                symbols = list(spec.symbols)
                tau = {s: spec.tau(s) for s in symbols}
                nu = {s: spec.nu(s) for s in symbols}
                triples = set(spec.triples)
                name = spec.name
            else:
                symbols = [t for t, _ in rest]
                if len(set(symbols)) != len(symbols):
                    raise PhraseSyntaxError("duplicate symbol in alphabet", line_no, rest[0][1])
                for t, col in rest:
                    if any(ch in t for ch in ":,()|"):
                        raise PhraseSyntaxError(f"bad symbol {t!r}", line_no, col)
            continue
        if symbols is None:
            raise PhraseSyntaxError(f"{head!r} before alphabet declaration", line_no, head_col)
        if head in ("tau", "nu"):
            table = _parse_pairs([t for t, _ in rest], set(symbols), line_no, [c for _, c in rest])
            (tau if head == "tau" else nu).update(table)
        elif head == "S":
            if len(rest) == 1 and rest[0][0] in ("knotlike", "diagonal"):
                s_mode = rest[0][0]
                triples = None
            else:
                triples = set()
                s_mode = None
                pos = head_col
                while True:
                    while pos < len(body) and body[pos].isspace():
                        pos += 1
                    if pos >= len(body):
                        break
                    m = _TRIPLE_RE.match(body, pos)
                    if not m:
                        raise PhraseSyntaxError("expected (<s>,<s>,<s>)", line_no, pos + 1)
                    trip = m.groups()
                    for i, s in enumerate(trip):
                        if s not in symbols and not (s.startswith("+") and s[1:] in symbols):
                            raise UndeclaredSymbolError(s, line_no, m.start(i + 1) + 1)
                    triples.add(tuple(s[1:] if s not in symbols else s for s in trip))
                    pos = m.end()
        elif head == "phrase":
            if phrase_line is not None:
                raise PhraseSyntaxError("duplicate phrase line", line_no, head_col)
            phrase_line = (line_no, body, head_col + len("phrase"))
        else:
            raise PhraseSyntaxError(f"unknown directive {head!r}", line_no, head_col)

    if symbols is None:
        raise PhraseSyntaxError("missing alphabet declaration", 1, 1)
    base = AlphabetSpec.build(symbols, tau, nu, (), name)
    if s_mode == "knotlike":
        from .homotopy import make_knotlike
        triples = make_knotlike(base)
    elif s_mode == "diagonal":
        from .homotopy import make_diagonal
        triples = make_diagonal(base)
    alphabet = base.with_triples(triples or ())
    if name is not None and alphabet != BUILTIN_ALPHABETS[name]:
        alphabet = AlphabetSpec(alphabet.symbols, alphabet.tau_images, alphabet.nu_images,
                                alphabet.triples, None)

    if phrase_line is None:
        return NanoPhrase(alphabet, (), ())
    line_no, body, start = phrase_line
    comps: list[list[str]] = []
    proj: dict[str, str] = {}
    seen: Counter = Counter()
    col = start
    for part in body[start - 1:].split("|"):
        comp: list[str] = []
        for m in re.finditer(r"\S+", part):
            tok = m.group(0)
            tcol = col + m.start()
            letter, _, sym = tok.partition(":")
            if not _LETTER_RE.match(letter):
                raise PhraseSyntaxError(f"bad letter id {letter!r}", line_no, tcol)
            if seen[letter] == 0:
                if not sym:
                    raise PhraseSyntaxError(f"first occurrence of {letter} needs :<sym>", line_no, tcol)
                proj[letter] = _resolve_symbol(sym, alphabet, line_no, tcol + len(letter) + 1)
            elif sym:
                raise PhraseSyntaxError(f"projection repeated on {letter}", line_no, tcol)
            seen[letter] += 1
            comp.append(letter)
        comps.append(comp)
        col += len(part) + 1
    bad = {a: c for a, c in seen.items() if c != 2}
    if bad:
        raise GaussViolation(bad)
    return NanoPhrase.make(alphabet, comps, proj)


def format_phrase_line(P: NanoPhrase) -> str:
    seen: set[str] = set()
    parts = []
    for comp in P.components:
        toks = []
        for a in comp:
            if a in seen:
                toks.append(a)
            else:
                seen.add(a)
                toks.append(f"{a}:{P.symbol(a)}")
        parts.append(" ".join(toks))
    return " | ".join(parts)


def format_phrase(P: NanoPhrase) -> str:
    """Serialize ``P`` as a document that :func:`parse_phrase` reads back."""
    alpha = P.alphabet
    lines = []
    if alpha.name is not None and BUILTIN_ALPHABETS.get(alpha.name) == alpha:
        lines.append(f"alphabet {alpha.name}")
    else:
        lines.append("alphabet " + " ".join(alpha.symbols))
        for label, fn in (("tau", alpha.tau), ("nu", alpha.nu)):
            pairs = []
            done = set()
            for s in alpha.symbols:
                if fn(s) != s and s not in done:
                    pairs.append(f"{s}:{fn(s)}")
                    done |= {s, fn(s)}
            if pairs:
                lines.append(f"{label} " + " ".join(pairs))
        if alpha.triples:
            order = alpha.order
            trips = sorted(alpha.triples, key=lambda t: tuple(order(s) for s in t))
            lines.append("S " + " ".join(f"({a},{b},{c})" for a, b, c in trips))
    if P.components:
        lines.append(("phrase " + format_phrase_line(P)).rstrip())
    return "\n".join(lines) + "\n"


# -- exhaustive enumeration ---------------------------------------------------

def _gauss_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """All length-2n sequences where 0..n-1 each occur twice, first occurrences in order."""
    seq = [-1] * (2 * n)

    def rec(pos: int, opened: int, counts: list[int]):
        if pos == 2 * n:
            yield tuple(seq)
            return
        for a in range(opened):
            if counts[a] == 1:
                counts[a] = 2
                seq[pos] = a
                yield from rec(pos + 1, opened, counts)
                counts[a] = 1
        if opened < n:
            counts.append(1)
            seq[pos] = opened
            yield from rec(pos + 1, opened + 1, counts)
            counts.pop()

    yield from rec(0, 0, [])


def _splits(length: int, k: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing cut points (k-1 of them) in 0..length."""
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for c in range(start, length + 1):
            for rest in rec(c, left - 1):
                yield (c,) + rest
    yield from rec(0, k - 1)


def enumerate_phrases(alphabet: AlphabetSpec, n_letters: int, components: Iterable[int] = (1,),
                      symbols: Sequence[str] | None = None) -> Iterator[NanoPhrase]:
    """Every canonical phrase with exactly ``n_letters`` letters.

    Ranges over interleavings, component splits (empty components allowed)
    for each requested component count, and projections drawn from
    ``symbols`` (default: the whole alphabet).
    """
    syms = tuple(symbols or alphabet.symbols)
    ids = [f"X{i + 1}" for i in range(n_letters)]
    for k in components:
        for seq in _gauss_sequences(n_letters):
            word = [ids[i] for i in seq]
            for cuts in _splits(len(word), k):
                bounds = (0,) + cuts + (len(word),)
                comps = tuple(tuple(word[bounds[i]:bounds[i + 1]]) for i in range(k))
                for choice in product(syms, repeat=n_letters):
                    yield NanoPhrase.make(alphabet, comps, dict(zip(ids, choice)), check=False)
