"""Shared test utilities: random phrases, random alphabets and a reference reducer.

The reference reducer follows the deletion rule literally on NanoPhrase
values: rotate the host component(s) with shifts until the letter heads
them, match ``AxAy`` or ``Ax|Ay``, rewrite, repeat.  It shares no code with
the integer kernels.
"""

from __future__ import annotations

import random
from itertools import product

from nanophrase import (AlphabetSpec, LaurentPoly, NanoPhrase, builtin_alphabet,
                        make_knotlike, project_word)
from nanophrase.moves import nu_shift

ALPHA1 = builtin_alphabet("alpha1")
ALPHA0 = builtin_alphabet("alpha0")
STAR = builtin_alphabet("star")


def random_phrase(rng: random.Random, alphabet: AlphabetSpec, n_letters: int, k: int,
                  symbols=None) -> NanoPhrase:
    ids = [f"L{i}" for i in range(n_letters)]
    word = ids + ids
    rng.shuffle(word)
    cuts = sorted(rng.randint(0, len(word)) for _ in range(k - 1))
    bounds = [0] + cuts + [len(word)]
    comps = [word[bounds[i]:bounds[i + 1]] for i in range(k)]
    syms = list(symbols or alphabet.symbols)
    return NanoPhrase.make(alphabet, comps, {a: rng.choice(syms) for a in ids})


def random_involution(rng: random.Random, symbols, fixed_bias=0.3) -> dict[str, str]:
    pool = list(symbols)
    rng.shuffle(pool)
    out = {}
    while pool:
        a = pool.pop()
        if pool and rng.random() > fixed_bias:
            b = pool.pop()
            out[a], out[b] = b, a
        else:
            out[a] = a
    return out


def random_commuting_alphabet(rng: random.Random, max_symbols: int = 6) -> AlphabetSpec:
    """Commuting tau, nu built from orbit blocks of the five possible shapes."""
    symbols, tau, nu = [], {}, {}
    count = 0
    while count < 1 or (count < max_symbols and rng.random() < 0.6):
        shape = rng.choice(["star", "0", "1", "2", "G"])
        size = {"star": 4, "0": 2, "1": 2, "2": 2, "G": 1}[shape]
        if count + size > max_symbols:
            shape, size = "G", 1
        names = [f"s{count + i}" for i in range(size)]
        count += size
        symbols += names
        if shape == "star":
            a, b, c, d = names  # tau: a<->b, c<->d ; nu: a<->c, b<->d
            tau.update({a: b, b: a, c: d, d: c})
            nu.update({a: c, c: a, b: d, d: b})
        elif shape == "0":
            a, b = names
            tau.update({a: b, b: a})
            nu.update({a: b, b: a})
        elif shape == "1":
            a, b = names
            tau.update({a: b, b: a})
        elif shape == "2":
            a, b = names
            nu.update({a: b, b: a})
    order = list(symbols)
    rng.shuffle(order)
    spec = AlphabetSpec.build(order, tau, nu)
    return spec.with_triples(make_knotlike(spec))


def random_tau_alphabet(rng: random.Random, max_symbols: int = 6) -> AlphabetSpec:
    """An alphabet with a random tau and trivial nu."""
    n = rng.randint(1, max_symbols)
    symbols = [f"s{i}" for i in range(n)]
    return AlphabetSpec.build(symbols, random_involution(rng, symbols))


def criterion(number: int):
    """Tag an acceptance test so conftest can report it by number."""
    def mark(fn):
        fn.criterion = number
        return fn
    return mark


# -- reference reducer ------------------------------------------------------

def _to_head(P: NanoPhrase, ci: int, letter: str) -> NanoPhrase:
    while P.components[ci][0] != letter:
        P = nu_shift(P, ci)
    return P


def reference_delete(P: NanoPhrase, letter: str, mark: int) -> NanoPhrase:
    hosts = [i for i, c in enumerate(P.components) if letter in c]
    sign = 1 if P.symbol(letter) == "1" else -1
    ci = hosts[0]
    P = _to_head(P, ci, letter)
    comps = list(P.components)
    if len(hosts) == 1:
        w = comps[ci]
        j = w.index(letter, 1)
        x, y = w[1:j], w[j + 1:]
        if mark == sign:
            comps[ci:ci + 1] = [x, y]
            return P.replace(components=tuple(comps))
        comps[ci] = tuple(reversed(x)) + y
        return project_word(P.replace(components=tuple(comps)), list(x))
    cj = hosts[1]
    P = _to_head(P, cj, letter)
    comps = list(P.components)
    x, y = comps[ci][1:], comps[cj][1:]
    if mark == sign:
        comps[ci] = x + y
        del comps[cj]
        return P.replace(components=tuple(comps))
    comps[ci] = tuple(reversed(x)) + y
    del comps[cj]
    return project_word(P.replace(components=tuple(comps)), list(x))


def reference_loops(P: NanoPhrase, mark: dict[str, int], order) -> int:
    for a in order:
        P = reference_delete(P, a, mark[a])
    return P.k


def reference_bracket_generic(P: NanoPhrase, rng: random.Random | None = None) -> LaurentPoly:
    """Sum over all states; each state uses a fresh random deletion order if ``rng``."""
    letters = [a for a, _ in P.proj]
    terms: dict = {}
    for marks in product((1, -1), repeat=len(letters)):
        mark = dict(zip(letters, marks))
        order = list(letters)
        if rng is not None:
            rng.shuffle(order)
        loops = reference_loops(P, mark, order)
        kp = marks.count(1)
        key = (kp, len(letters) - kp, loops - 1)
        terms[key] = terms.get(key, 0) + 1
    return LaurentPoly(terms)
