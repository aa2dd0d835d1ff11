"""State sums, the bracket ``[P]`` and the Jones polynomial of pseudolinks.

The state sum runs on the integer kernel selected in :mod:`nanophrase.kernel`.
:func:`turaev_bracket` is an independent recursive evaluation over
``alpha_*`` that works directly on :class:`~nanophrase.core.NanoPhrase`
values; it shares no code with the kernel and serves as its oracle.
"""

from __future__ import annotations

import os
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import kernel
from .core import (BUILTIN_ALPHABETS, NanoPhrase, PhraseError, canonicalize,
                   project_word, relabel)
from .homotopy import functor_apply, u_l_project
from .laurent import LOOP, ONE, T, LaurentPoly, specialize
from .moves import nu_permutation, nu_shift

__all__ = [
    "State",
    "StateSummary",
    "EmptyPhraseWarning",
    "as_pseudolink",
    "encode",
    "writhe",
    "reduce_state",
    "state_table",
    "bracket_generic",
    "bracket",
    "jones",
    "turaev_bracket",
    "turaev_jones",
    "lift_to_star",
    "project_fact_p",
    "project_fact_s",
    "project_fact_q",
    "jones_general",
]

ALPHA1 = BUILTIN_ALPHABETS["alpha1"]
ALPHA_STAR = BUILTIN_ALPHABETS["star"]
_PARALLEL_MIN_LETTERS = 16


class EmptyPhraseWarning(UserWarning):
    """The length-0 phrase has no bracket; ``J := 1`` by convention."""


@dataclass(frozen=True)
class State:
    mark: Mapping[str, int]


@dataclass(frozen=True)
class StateSummary:
    loops: int
    sigma: int


def as_pseudolink(P: NanoPhrase) -> NanoPhrase:
    """Return ``P`` if it is over ``alpha_1``; relabel ``alpha_0`` phrases via ``a -> 1, b -> -1``."""
    syms = set(P.alphabet.symbols)
    if syms == {"1", "-1"}:
        return P
    if syms == {"a", "b"} and P.alphabet.tau("a") == "b":
        return relabel(P, ALPHA1, {"a": "1", "b": "-1"})
    raise PhraseError("expected a phrase over alpha_1 (or alpha_0)")


def encode(P: NanoPhrase) -> tuple[list[list[int]], list[int], list[str]]:
    """Integer form for the kernel: letters numbered by first occurrence."""
    P = as_pseudolink(P)
    ids: dict[str, int] = {}
    for a in P.concatenation():
        ids.setdefault(a, len(ids))
    comps = [[ids[a] for a in c] for c in P.components]
    order = sorted(ids, key=ids.get)
    proj = [1 if P.symbol(a) == "1" else -1 for a in order]
    return comps, proj, order


def writhe(P: NanoPhrase) -> int:
    P = as_pseudolink(P)
    return sum(1 if s == "1" else -1 for _, s in P.proj)


def _require_components(P: NanoPhrase) -> None:
    if P.is_empty_phrase:
        raise PhraseError("the length-0 phrase has no state sum")


def reduce_state(P: NanoPhrase, s: State | Mapping[str, int],
                 order: Sequence[str] | None = None, seed: int | None = None) -> StateSummary:
    """Fully reduce ``P`` under the state ``s``.

    ``order`` fixes the letter deletion sequence; ``seed`` draws a random one.
    Without either the leftmost letter is always deleted next.
    """
    _require_components(P)
    mark_map = s.mark if isinstance(s, State) else s
    comps, proj, names = encode(P)
    if set(mark_map) != set(names):
        raise PhraseError("state must assign a marker to every letter")
    mark = [int(mark_map[a]) for a in names]
    if seed is not None and order is None:
        order = list(names)
        random.Random(seed).shuffle(order)
    idx = None if order is None else [names.index(a) for a in order]
    loops = kernel.reduce_loops(comps, proj, mark, idx)
    return StateSummary(loops, sum(mark))


def _threads() -> int:
    raw = os.environ.get("NANOWORD_THREADS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def state_table(P: NanoPhrase) -> list[list[int]]:
    """``table[k][l]``: number of states with ``k`` plus-markers and ``l`` loops."""
    _require_components(P)
    comps, proj, _ = encode(P)
    n = len(proj)
    workers = _threads()
    if kernel.BACKEND != "cython" or n < _PARALLEL_MIN_LETTERS or workers == 1:
        return kernel.state_counts(comps, proj, n)
    total = 1 << n
    step = -(-total // workers)
    bounds = [(i, min(i + step, total)) for i in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda b: kernel.state_counts(comps, proj, n, b[0], b[1]), bounds))
    return [[sum(p[k][l] for p in parts) for l in range(len(parts[0][0]))] for k in range(n + 1)]


def bracket_generic(P: NanoPhrase) -> LaurentPoly:
    """``[P] = sum_s t^#(+) u^#(-) d^(|s|-1)`` in Z[t, u, d]."""
    table = state_table(P)
    n = len(table) - 1
    return LaurentPoly({(k, n - k, l - 1): c
                        for k, row in enumerate(table) for l, c in enumerate(row) if c})


def bracket(P: NanoPhrase) -> LaurentPoly:
    """The specialized bracket ``sum_s t^sigma(s) (-t^2 - t^-2)^(|s|-1)``."""
    return specialize(bracket_generic(P))


def jones(P: NanoPhrase) -> LaurentPoly:
    """``J(P) = (-t)^(-3 w(P)) [P]`` at ``u = t^-1``, ``d = -t^2 - t^-2``."""
    P = as_pseudolink(P)
    if P.is_empty_phrase:
        warnings.warn("J of the length-0 phrase is set to 1", EmptyPhraseWarning, stacklevel=2)
        return ONE
    return (-T) ** (-3 * writhe(P)) * bracket(P)


# -- recursive bracket over alpha_* -----------------------------------------

def _epsilon(symbol: str) -> int:
    return 1 if symbol in ("a+", "b+") else -1


def _rotate_to(P: NanoPhrase, ci: int, letter: str) -> NanoPhrase:
    while P.components[ci][0] != letter:
        P = nu_shift(P, ci)
    return P


def _drop_letter(P: NanoPhrase, comps) -> NanoPhrase:
    return P.replace(components=tuple(tuple(c) for c in comps))


def _turaev(P: NanoPhrase, memo: dict) -> LaurentPoly:
    key = canonicalize(P)
    if key in memo:
        return memo[key]
    comps = P.components
    if comps == ((),):
        result = ONE
    elif any(len(c) == 0 for c in comps):
        i = next(i for i, c in enumerate(comps) if not c)
        rest = comps[:i] + comps[i + 1:]
        result = LOOP * _turaev(P.replace(components=rest), memo)
    else:
        ci = 0
        A = comps[0][0]
        eps = _epsilon(P.symbol(A))
        others = [j for j, c in enumerate(comps) if A in c and j != ci]
        if not others:
            w1 = comps[ci]
            j = w1.index(A, 1)
            w, z = w1[1:j], w1[j + 1:]
            split = comps[:ci] + (w, z) + comps[ci + 1:]
            smooth = comps[:ci] + (tuple(reversed(w)) + z,) + comps[ci + 1:]
        else:
            cj = others[0]
            while cj > ci + 1:
                P = nu_permutation(P, cj - 1)
                cj -= 1
            P = _rotate_to(P, cj, A)
            comps = P.components
            w, z = comps[ci][1:], comps[cj][1:]
            split = comps[:ci] + (w + z,) + comps[cj + 1:]
            smooth = comps[:ci] + (tuple(reversed(w)) + z,) + comps[cj + 1:]
        first = _drop_letter(P, split)
        second = project_word(_drop_letter(P, smooth), list(w))
        result = (LaurentPoly.monomial(t=eps) * _turaev(first, memo)
                  + LaurentPoly.monomial(t=-eps) * _turaev(second, memo))
    memo[key] = result
    return result


def turaev_bracket(p: NanoPhrase) -> LaurentPoly:
    """Recursive (skein-style) bracket of a phrase over ``alpha_*``."""
    if set(p.alphabet.symbols) != set(ALPHA_STAR.symbols):
        raise PhraseError("turaev_bracket expects a phrase over alpha_*")
    _require_components(p)
    return _turaev(p, {})


def turaev_jones(p: NanoPhrase) -> LaurentPoly:
    w = sum(_epsilon(s) for _, s in p.proj)
    return (-T) ** (-3 * w) * turaev_bracket(p)


# -- projections between alpha_* and its quotients ----------------------------

_FACT_P = {"a+": "1", "b+": "1", "a-": "-1", "b-": "-1"}
_FACT_S = {"a+": "a", "a-": "a", "b+": "b", "b-": "b"}
_FACT_Q = {"a+": "c", "b-": "c", "a-": "d", "b+": "d"}


def project_fact_p(p: NanoPhrase) -> NanoPhrase:
    return relabel(p, ALPHA1, _FACT_P)


def project_fact_s(p: NanoPhrase) -> NanoPhrase:
    return relabel(p, BUILTIN_ALPHABETS["alpha0"], _FACT_S)


def project_fact_q(p: NanoPhrase) -> NanoPhrase:
    return relabel(p, BUILTIN_ALPHABETS["alpha2"], _FACT_Q)


def lift_to_star(P: NanoPhrase, seed: int | None = None) -> NanoPhrase:
    """A preimage of ``P`` under the ``alpha_* -> alpha_1`` projection.

    The default sends ``1 -> a+`` and ``-1 -> a-``; with a seed each letter
    independently picks the ``a`` or ``b`` preimage.
    """
    P = as_pseudolink(P)
    rng = random.Random(seed) if seed is not None else None
    proj = {}
    for a, s in P.proj:
        side = "a" if rng is None else rng.choice("ab")
        proj[a] = side + ("+" if s == "1" else "-")
    return NanoPhrase.make(ALPHA_STAR, P.components, proj, check=False)


def jones_general(P: NanoPhrase, route: str, L: Sequence[str] | None = None,
                  representatives: Sequence[str] | None = None) -> LaurentPoly:
    """J through one of the projections to pseudolinks.

    ``route`` is ``"UL"`` (needs ``L``), ``"F1"`` or ``"Fstar"``.
    """
    if route == "UL":
        if L is None:
            raise PhraseError("route UL needs L")
        return jones(u_l_project(P, L))
    if route == "F1":
        return jones(functor_apply(P, "1", representatives))
    if route == "Fstar":
        return jones(project_fact_p(functor_apply(P, "star", representatives)))
    raise PhraseError(f"unknown route {route!r}")
