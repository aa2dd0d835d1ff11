"""Homotopy and structural moves on nanophrases, move search and random walks.

Loci are positions in the concatenation of all components (component
boundaries are transparent), except for insertions, which name gaps as
``(component, index)`` pairs, and structural moves, which name a component.
All indices are 0-based.

Every kind has an inverse kind:

=========== ===========
kind        inverse
=========== ===========
H1          H1inv
H2          H2inv
H3          H3inv
Lemma1-i    Lemma1-i-inv  (likewise ii, iii)
ABAB        ABABinv
Shift       Unshift
Permute     Permute
Invert      Invert
=========== ===========
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import NanoPhrase, PhraseError, canonicalize

__all__ = [
    "MoveError",
    "MoveInstance",
    "EquivResult",
    "KINDS",
    "HOMOTOPY_KINDS",
    "STRUCTURAL_KINDS",
    "inverse_kind",
    "close_kinds",
    "enumerate_moves",
    "apply_move",
    "inverse",
    "nu_shift",
    "nu_unshift",
    "nu_permutation",
    "nu_inversion",
    "apply_lemma1",
    "apply_abab",
    "equiv_search",
    "random_walk",
    "replay",
    "format_certificate",
    "parse_certificate",
]


class MoveError(PhraseError):
    """The move does not apply to the phrase."""


_INVERSE = {
    "H1": "H1inv", "H2": "H2inv", "H3": "H3inv",
    "Lemma1-i": "Lemma1-i-inv", "Lemma1-ii": "Lemma1-ii-inv", "Lemma1-iii": "Lemma1-iii-inv",
    "ABAB": "ABABinv", "Shift": "Unshift", "Permute": "Permute", "Invert": "Invert",
}
_INVERSE.update({v: k for k, v in list(_INVERSE.items())})

KINDS = tuple(_INVERSE)
HOMOTOPY_KINDS = frozenset({"H1", "H1inv", "H2", "H2inv", "H3", "H3inv"})
STRUCTURAL_KINDS = frozenset({"Shift", "Unshift", "Permute", "Invert"})
_GROWTH = {"H1inv": 1, "H2inv": 2, "ABABinv": 2}


def inverse_kind(kind: str) -> str:
    return _INVERSE[kind]


def close_kinds(kinds: Iterable[str]) -> frozenset[str]:
    """Add the inverses of the non-growing, non-deleting kinds.

    H3 brings H3inv, Shift brings Unshift, each Lemma1 variant its inverse.
    Deleting moves and insertions stay exactly as requested.
    """
    out = set(kinds)
    for k in list(out):
        if k not in _INVERSE:
            raise ValueError(f"unknown move kind {k!r}")
        if k.startswith(("H3", "Lemma1", "Shift", "Unshift")):
            out.add(_INVERSE[k])
    return frozenset(out)


@dataclass(frozen=True, order=True)
class MoveInstance:
    kind: str
    locus: tuple[int, ...]
    payload: tuple[str, ...] = ()

    def __str__(self) -> str:
        s = f"{self.kind} @ {','.join(map(str, self.locus))}"
        if self.payload:
            s += f" [{','.join(self.payload)}]"
        return s


@dataclass
class EquivResult:
    verdict: str
    certificate: list[MoveInstance] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def equivalent(self) -> bool:
        return self.verdict == "Equivalent"


# -- layout helpers -----------------------------------------------------------

class _Layout:
    __slots__ = ("word", "comp", "occ", "offsets")

    def __init__(self, P: NanoPhrase):
        self.word = P.concatenation()
        self.comp = [ci for ci, c in enumerate(P.components) for _ in c]
        self.offsets = []
        off = 0
        for c in P.components:
            self.offsets.append(off)
            off += len(c)
        self.occ: dict[str, list[int]] = {}
        for i, a in enumerate(self.word):
            self.occ.setdefault(a, []).append(i)

    def adjacent(self, p: int) -> bool:
        return 0 <= p and p + 1 < len(self.word) and self.comp[p] == self.comp[p + 1]

    def other(self, p: int) -> int:
        i, j = self.occ[self.word[p]]
        return j if p == i else i


def _rebuild(P: NanoPhrase, word: Sequence[str], proj=None) -> NanoPhrase:
    comps, i = [], 0
    for c in P.components:
        comps.append(tuple(word[i:i + len(c)]))
        i += len(c)
    return P.replace(components=tuple(comps), proj=proj)


def _delete_positions(P: NanoPhrase, positions: Iterable[int]) -> NanoPhrase:
    drop = set(positions)
    comps, i = [], 0
    for c in P.components:
        comps.append(tuple(a for j, a in enumerate(c, start=i) if j not in drop))
        i += len(c)
    return P.replace(components=tuple(comps))


def _fresh(P: NanoPhrase, count: int) -> list[str]:
    used = {a for a, _ in P.proj}
    out, n = [], 1
    while len(out) < count:
        name = f"N{n}"
        if name not in used:
            out.append(name)
        n += 1
    return out


def _insert(P: NanoPhrase, inserts: list[tuple[int, int, tuple[str, ...]]], new_proj: dict) -> NanoPhrase:
    """Insert letter runs at gaps; gaps are in original coordinates, applied in order."""
    comps = [list(c) for c in P.components]
    # apply from the last gap backwards so earlier indices stay valid
    for c, i, run in sorted(inserts, key=lambda g: (g[0], g[1]), reverse=True):
        comps[c][i:i] = list(run)
    proj = P.projections
    proj.update(new_proj)
    return NanoPhrase.make(P.alphabet, comps, proj, check=False)


def _gaps(P: NanoPhrase) -> list[tuple[int, int]]:
    return [(c, i) for c, comp in enumerate(P.components) for i in range(len(comp) + 1)]


# -- triple-swap patterns (H3, the Lemma1 variants and inverses) --------------

_A, _B, _C = 0, 1, 2
_SWAP_PATTERNS = {
    "H3": ((_A, _B), (_A, _C), (_B, _C)),
    "Lemma1-i": ((_A, _B), (_C, _A), (_B, _C)),
    "Lemma1-ii": ((_A, _B), (_C, _A), (_C, _B)),
    "Lemma1-iii": ((_A, _B), (_A, _C), (_C, _B)),
}
for _k, _pat in list(_SWAP_PATTERNS.items()):
    _SWAP_PATTERNS[_INVERSE[_k]] = tuple((y, x) for x, y in _pat)


def _side_triple(kind: str, P: NanoPhrase, A: str, B: str, C: str) -> tuple[str, str, str]:
    tau = P.alphabet.tau
    a, b, c = P.symbol(A), P.symbol(B), P.symbol(C)
    base = kind.removesuffix("-inv") if kind.startswith("Lemma1") else kind
    if base in ("H3", "H3inv"):
        return a, b, c
    if base == "Lemma1-i":
        return a, tau(b), c
    if base == "Lemma1-ii":
        return tau(a), tau(b), c
    return tau(a), b, c


def _match_swap(lay: _Layout, p: int, pattern) -> tuple[tuple[int, int, int], tuple[str, str, str]] | None:
    if not lay.adjacent(p):
        return None
    roles: dict[int, str] = {}
    used: set[int] = set()
    positions = []
    for slot, (r1, r2) in enumerate(pattern):
        if slot == 0:
            q = p
        elif r1 in roles:
            cand = [x for x in lay.occ[roles[r1]] if x not in used]
            if not cand:
                return None
            q = cand[0]
        elif r2 in roles:
            cand = [x for x in lay.occ[roles[r2]] if x not in used]
            if not cand:
                return None
            q = cand[0] - 1
        else:
            return None
        if not lay.adjacent(q) or q in used or q + 1 in used:
            return None
        for role, pos in ((r1, q), (r2, q + 1)):
            letter = lay.word[pos]
            if role in roles:
                if roles[role] != letter:
                    return None
            else:
                if letter in roles.values():
                    return None
                roles[role] = letter
        used |= {q, q + 1}
        positions.append(q)
    p0, q0, r0 = positions
    if not (q0 >= p0 + 2 and r0 >= q0 + 2):
        return None
    return (p0, q0, r0), (roles[_A], roles[_B], roles[_C])


def _swap_instances(P: NanoPhrase, lay: _Layout, kind: str) -> Iterator[MoveInstance]:
    pattern = _SWAP_PATTERNS[kind]
    S = P.alphabet.triples
    for p in range(len(lay.word) - 1):
        hit = _match_swap(lay, p, pattern)
        if hit and _side_triple(kind, P, *hit[1]) in S:
            yield MoveInstance(kind, hit[0])


def _check_swap(P: NanoPhrase, m: MoveInstance) -> None:
    lay = _Layout(P)
    hit = _match_swap(lay, m.locus[0], _SWAP_PATTERNS[m.kind]) if len(m.locus) == 3 else None
    if hit is None or hit[0] != tuple(m.locus):
        raise MoveError(f"{m}: pattern does not match")
    trip = _side_triple(m.kind, P, *hit[1])
    if trip not in P.alphabet.triples:
        raise MoveError(f"{m}: side condition fails, {trip} not in S")


def _abab_hypothesis(P: NanoPhrase) -> bool:
    S = P.alphabet.triples
    return all(any(t[1] == b and t[2] == b for t in S) for b in P.alphabet.symbols)


# -- enumeration --------------------------------------------------------------

_DEFAULT_KINDS = ("H1", "H2", "H3", "H3inv", "Shift", "Unshift", "Permute", "Invert")
_ENUM_ORDER = tuple(KINDS)


def enumerate_moves(P: NanoPhrase, include_inverses: bool = True, growth_budget: int = 2,
                    kinds: Iterable[str] | None = None) -> list[MoveInstance]:
    """Every applicable move instance of the requested kinds.

    Without ``kinds`` the H1-H3 moves (with H3inv), the structural moves and,
    if ``include_inverses``, the insertions H1inv/H2inv are listed.
    Insertions needing more fresh letters than ``growth_budget`` are skipped.
    """
    if kinds is None:
        wanted = set(_DEFAULT_KINDS)
        if include_inverses:
            wanted |= {"H1inv", "H2inv"}
    else:
        wanted = set(kinds)
        if not include_inverses:
            wanted -= set(_GROWTH)
    wanted = {k for k in wanted if _GROWTH.get(k, 0) <= growth_budget}
    lay = _Layout(P)
    word = lay.word
    alpha = P.alphabet
    out: list[MoveInstance] = []
    for kind in _ENUM_ORDER:
        if kind not in wanted:
            continue
        if kind == "H1":
            out += [MoveInstance("H1", (p,)) for p in range(len(word) - 1)
                    if word[p] == word[p + 1] and lay.adjacent(p)]
        elif kind in ("H2", "ABAB"):
            if kind == "ABAB" and not _abab_hypothesis(P):
                continue
            for p in range(len(word) - 1):
                A, B = word[p], word[p + 1]
                if A == B or not lay.adjacent(p):
                    continue
                if alpha.tau(P.symbol(A)) != P.symbol(B):
                    continue
                tail = (B, A) if kind == "H2" else (A, B)
                q = lay.other(p + 1) if kind == "H2" else lay.other(p)
                if q >= p + 2 and lay.adjacent(q) and (word[q], word[q + 1]) == tail:
                    out.append(MoveInstance(kind, (p, q)))
        elif kind in _SWAP_PATTERNS:
            out += list(_swap_instances(P, lay, kind))
        elif kind == "H1inv":
            out += [MoveInstance("H1inv", g, (s,)) for g in _gaps(P) for s in alpha.symbols]
        elif kind in ("H2inv", "ABABinv"):
            if kind == "ABABinv" and not _abab_hypothesis(P):
                continue
            gaps = _gaps(P)
            for i, g1 in enumerate(gaps):
                for g2 in gaps[i:]:
                    for s in alpha.symbols:
                        out.append(MoveInstance(kind, g1 + g2, (s, alpha.tau(s))))
        elif kind in ("Shift", "Unshift", "Invert"):
            out += [MoveInstance(kind, (i,)) for i, c in enumerate(P.components)
                    if c or kind == "Invert"]
        elif kind == "Permute":
            out += [MoveInstance("Permute", (i,)) for i in range(P.k - 1)]
    return out


# -- structural moves -----------------------------------------------------------

def _check_component(P: NanoPhrase, i: int, upper: int) -> None:
    if not 0 <= i < upper:
        raise MoveError(f"component index {i} out of range")


def nu_shift(P: NanoPhrase, i: int) -> NanoPhrase:
    """Move the first letter of component ``i`` to its end (``nu`` if it occurs there twice)."""
    _check_component(P, i, P.k)
    w = P.components[i]
    if not w:
        raise MoveError(f"component {i} is empty")
    A = w[0]
    proj = P.projections
    if w.count(A) == 2:
        proj[A] = P.alphabet.nu(proj[A])
    comps = P.components[:i] + (w[1:] + (A,),) + P.components[i + 1:]
    return P.replace(components=comps, proj=proj)


def nu_unshift(P: NanoPhrase, i: int) -> NanoPhrase:
    """Inverse of :func:`nu_shift`."""
    _check_component(P, i, P.k)
    w = P.components[i]
    if not w:
        raise MoveError(f"component {i} is empty")
    A = w[-1]
    proj = P.projections
    if w.count(A) == 2:
        proj[A] = P.alphabet.nu(proj[A])
    comps = P.components[:i] + ((A,) + w[:-1],) + P.components[i + 1:]
    return P.replace(components=comps, proj=proj)


def nu_permutation(P: NanoPhrase, i: int) -> NanoPhrase:
    """Swap components ``i`` and ``i+1``; letters shared by both get ``nu``."""
    _check_component(P, i, P.k - 1)
    u, v = P.components[i], P.components[i + 1]
    shared = set(u) & set(v)
    proj = P.projections
    for a in shared:
        proj[a] = P.alphabet.nu(proj[a])
    comps = P.components[:i] + (v, u) + P.components[i + 2:]
    return P.replace(components=comps, proj=proj)


def nu_inversion(P: NanoPhrase, i: int) -> NanoPhrase:
    """Reverse component ``i`` and twist projections by it (``tau`` once, ``nu`` twice)."""
    _check_component(P, i, P.k)
    w = P.components[i]
    alpha = P.alphabet
    proj = P.projections
    for a, c in Counter(w).items():
        proj[a] = alpha.tau(proj[a]) if c == 1 else alpha.nu(proj[a])
    comps = P.components[:i] + (tuple(reversed(w)),) + P.components[i + 1:]
    return P.replace(components=comps, proj=proj)


# -- application -------------------------------------------------------------------

def apply_move(P: NanoPhrase, m: MoveInstance) -> NanoPhrase:
    """Rewrite ``P`` by ``m``; raises :class:`MoveError` if it does not apply."""
    kind, loc = m.kind, m.locus
    lay = _Layout(P)
    word = lay.word
    alpha = P.alphabet
    if kind == "H1":
        (p,) = loc
        if not (lay.adjacent(p) and word[p] == word[p + 1]):
            raise MoveError(f"{m}: no AA at position {p}")
        return _delete_positions(P, (p, p + 1))
    if kind in ("H2", "ABAB"):
        p, q = loc
        ok = lay.adjacent(p) and lay.adjacent(q) and q >= p + 2
        if ok:
            A, B = word[p], word[p + 1]
            tail = (B, A) if kind == "H2" else (A, B)
            ok = A != B and (word[q], word[q + 1]) == tail
        if not ok:
            raise MoveError(f"{m}: pattern does not match")
        if alpha.tau(P.symbol(A)) != P.symbol(B):
            raise MoveError(f"{m}: side condition fails, tau(|A|) != |B|")
        if kind == "ABAB" and not _abab_hypothesis(P):
            raise MoveError(f"{m}: S misses alpha x {{b}} x {{b}} for some b")
        return _delete_positions(P, (p, p + 1, q, q + 1))
    if kind in _SWAP_PATTERNS:
        _check_swap(P, m)
        w = list(word)
        for q in loc:
            w[q], w[q + 1] = w[q + 1], w[q]
        return _rebuild(P, w)
    if kind in ("H1inv", "H2inv", "ABABinv"):
        return _apply_insertion(P, m)
    if kind in ("Shift", "Unshift", "Permute", "Invert"):
        fn = {"Shift": nu_shift, "Unshift": nu_unshift,
              "Permute": nu_permutation, "Invert": nu_inversion}[kind]
        return fn(P, loc[0])
    raise MoveError(f"unknown move kind {kind!r}")


def _valid_gap(P: NanoPhrase, c: int, i: int) -> bool:
    return 0 <= c < P.k and 0 <= i <= len(P.components[c])


def _apply_insertion(P: NanoPhrase, m: MoveInstance) -> NanoPhrase:
    alpha = P.alphabet
    for s in m.payload:
        if s not in alpha:
            raise MoveError(f"{m}: undeclared symbol {s!r}")
    if m.kind == "H1inv":
        c, i = m.locus
        if not _valid_gap(P, c, i) or len(m.payload) != 1:
            raise MoveError(f"{m}: bad gap")
        (N,) = _fresh(P, 1)
        return _insert(P, [(c, i, (N, N))], {N: m.payload[0]})
    c1, i1, c2, i2 = m.locus
    if not (_valid_gap(P, c1, i1) and _valid_gap(P, c2, i2)) or (c1, i1) > (c2, i2):
        raise MoveError(f"{m}: bad gaps")
    a, b = m.payload
    if alpha.tau(a) != b:
        raise MoveError(f"{m}: side condition fails, tau(|A|) != |B|")
    if m.kind == "ABABinv" and not _abab_hypothesis(P):
        raise MoveError(f"{m}: S misses alpha x {{b}} x {{b}} for some b")
    A, B = _fresh(P, 2)
    second = (B, A) if m.kind == "H2inv" else (A, B)
    if (c1, i1) == (c2, i2):
        runs = [(c1, i1, (A, B) + second)]
    else:
        runs = [(c1, i1, (A, B)), (c2, i2, second)]
    return _insert(P, runs, {A: a, B: b})


def inverse(P: NanoPhrase, m: MoveInstance) -> MoveInstance:
    """The move that undoes ``m``, located on ``apply_move(P, m)``."""
    kind = m.kind
    inv = _INVERSE[kind]
    if kind in _SWAP_PATTERNS or kind in ("Permute", "Invert", "Shift", "Unshift"):
        return MoveInstance(inv, m.locus)
    if kind == "H1":
        (p,) = m.locus
        return MoveInstance(inv, P.locate(p), (P.symbol(P.concatenation()[p]),))
    if kind in ("H2", "ABAB"):
        p, q = m.locus
        word = P.concatenation()
        c1, i1 = P.locate(p)
        c2, i2 = P.locate(q)
        if c2 == c1:
            i2 -= 2
        return MoveInstance(inv, (c1, i1, c2, i2), (P.symbol(word[p]), P.symbol(word[p + 1])))
    R = apply_move(P, m)
    word = R.concatenation()
    if kind == "H1inv":
        (N,) = _fresh(P, 1)
        return MoveInstance(inv, (word.index(N),))
    A, B = _fresh(P, 2)
    p = word.index(A)
    q = len(word) - 1 - word[::-1].index(B if kind == "H2inv" else A)
    return MoveInstance(inv, (p, q))


def apply_lemma1(P: NanoPhrase, variant: str, locus: Sequence[int]) -> NanoPhrase:
    """Apply the derived swap move ``Lemma1-<variant>`` (``"i"``, ``"ii"`` or ``"iii"``)."""
    if variant not in ("i", "ii", "iii"):
        raise ValueError(f"unknown variant {variant!r}")
    return apply_move(P, MoveInstance(f"Lemma1-{variant}", tuple(locus)))


def apply_abab(P: NanoPhrase, locus: Sequence[int]) -> NanoPhrase:
    """Delete ``A`` and ``B`` from ``xAByABz`` (requires ``|B| = tau(|A|)``)."""
    return apply_move(P, MoveInstance("ABAB", tuple(locus)))


# -- certificates -----------------------------------------------------------------

def format_certificate(cert: Sequence[MoveInstance]) -> str:
    return "".join(f"{m}\n" for m in cert)


def parse_certificate(text: str) -> list[MoveInstance]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        kind, _, rest = line.partition(" @ ")
        payload: tuple[str, ...] = ()
        if "[" in rest:
            rest, _, pl = rest.partition(" [")
            payload = tuple(pl.rstrip("]").split(","))
        locus = tuple(int(x) for x in rest.split(",")) if rest else ()
        if kind not in _INVERSE:
            raise ValueError(f"unknown move kind {kind!r}")
        out.append(MoveInstance(kind, locus, payload))
    return out


def replay(P: NanoPhrase, cert: Sequence[MoveInstance]) -> NanoPhrase:
    """Apply a certificate step by step in canonical coordinates."""
    Q = canonicalize(P)
    for m in cert:
        Q = canonicalize(apply_move(Q, m))
    return Q


# -- search ------------------------------------------------------------------------

def _expand(Q: NanoPhrase, kinds: frozenset[str], max_letters: int):
    budget = max_letters - Q.n_letters
    for m in enumerate_moves(Q, include_inverses=True, growth_budget=budget, kinds=kinds):
        yield m, canonicalize(apply_move(Q, m))


def equiv_search(P1: NanoPhrase, P2: NanoPhrase, max_letters: int, max_depth: int,
                 allowed: Iterable[str]) -> EquivResult:
    """Bounded bidirectional breadth-first search for a move sequence ``P1 -> P2``.

    Explores canonical forms with at most ``max_letters`` letters and paths
    of at most ``max_depth`` moves.  Sound but incomplete: ``Unknown`` only
    means no certificate was found within the bounds.
    """
    if P1.alphabet != P2.alphabet:
        raise ValueError("phrases are over different alphabets")
    fwd_kinds = close_kinds(allowed)
    bwd_kinds = frozenset(_INVERSE[k] for k in fwd_kinds)
    start, goal = canonicalize(P1), canonicalize(P2)
    stats = {"nodes_expanded": 0, "letter_bound_hit": False, "depth_bound_hit": False}
    if start == goal:
        return EquivResult("Equivalent", [], stats)
    if max(start.n_letters, goal.n_letters) > max_letters:
        stats["letter_bound_hit"] = True
        return EquivResult("Unknown", [], stats)

    # parent_f[R] = (Q, m): forward edge Q -m-> R; parent_b[Q] = (R, m): forward edge Q -m-> R
    parent_f: dict[NanoPhrase, tuple | None] = {start: None}
    parent_b: dict[NanoPhrase, tuple | None] = {goal: None}
    front_f, front_b = [start], [goal]
    depth_f = depth_b = 0

    def path_to(node):
        cert = []
        while parent_f[node] is not None:
            prev, m = parent_f[node]
            cert.append(m)
            node = prev
        cert.reverse()
        return cert

    def path_from(node):
        cert = []
        while parent_b[node] is not None:
            nxt, m = parent_b[node]
            cert.append(m)
            node = nxt
        return cert

    while front_f and front_b:
        if depth_f + depth_b >= max_depth:
            stats["depth_bound_hit"] = True
            break
        forward = len(front_f) <= len(front_b)
        frontier = front_f if forward else front_b
        new_front: list[NanoPhrase] = []
        meets: list[NanoPhrase] = []
        for Q in sorted(frontier, key=NanoPhrase.key):
            stats["nodes_expanded"] += 1
            kinds = fwd_kinds if forward else bwd_kinds
            for m, R in _expand(Q, kinds, max_letters):
                seen = parent_f if forward else parent_b
                if R in seen:
                    continue
                if forward:
                    seen[R] = (Q, m)
                else:
                    seen[R] = (Q, inverse(Q, m))
                new_front.append(R)
                if R in (parent_b if forward else parent_f):
                    meets.append(R)
        if forward:
            front_f, depth_f = new_front, depth_f + 1
        else:
            front_b, depth_b = new_front, depth_b + 1
        if meets:
            certs = [path_to(R) + path_from(R) for R in meets]
            best = min(certs, key=lambda c: (len(c), format_certificate(c)))
            stats["depth"] = len(best)
            return EquivResult("Equivalent", best, stats)
        if any(Q.n_letters + 2 > max_letters for Q in new_front):
            stats["letter_bound_hit"] = True
    return EquivResult("Unknown", [], stats)


def random_walk(P: NanoPhrase, n: int, seed: int, allowed: Iterable[str],
                growth_budget: int = 2) -> tuple[NanoPhrase, list[MoveInstance]]:
    """A seeded walk of ``n`` moves from ``canonicalize(P)``.

    Each step first picks a kind uniformly among the kinds that have an
    applicable instance, then an instance uniformly.  Insertions are allowed
    while the letter count stays within ``growth_budget`` of the start.
    """
    rng = random.Random(seed)
    kinds = frozenset(allowed)
    Q = canonicalize(P)
    cap = Q.n_letters + growth_budget
    cert: list[MoveInstance] = []
    for _ in range(n):
        moves = enumerate_moves(Q, include_inverses=True,
                                growth_budget=cap - Q.n_letters, kinds=kinds)
        if not moves:
            break
        by_kind: dict[str, list[MoveInstance]] = {}
        for m in moves:
            by_kind.setdefault(m.kind, []).append(m)
        kind = rng.choice(sorted(by_kind))
        m = rng.choice(by_kind[kind])
        Q = canonicalize(apply_move(Q, m))
        cert.append(m)
    return Q, cert
