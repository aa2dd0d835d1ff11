"""Knotlike homotopy data, orbit decomposition, the functors F and the projection U_L."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import BUILTIN_ALPHABETS, AlphabetSpec, NanoPhrase, PhraseError

__all__ = [
    "NonCommutingError",
    "OrbitDecomposition",
    "DIAMONDS",
    "is_knotlike",
    "make_knotlike",
    "make_diagonal",
    "decompose_orbits",
    "functor_projection",
    "functor_apply",
    "crs",
    "is_free",
    "sign_of",
    "u_l_project",
    "to_alpha0",
    "from_alpha0",
]

DIAMONDS = ("star", "0", "1", "2", "G")
_TARGET = {"star": "star", "0": "alpha0", "1": "alpha1", "2": "alpha2", "G": "alphaG"}


class NonCommutingError(PhraseError):
    def __init__(self, symbol: str):
        super().__init__(f"tau and nu do not commute at {symbol!r}")
        self.symbol = symbol


def _require_commuting(spec: AlphabetSpec) -> None:
    witness = spec.commutes()
    if witness is not None:
        raise NonCommutingError(witness)


def make_knotlike(spec: AlphabetSpec) -> frozenset[tuple[str, str, str]]:
    """The triples ``(a,a,a), (a,a,nt(a)), (a,nt(a),nt(a))`` with ``nt = nu . tau``."""
    _require_commuting(spec)
    out = set()
    for a in spec.symbols:
        b = spec.nu(spec.tau(a))
        out |= {(a, a, a), (a, a, b), (a, b, b)}
    return frozenset(out)


def make_diagonal(spec: AlphabetSpec) -> frozenset[tuple[str, str, str]]:
    return frozenset((a, a, a) for a in spec.symbols)


def is_knotlike(spec: AlphabetSpec) -> bool:
    if spec.commutes() is not None:
        return False
    return spec.triples == make_knotlike(spec)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Representatives of the tau/nu orbits, their classes and the eta sets."""

    representatives: tuple[str, ...]
    classes: dict[str, str]
    eta: dict[str, frozenset[str]]

    def members(self, diamond: str) -> tuple[str, ...]:
        return tuple(r for r in self.representatives if self.classes[r] == diamond)


def _classify(spec: AlphabetSpec, a: str) -> str:
    t, n = spec.tau(a), spec.nu(a)
    if a != t and a != n:
        return "0" if t == n else "star"
    if a != t:
        return "1"
    if a != n:
        return "2"
    return "G"


def _orbit(spec: AlphabetSpec, a: str) -> frozenset[str]:
    t, n = spec.tau, spec.nu
    return frozenset({a, t(a), n(a), t(n(a))})


def decompose_orbits(spec: AlphabetSpec, representatives: Sequence[str] | None = None) -> OrbitDecomposition:
    """Split the alphabet into tau/nu orbits.

    By default each orbit is represented by its first symbol in declaration
    order; ``representatives`` overrides the choice (one symbol per orbit).
    """
    _require_commuting(spec)
    orbits = []
    seen: set[str] = set()
    for a in spec.symbols:
        if a not in seen:
            orb = _orbit(spec, a)
            seen |= orb
            orbits.append(orb)
    if representatives is None:
        reps = tuple(min(orb, key=spec.order) for orb in orbits)
    else:
        reps = tuple(representatives)
        for r in reps:
            if r not in spec:
                raise PhraseError(f"undeclared representative {r!r}")
        covered = [next(o for o in orbits if r in o) for r in reps]
        if len(set(covered)) != len(covered) or len(covered) != len(orbits):
            raise PhraseError("representatives must pick exactly one symbol per orbit")
        reps = tuple(sorted(reps, key=spec.order))
    classes = {r: _classify(spec, r) for r in reps}
    eta = {d: frozenset() for d in DIAMONDS}
    for r in reps:
        eta[classes[r]] = eta[classes[r]] | _orbit(spec, r)
    return OrbitDecomposition(reps, classes, eta)


def functor_projection(spec: AlphabetSpec, diamond: str,
                       representatives: Sequence[str] | None = None) -> dict[str, str]:
    """Symbol map ``eta_diamond -> alpha_diamond`` used by :func:`functor_apply`."""
    if diamond not in DIAMONDS:
        raise PhraseError(f"unknown target {diamond!r}")
    dec = decompose_orbits(spec, representatives)
    t, n = spec.tau, spec.nu
    table: dict[str, str] = {}
    for a in dec.members(diamond):
        if diamond == "star":
            # nu-compatible images: nu(a) -> b+, tau nu(a) -> a-
            table.update({a: "a+", n(a): "b+", t(n(a)): "a-", t(a): "b-"})
        elif diamond == "0":
            table.update({a: "a", t(a): "b"})
        elif diamond == "1":
            table.update({a: "1", t(a): "-1"})
        elif diamond == "2":
            table.update({a: "c", n(a): "d"})
        else:
            table[a] = "a"
    return table


def functor_apply(P: NanoPhrase, diamond: str,
                  representatives: Sequence[str] | None = None) -> NanoPhrase:
    """Delete letters outside ``eta_diamond`` and re-project the rest onto ``alpha_diamond``."""
    table = functor_projection(P.alphabet, diamond, representatives)
    keep = {a for a, s in P.proj if s in table}
    comps = [[a for a in c if a in keep] for c in P.components]
    proj = {a: table[P.symbol(a)] for a in keep}
    return NanoPhrase.make(BUILTIN_ALPHABETS[_TARGET[diamond]], comps, proj, check=False)


# -- free orbits, signs and U_L --------------------------------------------

def crs(spec: AlphabetSpec) -> tuple[str, ...]:
    """Representatives of the tau-orbits, first symbol of each in declaration order."""
    out, seen = [], set()
    for a in spec.symbols:
        if a not in seen:
            seen |= {a, spec.tau(a)}
            out.append(a)
    return tuple(out)


def is_free(spec: AlphabetSpec, a: str) -> bool:
    return spec.tau(a) != a


def _check_L(spec: AlphabetSpec, L: Iterable[str]) -> frozenset[str]:
    L = frozenset(L)
    reps = set(crs(spec))
    bad = sorted(L - reps, key=lambda s: spec.order(s) if s in spec else -1)
    if bad:
        raise PhraseError(f"L must be a subset of crs(alpha/tau); offending: {bad}")
    return L


def sign_of(spec: AlphabetSpec, symbol: str, L: Iterable[str]) -> int:
    L = _check_L(spec, L)
    if not is_free(spec, symbol):
        return 0
    if symbol in L:
        return 1
    if spec.tau(symbol) in L:
        return -1
    return 0


def u_l_project(P: NanoPhrase, L: Iterable[str]) -> NanoPhrase:
    """Drop sign-0 letters and read the rest as a pseudolink (projections +-1)."""
    spec = P.alphabet
    L = _check_L(spec, L)
    sign = {s: sign_of(spec, s, L) for s in spec.symbols}
    keep = {a for a, s in P.proj if sign[s] != 0}
    comps = [[a for a in c if a in keep] for c in P.components]
    proj = {a: "1" if sign[P.symbol(a)] > 0 else "-1" for a in keep}
    return NanoPhrase.make(BUILTIN_ALPHABETS["alpha1"], comps, proj, check=False)


_A0_TO_A1 = {"a": "1", "b": "-1"}
_A1_TO_A0 = {"1": "a", "-1": "b"}


def to_alpha0(P: NanoPhrase) -> NanoPhrase:
    """Relabel a pseudolink over alpha_1 as a phrase over alpha_0 (1 -> a, -1 -> b)."""
    return NanoPhrase.make(BUILTIN_ALPHABETS["alpha0"], P.components,
                           {a: _A1_TO_A0[s] for a, s in P.proj}, check=False)


def from_alpha0(P: NanoPhrase) -> NanoPhrase:
    return NanoPhrase.make(BUILTIN_ALPHABETS["alpha1"], P.components,
                           {a: _A0_TO_A1[s] for a, s in P.proj}, check=False)
