"""Nanowords and nanophrases over an alphabet with involutions.

Homotopy moves, knotlike homotopy data, the functors ``F``, the projection
``U_L`` and the state-sum Jones polynomial of pseudolinks.
"""

from .core import (
    BUILTIN_ALPHABETS,
    AlphabetSpec,
    GaussViolation,
    Letter,
    NanoPhrase,
    PhraseError,
    PhraseSyntaxError,
    UndeclaredSymbolError,
    builtin_alphabet,
    canonicalize,
    enumerate_phrases,
    format_phrase,
    parse_phrase,
    phrase_from_words,
    project_word,
    relabel,
    validate_gauss,
)
from .homotopy import (
    NonCommutingError,
    OrbitDecomposition,
    crs,
    decompose_orbits,
    functor_apply,
    functor_projection,
    is_knotlike,
    make_diagonal,
    make_knotlike,
    sign_of,
    to_alpha0,
    u_l_project,
)
from .jones import (
    EmptyPhraseWarning,
    State,
    StateSummary,
    bracket,
    bracket_generic,
    jones,
    jones_general,
    lift_to_star,
    project_fact_p,
    project_fact_q,
    project_fact_s,
    reduce_state,
    turaev_bracket,
    turaev_jones,
    writhe,
)
from .laurent import LaurentPoly, parse_poly, render, specialize
from .moves import (
    EquivResult,
    MoveError,
    MoveInstance,
    apply_abab,
    apply_lemma1,
    apply_move,
    enumerate_moves,
    equiv_search,
    inverse,
    nu_inversion,
    nu_permutation,
    nu_shift,
    random_walk,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
