import random

import pytest
from hypothesis import given, settings, strategies as st

from nanophrase import (AlphabetSpec, PhraseError, builtin_alphabet, canonicalize, parse_phrase,
                        phrase_from_words)
from nanophrase.homotopy import (DIAMONDS, NonCommutingError, crs, decompose_orbits,
                                 functor_apply, functor_projection, is_knotlike, make_diagonal,
                                 make_knotlike, sign_of, to_alpha0, from_alpha0, u_l_project)

from helpers import ALPHA0, ALPHA1, STAR, random_commuting_alphabet, random_phrase

NAMES = ["star", "alpha0", "alpha1", "alpha2", "alphaG"]


@pytest.mark.parametrize("name", NAMES)
def test_builtin_pairs_are_knotlike(name):
    spec = builtin_alphabet(name)
    assert is_knotlike(spec)
    assert make_knotlike(spec) == spec.triples


def test_knotlike_sets():
    assert len(make_knotlike(ALPHA1)) == 6
    assert make_knotlike(builtin_alphabet("alphaG")) == {("a", "a", "a")}
    assert make_knotlike(ALPHA0) == {("a", "a", "a"), ("b", "b", "b")}


def test_partial_s_is_not_knotlike():
    assert not is_knotlike(ALPHA1.with_triples({("1", "1", "1")}))


def test_non_commuting_involutions():
    spec = AlphabetSpec.build(["p", "q", "r"], {"p": "q"}, {"q": "r"})
    assert not is_knotlike(spec)
    with pytest.raises(NonCommutingError):
        make_knotlike(spec)
    with pytest.raises(NonCommutingError):
        decompose_orbits(spec)


def test_diagonal():
    assert make_diagonal(ALPHA1) == {("1", "1", "1"), ("-1", "-1", "-1")}
    assert make_diagonal(builtin_alphabet("alphaG")) == builtin_alphabet("alphaG").triples
    assert make_diagonal(AlphabetSpec.build(["x"])) == {("x", "x", "x")}


@settings(max_examples=300)
@given(st.integers(0, 2**32))
def test_random_commuting_alphabets_are_knotlike_and_partitioned(seed):
    spec = random_commuting_alphabet(random.Random(seed))
    assert is_knotlike(spec)
    dec = decompose_orbits(spec)
    parts = [dec.eta[d] for d in DIAMONDS]
    assert sum(len(p) for p in parts) == len(spec.symbols)
    assert frozenset().union(*parts) == frozenset(spec.symbols)
    for r, cls in dec.classes.items():
        t, n = spec.tau(r), spec.nu(r)
        expected = ("G" if r == t == n else "2" if r == t else "1" if r == n
                    else "0" if t == n else "star")
        assert cls == expected


def test_orbit_examples():
    dec = decompose_orbits(STAR)
    assert dec.representatives == ("a+",) and dec.classes == {"a+": "star"}
    assert dec.eta["star"] == frozenset(STAR.symbols)
    dec1 = decompose_orbits(ALPHA1)
    assert dec1.representatives == ("1",) and dec1.classes["1"] == "1"
    assert dec1.eta["1"] == {"1", "-1"}
    dec2 = decompose_orbits(builtin_alphabet("alpha2"))
    assert dec2.representatives == ("c",) and dec2.classes["c"] == "2"


def test_representatives_override():
    dec = decompose_orbits(STAR, ["b-"])
    assert dec.representatives == ("b-",)
    with pytest.raises(PhraseError):
        decompose_orbits(STAR, ["a+", "b-"])


def test_f1_is_identity_on_pseudolinks():
    rng = random.Random(4)
    for _ in range(50):
        P = random_phrase(rng, ALPHA1, rng.randint(0, 5), rng.randint(1, 3))
        assert functor_apply(P, "1") == P


def test_fstar_is_identity_on_alpha_star():
    assert functor_projection(STAR, "star") == {s: s for s in STAR.symbols}
    rng = random.Random(8)
    for _ in range(50):
        P = random_phrase(rng, STAR, rng.randint(0, 5), rng.randint(1, 3))
        assert functor_apply(P, "star") == P


def test_fstar_table_is_equivariant():
    for seed in range(40):
        spec = random_commuting_alphabet(random.Random(seed), 8)
        table = functor_projection(spec, "star")
        for s, img in table.items():
            assert table[spec.tau(s)] == STAR.tau(img)
            assert table[spec.nu(s)] == STAR.nu(img)


def test_mixed_alphabet_example():
    spec = AlphabetSpec.build(["1", "-1", "g"], {"1": "-1"})
    spec = spec.with_triples(make_knotlike(spec))
    P = phrase_from_words(spec, "AGAG", {"A": "1", "G": "g"})
    F1 = functor_apply(P, "1")
    assert F1.alphabet == ALPHA1 and F1.components == (("A", "A"),) and F1.symbol("A") == "1"
    FG = functor_apply(P, "G")
    assert FG.components == (("G", "G"),) and FG.symbol("G") == "a"
    assert FG.alphabet == builtin_alphabet("alphaG")


@settings(max_examples=200)
@given(st.integers(0, 2**32))
def test_functors_commute_with_canonicalize(seed):
    rng = random.Random(seed)
    spec = random_commuting_alphabet(rng)
    P = random_phrase(rng, spec, rng.randint(0, 6), rng.randint(1, 3))
    for d in DIAMONDS:
        F = functor_apply(P, d)
        assert canonicalize(F) == canonicalize(functor_apply(canonicalize(P), d))
        assert F.k == P.k


def test_crs_and_signs():
    assert crs(ALPHA1) == ("1",)
    assert sign_of(ALPHA1, "1", {"1"}) == 1 and sign_of(ALPHA1, "-1", {"1"}) == -1
    alpha2 = builtin_alphabet("alpha2")
    assert all(sign_of(alpha2, s, L) == 0 for s in alpha2.symbols for L in ([], ["c"], ["c", "d"]))
    assert sign_of(ALPHA0, "b", {"a"}) == -1
    with pytest.raises(PhraseError):
        sign_of(ALPHA1, "1", {"-1"})


def test_ul_examples():
    P = phrase_from_words(ALPHA0, "ABAB", {"A": "a", "B": "b"})
    Q = u_l_project(P, {"a"})
    assert Q.alphabet == ALPHA1 and Q.projections == {"A": "1", "B": "-1"}
    assert Q.components == P.components
    assert from_alpha0(to_alpha0(Q)) == Q
    R = phrase_from_words(builtin_alphabet("alpha2"), "ABAB|", {"A": "c", "B": "d"})
    assert u_l_project(R, {"c"}).components == ((), ())
    assert u_l_project(P, set()).components == ((),)


def test_ul_on_mixed_free_and_fixed_orbits():
    spec = AlphabetSpec.build(["p", "q", "r"], {"p": "q"})
    assert crs(spec) == ("p", "r")
    P = parse_phrase("alphabet p q r\ntau p:q\nphrase A:p B:r C:q A B C\n")
    Q = u_l_project(P, {"p", "r"})
    assert Q.components == (("A", "C", "A", "C"),)
    assert Q.projections == {"A": "1", "C": "-1"}


def test_fg_image_has_no_free_orbit_letters():
    # every letter of F_G(P) is fixed by both involutions, so the free-orbit count is 0
    alpha_g = builtin_alphabet("alphaG")
    for seed in range(100):
        rng = random.Random(seed)
        spec = random_commuting_alphabet(rng)
        FG = functor_apply(random_phrase(rng, spec, rng.randint(0, 6), rng.randint(1, 3)), "G")
        assert FG.alphabet == alpha_g
        assert all(alpha_g.tau(s) == s == alpha_g.nu(s) for s in FG.projections.values())
