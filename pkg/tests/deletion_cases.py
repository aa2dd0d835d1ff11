"""The 25 two-letter deletion cases and a checker for order independence.

Each case lists the layout of ``A`` and ``B`` among placeholder words
``x, y, z, t`` (``|`` separates components) and whether each letter's
marker agrees with its projection (``+``) or not (``-``).  The second
column is the expected result after deleting both letters, written with
``w-`` for a reversed word and ``(...)_w`` for a projection twist by ``w``.

Placeholders are filled with fresh letters occurring once, so every
letter's projection is local to its position and phrases can be compared
component-wise up to rotation, reversal-with-twist and reordering.
"""

from __future__ import annotations

import random
import re

from nanophrase.kernel import delete_letter

CASES = [
    ("A+ x A+ y B+ z B+ t", "x|z|ty"),
    ("A- x A- y B+ z B+ t", "(z|tx-y)_x"),
    ("A- x A- y B- z B- t", "((z-tx-y)_x)_z"),
    ("A+ x B+ y A+ z B+ t", "yxtz"),
    ("A- x B+ y A- z B+ t", "(z-xty-)_zy"),
    ("A- x B- y A- z B- t", "(x-z|ty-)_xy"),
    ("A+ x A+ y | B+ z B+ t", "x|y|z|t"),
    ("A- x A- y | B+ z B+ t", "(x-y|z|t)_x"),
    ("A- x A- y | B- z B- t", "((x-y|z-t)_x)_z"),
    ("A+ x B+ y | A+ z B+ t", "yz|tx"),
    ("A- x B+ y | A- z B+ t", "(z-xty-)_yz"),
    ("A- x B- y | A- z B- t", "((x-z|ty-)_x)_y"),
    ("A+ x | A+ y B+ z B+ t", "z|txy"),
    ("A- x | A- y B+ z B+ t", "(z|tx-y)_x"),
    ("A- x | A- y B- z B- t", "((z-tx-y)_x)_z"),
    ("A+ x | A+ y | B+ z B+ t", "xy|z|t"),
    ("A- x | A- y | B+ z B+ t", "(x-y|z|t)_x"),
    ("A+ x | A+ y | B- z B- t", "(xy|z-t)_z"),
    ("A- x | A- y | B- z B- t", "((x-y|z-t)_x)_z"),
    ("A+ x | B+ y | A+ z B+ t", "txzy"),
    ("A+ x | B- y | A+ z B- t", "(xzy-t)_y"),
    ("A- x | B- y | A- z B- t", "(z-xt-y)_zt"),
    ("A+ x | A+ y | B+ z | B+ t", "xy|zt"),
    ("A+ x | A+ y | B- z | B- t", "(xy|z-t)_z"),
    ("A- x | A- y | B- z | B- t", "((x-y|z-t)_x)_z"),
]

# Forms as first listed for six cases whose listing has a mistyped word or subscript;
# CASES holds the forms the deletion rule actually produces.
AS_LISTED = {
    3: "((z-tx-y)_x)_t",
    8: "(x-y|z|t)_xy",
    12: "((x-z|ty-)_x)_z",
    17: "(z|tx-y)_x",
    18: "xy|z-t",
    22: "((z-xt-y)_x)_y",
}

PLACEHOLDERS = "xyzt"


def fill(rng: random.Random, length: int = 2) -> dict[str, list[tuple[str, int]]]:
    """Fresh once-occurring letters with random projections for each placeholder."""
    return {w: [(f"{w}{i}", rng.choice((1, -1))) for i in range(length)] for w in PLACEHOLDERS}


def build(layout: str, words, proj_a: int, proj_b: int):
    """Components as lists of letter ids plus a projection dict and the two markers."""
    comps: list[list[str]] = [[]]
    proj: dict[str, int] = {}
    marks: dict[str, int] = {}
    for tok in layout.split():
        if tok == "|":
            comps.append([])
        elif tok in PLACEHOLDERS:
            for a, p in words[tok]:
                comps[-1].append(a)
                proj[a] = p
        else:
            letter, sign = tok[0], tok[1]
            p = proj_a if letter == "A" else proj_b
            proj[letter] = p
            marks[letter] = p if sign == "+" else -p
            comps[-1].append(letter)
    return comps, proj, marks


def delete_in_order(comps, proj, marks, order):
    comps = [list(c) for c in comps]
    proj = dict(proj)
    for a in order:
        delete_letter(comps, proj, a, marks[a])
    return comps, proj


def closure_key(comps, proj):
    """Canonical key up to rotations, reversal with twist and component order.

    Valid because every remaining letter occurs once, so twisting a
    component only touches projections inside it.
    """
    keys = []
    for comp in comps:
        word = [(a, proj[a]) for a in comp]
        twisted = [(a, -p) for a, p in reversed(word)]
        candidates = []
        for w in (word, twisted):
            for r in range(max(1, len(w))):
                candidates.append(tuple(w[r:] + w[:r]))
        keys.append(min(candidates))
    return tuple(sorted(keys))


_TOKEN = re.compile(r"\(|\)_([xyzt]+)|\||[xyzt]-?")


def expected(expr: str, words):
    """Evaluate a result expression against the placeholder fillings."""
    proj = {a: p for w in words.values() for a, p in w}
    stack: list[list] = [[[]]]
    for m in _TOKEN.finditer(expr):
        tok = m.group(0)
        if tok == "(":
            stack.append([[]])
        elif tok.startswith(")"):
            inner = stack.pop()
            for w in m.group(1):
                for a, _ in words[w]:
                    proj[a] = -proj[a]
            outer = stack[-1]
            outer[-1].extend(inner[0])
            outer.extend(inner[1:])
        elif tok == "|":
            stack[-1].append([])
        else:
            letters = [a for a, _ in words[tok[0]]]
            if tok.endswith("-"):
                letters.reverse()
            stack[-1][-1].extend(letters)
    (comps,) = stack
    return comps, proj
