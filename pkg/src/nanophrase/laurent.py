"""Exact Laurent polynomials in ``t``, ``u``, ``d`` with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

__all__ = ["LaurentPoly", "T", "U", "D", "ONE", "ZERO", "specialize", "render", "parse_poly"]

Exponent = tuple[int, int, int]
_EXP_LIMIT = 2**31 - 1
_VARS = ("t", "u", "d")


def _check(e: Exponent) -> Exponent:
    for x in e:
        if not -_EXP_LIMIT <= x <= _EXP_LIMIT:
            raise OverflowError(f"exponent {x} out of range")
    return e


class LaurentPoly:
    """Immutable sparse Laurent polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        acc: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if c:
                e = _check(tuple(e))
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, t: int = 0, u: int = 0, d: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls({(t, u, d): coeff})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_univariate(self) -> bool:
        return all(e[1] == 0 and e[2] == 0 for e in self._terms)

    def coefficient(self, t: int = 0, u: int = 0, d: int = 0) -> int:
        return self._terms.get((t, u, d), 0)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, int] = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                acc[e] = acc.get(e, 0) + x * y
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly({(-e[0] * -n, -e[1] * -n, -e[2] * -n): c ** (-n)})
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"

    def __str__(self):
        return render(self)


T = LaurentPoly.monomial(t=1)
U = LaurentPoly.monomial(u=1)
D = LaurentPoly.monomial(d=1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
LOOP = -(T ** 2) - T ** -2  # the value d takes under specialization

Polyish = Union[LaurentPoly, int]


def specialize(p: LaurentPoly) -> LaurentPoly:
    """Substitute ``u = t^-1`` and ``d = -t^2 - t^-2``."""
    acc = ZERO
    loop_powers: dict[int, LaurentPoly] = {}
    for (a, b, c), coeff in p.terms.items():
        if c < 0:
            raise ValueError("d is not a unit after specialization")
        if c not in loop_powers:
            loop_powers[c] = LOOP ** c
        acc = acc + LaurentPoly.monomial(t=a - b, coeff=coeff) * loop_powers[c]
    return acc


def _monomial_str(e: Exponent) -> str:
    parts = []
    for var, x in zip(_VARS, e):
        if x == 1:
            parts.append(var)
        elif x:
            parts.append(f"{var}^{x}")
    return "*".join(parts)


def render(p: LaurentPoly) -> str:
    """Deterministic text form, terms ascending in ``(e_t, e_u, e_d)``.

    >>> render(-(T ** 2) - T ** -2)
    '-t^-2 - t^2'
    """
    items = sorted(p.terms.items())
    if not items:
        return "0"
    out = []
    for i, (e, c) in enumerate(items):
        mono = _monomial_str(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM_RE = re.compile(r"^(\d+)?(?:\*?)((?:[tud](?:\^-?\d+)?\*?)*)$")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return ZERO
    tokens = text.replace(" - ", " -").replace(" + ", " +").split()
    acc: dict[Exponent, int] = {}
    for tok in tokens:
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        m = _TERM_RE.match(tok)
        if not m or not tok:
            raise ValueError(f"cannot parse term {tok!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        exps = [0, 0, 0]
        for factor in filter(None, m.group(2).split("*")):
            var, _, power = factor.partition("^")
            exps[_VARS.index(var)] += int(power) if power else 1
        e = tuple(exps)
        acc[e] = acc.get(e, 0) + sign * coeff
    return LaurentPoly(acc)
