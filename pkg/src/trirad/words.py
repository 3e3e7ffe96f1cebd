"""Words over the generators S, U with amalgam normal forms.

A group word is a central sign (power of -I extracted) plus a syllable list.
In normal form, S-exponents lie in 1..p-1, U-exponents in 1..q-1, and adjacent
syllables alternate generators; this is the unique normal form coming from the
free-product-with-amalgamation structure Z/2pZ *_{Z/2Z} Z/2qZ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from trirad.errors import ParseError


class Syllable(NamedTuple):
    gen: str  # 'S' or 'U'
    exp: int


@dataclass(frozen=True)
class GroupWord:
    sign: int = 1
    syllables: Tuple[Syllable, ...] = ()

    def concat(self, other: "GroupWord") -> "GroupWord":
        """Raw concatenation, no normalization."""
        return GroupWord(self.sign * other.sign, self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.sign, tuple(Syllable(g, -e) for g, e in reversed(self.syllables)))

    def __len__(self):
        return len(self.syllables)


IDENTITY = GroupWord()


def _order(gen, p, q):
    return p if gen == "S" else q


def normal_form(w: GroupWord, p: int, q: int) -> GroupWord:
    """Canonical form: reduce exponents mod the relation G^n = -I, merge, drop zeros."""
    sign = w.sign
    stack = []
    for syl in w.syllables:
        stack.append(syl)
        while True:
            if len(stack) >= 2 and stack[-1].gen == stack[-2].gen:
                top = stack.pop()
                prev = stack.pop()
                stack.append(Syllable(top.gen, prev.exp + top.exp))
                continue
            g, e = stack[-1]
            n = _order(g, p, q)
            k, e2 = divmod(e, n)
            if k & 1:
                sign = -sign
            if e2 == 0:
                stack.pop()
                if not stack:
                    break
                continue
            if e2 != e:
                stack[-1] = Syllable(g, e2)
            break
    return GroupWord(sign, tuple(stack))


def multiply(w1: GroupWord, w2: GroupWord, p: int, q: int) -> GroupWord:
    return normal_form(w1.concat(w2), p, q)


def cyclic_reduce(w: GroupWord, p: int, q: int):
    """Cyclically reduced form plus a conjugator g with w = g * reduced * g^-1."""
    cur = normal_form(w, p, q)
    conj = IDENTITY
    while len(cur) >= 2 and cur.syllables[0].gen == cur.syllables[-1].gen:
        s = GroupWord(1, (cur.syllables[0],))
        conj = multiply(conj, s, p, q)
        cur = multiply(multiply(s.inverse(), cur, p, q), s, p, q)
    return cur, conj


def minimal_period(syllables) -> int:
    """Length of the shortest cyclic period of the syllable sequence."""
    k = len(syllables)
    for m in range(1, k + 1):
        if k % m == 0 and syllables == syllables[:m] * (k // m):
            return m
    return k


def rotations(syllables):
    k = len(syllables)
    return [syllables[i:] + syllables[:i] for i in range(k)]


def cyclic_key(syllables):
    """Canonical representative of the rotation class (central sign ignored)."""
    if not syllables:
        return ()
    return min(rotations(tuple(syllables)))


# ---------------------------------------------------------------------------
# text form: [-] (S|U)^<int> (* (S|U)^<int>)*

_TOKEN = re.compile(r"\s*([SU])\s*(\^\s*(-?\d+))?\s*")


def parse_word(text: str) -> GroupWord:
    """Parse the shared word grammar; result is raw (caller applies normal_form)."""
    s = text
    stripped = s.strip()
    if stripped in ("I", "1"):
        return IDENTITY
    if stripped in ("-I", "-1", "- I", "- 1"):
        return GroupWord(-1, ())
    pos = 0
    sign = 1
    # optional leading minus
    m = re.match(r"\s*-\s*", s)
    if m:
        sign = -1
        pos = m.end()
    syllables = []
    expect_syllable = True
    while pos < len(s):
        if not expect_syllable:
            m = re.compile(r"\s*\*\s*").match(s, pos)
            if not m:
                if s[pos:].strip() == "":
                    break
                raise ParseError(f"expected '*' in word {text!r}", offset=pos)
            pos = m.end()
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"expected syllable S^k or U^k in word {text!r}", offset=pos)
        gen = m.group(1)
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if exp == 0:
            raise ParseError(f"zero exponent not allowed in word {text!r}", offset=pos)
        syllables.append(Syllable(gen, exp))
        pos = m.end()
        expect_syllable = False
    if expect_syllable and sign == 1 and not syllables:
        raise ParseError(f"empty word {text!r}; write 'I' for the identity or '-I' for -I", offset=0)
    return GroupWord(sign, tuple(syllables))


def render_word(w: GroupWord) -> str:
    if not w.syllables:
        return "-I" if w.sign < 0 else "I"
    body = " * ".join(g if e == 1 else f"{g}^{e}" for g, e in w.syllables)
    return ("- " + body) if w.sign < 0 else body
