"""Rademacher symbols psi, Psi, Phi, Psi_h, Psi_e and their (2,3) oracles.

Two independent pipelines compute psi:

* `psi` multiplies standard lifts of the syllable powers left-to-right in the
  central extension, accumulating the level through the cocycle W, and reads
  the symbol off the character values chi(S~) = -q, chi(U~) = -p.
* `psi_via_cocycle` folds right-to-left with the coboundary relation
  psi(xy) = psi(x) + psi(y) + 2pq W(x,y), seeded on single syllable powers.

Both use the float matrix shadow for the Asai signs and fall back to exact
certified arithmetic whenever a sign is not decidable at float precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from trirad.errors import DomainError, InternalInconsistencyError, PreconditionError
from trirad.exactnum import sign
from trirad.group import (
    Element,
    Matrix2,
    _decided_sign,
    _fmul,
    asai_sign,
    w_from_signs,
    word_to_matrix,
)
from trirad.words import cyclic_reduce


def _c_sign(el: Element) -> int:
    t4, err = el.fmat
    s = _decided_sign(t4[2], err)
    if s is not None:
        return s
    return sign(el.matrix.c).value


# ---------------------------------------------------------------------------
# pipeline 1: character of the universal cover


def _psi_char_float(el: Element):
    params = el.params
    p, q = params.p, params.q
    pq = p * q
    w = el.word
    if w.sign < 0:
        char = pq
        cur = params.identity_f
        cur = (tuple(-x for x in cur[0]), cur[1])
        cur_asai = -1
    else:
        char = 0
        cur = params.identity_f
        cur_asai = 1
    level = 0
    for gen, e in w.syllables:
        nxt = _fmul(cur, params.syllable_fmat(gen, e))
        s_new = _decided_sign(nxt[0][2], nxt[1])
        if s_new is None:
            return None
        # syllable powers have c = C_e > 0, so their Asai sign is +1
        level += w_from_signs(cur_asai, 1, s_new)
        char += -q * e if gen == "S" else -p * e
        cur, cur_asai = nxt, s_new
    return char + 2 * level * pq


def _psi_char_exact(el: Element) -> int:
    params = el.params
    p, q = params.p, params.q
    pq = p * q
    w = el.word
    if w.sign < 0:
        char = pq
        cur = -params.identity_matrix
        cur_asai = -1
    else:
        char = 0
        cur = params.identity_matrix
        cur_asai = 1
    level = 0
    for gen, e in w.syllables:
        nxt = cur * params.syllable_matrix(gen, e)
        s_new = asai_sign(nxt)
        level += w_from_signs(cur_asai, 1, s_new)
        char += -q * e if gen == "S" else -p * e
        cur, cur_asai = nxt, s_new
    return char + 2 * level * pq


def psi(el: Element) -> int:
    cached = el._sym.get("psi")
    if cached is None:
        cached = _psi_char_float(el)
        if cached is None:
            cached = _psi_char_exact(el)
        el._sym["psi"] = cached
    return cached


# ---------------------------------------------------------------------------
# pipeline 2: coboundary fold with syllable seeds


def _seed(gen, e, p, q) -> int:
    return -e * q if gen == "S" else -e * p


def _psi_cocycle_float(el: Element):
    params = el.params
    p, q = params.p, params.q
    pq = p * q
    sylls = el.word.syllables
    if not sylls:
        acc_psi = 0
        acc_asai = 1
    else:
        gen, e = sylls[-1]
        acc_psi = _seed(gen, e, p, q)
        acc = params.syllable_fmat(gen, e)
        acc_asai = 1
        for gen, e in reversed(sylls[:-1]):
            nxt = _fmul(params.syllable_fmat(gen, e), acc)
            s_new = _decided_sign(nxt[0][2], nxt[1])
            if s_new is None:
                return None
            acc_psi = _seed(gen, e, p, q) + acc_psi + 2 * pq * w_from_signs(1, acc_asai, s_new)
            acc, acc_asai = nxt, s_new
    if el.word.sign < 0:
        # psi(-gamma) = psi(gamma) + pq sgn(gamma)
        acc_psi += pq * acc_asai
    return acc_psi


def _psi_cocycle_exact(el: Element) -> int:
    params = el.params
    p, q = params.p, params.q
    pq = p * q
    sylls = el.word.syllables
    if not sylls:
        acc_psi = 0
        acc_asai = 1
    else:
        gen, e = sylls[-1]
        acc_psi = _seed(gen, e, p, q)
        acc = params.syllable_matrix(gen, e)
        acc_asai = 1
        for gen, e in reversed(sylls[:-1]):
            nxt = params.syllable_matrix(gen, e) * acc
            s_new = asai_sign(nxt)
            acc_psi = _seed(gen, e, p, q) + acc_psi + 2 * pq * w_from_signs(1, acc_asai, s_new)
            acc, acc_asai = nxt, s_new
    if el.word.sign < 0:
        acc_psi += pq * acc_asai
    return acc_psi


def psi_via_cocycle(el: Element) -> int:
    val = _psi_cocycle_float(el)
    if val is None:
        val = _psi_cocycle_exact(el)
    return val


# ---------------------------------------------------------------------------
# variants


def rademacher_Psi(el: Element) -> int:
    cached = el._sym.get("Psi")
    if cached is None:
        pq = el.params.p * el.params.q
        val = psi(el) + Fraction(pq, 2) * el.asai() * (1 - el.trace_sign())
        if val.denominator != 1:
            raise InternalInconsistencyError("Psi is not an integer")
        cached = int(val)
        el._sym["Psi"] = cached
    return cached


def dedekind_Phi(el: Element) -> Fraction:
    pq = el.params.p * el.params.q
    s = _c_sign(el) * el.trace_sign()
    return Fraction(rademacher_Psi(el)) + Fraction(pq, 2) * s


def homogeneous_Psi_h(el: Element) -> int:
    if el.classify() == "elliptic":
        return 0
    return rademacher_Psi(el)


def modified_Psi_e(el: Element) -> int:
    if el.classify() != "elliptic":
        return rademacher_Psi(el)
    w, _ = cyclic_reduce(el.word, el.params.p, el.params.q)
    if len(w.syllables) != 1:
        raise InternalInconsistencyError("elliptic element did not reduce to one syllable")
    gen, e = w.syllables[0]
    return -e * el.params.q if gen == "S" else -e * el.params.p


def euler_cocycle(el1: Element, el2: Element) -> int:
    if el1.params is not el2.params:
        raise DomainError("mixed ambient (p,q) parameters")
    pq = el1.params.p * el1.params.q
    delta = modified_Psi_e(el1 * el2) - modified_Psi_e(el1) - modified_Psi_e(el2)
    quot, rem = divmod(-delta, pq)
    if rem:
        raise InternalInconsistencyError("Euler cocycle value is not an integer")
    return quot


# ---------------------------------------------------------------------------
# (2,3) oracles


def dedekind_sum(a: int, c: int) -> Fraction:
    """s(a,c) = sum_k ((k/c))((ka/c)) with the sawtooth ((x))."""
    if c < 1:
        raise DomainError(f"dedekind_sum requires c >= 1, got {c}")

    def saw(num, den):
        if num % den == 0:
            return Fraction(0)
        return Fraction(num, den) - Fraction(num // den) - Fraction(1, 2)

    total = Fraction(0)
    for k in range(1, c):
        total += saw(k, c) * saw(k * a, c)
    return total


def phi23_formula(a: int, b: int, c: int, d: int) -> Fraction:
    """Dedekind's closed form for Phi on SL2(Z)."""
    if a * d - b * c != 1:
        raise DomainError("matrix must have determinant 1")
    if c == 0:
        return Fraction(b, d)
    sgn_c = 1 if c > 0 else -1
    return Fraction(a + d, c) - 12 * sgn_c * dedekind_sum(a, abs(c))


@dataclass(frozen=True)
class EpsilonCoding:
    epsilons: tuple

    @property
    def total(self):
        return sum(self.epsilons)


def ghys_coding_23(el: Element) -> EpsilonCoding:
    """Lorenz-template coding of a (2,3) hyperbolic class: S U^(eps_i) blocks."""
    if (el.params.p, el.params.q) != (2, 3):
        raise DomainError("epsilon coding is defined for (p,q) = (2,3) only")
    if el.classify() != "hyperbolic":
        raise DomainError("epsilon coding requires a hyperbolic element")
    w, _ = cyclic_reduce(el.word, 2, 3)
    sylls = w.syllables
    if sylls and sylls[0].gen != "S":
        sylls = sylls[1:] + sylls[:1]
    eps = []
    for i in range(0, len(sylls), 2):
        if sylls[i] != ("S", 1) or sylls[i + 1].gen != "U":
            raise InternalInconsistencyError("unexpected cyclic pattern for a hyperbolic class")
        eps.append(1 if sylls[i + 1].exp == 1 else -1)
    return EpsilonCoding(tuple(eps))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SymbolReport:
    psi: int
    Psi: int
    Phi: Fraction
    Psi_h: int
    Psi_e: int
    classification: str
    asai_sign: int
    trace_sign: int

    def to_dict(self):
        phi2 = 2 * self.Phi
        if phi2.denominator != 1:
            raise InternalInconsistencyError("Phi denominator exceeds 2")
        return {
            "psi": self.psi,
            "Psi": self.Psi,
            "Phi": f"{phi2.numerator}/2",
            "Psi_h": self.Psi_h,
            "Psi_e": self.Psi_e,
            "classification": self.classification,
            "asai_sign": self.asai_sign,
            "trace_sign": self.trace_sign,
        }


def symbol_report(el: Element) -> SymbolReport:
    return SymbolReport(
        psi=psi(el),
        Psi=rademacher_Psi(el),
        Phi=dedekind_Phi(el),
        Psi_h=homogeneous_Psi_h(el),
        Psi_e=modified_Psi_e(el),
        classification=el.classify(),
        asai_sign=el.asai(),
        trace_sign=el.trace_sign(),
    )
