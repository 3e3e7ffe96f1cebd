"""Triangle-group elements: words, exact matrices, lifts, and the cocycle W.

Elements carry their normal-form word as the authoritative representation; the
exact matrix (entries in Q(alpha, beta)) and a float shadow with a tracked error
bound are computed lazily.  Sign decisions are taken from the float shadow only
when the value clears the error bound by a wide margin; otherwise they fall back
to certified exact arithmetic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from trirad import exactnum, words
from trirad.errors import DomainError, InternalInconsistencyError, NotInGroupError
from trirad.exactnum import AlgebraicNumber, chebyshev_C_2x, sign
from trirad.words import GroupWord, Syllable, cyclic_reduce, minimal_period, multiply, normal_form


@dataclass(frozen=True)
class Matrix2:
    a: AlgebraicNumber
    b: AlgebraicNumber
    c: AlgebraicNumber
    d: AlgebraicNumber

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Matrix2":
        # adjugate; valid since det = 1
        return Matrix2(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def float_entries(self):
        return tuple(float(x) for x in self.entries())


# float shadow: ((a, b, c, d), absolute error bound)


def _fmul(A, B):
    t1, e1 = A
    t2, e2 = B
    a1, b1, c1, d1 = t1
    a2, b2, c2, d2 = t2
    out = (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )
    m1 = max(abs(a1), abs(b1), abs(c1), abs(d1))
    m2 = max(abs(a2), abs(b2), abs(c2), abs(d2))
    err = 2.0 * (m1 * e2 + m2 * e1) + 8e-16 * m1 * m2
    return (out, err)


_MARGIN = 64.0


def _decided_sign(x, err):
    """Sign of x from the float shadow, or None when too close to call."""
    if abs(x) > _MARGIN * err + 1e-300:
        return 1 if x > 0 else -1
    return None


class GroupParams:
    """Ambient data for Gamma_{p,q}: field, generators, syllable-power caches."""

    def __init__(self, p, q):
        self.field = exactnum.get_field(p, q)
        self.p = p
        self.q = q
        self.r = p * q - p - q
        if math.gcd(self.r, 2 * p * q) != 1:
            raise InternalInconsistencyError("gcd(r, 2pq) != 1")
        f = self.field
        self.lam = f.alpha + f.beta
        # syllable powers via the Chebyshev formulas
        #   S^n = (-C_{n-1}  -C_n ; C_n  C_{n+1})  at cos(pi/p)
        #   U^n = ( C_{n+1}  -C_n ; C_n  -C_{n-1}) at cos(pi/q)
        self._spow = [None]
        for n in range(1, p):
            cm, cn, cp1 = (chebyshev_C_2x(n - 1, f.alpha), chebyshev_C_2x(n, f.alpha), chebyshev_C_2x(n + 1, f.alpha))
            self._spow.append(Matrix2(-cm, -cn, cn, cp1))
        self._upow = [None]
        for n in range(1, q):
            cm, cn, cp1 = (chebyshev_C_2x(n - 1, f.beta), chebyshev_C_2x(n, f.beta), chebyshev_C_2x(n + 1, f.beta))
            self._upow.append(Matrix2(cp1, -cn, cn, -cm))
        self.S = self._spow[1]
        self.U = self._upow[1]
        self.T = -(self.U * self.S)
        self.identity_matrix = Matrix2(f.one, f.zero, f.zero, f.one)
        self._spow_f = [None] + [
            (m.float_entries(), 4e-15 * max(abs(x) for x in m.float_entries())) for m in self._spow[1:]
        ]
        self._upow_f = [None] + [
            (m.float_entries(), 4e-15 * max(abs(x) for x in m.float_entries())) for m in self._upow[1:]
        ]
        one_f = ((1.0, 0.0, 0.0, 1.0), 0.0)
        self.identity_f = one_f

    def __repr__(self):
        return f"GroupParams(p={self.p}, q={self.q})"

    def syllable_matrix(self, gen, e) -> Matrix2:
        return self._spow[e] if gen == "S" else self._upow[e]

    def syllable_fmat(self, gen, e):
        return self._spow_f[e] if gen == "S" else self._upow_f[e]


@lru_cache(maxsize=None)
def get_params(p, q) -> GroupParams:
    if not (2 <= p < q):
        raise DomainError(f"need 2 <= p < q, got ({p},{q})")
    if math.gcd(p, q) != 1:
        raise DomainError(f"p and q must be coprime, got ({p},{q})")
    return GroupParams(p, q)


def generators(params: GroupParams):
    return params.S, params.U, params.T


def word_to_matrix(w: GroupWord, params: GroupParams) -> Matrix2:
    m = params.identity_matrix
    for gen, e in w.syllables:
        m = m * params.syllable_matrix(gen, e)
    if w.sign < 0:
        m = -m
    return m


def word_to_fmat(w: GroupWord, params: GroupParams):
    fm = params.identity_f
    for gen, e in w.syllables:
        fm = _fmul(fm, params.syllable_fmat(gen, e))
    if w.sign < 0:
        t, e = fm
        fm = (tuple(-x for x in t), e)
    return fm


class Element:
    """A group element: normal-form word plus lazy matrix caches."""

    __slots__ = ("params", "word", "_matrix", "_fmat", "_sym")

    def __init__(self, params: GroupParams, word: GroupWord, _normalized=False):
        self.params = params
        self.word = word if _normalized else normal_form(word, params.p, params.q)
        self._matrix = None
        self._fmat = None
        self._sym = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, params):
        return cls(params, words.IDENTITY, _normalized=True)

    @classmethod
    def generator(cls, params, gen, exp=1):
        return cls(params, GroupWord(1, (Syllable(gen, exp),)))

    @classmethod
    def translation(cls, params, k=1):
        """T^k as an element (T = -U S)."""
        t = GroupWord(-1, (Syllable("U", 1), Syllable("S", 1)))
        w = words.IDENTITY
        step = t if k >= 0 else t.inverse()
        for _ in range(abs(k)):
            w = multiply(w, step, params.p, params.q)
        return cls(params, w, _normalized=True)

    # -- group structure ----------------------------------------------------

    def __mul__(self, other: "Element") -> "Element":
        if self.params is not other.params:
            raise DomainError("mixed ambient (p,q) parameters")
        return Element(self.params, multiply(self.word, other.word, self.params.p, self.params.q), _normalized=True)

    def inverse(self) -> "Element":
        return Element(self.params, self.word.inverse())

    def __neg__(self):
        return Element(self.params, GroupWord(-self.word.sign, self.word.syllables), _normalized=True)

    def __pow__(self, n: int) -> "Element":
        base = self if n >= 0 else self.inverse()
        out = Element.identity(self.params)
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self, g: "Element") -> "Element":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.params is other.params
            and self.word == other.word
        )

    def __hash__(self):
        return hash((self.params.p, self.params.q, self.word))

    def __repr__(self):
        return f"Element({self.params.p},{self.params.q}: {words.render_word(self.word)})"

    # -- matrices -----------------------------------------------------------

    @property
    def matrix(self) -> Matrix2:
        if self._matrix is None:
            self._matrix = word_to_matrix(self.word, self.params)
        return self._matrix

    @property
    def fmat(self):
        if self._fmat is None:
            self._fmat = word_to_fmat(self.word, self.params)
        return self._fmat

    # -- certified predicates ------------------------------------------------

    def trace_sign(self) -> int:
        t4, err = self.fmat
        t = t4[0] + t4[3]
        s = _decided_sign(t, 2 * err)
        if s is not None:
            return s
        return sign(self.matrix.trace).value

    def asai(self) -> int:
        t4, err = self.fmat
        s = _decided_sign(t4[2], err)
        if s is not None:
            return s
        return asai_sign(self.matrix)

    def classify(self) -> str:
        if not self.word.syllables:
            return "central"
        t4, err = self.fmat
        t = t4[0] + t4[3]
        margin = _MARGIN * 2 * err + 1e-12
        if abs(t) > 2 + margin:
            return "hyperbolic"
        if abs(t) < 2 - margin:
            return "elliptic"
        tr = self.matrix.trace
        s = sign(tr * tr - 4).value
        if s > 0:
            return "hyperbolic"
        if s < 0:
            return "elliptic"
        return "parabolic"


def asai_sign(m: Matrix2) -> int:
    """Asai's sgn: sign of c when c != 0, else sign of a."""
    s = sign(m.c).value
    if s:
        return s
    return sign(m.a).value


def w_from_signs(s1, s2, s12) -> int:
    if (s1, s2, s12) == (1, 1, -1):
        return 1
    if (s1, s2, s12) == (-1, -1, 1):
        return -1
    return 0


def cocycle_W(m1: Matrix2, m2: Matrix2, m12: Matrix2 = None) -> int:
    if m12 is None:
        m12 = m1 * m2
    return w_from_signs(asai_sign(m1), asai_sign(m2), asai_sign(m12))


def cocycle_W_el(x: Element, y: Element, xy: Element = None) -> int:
    if xy is None:
        xy = x * y
    return w_from_signs(x.asai(), y.asai(), xy.asai())


@dataclass(frozen=True)
class LiftedElement:
    el: Element
    level: int


def lift_multiply(x: LiftedElement, y: LiftedElement) -> LiftedElement:
    if x.el.params is not y.el.params:
        raise DomainError("mixed ambient (p,q) parameters")
    prod = x.el * y.el
    return LiftedElement(prod, x.level + y.level + cocycle_W_el(x.el, y.el, prod))


def lift_inverse(x: LiftedElement) -> LiftedElement:
    inv = x.el.inverse()
    return LiftedElement(inv, -x.level - cocycle_W_el(x.el, inv, Element.identity(x.el.params)))


# ---------------------------------------------------------------------------
# primitivity and roots


def is_primitive(el: Element) -> bool:
    cls = el.classify()
    if cls in ("elliptic", "central"):
        raise DomainError(f"is_primitive requires a non-elliptic, non-central element (got {cls})")
    w, _ = cyclic_reduce(el.word, el.params.p, el.params.q)
    return minimal_period(w.syllables) == len(w.syllables)


def primitive_root(el: Element):
    """Primitive non-elliptic root: el = (+/-) root^nu with root normalized.

    Hyperbolic roots are normalized to tr > 2, c > 0; parabolic roots to the
    conjugates of T (rather than T^-1).
    """
    params = el.params
    cls = el.classify()
    if cls in ("elliptic", "central"):
        raise DomainError(f"primitive_root requires a non-elliptic, non-central element (got {cls})")
    w, conj = cyclic_reduce(el.word, params.p, params.q)
    m = minimal_period(w.syllables)
    n = len(w.syllables) // m
    g = Element(params, conj)
    u = Element(params, GroupWord(1, w.syllables[:m]), _normalized=True)
    rho = g * u * g.inverse()
    if rho.trace_sign() < 0:
        rho = -rho
    if cls == "hyperbolic":
        if rho.asai() < 0:
            rho = rho.inverse()
    else:  # parabolic: conjugates of T have c <= 0 (c = -lambda h^2)
        cs = sign(rho.matrix.c).value
        if cs > 0:
            rho = rho.inverse()
        elif cs == 0 and sign(rho.matrix.b).value < 0:
            rho = rho.inverse()
    target = el.matrix
    cand = rho**n
    if cand.matrix == target or (-cand).matrix == target:
        return rho, n
    cand = rho ** (-n)
    if cand.matrix == target or (-cand).matrix == target:
        return rho, -n
    raise InternalInconsistencyError("primitive root does not generate the element")


# ---------------------------------------------------------------------------
# matrix recognition


def _moves(params: GroupParams):
    out = []
    p, q = params.p, params.q
    for e in range(1, p):
        for ee in (e, -e):
            w = normal_form(GroupWord(1, (Syllable("S", ee),)), p, q)
            out.append((w, word_to_fmat(w, params)))
    for e in range(1, q):
        for ee in (e, -e):
            w = normal_form(GroupWord(1, (Syllable("U", ee),)), p, q)
            out.append((w, word_to_fmat(w, params)))
    for k in (1, -1):
        w = Element.translation(params, k).word
        out.append((w, word_to_fmat(w, params)))
    return out


def _coeff_bits(m: Matrix2) -> int:
    bits = 0
    for x in m.entries():
        for row in x.coeffs:
            for c in row:
                if isinstance(c, Fraction):
                    bits += c.numerator.bit_length() + c.denominator.bit_length()
                else:
                    bits += int(c).bit_length()
    return bits


def _near_identity(t4, tol=1e-6):
    a, b, c, d = t4
    if abs(b) < tol and abs(c) < tol:
        if abs(a - 1) < tol and abs(d - 1) < tol:
            return 1
        if abs(a + 1) < tol and abs(d + 1) < tol:
            return -1
    return None


def matrix_to_word(m: Matrix2, params: GroupParams) -> GroupWord:
    """Recognize an exact matrix as a group word.

    Best-first reduction of the point m(2i) toward 2i by left multiplication
    with generator powers; an iteration cap proportional to the coefficient
    bit-size converts non-members into errors.  The returned word is verified
    exactly against m.
    """
    field = params.field
    for x in m.entries():
        if x.field is not field:
            raise DomainError("matrix entries not in the ambient ring")
    if m.det() != field.one:
        raise NotInGroupError("determinant is not 1")
    moves = _moves(params)
    cap = 10 * _coeff_bits(m) + 2000
    start = (m.float_entries(), 0.0)

    def score(fm):
        a, b, c, d = fm[0]
        # image of 2i under the matrix; squared hyperbolic-ish distance to 2i
        den = c * 2j + d
        z = (a * 2j + b) / den
        y = z.imag
        if y <= 0:
            return float("inf")
        return (z.real**2 + (y - 2.0) ** 2) / y

    counter = 0
    heap = [(score(start), 0, start, ())]
    visited = set()
    popped = 0
    while heap and popped < cap:
        _, _, cur, path = heapq.heappop(heap)
        popped += 1
        key = tuple(round(x, 7) for x in cur[0])
        if key in visited:
            continue
        visited.add(key)
        eps = _near_identity(cur[0])
        if eps is not None:
            w = words.IDENTITY
            for idx in path:
                w = w.concat(moves[idx][0].inverse())
            w = normal_form(GroupWord(eps * w.sign, w.syllables), params.p, params.q)
            if word_to_matrix(w, params) == m:
                return w
            # false positive at float precision; keep searching
        for idx, (mw, mf) in enumerate(moves):
            nxt = _fmul(mf, cur)
            s = score(nxt)
            if s != float("inf"):
                counter += 1
                heapq.heappush(heap, (s, counter, nxt, path + (idx,)))
    raise NotInGroupError("not recognized as a group element (iteration cap reached)")
