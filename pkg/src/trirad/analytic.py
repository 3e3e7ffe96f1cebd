"""Floating-point verification layer and class enumeration.

The (2,3) verification uses the explicit q-expansions
    log Delta(z) = 2 pi i z - 24 sum_n sigma_{-1}(n) q^n
    E2(z) = 1 - 24 sum_n sigma_1(n) q^n,   E2*(z) = E2(z) - 3/(pi Im z)
to check the cycle-integral and winding-number formulas against the exact psi.
Class enumeration and the arctan distribution statistics work for any (p,q).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from trirad.errors import DomainError, NumericError, PreconditionError
from trirad.group import Element, GroupParams, is_primitive
from trirad.symbols import psi, rademacher_Psi
from trirad.words import GroupWord, Syllable, minimal_period, render_word


def parallel_map(fn, items, max_workers: Optional[int] = None):
    """Parallel map with deterministic (input-order) output."""
    items = list(items)
    if len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# geodesic data


@dataclass(frozen=True)
class GeodesicData:
    w: float
    w_prime: float
    xi: float
    M: Tuple[Tuple[float, float], Tuple[float, float]]
    length: float


def _check_23_hyperbolic_rep(el: Element, who: str):
    if (el.params.p, el.params.q) != (2, 3):
        raise DomainError(f"{who} is implemented for (p,q) = (2,3) only")
    _check_hyperbolic_rep(el, who)


def _check_hyperbolic_rep(el: Element, who: str):
    if el.classify() != "hyperbolic" or el.trace_sign() <= 0:
        raise PreconditionError(f"{who} requires a hyperbolic element with tr > 2")
    if el.asai() <= 0:
        raise PreconditionError(f"{who} requires c > 0")


def geodesic_data(el: Element) -> GeodesicData:
    """Fixed points, scaling matrix and geodesic length of a tr>2, c>0 element."""
    _check_hyperbolic_rep(el, "geodesic_data")
    a, b, c, d = el.matrix.float_entries()
    t = a + d
    disc = math.sqrt(t * t - 4.0)
    w = ((a - d) + disc) / (2.0 * c)
    w_prime = ((a - d) - disc) / (2.0 * c)
    xi = c * w + d
    s = math.sqrt(w - w_prime)
    M = ((w / s, w_prime / s), (1.0 / s, 1.0 / s))
    return GeodesicData(w=w, w_prime=w_prime, xi=xi, M=M, length=2.0 * math.log(xi))


def _moebius(M, z):
    (A, B), (C, D) = M
    return (A * z + B) / (C * z + D)


# ---------------------------------------------------------------------------
# (2,3) q-expansions


@lru_cache(maxsize=8)
def _sigma_tables(N: int):
    """sigma_1(n) and sigma_{-1}(n) = sigma_1(n)/n for n <= N."""
    s1 = np.zeros(N + 1)
    for d in range(1, N + 1):
        s1[d::d] += d
    n = np.arange(N + 1, dtype=float)
    n[0] = 1.0
    return s1, s1 / n


def log_delta_23(z: complex, N: int = 200) -> complex:
    """Truncated log Delta; the tail is O(e^(-2 pi N Im z))."""
    if z.imag <= 0:
        raise DomainError("log_delta_23 requires Im z > 0")
    if N < 1:
        raise DomainError("truncation N must be >= 1")
    _, sm1 = _sigma_tables(N)
    qq = cmath.exp(2j * cmath.pi * z)
    total = 0.0 + 0.0j
    qn = 1.0 + 0.0j
    for n in range(1, N + 1):
        qn *= qq
        total += sm1[n] * qn
    return 2j * cmath.pi * z - 24.0 * total


def eisenstein_E2(z: complex, N: int = 200) -> complex:
    s1, _ = _sigma_tables(N)
    qq = cmath.exp(2j * cmath.pi * z)
    total = 0.0 + 0.0j
    qn = 1.0 + 0.0j
    for n in range(1, N + 1):
        qn *= qq
        total += s1[n] * qn
    return 1.0 - 24.0 * total


def _truncation_for(y_min: float, tol: float) -> int:
    N = int(math.log(1e3 / tol) / (2.0 * math.pi * y_min)) + 10
    if N > 200000:
        raise NumericError("geodesic runs too close to the real axis; series truncation not feasible")
    return N


@dataclass(frozen=True)
class CycleIntegralResult:
    value: float
    psi: int
    residual: float


def cycle_integral_23(el: Element, tol: float = 1e-6) -> CycleIntegralResult:
    """Quadrature of E2* along the closed geodesic; should return psi (r=1).

    The non-holomorphic term uses the closed form
    integral dz/Im z = -2i log j(gamma, M i); only E2 is integrated numerically.
    """
    _check_23_hyperbolic_rep(el, "cycle_integral_23")
    if not is_primitive(el):
        raise PreconditionError("cycle_integral_23 requires a primitive element")
    gd = geodesic_data(el)
    w, wp, xi = gd.w, gd.w_prime, gd.xi
    span = w - wp
    y_top = xi * xi
    y_min = min(span / 2.0, y_top * span / (1.0 + y_top * y_top))
    N = _truncation_for(y_min, tol)

    def holo(y, part):
        z = complex(w * 1j * y + wp) / complex(1j * y + 1.0)
        dz = 1j * span / complex(1j * y + 1.0) ** 2
        val = eisenstein_E2(z, N) * dz
        return val.real if part == 0 else val.imag

    re, re_err = quad(holo, 1.0, y_top, args=(0,), epsabs=tol / 20, epsrel=0, limit=400)
    im, im_err = quad(holo, 1.0, y_top, args=(1,), epsabs=tol / 20, epsrel=0, limit=400)
    if re_err + im_err > tol / 2:
        raise NumericError("quadrature did not converge within the requested tolerance")
    # j(gamma, M i) = xi^{-1} (1 + i xi^2)/(1 + i)
    logj = cmath.log((1.0 + 1j * y_top) / (1.0 + 1j)) - math.log(xi)
    total = complex(re, im) + (6j / math.pi) * logj
    if abs(total.imag) > 100 * tol:
        raise NumericError("cycle integral has a non-negligible imaginary part")
    value = total.real
    p = psi(el)
    return CycleIntegralResult(value=value, psi=p, residual=abs(value - p))


def winding_number_23(el: Element, samples: Optional[int] = None) -> int:
    """Winding index of j(g,i)^(-12) Delta(g i) along the geodesic-flow loop."""
    _check_23_hyperbolic_rep(el, "winding_number_23")
    if not is_primitive(el):
        raise PreconditionError("winding_number_23 requires a primitive element")
    winding, _ = winding_residual_23(el, samples)
    return winding


def winding_residual_23(el: Element, samples: Optional[int] = None):
    gd = geodesic_data(el)
    w, wp, xi = gd.w, gd.w_prime, gd.xi
    span = w - wp
    y_top = xi * xi
    y_min = min(span / 2.0, y_top * span / (1.0 + y_top * y_top))
    N = _truncation_for(y_min, 1e-8)
    s1, sm1 = _sigma_tables(N)

    def phases(n_samples):
        t = np.linspace(0.0, math.log(xi), n_samples)
        y = np.exp(2.0 * t)
        z = (w * 1j * y + wp) / (1j * y + 1.0)
        qq = np.exp(2j * np.pi * z)
        total = np.zeros_like(z)
        qn = np.ones_like(z)
        for n in range(1, N + 1):
            qn = qn * qq
            total += sm1[n] * qn
        logdelta = 2j * np.pi * z - 24.0 * total
        # j(g_t, i) = (e^t i + e^-t)/sqrt(span); constant |.| factors do not move the phase
        logj = np.log(np.exp(t) * 1j + np.exp(-t))
        return np.imag(logdelta) - 12.0 * np.imag(logj)

    n_samples = samples or 1024
    explicit = samples is not None
    while True:
        ph = phases(n_samples)
        steps = np.diff(ph)
        # unwrap: each step should already be small
        wrapped = (steps + np.pi) % (2 * np.pi) - np.pi
        max_step = float(np.max(np.abs(wrapped))) if len(wrapped) else 0.0
        if max_step >= np.pi * 0.5:
            if explicit or n_samples >= (1 << 18):
                raise NumericError("undersampled winding path: phase step >= pi")
            n_samples *= 2
            continue
        total = float(np.sum(wrapped))
        winding = round(total / (2 * np.pi))
        residual = abs(total / (2 * np.pi) - winding)
        return winding, residual


# ---------------------------------------------------------------------------
# class enumeration and distribution statistics


@dataclass(frozen=True)
class ClassEntry:
    word: GroupWord
    trace: float
    psi: int
    Psi: int
    length: float


@dataclass(frozen=True)
class ClassTable:
    p: int
    q: int
    entries: Tuple[ClassEntry, ...]

    def to_rows(self):
        return [
            {
                "word": render_word(e.word),
                "trace_numeric": e.trace,
                "psi": e.psi,
                "Psi": e.Psi,
                "length": e.length,
            }
            for e in self.entries
        ]


def _even_rotation_key(sylls):
    k = len(sylls)
    return min(tuple(sylls[i:] + sylls[:i]) for i in range(0, k, 2))


def enumerate_classes(params: GroupParams, max_syllables: int, max_workers=None) -> ClassTable:
    """Primitive hyperbolic classes with cyclic words up to the syllable bound."""
    if max_syllables < 2:
        raise DomainError("max_syllables must be >= 2")
    p, q = params.p, params.q
    seen = set()
    reps: List[GroupWord] = []
    for pairs in range(1, max_syllables // 2 + 1):
        stack = [()]
        for _ in range(pairs):
            stack = [
                s + (Syllable("S", a), Syllable("U", b))
                for s in stack
                for a in range(1, p)
                for b in range(1, q)
            ]
        for sylls in stack:
            key = _even_rotation_key(sylls)
            if key in seen:
                continue
            seen.add(key)
            if minimal_period(sylls) != len(sylls):
                continue
            reps.append(GroupWord(1, key))

    def build(word):
        el = Element(params, word, _normalized=True)
        if el.classify() != "hyperbolic":
            return None
        t = el.fmat[0][0] + el.fmat[0][3]
        at = abs(t)
        xi = (at + math.sqrt(at * at - 4.0)) / 2.0
        return ClassEntry(
            word=word,
            trace=t,
            psi=psi(el),
            Psi=rademacher_Psi(el),
            length=2.0 * math.log(xi),
        )

    entries = [e for e in parallel_map(build, reps, max_workers=max_workers) if e is not None]
    return ClassTable(p=p, q=q, entries=tuple(entries))


def enumerate_classes_by_trace(params: GroupParams, max_trace: int, max_workers=None) -> ClassTable:
    """All primitive hyperbolic (2,3) classes with |trace| <= max_trace.

    This is the length-ordered population of the arctan distribution law
    (l <= y is the same as trace <= 2 cosh(y/2)).  Classes are enumerated via
    the continued-fraction coding: mod center, S U = -L^-1 and S U^2 = -R^-1
    with L, R the lower/upper unipotent integer matrices, so trace-bounded
    classes correspond to cyclic binary L/R words, which have nonnegative
    entries and monotone trace growth (enabling exact pruning).
    """
    if (params.p, params.q) != (2, 3):
        raise DomainError("trace-bounded enumeration is implemented for (p,q) = (2,3) only")
    if max_trace < 3:
        raise DomainError("max_trace must be >= 3")
    X = max_trace
    seen = set()
    reps: List[Tuple[int, ...]] = []
    # iterative DFS over L/R sequences; state: (sequence, matrix, has_L, has_R)
    stack = [((), (1, 0, 0, 1), False, False)]
    while stack:
        seq, (a, b, c, d), has_l, has_r = stack.pop()
        if has_l and has_r and 2 < a + d <= X:
            k = len(seq)
            key = min(seq[i:] + seq[:i] for i in range(k))
            if key not in seen:
                seen.add(key)
                if minimal_period(key) == k:
                    reps.append(key)
        if a + d > X or len(seq) > 4 * X:
            continue
        stack.append((seq + (1,), (a + b, b, c + d, d), True, has_r))
        stack.append((seq + (2,), (a, a + b, c, c + d), has_l, True))

    def build(seq):
        sylls = []
        for e in seq:
            sylls.append(Syllable("S", 1))
            sylls.append(Syllable("U", e))
        word = GroupWord(1, tuple(sylls))
        el = Element(params, word, _normalized=True)
        t = el.fmat[0][0] + el.fmat[0][3]
        at = abs(t)
        xi = (at + math.sqrt(at * at - 4.0)) / 2.0
        return ClassEntry(word=word, trace=t, psi=psi(el), Psi=rademacher_Psi(el), length=2.0 * math.log(xi))

    reps.sort()
    entries = parallel_map(build, reps, max_workers=max_workers)
    return ClassTable(p=2, q=3, entries=tuple(entries))


@dataclass(frozen=True)
class DistributionStats:
    count: int
    fraction: float
    reference: float
    ks_distance: float


def distribution_stats(table: ClassTable, a: float, b: float) -> DistributionStats:
    """Empirical fraction of classes with a <= Psi/l <= b vs the arctan law."""
    if not table.entries:
        raise DomainError("empty class table")
    pq = table.p * table.q
    ratios = sorted(e.Psi / e.length for e in table.entries)
    n = len(ratios)
    fraction = sum(1 for x in ratios if a <= x <= b) / n

    def ref_cdf(x):
        return 0.5 + math.atan(2 * math.pi * x / pq) / math.pi

    reference = (math.atan(2 * math.pi * b / pq) - math.atan(2 * math.pi * a / pq)) / math.pi
    ks = 0.0
    for i, x in enumerate(ratios):
        fx = ref_cdf(x)
        ks = max(ks, abs((i + 1) / n - fx), abs(i / n - fx))
    return DistributionStats(count=n, fraction=fraction, reference=reference, ks_distance=ks)
