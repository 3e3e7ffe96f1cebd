"""Numeric verification layer: q-series, cycle integrals, windings, statistics."""

import cmath
import math

import pytest

from trirad.analytic import (
    ClassTable,
    cycle_integral_23,
    distribution_stats,
    eisenstein_E2,
    enumerate_classes,
    enumerate_classes_by_trace,
    geodesic_data,
    log_delta_23,
    parallel_map,
    winding_number_23,
    winding_residual_23,
)
from trirad.errors import DomainError, NumericError, PreconditionError
from trirad.group import Element, get_params
from trirad.symbols import ghys_coding_23, psi, rademacher_Psi
from trirad.words import parse_word, render_word


def el(params, text):
    return Element(params, parse_word(text))


GOLDEN = (1 + math.sqrt(5)) / 2


def test_geodesic_data_golden(P23):
    x = el(P23, "U * S * U^2 * S")  # matrix (2,1;1,1)
    gd = geodesic_data(x)
    assert abs(gd.w - GOLDEN) < 1e-12
    assert abs(gd.w_prime - (1 - GOLDEN)) < 1e-12
    assert abs(gd.xi - (GOLDEN + 1)) < 1e-12
    assert abs(gd.length - 2 * math.log(GOLDEN + 1)) < 1e-12
    # the scaling matrix sends 0, infinity to the fixed points
    (A, B), (C, D) = gd.M
    assert abs(B / D - gd.w_prime) < 1e-12
    assert abs(A / C - gd.w) < 1e-12
    assert abs((A * D - B * C) - 1) < 1e-12


def test_geodesic_length_additivity(P23):
    x = el(P23, "U * S * U^2 * S")
    assert abs(geodesic_data(x**3).length - 3 * geodesic_data(x).length) < 1e-9


def test_geodesic_preconditions(P23):
    with pytest.raises(PreconditionError):
        geodesic_data(el(P23, "S"))
    with pytest.raises(PreconditionError):
        geodesic_data(-el(P23, "U * S * U^2 * S"))
    with pytest.raises(PreconditionError):
        geodesic_data(el(P23, "S * U * S * U^2"))  # c < 0 representative


def test_log_delta_periodicity():
    z = 0.3 + 1.1j
    assert abs(log_delta_23(z + 1) - log_delta_23(z) - 2j * math.pi) < 1e-12


def test_log_delta_product_formula():
    # Delta = q prod (1-q^n)^24: compare against the direct product
    z = 0.17 + 0.9j
    qq = cmath.exp(2j * cmath.pi * z)
    direct = 2j * cmath.pi * z + 24 * sum(cmath.log(1 - qq**n) for n in range(1, 60))
    assert abs(log_delta_23(z) - direct) < 1e-10


def test_log_delta_modularity_gap():
    # log Delta(-1/z) - log Delta(z) = 12 log(z/i) with the principal branch
    z = 2j
    gap = log_delta_23(-1 / z) - log_delta_23(z) - 12 * cmath.log(z / 1j)
    assert abs(gap) < 1e-10
    with pytest.raises(DomainError):
        log_delta_23(1.0 + 0j)


def test_eisenstein_E2_weight_two_defect():
    # E2(-1/z) = z^2 E2(z) + 12 z / (2 pi i)
    z = 0.1 + 1.3j
    lhs = eisenstein_E2(-1 / z)
    rhs = z * z * eisenstein_E2(z) + 12 * z / (2j * math.pi)
    assert abs(lhs - rhs) < 1e-9


def test_cycle_integral_examples(P23):
    x = el(P23, "U * S * U^2 * S")
    res = cycle_integral_23(x)
    assert res.psi == 0
    assert res.residual < 1e-5
    y = el(P23, "- U * S * U^2 * S * U^2 * S")  # matrix (3,1;2,1), psi = -1
    res = cycle_integral_23(y)
    assert res.psi == psi(y) == -1
    assert res.residual < 1e-5


def test_cycle_integral_preconditions(P23):
    with pytest.raises(PreconditionError):
        cycle_integral_23(Element.translation(P23, 3))
    x = el(P23, "U * S * U^2 * S")
    with pytest.raises(PreconditionError):
        cycle_integral_23(x**2)
    with pytest.raises(DomainError):
        cycle_integral_23(el(get_params(2, 5), "U * S * U^3"))


def test_winding_examples(P23):
    x = el(P23, "U * S * U^2 * S")
    assert winding_number_23(x) == 0
    y = el(P23, "- U * S * U^2 * S * U^2 * S")
    assert winding_number_23(y) == psi(y) == -1
    _, residual = winding_residual_23(y)
    assert residual < 0.01


def test_winding_explicit_undersampling(P23):
    y = el(P23, "- U * S * U^2 * S * U^2 * S")
    with pytest.raises(NumericError):
        winding_number_23(y, samples=4)


def test_enumerate_classes_23(P23):
    table = enumerate_classes(P23, 6)
    words = {render_word(e.word) for e in table.entries}
    assert "S * U * S * U^2" in words  # the golden-ratio class
    assert len(table.entries) == 3
    table8 = enumerate_classes(P23, 8)
    assert len(table8.entries) == 6
    for e in table8.entries:
        x = Element(P23, e.word, _normalized=True)
        assert x.classify() == "hyperbolic"
        assert e.psi == psi(x) and e.Psi == rademacher_Psi(x)
        assert abs(e.length - 2 * math.acosh(abs(e.trace) / 2)) < 1e-9


def test_enumerate_classes_no_duplicates(P34):
    table = enumerate_classes(P34, 6)
    reps = set()
    for e in table.entries:
        from trirad.words import cyclic_key

        key = cyclic_key(e.word.syllables)
        assert key not in reps
        reps.add(key)
    assert len(table.entries) > 20


def test_enumeration_matches_ghys(P23):
    for e in enumerate_classes(P23, 8).entries:
        x = Element(P23, e.word, _normalized=True)
        assert ghys_coding_23(x).total == e.Psi


def test_enumerate_by_trace(P23):
    table = enumerate_classes_by_trace(P23, 12)
    assert all(2 < abs(e.trace) <= 12.5 for e in table.entries)
    # contains exactly the syllable-short classes of small trace
    small = {render_word(e.word) for e in enumerate_classes(P23, 4).entries}
    got = {render_word(e.word) for e in table.entries}
    assert small <= got
    with pytest.raises(DomainError):
        enumerate_classes_by_trace(get_params(2, 5), 12)
    with pytest.raises(DomainError):
        enumerate_classes_by_trace(P23, 2)


def test_trace_ball_is_complete(P23):
    # every syllable-bounded class with trace below the cutoff shows up
    X = 40
    ball = {render_word(e.word) for e in enumerate_classes_by_trace(P23, X).entries}
    for e in enumerate_classes(P23, 12).entries:
        if abs(e.trace) <= X - 0.5:
            assert render_word(e.word) in ball, e


def test_distribution_stats(P23):
    table = enumerate_classes(P23, 10)
    st = distribution_stats(table, -math.inf, math.inf)
    assert st.fraction == 1.0
    assert abs(st.reference - 1.0) < 1e-12
    st = distribution_stats(table, 0.0, math.inf)
    assert abs(st.reference - 0.5) < 1e-12
    assert 0.0 <= st.ks_distance <= 1.0
    with pytest.raises(DomainError):
        distribution_stats(ClassTable(2, 3, ()), 0, 1)


def test_parallel_map_is_deterministic():
    items = list(range(200))
    assert parallel_map(lambda x: x * x, items) == [x * x for x in items]
    assert parallel_map(lambda x: -x, [7]) == [-7]
    assert parallel_map(lambda x: x, []) == []
