from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datasets import rent_noisy_sqrt
from oracles import enumerate_address_lines, smallest_half_layers
from qextend.errors import DegenerateInputError, DomainError, ShapeError
from qextend.fitting import fit_loglog
from qextend.rent import (
    Crossbar2d,
    DirectControl,
    MultiplexedIo,
    RentFit,
    StackLayer,
    TerminalSeries,
    address_lines,
    check_layer_ordering,
    fit_rent,
    format_model_spec,
    generate_terminal_series,
    min_gate_layers_2d,
    parse_model_spec,
    predict_terminals,
    terminals,
)

DEVICE = StackLayer.DEVICE_GATES

# grid-search optimum (resolution 1e-3) for rent_noisy_sqrt(), from oracles.grid_search_power_law
NOISY_SQRT_GRID_P = 0.502


def series_of(points, layer=DEVICE):
    return TerminalSeries(layer, tuple(points))


def fit_of(p):
    return RentFit(1.0, p, 1.0)


class TestTerminals:
    def test_direct_control(self):
        assert terminals(DirectControl(2), 10) == 20

    def test_crossbar_million(self):
        assert terminals(Crossbar2d(0.5), 10**6) == 1000

    @pytest.mark.parametrize("t", [0.5, 1.0, 7.25])
    def test_single_component(self, t):
        assert terminals(DirectControl(t), 1) == t

    def test_crossbar_non_square_names_neighbours(self):
        with pytest.raises(ShapeError, match=r"between 9 \(3x3\) and 16 \(4x4\)"):
            terminals(Crossbar2d(1), 10)

    def test_multiplexed_matches_enumeration(self):
        model = MultiplexedIo(DirectControl(1), 2)
        for g in (1, 2, 3, 8, 9, 100, 1024, 1025):
            assert terminals(model, g) == enumerate_address_lines(g, 2) + 1

    @pytest.mark.parametrize("base", [2, 3, 5, 10])
    def test_address_lines_enumeration(self, base):
        for n in range(1, 130):
            assert address_lines(n, base) == enumerate_address_lines(n, base)

    def test_model_validation(self):
        with pytest.raises(DomainError):
            DirectControl(0)
        with pytest.raises(DomainError):
            Crossbar2d(-1)
        with pytest.raises(DomainError):
            MultiplexedIo(DirectControl(1), 1)
        with pytest.raises(DomainError):
            MultiplexedIo(MultiplexedIo(DirectControl(1)), 2)

    def test_bad_g(self):
        with pytest.raises(DomainError):
            terminals(DirectControl(1), 0)


class TestGateLayers:
    def test_ten_thousand(self):
        assert min_gate_layers_2d(10_000) == 50

    def test_one(self):
        assert min_gate_layers_2d(1) == 1

    def test_ten_against_search(self):
        assert smallest_half_layers(10) == 2
        assert min_gate_layers_2d(10) == 2

    def test_search_oracle_range(self):
        for g in range(1, 3000):
            assert min_gate_layers_2d(g) == smallest_half_layers(g)

    @given(st.integers(min_value=1, max_value=10**9))
    def test_perfect_squares(self, n):
        assert min_gate_layers_2d(n * n) == math.ceil(n / 2)

    @given(st.integers(min_value=1, max_value=10**30))
    def test_matches_float_formula_where_exact(self, g):
        k = min_gate_layers_2d(g)
        assert (2 * k) ** 2 >= g > (2 * k - 2) ** 2


class TestFit:
    def test_direct_exact(self):
        fit = fit_rent(series_of((g, 2.0 * g) for g in (1, 10, 100, 1000)))
        assert fit.t_coeff == pytest.approx(2, abs=1e-9)
        assert fit.p_exponent == pytest.approx(1, abs=1e-9)
        assert fit.r_squared == pytest.approx(1, abs=1e-12)

    def test_x86_exponent(self):
        gs = [10**k for k in range(2, 7)]
        fit = fit_rent(series_of((g, g**0.36) for g in gs))
        assert fit.p_exponent == pytest.approx(0.36, abs=1e-9)

    def test_noisy_against_grid_oracle(self):
        g, t = rent_noisy_sqrt()
        fit = fit_rent(series_of(zip(g, t)))
        assert abs(fit.p_exponent - NOISY_SQRT_GRID_P) <= 0.03
        assert 0 < fit.r_squared < 1

    def test_degenerate(self):
        with pytest.raises(DegenerateInputError):
            fit_loglog([5, 5, 5], [1, 2, 3])

    def test_series_validation(self):
        with pytest.raises(DomainError):
            series_of([(1, 2.0)])
        with pytest.raises(DomainError):
            series_of([(2, 2.0), (2, 3.0)])
        with pytest.raises(DomainError):
            series_of([(1, 2.0), (4, 0.0)])
        with pytest.raises(DomainError):
            series_of([(4, 2.0), (1, 3.0)])

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(min_value=0.1, max_value=10),
        # below ~1e-6 the rounding of t*g**p already swamps the g-dependence
        st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1.5)),
        st.lists(st.integers(min_value=1, max_value=10**7), min_size=3, max_size=12, unique=True),
    )
    def test_fit_recovery(self, t, p, gs):
        gs = sorted(gs)
        fit = fit_rent(series_of((g, t * g**p) for g in gs))
        assert fit.p_exponent == pytest.approx(p, rel=1e-9, abs=1e-12)
        assert fit.t_coeff == pytest.approx(t, rel=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(min_value=1e-3, max_value=1e3), st.integers(min_value=0, max_value=2**32))
    def test_scale_invariance(self, c, seed):
        rng = np.random.default_rng(seed)
        gs = sorted(set(rng.integers(1, 10**6, size=8).tolist()))
        ts = (3.0 * np.array(gs, dtype=float) ** 0.6 * np.exp(rng.normal(0, 0.2, len(gs)))).tolist()
        base = fit_rent(series_of(zip(gs, ts)))
        scaled = fit_rent(series_of(zip(gs, [c * t for t in ts])))
        assert scaled.p_exponent == pytest.approx(base.p_exponent, abs=1e-12)
        assert scaled.t_coeff == pytest.approx(c * base.t_coeff, rel=1e-9)


class TestPredict:
    def test_crossbar_claim(self):
        assert predict_terminals(RentFit(1.0, 0.5, 1.0), 10**6) == 1000

    @pytest.mark.parametrize("p", [0.0, 0.3, 1.0, 2.0])
    def test_g_one_isolates_t(self, p):
        assert predict_terminals(RentFit(5.0, p, 1.0), 1) == 5

    def test_linear(self):
        assert predict_terminals(RentFit(2.0, 1.0, 1.0), 137) == 274


class TestOrdering:
    def test_equal_exponents_ordered(self):
        fits = {layer: fit_of(1.0) for layer in StackLayer}
        assert check_layer_ordering(fits).ordered

    def test_strictly_decreasing(self):
        fits = {DEVICE: fit_of(0.5), StackLayer.CHIP_IO: fit_of(0.5), StackLayer.ROOM_TEMPERATURE: fit_of(0.3)}
        assert check_layer_ordering(fits).ordered

    def test_violation_gap(self):
        report = check_layer_ordering({DEVICE: fit_of(0.5), StackLayer.CHIP_IO: fit_of(0.7)})
        assert not report.ordered
        (v,) = report.violations
        assert (v.lower, v.upper) == (DEVICE, StackLayer.CHIP_IO)
        assert v.gap == pytest.approx(0.2)

    def test_within_tolerance(self):
        fits = {DEVICE: fit_of(0.5), StackLayer.ROOM_TEMPERATURE: fit_of(0.5 + 5e-7)}
        assert check_layer_ordering(fits).ordered
        assert not check_layer_ordering(fits, tolerance=1e-7).ordered

    def test_needs_two_layers(self):
        with pytest.raises(DomainError):
            check_layer_ordering({DEVICE: fit_of(1.0)})

    def test_layer_parse(self):
        assert StackLayer.parse("IO") is StackLayer.CHIP_IO
        assert StackLayer.parse("RoomTemperature") is StackLayer.ROOM_TEMPERATURE
        with pytest.raises(DomainError):
            StackLayer.parse("cryo")


class TestGenerate:
    def test_direct(self):
        s = generate_terminal_series(DirectControl(2), DEVICE, [1, 2, 4])
        assert s.points == ((1, 2.0), (2, 4.0), (4, 8.0))

    def test_crossbar(self):
        s = generate_terminal_series(Crossbar2d(1), DEVICE, [4, 16, 64])
        assert s.points == ((4, 4.0), (16, 8.0), (64, 16.0))

    def test_multiplexed(self):
        s = generate_terminal_series(MultiplexedIo(DirectControl(1), 2), StackLayer.CHIP_IO, [8, 1024])
        assert s.points == ((8, 4.0), (1024, 11.0))
        assert [enumerate_address_lines(g, 2) + 1 for g in (8, 1024)] == [4, 11]

    def test_error_names_g(self):
        with pytest.raises(ShapeError, match="g=20"):
            generate_terminal_series(Crossbar2d(1), DEVICE, [4, 20])

    def test_must_increase(self):
        with pytest.raises(DomainError):
            generate_terminal_series(DirectControl(1), DEVICE, [4, 4])

    @given(st.floats(min_value=0.01, max_value=100), st.integers(min_value=1, max_value=1000), st.integers(2, 6))
    def test_direct_exponent(self, t, g0, n):
        gs = [g0 * 10**k for k in range(n)]
        assert fit_rent(generate_terminal_series(DirectControl(t), DEVICE, gs)).p_exponent == pytest.approx(
            1.0, abs=1e-9
        )

    @given(st.floats(min_value=0.01, max_value=100), st.integers(min_value=1, max_value=100), st.integers(2, 5))
    def test_crossbar_exponent(self, lines, n0, n):
        gs = [(n0 * 10**k) ** 2 for k in range(n)]
        assert fit_rent(generate_terminal_series(Crossbar2d(lines), DEVICE, gs)).p_exponent == pytest.approx(
            0.5, abs=1e-9
        )

    @settings(max_examples=150, deadline=None)
    @given(
        st.floats(min_value=1.0, max_value=10.0),
        st.integers(min_value=2, max_value=16),
        st.floats(min_value=3.0, max_value=8.0),
        st.floats(min_value=4.0, max_value=8.0),
    )
    def test_multiplexed_exponent_small(self, t, base, lo_exp, decades):
        # logarithmic growth bounds the fitted power once g >= 1e3
        gs = sorted(set(np.round(np.geomspace(10**lo_exp, 10 ** (lo_exp + decades), 25)).astype(int).tolist()))
        fit = fit_rent(generate_terminal_series(MultiplexedIo(DirectControl(t), base), StackLayer.CHIP_IO, gs))
        assert fit.p_exponent < 0.1

    def test_batch_equals_sequential(self):
        model = MultiplexedIo(Crossbar2d(0.5), 3)
        gs = [n * n for n in range(1, 200, 7)]
        s = generate_terminal_series(model, StackLayer.CHIP_IO, gs)
        assert s.points == tuple((g, terminals(model, g)) for g in gs)


class TestModelSpec:
    @pytest.mark.parametrize(
        "text, model",
        [
            ("direct:2", DirectControl(2.0)),
            ("crossbar:0.5", Crossbar2d(0.5)),
            ("mux:2:direct:1", MultiplexedIo(DirectControl(1.0), 2)),
            ("mux:16:crossbar:0.5", MultiplexedIo(Crossbar2d(0.5), 16)),
        ],
    )
    def test_round_trip(self, text, model):
        assert parse_model_spec(text) == model
        assert parse_model_spec(format_model_spec(model)) == model

    @pytest.mark.parametrize("text", ["", "direct", "direct:x", "mux:2:mux:2:direct:1", "ring:3", "mux:1:direct:1"])
    def test_rejects(self, text):
        with pytest.raises(DomainError):
            parse_model_spec(text)
