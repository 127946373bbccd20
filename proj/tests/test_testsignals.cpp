#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace specwave;
using Catch::Approx;

TEST_CASE("exponential sum basics")
{
    SECTION("f(0) = 0 for every term count")
    {
        for (std::size_t nt : {1u, 2u, 5u, 10u})
            REQUIRE(exp_sum_value(0.0, nt) == 0.0);
    }
    SECTION("single term is t e^{-|t|}, an odd function")
    {
        for (double t : {0.1, 0.7, 2.5, 9.0}) {
            REQUIRE(exp_sum_value(t, 1) == Approx(t * std::exp(-t)).epsilon(1e-12));
            REQUIRE(exp_sum_value(-t, 1) == Approx(-exp_sum_value(t, 1)).epsilon(1e-12));
        }
        const TimeWindow w = centered_window(257, 24.0);
        const TimeSignal sig = exp_sum(w, 1);
        REQUIRE(std::abs(mean(sig.samples)) < 1e-12);
    }
    SECTION("matches direct evaluation at moderate arguments")
    {
        for (double t : {-3.0, -0.5, 0.25, 1.0, 4.0}) {
            double direct = 0.0;
            for (int n = 1; n <= 10; ++n)
                direct += std::pow(t, n) * std::exp(-n * std::abs(t)) / n;
            REQUIRE(exp_sum_value(t, 10) == Approx(direct).epsilon(1e-12));
        }
    }
    SECTION("bounded below one on |t| <= 10 for the default family")
    {
        double mx = 0.0;
        for (double t = -10.0; t <= 10.0; t += 1e-3)
            mx = std::max(mx, std::abs(exp_sum_value(t, 10)));
        REQUIRE(std::isfinite(mx));
        REQUIRE(mx < 1.0);
    }
    SECTION("log-space evaluation survives large t and high n")
    {
        REQUIRE(std::isfinite(exp_sum_value(300.0, 10)));
        REQUIRE(exp_sum_value(300.0, 10) == Approx(0.0).margin(1e-100));
    }
}

TEST_CASE("window mean matches the adaptive-quadrature oracle")
{
    const double span = 30.0;
    const TimeWindow w = centered_window(1025, span);
    const TimeSignal sig = exp_sum(w, 10);
    const double integral = testsupport::adaptive_simpson(
        [](double t) { return exp_sum_value(t, 10); }, -span / 2.0, span / 2.0, 1e-10);
    REQUIRE(mean(sig.samples) == Approx(integral / span).margin(1e-6));
}

TEST_CASE("bandlimit drops exactly the lowest bins")
{
    SECTION("constant signal concentrates in the dropped DC bin")
    {
        TimeSignal sig;
        sig.t_step = 0.1;
        sig.samples.assign(65, 3.0);
        const auto bl = bandlimit(sig, 1);
        for (const auto& v : bl.values)
            REQUIRE(std::abs(v) < 1e-12);
    }
    SECTION("re-inserting the dropped DC reproduces the signal")
    {
        const TimeWindow w = centered_window(129, 20.0);
        const TimeSignal sig = exp_sum(w, 4);
        const auto bl = bandlimit(sig, 1);
        const auto full = forward_dft(sig, bl.grid);
        const double dc_true = full.values[full.dc_slot()].real();
        const auto rebuilt = inverse_dft(hermitian_extend(bl, dc_true));
        double scale = max_abs(sig.samples);
        for (std::size_t j = 0; j < sig.samples.size(); ++j)
            REQUIRE(std::abs(rebuilt.samples[j] - sig.samples[j]) < 1e-9 * scale);
    }
    SECTION("multi-bin gaps round trip when all bins are re-inserted")
    {
        const TimeWindow w = centered_window(129, 20.0);
        const TimeSignal sig = exp_sum(w, 4);
        const auto bl = bandlimit(sig, 3);
        REQUIRE(bl.grid.n_missing == 3);
        const auto full = forward_dft(sig, bl.grid);
        auto rebuilt_spec = hermitian_extend(bl, full.values[full.dc_slot()].real());
        const std::size_t m = rebuilt_spec.dc_slot();
        for (std::size_t i = 1; i < 3; ++i) {
            rebuilt_spec.values[m + i] = full.values[m + i];
            rebuilt_spec.values[m - i] = full.values[m - i];
        }
        const auto rebuilt = inverse_dft(rebuilt_spec);
        for (std::size_t j = 0; j < sig.samples.size(); ++j)
            REQUIRE(std::abs(rebuilt.samples[j] - sig.samples[j]) < 1e-9);
    }
    SECTION("degenerate inputs are rejected")
    {
        TimeSignal sig;
        sig.t_step = 0.1;
        sig.samples.assign(64, 1.0); // even length
        REQUIRE_THROWS_AS(bandlimit(sig, 1), Error);
        sig.samples.assign(9, 1.0);
        REQUIRE_THROWS_AS(bandlimit(sig, 0), Error);
        REQUIRE_THROWS_AS(bandlimit(sig, 4), Error); // top index is 4
    }
}
