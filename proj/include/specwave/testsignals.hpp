#pragma once

// Ground-truth signal family and synthetic band-limiting. The family is
// f(t) = sum_{n=1}^{n_terms} (1/n) t^n e^{-n|t|}, evaluated in log space so
// large powers never overflow before the exponential wins.
//
// Signals are stored circularly (index 0 at t = 0); a centered window puts
// negative times in the upper half of the buffer, which keeps spectra of
// even/odd signals purely real/imaginary instead of picking up the
// alternating phase of a half-window shift.

#include <cmath>
#include <cstddef>
#include <vector>

#include "specwave/core.hpp"
#include "specwave/errors.hpp"

namespace specwave {

/// One sample of the exponential-sum family.
inline double exp_sum_value(double t, std::size_t n_terms = 10)
{
    if (t == 0.0)
        return 0.0;
    const double at = std::abs(t);
    const double log_at = std::log(at);
    double acc = 0.0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double dn = static_cast<double>(n);
        const double mag = std::exp(dn * log_at - dn * at - std::log(dn));
        const bool negative = t < 0.0 && (n % 2 == 1);
        acc += negative ? -mag : mag;
    }
    return acc;
}

struct TimeWindow {
    std::size_t n_samples = 0; ///< must be odd (2M+1)
    double t_step = 0.0;
    bool centered = true; ///< [-t_max/2, t_max/2] when true, [0, t_max) otherwise

    /// Physical time of circular index j.
    double time_at(std::size_t j) const
    {
        const std::size_t half = n_samples / 2;
        if (centered && j > half)
            return (static_cast<double>(j) - static_cast<double>(n_samples)) * t_step;
        return static_cast<double>(j) * t_step;
    }

    void validate() const
    {
        if (n_samples < 3 || n_samples % 2 == 0)
            raise(ErrorKind::InvalidInput, "time grid needs an odd sample count >= 3");
        if (!(t_step > 0.0))
            raise(ErrorKind::InvalidInput, "t_step must be positive");
    }
};

inline TimeWindow centered_window(std::size_t n_samples, double span)
{
    TimeWindow w;
    w.n_samples = n_samples;
    w.t_step = span / static_cast<double>(n_samples);
    w.centered = true;
    w.validate();
    return w;
}

inline TimeSignal exp_sum(const TimeWindow& window, std::size_t n_terms = 10)
{
    window.validate();
    if (n_terms < 1)
        raise(ErrorKind::InvalidInput, "n_terms must be >= 1");
    TimeSignal out;
    out.t_step = window.t_step;
    out.samples.resize(window.n_samples);
    for (std::size_t j = 0; j < window.n_samples; ++j)
        out.samples[j] = exp_sum_value(window.time_at(j), n_terms);
    return out;
}

/// Forward DFT of an odd-length signal, dropping the lowest n_missing bins
/// (DC included). The output is exactly what the recovery loop ingests.
inline BandlimitedSpectrum bandlimit(const TimeSignal& sig, std::size_t n_missing)
{
    sig.validate();
    if (sig.samples.size() < 3 || sig.samples.size() % 2 == 0)
        raise(ErrorKind::InvalidInput, "band-limiting expects an odd sample count");
    if (n_missing < 1)
        raise(ErrorKind::InvalidInput, "n_missing must be >= 1 (DC is always missing)");
    const std::size_t m_top = sig.samples.size() / 2;
    if (n_missing >= m_top)
        raise(ErrorKind::InvalidInput, "n_missing leaves fewer than two retained bins");

    FrequencyGrid grid;
    grid.delta_omega =
        2.0 * std::numbers::pi / (sig.t_step * static_cast<double>(sig.samples.size()));
    grid.n_missing = n_missing;
    grid.omega_start = static_cast<double>(n_missing) * grid.delta_omega;
    grid.n_bins = m_top + 1 - n_missing;
    grid.validate();

    const auto full = forward_dft(sig, grid);
    BandlimitedSpectrum out;
    out.grid = grid;
    out.values.assign(full.values.begin() + static_cast<long>(m_top + n_missing),
                      full.values.end());
    return out;
}

} // namespace specwave
