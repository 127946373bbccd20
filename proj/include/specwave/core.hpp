#pragma once

// Grid, spectrum and signal value types shared by every other header, plus
// the Hermitian extension, the physically scaled DFT pair and error metrics.
//
// Conventions, fixed across the library:
//  * A band-limited input holds N retained complex samples at
//    w_i = w_start + (i-1)*dw, with k = n_missing bins (DC included)
//    absent below w_start = k*dw.
//  * Two-sided spectra are stored in natural order
//    [X(-w_M) .. X(-w_1), X(0), X(w_1) .. X(w_M)] with M = N + k - 1,
//    so the array length is 2M+1 (2N+1 for the common k = 1 case).
//  * Time signals are circular with index 0 at t = 0; the upper half of
//    the buffer is t < 0. The sampling period is T_s = 2*pi/(dw*(2M+1)).
//  * inverse_dft(X)(t_n) = (dw/2pi) * sum_j X(w_j) e^{+i w_j t_n}
//    forward_dft(x)(w_j) = T_s * sum_n x(t_n) e^{-i w_j t_n}
//    which are exact inverses and satisfy Parseval exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "specwave/errors.hpp"
#include "specwave/fft.hpp"

namespace specwave {

struct FrequencyGrid {
    double omega_start = 0.0; ///< angular frequency of the first retained bin (rad/s)
    double delta_omega = 0.0; ///< uniform bin spacing (rad/s)
    std::size_t n_bins = 0;   ///< retained positive-frequency bins
    std::size_t n_missing = 1; ///< missing low bins below omega_start, DC included

    /// Index of the highest bin on the implied uniform grid starting at DC.
    std::size_t top_index() const { return n_bins + n_missing - 1; }

    /// Length of the two-sided extension, 2M+1.
    std::size_t full_size() const { return 2 * top_index() + 1; }

    double omega_at(std::size_t i) const // 1-indexed retained bin
    {
        return omega_start + static_cast<double>(i - 1) * delta_omega;
    }

    double omega_max() const { return omega_at(n_bins); }

    /// Sampling period of time signals produced from this grid's extension.
    double t_step() const
    {
        return 2.0 * std::numbers::pi / (delta_omega * static_cast<double>(full_size()));
    }

    void validate() const
    {
        if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
            raise(ErrorKind::GridError, "delta_omega must be positive");
        if (n_bins < 2)
            raise(ErrorKind::GridError, "grid needs at least two retained bins");
        if (!(omega_start > 0.0) || !std::isfinite(omega_start))
            raise(ErrorKind::GridError, "omega_start must be positive");
        if (n_missing < 1)
            raise(ErrorKind::GridError, "n_missing counts the DC bin and must be >= 1");
        const double k = std::round(omega_start / delta_omega);
        if (static_cast<double>(n_missing) != k ||
            std::abs(omega_start - k * delta_omega) >= 1e-9 * delta_omega)
            raise(ErrorKind::GridError, "omega_start is not n_missing * delta_omega");
    }
};

/// Derive a grid from a raw list of angular frequencies (must be uniform
/// within rel_tol and start above DC).
inline FrequencyGrid grid_from_omegas(const std::vector<double>& omegas, double rel_tol = 1e-6)
{
    if (omegas.size() < 2)
        raise(ErrorKind::GridError, "need at least two frequency samples");
    const double dw =
        (omegas.back() - omegas.front()) / static_cast<double>(omegas.size() - 1);
    if (!(dw > 0.0))
        raise(ErrorKind::GridError, "frequencies must be strictly ascending");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double expect = omegas.front() + static_cast<double>(i) * dw;
        if (std::abs(omegas[i] - expect) > rel_tol * dw)
            raise(ErrorKind::GridError, "frequency grid is not uniform (resampling is out of scope)");
    }
    if (!(omegas.front() > 0.0))
        raise(ErrorKind::GridError, "grid must start above DC");
    FrequencyGrid g;
    g.delta_omega = dw;
    g.omega_start = omegas.front();
    g.n_bins = omegas.size();
    g.n_missing = static_cast<std::size_t>(std::llround(omegas.front() / dw));
    g.validate();
    return g;
}

struct BandlimitedSpectrum {
    FrequencyGrid grid;
    std::vector<cplx> values; ///< X0(w_1) .. X0(w_N)

    void validate() const
    {
        grid.validate();
        if (values.size() != grid.n_bins)
            raise(ErrorKind::ShapeMismatch, "spectrum length does not match grid");
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                raise(ErrorKind::InvalidInput, "spectrum contains non-finite samples");
    }
};

struct HermitianSpectrum {
    std::vector<cplx> values; ///< natural order, DC at index values.size()/2
    FrequencyGrid grid;

    std::size_t dc_slot() const { return values.size() / 2; }

    void validate(double rel_tol = 1e-12) const
    {
        grid.validate();
        if (values.size() != grid.full_size())
            raise(ErrorKind::ShapeMismatch, "two-sided length does not match grid");
        const std::size_t m = dc_slot();
        if (values[m].imag() != 0.0)
            raise(ErrorKind::InvalidInput, "DC slot must be purely real");
        double scale = 0.0;
        for (const auto& v : values)
            scale = std::max(scale, std::abs(v));
        for (std::size_t i = 1; i <= m; ++i) {
            if (std::abs(values[m - i] - std::conj(values[m + i])) > rel_tol * std::max(scale, 1.0))
                raise(ErrorKind::InvalidInput, "conjugate symmetry violated");
        }
    }
};

struct TimeSignal {
    std::vector<double> samples;
    double t_step = 0.0; ///< sampling period (s)

    void validate() const
    {
        if (!(t_step > 0.0) || !std::isfinite(t_step))
            raise(ErrorKind::InvalidInput, "t_step must be positive");
        for (double s : samples)
            if (!std::isfinite(s))
                raise(ErrorKind::InvalidInput, "signal contains non-finite samples");
    }
};

struct ErrorMetrics {
    double l2_rel = 0.0;
    double linf_abs = 0.0;
    double dc_abs_err = 0.0;
};

/// Mirror a one-sided spectrum into the full conjugate-symmetric extension.
/// The DC slot gets dc_value; when n_missing > 1 the sub-omega_start bins
/// are zero-filled (the recovery loop overwrites them later).
inline HermitianSpectrum hermitian_extend(const BandlimitedSpectrum& spec, double dc_value)
{
    if (!std::isfinite(dc_value))
        raise(ErrorKind::InvalidInput, "non-finite DC value");
    // shape checks only: the extension itself is well defined even for a
    // single retained bin, which full grid validation rejects
    if (spec.grid.n_missing < 1 || spec.grid.n_bins < 1)
        raise(ErrorKind::GridError, "grid needs n_missing >= 1 and at least one bin");
    if (spec.values.size() != spec.grid.n_bins)
        raise(ErrorKind::ShapeMismatch, "spectrum length does not match grid");
    for (const auto& v : spec.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            raise(ErrorKind::InvalidInput, "spectrum contains non-finite samples");
    const std::size_t m = spec.grid.top_index();
    HermitianSpectrum out;
    out.grid = spec.grid;
    out.values.assign(2 * m + 1, cplx(0.0, 0.0));
    out.values[m] = cplx(dc_value, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        cplx v(0.0, 0.0);
        if (i >= spec.grid.n_missing)
            v = spec.values[i - spec.grid.n_missing];
        out.values[m + i] = v;
        out.values[m - i] = std::conj(v);
    }
    return out;
}

/// Physically scaled inverse DFT; real by conjugate symmetry.
inline TimeSignal inverse_dft(const HermitianSpectrum& spec)
{
    const std::size_t n = spec.values.size();
    const double scale =
        spec.grid.delta_omega * static_cast<double>(n) / (2.0 * std::numbers::pi);
    auto z = ifft(ifftshift(spec.values));
    TimeSignal out;
    out.t_step = spec.grid.t_step();
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = z[i].real() * scale;
    return out;
}

/// Forward companion of inverse_dft; exact round trip on the same grid.
inline HermitianSpectrum forward_dft(const TimeSignal& sig, const FrequencyGrid& grid)
{
    if (sig.samples.size() != grid.full_size())
        raise(ErrorKind::ShapeMismatch, "signal length does not match grid");
    std::vector<cplx> x(sig.samples.begin(), sig.samples.end());
    auto z = fftshift(fft(std::move(x)));
    const double ts = grid.t_step();
    HermitianSpectrum out;
    out.grid = grid;
    out.values.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out.values[i] = z[i] * ts;
    // the DC bin of a real signal is real up to roundoff; pin it
    const std::size_t m = out.dc_slot();
    out.values[m] = cplx(out.values[m].real(), 0.0);
    return out;
}

inline double parseval_energy(const HermitianSpectrum& spec)
{
    double acc = 0.0;
    for (const auto& v : spec.values)
        acc += std::norm(v);
    return acc * spec.grid.delta_omega / (2.0 * std::numbers::pi);
}

inline double signal_energy(const TimeSignal& sig)
{
    double acc = 0.0;
    for (double s : sig.samples)
        acc += s * s;
    return acc * sig.t_step;
}

inline double mean(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    double acc = 0.0;
    for (double s : v)
        acc += s;
    return acc / static_cast<double>(v.size());
}

inline double max_abs(const std::vector<double>& v)
{
    double acc = 0.0;
    for (double s : v)
        acc = std::max(acc, std::abs(s));
    return acc;
}

inline ErrorMetrics compare(const TimeSignal& sig, const TimeSignal& ref)
{
    if (sig.samples.size() != ref.samples.size())
        raise(ErrorKind::ShapeMismatch, "signal lengths differ");
    if (std::abs(sig.t_step - ref.t_step) > 1e-12 * std::max(std::abs(ref.t_step), 1e-300))
        raise(ErrorKind::ShapeMismatch, "sampling periods differ");
    ErrorMetrics m;
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < sig.samples.size(); ++i) {
        const double d = sig.samples[i] - ref.samples[i];
        diff2 += d * d;
        ref2 += ref.samples[i] * ref.samples[i];
        m.linf_abs = std::max(m.linf_abs, std::abs(d));
    }
    if (ref2 == 0.0) {
        if (diff2 != 0.0)
            raise(ErrorKind::InvalidInput, "relative L2 undefined against an all-zero reference");
        m.l2_rel = 0.0;
    } else {
        m.l2_rel = std::sqrt(diff2 / ref2);
    }
    m.dc_abs_err = std::abs(mean(sig.samples) - mean(ref.samples));
    return m;
}

} // namespace specwave
