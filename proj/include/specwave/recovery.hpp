#pragma once

// Recursive recovery of the missing DC bin. Each iteration extends the
// retained bins with the current DC estimate, reconstructs through the
// wavelet pipeline, transforms back to the frequency domain, and nudges
// the DC estimate by the scaled change of the spectrum at the second
// retained bin.
//
// Iteration n reconstructs with the scale ladder truncated to its first n
// entries. The ladder grows one scale per iteration until it is exhausted
// (the iteration cap defaults to n_s), so successive iterates differ by
// exactly the newest scale's contribution, which decays with the kernel's
// exponential tail. Re-running the full ladder every time would make all
// iterates identical, because the kernel annihilates the DC column and
// every other bin is reset to its measured value each round.
//
// Retained bins are carried as assignments, never recomputed: the final
// spectrum equals the input bit-for-bit away from the estimated bins.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "specwave/core.hpp"
#include "specwave/errors.hpp"
#include "specwave/wavelet.hpp"

#include "json.hpp"

namespace specwave {

struct RecoveryConfig {
    double gamma = 2.0;             ///< DC update scale; the reference values are {2, 10, 430}
    std::size_t max_iterations = 0; ///< 0 = ladder length n_s
    double epsilon = 1e-6;          ///< relative convergence threshold
    WaveletSpec wavelet;
    double s1_override = 0.0; ///< 0 = default scale rule
    double ds_override = 0.0; ///< 0 = default 0.4875

    void validate() const
    {
        if (!(gamma > 0.0))
            raise(ErrorKind::InvalidInput, "gamma must be positive");
        if (!(epsilon > 0.0))
            raise(ErrorKind::InvalidInput, "epsilon must be positive");
        wavelet.validate();
    }
};

struct ReconstructionReport {
    TimeSignal signal; ///< inverse DFT of the final corrected spectrum
    std::vector<double> dc_history;
    std::vector<double> residual_history; ///< max |x^{n+1} - x^n| per iteration
    bool converged = false;
    std::size_t iterations_run = 0;
    TimeSignal baseline;             ///< naive zero-DC inverse DFT
    HermitianSpectrum final_spectrum; ///< retained bins identical to the input
    double dc_log_factor = 0.0;       ///< log10(dw / 2pi); zero means a stalled update rule
};

/// True iff max_j |x_next - x_prev| <= epsilon * max(1, ||x_prev||_inf).
inline bool convergence_check(const TimeSignal& x_next, const TimeSignal& x_prev, double epsilon)
{
    if (x_next.samples.size() != x_prev.samples.size())
        raise(ErrorKind::ShapeMismatch, "iterate lengths differ");
    double diff = 0.0;
    for (std::size_t i = 0; i < x_next.samples.size(); ++i)
        diff = std::max(diff, std::abs(x_next.samples[i] - x_prev.samples[i]));
    return diff <= epsilon * std::max(1.0, max_abs(x_prev.samples));
}

namespace detail {

inline double sign_or_zero(double v)
{
    if (v > 0.0)
        return 1.0;
    if (v < 0.0)
        return -1.0;
    return 0.0;
}

} // namespace detail

/// One step of the DC update rule:
/// dc_prev + gamma * log10(dw/2pi) * ln(s_n)
///         * sign(Re X^n(w2) - Re X^n(w1)) * (Re X^{n+1}(w2) - Re X^n(w2)).
/// w1, w2 are the first two retained bins. sign(0) stalls the update.
inline double dc_coefficient(const HermitianSpectrum& spec_prev, const HermitianSpectrum& spec_curr,
                             const FrequencyGrid& grid, double s_n, double gamma, double dc_prev)
{
    if (spec_prev.values.size() != spec_curr.values.size() ||
        spec_prev.values.size() != grid.full_size())
        raise(ErrorKind::ShapeMismatch, "spectra are not on the shared grid");
    if (!(s_n > 0.0))
        raise(ErrorKind::ScaleError, "scale must be positive");
    if (grid.n_bins < 2)
        raise(ErrorKind::GridError, "DC update needs at least two retained bins");
    const std::size_t m = grid.top_index();
    const std::size_t w1 = m + grid.n_missing;
    const std::size_t w2 = w1 + 1;
    const double log_factor = std::log10(grid.delta_omega / (2.0 * std::numbers::pi));
    const double sgn =
        detail::sign_or_zero(spec_prev.values[w2].real() - spec_prev.values[w1].real());
    const double diff = spec_curr.values[w2].real() - spec_prev.values[w2].real();
    return dc_prev + gamma * log_factor * std::log(s_n) * sgn * diff;
}

namespace detail {

/// Extension carrying the loop's current estimates: dc_value at DC, and for
/// n_missing > 1 the gap bins linearly interpolated between the DC estimate
/// and X0(w1). (Multi-bin gaps are an experimental extension of the k=1
/// update rule.)
inline HermitianSpectrum extend_with_estimates(const BandlimitedSpectrum& input, double dc_value)
{
    HermitianSpectrum out = hermitian_extend(input, dc_value);
    const std::size_t k = input.grid.n_missing;
    if (k > 1) {
        const std::size_t m = out.dc_slot();
        const cplx anchor_low(dc_value, 0.0);
        const cplx anchor_high = input.values.front();
        for (std::size_t i = 1; i < k; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(k);
            const cplx v = anchor_low + (anchor_high - anchor_low) * f;
            out.values[m + i] = v;
            out.values[m - i] = std::conj(v);
        }
    }
    return out;
}

inline void require_finite(const TimeSignal& x, std::size_t iteration)
{
    for (double v : x.samples)
        if (!std::isfinite(v))
            raise(ErrorKind::NumericalDivergence,
                  "non-finite iterate at iteration " + std::to_string(iteration));
}

} // namespace detail

inline ReconstructionReport recover(const BandlimitedSpectrum& input, const RecoveryConfig& cfg)
{
    input.validate();
    cfg.validate();
    const FrequencyGrid& grid = input.grid;

    const ScaleVector scales = build_scales(grid, cfg.s1_override, cfg.ds_override);
    const std::size_t max_iter = cfg.max_iterations == 0 ? scales.n_s : cfg.max_iterations;
    const WaveletKernelMatrix kern_full = build_kernel(cfg.wavelet, scales, grid);
    // The flat-impulse calibration ratio is ladder-independent (the t=0 CWT
    // value of a flat spectrum is the kernel row mean, so the raw gain is
    // exactly the admissibility constant); one calibration serves every
    // truncated ladder below.
    const double mu_wav = calibrate_mu_wav(cfg.wavelet, scales, grid);
    const double anchor = input.values.front().real() / static_cast<double>(grid.n_bins);

    ReconstructionReport rep;
    rep.dc_log_factor = std::log10(grid.delta_omega / (2.0 * std::numbers::pi));
    rep.baseline = inverse_dft(hermitian_extend(input, 0.0));

    double dc = 0.0;
    TimeSignal x_prev = rep.baseline;
    HermitianSpectrum spec_prev = hermitian_extend(input, 0.0);

    for (std::size_t n = 1; n <= max_iter; ++n) {
        const std::size_t ladder = std::min(n, scales.n_s);
        WaveletKernelMatrix kern;
        kern.grid = kern_full.grid;
        kern.scales = scales.prefix(ladder);
        kern.mu.assign(kern_full.mu.begin(), kern_full.mu.begin() + static_cast<long>(ladder));
        kern.rows.assign(kern_full.rows.begin(),
                         kern_full.rows.begin() + static_cast<long>(ladder));

        const HermitianSpectrum xhat = detail::extend_with_estimates(input, dc);
        const CwtCoefficients coef = cwt_from_spectrum(xhat, kern);
        const double c_psi = admissibility_constant(cfg.wavelet, kern);
        const TimeSignal x_n = icwt(coef, cfg.wavelet, c_psi, mu_wav, anchor);
        detail::require_finite(x_n, n);

        const HermitianSpectrum spec_curr = forward_dft(x_n, grid);

        double resid = 0.0;
        for (std::size_t i = 0; i < x_n.samples.size(); ++i)
            resid = std::max(resid, std::abs(x_n.samples[i] - x_prev.samples[i]));
        rep.residual_history.push_back(resid);

        dc = dc_coefficient(spec_prev, spec_curr, grid, scales.scales[ladder - 1], cfg.gamma, dc);
        if (!std::isfinite(dc))
            raise(ErrorKind::NumericalDivergence,
                  "non-finite DC estimate at iteration " + std::to_string(n));
        rep.dc_history.push_back(dc);
        rep.iterations_run = n;

        const bool done = convergence_check(x_n, x_prev, cfg.epsilon);
        spec_prev = spec_curr;
        x_prev = x_n;
        if (done) {
            rep.converged = true;
            break;
        }
    }

    rep.final_spectrum = detail::extend_with_estimates(input, dc);
    rep.signal = inverse_dft(rep.final_spectrum);
    return rep;
}

/// JSON document with the report's numeric fields (signal and baseline as
/// {t_step, samples}). Key order is fixed so identical runs serialize to
/// identical bytes.
inline nlohmann::ordered_json report_to_json(const ReconstructionReport& rep)
{
    nlohmann::ordered_json j;
    j["converged"] = rep.converged;
    j["iterations_run"] = rep.iterations_run;
    j["dc_log_factor"] = rep.dc_log_factor;
    j["dc_history"] = rep.dc_history;
    j["residual_history"] = rep.residual_history;
    j["signal"] = {{"t_step", rep.signal.t_step}, {"samples", rep.signal.samples}};
    j["baseline"] = {{"t_step", rep.baseline.t_step}, {"samples", rep.baseline.samples}};
    return j;
}

} // namespace specwave
