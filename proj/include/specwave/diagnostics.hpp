#pragma once

// Causality and passivity checks. Causality is scored through the
// Kramers-Kronig coupling: the imaginary part predicted from the real part
// by a discrete Hilbert transform (sign multiplier in the conjugate
// domain, which is the library's own DFT time axis) is compared against
// the measured one. Passivity follows the eigenvalue-magnitude criterion,
// with enforcement dividing offending matrices by their largest magnitude.
// Eigenvalues come from Eigen's complex solver; the criterion itself
// (eigenvalues rather than singular values) is deliberate and reported.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Eigenvalues>

#include "specwave/core.hpp"
#include "specwave/errors.hpp"
#include "specwave/fft.hpp"
#include "specwave/touchstone.hpp"

#include "json.hpp"

namespace specwave {

struct CausalityReport {
    double kk_residual_rel = 0.0;   ///< relative L2 of (measured - predicted) imaginary part
    double precursor_fraction = 0.0; ///< share of signal energy at t < 0
};

struct PassivityReport {
    double max_eig_mag = 0.0;
    std::vector<std::size_t> offending_bins; ///< frequency indices with |lambda| > 1
    bool passive = true;
};

inline CausalityReport check_causality(const HermitianSpectrum& spec)
{
    spec.validate();
    const std::size_t n = spec.values.size();
    const std::size_t half = n / 2;

    // Causal projection: even part to the time domain, flip the sign of the
    // negative-time half, back to the frequency domain. For a causal
    // response this reproduces the odd (imaginary) part exactly.
    std::vector<cplx> u(n);
    for (std::size_t j = 0; j < n; ++j)
        u[j] = cplx(spec.values[j].real(), 0.0);
    auto even_part = ifft(ifftshift(u));
    for (std::size_t t = 0; t < n; ++t) {
        if (t == 0)
            even_part[t] = cplx(0.0, 0.0);
        else if (t > half)
            even_part[t] = -even_part[t];
    }
    const auto predicted = fftshift(fft(std::move(even_part)));

    double diff2 = 0.0, v2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = spec.values[j].imag();
        const double d = v - predicted[j].imag();
        diff2 += d * d;
        v2 += v * v;
    }
    CausalityReport rep;
    rep.kk_residual_rel = std::sqrt(diff2) / std::max(std::sqrt(v2), 1e-30);

    const TimeSignal x = inverse_dft(spec);
    double pre = 0.0, total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double e = x.samples[t] * x.samples[t];
        total += e;
        if (t > half)
            pre += e;
    }
    rep.precursor_fraction = total > 0.0 ? pre / total : 0.0;
    return rep;
}

namespace detail {

// Magnitudes within solver roundoff of the |lambda| = 1 boundary count as
// passive, which keeps enforcement an exact fixed point.
inline constexpr double kPassivityBoundary = 1.0 + 1e-12;

inline double max_eigenvalue_magnitude(const std::vector<cplx>& matrix, std::size_t n)
{
    if (n == 1)
        return std::abs(matrix[0]);
    Eigen::MatrixXcd a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = matrix[r * n + c];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, /*computeEigenvectors=*/false);
    double mx = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        mx = std::max(mx, std::abs(solver.eigenvalues()[i]));
    return mx;
}

} // namespace detail

inline PassivityReport check_passivity(const SParameterSet& net)
{
    net.validate();
    PassivityReport rep;
    for (std::size_t f = 0; f < net.matrices.size(); ++f) {
        const double mx = detail::max_eigenvalue_magnitude(net.matrices[f], net.n_ports);
        rep.max_eig_mag = std::max(rep.max_eig_mag, mx);
        if (mx > detail::kPassivityBoundary)
            rep.offending_bins.push_back(f);
    }
    rep.passive = rep.offending_bins.empty(); // |lambda| == 1 stays passive
    return rep;
}

inline SParameterSet enforce_passivity(const SParameterSet& net)
{
    net.validate();
    SParameterSet out = net;
    for (auto& matrix : out.matrices) {
        const double mx = detail::max_eigenvalue_magnitude(matrix, out.n_ports);
        if (mx > detail::kPassivityBoundary) {
            for (auto& v : matrix)
                v /= mx;
        }
    }
    return out;
}

inline nlohmann::ordered_json causality_to_json(const CausalityReport& rep)
{
    nlohmann::ordered_json j;
    j["kk_residual_rel"] = rep.kk_residual_rel;
    j["precursor_fraction"] = rep.precursor_fraction;
    return j;
}

inline nlohmann::ordered_json passivity_to_json(const PassivityReport& rep)
{
    nlohmann::ordered_json j;
    j["passive"] = rep.passive;
    j["max_eig_mag"] = rep.max_eig_mag;
    j["offending_bins"] = rep.offending_bins;
    return j;
}

} // namespace specwave
