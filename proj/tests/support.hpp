#pragma once

// Shared test fixtures: seeded generators, reference quadrature, and a
// tiny process runner for the CLI end-to-end tests.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <specwave/specwave.hpp>

namespace testsupport {

using specwave::cplx;

/// Gaussian pulse exp(-t^2 / (2 sigma^2)) on a centered circular grid.
inline specwave::TimeSignal gaussian_pulse(std::size_t n_samples, double span, double sigma)
{
    specwave::TimeWindow w = specwave::centered_window(n_samples, span);
    specwave::TimeSignal out;
    out.t_step = w.t_step;
    out.samples.resize(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
        const double t = w.time_at(j);
        out.samples[j] = std::exp(-t * t / (2.0 * sigma * sigma));
    }
    return out;
}

/// Adaptive Simpson quadrature, the independent oracle for window means.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 24)
{
    const auto simpson = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    };
    std::function<double(double, double, double, int)> go = [&](double lo, double hi, double whole,
                                                                int d) {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid);
        const double right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return go(lo, mid, left, d - 1) + go(mid, hi, right, d - 1);
    };
    return go(a, b, simpson(a, b), depth);
}

/// Random conjugate-symmetric spectrum on a simple k=1 grid.
inline specwave::HermitianSpectrum random_hermitian(std::mt19937_64& rng, std::size_t n_bins,
                                                    double delta_omega = 0.25)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    specwave::FrequencyGrid grid;
    grid.delta_omega = delta_omega;
    grid.omega_start = delta_omega;
    grid.n_bins = n_bins;
    grid.n_missing = 1;
    specwave::HermitianSpectrum spec;
    spec.grid = grid;
    spec.values.assign(grid.full_size(), cplx(0.0, 0.0));
    const std::size_t m = spec.dc_slot();
    spec.values[m] = cplx(u(rng), 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        const cplx v(u(rng), u(rng));
        spec.values[m + i] = v;
        spec.values[m - i] = std::conj(v);
    }
    return spec;
}

inline specwave::SParameterSet random_sparams(std::mt19937_64& rng, std::size_t n_ports,
                                              std::size_t n_freqs, double mag_cap = 0.95)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> fstep(0.5, 3.0);
    specwave::SParameterSet net;
    net.n_ports = n_ports;
    net.reference_ohms = 50.0;
    double f = fstep(rng);
    const double df = fstep(rng);
    for (std::size_t k = 0; k < n_freqs; ++k) {
        net.frequencies_hz.push_back(f);
        f += df;
        std::vector<cplx> m(n_ports * n_ports);
        for (auto& v : m) {
            v = cplx(u(rng), u(rng));
            const double a = std::abs(v);
            if (a > mag_cap)
                v *= mag_cap / a;
            if (std::abs(v) < 1e-3) // keep DB encoding well-conditioned
                v += cplx(0.01, 0.01);
        }
        net.matrices.push_back(std::move(m));
    }
    return net;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
    {
        path = std::filesystem::temp_directory_path() /
               ("specwave_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Run a shell command; capture stdout/stderr through temp files.
inline RunResult run_command(const std::string& cmd, const std::filesystem::path& dir)
{
    const std::filesystem::path out = dir / "stdout.txt";
    const std::filesystem::path err = dir / "stderr.txt";
    const std::string full = cmd + " >" + out.string() + " 2>" + err.string();
    const int rc = std::system(full.c_str());
    RunResult r;
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    if (std::filesystem::exists(out))
        r.out = specwave::read_file(out);
    if (std::filesystem::exists(err))
        r.err = specwave::read_file(err);
    return r;
}

} // namespace testsupport
