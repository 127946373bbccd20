#pragma once

// Self-contained complex DFT used throughout the library. Sizes here are
// odd (two-sided spectra have 2N+1 points), so the general path is a
// Bluestein chirp-z transform built on a power-of-two radix-2 core.
// Everything is sequential and allocation-local, which keeps transforms
// bit-reproducible regardless of the caller's thread count.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "specwave/errors.hpp"

namespace specwave {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey. sign = -1 forward, +1 inverse
// (inverse here is unnormalized).
inline void fft_pow2(std::vector<cplx>& a, int sign)
{
    const std::size_t n = a.size();
    if (n <= 1)
        return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp-z: arbitrary-length DFT via one convolution of
// power-of-two size. The quadratic phase uses n^2 mod 2L to keep the
// sin/cos argument small.
inline std::vector<cplx> fft_bluestein(const std::vector<cplx>& x, int sign)
{
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t q = (i * i) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
        chirp[i] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> a(m, cplx(0.0, 0.0));
    std::vector<cplx> b(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        a[i] = x[i] * chirp[i];
    b[0] = std::conj(chirp[0]);
    for (std::size_t i = 1; i < n; ++i)
        b[i] = b[m - i] = std::conj(chirp[i]);
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t i = 0; i < m; ++i)
        a[i] *= b[i];
    fft_pow2(a, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i] * inv_m * chirp[i];
    return out;
}

} // namespace detail

/// Forward DFT, X_k = sum_n x_n e^{-2*pi*i*n*k/L}. Any length.
inline std::vector<cplx> fft(std::vector<cplx> x)
{
    if (x.empty())
        raise(ErrorKind::InvalidInput, "fft of empty sequence");
    if (detail::is_pow2(x.size())) {
        detail::fft_pow2(x, -1);
        return x;
    }
    return detail::fft_bluestein(x, -1);
}

/// Inverse DFT, x_n = (1/L) sum_k X_k e^{+2*pi*i*n*k/L}.
inline std::vector<cplx> ifft(std::vector<cplx> x)
{
    if (x.empty())
        raise(ErrorKind::InvalidInput, "ifft of empty sequence");
    const double inv_n = 1.0 / static_cast<double>(x.size());
    if (detail::is_pow2(x.size())) {
        detail::fft_pow2(x, +1);
        for (auto& v : x)
            v *= inv_n;
        return x;
    }
    auto out = detail::fft_bluestein(x, +1);
    for (auto& v : out)
        v *= inv_n;
    return out;
}

/// Natural order [-w_M .. 0 .. +w_M] -> DFT order [0 .. +w_M, -w_M .. -w_1].
/// Length must be odd.
template <typename T>
std::vector<T> ifftshift(const std::vector<T>& natural)
{
    const std::size_t n = natural.size();
    const std::size_t half = n / 2; // index of the DC slot in natural order
    std::vector<T> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = natural[(j + half) % n];
    return out;
}

/// Inverse of ifftshift for odd lengths.
template <typename T>
std::vector<T> fftshift(const std::vector<T>& dft)
{
    const std::size_t n = dft.size();
    const std::size_t half = n / 2;
    std::vector<T> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[(j + half) % n] = dft[j];
    return out;
}

} // namespace specwave
