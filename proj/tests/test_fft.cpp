#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <specwave/fft.hpp>

using specwave::cplx;

namespace {

std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                               static_cast<double>(n);
            acc += x[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("fft matches the naive DFT on odd and power-of-two sizes")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {3u, 5u, 17u, 64u, 101u, 257u}) {
        std::vector<cplx> x(n);
        for (auto& v : x)
            v = cplx(u(rng), u(rng));
        const auto got = specwave::fft(x);
        const auto want = naive_dft(x, -1);
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(got[k] - want[k]) < 1e-10 * std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("ifft inverts fft")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {9u, 33u, 1025u}) {
        std::vector<cplx> x(n);
        for (auto& v : x)
            v = cplx(u(rng), u(rng));
        const auto back = specwave::ifft(specwave::fft(x));
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(back[k] - x[k]) < 1e-12);
    }
}

TEST_CASE("fftshift undoes ifftshift on odd lengths")
{
    std::vector<int> natural{-2, -1, 0, 1, 2};
    const auto dft = specwave::ifftshift(natural);
    REQUIRE(dft == std::vector<int>{0, 1, 2, -2, -1});
    REQUIRE(specwave::fftshift(dft) == natural);
}
