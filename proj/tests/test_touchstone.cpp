#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "support.hpp"

using namespace specwave;
using Catch::Approx;

TEST_CASE("minimal RI document")
{
    const auto net = parse_touchstone("# HZ S RI R 50\n1 0.5 0.0\n");
    REQUIRE(net.n_ports == 1);
    REQUIRE(net.frequencies_hz == std::vector<double>{1.0});
    REQUIRE(net.at(0, 1, 1) == cplx(0.5, 0.0));
    REQUIRE(net.reference_ohms == 50.0);
}

TEST_CASE("MA with a 90 degree phase")
{
    const auto net = parse_touchstone("# GHZ S MA R 50\n1 1.0 90.0\n");
    REQUIRE(net.frequencies_hz.front() == Approx(1e9));
    REQUIRE(std::abs(net.at(0, 1, 1) - cplx(0.0, 1.0)) < 1e-12);
}

TEST_CASE("DB magnitude decodes through 10^(dB/20)")
{
    const auto net = parse_touchstone("# HZ S DB R 50\n1 -6.0206 0\n");
    const double expect = std::pow(10.0, -6.0206 / 20.0); // = 0.50000 to 5 decimals
    REQUIRE(expect == Approx(0.5).margin(5e-6));
    REQUIRE(net.at(0, 1, 1).real() == Approx(expect).epsilon(1e-12));
    REQUIRE(net.at(0, 1, 1).imag() == 0.0);
}

TEST_CASE("option line errors")
{
    REQUIRE_THROWS_MATCHES(parse_touchstone("1 0.5 0.0\n"), Error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("line 1")));
    REQUIRE_THROWS_AS(parse_touchstone("! comment only\n"), Error);
    REQUIRE_THROWS_AS(parse_touchstone("# HZ S RI R 50\n# HZ S RI R 50\n1 0 0\n"), Error);
    REQUIRE_THROWS_AS(parse_touchstone("# HZ S XY R 50\n1 0 0\n"), Error);
    REQUIRE_THROWS_AS(parse_touchstone("# HZ Z RI R 50\n1 0 0\n"), Error);
    REQUIRE_THROWS_AS(parse_touchstone("# PHZ S RI R 50\n1 0 0\n"), Error);
}

TEST_CASE("data errors")
{
    // non-monotone frequency
    REQUIRE_THROWS_AS(parse_touchstone("# HZ S RI R 50\n2 0 0\n1 0 0\n", 1), Error);
    // record arity mismatch
    REQUIRE_THROWS_AS(parse_touchstone("# HZ S RI R 50\n1 0 0 7\n", 1), Error);
    // garbage token
    REQUIRE_THROWS_AS(parse_touchstone("# HZ S RI R 50\n1 Q 0\n", 1), Error);
}

TEST_CASE("comments, CRLF and line wrapping are accepted")
{
    const std::string text = "! header comment\r\n# hz s ri r 75\r\n"
                             "1 0.1 0.2 0.3 0.4\r\n0.5 0.6 0.7 0.8\r\n"
                             "2 1.1 1.2 1.3 1.4 1.5 1.6 1.7 1.8 ! trailing\r\n";
    const auto net = parse_touchstone(text, 2);
    REQUIRE(net.n_ports == 2);
    REQUIRE(net.reference_ohms == 75.0);
    REQUIRE(net.frequencies_hz.size() == 2);
    // S11 S21 S12 S22 order
    REQUIRE(net.at(0, 1, 1) == cplx(0.1, 0.2));
    REQUIRE(net.at(0, 2, 1) == cplx(0.3, 0.4));
    REQUIRE(net.at(0, 1, 2) == cplx(0.5, 0.6));
    REQUIRE(net.at(0, 2, 2) == cplx(0.7, 0.8));
}

TEST_CASE("two-port writer emits the S11 S21 S12 S22 column order")
{
    SParameterSet net;
    net.n_ports = 2;
    net.frequencies_hz = {1.0};
    net.matrices = {{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)}}; // row-major [[0,1],[1,0]]
    const std::string text = write_touchstone(net, TouchstoneFormat::RI);
    // find the data line and its 9 columns
    const auto pos = text.rfind('\n', text.size() - 2);
    const std::string line = text.substr(pos + 1);
    REQUIRE(line == "1 0 0 1 0 1 0 0 0\n");
}

TEST_CASE("writer refuses an empty set")
{
    SParameterSet net;
    net.n_ports = 1;
    REQUIRE_THROWS_AS(write_touchstone(net, TouchstoneFormat::RI), Error);
}

TEST_CASE("parse-write round trip across formats, units and port counts")
{
    std::mt19937_64 rng(21);
    for (auto fmt : {TouchstoneFormat::RI, TouchstoneFormat::MA, TouchstoneFormat::DB}) {
        for (auto unit : {FrequencyUnit::Hz, FrequencyUnit::kHz, FrequencyUnit::MHz,
                          FrequencyUnit::GHz}) {
            for (std::size_t ports : {1u, 2u, 4u}) {
                const auto net = testsupport::random_sparams(rng, ports, 4 + rng() % 6);
                const auto text = write_touchstone(net, fmt, unit);
                const auto back = parse_touchstone(text, ports);
                REQUIRE(back.n_ports == net.n_ports);
                REQUIRE(back.frequencies_hz.size() == net.frequencies_hz.size());
                for (std::size_t f = 0; f < net.frequencies_hz.size(); ++f) {
                    REQUIRE(back.frequencies_hz[f] ==
                            Approx(net.frequencies_hz[f]).epsilon(1e-9));
                    for (std::size_t e = 0; e < ports * ports; ++e) {
                        const cplx a = net.matrices[f][e];
                        const cplx b = back.matrices[f][e];
                        REQUIRE(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
                    }
                }
            }
        }
    }
}

TEST_CASE("port inference from record arity")
{
    std::mt19937_64 rng(22);
    for (std::size_t ports : {1u, 2u}) {
        const auto net = testsupport::random_sparams(rng, ports, 5);
        const auto text = write_touchstone(net, TouchstoneFormat::RI);
        const auto back = parse_touchstone(text); // no hint
        REQUIRE(back.n_ports == ports);
    }
    // wrapped 4-port lines fall back to whole-stream arity checking
    const auto net4 = testsupport::random_sparams(rng, 4, 3);
    const auto back4 = parse_touchstone(write_touchstone(net4, TouchstoneFormat::RI));
    REQUIRE(back4.n_ports == 4);
}

TEST_CASE("trailing noise section is ignored with a warning")
{
    std::string text = "# HZ S RI R 50\n";
    text += "1 .1 0 .2 0 .3 0 .4 0\n";
    text += "2 .1 0 .2 0 .3 0 .4 0\n";
    text += "3 .1 0 .2 0 .3 0 .4 0\n";
    text += "1 3.0 0.5 30 0.6\n"; // 2-port noise parameters restart at f=1
    text += "2 2.5 0.4 20 0.5\n";
    TouchstoneWarnings warn;
    const auto net = parse_touchstone(text, 2, &warn);
    REQUIRE(net.frequencies_hz.size() == 3);
    REQUIRE(warn.noise_section_ignored);
}

TEST_CASE("fuzzing never crashes: FormatError or success")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> len(0, 160);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::string pool = "0123456789.eE+- #!SRIMADBHZKGhz\n\r\t";
    for (int trial = 0; trial < 1000; ++trial) {
        std::string text;
        const int n = len(rng);
        const bool ascii_ish = trial % 2 == 0;
        for (int i = 0; i < n; ++i)
            text += ascii_ish ? pool[static_cast<std::size_t>(byte(rng)) % pool.size()]
                              : static_cast<char>(byte(rng));
        try {
            (void)parse_touchstone(text);
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::FormatError);
        }
    }
}

TEST_CASE("extract_spectrum selects the requested element")
{
    std::mt19937_64 rng(24);
    auto net = testsupport::random_sparams(rng, 2, 4);
    net.frequencies_hz = {1.0, 2.0, 3.0, 4.0};
    const auto spec = extract_spectrum(net, 2, 1);
    REQUIRE(spec.grid.n_bins == 4);
    REQUIRE(spec.grid.delta_omega == Approx(2.0 * std::numbers::pi));
    REQUIRE(spec.grid.n_missing == 1);
    for (std::size_t f = 0; f < 4; ++f)
        REQUIRE(spec.values[f] == net.at(f, 2, 1));
}

TEST_CASE("extract_spectrum grid arithmetic for a shifted start")
{
    // f = [2,4,6] Hz: spacing 2 Hz, so only the DC bin sits below f0 and
    // n_missing = round(omega_start/delta_omega) = 1 per the grid contract.
    std::mt19937_64 rng(25);
    auto net = testsupport::random_sparams(rng, 1, 3);
    net.frequencies_hz = {2.0, 4.0, 6.0};
    const auto spec = extract_spectrum(net, 1, 1);
    REQUIRE(spec.grid.delta_omega == Approx(4.0 * std::numbers::pi));
    REQUIRE(spec.grid.n_missing == 1);
    REQUIRE(spec.grid.omega_start == Approx(4.0 * std::numbers::pi));
}

TEST_CASE("extract_spectrum drops a DC row with a warning")
{
    std::mt19937_64 rng(26);
    auto net = testsupport::random_sparams(rng, 1, 4);
    net.frequencies_hz = {0.0, 1.0, 2.0, 3.0};
    ExtractInfo info;
    const auto spec = extract_spectrum(net, 1, 1, &info);
    REQUIRE(info.dropped_dc);
    REQUIRE(info.dc_value == net.at(0, 1, 1));
    REQUIRE(spec.grid.n_bins == 3);
    REQUIRE(spec.grid.n_missing == 1);
}

TEST_CASE("extract_spectrum rejects non-uniform grids and bad ports")
{
    std::mt19937_64 rng(27);
    auto net = testsupport::random_sparams(rng, 1, 3);
    net.frequencies_hz = {1.0, 2.0, 4.0};
    REQUIRE_THROWS_AS(extract_spectrum(net, 1, 1), Error);
    net.frequencies_hz = {1.0, 2.0, 3.0};
    REQUIRE_THROWS_AS(extract_spectrum(net, 3, 1), Error);
}
