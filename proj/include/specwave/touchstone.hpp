#pragma once

// Touchstone v1 reader/writer and conversion of one S-matrix element into
// the band-limited spectrum the recovery loop ingests.
//
// Accepted documents: optional '!' comments, exactly one option line
// "# <unit> S <RI|MA|DB> R <resistance>" (case-insensitive, LF or CRLF),
// then whitespace-separated records of one frequency plus n^2 complex
// pairs. Two-port data uses the S11 S21 S12 S22 column order; three or
// more ports are row-major. Records may wrap lines. A trailing block whose
// frequency falls back below the S-data (noise parameters) is ignored with
// a warning.

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "specwave/core.hpp"
#include "specwave/errors.hpp"

namespace specwave {

enum class TouchstoneFormat { RI, MA, DB };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

inline double unit_scale(FrequencyUnit u)
{
    switch (u) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
    }
    return 1.0;
}

inline const char* unit_token(FrequencyUnit u)
{
    switch (u) {
    case FrequencyUnit::Hz: return "HZ";
    case FrequencyUnit::kHz: return "KHZ";
    case FrequencyUnit::MHz: return "MHZ";
    case FrequencyUnit::GHz: return "GHZ";
    }
    return "HZ";
}

struct SParameterSet {
    std::size_t n_ports = 0;
    std::vector<double> frequencies_hz;
    std::vector<std::vector<cplx>> matrices; ///< row-major n_ports x n_ports per frequency
    double reference_ohms = 50.0;

    const cplx& at(std::size_t f, std::size_t i, std::size_t j) const
    {
        return matrices[f][(i - 1) * n_ports + (j - 1)];
    }

    void validate() const
    {
        if (n_ports < 1)
            raise(ErrorKind::InvalidInput, "port count must be >= 1");
        if (matrices.size() != frequencies_hz.size())
            raise(ErrorKind::ShapeMismatch, "matrix count does not match frequency count");
        for (std::size_t f = 0; f < frequencies_hz.size(); ++f) {
            if (frequencies_hz[f] < 0.0)
                raise(ErrorKind::InvalidInput, "negative frequency");
            if (f > 0 && !(frequencies_hz[f] > frequencies_hz[f - 1]))
                raise(ErrorKind::InvalidInput, "frequencies must be strictly ascending");
            if (matrices[f].size() != n_ports * n_ports)
                raise(ErrorKind::ShapeMismatch, "matrix is not n_ports x n_ports");
        }
    }
};

struct TouchstoneWarnings {
    bool noise_section_ignored = false;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t line;
};

inline std::string upper(std::string_view s)
{
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline double parse_number(const Token& tok)
{
    const char* begin = tok.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.text.size() || !std::isfinite(v))
        raise(ErrorKind::FormatError,
              "expected a number, got '" + tok.text + "' on line " + std::to_string(tok.line));
    return v;
}

struct OptionLine {
    double unit_scale = 1.0;
    TouchstoneFormat format = TouchstoneFormat::MA;
    double resistance = 50.0;
};

inline OptionLine parse_option_line(const std::string& line, std::size_t line_no)
{
    std::vector<std::string> tok;
    std::string cur;
    for (std::size_t i = 1; i <= line.size(); ++i) { // skip leading '#'
        const char c = i < line.size() ? line[i] : ' ';
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                tok.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    const auto fail = [&](const std::string& why) {
        raise(ErrorKind::FormatError, why + " in option line on line " + std::to_string(line_no));
    };
    if (tok.size() != 5)
        fail("expected '<unit> S <format> R <resistance>'");
    OptionLine opt;
    const std::string unit = upper(tok[0]);
    if (unit == "HZ")
        opt.unit_scale = 1.0;
    else if (unit == "KHZ")
        opt.unit_scale = 1e3;
    else if (unit == "MHZ")
        opt.unit_scale = 1e6;
    else if (unit == "GHZ")
        opt.unit_scale = 1e9;
    else
        fail("unknown frequency unit '" + tok[0] + "'");
    if (upper(tok[1]) != "S")
        fail("only S parameters are supported");
    const std::string fmt = upper(tok[2]);
    if (fmt == "RI")
        opt.format = TouchstoneFormat::RI;
    else if (fmt == "MA")
        opt.format = TouchstoneFormat::MA;
    else if (fmt == "DB")
        opt.format = TouchstoneFormat::DB;
    else
        fail("unknown number format '" + tok[2] + "'");
    if (upper(tok[3]) != "R")
        fail("expected 'R'");
    char* end = nullptr;
    opt.resistance = std::strtod(tok[4].c_str(), &end);
    if (end != tok[4].c_str() + tok[4].size() || !std::isfinite(opt.resistance))
        fail("bad reference resistance '" + tok[4] + "'");
    return opt;
}

inline cplx decode_pair(TouchstoneFormat fmt, double a, double b)
{
    switch (fmt) {
    case TouchstoneFormat::RI:
        return {a, b};
    case TouchstoneFormat::MA: {
        const double phi = b * std::numbers::pi / 180.0;
        return {a * std::cos(phi), a * std::sin(phi)};
    }
    case TouchstoneFormat::DB: {
        const double mag = std::pow(10.0, a / 20.0);
        const double phi = b * std::numbers::pi / 180.0;
        return {mag * std::cos(phi), mag * std::sin(phi)};
    }
    }
    return {};
}

/// Map pair index p to the row-major matrix slot, honoring the 2-port
/// column order (S11 S21 S12 S22).
inline std::size_t pair_slot(std::size_t p, std::size_t n)
{
    if (n <= 2) {
        const std::size_t dest = p % n;
        const std::size_t src = p / n;
        return dest * n + src;
    }
    return p;
}

} // namespace detail

inline SParameterSet parse_touchstone(std::string_view text, std::size_t n_ports_hint = 0,
                                      TouchstoneWarnings* warnings = nullptr)
{
    using detail::Token;

    bool have_option = false;
    detail::OptionLine opt;
    std::vector<Token> data;
    std::size_t first_data_line_tokens = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        ++line_no;
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const std::size_t bang = line.find('!');
        if (bang != std::string::npos)
            line.resize(bang);
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size())
            continue;
        if (line[i] == '#') {
            if (have_option)
                raise(ErrorKind::FormatError,
                      "duplicate option line on line " + std::to_string(line_no));
            opt = detail::parse_option_line(line.substr(i), line_no);
            have_option = true;
            continue;
        }
        std::size_t count = 0;
        std::string cur;
        for (std::size_t j = i; j <= line.size(); ++j) {
            const char c = j < line.size() ? line[j] : ' ';
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) {
                    data.push_back(Token{cur, line_no});
                    ++count;
                    cur.clear();
                }
            } else {
                cur.push_back(c);
            }
        }
        if (count > 0 && first_data_line_tokens == 0)
            first_data_line_tokens = count;
        if (!have_option && count > 0)
            raise(ErrorKind::FormatError,
                  "data before the option line on line " + std::to_string(line_no));
    }
    if (!have_option)
        raise(ErrorKind::FormatError, "missing option line");
    if (data.empty())
        raise(ErrorKind::FormatError, "no network data");

    // Port inference: explicit hint, else the first data line's arity, else
    // any port count whose records fit the token stream with a strictly
    // ascending frequency column.
    std::vector<std::size_t> candidates;
    if (n_ports_hint > 0) {
        candidates.push_back(n_ports_hint);
    } else {
        for (std::size_t n = 1; n <= 8; ++n)
            if (first_data_line_tokens == 1 + 2 * n * n)
                candidates.push_back(n);
        for (std::size_t n = 1; n <= 8; ++n)
            candidates.push_back(n);
    }

    const bool strict = n_ports_hint > 0;
    for (std::size_t n : candidates) {
        const std::size_t rec = 1 + 2 * n * n;
        if (data.size() < rec) {
            if (strict)
                raise(ErrorKind::FormatError,
                      "record arity mismatch near line " + std::to_string(data.back().line));
            continue;
        }
        // Walk record boundaries. A frequency that falls back after at least
        // two good records marks a trailing noise-parameter section, which
        // is ignored with a warning; anything else non-monotone fails.
        const std::size_t records = data.size() / rec;
        std::size_t keep = records;
        bool noise = false;
        bool ok = true;
        double prev = -1.0;
        for (std::size_t r = 0; r < records; ++r) {
            const auto& tok = data[r * rec];
            const char* begin = tok.text.c_str();
            char* end = nullptr;
            const double f = std::strtod(begin, &end);
            if (end != begin + tok.text.size() || !std::isfinite(f) || f < 0.0) {
                if (strict)
                    raise(ErrorKind::FormatError, "expected a frequency, got '" + tok.text +
                                                      "' on line " + std::to_string(tok.line));
                ok = false;
                break;
            }
            if (f <= prev) {
                if (r >= 2) {
                    keep = r;
                    noise = true;
                    break;
                }
                if (strict)
                    raise(ErrorKind::FormatError,
                          "non-monotone frequency on line " + std::to_string(tok.line));
                ok = false;
                break;
            }
            prev = f;
        }
        if (!ok)
            continue;
        if (!noise && data.size() % rec != 0) {
            if (strict)
                raise(ErrorKind::FormatError,
                      "record arity mismatch near line " + std::to_string(data.back().line));
            continue;
        }

        SParameterSet set;
        set.n_ports = n;
        set.reference_ohms = opt.resistance;
        set.frequencies_hz.reserve(keep);
        set.matrices.reserve(keep);
        for (std::size_t r = 0; r < keep; ++r) {
            const Token* rt = &data[r * rec];
            set.frequencies_hz.push_back(detail::parse_number(rt[0]) * opt.unit_scale);
            std::vector<cplx> m(n * n);
            for (std::size_t p = 0; p < n * n; ++p) {
                const double a = detail::parse_number(rt[1 + 2 * p]);
                const double b = detail::parse_number(rt[2 + 2 * p]);
                m[detail::pair_slot(p, n)] = detail::decode_pair(opt.format, a, b);
            }
            set.matrices.push_back(std::move(m));
        }
        if (warnings)
            warnings->noise_section_ignored = noise;
        set.validate();
        return set;
    }
    raise(ErrorKind::FormatError,
          "record arity mismatch near line " + std::to_string(data.back().line));
}

inline std::string write_touchstone(const SParameterSet& net, TouchstoneFormat format,
                                    FrequencyUnit unit = FrequencyUnit::Hz)
{
    if (net.frequencies_hz.empty())
        raise(ErrorKind::FormatError, "refusing to write an empty network");
    net.validate();

    const auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const auto encode = [&](const cplx& s, double& a, double& b) {
        switch (format) {
        case TouchstoneFormat::RI:
            a = s.real();
            b = s.imag();
            return;
        case TouchstoneFormat::MA:
            a = std::abs(s);
            b = std::arg(s) * 180.0 / std::numbers::pi;
            return;
        case TouchstoneFormat::DB:
            a = 20.0 * std::log10(std::max(std::abs(s), 1e-300));
            b = std::arg(s) * 180.0 / std::numbers::pi;
            return;
        }
    };
    const char* fmt_token = format == TouchstoneFormat::RI   ? "RI"
                            : format == TouchstoneFormat::MA ? "MA"
                                                             : "DB";
    std::string out;
    out += "! ";
    out += std::to_string(net.n_ports);
    out += "-port S-parameter data\n# ";
    out += unit_token(unit);
    out += " S ";
    out += fmt_token;
    out += " R ";
    out += num(net.reference_ohms);
    out += "\n";

    const std::size_t n = net.n_ports;
    const double scale = unit_scale(unit);
    for (std::size_t f = 0; f < net.frequencies_hz.size(); ++f) {
        out += num(net.frequencies_hz[f] / scale);
        if (n <= 2) {
            for (std::size_t p = 0; p < n * n; ++p) {
                double a, b;
                encode(net.matrices[f][detail::pair_slot(p, n)], a, b);
                out += " " + num(a) + " " + num(b);
            }
            out += "\n";
        } else {
            // one matrix row per line, at most four pairs per line
            for (std::size_t r = 0; r < n; ++r) {
                std::size_t on_line = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (on_line == 4) {
                        out += "\n";
                        on_line = 0;
                    }
                    double a, b;
                    encode(net.matrices[f][r * n + c], a, b);
                    out += " " + num(a) + " " + num(b);
                    ++on_line;
                }
                out += "\n";
            }
        }
    }
    return out;
}

struct ExtractInfo {
    bool dropped_dc = false;
    cplx dc_value{0.0, 0.0};
};

/// Pull element S_ij onto a BandlimitedSpectrum. A DC row in the file is
/// dropped (with a warning flag) so the recovery loop still runs and its
/// estimate stays comparable to the file's own value.
inline BandlimitedSpectrum extract_spectrum(const SParameterSet& net, std::size_t port_i,
                                            std::size_t port_j, ExtractInfo* info = nullptr)
{
    net.validate();
    if (port_i < 1 || port_i > net.n_ports || port_j < 1 || port_j > net.n_ports)
        raise(ErrorKind::InvalidInput, "port index out of range");

    std::size_t start = 0;
    if (!net.frequencies_hz.empty() && net.frequencies_hz.front() == 0.0) {
        if (info) {
            info->dropped_dc = true;
            info->dc_value = net.at(0, port_i, port_j);
        }
        start = 1;
    }
    std::vector<double> omegas;
    std::vector<cplx> values;
    for (std::size_t f = start; f < net.frequencies_hz.size(); ++f) {
        omegas.push_back(2.0 * std::numbers::pi * net.frequencies_hz[f]);
        values.push_back(net.at(f, port_i, port_j));
    }
    BandlimitedSpectrum out;
    out.grid = grid_from_omegas(omegas);
    out.values = std::move(values);
    out.validate();
    return out;
}

} // namespace specwave
