#pragma once

// CSV interchange formats used by every CLI stage, plus atomic file IO.
//
// Spectrum files: optional '#' comment lines, a header "omega_rad_s,re,im",
// one bin per row, angular frequencies ascending and uniform. Band-limited
// writers record "# n_missing=<k>".
//
// Signal files: header "t,x", rows sorted by time. In-memory signals are
// circular with index 0 at t = 0; the writer unwraps (negative times
// first) and the loader rewraps via the time column.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "specwave/core.hpp"
#include "specwave/errors.hpp"

namespace specwave {

namespace detail {

inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

struct CsvRow {
    std::vector<double> fields;
    std::size_t line;
};

/// Split into comment lines, one header line, and numeric rows.
inline std::vector<CsvRow> parse_csv(std::string_view text, std::string_view expected_header,
                                     std::vector<std::string>* comments = nullptr)
{
    std::vector<CsvRow> rows;
    bool seen_header = false;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        ++line_no;
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (comments)
                comments->push_back(line);
            continue;
        }
        if (!seen_header) {
            if (line != expected_header)
                raise(ErrorKind::FormatError, "expected header '" + std::string(expected_header) +
                                                  "' on line " + std::to_string(line_no));
            seen_header = true;
            continue;
        }
        CsvRow row;
        row.line = line_no;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                comma = line.size();
            const std::string cell = line.substr(start, comma - start);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size() || cell.empty())
                raise(ErrorKind::FormatError,
                      "bad number '" + cell + "' on line " + std::to_string(line_no));
            row.fields.push_back(v);
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (!seen_header)
        raise(ErrorKind::FormatError, "missing CSV header");
    return rows;
}

} // namespace detail

/// One-sided spectrum rows as stored on disk (may include a DC row).
struct SpectrumRows {
    std::vector<double> omegas;
    std::vector<cplx> values;
    long n_missing_comment = -1; ///< value of "# n_missing=<k>" when present
};

inline std::string spectrum_rows_to_csv(const SpectrumRows& rows)
{
    std::string out;
    if (rows.n_missing_comment >= 0)
        out += "# n_missing=" + std::to_string(rows.n_missing_comment) + "\n";
    out += "omega_rad_s,re,im\n";
    for (std::size_t i = 0; i < rows.omegas.size(); ++i) {
        out += detail::fmt_double(rows.omegas[i]) + "," +
               detail::fmt_double(rows.values[i].real()) + "," +
               detail::fmt_double(rows.values[i].imag()) + "\n";
    }
    return out;
}

inline SpectrumRows spectrum_rows_from_csv(std::string_view text)
{
    std::vector<std::string> comments;
    const auto parsed = detail::parse_csv(text, "omega_rad_s,re,im", &comments);
    SpectrumRows rows;
    for (const auto& c : comments) {
        const std::string key = "# n_missing=";
        if (c.rfind(key, 0) == 0)
            rows.n_missing_comment = std::strtol(c.c_str() + key.size(), nullptr, 10);
    }
    for (const auto& r : parsed) {
        if (r.fields.size() != 3)
            raise(ErrorKind::FormatError,
                  "expected 3 columns on line " + std::to_string(r.line));
        rows.omegas.push_back(r.fields[0]);
        rows.values.emplace_back(r.fields[1], r.fields[2]);
    }
    return rows;
}

inline std::string spectrum_to_csv(const BandlimitedSpectrum& spec)
{
    SpectrumRows rows;
    rows.n_missing_comment = static_cast<long>(spec.grid.n_missing);
    rows.omegas.resize(spec.grid.n_bins);
    for (std::size_t i = 1; i <= spec.grid.n_bins; ++i)
        rows.omegas[i - 1] = spec.grid.omega_at(i);
    rows.values = spec.values;
    return spectrum_rows_to_csv(rows);
}

/// Load a band-limited spectrum. A DC row is dropped with a warning flag
/// (mirrors the Touchstone path); the n_missing comment, when present,
/// must agree with the grid arithmetic.
inline BandlimitedSpectrum spectrum_from_csv(std::string_view text, bool* dropped_dc = nullptr)
{
    SpectrumRows rows = spectrum_rows_from_csv(text);
    std::size_t start = 0;
    if (!rows.omegas.empty() && rows.omegas.front() == 0.0)
        start = 1;
    if (dropped_dc)
        *dropped_dc = start > 0;
    std::vector<double> omegas(rows.omegas.begin() + static_cast<long>(start), rows.omegas.end());
    BandlimitedSpectrum out;
    out.grid = grid_from_omegas(omegas);
    out.values.assign(rows.values.begin() + static_cast<long>(start), rows.values.end());
    if (rows.n_missing_comment >= 0 &&
        static_cast<std::size_t>(rows.n_missing_comment) != out.grid.n_missing)
        raise(ErrorKind::FormatError, "n_missing comment disagrees with the frequency column");
    out.validate();
    return out;
}

/// Unwrap a circular signal to rows sorted by time.
inline std::string signal_to_csv(const TimeSignal& sig, bool centered = true)
{
    const std::size_t n = sig.samples.size();
    const std::size_t half = n / 2;
    std::string out = "t,x\n";
    const auto emit = [&](std::size_t idx, double t) {
        out += detail::fmt_double(t) + "," + detail::fmt_double(sig.samples[idx]) + "\n";
    };
    if (centered && n % 2 == 1) {
        for (std::size_t j = half + 1; j < n; ++j)
            emit(j, (static_cast<double>(j) - static_cast<double>(n)) * sig.t_step);
        for (std::size_t j = 0; j <= half; ++j)
            emit(j, static_cast<double>(j) * sig.t_step);
    } else {
        for (std::size_t j = 0; j < n; ++j)
            emit(j, static_cast<double>(j) * sig.t_step);
    }
    return out;
}

inline TimeSignal signal_from_csv(std::string_view text)
{
    const auto parsed = detail::parse_csv(text, "t,x");
    if (parsed.size() < 2)
        raise(ErrorKind::FormatError, "signal needs at least two samples");
    std::vector<double> times, values;
    for (const auto& r : parsed) {
        if (r.fields.size() != 2)
            raise(ErrorKind::FormatError,
                  "expected 2 columns on line " + std::to_string(r.line));
        times.push_back(r.fields[0]);
        values.push_back(r.fields[1]);
    }
    const std::size_t n = times.size();
    const double ts = (times.back() - times.front()) / static_cast<double>(n - 1);
    if (!(ts > 0.0))
        raise(ErrorKind::FormatError, "time column must be strictly ascending");
    TimeSignal out;
    out.t_step = ts;
    out.samples.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double steps = times[i] / ts;
        const long idx = std::lround(steps);
        if (std::abs(steps - static_cast<double>(idx)) > 1e-6)
            raise(ErrorKind::FormatError, "time column is not on a uniform grid");
        const long wrapped = ((idx % static_cast<long>(n)) + static_cast<long>(n)) %
                             static_cast<long>(n);
        out.samples[static_cast<std::size_t>(wrapped)] = values[i];
    }
    return out;
}

/// Write via temp file + rename so partial runs never leave truncated
/// artifacts.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            raise(ErrorKind::InvalidInput, "cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f)
            raise(ErrorKind::InvalidInput, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        raise(ErrorKind::InvalidInput, "cannot open " + path.string());
    std::string out((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return out;
}

} // namespace specwave
