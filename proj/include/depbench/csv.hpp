#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "depbench/power.hpp"
#include "depbench/scenarios.hpp"
#include "depbench/types.hpp"

namespace depbench {

// 17 significant digits: enough for any double to round-trip exactly, and
// locale-independent.
inline std::string format_real(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

inline std::string csv_line(const PowerResult& r) {
    std::string row;
    row += scenario_name(r.scenario);
    row += ',';
    row += format_real(r.sigma);
    row += ',';
    row += measure_name(r.measure);
    row += ',';
    row += std::to_string(r.n);
    row += ',';
    row += format_real(r.alpha);
    row += ',';
    row += std::to_string(r.alt_reps);
    row += ',';
    row += format_real(r.cutoff);
    row += ',';
    row += format_real(r.power);
    row += ',';
    row += std::to_string(r.master_seed);
    return row;
}

inline constexpr std::string_view kCsvHeader = "scenario,sigma,measure,n,alpha,reps,cutoff,power,seed";

inline void write_csv(const std::vector<PowerResult>& results, std::ostream& os) {
    if (results.empty()) throw std::invalid_argument("write_csv: no results");
    std::vector<PowerResult> sorted = results;
    std::sort(sorted.begin(), sorted.end(), [](const PowerResult& a, const PowerResult& b) {
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.measure < b.measure;
    });
    os << kCsvHeader << '\n';
    for (const PowerResult& r : sorted) os << csv_line(r) << '\n';
}

inline std::string write_csv(const std::vector<PowerResult>& results) {
    std::ostringstream os;
    write_csv(results, os);
    return os.str();
}

// Writes in binary mode so line endings are LF on every platform.
inline void emit_csv(const std::vector<PowerResult>& results, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path.string());
    write_csv(results, os);
    os.flush();
    if (!os) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

inline double parse_real_field(std::string_view f, const char* what) {
    double v = 0.0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
    if (r.ec != std::errc() || r.ptr != f.data() + f.size())
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + std::string(f) + "'");
    return v;
}

inline long long parse_int_field(std::string_view f, const char* what) {
    long long v = 0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
    if (r.ec != std::errc() || r.ptr != f.data() + f.size())
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + std::string(f) + "'");
    return v;
}

inline std::uint64_t parse_u64_field(std::string_view f, const char* what) {
    std::uint64_t v = 0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
    if (r.ec != std::errc() || r.ptr != f.data() + f.size())
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + std::string(f) + "'");
    return v;
}

}  // namespace detail

// Inverse of write_csv for the fields the CSV carries; the calibration
// replicate count is not stored, so it is assumed equal to reps.
inline std::vector<PowerResult> parse_results_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || std::string_view(line) != kCsvHeader)
        throw std::runtime_error("csv: missing or unexpected header");
    std::vector<PowerResult> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 9) throw std::runtime_error("csv: expected 9 fields, got row '" + line + "'");
        PowerResult r{};
        const auto sc = scenario_from_name(f[0]);
        if (!sc) throw std::runtime_error("csv: unknown scenario '" + std::string(f[0]) + "'");
        r.scenario = *sc;
        r.sigma = detail::parse_real_field(f[1], "sigma");
        const auto ms = measure_from_name(f[2]);
        if (!ms) throw std::runtime_error("csv: unknown measure '" + std::string(f[2]) + "'");
        r.measure = *ms;
        r.n = static_cast<int>(detail::parse_int_field(f[3], "n"));
        r.alpha = detail::parse_real_field(f[4], "alpha");
        r.alt_reps = static_cast<int>(detail::parse_int_field(f[5], "reps"));
        r.null_reps = r.alt_reps;
        r.cutoff = detail::parse_real_field(f[6], "cutoff");
        r.power = detail::parse_real_field(f[7], "power");
        r.master_seed = detail::parse_u64_field(f[8], "seed");
        out.push_back(r);
    }
    return out;
}

inline std::vector<PowerResult> parse_results_csv(const std::string& text) {
    std::istringstream is(text);
    return parse_results_csv(is);
}

}  // namespace depbench
