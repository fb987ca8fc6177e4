#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "corrclus/instance.hpp"
#include "corrclus/solver.hpp"

namespace corrclus::io {

struct ParseError : std::runtime_error {
    std::size_t line;  // 1-based
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Instance format, round-trip stable byte for byte:
///   ccv1 <n>\n
/// followed by n-1 rows; row i holds the labels of pairs (i, j) for
/// j = i+1..n-1 as '+'/'-' characters, each row ending in a single newline.
SignedCompleteGraph parse_instance(std::string_view text);
std::string serialize_instance(const SignedCompleteGraph& g);

/// Solution format:
///   ccsolv1 <n> <k>\n
///   <n space-separated cluster ids>\n
Clustering parse_solution(std::string_view text);
std::string serialize_solution(const Clustering& c);

/// FNV-1a over the serialized instance, as 16 hex digits.
std::string instance_hash_hex(const SignedCompleteGraph& g);

/// One benchmark record, emitted as a single JSON object per line.
struct RunReport {
    std::string instance_hash;
    std::string algorithm;
    ClusterId k = 1;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sample_override;
    std::optional<std::uint64_t> enumeration_budget;
    bool full_sample = false;
    EdgeCount agreements = 0;
    EdgeCount disagreements = 0;
    bool guarantee_valid = false;
    double wall_ms = 0.0;
    TraceInfo trace;
};

RunReport make_report(const SignedCompleteGraph& g, const std::string& algorithm,
                      const SolveReport& solved);

/// Serializes the record; throws logic_error if the complement identity
/// agreements + disagreements = n(n-1)/2 does not hold for `pairs`.
std::string report_line(const RunReport& r, EdgeCount pairs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
void append_line(const std::string& path, std::string_view line);

}  // namespace corrclus::io
