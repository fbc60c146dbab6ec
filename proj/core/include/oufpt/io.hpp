#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oufpt/laplace_verify.hpp"
#include "oufpt/mc_oracle.hpp"
#include "oufpt/process.hpp"

namespace oufpt::io {

/// Shortest decimal string that parses back to exactly x ("nan", "inf", "-inf"
/// for non-finite values).
std::string format_double(double x);

/// Parse a complete field as a double. Throws DomainError on trailing junk.
double parse_double(std::string_view field);

/// Write content to path through a temporary file in the same directory and
/// a rename, so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Density curve: CSV with header "t,g".
std::string density_csv(const DensityCurve& curve);
std::string density_json(const DensityCurve& curve);

struct Table {
    std::vector<double> first;
    std::vector<double> second;
};

/// Two numeric columns; the first line may be a header. Throws DomainError
/// naming the line on malformed input.
Table parse_two_columns(std::string_view text);

/// Rewrite parsed density CSV content byte-for-byte in the canonical format.
std::string density_csv(const Table& t);

/// Threshold tabulation (t, S). Times must be strictly increasing.
TabulatedThreshold parse_threshold_csv(std::string_view text);
TabulatedThreshold read_threshold_csv(const std::filesystem::path& path);

// Monte Carlo histogram: CSV bin_left,bin_right,count,density and JSON with
// the configuration echoed.
std::string mc_csv(const MCEstimate& est);
std::string mc_json(const MCEstimate& est, const OUParams& p, const Threshold& th, double x0);

std::string transform_csv(const std::vector<TransformCase>& cases, double tol);

std::string threshold_json(const Threshold& th);

struct RunManifest {
    std::string command;
    std::vector<std::string> argv;               // verbatim arguments after the command
    std::map<std::string, std::string> parameters;  // every resolved input
    std::vector<std::string> artifacts;
    std::string timestamp;     // UTC, ISO 8601
    std::string tool_version;

    std::string to_json() const;
    static RunManifest from_json(std::string_view text);
};

std::string utc_timestamp();

}  // namespace oufpt::io
