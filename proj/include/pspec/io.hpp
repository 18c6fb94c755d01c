// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pspec/simulate.hpp"

namespace pspec {

/// One observation per line, optional header line, missing values as an
/// empty field or NA. Missing entries become NaN.
TimeSeries read_series_csv(const std::filesystem::path& path);

/// Write text atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Full-precision (%.17g) formatting used for all numeric output.
std::string format_double(double x);

std::string series_to_csv(const TimeSeries& series);
std::string periodogram_to_csv(const Periodogram& pgram);
std::string estimate_to_csv(const PsdEstimate& est);
std::string trace_to_csv(const Eigen::MatrixXd& param_trace);
std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows);

/// Knot vector as a JSON array, and back.
std::string knots_to_json(const KnotVector& kv);
KnotVector knots_from_json(const std::string& text, int degree = 3);

/// Flat `key = value` config file; later keys override earlier ones.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

/// Benchmark configuration from flat key-value text (see README).
BenchmarkConfig parse_benchmark_config(
    const std::map<std::string, std::string>& kv);

}  // namespace pspec
