#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lmcts/harness/runner.hpp"

namespace lmcts {

using Metadata = std::map<std::string, std::string>;

// Shortest decimal text that parses back to exactly x.
std::string format_number(double x);

// Writes <tag>_curve.csv (round, mean_cum_regret, stderr), <tag>_meta.txt
// (sorted "key = value" lines: `extra` plus run facts such as seeds,
// version, SIMD backend and wall times) and one <tag>_run<k>.csv per record
// into dir, creating it if needed. Curves carry no timings, so reruns with
// equal inputs produce identical curve files.
void write_results(const std::filesystem::path& dir, const std::string& tag, const BatchResult& result,
                   const Metadata& extra);

struct Curve {
    std::vector<double> mean;
    std::vector<double> std_error;
};

Curve read_curve(const std::filesystem::path& file);
Metadata read_metadata(const std::filesystem::path& file);

} // namespace lmcts
