#include "lmcts/harness/results.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/simd/kernels.hpp"
#include "lmcts/version.hpp"

namespace lmcts {

std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& file)
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + file.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file)
{
    out.flush();
    if (!out) {
        throw Error("write failed: " + file.string());
    }
}

template <class T>
std::string join(const std::vector<T>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? "," : "") << v[i];
    }
    return s.str();
}

double parse_number(std::string_view s, const std::filesystem::path& file, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidInput(file.string() + ":" + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

void write_results(const std::filesystem::path& dir, const std::string& tag, const BatchResult& result,
                   const Metadata& extra)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create " + dir.string() + ": " + ec.message());
    }

    const auto curve_file = dir / (tag + "_curve.csv");
    {
        auto out = open_out(curve_file);
        out << "round,mean_cum_regret,stderr\n";
        for (std::size_t t = 0; t < result.agg.mean.size(); ++t) {
            out << t + 1 << ',' << format_number(result.agg.mean[t]) << ','
                << format_number(result.agg.std_error[t]) << '\n';
        }
        finish(out, curve_file);
    }

    Metadata meta = extra;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> warnings;
    double select_total = 0.0;
    double update_total = 0.0;
    for (std::size_t k = 0; k < result.records.size(); ++k) {
        const RunRecord& r = result.records[k];
        seeds.push_back(r.seed);
        const double sel = std::accumulate(r.select_s.begin(), r.select_s.end(), 0.0);
        const double upd = std::accumulate(r.update_s.begin(), r.update_s.end(), 0.0);
        select_total += sel;
        update_total += upd;
        const std::string key = "run" + std::to_string(k);
        meta[key + ".seed"] = std::to_string(r.seed);
        meta[key + ".rounds"] = std::to_string(r.rounds());
        meta[key + ".select_s"] = format_number(sel);
        meta[key + ".update_s"] = format_number(upd);
        if (r.truncated) {
            warnings.push_back("seed " + std::to_string(r.seed) + " truncated at " + std::to_string(r.rounds()) +
                               " of " + std::to_string(r.requested_rounds) + " rounds: environment exhausted");
        }
    }
    for (std::size_t i = 0; i < result.failed_seeds.size(); ++i) {
        warnings.push_back("seed " + std::to_string(result.failed_seeds[i]) + " failed: " + result.failures[i]);
    }
    meta["version"] = kVersion;
    meta["simd.backend"] = std::string(simd::backend_name(simd::active_backend()));
    meta["seeds"] = join(seeds);
    meta["runs.succeeded"] = std::to_string(result.records.size());
    meta["runs.failed"] = std::to_string(result.failed_seeds.size());
    meta["rounds"] = std::to_string(result.agg.mean.size());
    meta["cache_policy"] = result.records.front().cache_policy;
    meta["wall_s"] = format_number(result.wall_s);
    meta["select_s.total"] = format_number(select_total);
    meta["update_s.total"] = format_number(update_total);
    for (std::size_t i = 0; i < warnings.size(); ++i) {
        meta["warning" + std::to_string(i)] = warnings[i];
    }

    const auto meta_file = dir / (tag + "_meta.txt");
    {
        auto out = open_out(meta_file);
        for (const auto& [k, v] : meta) {
            out << k << " = " << v << '\n';
        }
        finish(out, meta_file);
    }

    for (std::size_t k = 0; k < result.records.size(); ++k) {
        const RunRecord& r = result.records[k];
        const auto file = dir / (tag + "_run" + std::to_string(k) + ".csv");
        auto out = open_out(file);
        out << "round,chosen,reward,regret,cum_regret,select_s,update_s\n";
        for (std::size_t t = 0; t < r.rounds(); ++t) {
            out << t + 1 << ',' << r.chosen[t] << ',' << format_number(r.reward[t]) << ','
                << format_number(r.regret[t]) << ',' << format_number(r.cum_regret[t]) << ','
                << format_number(r.select_s[t]) << ',' << format_number(r.update_s[t]) << '\n';
        }
        finish(out, file);
    }
}

Curve read_curve(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw InvalidInput("cannot read " + file.string());
    }
    Curve c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) {
            continue;
        }
        const auto a = line.find(',');
        const auto b = line.find(',', a + 1);
        if (a == std::string::npos || b == std::string::npos) {
            throw InvalidInput(file.string() + ":" + std::to_string(line_no) + ": expected 3 columns");
        }
        const std::string_view row(line);
        c.mean.push_back(parse_number(row.substr(a + 1, b - a - 1), file, line_no));
        c.std_error.push_back(parse_number(row.substr(b + 1), file, line_no));
    }
    return c;
}

Metadata read_metadata(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw InvalidInput("cannot read " + file.string());
    }
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            continue;
        }
        meta[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return meta;
}

} // namespace lmcts
