#include "lmcts/envs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "lmcts/core/error.hpp"
#include "lmcts/core/rng.hpp"

namespace lmcts {

std::optional<DatasetSpec> declared_spec(const std::string& name)
{
    static const DatasetSpec table[] = {
        {"shuttle", 9, 7, 58000},  {"magic", 10, 2, 19020},      {"mushroom", 22, 2, 8124},
        {"covertype", 54, 7, 581012}, {"cifar10", 3072, 10, 10000},
    };
    for (const auto& s : table) {
        if (s.name == name) {
            return s;
        }
    }
    return std::nullopt;
}

namespace {

[[noreturn]] void row_error(const std::filesystem::path& path, std::size_t line, const std::string& what)
{
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw InvalidInput(msg.str());
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

void min_max_normalize(Dataset& d)
{
    const std::size_t n = d.size();
    for (std::size_t j = 0; j < d.features; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, d.x[i * d.features + j]);
            hi = std::max(hi, d.x[i * d.features + j]);
        }
        const double span = hi - lo;
        for (std::size_t i = 0; i < n; ++i) {
            double& v = d.x[i * d.features + j];
            v = span > 0.0 ? (v - lo) / span : 0.0;
        }
    }
    d.normalized = true;
}

} // namespace

std::shared_ptr<const Dataset> make_dataset(std::size_t features, std::vector<double> x,
                                            std::vector<std::size_t> labels, std::size_t classes, bool normalize)
{
    if (features == 0 || x.size() != features * labels.size() || labels.empty()) {
        throw InvalidInput("dataset: need d >= 1, at least one row, and n * d feature values");
    }
    const std::size_t top = *std::max_element(labels.begin(), labels.end());
    if (classes == 0) {
        classes = top + 1;
    }
    if (top >= classes) {
        throw InvalidInput("dataset: label out of range");
    }
    auto d = std::make_shared<Dataset>();
    d->features = features;
    d->classes = classes;
    d->x = std::move(x);
    d->labels = std::move(labels);
    if (normalize) {
        min_max_normalize(*d);
    }
    return d;
}

std::shared_ptr<const Dataset> load_dataset(const std::filesystem::path& path, const DatasetFormat& format)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("dataset: cannot open " + path.string());
    }
    if (format.label_base != 0 && format.label_base != 1) {
        throw InvalidInput("dataset: label base must be 0 or 1");
    }
    std::vector<double> x;
    std::vector<std::size_t> labels;
    std::size_t features = 0;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> cells;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && format.header) {
            continue;
        }
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        cells.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = row.find(format.delimiter, start);
            cells.push_back(trim(row.substr(start, pos == std::string_view::npos ? pos : pos - start)));
            if (pos == std::string_view::npos) {
                break;
            }
            start = pos + 1;
        }
        if (cells.size() < 2) {
            row_error(path, line_no, "need at least one feature and a label");
        }
        if (features == 0) {
            features = cells.size() - 1;
        } else if (cells.size() - 1 != features) {
            std::ostringstream msg;
            msg << "expected " << features + 1 << " columns, found " << cells.size();
            row_error(path, line_no, msg.str());
        }
        for (std::size_t j = 0; j < features; ++j) {
            double v = 0.0;
            const auto cell = cells[j];
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                row_error(path, line_no, "column " + std::to_string(j + 1) + " is not a number");
            }
            x.push_back(v);
        }
        long long label = 0;
        const auto cell = cells.back();
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), label);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
            row_error(path, line_no, "label is not an integer");
        }
        label -= format.label_base;
        if (label < 0 || (format.classes > 0 && static_cast<std::size_t>(label) >= format.classes)) {
            row_error(path, line_no, "label out of range");
        }
        labels.push_back(static_cast<std::size_t>(label));
    }
    if (labels.empty()) {
        throw InvalidInput("dataset: " + path.string() + " has no rows");
    }
    std::size_t classes = format.classes;
    if (format.expect && classes == 0) {
        classes = format.expect->classes;
    }
    auto data = make_dataset(features, std::move(x), std::move(labels), classes, format.normalize);
    if (format.expect) {
        const DatasetSpec& e = *format.expect;
        if (data->features != e.features || data->classes != e.classes ||
            (e.instances > 0 && data->size() != e.instances)) {
            std::ostringstream msg;
            msg << "dataset: " << path.string() << " has d = " << data->features << ", N = " << data->classes
                << ", n = " << data->size() << " but '" << e.name << "' declares d = " << e.features
                << ", N = " << e.classes << ", n = " << e.instances;
            throw InvalidInput(msg.str());
        }
    }
    return data;
}

ArmSet embed_instance(std::span<const double> x, std::size_t classes)
{
    const std::size_t d = x.size();
    std::vector<double> data(classes * classes * d, 0.0);
    for (std::size_t j = 0; j < classes; ++j) {
        std::copy(x.begin(), x.end(), data.begin() + static_cast<std::ptrdiff_t>(j * classes * d + j * d));
    }
    return ArmSet(classes * d, std::move(data));
}

DatasetEnv::DatasetEnv(std::shared_ptr<const Dataset> data, std::uint64_t seed, bool wrap)
    : data_(std::move(data)), wrap_(wrap)
{
    if (!data_ || data_->size() == 0) {
        throw InvalidInput("dataset env: empty dataset");
    }
    order_.resize(data_->size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    RngStream rng(seed, streams::dataset_order);
    for (std::size_t i = order_.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(order_[i - 1], order_[j]);
    }
}

std::optional<ArmSet> DatasetEnv::arms(std::size_t t)
{
    if (t == 0) {
        throw InvalidInput("dataset env: rounds are numbered from 1");
    }
    std::size_t k = t - 1;
    if (k >= order_.size()) {
        if (!wrap_) {
            return std::nullopt;
        }
        k %= order_.size();
    }
    const std::size_t row = order_[k];
    label_ = data_->labels[row];
    return embed_instance({data_->x.data() + row * data_->features, data_->features}, data_->classes);
}

OracleChoice DatasetEnv::oracle_best(const ArmSet& arms) const
{
    if (arms.size() != data_->classes) {
        throw InvalidInput("dataset env: arm set does not match the class count");
    }
    return {label_, 1.0};
}

RoundOutcome DatasetEnv::pull(const ArmSet& arms, std::size_t index)
{
    if (index >= arms.size()) {
        throw InvalidInput("dataset env: arm index out of range");
    }
    RoundOutcome out;
    out.reward = index == label_ ? 1.0 : 0.0;
    out.chosen_expected = out.reward;
    out.best_expected = 1.0;
    out.regret = 1.0 - out.reward;
    return out;
}

std::map<std::string, std::string> DatasetEnv::describe() const
{
    return {{"env.kind", "dataset"},
            {"env.features", std::to_string(data_->features)},
            {"env.classes", std::to_string(data_->classes)},
            {"env.d", std::to_string(data_->context_dim())},
            {"env.instances", std::to_string(data_->size())},
            {"env.normalized", data_->normalized ? "true" : "false"},
            {"env.wrap", wrap_ ? "true" : "false"}};
}

} // namespace lmcts
