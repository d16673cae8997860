#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lmcts/envs/environment.hpp"

namespace lmcts {

// Expected shape of a known classification dataset.
struct DatasetSpec {
    std::string name;
    std::size_t features = 0;
    std::size_t classes = 0;
    std::size_t instances = 0;
    std::size_t context_dim() const noexcept { return features * classes; }
};

// Table of known datasets (shuttle, magic, mushroom, covertype, cifar10).
std::optional<DatasetSpec> declared_spec(const std::string& name);

struct DatasetFormat {
    char delimiter = ',';
    bool header = false;
    int label_base = 0; // 0: labels in [0, N-1]; 1: labels in [1, N]
    bool normalize = true;
    // 0 infers the class count from the largest label.
    std::size_t classes = 0;
    std::optional<DatasetSpec> expect;
};

// Loaded instances, shared read-only between runs. Features are row-major.
struct Dataset {
    std::size_t features = 0;
    std::size_t classes = 0;
    std::vector<double> x;
    std::vector<std::size_t> labels;
    bool normalized = false;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t context_dim() const noexcept { return features * classes; }
};

// Parses a delimited text file: d feature columns then an integer label.
// Throws InvalidInput with the row number on malformed rows, out-of-range
// labels, or a mismatch against format.expect.
std::shared_ptr<const Dataset> load_dataset(const std::filesystem::path& path, const DatasetFormat& format);

// In-memory variant of load_dataset for already-split columns.
std::shared_ptr<const Dataset> make_dataset(std::size_t features, std::vector<double> x,
                                            std::vector<std::size_t> labels, std::size_t classes, bool normalize);

// Classification as a bandit: instance x with label y becomes N arms, arm j
// holding x in block j of an N*d vector. Only arm y pays 1. Instances are
// presented in an order shuffled per seed (stream dataset_order).
class DatasetEnv final : public Environment {
public:
    DatasetEnv(std::shared_ptr<const Dataset> data, std::uint64_t seed, bool wrap = false);

    std::size_t dim() const override { return data_->context_dim(); }
    std::optional<ArmSet> arms(std::size_t t) override;
    RoundOutcome pull(const ArmSet& arms, std::size_t index) override;
    OracleChoice oracle_best(const ArmSet& arms) const override;
    std::map<std::string, std::string> describe() const override;

    const Dataset& data() const noexcept { return *data_; }
    const std::vector<std::size_t>& order() const noexcept { return order_; }
    // Label of the instance shown in the current round.
    std::size_t current_label() const noexcept { return label_; }

private:
    std::shared_ptr<const Dataset> data_;
    bool wrap_;
    std::vector<std::size_t> order_;
    std::size_t label_ = 0;
};

// Block embedding of one instance.
ArmSet embed_instance(std::span<const double> x, std::size_t classes);

} // namespace lmcts
