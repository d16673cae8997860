#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lmcts {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Context vector of a single arm.
using ArmFeature = Vector;

// Ordered, non-empty set of arms sharing one dimension. Stored row-major so
// the SIMD kernels can stream over arms without copies.
class ArmSet {
public:
    ArmSet() = default;
    ArmSet(std::size_t dim, std::vector<double> row_major);
    explicit ArmSet(const std::vector<ArmFeature>& arms);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    ArmFeature arm(std::size_t i) const;
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const ArmSet&, const ArmSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// Index of the largest score; ties resolve to the lowest index.
std::size_t argmax_lowest(std::span<const double> scores);

inline std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<double> as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace lmcts
