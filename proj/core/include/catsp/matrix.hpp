#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace catsp {

// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> values() const { return data_; }

  double max() const { return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end()); }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

}  // namespace catsp
