#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "meso/errors.hpp"

namespace meso {

// Dense row-major K x K matrix. K is small (number of groups), so a flat
// vector is all that is needed.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw InputError("SquareMatrix: rows must all have length " + std::to_string(n_));
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  const std::vector<T>& values() const noexcept { return data_; }

  bool is_symmetric() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b)
        if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace meso
