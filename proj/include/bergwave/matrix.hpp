#ifndef BERGWAVE_MATRIX_HPP
#define BERGWAVE_MATRIX_HPP

#include <complex>
#include <vector>

#include "bergwave/blaschke.hpp"
#include "bergwave/dd.hpp"

namespace bergwave {

// Minimal dense matrix, row-major.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, T{}) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  T* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const T* row(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * cols_;
  }

 private:
  int rows_, cols_;
  std::vector<T> data_;
};

using CMatrix = DenseMatrix<cplx>;
using DDMatrix = DenseMatrix<detail::ddcplx>;

}  // namespace bergwave

#endif  // BERGWAVE_MATRIX_HPP
