#pragma once

#include "tropwdvv/count_value.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tropwdvv {

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<CountValue>;
using RationalMatrix = Matrix<Rational>;

/// Fraction-free (Bareiss) determinant. Every intermediate division is exact.
CountValue bareiss_determinant(IntMatrix m);

/// Determinant of a rational matrix: each row is scaled to integers by the
/// lcm of its denominators, then Bareiss, then the scaling is divided out.
Rational determinant(const RationalMatrix& m);

enum class SolveStatus {
  Unique,            ///< nonsingular square system
  Inconsistent,      ///< no solution
  SingularConsistent ///< solutions exist but are not unique
};

struct SolveResult {
  SolveStatus status = SolveStatus::Inconsistent;
  std::vector<Rational> solution;  ///< filled only for Unique
  std::size_t rank = 0;
};

/// Exact Gaussian elimination on [a | b]. Non-square systems are allowed;
/// they can never be Unique unless rank == cols == rows.
SolveResult solve_exact(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace tropwdvv
