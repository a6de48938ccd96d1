#include "tropwdvv/exact_linalg.hpp"

#include <utility>

namespace tropwdvv {

CountValue bareiss_determinant(IntMatrix m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  int sign = 1;
  CountValue previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        CountValue value = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = std::move(value);
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  IntMatrix scaled(m.rows(), m.cols());
  CountValue scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    CountValue row_lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      scaled(r, c) = m(r, c).get_num() * (row_lcm / m(r, c).get_den());
    }
    scale *= row_lcm;
  }
  Rational result(bareiss_determinant(std::move(scaled)), scale);
  result.canonicalize();
  return result;
}

SolveResult solve_exact(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side has the wrong length");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  RationalMatrix m(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = a(r, c);
    m(r, cols) = b[r];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = pivot_row;
    while (found < rows && m(found, c) == 0) ++found;
    if (found == rows) continue;
    if (found != pivot_row) {
      for (std::size_t k = 0; k <= cols; ++k) std::swap(m(found, k), m(pivot_row, k));
    }
    const Rational pivot = m(pivot_row, c);
    for (std::size_t k = c; k <= cols; ++k) m(pivot_row, k) /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k <= cols; ++k) m(r, k) -= factor * m(pivot_row, k);
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }

  SolveResult result;
  result.rank = pivot_cols.size();
  for (std::size_t r = result.rank; r < rows; ++r) {
    if (m(r, cols) != 0) {
      result.status = SolveStatus::Inconsistent;
      return result;
    }
  }
  if (result.rank < cols) {
    result.status = SolveStatus::SingularConsistent;
    return result;
  }
  result.status = SolveStatus::Unique;
  result.solution.assign(cols, Rational(0));
  for (std::size_t r = 0; r < result.rank; ++r) result.solution[pivot_cols[r]] = m(r, cols);
  return result;
}

}  // namespace tropwdvv
