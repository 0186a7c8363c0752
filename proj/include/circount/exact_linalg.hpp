#pragma once

// Exact linear algebra over Z and Q: row reduction, Hermite and Smith
// factorizations, primitive kernels, mod-2 rank and logarithmic heights.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "circount/bigfloat.hpp"

namespace circount {

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
    return out;
  }

  Matrix select_rows(std::span<const std::size_t> rows) const {
    Matrix out(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(rows[k], j);
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using IntVector = std::vector<mpz_class>;
using RatVector = std::vector<mpq_class>;

RatMatrix to_rational(const IntMatrix& m);
std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

struct RrefResult {
  RatMatrix reduced;    // R
  RatMatrix transform;  // T with T * M == R
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination in exact rationals.
RrefResult rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
mpz_class determinant(const IntMatrix& m);

struct HermiteResult {
  IntMatrix transform;  // U, unimodular
  IntMatrix reduced;    // R = U * M, row echelon with positive pivots
};

/// Row-style Hermite normal form: entries above each pivot are reduced into [0, pivot).
HermiteResult hermite(const IntMatrix& m);

struct SmithTriple {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
};

/// U * M * V == S with U, V unimodular, S diagonal, s_1 | s_2 | ... and s_i >= 0.
SmithTriple smith(const IntMatrix& m);

/// Generator of the one-dimensional right kernel: gcd 1, first nonzero entry positive.
/// Throws RankError unless rank(m) == cols - 1.
IntVector primitive_right_kernel(const IntMatrix& m);

/// Rank of the entrywise mod-2 reduction over F_2.
std::size_t rank_mod2(const IntMatrix& m);

/// Logarithmic height h(p/q) = max(log|p|, log|q|), as a dyadic upper bound.
struct LogHeight {
  Dyadic value;
  double approx() const { return value.to_double(); }
};

LogHeight height(const mpq_class& q);

/// Exact integer power of a rational with a possibly negative exponent.
mpq_class pow(const mpq_class& base, const mpz_class& exponent);

/// gcd of all entries (non-negative).
mpz_class content(std::span<const mpz_class> v);

/// Pairwise coprime integers > 1 that multiplicatively generate every input
/// (inputs of magnitude 0 or 1 are ignored).
std::vector<mpz_class> coprime_basis(std::span<const mpz_class> values);

/// Whether prod |q_i|^(e_i) == 1 exactly, decided through a coprime basis of
/// the numerators and denominators. Every q_i must be nonzero.
bool multiplicatively_trivial(std::span<const mpq_class> bases, std::span<const mpz_class> exponents);

}  // namespace circount
