#pragma once

// Dense exact matrices and fraction-free elimination.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace x0plane {

template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using IntVector = std::vector<mpz_class>;

/// Reduced echelon form computed without fractions. Every pivot entry of
/// `reduced` equals `pivot_value`, other entries of pivot columns are zero,
/// and rows at index >= pivots.size() are zero.
struct EchelonForm {
  IntMatrix reduced;
  std::vector<std::size_t> pivots;
  mpz_class pivot_value = 1;

  std::size_t rank() const { return pivots.size(); }
};

/// Fraction-free Gauss-Jordan elimination (Bareiss update with exact
/// division by the previous pivot).
EchelonForm fraction_free_rref(IntMatrix m);

/// Scale every row by the lcm of its denominators. The row space, and hence
/// the right kernel, is unchanged.
IntMatrix clear_denominators(const RatMatrix& m);

/// Basis of the right nullspace as primitive integer vectors, one per free
/// column in increasing column order. Empty when the kernel is trivial.
std::vector<IntVector> kernel(const IntMatrix& m);
std::vector<IntVector> kernel(const RatMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Divide by the gcd of the entries (the zero vector is returned unchanged).
IntVector primitive_part(IntVector v);

/// M * v over the integers.
IntVector multiply(const IntMatrix& m, std::span<const mpz_class> v);

} // namespace x0plane
