#pragma once

// Dense complex linear algebra for small matrices (3x3 operators, 9x9
// superoperators). Everything here is a value type; no operation mutates
// its inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lambdadyn {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// |i><j| in dimension n (zero-based indices).
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s) noexcept;
  ComplexMatrix& operator/=(Complex s) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator/(ComplexMatrix a, Complex s);

/// Matrix-vector product.
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Matrix exponential by scaling and squaring with a diagonal Pade core.
/// Throws DimensionError for non-square input.
ComplexMatrix expm(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a*b - b*a.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double one_norm(const ComplexMatrix& a);
/// Largest elementwise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// a^n by binary powering; n = 0 gives the identity.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long n);

/// Solve a*x = b by LU with partial pivoting.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// All eigenvalues of a general square matrix (Hessenberg reduction +
/// shifted QR). Order is unspecified. Throws ConvergenceError if the sweep
/// budget runs out and DimensionError for non-square or oversized input.
std::vector<Complex> eig(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part of
/// the input is used.
std::vector<double> eigvalsh(const ComplexMatrix& a);

}  // namespace lambdadyn
