#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library's numerical routines except plain matrix arithmetic.

#include <cmath>
#include <random>

#include "lambdadyn/linalg.hpp"
#include "lambdadyn/model.hpp"

namespace testing_support {

using lambdadyn::Complex;
using lambdadyn::ComplexMatrix;

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  ComplexMatrix m(n, n);
  for (auto& z : m.entries()) z = Complex(dist(rng), dist(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  const ComplexMatrix a = random_matrix(rng, n, scale);
  return (a + a.adjoint()) * Complex(0.5, 0.0);
}

/// Random full-rank density matrix A A^dagger / tr.
inline ComplexMatrix random_density(std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(rng, 3);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Truncated Taylor series with scaling and squaring by plain products.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a, int terms = 60) {
  double norm = 0.0;
  for (const auto& z : a.entries()) norm += std::norm(z);
  norm = std::sqrt(norm);
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const ComplexMatrix scaled = a * Complex(std::ldexp(1.0, -squarings), 0.0);
  ComplexMatrix term = ComplexMatrix::identity(a.rows());
  ComplexMatrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * scaled * Complex(1.0 / k, 0.0);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Lindblad dissipator applied directly to a density matrix:
/// sum_k c_k (L rho L^dagger - 1/2 {L^dagger L, rho}).
inline ComplexMatrix lindblad_direct(const lambdadyn::LambdaParams& p, const ComplexMatrix& rho) {
  const ComplexMatrix s12 = ComplexMatrix::unit(3, 0, 1);  // |1><2|
  const ComplexMatrix s32 = ComplexMatrix::unit(3, 2, 1);  // |3><2|
  const struct {
    ComplexMatrix l;
    double rate;
  } channels[] = {{s12, p.gamma_12 * (p.nbar_12 + 1.0)},
                  {s12.adjoint(), p.gamma_12 * p.nbar_12},
                  {s32, p.gamma_23 * (p.nbar_23 + 1.0)},
                  {s32.adjoint(), p.gamma_23 * p.nbar_23}};
  ComplexMatrix out(3, 3);
  for (const auto& c : channels) {
    const ComplexMatrix ld = c.l.adjoint();
    const ComplexMatrix ll = ld * c.l;
    out += (c.l * rho * ld - (ll * rho + rho * ll) * Complex(0.5, 0.0)) * Complex(c.rate, 0.0);
  }
  return out;
}

/// Characteristic polynomial value det(z I - a) by cofactor-free Gaussian
/// elimination with partial pivoting.
inline Complex det(ComplexMatrix m) {
  const std::size_t n = m.rows();
  Complex d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    }
    if (m(piv, c) == Complex(0.0)) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

}  // namespace testing_support
