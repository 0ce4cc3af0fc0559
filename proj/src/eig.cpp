#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lambdadyn/errors.hpp"
#include "lambdadyn/linalg.hpp"

namespace lambdadyn {

namespace {

constexpr std::size_t kMaxEigDimension = 64;
constexpr int kSweepsPerEigenvalue = 60;

// Householder reduction to upper Hessenberg form (similarity transform).
void reduce_to_hessenberg(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
    const double xnorm = std::sqrt(xnorm2);
    double tail = xnorm2 - std::norm(h(k + 1, k));
    if (xnorm == 0.0 || tail == 0.0) continue;

    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0, 0.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    std::fill(v.begin(), v.end(), Complex{});
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // H <- (I - beta v v^H) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(half_tr * half_tr - det);
  const Complex l1 = half_tr + disc;
  const Complex l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<Complex> eig(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("eig: matrix is not square");
  const std::size_t n = a.rows();
  if (n > kMaxEigDimension) {
    throw DimensionError("eig: dimension " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxEigDimension));
  }
  if (!a.all_finite()) throw ArgumentError("eig: non-finite entries");
  std::vector<Complex> values;
  values.reserve(n);
  if (n == 0) return values;

  ComplexMatrix h = a;
  reduce_to_hessenberg(h);
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = eps * std::max(frobenius_norm(a), std::numeric_limits<double>::min());

  int budget = kSweepsPerEigenvalue * static_cast<int>(n);
  int since_deflation = 0;
  std::size_t hi = n - 1;
  while (true) {
    // locate the start of the unreduced trailing block
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double local = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * local || sub <= floor) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      values.push_back(h(hi, hi));
      since_deflation = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }
    if (--budget < 0) {
      throw ConvergenceError("eig: shifted QR did not converge within the sweep budget");
    }
    ++since_deflation;

    Complex mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    if (since_deflation % 11 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.0);
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    std::vector<double> cs(hi - lo);
    std::vector<Complex> sn(hi - lo);
    // QR: left Givens rotations
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex x = h(k, k);
      const Complex y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double c;
      Complex s;
      if (r == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (std::abs(x) == 0.0) {
        c = 0.0;
        s = std::conj(y) / std::abs(y);
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[k - lo] = c;
      sn[k - lo] = s;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex p = h(k, j);
        const Complex q = h(k + 1, j);
        h(k, j) = c * p + s * q;
        h(k + 1, j) = -std::conj(s) * p + c * q;
      }
    }
    // RQ: right multiplication by the adjoint rotations
    for (std::size_t k = lo; k < hi; ++k) {
      const double c = cs[k - lo];
      const Complex s = sn[k - lo];
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex p = h(i, k);
        const Complex q = h(i, k + 1);
        h(i, k) = c * p + std::conj(s) * q;
        h(i, k + 1) = -s * p + c * q;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return values;
}

std::vector<double> eigvalsh(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("eigvalsh: matrix is not square");
  const ComplexMatrix herm = (a + a.adjoint()) * Complex(0.5, 0.0);
  std::vector<double> out;
  for (const auto& z : eig(herm)) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lambdadyn
