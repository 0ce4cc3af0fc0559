#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lambdadyn/errors.hpp"
#include "lambdadyn/model.hpp"
#include "support.hpp"

using namespace lambdadyn;

namespace {

constexpr double kPi = std::numbers::pi;

double hermiticity(const ComplexMatrix& m) { return max_abs_diff(m, m.adjoint()); }

LambdaParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LambdaParams p;
  p.e1 = -1.0 + u(rng);
  p.e3 = p.e1 + 0.5 + u(rng);
  p.e2 = p.e3 + 3.0 + 4.0 * u(rng);
  p.omega_p = 1.0 + 8.0 * u(rng);
  p.omega_c = 1.0 + 6.0 * u(rng);
  p.rabi_p = 2.0 * u(rng);
  p.rabi_c = 10.0 * u(rng);
  p.gamma_12 = u(rng);
  p.gamma_23 = u(rng);
  p.nbar_12 = 0.5 * u(rng);
  p.nbar_23 = 0.5 * u(rng);
  return p;
}

}  // namespace

TEST(LambdaParams, Validation) {
  EXPECT_NO_THROW(table_case("A-II").validate());
  LambdaParams p = table_case("A-I");
  p.e3 = 7.0;  // e2 no longer highest
  EXPECT_THROW(p.validate(), ArgumentError);
  p = table_case("A-I");
  p.e3 = 5.0;  // |e1 - e3| exceeds |e2 - e3|
  EXPECT_THROW(p.validate(), ArgumentError);
  p = table_case("A-I");
  p.rabi_p = -1.0;
  EXPECT_THROW(p.validate(), ArgumentError);
  p = table_case("A-I");
  p.omega_c = 0.0;
  EXPECT_THROW(p.validate(), ArgumentError);
  p = table_case("A-I");
  p.nbar_23 = -0.1;
  EXPECT_THROW(p.validate(), ArgumentError);
}

TEST(LambdaParams, Presets) {
  const auto names = table_case_names();
  EXPECT_EQ(names.size(), 6u);
  const LambdaParams a2 = table_case("A-II");
  EXPECT_EQ(a2.e1, 0.0);
  EXPECT_EQ(a2.e2, 6.0);
  EXPECT_EQ(a2.e3, 2.0);
  EXPECT_EQ(a2.omega_p, 6.0);
  EXPECT_EQ(a2.omega_c, 4.0);
  EXPECT_EQ(a2.rabi_c, 1.12);
  EXPECT_EQ(a2.rabi_p, 1.00);
  EXPECT_EQ(a2.gamma_12, 0.9);
  EXPECT_EQ(a2.gamma_23, 1.0);
  EXPECT_EQ(a2.nbar_12, 0.0);
  EXPECT_FALSE(table_case("A-I").dissipative());
  EXPECT_EQ(table_case("B-I").rabi_c, 0.20);
  EXPECT_EQ(table_case("C-II").rabi_c, 10.0);
  EXPECT_THROW(table_case("D-I"), ArgumentError);
}

TEST(LambdaParams, TwoPhotonResonantConstructor) {
  const auto p = LambdaParams::two_photon_resonant(0, 6, 2, 1, 1.12, 0.9, 1.0, 0.25, 0.25);
  EXPECT_DOUBLE_EQ(p.omega_p, 6.25);
  EXPECT_DOUBLE_EQ(p.omega_c, 4.25);
  EXPECT_DOUBLE_EQ(p.omega_p - p.omega_c, p.e3 - p.e1);
}

TEST(H0, Examples) {
  const std::vector<Complex> d = {0.0, 6.0, 2.0};
  EXPECT_EQ(h0(table_case("A-I")), ComplexMatrix::diagonal(d));
  LambdaParams zero;
  EXPECT_EQ(h0(zero), ComplexMatrix(3, 3));
  LambdaParams shifted = table_case("A-I");
  shifted.e1 += 1.5;
  shifted.e2 += 1.5;
  shifted.e3 += 1.5;
  EXPECT_LE(max_abs_diff(h0(shifted), h0(table_case("A-I")) + ComplexMatrix::identity(3) * 1.5),
            1e-15);
}

TEST(HSr, Examples) {
  const LambdaParams p = table_case("A-I");
  const ComplexMatrix h = h_sr(p, 0.0);
  EXPECT_EQ(h(0, 1), Complex(-1.00));
  EXPECT_EQ(h(1, 0), Complex(-1.00));
  EXPECT_EQ(h(1, 2), Complex(-1.12));
  EXPECT_EQ(h(2, 1), Complex(-1.12));
  EXPECT_EQ(h(0, 0), Complex(0.0));
  EXPECT_EQ(h(0, 2), Complex(0.0));
  EXPECT_EQ(h(1, 1), Complex(0.0));

  LambdaParams undriven = p;
  undriven.rabi_p = undriven.rabi_c = 0.0;
  EXPECT_EQ(h_sr(undriven, 0.7), ComplexMatrix(3, 3));

  LambdaParams same = p;
  same.omega_p = same.omega_c = 2.0;
  EXPECT_LE(frobenius_norm(h_sr(same, kPi / 4.0)), 1e-15);
}

TEST(HSrRwa, Examples) {
  const LambdaParams p = table_case("A-I");
  EXPECT_LE(max_abs_diff(h_sr_rwa(p, 0.0), h_sr(p, 0.0) * 0.5), 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(std::abs(h_sr_rwa(p, u(rng))(0, 1)), 0.5, 1e-15);
  }
  const ComplexMatrix h = h_sr_rwa(p, kPi / p.omega_p);
  EXPECT_NEAR(h(1, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(h(1, 0).imag(), 0.0, 1e-15);
}

TEST(Hamiltonians, HermitianEverywhere) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 50; ++i) {
    const LambdaParams p = random_params(rng);
    const double t = u(rng);
    EXPECT_LE(hermiticity(h0(p)), 1e-14);
    EXPECT_LE(hermiticity(h_sr(p, t)), 1e-14);
    EXPECT_LE(hermiticity(h_sr_rwa(p, t)), 1e-14);
    EXPECT_LE(hermiticity(h_rwf(p)), 1e-14);
  }
}

TEST(RotatingFrame, UnitaryExamples) {
  const LambdaParams p = table_case("A-I");
  EXPECT_EQ(rwf_unitary(p, 0.0), ComplexMatrix::identity(3));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix w = rwf_unitary(p, u(rng));
    EXPECT_LE(max_abs_diff(w * w.adjoint(), ComplexMatrix::identity(3)), 1e-14);
  }
  EXPECT_LE(max_abs_diff(rwf_unitary(p, kPi), ComplexMatrix::identity(3)), 1e-12);
}

TEST(RotatingFrame, HrwfExamples) {
  const ComplexMatrix h = h_rwf(table_case("A-I"));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(h(i, i)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(h(0, 1).real(), -0.5);
  EXPECT_DOUBLE_EQ(h(1, 2).real(), -0.56);
  EXPECT_EQ(h(0, 2), Complex(0.0));

  LambdaParams off = table_case("A-I");
  off.rabi_p = off.rabi_c = 0.0;
  EXPECT_EQ(h_rwf(off), ComplexMatrix(3, 3));

  LambdaParams detuned = table_case("A-I");
  detuned.omega_p = 5.75;
  EXPECT_NEAR(h_rwf(detuned)(1, 1).real(), detuned.e2 - detuned.omega_p, 1e-15);
}

TEST(RotatingFrame, HrwfIsTheFrameHamiltonian) {
  // W^dagger H_rwa W - i W^dagger dW/dt, derivative by central differences
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 10; ++i) {
    LambdaParams p = random_params(rng);
    p.e1 = 0.0;
    const double t = u(rng);
    const double h = 1e-5;
    const ComplexMatrix w = rwf_unitary(p, t);
    const ComplexMatrix dw = (rwf_unitary(p, t + h) - rwf_unitary(p, t - h)) / Complex(2 * h, 0);
    const ComplexMatrix frame =
        w.adjoint() * hamiltonian(p, t, Drive::Rwa) * w - w.adjoint() * dw * Complex(0, 1);
    EXPECT_LE(max_abs_diff(frame, h_rwf(p)), 1e-8);
  }
}

TEST(RotatingFrame, TransformProperties) {
  std::mt19937_64 rng(7);
  const LambdaParams p = table_case("A-II");
  const DensityMatrix rho(testing_support::random_density(rng));
  EXPECT_EQ(rwf_transform(rho, p, 0.0).matrix(), rho.matrix());
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng);
    const DensityMatrix r = rwf_transform(rho, p, t);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(r(k, k) - rho(k, k)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r(0, 2)), std::abs(rho(0, 2)), 1e-15);
    EXPECT_NEAR(std::abs(r.matrix().trace() - 1.0), 0.0, 1e-12);
    EXPECT_LE(hermiticity(r.matrix()), 1e-12);
    const auto e1 = eigvalsh(r.matrix());
    const auto e0 = eigvalsh(rho.matrix());
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(e1[k], e0[k], 1e-12);
    // phase convention: rho~_12 = e^{-i omega_p t} rho_12
    EXPECT_LE(std::abs(r(0, 1) - std::exp(Complex(0, -p.omega_p * t)) * rho(0, 1)), 1e-14);
  }
}

TEST(JumpOperators, Rates) {
  const auto jumps = jump_operators(table_case("A-II"));
  ASSERT_EQ(jumps.size(), 4u);
  EXPECT_DOUBLE_EQ(jumps[0].rate, 0.9);
  EXPECT_DOUBLE_EQ(jumps[1].rate, 0.0);
  EXPECT_DOUBLE_EQ(jumps[2].rate, 1.0);
  EXPECT_DOUBLE_EQ(jumps[3].rate, 0.0);
  EXPECT_EQ(jumps[0].op, ComplexMatrix::unit(3, 0, 1));
  EXPECT_EQ(jumps[1].op, ComplexMatrix::unit(3, 1, 0));
  EXPECT_EQ(jumps[2].op, ComplexMatrix::unit(3, 2, 1));
  EXPECT_EQ(jumps[3].op, ComplexMatrix::unit(3, 1, 2));

  for (const auto& j : jump_operators(table_case("A-I"))) EXPECT_EQ(j.rate, 0.0);

  LambdaParams thermal = table_case("A-II");
  thermal.gamma_12 = 2.0;
  thermal.nbar_12 = 1.0;
  const auto tj = jump_operators(thermal);
  EXPECT_DOUBLE_EQ(tj[0].rate, 4.0);
  EXPECT_DOUBLE_EQ(tj[1].rate, 2.0);
}

TEST(Vectorization, BasisAndRoundTrip) {
  auto v = vec(ComplexMatrix::unit(3, 0, 0));
  EXPECT_EQ(v[0], Complex(1.0));
  v = vec(ComplexMatrix::unit(3, 0, 1));
  EXPECT_EQ(v[1], Complex(1.0));
  EXPECT_EQ(std::count(v.begin(), v.end(), Complex(0.0)), 8);
  std::mt19937_64 rng(8);
  const ComplexMatrix a = testing_support::random_matrix(rng, 3);
  EXPECT_EQ(unvec(vec(a)), a);
  EXPECT_THROW(vec(ComplexMatrix(2, 2)), DimensionError);
  EXPECT_THROW(unvec(std::vector<Complex>(8)), DimensionError);
}

TEST(Liouvillian, MatchesCommutator) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const LambdaParams p = random_params(rng);
    const double t = u(rng);
    for (Drive d : {Drive::Full, Drive::Rwa}) {
      const ComplexMatrix h = hamiltonian(p, t, d);
      const ComplexMatrix rho = testing_support::random_matrix(rng, 3);
      const auto v = vec(rho);
      const ComplexMatrix lhs =
          unvec(liouvillian(p, t, d).matrix() * std::span<const Complex>(v));
      EXPECT_LE(max_abs_diff(lhs, h * rho - rho * h), 1e-13);
      const ComplexMatrix herm = testing_support::random_density(rng);
      const auto hv = vec(herm);
      const ComplexMatrix gen = unvec(liouvillian(p, t, d).matrix() * std::span<const Complex>(hv));
      EXPECT_LE(std::abs(gen.trace()), 1e-13);
    }
  }
  LambdaParams zero;
  EXPECT_EQ(liouvillian(zero, 1.0, Drive::Full).matrix(), ComplexMatrix(9, 9));
}

TEST(Liouvillian, SpectrumIsEnergyDifferences) {
  const LambdaParams p = table_case("A-I");
  const double t = 0.37;
  const auto hev = eigvalsh(hamiltonian(p, t, Drive::Full));
  const auto lev = eig(liouvillian(p, t, Drive::Full).matrix());
  for (double a : hev) {
    for (double b : hev) {
      const Complex want(a - b, 0.0);
      EXPECT_TRUE(std::any_of(lev.begin(), lev.end(),
                              [&](const Complex& z) { return std::abs(z - want) < 1e-10; }));
    }
  }
}

TEST(Lindbladian, MatchesDirectFormula) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 20; ++i) {
    const LambdaParams p = random_params(rng);
    const ComplexMatrix rho = testing_support::random_matrix(rng, 3);
    const auto v = vec(rho);
    const ComplexMatrix lhs = unvec(lindbladian(p).matrix() * std::span<const Complex>(v));
    EXPECT_LE(max_abs_diff(lhs, testing_support::lindblad_direct(p, rho)), 1e-13);
  }
  EXPECT_EQ(lindbladian(table_case("A-I")).matrix(), ComplexMatrix(9, 9));
}

TEST(Lindbladian, TraceFunctionalAndHermiticity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const LambdaParams p = random_params(rng);
    const ComplexMatrix d = lindbladian(p).matrix();
    for (std::size_t col = 0; col < 9; ++col) {
      const Complex s = d(0, col) + d(4, col) + d(8, col);
      EXPECT_LE(std::abs(s), 1e-13);
    }
    const ComplexMatrix rho = testing_support::random_density(rng);
    const auto v = vec(rho);
    const ComplexMatrix out = unvec(d * std::span<const Complex>(v));
    EXPECT_LE(std::abs(out.trace()), 1e-12);
    EXPECT_LE(hermiticity(out), 1e-12);
  }
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix::pure_level(2));
  EXPECT_EQ(DensityMatrix::pure_level(0)(0, 0), Complex(1.0));
  EXPECT_THROW(DensityMatrix::pure_level(3), ArgumentError);
  const std::vector<Complex> bad_trace = {0.5, 0.5, 0.1};
  EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(bad_trace)), ArgumentError);
  const std::vector<Complex> negative = {1.2, -0.2, 0.0};
  EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(negative)), ArgumentError);
  ComplexMatrix nonherm = DensityMatrix::pure_level(0).matrix();
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nonherm}, ArgumentError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), DimensionError);
  EXPECT_THROW(SuperOperator(ComplexMatrix(3, 3)), DimensionError);
}

TEST(TraceBasis, RoundTripsAndTraceRow) {
  std::mt19937_64 rng(12);
  const ComplexMatrix rho = testing_support::random_density(rng);
  const auto c = to_trace_coordinates(rho);
  EXPECT_NEAR(std::abs(c[0] - rho.trace()), 0.0, 1e-15);
  EXPECT_LE(max_abs_diff(from_trace_coordinates(c), rho), 1e-15);

  const ComplexMatrix m = testing_support::random_matrix(rng, 9);
  EXPECT_LE(max_abs_diff(from_trace_basis(to_trace_basis(m)), m), 1e-13);

  const LambdaParams p = table_case("A-II");
  const ComplexMatrix gen = liouvillian(p, 0.3, Drive::Full).matrix() * Complex(0, -1) +
                            lindbladian(p).matrix();
  const ComplexMatrix t = to_trace_basis(gen);
  for (std::size_t j = 0; j < 9; ++j) EXPECT_LE(std::abs(t(0, j)), 1e-13);

  // the change of basis intertwines coordinates
  const auto direct = to_trace_coordinates(unvec(gen * std::span<const Complex>(vec(rho))));
  const auto via = t * std::span<const Complex>(c);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_LE(std::abs(direct[i] - via[i]), 1e-13);
}
