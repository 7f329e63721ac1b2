#pragma once

// Shared helpers for the test binaries: seeded random fixtures and
// independent oracles that never call the routine they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

#include "rqd/matfun.hpp"
#include "rqd/states.hpp"

namespace rqdtest {

inline Eigen::MatrixXcd ginibre(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = std::complex<double>(g(rng), g(rng));
  return m;
}

// full-rank random density matrix, G G^dag normalized
inline rqd::DensityMatrix random_density(std::vector<Eigen::Index> dims,
                                         std::mt19937& rng) {
  Eigen::Index n = 1;
  for (auto d : dims) n *= d;
  Eigen::MatrixXcd g = ginibre(n, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rqd::make_operator(rho, std::move(dims));
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937& rng) {
  Eigen::MatrixXcd g = ginibre(n, rng);
  return ((g + g.adjoint()) / 2.0).eval();
}

// Haar-ish unitary from the QR of a Ginibre draw
inline Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937& rng) {
  Eigen::MatrixXcd g = ginibre(n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// X-state parameters drawn strictly inside the constraint region
inline rqd::XStateParams random_x_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  rqd::XStateParams p;
  double w[4];
  double sum = 0;
  for (double& v : w) {
    v = 0.05 + u(rng);
    sum += v;
  }
  p.a = w[0] / sum;
  p.b = w[1] / sum;
  p.c = w[2] / sum;
  p.d = w[3] / sum;
  const double phase_d = 2 * M_PI * u(rng);
  const double phase_b = 2 * M_PI * u(rng);
  p.delta = 0.9 * std::sqrt(p.a * p.d) * u(rng) *
            std::complex<double>(std::cos(phase_d), std::sin(phase_d));
  p.beta_off = 0.9 * std::sqrt(p.b * p.c) * u(rng) *
               std::complex<double>(std::cos(phase_b), std::sin(phase_b));
  return p;
}

inline rqd::DensityMatrix bell_phi_plus() {
  rqd::XStateParams p;
  p.a = p.d = 0.5;
  p.b = p.c = 0.0;
  p.delta = 0.5;
  return rqd::x_state(p);
}

// rho = (I + c1 XX + c2 YY + c3 ZZ) / 4
inline rqd::DensityMatrix bell_diagonal(double c1, double c2, double c3) {
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  sz << 1, 0, 0, -1;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m += c1 * Eigen::kroneckerProduct(sx, sx);
  m += c2 * Eigen::kroneckerProduct(sy, sy);
  m += c3 * Eigen::kroneckerProduct(sz, sz);
  m *= 0.25;
  return rqd::make_operator(m, {2, 2});
}

// correlation triple that keeps all four eigenvalues away from zero
inline void random_bell_triple(std::mt19937& rng, double c[3]) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    for (int i = 0; i < 3; ++i) c[i] = 0.8 * u(rng);
    const double l0 = 1 - c[0] - c[1] - c[2];
    const double l1 = 1 - c[0] + c[1] + c[2];
    const double l2 = 1 + c[0] - c[1] + c[2];
    const double l3 = 1 + c[0] + c[1] - c[2];
    if (std::min({l0, l1, l2, l3}) > 0.05) return;
  }
}

// closed-form discord of a Bell-diagonal state (Luo's two-qubit result)
inline double luo_discord(double c1, double c2, double c3) {
  const double lam[4] = {0.25 * (1 - c1 - c2 - c3), 0.25 * (1 - c1 + c2 + c3),
                         0.25 * (1 + c1 - c2 + c3), 0.25 * (1 + c1 + c2 - c3)};
  double joint = 0;
  for (double l : lam)
    if (l > 1e-15) joint -= l * std::log2(l);
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  double classical = 0;
  if (c > 1e-15)
    classical = 0.5 * (1 - c) * std::log2(1 - c) +
                0.5 * (1 + c) * std::log2(1 + c);
  return 2.0 - joint - classical;
}

// rho_A (x) rho_B with both factors random
inline rqd::DensityMatrix random_product_state(std::mt19937& rng) {
  auto a = random_density({2}, rng);
  auto b = random_density({2}, rng);
  return rqd::make_operator(
      Eigen::kroneckerProduct(a.mat, b.mat).eval(), {2, 2});
}

// sum_ij p_ij |i><i| (x) |j><j| in the computational basis
inline rqd::DensityMatrix classical_classical(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::Vector4d p;
  for (int i = 0; i < 4; ++i) p(i) = u(rng);
  p /= p.sum();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = p(i);
  return rqd::make_operator(m, {2, 2});
}

// matrix exponential of -i H t by scaling and squaring on a plain Taylor sum
inline Eigen::MatrixXcd taylor_propagator(const Eigen::MatrixXcd& h, double t) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXcd a = std::complex<double>(0, -t) * h;
  int squarings = 0;
  double norm = a.cwiseAbs().sum();
  while (norm > 0.5) {
    a /= 2.0;
    norm /= 2.0;
    ++squarings;
  }
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 25; ++k) {
    term = (term * a / double(k)).eval();
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

}  // namespace rqdtest
