#include "rqd/dynamics.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "rqd/errors.hpp"
#include "rqd/states.hpp"

namespace rqd {

namespace {

constexpr int kMaxBathSpins = 64;       // binomials stay inside 64-bit
constexpr int kMaxBruteforceSpins = 6;  // dense full-space path

// Pascal's triangle up to kMaxBathSpins; C(64,32) still fits in uint64_t
const std::uint64_t* binomial_row(int n) {
  static const auto table = [] {
    auto rows = new std::uint64_t[kMaxBathSpins + 1][kMaxBathSpins + 1]();
    for (int i = 0; i <= kMaxBathSpins; ++i) {
      rows[i][0] = 1;
      for (int k = 1; k <= i; ++k)
        rows[i][k] = rows[i - 1][k - 1] + (k <= i - 1 ? rows[i - 1][k] : 0);
    }
    return rows;
  }();
  return table[n];
}

double ising_energy(const BathParams& b, double m1, double m2) {
  return b.q * m1 * m2 + b.alpha1 * m1 + b.alpha2 * m2;
}

// shared enumeration of the (j1, m1, j2, m2) table; fn(j1, m1, j2, m2, nu1*nu2)
template <typename Fn>
void for_each_sector(const BathParams& b, Fn&& fn) {
  for (int two_j1 = b.N1; two_j1 >= 0; two_j1 -= 2) {
    const double j1 = 0.5 * two_j1;
    const double nu1 = static_cast<double>(bath_degeneracy(b.N1, j1));
    for (int two_m1 = -two_j1; two_m1 <= two_j1; two_m1 += 2) {
      const double m1 = 0.5 * two_m1;
      for (int two_j2 = b.N2; two_j2 >= 0; two_j2 -= 2) {
        const double j2 = 0.5 * two_j2;
        const double nu2 = static_cast<double>(bath_degeneracy(b.N2, j2));
        for (int two_m2 = -two_j2; two_m2 <= two_j2; two_m2 += 2)
          fn(j1, m1, j2, 0.5 * two_m2, nu1 * nu2);
      }
    }
  }
}

double max_shift(const BathParams& b) {
  const double beta = 1.0 / b.T;
  double shift = -std::numeric_limits<double>::infinity();
  for (int two_m1 = -b.N1; two_m1 <= b.N1; two_m1 += 2)
    for (int two_m2 = -b.N2; two_m2 <= b.N2; two_m2 += 2)
      shift = std::max(shift, -beta * ising_energy(b, 0.5 * two_m1, 0.5 * two_m2));
  return shift;
}

void check_dimer_state(const DensityMatrix& rho, const char* who) {
  if (rho.dim() != 4 || rho.subsystem_dims != std::vector<Eigen::Index>{2, 2})
    throw std::invalid_argument(std::string(who) +
                                ": initial state must be 4x4 with factors (2, 2)");
  const ValidationReport report = validate_density_matrix(rho);
  if (!report.ok)
    throw std::invalid_argument(std::string(who) + ": initial state invalid: " +
                                report.summary());
}

}  // namespace

void validate_dimer_params(const DimerParams& d) {
  for (double v : d.eps)
    if (!std::isfinite(v)) throw std::invalid_argument("dimer eps must be finite");
  for (double v : d.gamma)
    if (!std::isfinite(v)) throw std::invalid_argument("dimer gamma must be finite");
  if (!std::isfinite(d.J1) || !std::isfinite(d.J2))
    throw std::invalid_argument("dimer J1/J2 must be finite");
}

void validate_bath_params(const BathParams& b) {
  auto check_n = [](int n, const char* name) {
    if (n <= 0 || n % 2 != 0 || n > kMaxBathSpins)
      throw std::invalid_argument(std::string(name) +
                                  " must be a positive even count of at most " +
                                  std::to_string(kMaxBathSpins) + ", got " +
                                  std::to_string(n));
  };
  check_n(b.N1, "N1");
  check_n(b.N2, "N2");
  if (!std::isfinite(b.alpha1) || !std::isfinite(b.alpha2) || !std::isfinite(b.q))
    throw std::invalid_argument("bath couplings must be finite");
  // +inf is allowed: 1/T is then exactly 0 and all Gibbs weights collapse to 1
  if (std::isnan(b.T) || !(b.T > 0.0))
    throw std::invalid_argument("bath temperature must be positive, got " +
                                std::to_string(b.T));
}

std::uint64_t bath_degeneracy(int n, double j) {
  if (n <= 0 || n > kMaxBathSpins)
    throw std::invalid_argument("bath_degeneracy: N must be in [1, " +
                                std::to_string(kMaxBathSpins) + "], got " +
                                std::to_string(n));
  const double k_real = 0.5 * n - j;
  const long k = std::lround(k_real);
  if (j < 0.0 || std::abs(k_real - k) > 1e-9 || k < 0 || j > 0.5 * n)
    throw std::invalid_argument("bath_degeneracy: j = " + std::to_string(j) +
                                " is not an admissible spin for N = " +
                                std::to_string(n));
  // nu(N, j) = C(N, N/2 - j) - C(N, N/2 - j - 1), the exact multiplet count
  const std::uint64_t* row = binomial_row(n);
  const std::uint64_t here = row[k];
  const std::uint64_t below = (k >= 1) ? row[k - 1] : 0;
  return here - below;
}

double partition_function(const BathParams& b) {
  validate_bath_params(b);
  const double beta = 1.0 / b.T;
  const double shift = max_shift(b);
  double acc = 0.0;
  for_each_sector(b, [&](double, double m1, double, double m2, double nu12) {
    acc += nu12 * std::exp(-beta * ising_energy(b, m1, m2) - shift);
  });
  return std::exp(shift) * acc;
}

std::vector<BathSector> bath_sectors(const BathParams& b) {
  validate_bath_params(b);
  const double beta = 1.0 / b.T;
  const double shift = max_shift(b);
  std::vector<BathSector> out;
  double total = 0.0;
  for_each_sector(b, [&](double j1, double m1, double j2, double m2, double nu12) {
    const double w = nu12 * std::exp(-beta * ising_energy(b, m1, m2) - shift);
    out.push_back({j1, m1, j2, m2, w});
    total += w;
  });
  for (BathSector& s : out) s.weight /= total;
  return out;
}

HermitianOperator sector_hamiltonian(const DimerParams& d, double m1, double m2) {
  validate_dimer_params(d);
  Eigen::Matrix2cd h1, h2;
  h1 << d.eps[0] + d.gamma[0] * m1, d.J1, d.J1, d.eps[1] + d.gamma[1] * m2;
  h2 << d.eps[2] + d.gamma[2] * m1, d.J2, d.J2, d.eps[3] + d.gamma[3] * m2;
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  // second dimer is the slow factor
  h.block<2, 2>(0, 0) = h1 + h2(0, 0) * id2;
  h.block<2, 2>(2, 2) = h1 + h2(1, 1) * id2;
  h.block<2, 2>(0, 2) = h2(0, 1) * id2;
  h.block<2, 2>(2, 0) = h2(1, 0) * id2;
  return make_operator(h, {2, 2});
}

Evolver::Evolver(const DimerParams& d, const BathParams& b) {
  validate_dimer_params(d);
  sectors_ = bath_sectors(b);

  // the sector Hamiltonian sees only (m1, m2); fold the (j1, j2) multiplicity
  // structure into per-magnetization weights before diagonalizing
  std::map<std::pair<int, int>, double> grouped;
  for (const BathSector& s : sectors_) {
    const auto key = std::make_pair(static_cast<int>(std::lround(2.0 * s.m1)),
                                    static_cast<int>(std::lround(2.0 * s.m2)));
    grouped[key] += s.weight;
  }
  branches_.reserve(grouped.size());
  for (const auto& [key, weight] : grouped) {
    const double m1 = 0.5 * key.first;
    const double m2 = 0.5 * key.second;
    const HermitianOperator h = sector_hamiltonian(d, m1, m2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h.mat);
    if (solver.info() != Eigen::Success)
      throw NumericalError("evolve/setup", "sector eigensolve failed");
    branches_.push_back({weight, solver.eigenvalues(), solver.eigenvectors()});
  }
}

DensityMatrix Evolver::evolve(const DensityMatrix& rho0, double t) const {
  check_dimer_state(rho0, "evolve");
  Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
  for (const Branch& br : branches_) {
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k)
      phases(k) = std::exp(std::complex<double>(0.0, -br.evals(k) * t));
    const Eigen::Matrix4cd u = br.evecs * phases.asDiagonal() * br.evecs.adjoint();
    acc.noalias() += br.weight * (u * rho0.mat * u.adjoint());
  }
  return make_operator(acc, {2, 2});
}

DensityMatrix evolve(const DensityMatrix& rho0, const DimerParams& d,
                     const BathParams& b, double t) {
  return Evolver(d, b).evolve(rho0, t);
}

DensityMatrix evolve_bruteforce(const DensityMatrix& rho0, const DimerParams& d,
                                const BathParams& b, double t) {
  validate_dimer_params(d);
  validate_bath_params(b);
  if (b.N1 > kMaxBruteforceSpins || b.N2 > kMaxBruteforceSpins)
    throw std::invalid_argument(
        "evolve_bruteforce: bath sizes above " +
        std::to_string(kMaxBruteforceSpins) + " spins are out of contract");
  check_dimer_state(rho0, "evolve_bruteforce");

  const double beta = 1.0 / b.T;
  const Eigen::Index nb1 = Eigen::Index{1} << b.N1;
  const Eigen::Index nb2 = Eigen::Index{1} << b.N2;
  const Eigen::Index nbath = nb1 * nb2;
  const Eigen::Index n = 4 * nbath;

  // magnetization of each bath configuration; bit set = spin up
  std::vector<double> m1s(nb1), m2s(nb2);
  for (Eigen::Index c = 0; c < nb1; ++c)
    m1s[c] = std::popcount(static_cast<std::uint64_t>(c)) - 0.5 * b.N1;
  for (Eigen::Index c = 0; c < nb2; ++c)
    m2s[c] = std::popcount(static_cast<std::uint64_t>(c)) - 0.5 * b.N2;

  const HermitianOperator h_bare = sector_hamiltonian(d, 0.0, 0.0);

  // factor order (dimer, bath 1, bath 2); every bath operator is diagonal
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index c1 = 0; c1 < nb1; ++c1)
    for (Eigen::Index c2 = 0; c2 < nb2; ++c2) {
      const double m1 = m1s[c1];
      const double m2 = m2s[c2];
      const Eigen::Index base = c1 * nb2 + c2;
      const double bath_diag = ising_energy(b, m1, m2);
      for (int dd = 0; dd < 4; ++dd) {
        const int d1bit = dd & 1;   // first dimer level: 0 -> |1>, 1 -> |2>
        const int d2bit = dd >> 1;  // second dimer level: 0 -> |3>, 1 -> |4>
        const double site = (d1bit ? d.gamma[1] * m2 : d.gamma[0] * m1) +
                            (d2bit ? d.gamma[3] * m2 : d.gamma[2] * m1);
        const Eigen::Index row = dd * nbath + base;
        for (int de = 0; de < 4; ++de)
          h(row, de * nbath + base) = h_bare.mat(dd, de);
        h(row, row) += site + bath_diag;
      }
    }

  // thermal bath weights, exponent-shifted like the sector path
  std::vector<double> wb(nbath);
  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index c1 = 0; c1 < nb1; ++c1)
    for (Eigen::Index c2 = 0; c2 < nb2; ++c2)
      shift = std::max(shift, -beta * ising_energy(b, m1s[c1], m2s[c2]));
  double norm = 0.0;
  for (Eigen::Index c1 = 0; c1 < nb1; ++c1)
    for (Eigen::Index c2 = 0; c2 < nb2; ++c2) {
      const double w = std::exp(-beta * ising_energy(b, m1s[c1], m2s[c2]) - shift);
      wb[c1 * nb2 + c2] = w;
      norm += w;
    }
  for (double& w : wb) w /= norm;

  Eigen::MatrixXcd rho_full = Eigen::MatrixXcd::Zero(n, n);
  for (int dr = 0; dr < 4; ++dr)
    for (int dc = 0; dc < 4; ++dc)
      for (Eigen::Index cb = 0; cb < nbath; ++cb)
        rho_full(dr * nbath + cb, dc * nbath + cb) = rho0.mat(dr, dc) * wb[cb];

  const Eigen::MatrixXcd u = unitary_exp(make_operator(std::move(h), {4, nb1, nb2}), t);
  Eigen::MatrixXcd rho_t = u * rho_full * u.adjoint();

  HermitianOperator reduced =
      partial_trace(make_operator(std::move(rho_t), {4, nb1, nb2}), {0});
  return make_operator(std::move(reduced.mat), {2, 2});
}

}  // namespace rqd
