#pragma once

// Exact reduced dynamics of two coupled two-level dimers dephasing in two
// Ising-correlated spin baths. Every bath collective S^z commutes with the
// Hamiltonian, so the bath enters only through conserved magnetization pairs
// (m1, m2): the reduced dimer state is a Gibbs-weighted sum of 4x4 unitary
// orbits generated by magnetization-conditioned dimer Hamiltonians, with
// degeneracies counting the (j, m) multiplets of each bath. A dense
// full-space propagator over individual bath spins provides an independent
// cross-check path.
//
// Four-level ordering throughout: {|3>|1>, |3>|2>, |4>|1>, |4>|2>}, i.e. the
// second dimer's level is the slow index. Temperatures enter as beta = 1/T
// with k_B = 1; time carries inverse-energy units.

#include <cstdint>
#include <vector>

#include "rqd/matfun.hpp"

namespace rqd {

struct DimerParams {
  // on-site energies of levels |1>, |2> (first dimer) and |3>, |4> (second)
  double eps[4] = {0.0, 0.0, 0.0, 0.0};
  double J1 = 0.0;  // tunneling inside the first dimer
  double J2 = 0.0;  // tunneling inside the second dimer
  // dephasing couplings: gamma[0] ties |1> to bath 1, gamma[1] ties |2> to
  // bath 2, gamma[2] ties |3> to bath 1, gamma[3] ties |4> to bath 2
  double gamma[4] = {0.0, 0.0, 0.0, 0.0};
};

struct BathParams {
  int N1 = 2;           // spins in bath 1, even, at most 64
  int N2 = 2;           // spins in bath 2, even, at most 64
  double alpha1 = 0.0;  // Zeeman weight of bath 1
  double alpha2 = 0.0;  // Zeeman weight of bath 2
  double q = 0.0;       // Ising coupling between the two bath magnetizations
  double T = 1.0;       // temperature, beta = 1/T; +inf selects the flat ensemble
};

// one (j1, m1, j2, m2) multiplet pair with its normalized Gibbs weight
struct BathSector {
  double j1, m1, j2, m2;
  double weight;
};

// throw std::invalid_argument on out-of-contract parameters
void validate_dimer_params(const DimerParams& d);
void validate_bath_params(const BathParams& b);

// multiplicity of the spin-j multiplet for N spin-1/2 particles, evaluated
// in exact integer arithmetic; requires 0 <= j <= N/2 with N - 2j even
std::uint64_t bath_degeneracy(int n, double j);

// Z = sum over sectors of nu(N1,j1) nu(N2,j2) exp(-beta (q m1 m2 + alpha1 m1
// + alpha2 m2)); computed with a shifted maximum exponent so large couplings
// do not overflow
double partition_function(const BathParams& b);

// full sector table with weights normalized to sum to 1; enumeration order is
// j1 descending, m1 ascending, j2 descending, m2 ascending
std::vector<BathSector> bath_sectors(const BathParams& b);

// 4x4 dimer Hamiltonian conditioned on the bath magnetizations:
//   H_eff = 1 (x) h1 + h2 (x) 1
//   h1 = [[eps1 + gamma1 m1, J1], [J1, eps2 + gamma2 m2]]
//   h2 = [[eps3 + gamma3 m1, J2], [J2, eps4 + gamma4 m2]]
HermitianOperator sector_hamiltonian(const DimerParams& d, double m1, double m2);

// precomputes sector weights and eigensystems once, then evaluates the
// reduced state at arbitrary times; safe to share across threads after
// construction
class Evolver {
 public:
  Evolver(const DimerParams& d, const BathParams& b);

  // rho_d(t) = sum_s w_s U_s(t) rho0 U_s(t)^dag
  DensityMatrix evolve(const DensityMatrix& rho0, double t) const;

  const std::vector<BathSector>& sectors() const { return sectors_; }

 private:
  struct Branch {
    double weight;
    Eigen::Vector4d evals;
    Eigen::Matrix4cd evecs;
  };
  std::vector<BathSector> sectors_;
  std::vector<Branch> branches_;  // one per distinct (m1, m2)
};

// one-shot convenience around Evolver
DensityMatrix evolve(const DensityMatrix& rho0, const DimerParams& d,
                     const BathParams& b, double t);

// independent cross-check: assembles the Hamiltonian on the full
// 4 * 2^(N1+N2) dimensional space with individual bath spins, exponentiates
// it densely against the thermal bath state and partial-traces the baths out.
// Restricted to N1, N2 <= 6; dense diagonalization makes large baths
// impractical anyway.
DensityMatrix evolve_bruteforce(const DensityMatrix& rho0, const DimerParams& d,
                                const BathParams& b, double t);

}  // namespace rqd
