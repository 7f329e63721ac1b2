#pragma once

// Dense Hermitian matrix functions on multi-factor spaces: eigendecomposition,
// fractional powers restricted to the support, evolution unitaries, partial
// trace, Kronecker products and factor permutations. All spectra are computed
// with Eigen's self-adjoint solver after symmetrizing the input.

#include <Eigen/Dense>

#include <vector>

namespace rqd {

// relative support cutoff: eigenvalues <= cutoff * lambda_max count as zero
inline constexpr double kSupportCutoff = 1e-12;
// entrywise tolerance on |M - M^dag| before an input is rejected
inline constexpr double kHermTol = 1e-12;
// eigenvalues below -kPsdTol * lambda_max fail the PSD precondition;
// negatives above that are clipped to zero
inline constexpr double kPsdTol = 1e-10;

// square complex matrix tagged with the tensor-factor dimensions of the space
// it acts on; product of subsystem_dims must equal the matrix order
struct HermitianOperator {
  Eigen::MatrixXcd mat;
  std::vector<Eigen::Index> subsystem_dims;

  Eigen::Index dim() const { return mat.rows(); }
};

// density matrices share the representation; the PSD / unit-trace invariants
// are enforced at the state-construction boundary (states.hpp)
using DensityMatrix = HermitianOperator;

struct EigResult {
  Eigen::VectorXd values;    // descending
  Eigen::MatrixXcd vectors;  // column k pairs with values[k]
};

// tags the operator with factor dimensions, checking their product
HermitianOperator make_operator(Eigen::MatrixXcd mat,
                                std::vector<Eigen::Index> subsystem_dims);

// identity operator on the space spanned by the given factors
HermitianOperator identity_operator(std::vector<Eigen::Index> subsystem_dims);

// (M + M^dag) / 2
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m);

// max-abs entry of M - M^dag
double hermiticity_defect(const Eigen::MatrixXcd& m);

// spectrum of a Hermitian operator, eigenvalues sorted descending.
// Rejects inputs whose Hermiticity defect exceeds herm_tol, then symmetrizes
// before solving.
EigResult eig_hermitian(const HermitianOperator& m, double herm_tol = kHermTol);

// M^p for Hermitian PSD M, computed on the support: eigenvalues at or below
// support_cutoff * lambda_max are treated as exact zeros (so negative p means
// the pseudo-inverse power). Small negative eigenvalues within the PSD
// tolerance are clipped; anything below it is an error.
HermitianOperator mat_pow_psd(const HermitianOperator& m, double p,
                              double support_cutoff = kSupportCutoff);

// e^{-iHt} for Hermitian H
Eigen::MatrixXcd unitary_exp(const HermitianOperator& h, double t);

// traces out every factor not listed in `keep` (0-based, strictly increasing);
// kept factors retain their relative order
HermitianOperator partial_trace(const HermitianOperator& m,
                                const std::vector<int>& keep);

// Kronecker product; factor lists concatenate
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// reorders tensor factors: new_order[i] names the old factor that becomes
// factor i of the result
HermitianOperator permute_subsystems(const HermitianOperator& m,
                                     const std::vector<int>& new_order);

}  // namespace rqd
