#pragma once

// Two-qubit state families used as initial conditions, plus density-matrix
// validation. The computational basis is ordered with the second dimer's bit
// slow and the first dimer's bit fast, matching the four-level product basis
// of the open-system model; x_state/sci_state assemble their standard matrix
// forms verbatim in that ordering.

#include <complex>
#include <string>
#include <vector>

#include "rqd/matfun.hpp"

namespace rqd {

// X-shaped state: populations a, b, c, d down the diagonal, outer coherence
// delta on the |00><11| corner, inner coherence beta_off on |01><10|
struct XStateParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  std::complex<double> delta = 0.0;
  std::complex<double> beta_off = 0.0;
};

// correlated state built from the identity plus five correlation coefficients;
// C01/C10 weight the single-qubit transverse terms, C11/C22/C33 the two-qubit
// correlations
struct CIStateParams {
  std::complex<double> C01 = 0.0, C10 = 0.0;
  double C11 = 0.0, C22 = 0.0, C33 = 0.0;
};

// builds the X-state matrix; throws ConstraintError naming the violated
// constraint: population_nonneg, population_sum, delta_bound, beta_bound
DensityMatrix x_state(const XStateParams& p);

// reads the parameters back out of an X-shaped matrix; throws
// ConstraintError("x_shape", ...) when entries outside the X pattern are
// nonzero
XStateParams x_state_params(const DensityMatrix& rho);

// assembles the correlated-state matrix and numerically verifies positivity;
// throws ConstraintError("ci_psd", ...) when the coefficients do not give a
// state
DensityMatrix ci_state(const CIStateParams& p);

// special correlated state: C22 and C10 are derived as C22 = -C11*C33 and
// C10 = C11*C01; requires C33^2 + C01^2 <= 1 (ConstraintError "sci_norm")
DensityMatrix sci_state(double C33, double C01, double C11);

struct ValidationIssue {
  std::string property;  // "hermiticity" | "trace" | "psd" | "dims"
  double residual;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  std::string summary() const;
};

// checks Hermiticity (1e-10 entrywise), unit trace (1e-10) and positivity
// (eigenvalues >= -1e-10); never throws on a bad state, reports instead
ValidationReport validate_density_matrix(const DensityMatrix& rho);

}  // namespace rqd
