#pragma once

// Quantum discord of two-qubit states through measurement on the first
// factor (A). The Renyi variant scores a candidate measurement by the
// sandwiched Renyi CMI of the isometry-extended state over (X, E, B); the
// von Neumann variant evaluates the measured conditional-entropy expression
// directly. Both minimize over the projective family on the Bloch sphere
// with a deterministic coarse grid followed by Nelder-Mead refinement.

#include <array>

#include "rqd/entropy.hpp"
#include "rqd/matfun.hpp"

namespace rqd {

// projective measurement direction n(theta, phi) on the Bloch sphere;
// the pair of elements is {|n><n|, 1 - |n><n|}
struct ProjectiveMeasurement {
  double theta = 0.0;  // polar, [0, pi]
  double phi = 0.0;    // azimuthal, [0, 2*pi)
};

struct OptimizerSettings {
  int grid_theta = 32;
  int grid_phi = 64;
  double refine_tol = 1e-8;
  int max_iters = 200;
};

struct DiscordResult {
  double value = 0.0;
  ProjectiveMeasurement argmin;
  long evaluations = 0;
  bool converged = false;
};

// the two rank-1 projectors for the direction; any finite angles are accepted
// (the parameterization is periodic)
std::array<Eigen::Matrix2cd, 2> povm_elements(const ProjectiveMeasurement& m);

// folds arbitrary angles onto theta in [0, pi], phi in [0, 2*pi) without
// moving the measurement direction; reported minimizers use this chart
ProjectiveMeasurement canonical_angles(double theta, double phi);

// embeds the measurement on A as an isometry A -> (X, E): the outcome register
// X, and E holding the projected A system together with an outcome copy.
// Input is a two-qubit state with A as the first factor; output factors are
// (X, E, B) with dimensions (2, 4, 2). Trace is preserved.
DensityMatrix isometry_apply(const DensityMatrix& rho_ab,
                             const ProjectiveMeasurement& m);

// min over measurements of the Renyi CMI of the extended state; orders within
// the near-1 window fall back to the von Neumann version
DiscordResult renyi_discord(const DensityMatrix& rho_ab, RenyiOrder order,
                            const OptimizerSettings& opt = {});

// min over measurements of sum_k p_k S(rho_k^B) + S(rho_A) - S(rho_AB)
DiscordResult vn_discord(const DensityMatrix& rho_ab,
                         const OptimizerSettings& opt = {});

}  // namespace rqd
