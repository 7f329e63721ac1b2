#pragma once

// Entropies in bits and the conditional mutual information of tripartite
// states, in both von Neumann and sandwiched Renyi form. The Renyi CMI acts on
// states over three ordered factors (X, E, B): reduced operators re-enter the
// products tensored with the identity on the factors they do not touch.

#include "rqd/matfun.hpp"

namespace rqd {

// orders this close to 1 evaluate through the von Neumann formulas instead of
// the raw alpha expressions, which degrade as alpha -> 1
inline constexpr double kAlphaNearOne = 1e-6;

struct RenyiOrder {
  double alpha = 2.0;

  bool near_one() const;
};

// any positive order; alpha ~ 1 is legal and delegates
RenyiOrder entropy_order(double alpha);

// order admissible for the discord pipeline: (0, 1) u (1, 2], again with the
// near-1 window delegating
RenyiOrder discord_order(double alpha);

// S_alpha(rho) = log2(Tr rho^alpha) / (1 - alpha)
double renyi_entropy(const DensityMatrix& rho, RenyiOrder order);

// S(rho) = -Tr(rho log2 rho)
double von_neumann_entropy(const DensityMatrix& rho);

// I(E;B|X) = S(EX) + S(BX) - S(X) - S(EBX) for a state over factors (X, E, B)
double vn_cmi(const DensityMatrix& tau);

// sandwiched Renyi conditional mutual information of a state over (X, E, B):
//
//   I_alpha = a/(a-1) * log2 Tr{ ( rho_X^{(a-1)/2}
//               Tr_E{ rho_EX^{(1-a)/2} tau^a rho_EX^{(1-a)/2} }
//             rho_X^{(a-1)/2} )^{1/a} }
//
// with every power taken on the support of its operator
double renyi_cmi(const DensityMatrix& tau, RenyiOrder order);

}  // namespace rqd
