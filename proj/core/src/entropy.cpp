#include "rqd/entropy.hpp"

#include <cmath>
#include <string>

#include "rqd/errors.hpp"

namespace rqd {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // 1 / ln 2

// rethrow PSD/Hermiticity failures with the pipeline stage attached
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidOperatorError& e) {
    throw NumericalError(std::string("renyi_cmi/") + name, e.what());
  }
}

void require_three_factors(const DensityMatrix& tau, const char* who) {
  if (tau.subsystem_dims.size() != 3)
    throw InvalidOperatorError(std::string(who) +
                               ": state must carry exactly three factors (X, E, B)");
}

}  // namespace

bool RenyiOrder::near_one() const { return std::abs(alpha - 1.0) < kAlphaNearOne; }

RenyiOrder entropy_order(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidOperatorError("Renyi order must be a positive real, got " +
                               std::to_string(alpha));
  return {alpha};
}

RenyiOrder discord_order(double alpha) {
  RenyiOrder order = entropy_order(alpha);
  if (!order.near_one() && !(alpha < 1.0) && !(alpha <= 2.0))
    throw InvalidOperatorError("discord Renyi order must lie in (0,1) u (1,2], got " +
                               std::to_string(alpha));
  return order;
}

double renyi_entropy(const DensityMatrix& rho, RenyiOrder order) {
  if (order.near_one()) return von_neumann_entropy(rho);
  EigResult eig = eig_hermitian(rho);
  const double lam_max = eig.values(0);
  if (lam_max <= 0.0)
    throw InvalidOperatorError("renyi_entropy: state has no positive spectrum");
  if (eig.values(eig.values.size() - 1) < -kPsdTol * lam_max)
    throw InvalidOperatorError("renyi_entropy: state is not PSD");
  const double cutoff = kSupportCutoff * lam_max;
  double trace_pow = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > cutoff) trace_pow += std::pow(eig.values(k), order.alpha);
  return std::log2(trace_pow) / (1.0 - order.alpha);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  EigResult eig = eig_hermitian(rho);
  const double lam_max = eig.values(0);
  if (lam_max <= 0.0)
    throw InvalidOperatorError("von_neumann_entropy: state has no positive spectrum");
  if (eig.values(eig.values.size() - 1) < -kPsdTol * lam_max)
    throw InvalidOperatorError("von_neumann_entropy: state is not PSD");
  const double cutoff = kSupportCutoff * lam_max;
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lam = eig.values(k);
    if (lam > cutoff) s -= lam * std::log(lam) * kLog2e;
  }
  return s;
}

double vn_cmi(const DensityMatrix& tau) {
  require_three_factors(tau, "vn_cmi");
  const double s_ex = von_neumann_entropy(partial_trace(tau, {0, 1}));
  const double s_bx = von_neumann_entropy(partial_trace(tau, {0, 2}));
  const double s_x = von_neumann_entropy(partial_trace(tau, {0}));
  const double s_all = von_neumann_entropy(tau);
  return s_ex + s_bx - s_x - s_all;
}

double renyi_cmi(const DensityMatrix& tau, RenyiOrder order) {
  require_three_factors(tau, "renyi_cmi");
  if (order.near_one()) return vn_cmi(tau);
  const double a = order.alpha;

  const DensityMatrix rho_ex = partial_trace(tau, {0, 1});
  const DensityMatrix rho_x = partial_trace(tau, {0});
  const HermitianOperator id_b = identity_operator({tau.subsystem_dims[2]});

  // sandwich tau^a between rho_EX^{(1-a)/2} (x) 1_B on both sides
  const HermitianOperator ex_pow =
      stage("rho_EX_power", [&] { return mat_pow_psd(rho_ex, (1.0 - a) / 2.0); });
  const HermitianOperator tau_pow =
      stage("tau_power", [&] { return mat_pow_psd(tau, a); });
  const HermitianOperator wall = tensor(ex_pow, id_b);
  HermitianOperator g = tau;
  g.mat = hermitize(wall.mat * tau_pow.mat * wall.mat);

  // trace out E, then sandwich between rho_X^{(a-1)/2} (x) 1_B
  const HermitianOperator k = partial_trace(g, {0, 2});
  const HermitianOperator x_pow =
      stage("rho_X_power", [&] { return mat_pow_psd(rho_x, (a - 1.0) / 2.0); });
  const HermitianOperator wall_x = tensor(x_pow, id_b);
  HermitianOperator l = k;
  l.mat = hermitize(wall_x.mat * k.mat * wall_x.mat);

  const HermitianOperator l_pow =
      stage("L_power", [&] { return mat_pow_psd(l, 1.0 / a); });
  const double tr = l_pow.mat.trace().real();
  if (!(tr > 0.0))
    throw NumericalError("renyi_cmi/trace",
                         "final trace is not positive: " + std::to_string(tr));
  return a / (a - 1.0) * std::log2(tr);
}

}  // namespace rqd
