#include "rqd/discord.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

#include "rqd/errors.hpp"

namespace rqd {

namespace {

using std::numbers::pi;

void check_settings(const OptimizerSettings& s) {
  if (s.grid_theta < 2 || s.grid_phi < 2)
    throw InvalidOperatorError("optimizer grid must be at least 2x2");
  if (!(s.refine_tol > 0.0))
    throw InvalidOperatorError("optimizer refine_tol must be positive");
  if (s.max_iters < 1)
    throw InvalidOperatorError("optimizer max_iters must be at least 1");
}

void check_two_qubits(const DensityMatrix& rho, const char* who) {
  if (rho.dim() != 4 || rho.subsystem_dims != std::vector<Eigen::Index>{2, 2})
    throw InvalidOperatorError(std::string(who) +
                               ": expected a two-qubit state with factors (2, 2)");
}

struct MinimizeResult {
  double value;
  double theta, phi;
  long evaluations;
  bool converged;
};

// deterministic coarse grid over [0,pi] x [0,2pi), then Nelder-Mead from the
// best grid point; the objective is periodic so the simplex roams unclamped
MinimizeResult minimize_on_sphere(const std::function<double(double, double)>& f,
                                  const OptimizerSettings& s) {
  long evals = 0;
  double best_v = std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  for (int i = 0; i < s.grid_theta; ++i) {
    const double theta = pi * i / (s.grid_theta - 1);
    for (int j = 0; j < s.grid_phi; ++j) {
      const double phi = 2.0 * pi * j / s.grid_phi;
      const double v = f(theta, phi);
      ++evals;
      if (v < best_v) {
        best_v = v;
        best_t = theta;
        best_p = phi;
      }
    }
  }

  // simplex vertices as (theta, phi) pairs with their values
  struct Vertex {
    double t, p, v;
  };
  const double dt = 0.5 * pi / (s.grid_theta - 1);
  const double dp = 0.5 * 2.0 * pi / s.grid_phi;
  auto eval = [&](double t, double p) {
    ++evals;
    return f(t, p);
  };
  std::array<Vertex, 3> simplex = {{{best_t, best_p, best_v},
                                    {best_t + dt, best_p, eval(best_t + dt, best_p)},
                                    {best_t, best_p + dp, eval(best_t, best_p + dp)}}};

  bool converged = false;
  for (int iter = 0; iter < s.max_iters; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
    if (simplex[2].v - simplex[0].v < s.refine_tol) {
      converged = true;
      break;
    }
    const double ct = 0.5 * (simplex[0].t + simplex[1].t);
    const double cp = 0.5 * (simplex[0].p + simplex[1].p);

    const double rt = ct + (ct - simplex[2].t);
    const double rp = cp + (cp - simplex[2].p);
    const double rv = eval(rt, rp);
    if (rv < simplex[0].v) {
      // try expanding past the reflection
      const double et = ct + 2.0 * (ct - simplex[2].t);
      const double ep = cp + 2.0 * (cp - simplex[2].p);
      const double ev = eval(et, ep);
      simplex[2] = (ev < rv) ? Vertex{et, ep, ev} : Vertex{rt, rp, rv};
      continue;
    }
    if (rv < simplex[1].v) {
      simplex[2] = {rt, rp, rv};
      continue;
    }
    // contract toward the centroid, from the better of worst/reflected
    const bool outside = rv < simplex[2].v;
    const double bt = outside ? rt : simplex[2].t;
    const double bp = outside ? rp : simplex[2].p;
    const double kt = ct + 0.5 * (bt - ct);
    const double kp = cp + 0.5 * (bp - cp);
    const double kv = eval(kt, kp);
    if (kv < std::min(rv, simplex[2].v)) {
      simplex[2] = {kt, kp, kv};
      continue;
    }
    // shrink toward the best vertex
    for (int k = 1; k < 3; ++k) {
      simplex[k].t = simplex[0].t + 0.5 * (simplex[k].t - simplex[0].t);
      simplex[k].p = simplex[0].p + 0.5 * (simplex[k].p - simplex[0].p);
      simplex[k].v = eval(simplex[k].t, simplex[k].p);
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.v < b.v; });

  MinimizeResult out;
  out.converged = converged;
  out.evaluations = evals;
  if (simplex[0].v < best_v) {
    out.value = simplex[0].v;
    out.theta = simplex[0].t;
    out.phi = simplex[0].p;
  } else {
    out.value = best_v;
    out.theta = best_t;
    out.phi = best_p;
  }
  return out;
}

}  // namespace

// fold arbitrary optimizer angles back into the canonical chart
ProjectiveMeasurement canonical_angles(double theta, double phi) {
  // direction vector is insensitive to the folding
  double ct = std::cos(theta);
  double st = std::sin(theta);
  double x = st * std::cos(phi), y = st * std::sin(phi), z = ct;
  double t = std::atan2(std::hypot(x, y), z);
  double p = std::atan2(y, x);
  if (p < 0) p += 2.0 * pi;
  if (std::hypot(x, y) < 1e-15) p = 0.0;
  return {t, p};
}

std::array<Eigen::Matrix2cd, 2> povm_elements(const ProjectiveMeasurement& m) {
  const double half = 0.5 * m.theta;
  Eigen::Vector2cd n;
  n << std::cos(half), std::exp(std::complex<double>(0.0, m.phi)) * std::sin(half);
  Eigen::Matrix2cd p0 = n * n.adjoint();
  Eigen::Matrix2cd p1 = Eigen::Matrix2cd::Identity() - p0;
  return {p0, p1};
}

DensityMatrix isometry_apply(const DensityMatrix& rho_ab,
                             const ProjectiveMeasurement& m) {
  check_two_qubits(rho_ab, "isometry_apply");
  const auto proj = povm_elements(m);

  // V |a> = sum_x |x>_X (x) (P_x |a>)_E1 (x) |x>_E2, an 8x2 isometry on A
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(8, 2);
  for (int x = 0; x < 2; ++x)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int a = 0; a < 2; ++a)
        v(x * 4 + e1 * 2 + x, a) = proj[x](e1, a);

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(16, 4);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 2; ++c)
      for (int b = 0; b < 2; ++b) w(r * 2 + b, c * 2 + b) = v(r, c);

  Eigen::MatrixXcd tau = w * rho_ab.mat * w.adjoint();
  return make_operator(std::move(tau), {2, 4, 2});
}

DiscordResult renyi_discord(const DensityMatrix& rho_ab, RenyiOrder order,
                            const OptimizerSettings& opt) {
  if (order.near_one()) return vn_discord(rho_ab, opt);
  check_two_qubits(rho_ab, "renyi_discord");
  check_settings(opt);
  discord_order(order.alpha);  // re-assert the admissible range

  auto objective = [&](double theta, double phi) {
    const ProjectiveMeasurement m = canonical_angles(theta, phi);
    return renyi_cmi(isometry_apply(rho_ab, m), order);
  };
  const MinimizeResult r = minimize_on_sphere(objective, opt);

  DiscordResult out;
  out.value = r.value;
  out.argmin = canonical_angles(r.theta, r.phi);
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

DiscordResult vn_discord(const DensityMatrix& rho_ab,
                         const OptimizerSettings& opt) {
  check_two_qubits(rho_ab, "vn_discord");
  check_settings(opt);

  const double s_a = von_neumann_entropy(partial_trace(rho_ab, {0}));
  const double s_ab = von_neumann_entropy(rho_ab);
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();

  auto objective = [&](double theta, double phi) {
    const auto proj = povm_elements(canonical_angles(theta, phi));
    double cond = 0.0;
    for (const auto& p : proj) {
      Eigen::MatrixXcd pk_full = Eigen::kroneckerProduct(p, id2).eval();
      Eigen::MatrixXcd sandwich = pk_full * rho_ab.mat * pk_full;
      const double pk = sandwich.trace().real();
      if (pk < 1e-15) continue;  // outcome never occurs
      DensityMatrix cond_b =
          partial_trace(make_operator(hermitize(sandwich) / pk, {2, 2}), {1});
      cond += pk * von_neumann_entropy(cond_b);
    }
    return s_a - s_ab + cond;
  };
  const MinimizeResult r = minimize_on_sphere(objective, opt);

  DiscordResult out;
  out.value = r.value;
  out.argmin = canonical_angles(r.theta, r.phi);
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

}  // namespace rqd
