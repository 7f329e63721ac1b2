#include <doctest.h>

#include <random>

#include "rqd/discord.hpp"
#include "rqd/entropy.hpp"
#include "rqd/errors.hpp"
#include "support.hpp"

using namespace rqd;
using namespace rqdtest;

namespace {

// direct index-by-index image of the measurement isometry, no matrix algebra
DensityMatrix isometry_oracle(const DensityMatrix& rho,
                              const ProjectiveMeasurement& m) {
  auto proj = povm_elements(m);
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(16, 16);
  auto idx = [](int x, int e1, int e2, int b) {
    return ((x * 2 + e1) * 2 + e2) * 2 + b;
  };
  for (int x = 0; x < 2; ++x)
    for (int xp = 0; xp < 2; ++xp)
      for (int e1 = 0; e1 < 2; ++e1)
        for (int e1p = 0; e1p < 2; ++e1p)
          for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
              for (int a = 0; a < 2; ++a)
                for (int ap = 0; ap < 2; ++ap)
                  tau(idx(x, e1, x, b), idx(xp, e1p, xp, bp)) +=
                      proj[x](e1, a) * rho.mat(a * 2 + b, ap * 2 + bp) *
                      std::conj(proj[xp](e1p, ap));
  return make_operator(tau, {2, 4, 2});
}

}  // namespace

TEST_CASE("povm_elements form a projective pair") {
  for (auto [th, ph] : {std::pair{0.0, 0.0}, {1.1, 2.2}, {M_PI, 0.4},
                        {2.7, -1.3}}) {
    auto proj = povm_elements(ProjectiveMeasurement{th, ph});
    Eigen::Matrix2cd sum = proj[0] + proj[1];
    CHECK((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((proj[0] * proj[0] - proj[0]).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((proj[1] * proj[1] - proj[1]).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((proj[0] * proj[1]).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("povm_elements at the pole measure the computational basis") {
  auto proj = povm_elements(ProjectiveMeasurement{0.0, 0.0});
  CHECK(std::abs(proj[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(proj[0](1, 1)) < 1e-15);
  CHECK(std::abs(proj[1](1, 1) - 1.0) < 1e-15);
}

TEST_CASE("isometry_apply preserves trace and purity") {
  std::mt19937 rng(51);
  for (int k = 0; k < 3; ++k) {
    auto rho = random_density({2, 2}, rng);
    auto tau = isometry_apply(rho, ProjectiveMeasurement{0.5 + k, 1.3 * k});
    CHECK(tau.subsystem_dims == std::vector<Eigen::Index>{2, 4, 2});
    CHECK(std::abs(tau.mat.trace().real() - 1.0) < 1e-12);
    // purity cannot change under an isometry
    const double p_in = (rho.mat * rho.mat).trace().real();
    const double p_out = (tau.mat * tau.mat).trace().real();
    CHECK(std::abs(p_in - p_out) < 1e-12);
  }
}

TEST_CASE("isometry_apply matches the summation oracle") {
  std::mt19937 rng(52);
  for (int k = 0; k < 3; ++k) {
    auto rho = random_density({2, 2}, rng);
    ProjectiveMeasurement m{0.4 + 0.9 * k, 2.0 * k - 1.0};
    auto tau = isometry_apply(rho, m);
    auto ref = isometry_oracle(rho, m);
    CHECK((tau.mat - ref.mat).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("isometry_apply keeps the unmeasured side intact") {
  std::mt19937 rng(53);
  auto rho = random_density({2, 2}, rng);
  auto rho_b = partial_trace(rho, {1});
  auto tau = isometry_apply(rho, ProjectiveMeasurement{1.9, 0.7});
  auto tau_b = partial_trace(tau, {2});
  CHECK((tau_b.mat - rho_b.mat).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("isometry_apply rejects wrong shapes") {
  std::mt19937 rng(54);
  CHECK_THROWS_AS(
      isometry_apply(random_density({4}, rng), ProjectiveMeasurement{0, 0}),
      InvalidOperatorError);
}

TEST_CASE("vn_discord of the Bell state is one bit") {
  auto r = vn_discord(bell_phi_plus());
  CHECK(std::abs(r.value - 1.0) < 1e-6);
  CHECK(r.converged);
  CHECK(r.evaluations > 0);
}

TEST_CASE("vn_discord vanishes on product and classical states") {
  std::mt19937 rng(55);
  CHECK(vn_discord(random_product_state(rng)).value < 1e-8);
  CHECK(vn_discord(classical_classical(rng)).value < 1e-8);
}

TEST_CASE("vn_discord matches the Bell-diagonal closed form") {
  // the fixed triple keeps the optimum away from grid nodes
  auto rho = bell_diagonal(0.4, 0.3, 0.2);
  auto r = vn_discord(rho);
  CHECK(std::abs(r.value - luo_discord(0.4, 0.3, 0.2)) < 1e-6);

  std::mt19937 rng(56);
  for (int k = 0; k < 3; ++k) {
    double c[3];
    random_bell_triple(rng, c);
    auto got = vn_discord(bell_diagonal(c[0], c[1], c[2]));
    CHECK(std::abs(got.value - luo_discord(c[0], c[1], c[2])) < 1e-5);
  }
}

TEST_CASE("vn_discord picks the dominant correlation axis") {
  // c1 dominates, so the optimal Bloch direction is x
  auto r = vn_discord(bell_diagonal(0.5, 0.1, 0.2));
  auto ang = r.argmin;  // reported minimizers are already folded
  // the value is flat to second order at the optimum, so the angle tolerance
  // is much looser than the value tolerance
  CHECK(std::abs(ang.theta - M_PI / 2) < 2e-2);
  const bool along_x = std::abs(ang.phi) < 2e-2 ||
                       std::abs(ang.phi - M_PI) < 2e-2 ||
                       std::abs(ang.phi - 2 * M_PI) < 2e-2;
  CHECK(along_x);
}

TEST_CASE("renyi_discord delegates near alpha = 1") {
  std::mt19937 rng(57);
  auto rho = x_state(random_x_params(rng));
  auto vn = vn_discord(rho);
  auto near = renyi_discord(rho, discord_order(1.0 + 1e-8));
  CHECK(near.value == vn.value);
  CHECK(near.argmin.theta == vn.argmin.theta);
}

TEST_CASE("renyi_discord of the Bell state is one bit at every order") {
  auto b = bell_phi_plus();
  for (double a : {0.5, 1.5, 2.0})
    CHECK(std::abs(renyi_discord(b, discord_order(a)).value - 1.0) < 1e-6);
}

TEST_CASE("renyi_discord vanishes on discord-free states at every order") {
  std::mt19937 rng(58);
  auto prod = random_product_state(rng);
  auto cc = classical_classical(rng);
  for (double a : {0.5, 2.0}) {
    CHECK(renyi_discord(prod, discord_order(a)).value < 1e-6);
    CHECK(renyi_discord(cc, discord_order(a)).value < 1e-6);
  }
}

TEST_CASE("renyi_discord is invariant under local unitaries") {
  std::mt19937 rng(59);
  auto rho = x_state(random_x_params(rng));
  auto ord = discord_order(1.5);
  const double base = renyi_discord(rho, ord).value;
  auto ua = random_unitary(2, rng);
  auto ub = random_unitary(2, rng);
  Eigen::Matrix4cd u = Eigen::kroneckerProduct(ua, ub);
  auto rotated =
      make_operator((u * rho.mat * u.adjoint()).eval(), {2, 2});
  CHECK(std::abs(renyi_discord(rotated, ord).value - base) < 1e-4);
}

TEST_CASE("renyi_discord is nonnegative and deterministic") {
  std::mt19937 rng(60);
  auto rho = x_state(random_x_params(rng));
  auto ord = discord_order(0.7);
  auto r1 = renyi_discord(rho, ord);
  auto r2 = renyi_discord(rho, ord);
  CHECK(r1.value >= -1e-9);
  CHECK(r1.value == r2.value);  // same settings, same evaluations, same bits
  CHECK(r1.evaluations == r2.evaluations);
}

TEST_CASE("optimizer settings validation") {
  std::mt19937 rng(61);
  auto rho = x_state(random_x_params(rng));
  OptimizerSettings s;
  s.grid_theta = 1;
  CHECK_THROWS_AS(renyi_discord(rho, discord_order(2.0), s),
                  std::invalid_argument);
  s = OptimizerSettings{};
  s.refine_tol = -1.0;
  CHECK_THROWS_AS(renyi_discord(rho, discord_order(2.0), s),
                  std::invalid_argument);
}

TEST_CASE("coarse grids still converge through refinement") {
  auto rho = bell_diagonal(0.4, 0.3, 0.2);
  OptimizerSettings s;
  s.grid_theta = 8;
  s.grid_phi = 8;
  auto r = vn_discord(rho, s);
  CHECK(std::abs(r.value - luo_discord(0.4, 0.3, 0.2)) < 1e-4);
}

TEST_CASE("canonical_angles folds into the standard chart") {
  auto a = canonical_angles(-0.3, 9.0);
  CHECK(a.theta >= 0.0);
  CHECK(a.theta <= M_PI + 1e-12);
  CHECK(a.phi >= 0.0);
  CHECK(a.phi < 2 * M_PI);
  // folding never moves the measurement direction
  auto p0 = povm_elements(ProjectiveMeasurement{-0.3, 9.0});
  auto p1 = povm_elements(a);
  CHECK((p0[0] - p1[0]).cwiseAbs().maxCoeff() < 1e-12);
}
