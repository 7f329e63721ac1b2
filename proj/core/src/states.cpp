#include "rqd/states.hpp"

#include <cmath>
#include <sstream>

#include "rqd/errors.hpp"

namespace rqd {

namespace {

constexpr double kParamTol = 1e-12;   // slack on parameter-level constraints
constexpr double kStateTol = 1e-10;   // matrix-level validation tolerances

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

DensityMatrix x_state(const XStateParams& p) {
  const double pops[4] = {p.a, p.b, p.c, p.d};
  const char* names[4] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i)
    if (pops[i] < -kParamTol)
      throw ConstraintError("population_nonneg",
                            std::string("population ") + names[i] +
                                " must be non-negative, got " + fmt(pops[i]));
  const double sum = p.a + p.b + p.c + p.d;
  if (std::abs(sum - 1.0) > kParamTol)
    throw ConstraintError("population_sum",
                          "populations must sum to 1, got " + fmt(sum));
  if (std::norm(p.delta) > p.a * p.d + kParamTol)
    throw ConstraintError("delta_bound",
                          "|delta|^2 <= a*d violated: |delta|^2 = " +
                              fmt(std::norm(p.delta)) + ", a*d = " + fmt(p.a * p.d));
  if (std::norm(p.beta_off) > p.b * p.c + kParamTol)
    throw ConstraintError("beta_bound",
                          "|beta|^2 <= b*c violated: |beta|^2 = " +
                              fmt(std::norm(p.beta_off)) + ", b*c = " + fmt(p.b * p.c));

  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = p.a;
  m(1, 1) = p.b;
  m(2, 2) = p.c;
  m(3, 3) = p.d;
  m(0, 3) = p.delta;
  m(3, 0) = std::conj(p.delta);
  m(1, 2) = p.beta_off;
  m(2, 1) = std::conj(p.beta_off);
  return make_operator(m, {2, 2});
}

XStateParams x_state_params(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw InvalidOperatorError("x_state_params: expected a two-qubit state");
  const auto& m = rho.mat;
  double off = 0.0;
  static const int zero_rc[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                    {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& rc : zero_rc) off = std::max(off, std::abs(m(rc[0], rc[1])));
  if (off > kStateTol)
    throw ConstraintError("x_shape",
                          "matrix is not X-shaped; largest stray entry " + fmt(off));
  XStateParams p;
  p.a = m(0, 0).real();
  p.b = m(1, 1).real();
  p.c = m(2, 2).real();
  p.d = m(3, 3).real();
  p.delta = m(0, 3);
  p.beta_off = m(1, 2);
  return p;
}

DensityMatrix ci_state(const CIStateParams& p) {
  Eigen::Matrix4cd m;
  const std::complex<double> c01 = p.C01, c10 = p.C10;
  m << 1.0 + p.C33, c01, c10, p.C11 - p.C22,
       std::conj(c01), 1.0 - p.C33, p.C11 + p.C22, c10,
       std::conj(c10), p.C11 + p.C22, 1.0 - p.C33, c01,
       p.C11 - p.C22, std::conj(c10), std::conj(c01), 1.0 + p.C33;
  m *= 0.25;
  DensityMatrix rho = make_operator(m, {2, 2});
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
  const double lam_min = solver.eigenvalues().minCoeff();
  if (lam_min < -kStateTol)
    throw ConstraintError("ci_psd",
                          "correlation coefficients give a negative eigenvalue " +
                              fmt(lam_min));
  return rho;
}

DensityMatrix sci_state(double C33, double C01, double C11) {
  if (C33 * C33 + C01 * C01 > 1.0 + kParamTol)
    throw ConstraintError("sci_norm",
                          "C33^2 + C01^2 <= 1 violated: got " +
                              fmt(C33 * C33 + C01 * C01));
  CIStateParams p;
  p.C33 = C33;
  p.C01 = C01;
  p.C11 = C11;
  p.C22 = -C11 * C33;
  p.C10 = C11 * C01;
  return ci_state(p);
}

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].property << " violated (residual " << fmt(issues[i].residual)
       << ")";
  }
  return os.str();
}

ValidationReport validate_density_matrix(const DensityMatrix& rho) {
  ValidationReport report;
  auto flag = [&report](const char* what, double residual) {
    report.ok = false;
    report.issues.push_back({what, residual});
  };

  if (rho.mat.rows() != rho.mat.cols()) {
    flag("dims", static_cast<double>(rho.mat.rows() - rho.mat.cols()));
    return report;  // nothing else is meaningful
  }
  Eigen::Index dprod = 1;
  for (Eigen::Index d : rho.subsystem_dims) dprod *= d;
  if (rho.subsystem_dims.empty() || dprod != rho.dim()) {
    flag("dims", static_cast<double>(dprod - rho.dim()));
    return report;
  }

  const double defect = hermiticity_defect(rho.mat);
  if (defect > kStateTol) flag("hermiticity", defect);

  const double trace_err = std::abs(rho.mat.trace() - std::complex<double>(1.0));
  if (trace_err > kStateTol) flag("trace", trace_err);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(rho.mat));
  const double lam_min = solver.eigenvalues().minCoeff();
  if (lam_min < -kStateTol) flag("psd", lam_min);

  return report;
}

}  // namespace rqd
