#include "rqd/matfun.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "rqd/errors.hpp"

namespace rqd {

namespace {

using Eigen::Index;

Index product(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

// row-major strides for a factor list
std::vector<Index> strides_of(const std::vector<Index>& dims) {
  std::vector<Index> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

// flat offsets of every multi-index over the selected factors
std::vector<Index> offsets_of(const std::vector<Index>& dims,
                              const std::vector<Index>& strides,
                              const std::vector<int>& factors) {
  Index count = 1;
  for (int f : factors) count *= dims[f];
  std::vector<Index> offs(count, 0);
  Index repeat = 1;  // how often each digit value repeats consecutively
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Index d = dims[*it];
    const Index stride = strides[*it];
    for (Index i = 0; i < count; ++i)
      offs[i] += ((i / repeat) % d) * stride;
    repeat *= d;
  }
  return offs;
}

}  // namespace

HermitianOperator make_operator(Eigen::MatrixXcd mat,
                                std::vector<Index> subsystem_dims) {
  if (mat.rows() != mat.cols())
    throw InvalidOperatorError("operator matrix must be square, got " +
                               std::to_string(mat.rows()) + "x" +
                               std::to_string(mat.cols()));
  for (Index d : subsystem_dims)
    if (d <= 0)
      throw InvalidOperatorError("subsystem dimensions must be positive");
  if (product(subsystem_dims) != mat.rows())
    throw InvalidOperatorError(
        "subsystem dimensions are inconsistent with the matrix order " +
        std::to_string(mat.rows()));
  return {std::move(mat), std::move(subsystem_dims)};
}

HermitianOperator identity_operator(std::vector<Index> subsystem_dims) {
  const Index n = product(subsystem_dims);
  return {Eigen::MatrixXcd::Identity(n, n), std::move(subsystem_dims)};
}

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

EigResult eig_hermitian(const HermitianOperator& m, double herm_tol) {
  if (m.mat.rows() != m.mat.cols())
    throw InvalidOperatorError("eig_hermitian: matrix must be square");
  const double defect = hermiticity_defect(m.mat);
  if (!(defect <= herm_tol))
    throw InvalidOperatorError("eig_hermitian: Hermiticity defect " +
                               std::to_string(defect) + " exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m.mat));
  if (solver.info() != Eigen::Success)
    throw NumericalError("eig_hermitian", "eigensolver did not converge");
  // Eigen returns ascending order; flip to descending
  const Index n = m.dim();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k)
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  return out;
}

HermitianOperator mat_pow_psd(const HermitianOperator& m, double p,
                              double support_cutoff) {
  EigResult eig = eig_hermitian(m);
  const Index n = m.dim();
  const double lam_max = eig.values.size() ? eig.values(0) : 0.0;
  const double lam_min = eig.values.size() ? eig.values(n - 1) : 0.0;

  if (lam_max <= 0.0) {
    // zero operator up to roundoff is fine; a genuinely negative one is not
    if (lam_min < -kPsdTol)
      throw InvalidOperatorError("mat_pow_psd: operator is not PSD, min eigenvalue " +
                                 std::to_string(lam_min));
    return {Eigen::MatrixXcd::Zero(n, n), m.subsystem_dims};
  }
  if (lam_min < -kPsdTol * lam_max)
    throw InvalidOperatorError(
        "mat_pow_psd: operator is not PSD, min eigenvalue " +
        std::to_string(lam_min) + " vs max " + std::to_string(lam_max));

  const double cutoff = support_cutoff * lam_max;
  Eigen::VectorXd powered(n);
  for (Index k = 0; k < n; ++k) {
    const double lam = eig.values(k);
    // clip the tolerated negatives and everything below the support cutoff
    powered(k) = (lam <= cutoff) ? 0.0 : std::pow(lam, p);
  }
  Eigen::MatrixXcd out =
      eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
  return {std::move(out), m.subsystem_dims};
}

Eigen::MatrixXcd unitary_exp(const HermitianOperator& h, double t) {
  EigResult eig = eig_hermitian(h);
  const Index n = h.dim();
  Eigen::VectorXcd phases(n);
  for (Index k = 0; k < n; ++k)
    phases(k) = std::exp(std::complex<double>(0.0, -eig.values(k) * t));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

HermitianOperator partial_trace(const HermitianOperator& m,
                                const std::vector<int>& keep) {
  const auto& dims = m.subsystem_dims;
  const int nf = static_cast<int>(dims.size());
  if (nf == 0 || product(dims) != m.dim())
    throw InvalidOperatorError("partial_trace: operator lacks consistent factor dimensions");
  if (keep.empty())
    throw InvalidOperatorError("partial_trace: keep list must name at least one factor");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= nf)
      throw InvalidOperatorError("partial_trace: keep index " +
                                 std::to_string(keep[i]) + " out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw InvalidOperatorError("partial_trace: keep list must be strictly increasing");
  }

  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);

  const auto strides = strides_of(dims);
  const auto kept_offs = offsets_of(dims, strides, keep);
  const auto traced_offs = offsets_of(dims, strides, traced);

  std::vector<Index> kept_dims;
  for (int f : keep) kept_dims.push_back(dims[f]);
  const Index nk = static_cast<Index>(kept_offs.size());

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nk, nk);
  for (Index r = 0; r < nk; ++r)
    for (Index c = 0; c < nk; ++c) {
      std::complex<double> acc = 0.0;
      for (Index tr : traced_offs) acc += m.mat(kept_offs[r] + tr, kept_offs[c] + tr);
      out(r, c) = acc;
    }
  return {std::move(out), std::move(kept_dims)};
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  Eigen::MatrixXcd out = Eigen::kroneckerProduct(a.mat, b.mat);
  std::vector<Index> dims = a.subsystem_dims;
  dims.insert(dims.end(), b.subsystem_dims.begin(), b.subsystem_dims.end());
  return {std::move(out), std::move(dims)};
}

HermitianOperator permute_subsystems(const HermitianOperator& m,
                                     const std::vector<int>& new_order) {
  const auto& dims = m.subsystem_dims;
  const int nf = static_cast<int>(dims.size());
  if (static_cast<int>(new_order.size()) != nf)
    throw InvalidOperatorError("permute_subsystems: order list must cover every factor");
  std::vector<bool> seen(nf, false);
  for (int f : new_order) {
    if (f < 0 || f >= nf || seen[f])
      throw InvalidOperatorError("permute_subsystems: order list is not a permutation");
    seen[f] = true;
  }

  std::vector<Index> new_dims(nf);
  for (int i = 0; i < nf; ++i) new_dims[i] = dims[new_order[i]];

  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);
  const Index n = m.dim();

  // map each new flat index to the old flat index it reads from
  std::vector<Index> to_old(n, 0);
  for (Index i = 0; i < n; ++i) {
    Index old_flat = 0;
    for (int f = 0; f < nf; ++f) {
      const Index digit = (i / new_strides[f]) % new_dims[f];
      old_flat += digit * old_strides[new_order[f]];
    }
    to_old[i] = old_flat;
  }

  Eigen::MatrixXcd out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = m.mat(to_old[r], to_old[c]);
  return {std::move(out), std::move(new_dims)};
}

}  // namespace rqd
