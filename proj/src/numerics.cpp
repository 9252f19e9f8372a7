#include "manilap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace manilap {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // log1p(-u) instead of log(1-u) keeps the argument away from exact zero
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log1p(-u1));
  double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

SpectralDecomposition eigh_symmetric(const DenseMatrix& A, double tol_eig) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigh_symmetric: matrix not square");
  if (A.rows() > 4000) throw std::invalid_argument("eigh_symmetric: size above dense limit (4000)");
  if (!A.allFinite()) throw std::invalid_argument("eigh_symmetric: non-finite entries");
  // symmetry is a construction guarantee, so the check is exact
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = j + 1; i < A.rows(); ++i)
      if (A(i, j) != A(j, i)) throw std::invalid_argument("eigh_symmetric: matrix not symmetric");

  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh_symmetric: eigensolver failed to converge");

  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();

  double a_norm = A.norm();
  double resid = (A * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal()).norm();
  out.residual_bound = a_norm > 0 ? resid / a_norm : resid;
  if (out.residual_bound > tol_eig)
    throw std::runtime_error("eigh_symmetric: residual " + std::to_string(out.residual_bound) +
                             " exceeds tolerance " + std::to_string(tol_eig));
  const Eigen::Index n = A.rows();
  double ortho = (out.eigenvectors.transpose() * out.eigenvectors - DenseMatrix::Identity(n, n))
                     .cwiseAbs()
                     .maxCoeff();
  if (ortho > tol_eig)
    throw std::runtime_error("eigh_symmetric: eigenvectors lost orthonormality");
  return out;
}

DenseMatrix pseudoinverse(const DenseMatrix& A, double null_tol) {
  SpectralDecomposition sd = eigh_symmetric(A);
  const Eigen::Index n = A.rows();
  double lmax = sd.eigenvalues.cwiseAbs().maxCoeff();
  double thr = null_tol * lmax;
  Vector inv = Vector::Zero(n);
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(sd.eigenvalues[i]) > thr) {
      inv[i] = 1.0 / sd.eigenvalues[i];
      ++kept;
    }
  }
  if (kept == 0)
    throw std::domain_error("pseudoinverse: all eigenvalues below the null threshold");
  return sd.eigenvectors * inv.asDiagonal() * sd.eigenvectors.transpose();
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: size mismatch");
  if (xs.size() < 2) throw std::invalid_argument("linear_fit: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  double xm = 0, ym = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xm) * (xs[i] - xm);
    sxy += (xs[i] - xm) * (ys[i] - ym);
  }
  if (sxx == 0) throw std::invalid_argument("linear_fit: all xs equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double pred = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - ym) * (ys[i] - ym);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
  return fit;
}

double erf(double x) { return std::erf(x); }

McResult mc_integrate(int dim, McRegion region, double z_offset,
                      const std::string& integrand, long samples, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("mc_integrate: dim must be >= 1");
  if (samples < 10000) throw std::invalid_argument("mc_integrate: need at least 1e4 samples");
  int which;
  if (integrand == "exp_neg_norm2") which = 0;
  else if (integrand == "exp_neg_norm2_u1") which = 1;
  else if (integrand == "exp_neg_norm2_u1sq") which = 2;
  else throw std::invalid_argument("mc_integrate: unknown integrand '" + integrand + "'");

  // proposal N(0, I): integrand/proposal = (2pi)^{d/2} exp(-||u||^2/2) * h(u)
  const double norm_const = std::pow(2.0 * kPi, 0.5 * dim);
  double sum = 0.0, sumsq = 0.0;
  for (long s = 0; s < samples; ++s) {
    double u1 = rng.normal();
    double n2 = u1 * u1;
    for (int k = 1; k < dim; ++k) {
      double uk = rng.normal();
      n2 += uk * uk;
    }
    double v = 0.0;
    if (region == McRegion::FullSpace || u1 >= -z_offset) {
      v = norm_const * std::exp(-0.5 * n2);
      if (which == 1) v *= u1;
      else if (which == 2) v *= u1 * u1;
    }
    sum += v;
    sumsq += v * v;
  }
  const double nd = static_cast<double>(samples);
  double mean = sum / nd;
  double var = std::max(0.0, (sumsq - nd * mean * mean) / (nd - 1.0));
  return {mean, std::sqrt(var / nd)};
}

}  // namespace manilap
