#include "manilap/laplacian.hpp"

#include <cmath>
#include <stdexcept>

namespace manilap {

DenseMatrix laplacian_matrix(const WeightedGraph& g, LaplacianKind kind) {
  const Eigen::Index n = g.n();
  Vector D = g.W_alpha.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i)
    if (D[i] <= 0.0) throw std::runtime_error("laplacian_matrix: zero degree at vertex " + std::to_string(i));

  DenseMatrix L(n, n);
  switch (kind) {
    case LaplacianKind::Unnormalized:
      L = -g.W_alpha;
      for (Eigen::Index i = 0; i < n; ++i) L(i, i) += D[i];
      break;
    case LaplacianKind::RandomWalk:
      L = -(D.cwiseInverse().asDiagonal() * g.W_alpha);
      for (Eigen::Index i = 0; i < n; ++i) L(i, i) += 1.0;
      break;
    case LaplacianKind::SymmetricNormalized: {
      Vector s = D.cwiseSqrt().cwiseInverse();
      // fill symmetric pairs with one computed value so the result is
      // symmetric to the bit
      for (Eigen::Index i = 0; i < n; ++i) {
        L(i, i) = 1.0 - s[i] * g.W_alpha(i, i) * s[i];
        for (Eigen::Index j = i + 1; j < n; ++j) {
          double v = -(s[i] * g.W_alpha(i, j) * s[j]);
          L(i, j) = v;
          L(j, i) = v;
        }
      }
      break;
    }
  }
  return L;
}

namespace {

// (1/n) sum_j w_alpha(x, X_j) (f(x) - f(X_j)) and the out-of-sample degree
double pointwise_unnormalized(const WeightedGraph& g,
                              const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& x, double* d_alpha_out) {
  const Eigen::Index n = g.n();
  auto [d_t, d_a] = degree_at(g, x);
  double fx = f(x);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double w = gaussian_weight(x, g.cloud.point(j), g.cfg);
    if (g.alpha != 0.0) w /= std::pow(d_t * g.degree[j], g.alpha);
    acc += w * (fx - f(g.cloud.point(j)));
  }
  if (d_alpha_out) *d_alpha_out = d_a;
  return acc / static_cast<double>(n);
}

}  // namespace

PointwiseApplication apply_pointwise(const WeightedGraph& g, LaplacianKind kind,
                                     const std::function<double(const Eigen::VectorXd&)>& f,
                                     const Eigen::VectorXd& x) {
  if (g.scheme.kind != GraphScheme::Kind::FullGaussian)
    throw std::domain_error("apply_pointwise: defined for the full Gaussian graph only");

  PointwiseApplication out;
  out.t = g.cfg.t;
  out.normalization = PointwiseApplication::Norm::None;

  switch (kind) {
    case LaplacianKind::Unnormalized: {
      out.value = pointwise_unnormalized(g, f, x, nullptr);
      return out;
    }
    case LaplacianKind::RandomWalk: {
      double d_a = 0.0;
      double lu = pointwise_unnormalized(g, f, x, &d_a);
      out.value = lu / d_a;
      return out;
    }
    case LaplacianKind::SymmetricNormalized: {
      // restricted to sample points: needs the degree of x itself
      const Eigen::Index n = g.n();
      Eigen::Index idx = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((g.cloud.points.row(i).transpose() - x).norm() <= 1e-12) {
          idx = i;
          break;
        }
      }
      if (idx < 0)
        throw std::domain_error(
            "apply_pointwise: the symmetric Laplacian is only defined at sample points");
      // L^s f = D^{-1/2} L^u (D^{-1/2} f) evaluated at X_idx
      auto scaled = [&](const Eigen::VectorXd& y) {
        // y is always one of the samples here
        for (Eigen::Index i = 0; i < n; ++i)
          if ((g.cloud.points.row(i).transpose() - y).norm() <= 1e-12)
            return f(y) / std::sqrt(g.degree_alpha[i]);
        throw std::logic_error("apply_pointwise: non-sample point in symmetric evaluation");
      };
      double lu = pointwise_unnormalized(g, scaled, x, nullptr);
      out.value = lu / std::sqrt(g.degree_alpha[idx]);
      return out;
    }
  }
  throw std::logic_error("apply_pointwise: unreachable");
}

double quadratic_form(const WeightedGraph& g, const Vector& fvals) {
  const Eigen::Index n = g.n();
  if (fvals.size() != n) throw std::invalid_argument("quadratic_form: size mismatch");
  if (!fvals.allFinite()) throw std::invalid_argument("quadratic_form: non-finite values");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = fvals[i] - fvals[j];
      acc += g.W_alpha(i, j) * d * d;  // unordered pair counted once = (1/2) of the double sum
    }
  }
  return acc;
}

GraphSpectrum graph_spectrum(const WeightedGraph& g, double tol_eig) {
  DenseMatrix Ls = laplacian_matrix(g, LaplacianKind::SymmetricNormalized);
  SpectralDecomposition sd = eigh_symmetric(Ls, tol_eig);
  GraphSpectrum out;
  out.eigenvalues = sd.eigenvalues;
  out.psi = sd.eigenvectors;
  Vector D = g.W_alpha.rowwise().sum();
  Vector s = D.cwiseSqrt().cwiseInverse();
  out.phi = s.asDiagonal() * sd.eigenvectors;
  return out;
}

}  // namespace manilap
