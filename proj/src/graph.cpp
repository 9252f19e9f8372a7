#include "manilap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace manilap {

GraphScheme GraphScheme::full_gaussian() { return GraphScheme{}; }

GraphScheme GraphScheme::epsilon_nn(double eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon_nn: need eps > 0");
  GraphScheme s;
  s.kind = Kind::EpsilonNN;
  s.eps = eps;
  return s;
}

GraphScheme GraphScheme::symmetric_knn(int k) {
  if (k < 1) throw std::invalid_argument("symmetric_knn: need k >= 1");
  GraphScheme s;
  s.kind = Kind::SymmetricKNN;
  s.k = k;
  return s;
}

double gaussian_weight(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       const KernelConfig& cfg) {
  double d2 = (x - y).squaredNorm();
  return std::pow(cfg.t, -0.5 * cfg.d) * std::exp(-d2 / cfg.t);
}

WeightedGraph build_graph(const PointCloud& cloud, const GraphScheme& scheme,
                          const KernelConfig& cfg, double alpha) {
  const Eigen::Index n = cloud.n();
  if (n < 2) throw std::invalid_argument("build_graph: need n >= 2");
  if (cfg.t <= 0) throw std::invalid_argument("build_graph: bandwidth t must be positive");
  if (cfg.d < 1) throw std::invalid_argument("build_graph: kernel dimension d must be >= 1");
  if (scheme.kind == GraphScheme::Kind::SymmetricKNN && scheme.k >= n)
    throw std::invalid_argument("build_graph: k must be < n");

  WeightedGraph g;
  g.cloud = cloud;
  g.scheme = scheme;
  g.cfg = cfg;
  g.alpha = alpha;
  g.W = DenseMatrix::Zero(n, n);

  // assemble once per unordered pair so W is symmetric to the bit
  switch (scheme.kind) {
    case GraphScheme::Kind::FullGaussian: {
      const double pref = std::pow(cfg.t, -0.5 * cfg.d);
      for (Eigen::Index i = 0; i < n; ++i) {
        g.W(i, i) = pref;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
          double w = pref * std::exp(-d2 / cfg.t);
          g.W(i, j) = w;
          g.W(j, i) = w;
        }
      }
      break;
    }
    case GraphScheme::Kind::EpsilonNN: {
      const double e2 = scheme.eps * scheme.eps;
      for (Eigen::Index i = 0; i < n; ++i) {
        g.W(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
          if (d2 <= e2) {
            g.W(i, j) = 1.0;
            g.W(j, i) = 1.0;
          }
        }
      }
      break;
    }
    case GraphScheme::Kind::SymmetricKNN: {
      // union symmetrization: an edge exists if either endpoint ranks the
      // other among its k nearest; ties by (distance, index)
      std::vector<std::pair<double, Eigen::Index>> cand(n - 1);
      for (Eigen::Index i = 0; i < n; ++i) {
        g.W(i, i) = 1.0;
        cand.clear();
        for (Eigen::Index j = 0; j < n; ++j) {
          if (j == i) continue;
          double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
          cand.emplace_back(d2, j);
        }
        std::partial_sort(cand.begin(), cand.begin() + scheme.k, cand.end());
        for (int m = 0; m < scheme.k; ++m) {
          Eigen::Index j = cand[m].second;
          g.W(i, j) = 1.0;
          g.W(j, i) = 1.0;
        }
      }
      break;
    }
  }

  g.degree = g.W.rowwise().sum() / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (g.degree[i] <= 0.0)
      throw std::runtime_error("build_graph: vertex " + std::to_string(i) +
                               " is isolated (zero degree)");

  if (alpha == 0.0) {
    g.W_alpha = g.W;
    g.degree_alpha = g.degree;
  } else {
    g.W_alpha = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      g.W_alpha(i, i) = g.W(i, i) / std::pow(g.degree[i] * g.degree[i], alpha);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double v = g.W(i, j) / std::pow(g.degree[i] * g.degree[j], alpha);
        g.W_alpha(i, j) = v;
        g.W_alpha(j, i) = v;
      }
    }
    g.degree_alpha = g.W_alpha.rowwise().sum() / static_cast<double>(n);
  }
  return g;
}

std::pair<double, double> degree_at(const WeightedGraph& g, const Eigen::VectorXd& x) {
  if (g.scheme.kind != GraphScheme::Kind::FullGaussian)
    throw std::domain_error("degree_at: defined for the full Gaussian graph only");
  const Eigen::Index n = g.n();
  double d_t = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    d_t += gaussian_weight(x, g.cloud.point(j), g.cfg);
  d_t /= static_cast<double>(n);
  if (g.alpha == 0.0) return {d_t, d_t};
  double d_a = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double w = gaussian_weight(x, g.cloud.point(j), g.cfg);
    d_a += w / std::pow(d_t * g.degree[j], g.alpha);
  }
  d_a /= static_cast<double>(n);
  return {d_t, d_a};
}

}  // namespace manilap
