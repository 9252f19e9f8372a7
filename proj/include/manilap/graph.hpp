#pragma once

#include <utility>

#include "manilap/manifold.hpp"

namespace manilap {

struct KernelConfig {
  double t = 1.0;  // bandwidth
  int d = 1;       // intrinsic dimension, sets the t^{-d/2} prefactor
};

struct GraphScheme {
  enum class Kind { FullGaussian, EpsilonNN, SymmetricKNN };
  Kind kind = Kind::FullGaussian;
  double eps = 0.0;  // EpsilonNN radius
  int k = 0;         // SymmetricKNN neighbor count

  static GraphScheme full_gaussian();
  static GraphScheme epsilon_nn(double eps);
  static GraphScheme symmetric_knn(int k);
};

// Weights over a point cloud plus the alpha-normalized family:
//   degree(i)       = (1/n) sum_j W(i,j)
//   W_alpha(i,j)    = W(i,j) / (degree(i) degree(j))^alpha
//   degree_alpha(i) = (1/n) sum_j W_alpha(i,j)
// Self-edges are always present (Gaussian diagonal t^{-d/2}, unit graphs 1).
struct WeightedGraph {
  PointCloud cloud;
  GraphScheme scheme;
  KernelConfig cfg;
  double alpha = 0.0;
  DenseMatrix W;
  Vector degree;
  DenseMatrix W_alpha;
  Vector degree_alpha;

  Eigen::Index n() const { return W.rows(); }
};

// w_t(x,y) = t^{-d/2} exp(-||x-y||^2 / t), always the ambient Euclidean
// distance.
double gaussian_weight(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       const KernelConfig& cfg);

WeightedGraph build_graph(const PointCloud& cloud, const GraphScheme& scheme,
                          const KernelConfig& cfg, double alpha);

// Degrees of an arbitrary point x against the cloud (FullGaussian only):
// first = (1/n) sum_j w_t(x, X_j), second = the alpha-normalized analogue.
std::pair<double, double> degree_at(const WeightedGraph& g, const Eigen::VectorXd& x);

}  // namespace manilap
