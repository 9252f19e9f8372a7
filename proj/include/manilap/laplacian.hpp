#pragma once

#include <functional>

#include "manilap/graph.hpp"

namespace manilap {

enum class LaplacianKind { Unnormalized, RandomWalk, SymmetricNormalized };

// Matrix forms over the alpha-normalized weights, with D_alpha = diag of the
// plain row sums of W_alpha:
//   L^u = D_alpha - W_alpha
//   L^r = I - D_alpha^{-1} W_alpha
//   L^s = I - D_alpha^{-1/2} W_alpha D_alpha^{-1/2}
// The pointwise applications below use (1/n)-averaged degrees instead; the
// bridge between conventions is  L^u_matrix * f = n * (pointwise L^u at the
// samples), while L^r and L^s agree under both conventions.
DenseMatrix laplacian_matrix(const WeightedGraph& g, LaplacianKind kind);

struct PointwiseApplication {
  enum class Norm { None, OverT, OverSqrtT };
  double value = 0.0;
  double t = 0.0;
  Norm normalization = Norm::None;
};

// L^u f(x) = (1/n) sum_j w_alpha(x, X_j) (f(x) - f(X_j)) with out-of-sample
// weights built from degree_at; L^r divides by the local alpha-degree.
// SymmetricNormalized is only defined at sample points.
PointwiseApplication apply_pointwise(const WeightedGraph& g, LaplacianKind kind,
                                     const std::function<double(const Eigen::VectorXd&)>& f,
                                     const Eigen::VectorXd& x);

// f^T L^u_alpha f computed as (1/2) sum_ij W_alpha(i,j) (f_i - f_j)^2
double quadratic_form(const WeightedGraph& g, const Vector& fvals);

// Eigenpairs of L^s (symmetric solve); the right eigenvectors of L^r follow
// from the exact similarity phi = D_alpha^{-1/2} psi.
struct GraphSpectrum {
  Vector eigenvalues;  // ascending, shared by L^s and L^r
  DenseMatrix psi;     // orthonormal eigenvectors of L^s
  DenseMatrix phi;     // right eigenvectors of L^r
};

GraphSpectrum graph_spectrum(const WeightedGraph& g, double tol_eig = 1e-10);

}  // namespace manilap
