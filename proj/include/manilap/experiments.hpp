#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "manilap/graph.hpp"
#include "manilap/laplacian.hpp"
#include "manilap/manifold.hpp"
#include "manilap/numerics.hpp"

namespace manilap {

// Kernel-moment constants governing the continuum limits:
//   C1 = int e^{-|u|^2} du            (full space)
//   C2 = int e^{-|u|^2} u_1^2 du      (full space)
//   C3 = C1 / 2                       (half space)
//   C4 = int_{u_1>=0} e^{-|u|^2} u_1 du
struct Constants {
  int d = 1;
  double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0;
};

Constants constants(int d);

struct ConstantsMcRow {
  std::string name;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double mc_std_error = 0.0;
};

// Monte-Carlo verification of each closed form (same integrals, sampled).
std::vector<ConstantsMcRow> constants_mc_check(int d, long samples, Rng& rng);

// Distance-to-boundary versions used inside the boundary layer:
//   C1(z) = (1/2) pi^{d/2} (1 + erf z)
//   C2(z) = (1/4) pi^{d/2} (1 - 2z/(sqrt(pi) e^{z^2}) + erf z)
// Returns (C1(z), C2(z)); z is the normal distance in units of sqrt(t).
std::pair<double, double> layer_constants(double z, int d);

struct ScalingRung {
  double t = 0.0;
  double value = 0.0;  // (1/t) L f(x)
  bool flagged = false;  // below sample resolution or underflowed; not fitted
};

struct ScalingReport {
  Eigen::VectorXd x;
  std::vector<ScalingRung> rungs;
  LinearFit fit;  // log10|value| against log10 t over unflagged rungs
};

// Evaluate (1/t) L f(x) down a bandwidth ladder and fit the growth rate.
// At boundary points the fitted slope approaches -1/2 (the 1/sqrt(t)
// divergence); at interior points it approaches 0.
ScalingReport scaling_experiment(const PointCloud& cloud, const TestFunction& fn,
                                 const Eigen::VectorXd& x, const std::vector<double>& t_ladder,
                                 double alpha, LaplacianKind kind);

// |(1/t) L^r f(b)| / |(1/t) L^r f(a)| on an interval cloud.
double boundary_ratio(const PointCloud& cloud, const TestFunction& fn, double alpha, double t);

struct BoundaryReport {
  std::vector<Eigen::Index> band;  // cloud indices within the boundary band
  Vector xs;        // x-coordinate of each band point (fit abscissa)
  Vector estimate;  // (1/sqrt t) L^r f at each band point
  Vector target;    // -d_n f = -x for f = xz
  LinearFit fit;    // estimate against x
  double mse_raw = 0.0;     // against -d_n f directly
  double mse_scaled = 0.0;  // against (C4/C3) * (-d_n f)
};

// f(x,y,z) = xz on the iid-sampled half-sphere; the sqrt(t)-scaled
// random-walk Laplacian over the equatorial band is compared against the
// normal derivative under both scalings.
BoundaryReport halfsphere_boundary_experiment(int n, double t, double band_width,
                                              std::uint64_t seed);

struct CoefficientRow {
  double t = 0.0;
  double coefficient = 0.0;
};

struct CoefficientReport {
  std::string fn;
  double alpha = 0.0;
  std::vector<CoefficientRow> rows;  // (1/(n^2 t)) f^T L^u_a f / int |f'|^2
  double max_coefficient = 0.0;      // over the t grid
  double theory = 0.0;               // (1/4) pi^{d(1/2 - alpha)}
};

// Regularizer coefficient on the equispaced unit interval, one function.
CoefficientReport quadform_experiment(int n, double alpha, const TestFunction& fn,
                                      const std::vector<double>& t_grid);

// Whole-catalogue sweep across several alphas, sharing the kernel matrix of
// each bandwidth between functions and normalizations.
std::vector<CoefficientReport> quadform_table(int n, const std::vector<double>& alphas,
                                              const std::vector<double>& t_grid);

struct EigenBoundaryCheck {
  int index = 0;                    // eigenvector column
  double band_slope_left = 0.0;     // OLS slope over the left boundary band
  double band_slope_right = 0.0;    // same on the right
  double max_interior_slope = 0.0;  // max |dv/dx| over interior neighbors
  double ratio = 0.0;  // max band slope magnitude / max interior slope
};

struct EigenReport {
  Vector xs;           // sorted sample coordinates
  Vector degree;       // kernel degree d_{t,n} per sample
  Vector eigenvalues;  // first k, ascending
  DenseMatrix phi;     // random-walk eigenvectors (n x k)
  DenseMatrix psi;     // symmetric-normalized eigenvectors (n x k)
  std::vector<EigenBoundaryCheck> checks;  // on phi (kind r) or psi (kind s)
  double conjugation_max_dev = 0.0;        // max |psi - d^{1/2} phi|
};

// 1-d spectral study: uniform density on [0,1] (equispaced) or the
// two-Gaussian mixture on the line (iid). Eigenvectors come from the
// symmetric solve; the boundary-derivative estimate for each of the first
// k_eigs eigenvectors is an OLS slope over the band of width 2 sqrt(t) at
// each sample extreme.
EigenReport eigenfunction_experiment(const Density& density, int n, double alpha, double t,
                                     const GraphScheme& scheme, LaplacianKind kind, int k_eigs,
                                     std::uint64_t seed);

struct KernelReport {
  double x0 = 0.0;
  Eigen::Index x0_index = 0;
  Vector xs;        // the sample grid
  Vector k_series;  // truncated cosine series sum_k cos(k pi x0) cos(k pi y) / (k pi)^2
  Vector k_closed;  // (1/2) G(x0, y), G the Neumann Green's function
  Vector k_pinv;    // row of pinv(L^u) at x0
  Vector k_prime;   // 1/4 - |x0 - y| / 2
  double scale = 0.0;            // least-squares c aligning k_pinv to k_series
  double rel_discrepancy = 0.0;  // |k_pinv - c k_series| / |c k_series|
  double max_series_vs_closed = 0.0;
  double max_series_vs_prime = 0.0;
};

KernelReport kernel_experiment(int n, double t, double alpha, double x0, int k_max,
                               double null_tol = 1e-9);

struct FdReport {
  DenseMatrix fd;     // finite-difference Neumann Laplace matrix
  DenseMatrix graph;  // unit-weight 4-neighbor grid Laplacian D - W
  double max_abs_difference = 0.0;
};

// nx x ny grid (ny = 1 gives the 1-d chain); the two matrices agree exactly.
FdReport fd_equivalence(int nx, int ny);

struct ConcentrationRow {
  int n = 0;
  double t = 0.0;
  double std_dev = 0.0;  // sample std of (1/sqrt t) L^r f(x) across reps
};

struct ConcentrationReport {
  std::vector<ConcentrationRow> rows;
  LinearFit fit;  // log10 std against log10 n
};

// Default bandwidth rule t = n^{-1/(d+3)}.
double default_concentration_t(int n, int d);

// Repeated iid sampling on [0,1]; fluctuation of the scaled operator at a
// fixed interior point as a function of n.
ConcentrationReport concentration_experiment(const std::vector<int>& n_list, int reps,
                                             const std::function<double(int)>& t_rule,
                                             const TestFunction& fn, double x,
                                             std::uint64_t seed);

}  // namespace manilap
