#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "manilap/numerics.hpp"

namespace manilap {

// Synthetic domains: a closed interval [a,b], the closed upper unit
// half-sphere in R^3 (boundary = equator), and the real line (no boundary).
struct Manifold {
  enum class Kind { Interval, Hemisphere, RealLine };
  Kind kind = Kind::Interval;
  double a = 0.0, b = 1.0;  // Interval bounds

  static Manifold interval(double a, double b);
  static Manifold hemisphere();
  static Manifold real_line();

  int intrinsic_dim() const;
  int ambient_dim() const;
  bool has_boundary() const { return kind != Kind::RealLine; }
};

struct Density {
  enum class Kind { Uniform, GaussianMixture };
  Kind kind = Kind::Uniform;
  // constant density value for Uniform: 1/(b-a) on an interval, 1/(2*pi) on
  // the half-sphere
  double uniform_value = 1.0;

  static Density uniform(const Manifold& m);
  // two equal-weight unit-variance Gaussians centered at -1.5 and +1.5
  static Density gaussian_mixture();

  double value(double x) const;       // 1-d evaluation
  double derivative(double x) const;  // dp/dx, 1-d
};

enum class SampleMode { Equispaced, Iid };

struct PointCloud {
  DenseMatrix points;  // n x ambient_dim
  Manifold manifold;
  std::uint64_t seed = 0;
  SampleMode mode = SampleMode::Equispaced;

  Eigen::Index n() const { return points.rows(); }
  Eigen::VectorXd point(Eigen::Index i) const { return points.row(i).transpose(); }
};

PointCloud sample(const Manifold& m, const Density& p, Eigen::Index n, SampleMode mode,
                  std::uint64_t seed);

// Boundary distance along the inward normal plus the inward unit normal
// itself. On the half-sphere, z is the geodesic (arc) distance to the
// equator and the normal is the upslope tangent direction; at the equator
// point (1,0,0) it equals (0,0,1).
struct BoundaryInfo {
  double z = 0.0;
  Eigen::VectorXd normal;
};

BoundaryInfo boundary_info(const Manifold& m, const Eigen::VectorXd& x);

// Indices of cloud points within `width` of the boundary. The half-sphere
// band uses the ambient z coordinate as the cutoff (the band {0 <= z <= w}),
// while boundary_info reports arc distance; both conventions are useful.
std::vector<Eigen::Index> boundary_band(const PointCloud& cloud, double width);

struct TestFunction {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;  // ambient gradient
  std::function<double(const Eigen::VectorXd&)> laplacian;      // intrinsic Laplacian
  double sup_bound = 0.0;             // bound on |f| over the reference domain
  double grad_sq_integral_01 = -1.0;  // analytic value of int_0^1 f'(x)^2 dx (1-d only)
};

// 1-d functions with analytic derivatives: sqrt(x+1), x, x^2+10x, x^3,
// exp(x), sin(x), cos(x), cos(10x).
std::vector<TestFunction> catalogue_1d();
TestFunction test_function_1d(const std::string& name);
// f(x,y,z) = x*z on the half-sphere; intrinsic Laplacian -6*x*z
TestFunction test_function_xz();

// Weighted Laplacian: Delta f + (s/p) <grad p, grad f> with s = 2(1-alpha).
double weighted_laplacian(const TestFunction& fn, const Density& p, double s,
                          const Eigen::VectorXd& x);

}  // namespace manilap
