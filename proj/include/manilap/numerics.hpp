#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace manilap {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Full dense symmetric eigendecomposition: ascending eigenvalues with
// orthonormal eigenvectors. residual_bound is the achieved
// ||A V - V Lambda||_F / ||A||_F.
struct SpectralDecomposition {
  Vector eigenvalues;
  DenseMatrix eigenvectors;
  double residual_bound = 0.0;
};

// Deterministic random stream. mt19937_64 plus hand-rolled mappings to
// doubles: the standard <random> distributions are not guaranteed to produce
// the same values across library implementations, and reproducible CSV bytes
// are part of the contract here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  // 53-bit uniform in [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller, one spare cached
  double normal();

  std::uint64_t seed_used() const { return seed_; }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

SpectralDecomposition eigh_symmetric(const DenseMatrix& A, double tol_eig = 1e-10);

// Moore-Penrose pseudoinverse of a symmetric matrix through its
// eigendecomposition; eigenvalues with |lambda| <= null_tol * max|lambda|
// are treated as zero.
DenseMatrix pseudoinverse(const DenseMatrix& A, double null_tol = 1e-9);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

double erf(double x);

enum class McRegion { FullSpace, HalfSpace };

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo integral of a named integrand over R^dim or the half-space
// {u : u_1 >= -z_offset}. Importance sampling from a standard Gaussian;
// the estimate is unbiased and comes with its standard error.
// Known integrands: exp_neg_norm2, exp_neg_norm2_u1, exp_neg_norm2_u1sq.
McResult mc_integrate(int dim, McRegion region, double z_offset,
                      const std::string& integrand, long samples, Rng& rng);

}  // namespace manilap
