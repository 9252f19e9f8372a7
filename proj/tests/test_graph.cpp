#include "doctest.h"
#include "manilap/graph.hpp"

#include <cmath>
#include <set>

using namespace manilap;

namespace {

PointCloud cloud_from(std::vector<double> xs) {
  PointCloud c;
  c.manifold = Manifold::interval(0.0, 1.0);
  c.points.resize(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) c.points(static_cast<Eigen::Index>(i), 0) = xs[i];
  c.mode = SampleMode::Equispaced;
  return c;
}

double gw1(double x, double y, const KernelConfig& cfg) {
  Eigen::VectorXd a(1), b(1);
  a << x;
  b << y;
  return gaussian_weight(a, b, cfg);
}

}  // namespace

TEST_CASE("gaussian kernel values") {
  // t^{-d/2} e^{-r^2/t}
  CHECK(gw1(0.0, 0.2, KernelConfig{0.1, 1}) ==
        doctest::Approx(std::pow(0.1, -0.5) * std::exp(-0.04 / 0.1)).epsilon(1e-15));
  CHECK(gw1(0.3, 0.3, KernelConfig{4e-4, 1}) ==
        doctest::Approx(std::pow(4e-4, -0.5)).epsilon(1e-15));  // 50
  CHECK(gw1(0.0, 0.02, KernelConfig{4e-4, 1}) ==
        doctest::Approx(50.0 * std::exp(-1.0)).epsilon(1e-15));
  Eigen::VectorXd p(3), q(3);
  p << 0.0, 0.0, 0.0;
  q << 0.5, 0.0, 0.0;
  CHECK(gaussian_weight(p, q, KernelConfig{0.25, 3}) ==
        doctest::Approx(8.0 * std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("full gaussian graph on two points") {
  auto g = build_graph(cloud_from({0.0, 1.0}), GraphScheme::full_gaussian(),
                       KernelConfig{1.0, 1}, 0.0);
  const double e1 = std::exp(-1.0);
  CHECK(g.W(0, 0) == 1.0);  // t^{-1/2} = 1, self-edge
  CHECK(g.W(1, 1) == 1.0);
  CHECK(g.W(0, 1) == doctest::Approx(e1).epsilon(1e-15));
  CHECK(g.W(0, 1) == g.W(1, 0));
  CHECK(g.degree[0] == doctest::Approx((1.0 + e1) / 2.0).epsilon(1e-15));
  CHECK(g.degree[1] == g.degree[0]);
  // alpha = 0 leaves the kernel untouched
  CHECK(g.W_alpha(0, 1) == g.W(0, 1));
  CHECK(g.degree_alpha[0] == g.degree[0]);
}

TEST_CASE("alpha normalization rescales by degree powers") {
  auto cloud = cloud_from({0.0, 0.3, 0.7, 1.0});
  auto g0 = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{0.5, 1}, 0.0);
  for (double alpha : {-1.0, 0.5, 1.0}) {
    auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{0.5, 1}, alpha);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double expect = g0.W(i, j) / std::pow(g0.degree[i] * g0.degree[j], alpha);
        CHECK(g.W_alpha(i, j) == doctest::Approx(expect).epsilon(1e-13));
      }
    // degrees of the renormalized kernel are recomputed from W_alpha
    for (int i = 0; i < 4; ++i)
      CHECK(g.degree_alpha[i] == doctest::Approx(g.W_alpha.row(i).sum() / 4.0).epsilon(1e-15));
  }
}

TEST_CASE("weight matrices are exactly symmetric") {
  auto m = Manifold::interval(0.0, 1.0);
  auto cloud = sample(m, Density::uniform(m), 120, SampleMode::Iid, 99);
  for (double alpha : {0.0, 0.5, 1.0}) {
    auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{0.01, 1}, alpha);
    for (Eigen::Index i = 0; i < g.n(); ++i)
      for (Eigen::Index j = i + 1; j < g.n(); ++j) {
        CHECK(g.W(i, j) == g.W(j, i));
        CHECK(g.W_alpha(i, j) == g.W_alpha(j, i));
      }
  }
}

TEST_CASE("epsilon graph on an equispaced chain") {
  // n = 11 on [0,1]: spacing 0.1, radius 0.15 connects nearest neighbours only
  PointCloud c;
  c.manifold = Manifold::interval(0.0, 1.0);
  c.points.resize(11, 1);
  for (int i = 0; i < 11; ++i) c.points(i, 0) = i / 10.0;
  c.mode = SampleMode::Equispaced;
  auto g = build_graph(c, GraphScheme::epsilon_nn(0.15), KernelConfig{1.0, 1}, 0.0);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      double expect = (std::abs(i - j) <= 1) ? 1.0 : 0.0;
      CHECK(g.W(i, j) == expect);
    }
  }
  CHECK(g.degree[0] == doctest::Approx(2.0 / 11.0).epsilon(1e-15));
  CHECK(g.degree[5] == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("knn graph is symmetrized by union and keeps self-edges") {
  auto m = Manifold::interval(0.0, 1.0);
  auto cloud = sample(m, Density::uniform(m), 50, SampleMode::Iid, 7);
  auto g = build_graph(cloud, GraphScheme::symmetric_knn(4), KernelConfig{1.0, 1}, 0.0);
  std::set<double> seen;
  for (Eigen::Index i = 0; i < 50; ++i) {
    CHECK(g.W(i, i) == 1.0);
    double row = 0.0;
    for (Eigen::Index j = 0; j < 50; ++j) {
      CHECK(g.W(i, j) == g.W(j, i));
      CHECK((g.W(i, j) == 0.0 || g.W(i, j) == 1.0));
      row += g.W(i, j);
    }
    // self + at least 4 neighbours before union can only add edges
    CHECK(row >= 5.0);
    CHECK(g.degree[i] == doctest::Approx(row / 50.0).epsilon(1e-15));
    seen.insert(row);
  }
  CHECK(g.scheme.kind == GraphScheme::Kind::SymmetricKNN);
}

TEST_CASE("knn requires k below the cloud size") {
  auto cloud = cloud_from({0.0, 0.5, 1.0});
  CHECK_THROWS(build_graph(cloud, GraphScheme::symmetric_knn(3), KernelConfig{1.0, 1}, 0.0));
  CHECK_NOTHROW(build_graph(cloud, GraphScheme::symmetric_knn(2), KernelConfig{1.0, 1}, 0.0));
}

TEST_CASE("self-edges keep every degree positive") {
  // even with a radius too small for any cross connection
  auto g = build_graph(cloud_from({0.0, 0.5, 1.0}), GraphScheme::epsilon_nn(0.01),
                       KernelConfig{1.0, 1}, 0.0);
  CHECK(g.W.isIdentity(0.0));
  CHECK(g.degree.minCoeff() > 0.0);
}

TEST_CASE("graph construction is deterministic in the seed") {
  auto m = Manifold::interval(0.0, 1.0);
  auto a = sample(m, Density::uniform(m), 64, SampleMode::Iid, 1234);
  auto b = sample(m, Density::uniform(m), 64, SampleMode::Iid, 1234);
  auto ga = build_graph(a, GraphScheme::full_gaussian(), KernelConfig{0.02, 1}, 0.5);
  auto gb = build_graph(b, GraphScheme::full_gaussian(), KernelConfig{0.02, 1}, 0.5);
  CHECK((ga.W_alpha - gb.W_alpha).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ga.degree - gb.degree).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degree limits on the unit interval") {
  // d_{t}(x) -> sqrt(pi) p(x) in the interior, half that on the boundary
  auto m = Manifold::interval(0.0, 1.0);
  auto cloud = sample(m, Density::uniform(m), 2000, SampleMode::Equispaced, 0);
  KernelConfig cfg{1e-4, 1};
  auto g = build_graph(cloud, GraphScheme::full_gaussian(), cfg, 0.0);
  const double sqrt_pi = std::sqrt(kPi);
  // the t^{-1/2} prefactor makes the degree itself converge to sqrt(pi) p(x)
  Eigen::Index mid = 1000;
  CHECK(g.degree[mid] == doctest::Approx(sqrt_pi).epsilon(0.02));
  CHECK(g.degree[0] == doctest::Approx(sqrt_pi / 2.0).epsilon(0.05));

  // degree_at agrees with the in-graph degree at a sample point
  Eigen::VectorXd x = cloud.point(mid);
  auto [d_plain, d_alpha] = degree_at(g, x);
  CHECK(d_plain == doctest::Approx(g.degree[mid]).epsilon(1e-13));
}

TEST_CASE("degree_at refuses truncated schemes") {
  auto cloud = cloud_from({0.0, 0.5, 1.0});
  auto g = build_graph(cloud, GraphScheme::epsilon_nn(0.6), KernelConfig{1.0, 1}, 0.0);
  Eigen::VectorXd x(1);
  x << 0.25;
  CHECK_THROWS(degree_at(g, x));
}

TEST_CASE("scheme parameter validation") {
  CHECK_THROWS(GraphScheme::epsilon_nn(0.0));
  CHECK_THROWS(GraphScheme::epsilon_nn(-1.0));
  CHECK_THROWS(GraphScheme::symmetric_knn(0));
  auto cloud = cloud_from({0.0, 1.0});
  CHECK_THROWS(build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{0.0, 1}, 0.0));
  CHECK_THROWS(build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{-0.1, 1}, 0.0));
  CHECK_THROWS(build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{1.0, 0}, 0.0));
}
