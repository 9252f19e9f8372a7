#include "doctest.h"
#include "manilap/experiments.hpp"

#include <cmath>

using namespace manilap;

TEST_CASE("constants closed forms") {
  auto c1 = constants(1);
  CHECK(c1.C1 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
  CHECK(c1.C2 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(c1.C3 == doctest::Approx(0.88622692545275801).epsilon(1e-15));
  CHECK(c1.C4 == 0.5);
  auto c2 = constants(2);
  CHECK(c2.C1 == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(c2.C3 == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(c2.C4 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-15));
  for (int d : {1, 2, 3, 7}) {
    auto c = constants(d);
    CHECK(c.C4 / c.C3 == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK(c.C3 == doctest::Approx(0.5 * c.C1).epsilon(1e-15));
  }
  CHECK_THROWS(constants(0));
}

TEST_CASE("constants agree with their Monte-Carlo estimates") {
  for (int d : {1, 2, 3}) {
    Rng rng(42 + static_cast<std::uint64_t>(d));
    auto rows = constants_mc_check(d, 200000, rng);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
      CHECK(r.mc_std_error > 0.0);
      CHECK(std::abs(r.mc_estimate - r.closed_form) <= 3.0 * r.mc_std_error);
    }
  }
}

TEST_CASE("layer constants: endpoints, monotonicity, frozen value") {
  auto [c1_0, c2_0] = layer_constants(0.0, 1);
  CHECK(c1_0 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(c2_0 == doctest::Approx(0.25 * std::sqrt(kPi)).epsilon(1e-15));
  auto [c1_inf, c2_inf] = layer_constants(40.0, 1);
  CHECK(c1_inf == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(c2_inf == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-14));

  // closed forms at z=1 (independently: erf(1)=0.84270079294971489)
  auto [c1_1, c2_1] = layer_constants(1.0, 1);
  CHECK(c1_1 == doctest::Approx(1.633051058265185).epsilon(1e-12));
  CHECK(c2_1 == doctest::Approx(0.6325858085468713).epsilon(1e-12));

  double prev1 = 0.0, prev2 = 0.0;
  for (double z = 0.0; z <= 3.0; z += 0.1) {
    auto [a, b] = layer_constants(z, 2);
    CHECK(a >= prev1);
    CHECK(b >= prev2 - 1e-15);
    prev1 = a;
    prev2 = b;
    // C1(z) stays in [C1(0), C1(inf)] and C2(z) in [C2(0), C2(inf)]
    CHECK(a >= 0.5 * kPi - 1e-12);
    CHECK(a <= kPi + 1e-12);
    CHECK(b >= 0.125 * kPi - 1e-12);
    CHECK(b <= kPi + 1e-12);
  }
  CHECK_THROWS(layer_constants(-0.1, 1));
}

TEST_CASE("layer constant C2(z) against a Monte-Carlo oracle") {
  // C2(z) = int_{u1 >= -z} u1^2 e^{-|u|^2} du
  Rng rng(7);
  for (double z : {0.0, 0.5, 1.0}) {
    auto mc = mc_integrate(1, McRegion::HalfSpace, z, "exp_neg_norm2_u1sq", 400000, rng);
    auto [c1z, c2z] = layer_constants(z, 1);
    (void)c1z;
    CHECK(std::abs(mc.estimate - c2z) <= 3.0 * mc.std_error);
  }
}

namespace {

PointCloud interval_cloud(double a, double b, int n) {
  auto m = Manifold::interval(a, b);
  return sample(m, Density::uniform(m), n, SampleMode::Equispaced, 0);
}

std::vector<double> geometric_ladder(double t0, double t1, int count) {
  std::vector<double> out;
  const double step = std::pow(t1 / t0, 1.0 / (count - 1));
  double t = t0;
  for (int i = 0; i < count; ++i, t *= step) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("scaling experiment at the boundary of [1,2]") {
  auto cloud = interval_cloud(1.0, 2.0, 1000);
  auto fn = test_function_1d("x3");
  Eigen::VectorXd x(1);
  x << 2.0;
  auto ladder = geometric_ladder(1e-3, 1e-6, 7);
  auto rep = scaling_experiment(cloud, fn, x, ladder, 0.0, LaplacianKind::RandomWalk);
  REQUIRE(rep.rungs.size() == 7);
  // frozen anchor: |(1/t) L^r x^3| at t=1e-3 on this grid
  CHECK(std::abs(rep.rungs[0].value) == doctest::Approx(207.37).epsilon(0.01));
  // resolution rule flags the two finest rungs (sqrt t < 2/999)
  CHECK(!rep.rungs[0].flagged);
  CHECK(!rep.rungs[4].flagged);
  CHECK(rep.rungs[5].flagged);
  CHECK(rep.rungs[6].flagged);
  CHECK(rep.fit.slope > -0.55);
  CHECK(rep.fit.slope < -0.45);
  CHECK(rep.fit.r_squared >= 0.98);
}

TEST_CASE("scaling experiment at an interior point") {
  auto cloud = interval_cloud(1.0, 2.0, 1000);
  auto fn = test_function_1d("x3");
  Eigen::VectorXd x(1);
  x << 1.5;
  auto ladder = geometric_ladder(1e-3, 1e-6, 7);
  auto rep = scaling_experiment(cloud, fn, x, ladder, 0.0, LaplacianKind::RandomWalk);
  CHECK(std::abs(rep.fit.slope) <= 0.1);
  // (1/t) L^r f -> -(C2/2C1) 6x = -1.5 x at alpha = 0
  double v = 0.0;
  for (const auto& r : rep.rungs)
    if (r.t == doctest::Approx(1e-5).epsilon(1e-6)) v = r.value;
  CHECK(v == doctest::Approx(-1.5 * 1.5).epsilon(0.05));
}

TEST_CASE("scaling experiment rejects a constant function") {
  auto cloud = interval_cloud(1.0, 2.0, 200);
  TestFunction c;
  c.name = "const";
  c.f = [](const Eigen::VectorXd&) { return 2.0; };
  Eigen::VectorXd x(1);
  x << 2.0;
  CHECK_THROWS(scaling_experiment(cloud, c, x, geometric_ladder(1e-3, 1e-6, 7), 0.0,
                                  LaplacianKind::RandomWalk));
}

TEST_CASE("scaling experiment validates the ladder") {
  auto cloud = interval_cloud(1.0, 2.0, 100);
  auto fn = test_function_1d("x3");
  Eigen::VectorXd x(1);
  x << 2.0;
  CHECK_THROWS(scaling_experiment(cloud, fn, x, {1e-3, 1e-4, 1e-5}, 0.0,
                                  LaplacianKind::RandomWalk));  // too short
  CHECK_THROWS(scaling_experiment(cloud, fn, x, {1e-3, 1e-3, 1e-4, 1e-5}, 0.0,
                                  LaplacianKind::RandomWalk));  // not strictly decreasing
}

TEST_CASE("boundary ratio reproduces the 4x asymmetry of x^3") {
  auto cloud = interval_cloud(1.0, 2.0, 1000);
  CHECK(boundary_ratio(cloud, test_function_1d("x3"), 0.0, 1e-5) ==
        doctest::Approx(4.0).epsilon(0.10));
  CHECK(boundary_ratio(cloud, test_function_1d("x"), 0.0, 1e-5) ==
        doctest::Approx(1.0).epsilon(0.10));
  TestFunction c;
  c.name = "const";
  c.f = [](const Eigen::VectorXd&) { return 1.0; };
  CHECK_THROWS(boundary_ratio(cloud, c, 0.0, 1e-5));
}

TEST_CASE("half-sphere boundary experiment") {
  auto rep = halfsphere_boundary_experiment(1500, 0.25, 0.05, 3);
  CHECK(!rep.band.empty());
  CHECK(rep.fit.slope < 0.0);
  CHECK(rep.fit.r_squared >= 0.9);
  CHECK(std::min(rep.mse_raw, rep.mse_scaled) <= 0.05);
  CHECK_THROWS(halfsphere_boundary_experiment(99, 0.25, 0.05, 3));
  CHECK_THROWS(halfsphere_boundary_experiment(500, 0.25, -1.0, 3));
}

TEST_CASE("quadratic form coefficient: single cells of the table") {
  auto grid = geometric_ladder(1.0, 1e-7, 29);
  auto r0 = quadform_experiment(1001, 0.0, test_function_1d("x"), grid);
  CHECK(r0.theory == doctest::Approx(0.25 * std::sqrt(kPi)).epsilon(1e-15));
  CHECK(r0.max_coefficient == doctest::Approx(0.4424).epsilon(0.012));
  CHECK(std::abs(r0.max_coefficient - r0.theory) <= 0.01 * r0.theory);

  auto rh = quadform_experiment(1001, 0.5, test_function_1d("cos_10x"), grid);
  CHECK(rh.theory == 0.25);
  CHECK(std::abs(rh.max_coefficient - 0.25) <= 0.25 * 0.01);
}

TEST_CASE("quadratic form rejects zero gradient energy") {
  TestFunction c;
  c.name = "const";
  c.f = [](const Eigen::VectorXd&) { return 1.0; };
  c.grad_sq_integral_01 = 0.0;
  CHECK_THROWS(quadform_experiment(101, 0.0, c, {0.01, 0.001}));
}

TEST_CASE("eigenfunction experiment on the uniform interval") {
  auto m = Manifold::interval(0.0, 1.0);
  auto rep = eigenfunction_experiment(Density::uniform(m), 400, 0.5, 1e-4,
                                      GraphScheme::full_gaussian(), LaplacianKind::RandomWalk,
                                      4, 0);
  REQUIRE(rep.eigenvalues.size() == 4);
  CHECK(rep.conjugation_max_dev <= 1e-8);
  // phi_2 tracks cos(pi x): sign-aligned correlation
  Vector ref(400);
  for (int i = 0; i < 400; ++i) ref[i] = std::cos(kPi * rep.xs[i]);
  Vector v = rep.phi.col(1);
  double corr = (v.array() - v.mean()).matrix().dot((ref.array() - ref.mean()).matrix()) /
                ((v.array() - v.mean()).matrix().norm() *
                 (ref.array() - ref.mean()).matrix().norm());
  CHECK(std::abs(corr) >= 0.99);
  // Neumann behavior: flat bands at both ends relative to the interior
  CHECK(rep.checks[1].ratio <= 0.1);
  CHECK(rep.checks[2].ratio <= 0.1);
  // lambda_1 = 0 for the random-walk operator
  CHECK(std::abs(rep.eigenvalues[0]) <= 1e-10);
}

TEST_CASE("eigenfunction experiment on the two-Gaussian mixture") {
  auto rep = eigenfunction_experiment(Density::gaussian_mixture(), 1000, 0.0, 0.05,
                                      GraphScheme::full_gaussian(), LaplacianKind::RandomWalk,
                                      3, 2);
  REQUIRE(rep.eigenvalues.size() == 3);
  CHECK(std::is_sorted(rep.xs.begin(), rep.xs.end()));
  CHECK(std::abs(rep.eigenvalues[0]) <= 1e-10);
  CHECK(rep.eigenvalues[1] <= rep.eigenvalues[2]);
  CHECK(rep.conjugation_max_dev <= 1e-8);
  // phi_2 separates the two mixture components and flattens at the sample extremes
  CHECK(rep.phi(0, 1) * rep.phi(999, 1) < 0.0);
  CHECK(rep.checks[1].ratio <= 0.1);
}

TEST_CASE("eigenfunction experiment argument validation") {
  auto m = Manifold::interval(0.0, 1.0);
  CHECK_THROWS(eigenfunction_experiment(Density::uniform(m), 100, 0.5, 1e-3,
                                        GraphScheme::full_gaussian(),
                                        LaplacianKind::Unnormalized, 4, 0));
  CHECK_THROWS(eigenfunction_experiment(Density::uniform(m), 100, 0.5, 1e-3,
                                        GraphScheme::full_gaussian(),
                                        LaplacianKind::RandomWalk, 2, 0));
}

TEST_CASE("kernel experiment against the Green's function oracle") {
  auto rep = kernel_experiment(401, 1e-4, 0.0, 0.25, 10000);
  CHECK(rep.x0_index == 100);
  CHECK(rep.k_prime[rep.x0_index] == 0.25);                     // 1/4 - 0
  CHECK(rep.k_closed[rep.x0_index] ==
        doctest::Approx(0.5 * (0.0625 - 0.25 + 1.0 / 3.0)).epsilon(1e-15));
  CHECK(rep.k_series[rep.x0_index] == doctest::Approx(0.072917).epsilon(2e-3));
  CHECK(rep.max_series_vs_closed <= 1e-3);
  CHECK(rep.rel_discrepancy <= 0.05);
  CHECK(rep.max_series_vs_prime >= 0.05);
  CHECK_THROWS(kernel_experiment(401, 1e-4, 0.0, 0.2501, 10000));  // off-grid x0
  CHECK_THROWS(kernel_experiment(401, 1e-4, 0.0, 0.25, 99));
}

TEST_CASE("kernel series truncation obeys the tail bound") {
  for (int kmax : {100, 1000}) {
    auto rep = kernel_experiment(101, 1e-3, 0.0, 0.25, kmax);
    CHECK(rep.max_series_vs_closed <= 2.0 / (kPi * kPi * kmax));
  }
}

TEST_CASE("finite-difference equivalence") {
  auto chain = fd_equivalence(3, 1);
  DenseMatrix expect(3, 3);
  expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((chain.fd - expect).cwiseAbs().maxCoeff() == 0.0);
  CHECK(chain.max_abs_difference == 0.0);

  for (auto [nx, ny] : std::vector<std::pair<int, int>>{{10, 1}, {3, 3}, {10, 10}, {4, 7}}) {
    CHECK(fd_equivalence(nx, ny).max_abs_difference == 0.0);
  }
  CHECK_THROWS(fd_equivalence(1, 1));

  // boundary stencil: (1/h^2) L f at the end of a chain for f=x is -1/h
  for (double h : {0.1, 0.01}) {
    const int n = static_cast<int>(std::lround(1.0 / h)) + 1;
    auto rep = fd_equivalence(n, 1);
    Vector f(n);
    for (int i = 0; i < n; ++i) f[i] = i * h;
    Vector lf = rep.graph * f / (h * h);
    CHECK(lf[0] == doctest::Approx(-1.0 / h).epsilon(0.01));
    // interior second difference of x^2 recovers -f'' = -2
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = (i * h) * (i * h);
    Vector lg = rep.graph * g / (h * h);
    CHECK(lg[n / 2] == doctest::Approx(-2.0).epsilon(1e-9));
  }
}

TEST_CASE("concentration experiment fluctuation decay") {
  auto fn = test_function_1d("x2");
  auto rep = concentration_experiment({100, 200, 400, 800}, 20,
                                      [](int) { return 0.01; }, fn, 0.5, 11);
  REQUIRE(rep.rows.size() == 4);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].std_dev < rep.rows[i - 1].std_dev);
  CHECK(rep.fit.slope < -0.3);
  CHECK(rep.fit.slope > -0.75);
  CHECK_THROWS(concentration_experiment({100, 200}, 1, [](int) { return 0.01; }, fn, 0.5, 11));
}

TEST_CASE("default concentration bandwidth rule") {
  CHECK(default_concentration_t(1000, 1) == doctest::Approx(std::pow(1000.0, -0.25)).epsilon(1e-15));
}
