#include "manilap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace manilap {

namespace {

double mean_sq_error(const Vector& a, const Vector& b) {
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

Constants constants(int d) {
  if (d < 1) throw std::invalid_argument("constants: need d >= 1");
  Constants c;
  c.d = d;
  c.C1 = std::pow(kPi, 0.5 * d);
  c.C2 = 0.5 * c.C1;
  c.C3 = 0.5 * c.C1;
  c.C4 = 0.5 * std::pow(kPi, 0.5 * (d - 1));
  return c;
}

std::vector<ConstantsMcRow> constants_mc_check(int d, long samples, Rng& rng) {
  const Constants c = constants(d);
  std::vector<ConstantsMcRow> rows;
  auto add = [&](const std::string& name, double closed, McRegion region,
                 const std::string& integrand) {
    McResult r = mc_integrate(d, region, 0.0, integrand, samples, rng);
    rows.push_back({name, closed, r.estimate, r.std_error});
  };
  add("C1", c.C1, McRegion::FullSpace, "exp_neg_norm2");
  add("C2", c.C2, McRegion::FullSpace, "exp_neg_norm2_u1sq");
  add("C3", c.C3, McRegion::HalfSpace, "exp_neg_norm2");
  add("C4", c.C4, McRegion::HalfSpace, "exp_neg_norm2_u1");
  return rows;
}

std::pair<double, double> layer_constants(double z, int d) {
  if (z < 0.0) throw std::invalid_argument("layer_constants: need z >= 0");
  if (d < 1) throw std::invalid_argument("layer_constants: need d >= 1");
  const double pd = std::pow(kPi, 0.5 * d);
  const double c1 = 0.5 * pd * (1.0 + erf(z));
  // 2z/(sqrt(pi) e^{z^2}) written overflow-free
  const double layer = (2.0 / std::sqrt(kPi)) * z * std::exp(-z * z);
  const double c2 = 0.25 * pd * (1.0 - layer + erf(z));
  return {c1, c2};
}

ScalingReport scaling_experiment(const PointCloud& cloud, const TestFunction& fn,
                                 const Eigen::VectorXd& x, const std::vector<double>& t_ladder,
                                 double alpha, LaplacianKind kind) {
  if (t_ladder.size() < 4)
    throw std::invalid_argument("scaling_experiment: need at least 4 rungs");
  for (std::size_t i = 0; i < t_ladder.size(); ++i) {
    if (t_ladder[i] <= 0.0)
      throw std::invalid_argument("scaling_experiment: bandwidths must be positive");
    if (i > 0 && t_ladder[i] >= t_ladder[i - 1])
      throw std::invalid_argument("scaling_experiment: ladder must decrease strictly");
  }

  // resolution floor: the kernel should see a few neighbors on each side
  double h = 0.0;
  if (cloud.mode == SampleMode::Equispaced && cloud.manifold.kind == Manifold::Kind::Interval)
    h = (cloud.manifold.b - cloud.manifold.a) / static_cast<double>(cloud.n() - 1);

  ScalingReport rep;
  rep.x = x;
  const int d = cloud.manifold.intrinsic_dim();
  for (double t : t_ladder) {
    auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, d}, alpha);
    double v = apply_pointwise(g, kind, fn.f, x).value / t;
    bool flagged = (v == 0.0) || !std::isfinite(v) || (h > 0.0 && std::sqrt(t) < 2.0 * h);
    rep.rungs.push_back({t, v, flagged});
  }

  std::vector<double> lx, ly;
  for (const auto& r : rep.rungs) {
    if (r.flagged) continue;
    lx.push_back(std::log10(r.t));
    ly.push_back(std::log10(std::abs(r.value)));
  }
  if (lx.size() < 2)
    throw std::runtime_error("scaling_experiment: too few usable rungs to fit (flat or underflowed values)");
  rep.fit = linear_fit(lx, ly);
  return rep;
}

double boundary_ratio(const PointCloud& cloud, const TestFunction& fn, double alpha, double t) {
  if (cloud.manifold.kind != Manifold::Kind::Interval)
    throw std::invalid_argument("boundary_ratio: interval clouds only");
  auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, 1}, alpha);
  Eigen::VectorXd xa(1), xb(1);
  xa << cloud.manifold.a;
  xb << cloud.manifold.b;
  double va = apply_pointwise(g, LaplacianKind::RandomWalk, fn.f, xa).value / t;
  double vb = apply_pointwise(g, LaplacianKind::RandomWalk, fn.f, xb).value / t;
  if (va == 0.0) throw std::runtime_error("boundary_ratio: value at the left endpoint is zero");
  return std::abs(vb) / std::abs(va);
}

BoundaryReport halfsphere_boundary_experiment(int n, double t, double band_width,
                                              std::uint64_t seed) {
  if (n < 100) throw std::invalid_argument("halfsphere_boundary_experiment: need n >= 100");
  if (t <= 0.0) throw std::invalid_argument("halfsphere_boundary_experiment: need t > 0");
  auto m = Manifold::hemisphere();
  auto cloud = sample(m, Density::uniform(m), n, SampleMode::Iid, seed);
  auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, 2}, 0.0);
  auto fn = test_function_xz();

  Vector fv(n);
  for (int i = 0; i < n; ++i) fv[i] = fn.f(cloud.point(i));
  Vector lr = laplacian_matrix(g, LaplacianKind::RandomWalk) * fv / std::sqrt(t);

  BoundaryReport rep;
  rep.band = boundary_band(cloud, band_width);
  if (rep.band.empty()) throw std::runtime_error("halfsphere_boundary_experiment: empty band");
  const auto bsize = static_cast<Eigen::Index>(rep.band.size());
  rep.xs.resize(bsize);
  rep.estimate.resize(bsize);
  rep.target.resize(bsize);
  for (Eigen::Index k = 0; k < bsize; ++k) {
    Eigen::Index i = rep.band[static_cast<std::size_t>(k)];
    rep.xs[k] = cloud.points(i, 0);
    rep.estimate[k] = lr[i];
    rep.target[k] = -cloud.points(i, 0);  // -d_n(xz) = -x on the equator
  }
  rep.fit = linear_fit(to_std(rep.xs), to_std(rep.estimate));
  const double kappa = 1.0 / std::sqrt(kPi);  // C4/C3
  rep.mse_raw = mean_sq_error(rep.estimate, rep.target);
  rep.mse_scaled = mean_sq_error(rep.estimate, (kappa * rep.target).eval());
  return rep;
}

namespace {

// shared core for the quadratic-form sweeps: one kernel build per bandwidth,
// reused across normalizations and catalogue functions
std::vector<CoefficientReport> quadform_sweep(int n, const std::vector<double>& alphas,
                                              const std::vector<TestFunction>& fns,
                                              const std::vector<double>& t_grid) {
  if (n < 2) throw std::invalid_argument("quadform: need n >= 2");
  if (t_grid.empty()) throw std::invalid_argument("quadform: empty bandwidth grid");
  for (double t : t_grid)
    if (t <= 0.0) throw std::invalid_argument("quadform: bandwidths must be positive");
  for (const auto& fn : fns)
    if (!(fn.grad_sq_integral_01 > 0.0))
      throw std::invalid_argument("quadform: function '" + fn.name +
                                  "' has zero gradient energy on [0,1]");

  auto m = Manifold::interval(0.0, 1.0);
  auto cloud = sample(m, Density::uniform(m), n, SampleMode::Equispaced, 0);

  const auto nf = static_cast<Eigen::Index>(fns.size());
  DenseMatrix F(n, nf);
  for (Eigen::Index j = 0; j < nf; ++j)
    for (int i = 0; i < n; ++i) F(i, j) = fns[static_cast<std::size_t>(j)].f(cloud.point(i));

  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  // coeff[a][j][ti]
  std::vector<std::vector<std::vector<double>>> coeff(
      alphas.size(), std::vector<std::vector<double>>(fns.size(),
                                                      std::vector<double>(t_grid.size(), 0.0)));

  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const double t = t_grid[ti];
    auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, 1}, 0.0);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const double alpha = alphas[a];
      std::vector<double> qf(fns.size(), 0.0);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double w = g.W(i, j);
          if (w == 0.0) continue;
          if (alpha != 0.0) w /= std::pow(g.degree[i] * g.degree[j], alpha);
          for (Eigen::Index k = 0; k < nf; ++k) {
            const double df = F(i, k) - F(j, k);
            qf[static_cast<std::size_t>(k)] += w * df * df;
          }
        }
      }
      for (std::size_t k = 0; k < fns.size(); ++k)
        coeff[a][k][ti] = qf[k] / (n2 * t * fns[k].grad_sq_integral_01);
    }
  }

  std::vector<CoefficientReport> out;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t k = 0; k < fns.size(); ++k) {
      CoefficientReport rep;
      rep.fn = fns[k].name;
      rep.alpha = alphas[a];
      rep.theory = 0.25 * std::pow(kPi, 0.5 - alphas[a]);
      rep.max_coefficient = -std::numeric_limits<double>::infinity();
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        rep.rows.push_back({t_grid[ti], coeff[a][k][ti]});
        rep.max_coefficient = std::max(rep.max_coefficient, coeff[a][k][ti]);
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace

CoefficientReport quadform_experiment(int n, double alpha, const TestFunction& fn,
                                      const std::vector<double>& t_grid) {
  return quadform_sweep(n, {alpha}, {fn}, t_grid).front();
}

std::vector<CoefficientReport> quadform_table(int n, const std::vector<double>& alphas,
                                              const std::vector<double>& t_grid) {
  return quadform_sweep(n, alphas, catalogue_1d(), t_grid);
}

EigenReport eigenfunction_experiment(const Density& density, int n, double alpha, double t,
                                     const GraphScheme& scheme, LaplacianKind kind, int k_eigs,
                                     std::uint64_t seed) {
  if (kind == LaplacianKind::Unnormalized)
    throw std::invalid_argument("eigenfunction_experiment: kind must be r or s");
  if (k_eigs < 3) throw std::invalid_argument("eigenfunction_experiment: need k_eigs >= 3");
  if (n < k_eigs + 1) throw std::invalid_argument("eigenfunction_experiment: n too small");
  if (t <= 0.0) throw std::invalid_argument("eigenfunction_experiment: need t > 0");

  PointCloud cloud;
  if (density.kind == Density::Kind::Uniform) {
    auto m = Manifold::interval(0.0, 1.0);
    cloud = sample(m, density, n, SampleMode::Equispaced, seed);
  } else {
    cloud = sample(Manifold::real_line(), density, n, SampleMode::Iid, seed);
    std::sort(cloud.points.col(0).begin(), cloud.points.col(0).end());
  }

  auto g = build_graph(cloud, scheme, KernelConfig{t, 1}, alpha);
  auto spec = graph_spectrum(g);

  EigenReport rep;
  rep.xs = cloud.points.col(0);
  rep.degree = g.degree;
  rep.eigenvalues = spec.eigenvalues.head(k_eigs);
  rep.phi = spec.phi.leftCols(k_eigs);
  rep.psi = spec.psi.leftCols(k_eigs);

  Vector droot = g.W_alpha.rowwise().sum().cwiseSqrt();
  rep.conjugation_max_dev = 0.0;
  for (int c = 0; c < k_eigs; ++c) {
    double dev = (rep.psi.col(c) - droot.cwiseProduct(rep.phi.col(c))).cwiseAbs().maxCoeff();
    rep.conjugation_max_dev = std::max(rep.conjugation_max_dev, dev);
  }

  const DenseMatrix& V = (kind == LaplacianKind::RandomWalk) ? rep.phi : rep.psi;
  const double w = 2.0 * std::sqrt(t);
  const double lo = rep.xs[0], hi = rep.xs[n - 1];
  std::vector<Eigen::Index> left, right, interior;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rep.xs[i] <= lo + w)
      left.push_back(i);
    else if (rep.xs[i] >= hi - w)
      right.push_back(i);
    else
      interior.push_back(i);
  }
  if (interior.size() < 2)
    throw std::runtime_error("eigenfunction_experiment: boundary bands cover the whole cloud");

  for (int c = 0; c < k_eigs; ++c) {
    EigenBoundaryCheck chk;
    chk.index = c;
    // a band holding fewer than two samples gives no derivative estimate
    auto band_slope = [&](const std::vector<Eigen::Index>& band) {
      if (band.size() < 2) return 0.0;
      std::vector<double> bx, bv;
      for (Eigen::Index i : band) {
        bx.push_back(rep.xs[i]);
        bv.push_back(V(i, c));
      }
      return linear_fit(bx, bv).slope;
    };
    chk.band_slope_left = band_slope(left);
    chk.band_slope_right = band_slope(right);
    chk.max_interior_slope = 0.0;
    for (std::size_t k = 0; k + 1 < interior.size(); ++k) {
      Eigen::Index i = interior[k], j = interior[k + 1];
      double dx = rep.xs[j] - rep.xs[i];
      if (dx <= 0.0) continue;
      chk.max_interior_slope = std::max(chk.max_interior_slope, std::abs(V(j, c) - V(i, c)) / dx);
    }
    double band_mag = std::max(std::abs(chk.band_slope_left), std::abs(chk.band_slope_right));
    chk.ratio = (chk.max_interior_slope > 0.0)
                    ? band_mag / chk.max_interior_slope
                    : (band_mag == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    rep.checks.push_back(chk);
  }
  return rep;
}

KernelReport kernel_experiment(int n, double t, double alpha, double x0, int k_max,
                               double null_tol) {
  if (n < 2) throw std::invalid_argument("kernel_experiment: need n >= 2");
  if (k_max < 100) throw std::invalid_argument("kernel_experiment: need k_max >= 100");
  if (t <= 0.0) throw std::invalid_argument("kernel_experiment: need t > 0");

  auto m = Manifold::interval(0.0, 1.0);
  auto cloud = sample(m, Density::uniform(m), n, SampleMode::Equispaced, 0);

  KernelReport rep;
  rep.x0 = x0;
  rep.x0_index = -1;
  for (int i = 0; i < n; ++i) {
    if (std::abs(cloud.points(i, 0) - x0) <= 1e-9) {
      rep.x0_index = i;
      break;
    }
  }
  if (rep.x0_index < 0)
    throw std::invalid_argument("kernel_experiment: x0 is not a sample point of the grid");

  rep.xs = cloud.points.col(0);
  rep.k_series.resize(n);
  rep.k_closed.resize(n);
  rep.k_prime.resize(n);
  for (int j = 0; j < n; ++j) {
    const double y = rep.xs[j];
    double s = 0.0;
    for (int k = k_max; k >= 1; --k) {  // small terms first
      const double kp = k * kPi;
      s += std::cos(kp * x0) * std::cos(kp * y) / (kp * kp);
    }
    rep.k_series[j] = s;
    const double G = 0.5 * (x0 * x0 + y * y) - std::max(x0, y) + 1.0 / 3.0;
    rep.k_closed[j] = 0.5 * G;
    rep.k_prime[j] = 0.25 - 0.5 * std::abs(x0 - y);
  }

  auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, 1}, alpha);
  DenseMatrix P = pseudoinverse(laplacian_matrix(g, LaplacianKind::Unnormalized), null_tol);
  rep.k_pinv = P.row(rep.x0_index).transpose();

  rep.scale = rep.k_pinv.dot(rep.k_series) / rep.k_series.squaredNorm();
  Vector aligned = rep.scale * rep.k_series;
  rep.rel_discrepancy = (rep.k_pinv - aligned).norm() / aligned.norm();
  rep.max_series_vs_closed = (rep.k_series - rep.k_closed).cwiseAbs().maxCoeff();
  rep.max_series_vs_prime = (rep.k_series - rep.k_prime).cwiseAbs().maxCoeff();
  return rep;
}

namespace {

// 1-d Neumann second-difference matrix: rows [1,-1] at the ends, [-1,2,-1]
// inside; a single point contributes nothing along its axis
DenseMatrix neumann_stencil(int m) {
  DenseMatrix T = DenseMatrix::Zero(m, m);
  if (m == 1) return T;
  for (int i = 0; i < m; ++i) {
    if (i > 0) {
      T(i, i - 1) = -1.0;
      T(i, i) += 1.0;
    }
    if (i + 1 < m) {
      T(i, i + 1) = -1.0;
      T(i, i) += 1.0;
    }
  }
  return T;
}

}  // namespace

FdReport fd_equivalence(int nx, int ny) {
  if (nx < 2) throw std::invalid_argument("fd_equivalence: need nx >= 2");
  if (ny < 1) throw std::invalid_argument("fd_equivalence: need ny >= 1");
  const int N = nx * ny;

  DenseMatrix Tx = neumann_stencil(nx), Ty = neumann_stencil(ny);
  FdReport rep;
  rep.fd = DenseMatrix::Zero(N, N);
  // kron(Tx, I_ny) + kron(I_nx, Ty) with vertex index ix*ny + iy
  for (int ix = 0; ix < nx; ++ix)
    for (int jx = 0; jx < nx; ++jx)
      if (Tx(ix, jx) != 0.0)
        for (int iy = 0; iy < ny; ++iy) rep.fd(ix * ny + iy, jx * ny + iy) += Tx(ix, jx);
  for (int iy = 0; iy < ny; ++iy)
    for (int jy = 0; jy < ny; ++jy)
      if (Ty(iy, jy) != 0.0)
        for (int ix = 0; ix < nx; ++ix) rep.fd(ix * ny + iy, ix * ny + jy) += Ty(iy, jy);

  // unit-weight 4-neighbor adjacency, no self-edges, L = D - W
  DenseMatrix W = DenseMatrix::Zero(N, N);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const int idx = ix * ny + iy;
      if (ix + 1 < nx) W(idx, idx + ny) = W(idx + ny, idx) = 1.0;
      if (iy + 1 < ny) W(idx, idx + 1) = W(idx + 1, idx) = 1.0;
    }
  }
  rep.graph = DenseMatrix(W.rowwise().sum().asDiagonal()) - W;
  rep.max_abs_difference = (rep.fd - rep.graph).cwiseAbs().maxCoeff();
  return rep;
}

double default_concentration_t(int n, int d) {
  return std::pow(static_cast<double>(n), -1.0 / (d + 3));
}

ConcentrationReport concentration_experiment(const std::vector<int>& n_list, int reps,
                                             const std::function<double(int)>& t_rule,
                                             const TestFunction& fn, double x,
                                             std::uint64_t seed) {
  if (reps < 2)
    throw std::invalid_argument("concentration_experiment: need reps >= 2 for a std dev");
  if (n_list.empty()) throw std::invalid_argument("concentration_experiment: empty n list");

  auto m = Manifold::interval(0.0, 1.0);
  auto density = Density::uniform(m);
  Eigen::VectorXd xv(1);
  xv << x;

  ConcentrationReport rep;
  std::uint64_t counter = 0;
  for (int n : n_list) {
    if (n < 2) throw std::invalid_argument("concentration_experiment: each n must be >= 2");
    const double t = t_rule(n);
    if (t <= 0.0) throw std::invalid_argument("concentration_experiment: t rule gave t <= 0");
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
      ++counter;
      const std::uint64_t sub = seed + 0x9e3779b97f4a7c15ULL * counter;
      auto cloud = sample(m, density, n, SampleMode::Iid, sub);
      auto g = build_graph(cloud, GraphScheme::full_gaussian(), KernelConfig{t, 1}, 0.0);
      vals.push_back(apply_pointwise(g, LaplacianKind::RandomWalk, fn.f, xv).value /
                     std::sqrt(t));
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= reps;
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    rep.rows.push_back({n, t, std::sqrt(ss / (reps - 1))});
  }

  std::vector<double> lx, ly;
  for (const auto& r : rep.rows) {
    lx.push_back(std::log10(static_cast<double>(r.n)));
    ly.push_back(std::log10(r.std_dev));
  }
  rep.fit = linear_fit(lx, ly);
  return rep;
}

}  // namespace manilap
