#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <manilap/experiments.hpp>
#include <manilap/graph.hpp>
#include <manilap/laplacian.hpp>
#include <manilap/manifold.hpp>
#include <manilap/numerics.hpp>

namespace py = pybind11;
using namespace manilap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "alpha-normalized graph Laplacians on sampled manifolds";

  py::enum_<SampleMode>(m, "SampleMode")
      .value("Equispaced", SampleMode::Equispaced)
      .value("Iid", SampleMode::Iid);

  py::enum_<LaplacianKind>(m, "LaplacianKind")
      .value("Unnormalized", LaplacianKind::Unnormalized)
      .value("RandomWalk", LaplacianKind::RandomWalk)
      .value("SymmetricNormalized", LaplacianKind::SymmetricNormalized);

  py::class_<Manifold>(m, "Manifold")
      .def_static("interval", &Manifold::interval, py::arg("a"), py::arg("b"))
      .def_static("hemisphere", &Manifold::hemisphere)
      .def_static("real_line", &Manifold::real_line)
      .def_readonly("a", &Manifold::a)
      .def_readonly("b", &Manifold::b)
      .def("intrinsic_dim", &Manifold::intrinsic_dim)
      .def("ambient_dim", &Manifold::ambient_dim)
      .def("has_boundary", &Manifold::has_boundary);

  py::class_<Density>(m, "Density")
      .def_static("uniform", &Density::uniform, py::arg("manifold"))
      .def_static("gaussian_mixture", &Density::gaussian_mixture)
      .def_readonly("uniform_value", &Density::uniform_value)
      .def("value", &Density::value, py::arg("x"))
      .def("derivative", &Density::derivative, py::arg("x"));

  py::class_<PointCloud>(m, "PointCloud")
      .def_readonly("points", &PointCloud::points)
      .def_readonly("manifold", &PointCloud::manifold)
      .def_readonly("seed", &PointCloud::seed)
      .def_readonly("mode", &PointCloud::mode)
      .def("point", &PointCloud::point, py::arg("i"))
      .def("__len__", &PointCloud::n);

  m.def("sample", &sample, py::arg("manifold"), py::arg("density"), py::arg("n"),
        py::arg("mode"), py::arg("seed"));

  py::class_<BoundaryInfo>(m, "BoundaryInfo")
      .def_readonly("z", &BoundaryInfo::z)
      .def_readonly("normal", &BoundaryInfo::normal);
  m.def("boundary_info", &boundary_info, py::arg("manifold"), py::arg("x"));
  m.def("boundary_band", &boundary_band, py::arg("cloud"), py::arg("width"));

  py::class_<TestFunction>(m, "TestFunction")
      .def_readonly("name", &TestFunction::name)
      .def_readonly("sup_bound", &TestFunction::sup_bound)
      .def_readonly("grad_sq_integral_01", &TestFunction::grad_sq_integral_01)
      .def("__call__",
           [](const TestFunction& t, const Eigen::VectorXd& x) { return t.f(x); },
           py::arg("x"))
      .def("gradient",
           [](const TestFunction& t, const Eigen::VectorXd& x) { return t.grad(x); },
           py::arg("x"))
      .def("laplace",
           [](const TestFunction& t, const Eigen::VectorXd& x) { return t.laplacian(x); },
           py::arg("x"));
  m.def("test_function", &test_function_1d, py::arg("name"));
  m.def("test_function_xz", &test_function_xz);
  m.def("test_function_names", [] {
    std::vector<std::string> names;
    for (const auto& fn : catalogue_1d()) names.push_back(fn.name);
    return names;
  });
  m.def("weighted_laplacian", &weighted_laplacian, py::arg("fn"), py::arg("density"),
        py::arg("s"), py::arg("x"));

  py::class_<KernelConfig>(m, "KernelConfig")
      .def(py::init([](double t, int d) { return KernelConfig{t, d}; }), py::arg("t"),
           py::arg("d"))
      .def_readwrite("t", &KernelConfig::t)
      .def_readwrite("d", &KernelConfig::d);

  py::class_<GraphScheme>(m, "GraphScheme")
      .def_static("full_gaussian", &GraphScheme::full_gaussian)
      .def_static("epsilon_nn", &GraphScheme::epsilon_nn, py::arg("eps"))
      .def_static("symmetric_knn", &GraphScheme::symmetric_knn, py::arg("k"))
      .def_readonly("eps", &GraphScheme::eps)
      .def_readonly("k", &GraphScheme::k);

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def_readonly("cloud", &WeightedGraph::cloud)
      .def_readonly("alpha", &WeightedGraph::alpha)
      .def_readonly("W", &WeightedGraph::W)
      .def_readonly("degree", &WeightedGraph::degree)
      .def_readonly("W_alpha", &WeightedGraph::W_alpha)
      .def_readonly("degree_alpha", &WeightedGraph::degree_alpha)
      .def("__len__", &WeightedGraph::n);

  m.def("gaussian_weight", &gaussian_weight, py::arg("x"), py::arg("y"), py::arg("cfg"));
  m.def("build_graph", &build_graph, py::arg("cloud"), py::arg("scheme"), py::arg("cfg"),
        py::arg("alpha") = 0.0);
  m.def("degree_at", &degree_at, py::arg("graph"), py::arg("x"),
        "plain and alpha-normalized degree of an out-of-sample point");

  m.def("laplacian_matrix", &laplacian_matrix, py::arg("graph"), py::arg("kind"));
  m.def(
      "apply_pointwise",
      [](const WeightedGraph& g, LaplacianKind kind,
         const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
        return apply_pointwise(g, kind, f, x).value;
      },
      py::arg("graph"), py::arg("kind"), py::arg("f"), py::arg("x"),
      "pointwise (1/n)-averaged application; divide by t or sqrt(t) as needed");
  m.def("quadratic_form", &quadratic_form, py::arg("graph"), py::arg("fvals"));

  py::class_<GraphSpectrum>(m, "GraphSpectrum")
      .def_readonly("eigenvalues", &GraphSpectrum::eigenvalues)
      .def_readonly("psi", &GraphSpectrum::psi)
      .def_readonly("phi", &GraphSpectrum::phi);
  m.def("graph_spectrum", &graph_spectrum, py::arg("graph"), py::arg("tol_eig") = 1e-10);

  py::class_<LinearFit>(m, "LinearFit")
      .def_readonly("slope", &LinearFit::slope)
      .def_readonly("intercept", &LinearFit::intercept)
      .def_readonly("r_squared", &LinearFit::r_squared);

  py::class_<Constants>(m, "Constants")
      .def_readonly("d", &Constants::d)
      .def_readonly("C1", &Constants::C1)
      .def_readonly("C2", &Constants::C2)
      .def_readonly("C3", &Constants::C3)
      .def_readonly("C4", &Constants::C4);
  m.def("constants", &constants, py::arg("d"));

  py::class_<ConstantsMcRow>(m, "ConstantsMcRow")
      .def_readonly("name", &ConstantsMcRow::name)
      .def_readonly("closed_form", &ConstantsMcRow::closed_form)
      .def_readonly("mc_estimate", &ConstantsMcRow::mc_estimate)
      .def_readonly("mc_std_error", &ConstantsMcRow::mc_std_error);
  m.def(
      "constants_mc_check",
      [](int d, long samples, std::uint64_t seed) {
        Rng rng(seed);
        return constants_mc_check(d, samples, rng);
      },
      py::arg("d"), py::arg("samples") = 1000000, py::arg("seed") = 0);
  m.def("layer_constants", &layer_constants, py::arg("z"), py::arg("d"),
        "(C1(z), C2(z)) at normal distance z in units of sqrt(t)");

  py::class_<ScalingRung>(m, "ScalingRung")
      .def_readonly("t", &ScalingRung::t)
      .def_readonly("value", &ScalingRung::value)
      .def_readonly("flagged", &ScalingRung::flagged);
  py::class_<ScalingReport>(m, "ScalingReport")
      .def_readonly("x", &ScalingReport::x)
      .def_readonly("rungs", &ScalingReport::rungs)
      .def_readonly("fit", &ScalingReport::fit);
  m.def(
      "scaling_experiment",
      [](const PointCloud& cloud, const std::string& fn, const Eigen::VectorXd& x,
         const std::vector<double>& t_ladder, double alpha, LaplacianKind kind) {
        return scaling_experiment(cloud, test_function_1d(fn), x, t_ladder, alpha, kind);
      },
      py::arg("cloud"), py::arg("fn"), py::arg("x"), py::arg("t_ladder"), py::arg("alpha") = 0.0,
      py::arg("kind") = LaplacianKind::RandomWalk);
  m.def(
      "boundary_ratio",
      [](const PointCloud& cloud, const std::string& fn, double alpha, double t) {
        return boundary_ratio(cloud, test_function_1d(fn), alpha, t);
      },
      py::arg("cloud"), py::arg("fn"), py::arg("alpha"), py::arg("t"));

  py::class_<BoundaryReport>(m, "BoundaryReport")
      .def_readonly("band", &BoundaryReport::band)
      .def_readonly("xs", &BoundaryReport::xs)
      .def_readonly("estimate", &BoundaryReport::estimate)
      .def_readonly("target", &BoundaryReport::target)
      .def_readonly("fit", &BoundaryReport::fit)
      .def_readonly("mse_raw", &BoundaryReport::mse_raw)
      .def_readonly("mse_scaled", &BoundaryReport::mse_scaled);
  m.def("halfsphere_boundary_experiment", &halfsphere_boundary_experiment, py::arg("n"),
        py::arg("t"), py::arg("band_width") = 0.05, py::arg("seed") = 0);

  py::class_<CoefficientRow>(m, "CoefficientRow")
      .def_readonly("t", &CoefficientRow::t)
      .def_readonly("coefficient", &CoefficientRow::coefficient);
  py::class_<CoefficientReport>(m, "CoefficientReport")
      .def_readonly("fn", &CoefficientReport::fn)
      .def_readonly("alpha", &CoefficientReport::alpha)
      .def_readonly("rows", &CoefficientReport::rows)
      .def_readonly("max_coefficient", &CoefficientReport::max_coefficient)
      .def_readonly("theory", &CoefficientReport::theory);
  m.def(
      "quadform_experiment",
      [](int n, double alpha, const std::string& fn, const std::vector<double>& t_grid) {
        return quadform_experiment(n, alpha, test_function_1d(fn), t_grid);
      },
      py::arg("n"), py::arg("alpha"), py::arg("fn"), py::arg("t_grid"));
  m.def("quadform_table", &quadform_table, py::arg("n"), py::arg("alphas"), py::arg("t_grid"));

  py::class_<EigenBoundaryCheck>(m, "EigenBoundaryCheck")
      .def_readonly("index", &EigenBoundaryCheck::index)
      .def_readonly("band_slope_left", &EigenBoundaryCheck::band_slope_left)
      .def_readonly("band_slope_right", &EigenBoundaryCheck::band_slope_right)
      .def_readonly("max_interior_slope", &EigenBoundaryCheck::max_interior_slope)
      .def_readonly("ratio", &EigenBoundaryCheck::ratio);
  py::class_<EigenReport>(m, "EigenReport")
      .def_readonly("xs", &EigenReport::xs)
      .def_readonly("degree", &EigenReport::degree)
      .def_readonly("eigenvalues", &EigenReport::eigenvalues)
      .def_readonly("phi", &EigenReport::phi)
      .def_readonly("psi", &EigenReport::psi)
      .def_readonly("checks", &EigenReport::checks)
      .def_readonly("conjugation_max_dev", &EigenReport::conjugation_max_dev);
  m.def("eigenfunction_experiment", &eigenfunction_experiment, py::arg("density"), py::arg("n"),
        py::arg("alpha"), py::arg("t"), py::arg("scheme") = GraphScheme::full_gaussian(),
        py::arg("kind") = LaplacianKind::RandomWalk, py::arg("k_eigs") = 5, py::arg("seed") = 0);

  py::class_<KernelReport>(m, "KernelReport")
      .def_readonly("x0", &KernelReport::x0)
      .def_readonly("x0_index", &KernelReport::x0_index)
      .def_readonly("xs", &KernelReport::xs)
      .def_readonly("k_series", &KernelReport::k_series)
      .def_readonly("k_closed", &KernelReport::k_closed)
      .def_readonly("k_pinv", &KernelReport::k_pinv)
      .def_readonly("k_prime", &KernelReport::k_prime)
      .def_readonly("scale", &KernelReport::scale)
      .def_readonly("rel_discrepancy", &KernelReport::rel_discrepancy)
      .def_readonly("max_series_vs_closed", &KernelReport::max_series_vs_closed)
      .def_readonly("max_series_vs_prime", &KernelReport::max_series_vs_prime);
  m.def("kernel_experiment", &kernel_experiment, py::arg("n"), py::arg("t"), py::arg("alpha"),
        py::arg("x0"), py::arg("k_max"), py::arg("null_tol") = 1e-9);

  py::class_<FdReport>(m, "FdReport")
      .def_readonly("fd", &FdReport::fd)
      .def_readonly("graph", &FdReport::graph)
      .def_readonly("max_abs_difference", &FdReport::max_abs_difference);
  m.def("fd_equivalence", &fd_equivalence, py::arg("nx"), py::arg("ny") = 1);

  py::class_<ConcentrationRow>(m, "ConcentrationRow")
      .def_readonly("n", &ConcentrationRow::n)
      .def_readonly("t", &ConcentrationRow::t)
      .def_readonly("std_dev", &ConcentrationRow::std_dev);
  py::class_<ConcentrationReport>(m, "ConcentrationReport")
      .def_readonly("rows", &ConcentrationReport::rows)
      .def_readonly("fit", &ConcentrationReport::fit);
  m.def("default_concentration_t", &default_concentration_t, py::arg("n"), py::arg("d") = 1);
  m.def(
      "concentration_experiment",
      [](const std::vector<int>& n_list, int reps, double t, const std::string& fn, double x,
         std::uint64_t seed) {
        // t <= 0 selects the default bandwidth rule, as in the CLI
        auto rule = [t](int n) { return t > 0.0 ? t : default_concentration_t(n, 1); };
        return concentration_experiment(n_list, reps, rule, test_function_1d(fn), x, seed);
      },
      py::arg("n_list"), py::arg("reps"), py::arg("t"), py::arg("fn") = "x2",
      py::arg("x") = 0.5, py::arg("seed") = 0);
}
