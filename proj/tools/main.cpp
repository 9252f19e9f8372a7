#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manilap/csv.hpp"
#include "manilap/experiments.hpp"
#include "manilap/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace manilap;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_double_list(s)) {
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw std::invalid_argument("non-integer in list '" + s + "'");
    out.push_back(i);
  }
  return out;
}

// either "log:<start>:<end>:<count>" (geometric) or a comma list of values
std::vector<double> parse_t_grid(const std::string& s) {
  std::vector<double> out;
  if (s.rfind("log:", 0) == 0) {
    auto parts = split(s, ':');
    if (parts.size() != 4)
      throw std::invalid_argument("bandwidth grid: want log:<start>:<end>:<count>");
    const double start = std::stod(parts[1]);
    const double end = std::stod(parts[2]);
    const int count = std::stoi(parts[3]);
    if (start <= 0.0 || end <= 0.0)
      throw std::invalid_argument("bandwidth grid endpoints must be positive");
    if (count < 1) throw std::invalid_argument("bandwidth grid needs count >= 1");
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i)
      out.push_back(start * std::pow(end / start, static_cast<double>(i) / (count - 1)));
    return out;
  }
  out = parse_double_list(s);
  for (double t : out)
    if (t <= 0.0) throw std::invalid_argument("bandwidths must be positive");
  if (out.empty()) throw std::invalid_argument("empty bandwidth grid");
  return out;
}

LaplacianKind parse_kind(const std::string& s) {
  if (s == "r") return LaplacianKind::RandomWalk;
  if (s == "s") return LaplacianKind::SymmetricNormalized;
  if (s == "u") return LaplacianKind::Unnormalized;
  throw std::invalid_argument("unknown Laplacian kind '" + s + "' (want r, s or u)");
}

GraphScheme parse_scheme(const std::string& s) {
  if (s == "full") return GraphScheme::full_gaussian();
  if (s.rfind("eps:", 0) == 0) return GraphScheme::epsilon_nn(std::stod(s.substr(4)));
  if (s.rfind("knn:", 0) == 0) return GraphScheme::symmetric_knn(std::stoi(s.substr(4)));
  throw std::invalid_argument("unknown graph scheme '" + s + "' (want full, eps:<r> or knn:<k>)");
}

// Resolves parameters from an optional JSON config (explicit flags win),
// rejects unknown keys, and echoes the final values to <out>/config.json.
class RunConfig {
 public:
  RunConfig(const std::string& command, const std::string& config_path) : command_(command) {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config file '" + config_path + "'");
      in >> loaded_;
      if (!loaded_.is_object()) throw std::invalid_argument("config must be a JSON object");
      if (loaded_.contains("command") &&
          loaded_.at("command").get<std::string>() != command_)
        throw std::invalid_argument("config file is for command '" +
                                    loaded_.at("command").get<std::string>() + "'");
    }
  }

  template <class T>
  void bind(const std::string& key, const CLI::Option* opt, T& var) {
    allowed_.insert(key);
    if (loaded_.is_object() && loaded_.contains(key) && (!opt || opt->count() == 0))
      var = loaded_.at(key).get<T>();
    fill_.push_back([this, key, &var] { echo_[key] = var; });
  }

  void validate() const {
    if (!loaded_.is_object()) return;
    for (const auto& item : loaded_.items())
      if (item.key() != "command" && !allowed_.count(item.key()))
        throw std::invalid_argument("unknown config key '" + item.key() + "'");
  }

  void write(const fs::path& out_dir) {
    echo_["command"] = command_;
    for (auto& f : fill_) f();
    std::ofstream os(out_dir / "config.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write config.json");
    os << echo_.dump(2) << "\n";
  }

 private:
  std::string command_;
  json loaded_;
  json echo_;
  std::set<std::string> allowed_;
  std::vector<std::function<void()>> fill_;
};

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& p) : os_(p, std::ios::binary) {
    if (!os_) throw std::runtime_error("cannot write " + p.string());
  }
  void row(const std::vector<std::string>& cells) { write_csv_line(os_, cells); }

 private:
  std::ofstream os_;
};

std::string fd(double v) { return format_double(v); }

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out = "out";
  bool svg = false;
  std::string config;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* svg_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  c.seed_opt = cmd->add_option("--seed", c.seed, "random seed");
  c.out_opt = cmd->add_option("--out", c.out, "output directory");
  c.svg_opt = cmd->add_flag("--svg", c.svg, "write an SVG plot next to the CSV");
  cmd->add_option("--config", c.config, "JSON config supplying defaults; explicit flags win");
}

fs::path prepare_out(RunConfig& rc, CommonOpts& common) {
  rc.bind("seed", common.seed_opt, common.seed);
  rc.bind("out", common.out_opt, common.out);
  rc.bind("svg", common.svg_opt, common.svg);
  return fs::path(common.out);
}

// ---------------------------------------------------------------- constants

struct ConstantsOpts {
  CommonOpts common;
  int dim = 1;
  long mc_samples = 1000000;
  CLI::Option *dim_opt = nullptr, *mc_opt = nullptr;
};

int run_constants(ConstantsOpts& o) {
  RunConfig rc("constants", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("dim", o.dim_opt, o.dim);
  rc.bind("mc_samples", o.mc_opt, o.mc_samples);
  rc.validate();

  Rng rng(o.common.seed);
  auto rows = constants_mc_check(o.dim, o.mc_samples, rng);

  fs::create_directories(out);
  CsvWriter csv(out / "constants.csv");
  csv.row({"name", "closed_form", "mc_estimate", "mc_std_error"});
  for (const auto& r : rows)
    csv.row({r.name, fd(r.closed_form), fd(r.mc_estimate), fd(r.mc_std_error)});
  rc.write(out);

  if (o.common.svg) {
    SvgSeries closed{{1, 2, 3, 4}, {}, "closed form", false, true};
    SvgSeries mc{{1, 2, 3, 4}, {}, "monte carlo", true, false};
    for (const auto& r : rows) {
      closed.ys.push_back(r.closed_form);
      mc.ys.push_back(r.mc_estimate);
    }
    write_svg_plot((out / "constants.svg").string(), {closed, mc},
                   "kernel constants, d=" + std::to_string(o.dim));
  }
  return 0;
}

// ------------------------------------------------------------------ scaling

struct ScalingOpts {
  CommonOpts common;
  std::string domain = "interval";
  double a = 1.0, b = 2.0;
  int n = 1000;
  std::string func = "x3";
  double alpha = 0.0;
  std::string kind = "r";
  std::string t_list = "log:1e-3:1e-6:7";
  double point = 2.0;
  CLI::Option *domain_opt = nullptr, *a_opt = nullptr, *b_opt = nullptr, *n_opt = nullptr,
              *func_opt = nullptr, *alpha_opt = nullptr, *kind_opt = nullptr,
              *t_opt = nullptr, *point_opt = nullptr;
};

int run_scaling(ScalingOpts& o) {
  RunConfig rc("scaling", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("domain", o.domain_opt, o.domain);
  rc.bind("a", o.a_opt, o.a);
  rc.bind("b", o.b_opt, o.b);
  rc.bind("n", o.n_opt, o.n);
  rc.bind("func", o.func_opt, o.func);
  rc.bind("alpha", o.alpha_opt, o.alpha);
  rc.bind("kind", o.kind_opt, o.kind);
  rc.bind("t_list", o.t_opt, o.t_list);
  rc.bind("point", o.point_opt, o.point);
  rc.validate();

  if (o.domain != "interval")
    throw std::invalid_argument("scaling: only the interval domain is supported");
  if (o.point < o.a || o.point > o.b)
    throw std::invalid_argument("scaling: point must lie in [a,b]");
  auto m = Manifold::interval(o.a, o.b);
  auto cloud = sample(m, Density::uniform(m), o.n, SampleMode::Equispaced, o.common.seed);
  Eigen::VectorXd x(1);
  x << o.point;
  auto rep = scaling_experiment(cloud, test_function_1d(o.func), x, parse_t_grid(o.t_list),
                                o.alpha, parse_kind(o.kind));

  fs::create_directories(out);
  CsvWriter csv(out / "scaling.csv");
  csv.row({"row_kind", "t", "value", "flagged", "slope", "intercept", "r_squared"});
  for (const auto& r : rep.rungs)
    csv.row({"rung", fd(r.t), fd(r.value), r.flagged ? "1" : "0", "", "", ""});
  csv.row({"fit", "", "", "", fd(rep.fit.slope), fd(rep.fit.intercept),
           fd(rep.fit.r_squared)});
  rc.write(out);

  if (o.common.svg) {
    SvgSeries used{{}, {}, "|value|", true, true}, skip{{}, {}, "flagged", true, false};
    for (const auto& r : rep.rungs) {
      if (r.value == 0.0) continue;
      (r.flagged ? skip : used).xs.push_back(r.t);
      (r.flagged ? skip : used).ys.push_back(std::abs(r.value));
    }
    write_svg_plot((out / "scaling.svg").string(), {used, skip},
                   "scaled Laplacian vs bandwidth at x=" + fd(o.point), true, true);
  }
  return 0;
}

// ----------------------------------------------------- boundary-halfsphere

struct HalfsphereOpts {
  CommonOpts common;
  int n = 2000;
  double t = 0.25;
  double band = 0.05;
  std::string n_list, t_list;  // table mode when either is set
  CLI::Option *n_opt = nullptr, *t_opt = nullptr, *band_opt = nullptr, *nl_opt = nullptr,
              *tl_opt = nullptr;
};

int run_halfsphere(HalfsphereOpts& o) {
  RunConfig rc("boundary-halfsphere", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("n", o.n_opt, o.n);
  rc.bind("t", o.t_opt, o.t);
  rc.bind("band", o.band_opt, o.band);
  rc.bind("n_list", o.nl_opt, o.n_list);
  rc.bind("t_list", o.tl_opt, o.t_list);
  rc.validate();

  fs::create_directories(out);
  CsvWriter csv(out / "boundary-halfsphere.csv");
  csv.row({"row_kind", "n", "t", "x", "estimate", "target", "slope", "intercept",
           "r_squared", "mse_raw", "mse_scaled"});

  const bool table_mode = !o.n_list.empty() || !o.t_list.empty();
  if (table_mode) {
    auto ns = o.n_list.empty() ? std::vector<int>{o.n} : parse_int_list(o.n_list);
    auto ts = o.t_list.empty() ? std::vector<double>{o.t} : parse_t_grid(o.t_list);
    std::vector<SvgSeries> series;
    std::uint64_t cell = 0;
    for (int n : ns) {
      SvgSeries s{{}, {}, "n=" + std::to_string(n), true, true};
      for (double t : ts) {
        auto rep = halfsphere_boundary_experiment(n, t, o.band, o.common.seed + cell++);
        double mse = std::min(rep.mse_raw, rep.mse_scaled);
        csv.row({"cell", std::to_string(n), fd(t), "", "", "", fd(rep.fit.slope),
                 fd(rep.fit.intercept), fd(rep.fit.r_squared), fd(rep.mse_raw),
                 fd(rep.mse_scaled)});
        s.xs.push_back(t);
        s.ys.push_back(mse);
      }
      series.push_back(std::move(s));
    }
    rc.write(out);
    if (o.common.svg)
      write_svg_plot((out / "boundary-halfsphere.svg").string(), series,
                     "band MSE vs bandwidth", true, true);
    return 0;
  }

  auto rep = halfsphere_boundary_experiment(o.n, o.t, o.band, o.common.seed);
  for (Eigen::Index k = 0; k < rep.xs.size(); ++k)
    csv.row({"point", "", "", fd(rep.xs[k]), fd(rep.estimate[k]), fd(rep.target[k]), "", "",
             "", "", ""});
  csv.row({"summary", std::to_string(o.n), fd(o.t), "", "", "", fd(rep.fit.slope),
           fd(rep.fit.intercept), fd(rep.fit.r_squared), fd(rep.mse_raw),
           fd(rep.mse_scaled)});
  rc.write(out);

  if (o.common.svg) {
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index k = 0; k < rep.xs.size(); ++k) pts.emplace_back(rep.xs[k], rep.target[k]);
    std::sort(pts.begin(), pts.end());
    SvgSeries est{{}, {}, "(1/sqrt t) L^r f", true, false};
    SvgSeries tgt{{}, {}, "-x", false, true};
    for (Eigen::Index k = 0; k < rep.xs.size(); ++k) {
      est.xs.push_back(rep.xs[k]);
      est.ys.push_back(rep.estimate[k]);
    }
    for (auto& [x, y] : pts) {
      tgt.xs.push_back(x);
      tgt.ys.push_back(y);
    }
    write_svg_plot((out / "boundary-halfsphere.svg").string(), {est, tgt},
                   "equator band, n=" + std::to_string(o.n));
  }
  return 0;
}

// ----------------------------------------------------------------- quadform

struct QuadformOpts {
  CommonOpts common;
  int n = 1001;
  std::string alpha = "0";
  std::string funcs = "all";
  std::string t_grid = "log:1:1e-7:29";
  CLI::Option *n_opt = nullptr, *alpha_opt = nullptr, *funcs_opt = nullptr, *t_opt = nullptr;
};

int run_quadform(QuadformOpts& o) {
  RunConfig rc("quadform", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("n", o.n_opt, o.n);
  rc.bind("alpha", o.alpha_opt, o.alpha);
  rc.bind("funcs", o.funcs_opt, o.funcs);
  rc.bind("t_grid", o.t_opt, o.t_grid);
  rc.validate();

  auto alphas = parse_double_list(o.alpha);
  auto grid = parse_t_grid(o.t_grid);
  std::vector<CoefficientReport> reports;
  if (o.funcs == "all") {
    reports = quadform_table(o.n, alphas, grid);
  } else {
    for (double a : alphas)
      for (const auto& name : split(o.funcs, ','))
        reports.push_back(quadform_experiment(o.n, a, test_function_1d(name), grid));
  }

  fs::create_directories(out);
  CsvWriter csv(out / "quadform.csv");
  csv.row({"row_kind", "func", "alpha", "t", "coefficient", "theory"});
  for (const auto& rep : reports)
    for (const auto& r : rep.rows)
      csv.row({"cell", rep.fn, fd(rep.alpha), fd(r.t), fd(r.coefficient), ""});
  for (const auto& rep : reports)
    csv.row({"max", rep.fn, fd(rep.alpha), "", fd(rep.max_coefficient), fd(rep.theory)});
  rc.write(out);

  if (o.common.svg) {
    std::vector<SvgSeries> series;
    for (const auto& rep : reports) {
      SvgSeries s{{}, {}, rep.fn + " a=" + fd(rep.alpha), false, true};
      for (const auto& r : rep.rows) {
        s.xs.push_back(r.t);
        s.ys.push_back(r.coefficient);
      }
      series.push_back(std::move(s));
    }
    write_svg_plot((out / "quadform.svg").string(), series, "regularizer coefficient vs t",
                   true, false);
  }
  return 0;
}

// -------------------------------------------------------------------- eigen

struct EigenOpts {
  CommonOpts common;
  std::string density = "uniform";
  int n = 1000;
  double alpha = 0.5;
  double t = 1e-4;
  std::string kind = "r";
  std::string graph = "full";
  int k_eigs = 5;
  CLI::Option *density_opt = nullptr, *n_opt = nullptr, *alpha_opt = nullptr, *t_opt = nullptr,
              *kind_opt = nullptr, *graph_opt = nullptr, *k_opt = nullptr;
};

int run_eigen(EigenOpts& o) {
  RunConfig rc("eigen", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("density", o.density_opt, o.density);
  rc.bind("n", o.n_opt, o.n);
  rc.bind("alpha", o.alpha_opt, o.alpha);
  rc.bind("t", o.t_opt, o.t);
  rc.bind("kind", o.kind_opt, o.kind);
  rc.bind("graph", o.graph_opt, o.graph);
  rc.bind("k_eigs", o.k_opt, o.k_eigs);
  rc.validate();

  Density density;
  if (o.density == "uniform") {
    density = Density::uniform(Manifold::interval(0.0, 1.0));
  } else if (o.density == "gauss2") {
    density = Density::gaussian_mixture();
  } else {
    throw std::invalid_argument("unknown density '" + o.density + "' (want uniform or gauss2)");
  }
  auto rep = eigenfunction_experiment(density, o.n, o.alpha, o.t, parse_scheme(o.graph),
                                      parse_kind(o.kind), o.k_eigs, o.common.seed);

  fs::create_directories(out);
  CsvWriter csv(out / "eigen.csv");
  csv.row({"row_kind", "eig", "i", "x", "degree", "lambda", "phi", "psi", "band_slope_left",
           "band_slope_right", "max_interior_slope", "ratio", "conjugation_max_dev"});
  for (int c = 0; c < o.k_eigs; ++c)
    csv.row({"eigenvalue", std::to_string(c), "", "", "", fd(rep.eigenvalues[c]), "", "", "",
             "", "", "", ""});
  for (Eigen::Index i = 0; i < rep.xs.size(); ++i)
    csv.row({"sample", "", std::to_string(i), fd(rep.xs[i]), fd(rep.degree[i]), "", "", "", "",
             "", "", "", ""});
  for (int c = 0; c < o.k_eigs; ++c)
    for (Eigen::Index i = 0; i < rep.xs.size(); ++i)
      csv.row({"component", std::to_string(c), std::to_string(i), fd(rep.xs[i]), "", "",
               fd(rep.phi(i, c)), fd(rep.psi(i, c)), "", "", "", "", ""});
  for (const auto& chk : rep.checks)
    csv.row({"check", std::to_string(chk.index), "", "", "", "", "", "",
             fd(chk.band_slope_left), fd(chk.band_slope_right), fd(chk.max_interior_slope),
             fd(chk.ratio), ""});
  csv.row({"conjugation", "", "", "", "", "", "", "", "", "", "", "",
           fd(rep.conjugation_max_dev)});
  rc.write(out);

  if (o.common.svg) {
    std::vector<SvgSeries> series;
    for (int c = 0; c < o.k_eigs; ++c) {
      SvgSeries s{{}, {}, "phi_" + std::to_string(c + 1), false, true};
      for (Eigen::Index i = 0; i < rep.xs.size(); ++i) {
        s.xs.push_back(rep.xs[i]);
        s.ys.push_back(rep.phi(i, c));
      }
      series.push_back(std::move(s));
    }
    write_svg_plot((out / "eigen.svg").string(), series,
                   "eigenvectors, " + o.density + " density");
  }
  return 0;
}

// ------------------------------------------------------------------- kernel

struct KernelOpts {
  CommonOpts common;
  int n = 401;
  double t = 1e-4;
  double x0 = 0.25;
  int kmax = 10000;
  CLI::Option *n_opt = nullptr, *t_opt = nullptr, *x0_opt = nullptr, *kmax_opt = nullptr;
};

int run_kernel(KernelOpts& o) {
  RunConfig rc("kernel", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("n", o.n_opt, o.n);
  rc.bind("t", o.t_opt, o.t);
  rc.bind("x0", o.x0_opt, o.x0);
  rc.bind("kmax", o.kmax_opt, o.kmax);
  rc.validate();

  auto rep = kernel_experiment(o.n, o.t, 0.0, o.x0, o.kmax);

  fs::create_directories(out);
  CsvWriter csv(out / "kernel.csv");
  csv.row({"row_kind", "x", "k_series", "k_closed", "k_pinv", "k_prime", "scale",
           "rel_discrepancy", "max_series_vs_closed", "max_series_vs_prime"});
  for (Eigen::Index i = 0; i < rep.xs.size(); ++i)
    csv.row({"point", fd(rep.xs[i]), fd(rep.k_series[i]), fd(rep.k_closed[i]),
             fd(rep.k_pinv[i]), fd(rep.k_prime[i]), "", "", "", ""});
  csv.row({"summary", "", "", "", "", "", fd(rep.scale), fd(rep.rel_discrepancy),
           fd(rep.max_series_vs_closed), fd(rep.max_series_vs_prime)});
  rc.write(out);

  if (o.common.svg) {
    auto mk = [&](const Vector& v, const std::string& label, bool markers) {
      SvgSeries s{{}, {}, label, markers, !markers};
      for (Eigen::Index i = 0; i < rep.xs.size(); ++i) {
        s.xs.push_back(rep.xs[i]);
        s.ys.push_back(v[i]);
      }
      return s;
    };
    write_svg_plot((out / "kernel.svg").string(),
                   {mk(rep.k_series, "series", false), mk(rep.k_closed, "closed form", false),
                    mk(rep.k_prime, "K'", false),
                    mk((rep.k_pinv / rep.scale).eval(), "pinv/scale", true)},
                   "kernels at x0=" + fd(rep.x0));
  }
  return 0;
}

// ------------------------------------------------------------------- fdgrid

struct FdOpts {
  CommonOpts common;
  int nx = 3, ny = 3;
  CLI::Option *nx_opt = nullptr, *ny_opt = nullptr;
};

int run_fdgrid(FdOpts& o) {
  RunConfig rc("fdgrid", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("nx", o.nx_opt, o.nx);
  rc.bind("ny", o.ny_opt, o.ny);
  rc.validate();

  auto rep = fd_equivalence(o.nx, o.ny);

  fs::create_directories(out);
  CsvWriter csv(out / "fdgrid.csv");
  csv.row({"nx", "ny", "max_abs_difference"});
  csv.row({std::to_string(o.nx), std::to_string(o.ny), fd(rep.max_abs_difference)});
  rc.write(out);

  if (o.common.svg) {
    SvgSeries a{{}, {}, "fd diagonal", false, true}, b{{}, {}, "graph diagonal", true, false};
    for (Eigen::Index i = 0; i < rep.fd.rows(); ++i) {
      a.xs.push_back(static_cast<double>(i));
      a.ys.push_back(rep.fd(i, i));
      b.xs.push_back(static_cast<double>(i));
      b.ys.push_back(rep.graph(i, i));
    }
    write_svg_plot((out / "fdgrid.svg").string(), {a, b}, "stencil diagonals");
  }
  return 0;
}

// ------------------------------------------------------------ concentration

struct ConcentrationOpts {
  CommonOpts common;
  std::string n_list = "250,500,1000,2000";
  int reps = 50;
  double t = 0.0;  // 0 means the n^{-1/(d+3)} rule
  std::string func = "x2";
  double point = 0.5;
  CLI::Option *nl_opt = nullptr, *reps_opt = nullptr, *t_opt = nullptr, *func_opt = nullptr,
              *point_opt = nullptr;
};

int run_concentration(ConcentrationOpts& o) {
  RunConfig rc("concentration", o.common.config);
  fs::path out = prepare_out(rc, o.common);
  rc.bind("n_list", o.nl_opt, o.n_list);
  rc.bind("reps", o.reps_opt, o.reps);
  rc.bind("t", o.t_opt, o.t);
  rc.bind("func", o.func_opt, o.func);
  rc.bind("point", o.point_opt, o.point);
  rc.validate();

  std::function<double(int)> rule;
  if (o.t > 0.0)
    rule = [t = o.t](int) { return t; };
  else
    rule = [](int n) { return default_concentration_t(n, 1); };
  auto rep = concentration_experiment(parse_int_list(o.n_list), o.reps, rule,
                                      test_function_1d(o.func), o.point, o.common.seed);

  fs::create_directories(out);
  CsvWriter csv(out / "concentration.csv");
  csv.row({"row_kind", "n", "t", "std_dev", "slope", "intercept", "r_squared"});
  for (const auto& r : rep.rows)
    csv.row({"row", std::to_string(r.n), fd(r.t), fd(r.std_dev), "", "", ""});
  csv.row({"fit", "", "", "", fd(rep.fit.slope), fd(rep.fit.intercept),
           fd(rep.fit.r_squared)});
  rc.write(out);

  if (o.common.svg) {
    SvgSeries s{{}, {}, "std", true, true};
    for (const auto& r : rep.rows) {
      s.xs.push_back(static_cast<double>(r.n));
      s.ys.push_back(r.std_dev);
    }
    write_svg_plot((out / "concentration.svg").string(), {s}, "fluctuation vs sample size",
                   true, true);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for alpha-normalized graph Laplacians"};
  app.require_subcommand(1);

  ConstantsOpts co;
  auto* c_cmd = app.add_subcommand("constants", "kernel constants and their MC estimates");
  add_common(c_cmd, co.common);
  co.dim_opt = c_cmd->add_option("--dim", co.dim, "ambient dimension");
  co.mc_opt = c_cmd->add_option("--mc-samples", co.mc_samples, "Monte-Carlo sample count");

  ScalingOpts so;
  auto* s_cmd = app.add_subcommand("scaling", "bandwidth scaling of the pointwise Laplacian");
  add_common(s_cmd, so.common);
  so.domain_opt = s_cmd->add_option("--domain", so.domain, "domain (interval)");
  so.a_opt = s_cmd->add_option("--a", so.a, "interval left end");
  so.b_opt = s_cmd->add_option("--b", so.b, "interval right end");
  so.n_opt = s_cmd->add_option("--n", so.n, "sample count");
  so.func_opt = s_cmd->add_option("--func", so.func, "catalogue function");
  so.alpha_opt = s_cmd->add_option("--alpha", so.alpha, "normalization exponent");
  so.kind_opt = s_cmd->add_option("--kind", so.kind, "laplacian kind: r, s or u");
  so.t_opt = s_cmd->add_option("--t-list", so.t_list, "bandwidth ladder");
  so.point_opt = s_cmd->add_option("--point", so.point, "evaluation point");

  HalfsphereOpts ho;
  auto* h_cmd = app.add_subcommand("boundary-halfsphere",
                                   "normal-derivative estimate on the half-sphere equator");
  add_common(h_cmd, ho.common);
  ho.n_opt = h_cmd->add_option("--n", ho.n, "sample count");
  ho.t_opt = h_cmd->add_option("--t", ho.t, "bandwidth");
  ho.band_opt = h_cmd->add_option("--band", ho.band, "band width above the equator");
  ho.nl_opt = h_cmd->add_option("--n-list", ho.n_list, "table mode: sample counts");
  ho.tl_opt = h_cmd->add_option("--t-list", ho.t_list, "table mode: bandwidths");

  QuadformOpts qo;
  auto* q_cmd = app.add_subcommand("quadform", "quadratic-form regularizer coefficient");
  add_common(q_cmd, qo.common);
  qo.n_opt = q_cmd->add_option("--n", qo.n, "sample count");
  qo.alpha_opt = q_cmd->add_option("--alpha", qo.alpha, "comma list of alphas");
  qo.funcs_opt = q_cmd->add_option("--funcs", qo.funcs, "'all' or comma list of functions");
  qo.t_opt = q_cmd->add_option("--t-grid", qo.t_grid, "bandwidth grid");

  EigenOpts eo;
  auto* e_cmd = app.add_subcommand("eigen", "eigenvector study with Neumann band checks");
  add_common(e_cmd, eo.common);
  eo.density_opt = e_cmd->add_option("--density", eo.density, "uniform or gauss2");
  eo.n_opt = e_cmd->add_option("--n", eo.n, "sample count");
  eo.alpha_opt = e_cmd->add_option("--alpha", eo.alpha, "normalization exponent");
  eo.t_opt = e_cmd->add_option("--t", eo.t, "bandwidth");
  eo.kind_opt = e_cmd->add_option("--kind", eo.kind, "laplacian kind: r or s");
  eo.graph_opt = e_cmd->add_option("--graph", eo.graph, "full, eps:<r> or knn:<k>");
  eo.k_opt = e_cmd->add_option("--k-eigs", eo.k_eigs, "number of eigenpairs");

  KernelOpts ko;
  auto* k_cmd = app.add_subcommand("kernel", "reproducing-kernel comparison on [0,1]");
  add_common(k_cmd, ko.common);
  ko.n_opt = k_cmd->add_option("--n", ko.n, "sample count");
  ko.t_opt = k_cmd->add_option("--t", ko.t, "bandwidth");
  ko.x0_opt = k_cmd->add_option("--x0", ko.x0, "evaluation point (must be a sample)");
  ko.kmax_opt = k_cmd->add_option("--kmax", ko.kmax, "series truncation order");

  FdOpts fo;
  auto* f_cmd = app.add_subcommand("fdgrid", "finite-difference Neumann grid equivalence");
  add_common(f_cmd, fo.common);
  fo.nx_opt = f_cmd->add_option("--nx", fo.nx, "grid points along x");
  fo.ny_opt = f_cmd->add_option("--ny", fo.ny, "grid points along y (1 for a chain)");

  ConcentrationOpts no;
  auto* n_cmd = app.add_subcommand("concentration", "fluctuation decay across sample sizes");
  add_common(n_cmd, no.common);
  no.nl_opt = n_cmd->add_option("--n-list", no.n_list, "comma list of sample counts");
  no.reps_opt = n_cmd->add_option("--reps", no.reps, "repetitions per sample count");
  no.t_opt = n_cmd->add_option("--t", no.t, "fixed bandwidth (0: n^{-1/(d+3)} rule)");
  no.func_opt = n_cmd->add_option("--func", no.func, "catalogue function");
  no.point_opt = n_cmd->add_option("--point", no.point, "evaluation point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_cmd->parsed()) return run_constants(co);
    if (s_cmd->parsed()) return run_scaling(so);
    if (h_cmd->parsed()) return run_halfsphere(ho);
    if (q_cmd->parsed()) return run_quadform(qo);
    if (e_cmd->parsed()) return run_eigen(eo);
    if (k_cmd->parsed()) return run_kernel(ko);
    if (f_cmd->parsed()) return run_fdgrid(fo);
    if (n_cmd->parsed()) return run_concentration(no);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
