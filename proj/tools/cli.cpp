#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <ostream>

#include "shortlab/arith.hpp"
#include "shortlab/errors.hpp"
#include "shortlab/form_factor.hpp"
#include "shortlab/geodesics.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/rmt.hpp"
#include "shortlab/table.hpp"
#include "shortlab/wp_integrals.hpp"
#include "shortlab/zeros.hpp"

namespace shortlab::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string output_dir = "out";
  std::string cache_dir = "cache";
  std::uint64_t seed = 0;
  std::string format = "csv";
  unsigned threads = 0;
  std::string config;
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<std::string> required;
  std::function<void()> run;
};

std::string fmt(double v) { return format_double(v); }

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << body) || !f.flush()) throw ResourceError("cannot write " + path.string());
}

class Session {
 public:
  Session(const Common& common, std::ostream& out) : common_(common), out_(out) {}

  void emit(const std::string& stem, const Table& table) const {
    fs::create_directories(common_.output_dir);
    write_file(fs::path(common_.output_dir) / (stem + ".csv"), table.to_csv());
    if (common_.format == "json")
      write_file(fs::path(common_.output_dir) / (stem + ".json"), table.to_json() + "\n");
  }
  std::ostream& out() const { return out_; }
  const Common& common() const { return common_; }

 private:
  const Common& common_;
  std::ostream& out_;
};

std::uint64_t as_count(double v, const std::string& flag) {
  if (!(v >= 1) || v != std::floor(v) || v > 1e15)
    throw ParameterError("--" + flag + " must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

std::string series_label_for_degree(int degree) {
  if (degree == 1) return "zeta";
  if (degree == 2) return "delta";
  throw ParameterError("no built-in coefficient series of degree " + std::to_string(degree));
}

// JSON value for one option, for run.json.
ordered_json option_value(const CLI::Option* opt) {
  auto scalar = [](const std::string& s) -> ordered_json {
    if (s == "true") return true;
    if (s == "false") return false;
    const auto* end = s.data() + s.size();
    std::int64_t i;
    if (auto [p, ec] = std::from_chars(s.data(), end, i); ec == std::errc() && p == end) return i;
    double v;
    if (auto [p, ec] = std::from_chars(s.data(), end, v); ec == std::errc() && p == end) return v;
    return s;
  };
  std::vector<std::string> values;
  if (opt->count() > 0)
    values = opt->results();
  else if (!opt->get_default_str().empty())
    values = {opt->get_default_str()};
  if (opt->get_type_size_max() > 1 || opt->get_expected_max() > 1) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : values) {
      // CLI11 keeps vector defaults as "[a,b,...]".
      if (v.size() > 1 && v.front() == '[' && v.back() == ']') {
        std::string inner = v.substr(1, v.size() - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
          const auto comma = inner.find(',', start);
          const auto piece = inner.substr(start, comma - start);
          if (!piece.empty()) arr.push_back(scalar(piece));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      } else {
        arr.push_back(scalar(v));
      }
    }
    return arr;
  }
  if (values.empty()) return nullptr;
  return scalar(values.back());
}

// Options named in the config file and absent from the command line are
// filled in here, so flags always win.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file " + path);
  ordered_json cfg;
  try {
    cfg = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw FormatError("config file " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw FormatError("config file " + path + " must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr) throw ParameterError("unknown config key '" + key + "'");
    if (key == "config" || opt->count() > 0) continue;
    auto text = [&](const ordered_json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      if (v.is_number()) return v.dump();
      throw FormatError("config key '" + key + "' has an unsupported value");
    };
    try {
      if (value.is_array()) {
        for (const auto& v : value) opt->add_result(text(v));
      } else {
        opt->add_result(text(value));
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ParameterError("config key '" + key + "': " + e.what());
    }
  }
}

void write_run_json(const Common& common, CLI::App* app) {
  ordered_json run;
  run["subcommand"] = app->get_name();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    run[name] = option_value(opt);
  }
  fs::create_directories(common.output_dir);
  write_file(fs::path(common.output_dir) / "run.json", run.dump(2) + "\n");
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--output-dir", c.output_dir, "Directory for CSV/JSON outputs");
  app->add_option("--cache-dir", c.cache_dir, "Directory for coefficient caches");
  app->add_option("--seed", c.seed, "Seed for all randomness");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");
  app->add_option("--config", c.config, "JSON file of option values; flags override it");
}

// ---------------------------------------------------------------------------

struct WpParams {
  double x = 0, H = 0, tail_eps = wp::kDefaultTailEpsilon, genus = 0, genus_c = 1;
};

Table wp_scan_table() {
  return Table({"x", "H", "expectation", "expectation_over_H", "diag", "diag_over_2HlogX",
                "tail_budget"});
}

void run_wp_expect(const Session& s, const WpParams& p) {
  const auto e = wp::wp_expectation(p.x, p.H, p.tail_eps);
  const auto v = wp::wp_diag_variance(p.x, p.H, p.tail_eps);
  Table t = wp_scan_table();
  t.add_row({p.x, p.H, e.value, e.normalized, v.value, v.normalized, e.budget});
  s.emit("wp_scan", t);
  s.out() << "value/H=" << fmt(e.normalized) << " value=" << fmt(e.value)
          << " main=" << fmt(e.main_term) << " tail_budget=" << fmt(e.budget);
  if (p.genus > 0) {
    const auto g = wp::genus_corrected_expectation(p.x, p.H, p.genus, p.genus_c);
    s.out() << " genus_corrected=" << fmt(g.value) << " excess=" << fmt(g.excess);
  }
  s.out() << "\n";
}

void run_wp_variance(const Session& s, const WpParams& p) {
  const auto e = wp::wp_expectation(p.x, p.H, p.tail_eps);
  const auto v = wp::wp_diag_variance(p.x, p.H, p.tail_eps);
  const auto od = wp::wp_offdiag_identity(p.x, p.H);
  Table t = wp_scan_table();
  t.add_row({p.x, p.H, e.value, e.normalized, v.value, v.normalized, v.budget});
  s.emit("wp_scan", t);
  s.out() << "value/(2H log x)=" << fmt(v.normalized) << " value=" << fmt(v.value)
          << " main=" << fmt(v.main_term) << " budget=" << fmt(v.budget)
          << " offdiag_minus_expectation_sq=" << fmt(od.off_diag_limit - od.expectation_squared)
          << "\n";
}

struct PrimeVarianceParams {
  double X = 0, H = 0, step = 1;
  std::string label = "zeta";
};

void run_prime_variance(const Session& s, const PrimeVarianceParams& p) {
  if (!(p.X >= 1) || !(p.H > 0)) throw ParameterError("need X >= 1 and H > 0");
  const auto N = static_cast<std::uint64_t>(std::ceil(p.X + p.H));
  const auto series = arith::load_or_build(s.common().cache_dir, p.label, N);
  const auto r = arith::empirical_variance(series, p.X, p.H, p.step);
  Table t({"x_max", "H", "step", "mean", "variance", "samples"});
  t.add_row({p.X, p.H, r.step, r.mean, r.variance, static_cast<std::int64_t>(r.samples)});
  s.emit("variance", t);
  const double main = p.H * std::log(p.X / p.H);
  const double window = arith::lambda_sq_window_average(series, p.X, p.H);
  s.out() << "variance=" << fmt(r.variance) << " main=H*log(X/H)=" << fmt(main)
          << " ratio=" << fmt(r.variance / main) << " window_avg/(H log X)="
          << fmt(window / (p.H * std::log(p.X))) << " samples=" << r.samples << "\n";
}

struct CoeffsParams {
  std::string label = "zeta";
  double N = 0;
};

void run_coeffs(const Session& s, const CoeffsParams& p) {
  const auto N = as_count(p.N, "N");
  const auto series = arith::load_or_build(s.common().cache_dir, p.label, N);
  Table t({"n", "c"});
  for (std::uint64_t n = 1; n <= N; ++n) t.add_row({static_cast<std::int64_t>(n), series[n]});
  s.emit("coeffs", t);
  s.out() << "label=" << series.label() << " N=" << N << " degree=" << series.degree()
          << " psi(N)=" << fmt(arith::chebyshev_psi(series, static_cast<double>(N))) << "\n";
}

struct ZeroParams {
  std::string zeros;
  int degree = 1;
  double complete_to = 0;
};

struct FormFactorParams {
  ZeroParams z;
  std::vector<double> alpha = default_alpha_grid();
  double T = 0;
  std::string normalization = "density";
  bool smoothed = false;
  double tolerance = zeros::kDefaultSmoothedTolerance;
};

void run_formfactor(const Session& s, const FormFactorParams& p) {
  const auto zs = zeros::load_zeros(p.z.zeros, p.z.degree, p.z.complete_to);
  const double T = p.T > 0 ? p.T : zs.complete_up_to;
  const auto norm = p.normalization == "counted" ? zeros::KNormalization::counted
                                                 : zeros::KNormalization::density;
  const auto curve = zeros::form_factor_curve(zs, p.alpha, T, norm);
  Table t({"alpha", "X", "F", "N_T", "K"});
  for (const auto& pt : curve.points)
    t.add_row({pt.alpha, std::exp(pt.log_X), pt.F, static_cast<std::int64_t>(curve.N_T), pt.K});
  s.emit("formfactor", t);
  if (p.smoothed) {
    Table st({"alpha", "X", "F", "N_T", "K", "relative_diff", "grid_step", "alias_bound",
              "truncation_bound"});
    for (const auto& pt : curve.points) {
      const auto r = zeros::form_factor_smoothed(zs, std::exp(pt.log_X), T, 0, 0, p.tolerance);
      st.add_row({pt.alpha, std::exp(pt.log_X), r.value, static_cast<std::int64_t>(curve.N_T),
                  r.value / curve.normalizer, std::fabs(r.value - pt.F) / std::fabs(pt.F),
                  r.grid_step, r.alias_bound, r.truncation_bound});
    }
    s.emit("formfactor_smoothed", st);
  }
  s.out() << "T=" << fmt(T) << " N_T=" << curve.N_T << " normalizer=" << fmt(curve.normalizer);
  for (const auto& pt : curve.points) s.out() << " K(" << fmt(pt.alpha) << ")=" << fmt(pt.K);
  s.out() << "\n";
}

struct ExplicitParams {
  ZeroParams z;
  double x = 0, sigma = 1.5, N = 1e6;
  std::vector<double> t;
};

void run_explicit(const Session& s, const ExplicitParams& p) {
  const auto zs = zeros::load_zeros(p.z.zeros, p.z.degree, p.z.complete_to);
  const auto N = as_count(p.N, "N");
  const auto series =
      arith::load_or_build(s.common().cache_dir, series_label_for_degree(p.z.degree), N);
  Table tab({"x", "t", "sigma", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_gap", "gap_budget",
             "pole_re", "pole_im", "assertable"});
  double worst = 0;
  for (double t : p.t) {
    const auto r = zeros::explicit_formula_residual(zs, series, p.x, t, p.sigma);
    const double gap = std::abs(r.lhs - r.rhs);
    worst = std::max(worst, gap / r.gap_budget);
    tab.add_row({p.x, t, p.sigma, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), gap,
                 r.gap_budget, r.pole_term.real(), r.pole_term.imag(), r.assertable});
  }
  s.emit("explicit_formula", tab);
  s.out() << "points=" << p.t.size() << " max(gap/budget)=" << fmt(worst)
          << (p.z.degree >= 2 ? "" : " (degree 1: reported only)") << "\n";
}

struct MvParams {
  std::string label = "zeta";
  double x = 0, T = 0, eps = 0, step = 0;
};

void run_mv(const Session& s, const MvParams& p) {
  if (!(p.x >= 1)) throw ParameterError("x must be at least 1");
  // Default tail target: 5% of x log x. At 1% the support outgrows the
  // 2000-term limit already at x = 50.
  const double eps = p.eps > 0 ? p.eps : 5e-2 * p.x * std::max(std::log(p.x), 1.0);
  const auto M = arith::bn_truncation_bound(p.x, p.label == "delta" ? 2 : 1, eps);
  const auto series = arith::load_or_build(s.common().cache_dir, p.label, M);
  const auto w = arith::bn_weights(series, p.x, eps);
  const double step = p.step > 0 ? p.step : zeros::mv_step_limit(w);
  const auto r = zeros::mv_meanvalue_check(w, p.T, step);
  Table t({"x", "T", "integral", "main", "error_bound", "abs_diff", "s0", "s1", "step", "support"});
  t.add_row({p.x, p.T, r.integral, r.main, r.error_bound, std::fabs(r.integral - r.main), r.s0,
             r.s1, r.step, static_cast<std::int64_t>(w.values.size())});
  s.emit("mv_check", t);
  s.out() << "integral=" << fmt(r.integral) << " main=T*S0=" << fmt(r.main)
          << " budget=3*S1=" << fmt(r.error_bound) << " |diff|/budget="
          << fmt(std::fabs(r.integral - r.main) / r.error_bound) << "\n";
}

struct RmtParams {
  std::string kind;
  double n = 0, samples = 0, alpha_max = 0.25, density_scale = rmt::kDefaultDensityScale;
  std::vector<double> alpha = default_alpha_grid();
};

void run_rmt(const Session& s, const RmtParams& p) {
  rmt::EnsembleSpec spec;
  spec.kind = rmt::parse_ensemble(p.kind);
  spec.dimension = as_count(p.n, "n");
  spec.samples = as_count(p.samples, "samples");
  spec.seed = s.common().seed;
  const auto curve = rmt::ensemble_form_factor(spec, p.alpha, p.density_scale);
  Table t({"kind", "n", "samples", "alpha", "K", "stderr"});
  for (const auto& pt : curve.points)
    t.add_row({rmt::to_string(spec.kind), static_cast<std::int64_t>(spec.dimension),
               static_cast<std::int64_t>(spec.samples), pt.alpha, pt.K, pt.stderr_K});
  s.emit("rmt_formfactor", t);
  s.out() << "kind=" << rmt::to_string(spec.kind) << " n=" << spec.dimension
          << " samples=" << spec.samples
          << " slope(alpha<=" << fmt(p.alpha_max) << ")=" << fmt(early_slope(curve, p.alpha_max))
          << "\n";
}

struct GeoParams {
  std::string group;
  double W = 0, lmax = 0, x = 0;
};

void run_geodesics(const Session& s, const GeoParams& p) {
  const auto group = p.group.empty() ? geo::bolza_group() : geo::load_group(p.group);
  const int W = static_cast<int>(as_count(p.W, "W"));
  const auto spec = geo::enumerate_classes(group, W, p.lmax);
  const int gens = static_cast<int>(group.generators.size());
  Table t({"length", "trace", "primitive", "power", "multiplicity", "word"});
  for (const auto& c : spec.classes)
    t.add_row({c.length, c.trace, c.primitive, static_cast<std::int64_t>(c.power),
               static_cast<std::int64_t>(c.multiplicity), geo::format_word(c.word, gens)});
  s.emit("spectrum", t);
  s.out() << "classes=" << spec.classes.size() << " certified=" << (spec.stability_certified ? 1 : 0);
  if (!spec.classes.empty())
    s.out() << " systole=" << fmt(spec.classes.front().length)
            << " multiplicity=" << spec.classes.front().multiplicity;
  if (p.x > 0) {
    s.out() << " psi(" << fmt(p.x) << ")=" << fmt(geo::psi_geodesic(spec, p.x))
            << " pi(" << fmt(p.x) << ")=" << geo::pi_geodesic(spec, p.x);
  }
  s.out() << "\n";
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"shortlab: short-interval statistics for primes, zeros, matrices and geodesics",
               "shortlab"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(0, 1);

  Common common;
  std::map<std::string, Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    add_common(c.app, common);
    return c;
  };

  WpParams wpe, wpv;
  {
    auto& c = add("wp-expect", "Expected geodesic count in a short norm interval");
    c.app->add_option("--x", wpe.x, "Left end of the norm interval");
    c.app->add_option("--H", wpe.H, "Interval length");
    c.app->add_option("--tail-eps", wpe.tail_eps, "Tail budget for the shell sum");
    c.app->add_option("--genus", wpe.genus, "Report the finite-genus correction for this g");
    c.app->add_option("--genus-c", wpe.genus_c, "Constant in the finite-genus correction");
    c.required = {"x", "H"};
    c.run = [&] { run_wp_expect(Session(common, out), wpe); };
  }
  {
    auto& c = add("wp-variance", "Variance of the short-interval geodesic count");
    c.app->add_option("--x", wpv.x, "Left end of the norm interval");
    c.app->add_option("--H", wpv.H, "Interval length");
    c.app->add_option("--tail-eps", wpv.tail_eps, "Tail budget for the shell sums");
    c.required = {"x", "H"};
    c.run = [&] { run_wp_variance(Session(common, out), wpv); };
  }
  PrimeVarianceParams pv;
  {
    auto& c = add("prime-variance", "Empirical variance of psi(x; H) for x <= X");
    c.app->add_option("--X", pv.X, "Upper end of the x range");
    c.app->add_option("--H", pv.H, "Interval length");
    c.app->add_option("--step", pv.step, "Sampling step in x");
    c.app->add_option("--label", pv.label, "Coefficient series")
        ->check(CLI::IsMember({"zeta", "delta"}));
    c.required = {"X", "H"};
    c.run = [&] { run_prime_variance(Session(common, out), pv); };
  }
  CoeffsParams cp;
  {
    auto& c = add("coeffs", "Tabulate Lambda(n) a(n) and cache it");
    c.app->add_option("--label", cp.label, "Coefficient series")
        ->check(CLI::IsMember({"zeta", "delta"}));
    c.app->add_option("--N", cp.N, "Table length");
    c.required = {"N"};
    c.run = [&] { run_coeffs(Session(common, out), cp); };
  }
  auto add_zero_flags = [](CLI::App* a, ZeroParams& z) {
    a->add_option("--zeros", z.zeros, "Zero table file (one ordinate per line)");
    a->add_option("--degree", z.degree, "Degree of the L-function");
    a->add_option("--complete-to", z.complete_to, "Height up to which the table is complete");
  };
  FormFactorParams ff;
  {
    auto& c = add("formfactor", "Pair-correlation form factor of a zero table");
    add_zero_flags(c.app, ff.z);
    c.app->add_option("--alpha", ff.alpha, "alpha values (repeatable)");
    c.app->add_option("--T", ff.T, "Height (default: the completeness height)");
    c.app->add_option("--normalization", ff.normalization, "K denominator")
        ->check(CLI::IsMember({"density", "counted"}));
    c.app->add_flag("--smoothed", ff.smoothed, "Also run the smoothed (NUFFT) estimator");
    c.app->add_option("--tolerance", ff.tolerance, "Smoothed error budget relative to N");
    c.required = {"zeros", "complete-to"};
    c.run = [&] { run_formfactor(Session(common, out), ff); };
  }
  ExplicitParams ef;
  {
    auto& c = add("explicit-formula", "Zero side against prime side of the explicit formula");
    add_zero_flags(c.app, ef.z);
    c.app->add_option("--x", ef.x, "x");
    c.app->add_option("--t", ef.t, "Heights t (repeatable)");
    c.app->add_option("--sigma", ef.sigma, "Abscissa sigma > 1");
    c.app->add_option("--N", ef.N, "Coefficient table length");
    c.required = {"zeros", "complete-to", "x", "t"};
    c.run = [&] { run_explicit(Session(common, out), ef); };
  }
  MvParams mv;
  {
    auto& c = add("mv-check", "Mean-value identity for the Dirichlet polynomial of b(n)");
    c.app->add_option("--label", mv.label, "Coefficient series")
        ->check(CLI::IsMember({"zeta", "delta"}));
    c.app->add_option("--x", mv.x, "x");
    c.app->add_option("--T", mv.T, "Integration length");
    c.app->add_option("--eps", mv.eps, "Tail budget for S1 (default 0.05 x log x)");
    c.app->add_option("--step", mv.step, "Quadrature step (default: the largest safe step)");
    c.required = {"x", "T"};
    c.run = [&] { run_mv(Session(common, out), mv); };
  }
  RmtParams rp;
  {
    auto& c = add("rmt", "Form factor of a random-matrix ensemble");
    c.app->add_option("--kind", rp.kind, "CUE, COE, GUE, GOE or Poisson");
    c.app->add_option("--n", rp.n, "Matrix dimension");
    c.app->add_option("--samples", rp.samples, "Number of samples");
    c.app->add_option("--alpha", rp.alpha, "alpha values (repeatable)");
    c.app->add_option("--alpha-max", rp.alpha_max, "Upper alpha for the slope fit");
    c.app->add_option("--density-scale", rp.density_scale, "Ordinate density per eigenvalue");
    c.required = {"kind", "n", "samples"};
    c.run = [&] { run_rmt(Session(common, out), rp); };
  }
  GeoParams gp;
  {
    auto& c = add("geodesics", "Closed-geodesic length spectrum of a Fuchsian group");
    c.app->add_option("--group", gp.group, "Generator file (default: the Bolza surface)");
    c.app->add_option("--W", gp.W, "Maximal word length");
    c.app->add_option("--lmax", gp.lmax, "Maximal geodesic length");
    c.app->add_option("--x", gp.x, "Also report Psi(x) and Pi(x)");
    c.required = {"W", "lmax"};
    c.run = [&] { run_geodesics(Session(common, out), gp); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << "error: a subcommand is required\n\n" << app.help();
    return 2;
  }
  Command& cmd = commands.at(chosen.front()->get_name());

  try {
    if (!common.config.empty()) apply_config(cmd.app, common.config);
    for (const auto& r : cmd.required) {
      if (cmd.app->get_option("--" + r)->count() == 0)
        throw ParameterError("missing required flag --" + r);
    }
    set_thread_limit(common.threads);
    write_run_json(common, cmd.app);
    cmd.run();
    return 0;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace shortlab::cli
