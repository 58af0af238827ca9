#include "shortlab/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"

namespace shortlab::zeros {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

CompensatedSum merge(CompensatedSum a, const CompensatedSum& b) {
  a.merge(b);
  return a;
}

void require_height(const ZeroSet& zeros, double T) {
  if (!(T <= zeros.complete_up_to))
    throw RangeError("T = " + std::to_string(T) + " exceeds the completeness height " +
                     std::to_string(zeros.complete_up_to) + " of zero set '" + zeros.label +
                     "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::span<const double> ZeroSet::up_to(double T) const {
  const auto end = std::upper_bound(ordinates.begin(), ordinates.end(), T);
  return {ordinates.data(), static_cast<std::size_t>(end - ordinates.begin())};
}

ZeroSet make_zero_set(std::string label, int degree, std::vector<double> ordinates,
                      double completeness) {
  if (degree < 1) throw ParameterError("degree must be positive");
  if (ordinates.empty()) throw FormatError("zero set '" + label + "' is empty");
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > 0) || !std::isfinite(ordinates[i]))
      throw FormatError("ordinate " + std::to_string(i + 1) + " is not a positive number");
    if (i > 0 && !(ordinates[i] > ordinates[i - 1]))
      throw FormatError("ordinate " + std::to_string(i + 1) + " is not greater than its predecessor");
  }
  ZeroSet z;
  z.label = std::move(label);
  z.degree = degree;
  z.complete_up_to = std::min(completeness, ordinates.back());
  const auto keep = std::upper_bound(ordinates.begin(), ordinates.end(), z.complete_up_to);
  ordinates.erase(keep, ordinates.end());
  z.ordinates = std::move(ordinates);
  if (z.ordinates.empty())
    throw FormatError("no ordinate lies below the completeness height");
  return z;
}

ZeroSet load_zeros(const std::filesystem::path& path, int degree, double completeness) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open zero file " + path.string());
  std::vector<double> ordinates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v) || !(v > 0))
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected one positive ordinate, got '" + s + "'");
    if (!ordinates.empty() && !(v > ordinates.back()))
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": ordinates must be strictly increasing");
    ordinates.push_back(v);
  }
  if (ordinates.empty()) throw FormatError(path.string() + ": no ordinates found");
  return make_zero_set(path.stem().string(), degree, std::move(ordinates), completeness);
}

std::uint64_t counting_function(const ZeroSet& zeros, double T) {
  require_height(zeros, T);
  return zeros.up_to(T).size();
}

double rvm_density(int degree, double T) {
  if (!(T > 1)) throw ParameterError("T must exceed 1");
  return degree * T * std::log(T) / kTwoPi;
}

namespace {

struct Phases {
  std::vector<double> re, im;
};

// e^{i gamma L}; the argument is reduced in long double first.
Phases unit_phases(std::span<const double> g, double L) {
  Phases p;
  p.re.resize(g.size());
  p.im.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const long double arg = std::fmod(static_cast<long double>(g[j]) * L,
                                      2 * std::numbers::pi_v<long double>);
    p.re[j] = static_cast<double>(std::cos(arg));
    p.im[j] = static_cast<double>(std::sin(arg));
  }
  return p;
}

void check_form_factor_args(const ZeroSet& zeros, double X, double T) {
  if (!(X > 1)) throw ParameterError("X must exceed 1");
  require_height(zeros, T);
  if (zeros.up_to(T).empty()) throw ParameterError("no zeros at or below T");
}

}  // namespace

double form_factor_direct(const ZeroSet& zeros, double X, double T) {
  check_form_factor_args(zeros, X, T);
  const auto g = zeros.up_to(T);
  const double L = std::log(X);
  const Phases p = unit_phases(g, L);
  const std::size_t n = g.size();
  const CompensatedSum off = deterministic_reduce(
      n, 64, CompensatedSum{},
      [&](std::size_t b, std::size_t e) {
        CompensatedSum s;
        for (std::size_t j = b; j < e; ++j) {
          double row = 0;
          const double gj = g[j], cj = p.re[j], sj = p.im[j];
          for (std::size_t k = j + 1; k < n; ++k) {
            const double u = g[k] - gj;
            row += (cj * p.re[k] + sj * p.im[k]) * (4.0 / (4.0 + u * u));
          }
          s.add(row);
        }
        return s;
      },
      merge);
  return static_cast<double>(n) + 2 * off.value();
}

std::complex<double> form_factor_complex(const ZeroSet& zeros, double X, double T) {
  check_form_factor_args(zeros, X, T);
  const auto g = zeros.up_to(T);
  const Phases p = unit_phases(g, std::log(X));
  const std::size_t n = g.size();
  struct Pair {
    CompensatedSum re, im;
  };
  const Pair s = deterministic_reduce(
      n, 64, Pair{},
      [&](std::size_t b, std::size_t e) {
        Pair part;
        for (std::size_t j = b; j < e; ++j) {
          double re = 0, im = 0;
          for (std::size_t k = 0; k < n; ++k) {
            const double w = pair_weight(g[j] - g[k]);
            // e^{i (g_j - g_k) L} = z_j conj(z_k)
            re += (p.re[j] * p.re[k] + p.im[j] * p.im[k]) * w;
            im += (p.im[j] * p.re[k] - p.re[j] * p.im[k]) * w;
          }
          part.re.add(re);
          part.im.add(im);
        }
        return part;
      },
      [](Pair a, const Pair& b) {
        a.re.merge(b.re);
        a.im.merge(b.im);
        return a;
      });
  return {s.re.value(), s.im.value()};
}

FormFactorCurve form_factor_curve(const ZeroSet& zeros, std::span<const double> alphas, double T,
                                  KNormalization normalization) {
  require_height(zeros, T);
  FormFactorCurve curve;
  curve.label = zeros.label;
  curve.T = T;
  curve.N_T = counting_function(zeros, T);
  curve.degree = zeros.degree;
  curve.normalizer = normalization == KNormalization::counted
                         ? static_cast<double>(curve.N_T)
                         : rvm_density(zeros.degree, T);
  for (double a : alphas) {
    if (!(a > 0 && a < 1)) throw ParameterError("alpha must lie in (0, 1)");
    FormFactorPoint pt;
    pt.alpha = a;
    pt.log_X = zeros.degree * a * std::log(T);
    pt.F = form_factor_direct(zeros, std::exp(pt.log_X), T);
    pt.K = pt.F / curve.normalizer;
    curve.points.push_back(pt);
  }
  return curve;
}

namespace {

// Zeros beyond distance Gamma from t, assuming at most d (0.4 log(s + 3) + 3)
// ordinates per unit window at height s. That covers the Riemann-von Mangoldt
// density d log(s) / 2 pi together with its O(log s) fluctuation.
double zero_tail(int d, double sigma, double t, double gamma_cut) {
  if (gamma_cut <= 1) return std::numeric_limits<double>::infinity();
  return (2 * sigma - 1) * 2 * d *
         (0.4 * (std::log(std::fabs(t) + gamma_cut + 3) + 1) + 3) / (gamma_cut - 1);
}

}  // namespace

ExplicitFormulaResult explicit_formula_residual(const ZeroSet& zeros,
                                                const arith::CoefficientSeries& series, double x,
                                                double t, double sigma) {
  if (!(x >= 1)) throw ParameterError("x must be at least 1");
  if (!(sigma > 1)) throw ParameterError("sigma must exceed 1");
  if (series.degree() != zeros.degree)
    throw ParameterError("series degree and zero-set degree differ");
  if (!(x <= static_cast<double>(series.limit())))
    throw RangeError("x exceeds series limit " + std::to_string(series.limit()));

  ExplicitFormulaResult r;
  const int d = zeros.degree;
  const double a = sigma - 0.5;
  r.o_term_budget = kExplicitFormulaConstant * (std::pow(x, 0.5 - sigma) * std::log(std::fabs(t) + 2) +
                                                std::sqrt(x) / (std::fabs(t) + 2));

  // Zero side. Ordinates come in pairs +-gamma; keep those within Gamma of t.
  r.zero_cutoff = zeros.complete_up_to - std::fabs(t);
  r.zero_tail_bound = zero_tail(d, sigma, t, r.zero_cutoff);
  if (!(r.zero_tail_bound <= r.o_term_budget)) {
    double need = std::max(2.0, r.zero_cutoff);
    while (zero_tail(d, sigma, t, need) > r.o_term_budget) need *= 1.25;
    throw ResourceError("zero table exhausted: certifying the zero-sum tail at t=" +
                        std::to_string(t) + " needs zeros complete to height " +
                        std::to_string(std::fabs(t) + need) + ", have " +
                        std::to_string(zeros.complete_up_to));
  }
  const double logx = std::log(x);
  CompensatedSum lre, lim;
  for (double g : zeros.ordinates) {
    for (double gamma : {g, -g}) {
      const double dist = t - gamma;
      if (std::fabs(dist) > r.zero_cutoff) continue;
      const double k = (2 * sigma - 1) / (a * a + dist * dist);
      lre.add(k * std::cos(gamma * logx));
      lim.add(k * std::sin(gamma * logx));
    }
  }
  r.lhs = {lre.value(), lim.value()};

  // Dirichlet side, through the whole table, with a Chebyshev-bound tail.
  CompensatedSum rre, rim;
  const std::uint64_t M = series.limit();
  for (std::uint64_t n = 2; n <= M; ++n) {
    const double c = series[n];
    if (c == 0.0) continue;
    const double lr = logx - std::log(static_cast<double>(n));  // log(x/n)
    const double ex = static_cast<double>(n) <= x ? 1 - sigma : sigma;
    const double mag = c * std::exp(ex * lr);
    rre.add(mag * std::cos(t * lr));
    rim.add(mag * std::sin(t * lr));
  }
  const double scale = -1 / std::sqrt(x);
  r.rhs = {scale * rre.value(), scale * rim.value()};
  const double Md = static_cast<double>(M);
  r.dirichlet_tail_bound = std::pow(x, sigma - 0.5) * d * 1.04 * sigma /
                           ((sigma - 1) * std::pow(Md, sigma - 1));

  if (series.pole_order() == 1) {
    // The pole of zeta at s = 1 behaves like a zero at gamma = -i/2 with the
    // opposite sign: + (2 sigma - 1) x^{1/2} / ((sigma - 1/2)^2 + (t + i/2)^2).
    const std::complex<double> it(0, t);
    r.pole_term = std::sqrt(x) * (1.0 / (sigma - it) - 1.0 / (1 - sigma - it));
    r.rhs += r.pole_term;
  }
  r.assertable = d >= 2;
  r.gap_budget = r.zero_tail_bound + r.dirichlet_tail_bound + r.o_term_budget +
                 1e-12 * (std::abs(r.lhs) + std::abs(r.rhs));
  return r;
}

double zero_side_mean_square(const ZeroSet& zeros, double x, double T, double sigma,
                             double step) {
  if (!(step > 0)) throw ParameterError("step must be positive");
  if (!(T > 0)) throw ParameterError("T must be positive");
  const double a = sigma - 0.5, logx = std::log(x);
  std::vector<double> g;
  g.reserve(2 * zeros.size());
  for (double v : zeros.ordinates) {
    g.push_back(v);
    g.push_back(-v);
  }
  const Phases p = unit_phases(g, logx);
  const auto steps = static_cast<std::size_t>(std::ceil(T / step));
  const double h = T / static_cast<double>(steps);
  const CompensatedSum s = deterministic_reduce(
      steps + 1, 256, CompensatedSum{},
      [&](std::size_t b, std::size_t e) {
        CompensatedSum part;
        for (std::size_t k = b; k < e; ++k) {
          const double t = h * static_cast<double>(k);
          double re = 0, im = 0;
          for (std::size_t j = 0; j < g.size(); ++j) {
            const double dist = t - g[j];
            const double kern = (2 * sigma - 1) / (a * a + dist * dist);
            re += kern * p.re[j];
            im += kern * p.im[j];
          }
          const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
          part.add(w * (re * re + im * im));
        }
        return part;
      },
      merge);
  return h * s.value();
}

double mv_step_limit(const arith::BnWeights& weights) {
  if (weights.values.empty()) throw ParameterError("empty weight vector");
  const double n_max = static_cast<double>(weights.values.back().first);
  return 0.1 / std::max(std::log(n_max), 1.0);
}

MeanValueCheck mv_meanvalue_check(const arith::BnWeights& weights, double T, double quad_step) {
  if (weights.values.empty()) throw ParameterError("empty weight vector");
  if (weights.values.size() > kMeanValueSupportLimit)
    throw ParameterError("weight support " + std::to_string(weights.values.size()) +
                         " exceeds the limit of " + std::to_string(kMeanValueSupportLimit));
  if (!(T > 0)) throw ParameterError("T must be positive");
  const double limit = mv_step_limit(weights);
  if (!(quad_step > 0) || quad_step > limit)
    throw ParameterError("quad_step " + std::to_string(quad_step) +
                         " is too coarse; need at most " + std::to_string(limit));

  const std::size_t m = weights.values.size();
  std::vector<double> b(m), logn(m);
  CompensatedSum s0, s1;
  for (std::size_t i = 0; i < m; ++i) {
    const auto [n, v] = weights.values[i];
    b[i] = v;
    logn[i] = std::log(static_cast<double>(n));
    s0.add(v * v);
    s1.add(static_cast<double>(n) * v * v);
  }

  const auto steps = static_cast<std::size_t>(std::ceil(T / quad_step));
  const double h = T / static_cast<double>(steps);
  constexpr std::size_t kBlock = 1024;  // phases are re-seeded at each block start

  const CompensatedSum total = deterministic_reduce(
      steps + 1, kBlock, CompensatedSum{},
      [&](std::size_t first, std::size_t last) {
        const std::size_t len = last - first;
        std::vector<double> re(len, 0.0), im(len, 0.0);
        const double t0 = h * static_cast<double>(first);
        for (std::size_t i = 0; i < m; ++i) {
          // b n^{-it} = b e^{-i t log n}, advanced by the rotation e^{-i h log n}
          double zr = b[i] * std::cos(t0 * logn[i]), zi = -b[i] * std::sin(t0 * logn[i]);
          const double rr = std::cos(h * logn[i]), ri = -std::sin(h * logn[i]);
          for (std::size_t k = 0; k < len; ++k) {
            re[k] += zr;
            im[k] += zi;
            const double nr = zr * rr - zi * ri;
            zi = zr * ri + zi * rr;
            zr = nr;
          }
        }
        CompensatedSum part;
        for (std::size_t k = 0; k < len; ++k) {
          const std::size_t idx = first + k;
          const double w = (idx == 0 || idx == steps) ? 0.5 : 1.0;
          part.add(w * (re[k] * re[k] + im[k] * im[k]));
        }
        return part;
      },
      merge);

  MeanValueCheck r;
  r.integral = h * total.value();
  r.s0 = s0.value();
  r.s1 = s1.value();
  r.main = T * r.s0;
  r.error_bound = 3 * r.s1;
  r.step = h;
  return r;
}

}  // namespace shortlab::zeros
