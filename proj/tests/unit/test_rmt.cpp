#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rmt_oracles.hpp"
#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/rmt.hpp"

using namespace shortlab;
using namespace shortlab::rmt;

namespace {

constexpr double kPi = std::numbers::pi;

// |sum_j e^{2 pi i alpha x_j}|^2 / n for points of unit density on [0, n).
double trace_form_factor(const std::vector<double>& x, double alpha) {
  std::complex<double> s = 0;
  for (double v : x) s += std::polar(1.0, 2 * kPi * alpha * v);
  return std::norm(s) / static_cast<double>(x.size());
}

struct Moments {
  double mean = 0, stderr_ = 0;
};

Moments moments(const std::vector<double>& v) {
  double m = 0, q = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double x : v) q += (x - m) * (x - m);
  return {m, std::sqrt(q / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

// E |Tr U^m|^2 / n at alpha = m / n.
double cue_exact(double alpha) { return std::min(alpha, 1.0); }
double coe_exact(double alpha) { return 2 * alpha - alpha * std::log1p(2 * alpha); }

// Inverse of y -> n * semicircle_cdf(y) by bisection.
double unfold_inverse(double p, double n) {
  double lo = -1, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (n * semicircle_cdf(mid) < p ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("ensemble names and validation") {
  CHECK(parse_ensemble("COE") == Ensemble::COE);
  CHECK(parse_ensemble("Poisson") == Ensemble::Poisson);
  CHECK(to_string(Ensemble::GUE) == "GUE");
  CHECK_THROWS_AS(parse_ensemble("XYZ"), ParameterError);
  CHECK_THROWS_AS(validate({Ensemble::CUE, 1, 1, 0}), ParameterError);
  CHECK_THROWS_AS(validate({Ensemble::CUE, 4, 0, 0}), ParameterError);
  const std::vector<double> bad{0.0};
  CHECK_THROWS_AS(ensemble_form_factor({Ensemble::CUE, 4, 2, 0}, bad), ParameterError);
  CHECK(snap_alpha(0.2, 512) == 102.0 / 512);
  CHECK(snap_alpha(0.001, 512) == 1.0 / 512);
}

TEST_CASE("counter rng is deterministic and split by stream") {
  CounterRng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CounterRng u(1, 0);
  double m = 0;
  for (int i = 0; i < 100000; ++i) m += u.uniform();
  CHECK(m / 1e5 == doctest::Approx(0.5).epsilon(0.01));
  double g = 0;
  for (int i = 0; i < 100000; ++i) g += u.gamma(2.5);
  CHECK(g / 1e5 == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("samples are reproducible") {
  for (auto kind : {Ensemble::CUE, Ensemble::COE, Ensemble::GUE, Ensemble::GOE, Ensemble::Poisson}) {
    const EnsembleSpec spec{kind, 32, 1, 99};
    const auto s1 = sample_spectrum(spec, 5), s2 = sample_spectrum(spec, 5);
    CHECK(s1.points == s2.points);
    CHECK(s1.count() == 32);
    CHECK(std::is_sorted(s1.points.begin(), s1.points.end()));
    CHECK(s1.points.front() >= 0);
    CHECK(s1.points.back() <= 32);
    const double spacing = (s1.points.back() - s1.points.front()) / 31;
    CHECK(spacing >= 0.8);
    CHECK(spacing <= 1.1);
  }
}

TEST_CASE("CMV eigenphases match the explicit CMV matrix") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  for (int n : {1, 2, 3, 6, 17, 40}) {
    std::vector<std::complex<double>> a(n);
    for (int k = 0; k + 1 < n; ++k) a[k] = std::polar(0.95 * std::sqrt(U(rng)), 2 * kPi * U(rng));
    a[n - 1] = std::polar(1.0, 2 * kPi * U(rng));
    const auto got = cmv_eigenphases(a);
    const auto ref = oracle::sorted_phases(oracle::cmv_matrix(a));
    REQUIRE(got.size() == ref.size());
    for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-9));
  }
  const std::vector<std::complex<double>> open{{0.5, 0}, {0.5, 0}};
  CHECK_THROWS_AS(cmv_eigenphases(open), ParameterError);
}

TEST_CASE("CUE n = 2: sorted phase gap") {
  // Joint density proportional to sin^2(d / 2) gives E[d] = 2 pi / 3 + 2 / pi,
  // i.e. 2/3 + 2/pi^2 after scaling by n / 2 pi.
  const EnsembleSpec spec{Ensemble::CUE, 2, 1, 3};
  double m = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto s = sample_spectrum(spec, i);
    m += s.points[1] - s.points[0];
  }
  CHECK(m / 1e4 == doctest::Approx(2.0 / 3 + 2 / (kPi * kPi)).epsilon(0.02));
}

TEST_CASE("Gaussian n = 2 matches the Wigner surmise") {
  // For 2x2 matrices the surmise is exact: E[s^2] / E[s]^2 = 4/pi (GOE), 3 pi/8 (GUE).
  for (auto [kind, beta, ratio] : {std::tuple{Ensemble::GOE, 1.0, 4 / kPi},
                                   std::tuple{Ensemble::GUE, 2.0, 3 * kPi / 8}}) {
    const EnsembleSpec spec{kind, 2, 1, 8};
    const double r = std::sqrt(2 * beta * 2);
    double s1 = 0, s2 = 0;
    for (int i = 0; i < 20000; ++i) {
      const auto p = sample_spectrum(spec, i).points;
      const double s = r * (unfold_inverse(p[1], 2) - unfold_inverse(p[0], 2));
      s1 += s;
      s2 += s * s;
    }
    s1 /= 2e4;
    s2 /= 2e4;
    CHECK(s2 / (s1 * s1) == doctest::Approx(ratio).epsilon(0.05));
  }
}

TEST_CASE("circular ensembles against exact two-point sums and the dense sampler") {
  const int n = 64, S = 400;
  for (auto [kind, beta] : {std::pair{Ensemble::CUE, 2}, std::pair{Ensemble::COE, 1}}) {
    const EnsembleSpec spec{kind, static_cast<std::size_t>(n), static_cast<std::size_t>(S), 21};
    const std::vector<double> alphas{0.125, 0.25, 0.5};
    const auto curve = ensemble_form_factor(spec, alphas);
    std::mt19937_64 rng(static_cast<unsigned>(beta));
    std::vector<std::vector<double>> dense(alphas.size());
    for (int s = 0; s < S; ++s) {
      const auto p = oracle::dense_circular(n, beta, rng);
      for (std::size_t i = 0; i < alphas.size(); ++i) dense[i].push_back(trace_form_factor(p, alphas[i]));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double exact = kind == Ensemble::CUE ? cue_exact(alphas[i]) : coe_exact(alphas[i]);
      const auto& pt = curve.points[i];
      const auto d = moments(dense[i]);
      CHECK(std::fabs(pt.K - exact) <= 4 * pt.stderr_K);
      CHECK(std::fabs(d.mean - exact) <= 4 * d.stderr_);
      CHECK(std::fabs(pt.K - d.mean) <= 4 * std::hypot(pt.stderr_K, d.stderr_));
    }
  }
}

TEST_CASE("tridiagonal Gaussian ensembles against dense matrices") {
  const int n = 48, S = 400;
  for (auto [kind, beta] : {std::pair{Ensemble::GUE, 2}, std::pair{Ensemble::GOE, 1}}) {
    const EnsembleSpec spec{kind, static_cast<std::size_t>(n), static_cast<std::size_t>(S), 4};
    const std::vector<double> alphas{0.125, 0.375};
    const auto curve = ensemble_form_factor(spec, alphas);
    std::mt19937_64 rng(100 + static_cast<unsigned>(beta));
    const double radius = std::sqrt(2.0 * beta * n);
    std::vector<std::vector<double>> dense(alphas.size());
    for (int s = 0; s < S; ++s) {
      auto ev = oracle::dense_gaussian(n, beta, rng);
      for (double& v : ev) v = n * semicircle_cdf(v / radius);
      for (std::size_t i = 0; i < alphas.size(); ++i) dense[i].push_back(trace_form_factor(ev, alphas[i]));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const auto d = moments(dense[i]);
      CHECK(std::fabs(curve.points[i].K - d.mean) <= 4 * std::hypot(curve.points[i].stderr_K, d.stderr_));
    }
  }
}

TEST_CASE("Poisson control is flat") {
  const EnsembleSpec spec{Ensemble::Poisson, 128, 300, 5};
  const auto curve = ensemble_form_factor(spec, default_alpha_grid());
  for (const auto& p : curve.points) CHECK(std::fabs(p.K - 1) <= 3.5 * p.stderr_K);
}

TEST_CASE("single point per sample has K = 1") {
  const std::vector<double> one{0.3};
  const std::vector<double> alphas{0.1, 0.7};
  for (double k : spectrum_form_factor(one, 1, alphas, 1000)) CHECK(k == 1);
}

TEST_CASE("early slope") {
  std::vector<double> a, k1, k2;
  for (int i = 1; i <= 10; ++i) {
    a.push_back(i / 40.0);
    k1.push_back(i / 40.0);
    k2.push_back(2 * i / 40.0);
  }
  CHECK(std::fabs(early_slope(a, k1, 0.25) - 1) <= 1e-12);
  CHECK(std::fabs(early_slope(a, k2, 0.25) - 2) <= 1e-12);
  CHECK_THROWS_AS(early_slope(a, k1, 0.06), ParameterError);
}

TEST_CASE("curves do not depend on thread count") {
  const EnsembleSpec spec{Ensemble::COE, 64, 16, 77};
  const auto grid = default_alpha_grid();
  set_thread_limit(1);
  const auto a = ensemble_form_factor(spec, grid);
  set_thread_limit(4);
  const auto b = ensemble_form_factor(spec, grid);
  set_thread_limit(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.points[i].K == b.points[i].K);
    CHECK(a.points[i].stderr_K == b.points[i].stderr_K);
  }
}
