#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "arith_oracles.hpp"
#include "shortlab/arith.hpp"
#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"

using namespace shortlab;
using namespace shortlab::arith;

namespace {

const CoefficientSeries& zeta_table() {
  static const CoefficientSeries s = sieve_von_mangoldt(1'100'000);
  return s;
}

const CoefficientSeries& delta_table() {
  static const CoefficientSeries s = delta_coefficients(100'100);
  return s;
}

}  // namespace

TEST_CASE("von Mangoldt sieve, small cases") {
  const auto s = sieve_von_mangoldt(12);
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);
  const double expect[] = {0, 0, l2, l3, l2, l5, 0, l7, l2, l3, 0, std::log(11.0), 0};
  for (int n = 1; n <= 12; ++n) CHECK(s[n] == doctest::Approx(expect[n]).epsilon(1e-15));
  CHECK(s.label() == "zeta");
  CHECK(s.degree() == 1);
  CHECK(s.pole_order() == 1);
  CHECK(chebyshev_psi(s, 10) == doctest::Approx(7.832015).epsilon(1e-7));
}

TEST_CASE("sieve agrees with trial division and is independent of segmenting") {
  SieveOptions small;
  small.segment_length = 1000;
  const auto a = sieve_von_mangoldt(100'000, small);
  const auto b = sieve_von_mangoldt(100'000);
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    REQUIRE(a[n] == b[n]);
    if (n <= 10'000) REQUIRE(a[n] == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-15));
  }
}

TEST_CASE("sieve refuses a table over its memory budget") {
  SieveOptions tight;
  tight.memory_budget_bytes = 1000;
  CHECK_THROWS_AS(sieve_von_mangoldt(1'000'000, tight), ResourceError);
  CHECK_THROWS_AS(sieve_von_mangoldt(0), ParameterError);
}

TEST_CASE("psi(10) to 1e-9") {
  const double exact = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(std::fabs(chebyshev_psi(zeta_table(), 10) - exact) < 1e-12);
  CHECK(std::fabs(chebyshev_psi(zeta_table(), 10) - 7.832015) < 1e-6);
  CHECK(chebyshev_psi(zeta_table(), 1) == 0);
  CHECK_THROWS_AS(chebyshev_psi(sieve_von_mangoldt(10), 11), RangeError);
}

TEST_CASE("short interval sums") {
  const auto& s = zeta_table();
  CHECK(short_interval_sum(s, 10, 1) == doctest::Approx(std::log(11.0)).epsilon(1e-14));
  CHECK(short_interval_sum(s, 10, 0.5) == 0);
  CHECK(short_interval_sum(s, 100, 20) == doctest::Approx(23.341415).epsilon(1e-7));
  CHECK_THROWS_AS(short_interval_sum(s, 10, 0), ParameterError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> X(1, 1e6), H(0.1, 1e4);
  for (int i = 0; i < 100; ++i) {
    const double x = X(rng), h = H(rng);
    const double diff = chebyshev_psi(s, x + h) - chebyshev_psi(s, x);
    CHECK(short_interval_sum(s, x, h) == doctest::Approx(diff).epsilon(1e-10));
  }
}

TEST_CASE("PNT trend") {
  for (double x : {1e4, 1e5, 1e6}) {
    const double r = chebyshev_psi(zeta_table(), x) / x;
    CHECK(r > 0.9);
    CHECK(r < 1.1);
  }
}

TEST_CASE("tau against the pentagonal expansion") {
  const auto tau = ramanujan_tau(1000);
  const auto ref = oracle::tau_pentagonal(1000);
  CHECK(static_cast<long long>(tau[1]) == 1);
  CHECK(static_cast<long long>(tau[2]) == -24);
  CHECK(static_cast<long long>(tau[3]) == 252);
  for (std::size_t n = 1; n <= 1000; ++n) REQUIRE(tau[n] == ref[n]);
  CHECK_THROWS_AS(ramanujan_tau(kTauLimit + 1), ParameterError);
}

TEST_CASE("delta coefficients") {
  const auto& s = delta_table();
  CHECK(s.label() == "delta");
  CHECK(s.degree() == 2);
  CHECK(s.normalization() == Normalization::analytic);
  CHECK(s.pole_order() == 0);
  const double l2 = std::log(2.0);
  const double a2 = -24 / std::pow(2.0, 5.5);
  CHECK(a2 == doctest::Approx(-0.5303301).epsilon(1e-6));
  CHECK(s[2] / l2 == doctest::Approx(a2).epsilon(1e-14));
  CHECK(s[4] / l2 == doctest::Approx(-1.71875).epsilon(1e-12));
  CHECK(s[8] / l2 == doctest::Approx(a2 * -1.71875 - a2).epsilon(1e-12));
  CHECK(s[6] == 0);
  CHECK(s[12] == 0);

  // psi_Delta(10) straight from tau.
  const auto tau = oracle::tau_pentagonal(10);
  double psi10 = 0;
  for (int p : {2, 3, 5, 7}) {
    const double a = static_cast<double>(tau[p]) / std::pow(p, 5.5);
    double s0 = 2, s1 = a;
    for (long long q = p; q <= 10; q *= p) {
      psi10 += std::log(static_cast<double>(p)) * s1;
      const double next = a * s1 - s0;
      s0 = s1;
      s1 = next;
    }
  }
  CHECK(chebyshev_psi(s, 10) == doctest::Approx(psi10).epsilon(1e-13));

  CHECK(delta_coefficients(0).limit() == 0);
  CHECK_THROWS_AS(CoefficientSeries("delta", 2, Normalization::arithmetic, {0, 0}), ParameterError);
}

TEST_CASE("support lies on prime powers for every series") {
  auto is_prime_power = [](std::uint64_t n) { return oracle::von_mangoldt(n) != 0; };
  for (const CoefficientSeries* s : {&zeta_table(), &delta_table()})
    for (std::uint64_t n = 1; n <= 10'000; ++n)
      if ((*s)[n] != 0) REQUIRE(is_prime_power(n));
}

TEST_CASE("delta: Deligne bound and cancellation") {
  const auto& s = delta_table();
  for (std::uint64_t p = 2; p <= 10'000; ++p) {
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (prime) REQUIRE(std::fabs(s[p] / std::log(static_cast<double>(p))) <= 2);
  }
  CHECK(std::fabs(chebyshev_psi(s, 1e5)) / 1e5 <= 0.05);
}

TEST_CASE("empirical variance against a brute-force loop") {
  const auto& s = zeta_table();
  const auto r = empirical_variance(s, 100, 10, 1);
  CHECK(r.samples == 100);
  double mean = 0, var = 0;
  for (int x = 1; x <= 100; ++x) {
    double w = 0;
    for (int n = x + 1; n <= x + 10; ++n) w += oracle::von_mangoldt(n);
    mean += w;
    var += (w - 10) * (w - 10);
  }
  CHECK(r.mean == doctest::Approx(mean / 100).epsilon(1e-12));
  CHECK(r.variance == doctest::Approx(var / 100).epsilon(1e-12));

  const CoefficientSeries zero("zero", 2, Normalization::analytic, std::vector<double>(200, 0.0));
  CHECK(empirical_variance(zero, 100, 10, 1).variance == 0);
  CHECK_THROWS_AS(empirical_variance(s, 100, 10, 0), ParameterError);
  CHECK_THROWS_AS(empirical_variance(s, 2e6, 10, 1), RangeError);

  const auto half = empirical_variance(s, 100, 10, 0.5);
  CHECK(half.samples == 199);
}

TEST_CASE("window average of c(n)^2") {
  const auto& s = zeta_table();
  double brute = 0;
  for (int x = 1; x <= 1000; ++x)
    for (int n = x + 1; n <= x + 10; ++n) brute += oracle::von_mangoldt(n) * oracle::von_mangoldt(n);
  CHECK(lambda_sq_window_average(s, 1000, 10) == doctest::Approx(brute / 1000).epsilon(1e-12));
  const double avg = lambda_sq_window_average(s, 1e5, 100);
  CHECK(std::fabs(avg / (100 * std::log(1e5)) - 1) <= 0.10);
  const CoefficientSeries zero("zero", 2, Normalization::analytic, std::vector<double>(200, 0.0));
  CHECK(lambda_sq_window_average(zero, 100, 10) == 0);
}

TEST_CASE("prime-power defect") {
  const auto& s = zeta_table();
  CHECK(prime_power_defect(s, 3).defect == 0);
  const double expect = 5 * std::log(2.0) + 3 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(prime_power_defect(s, 100).defect == doctest::Approx(expect).epsilon(1e-13));
  CHECK(std::fabs(prime_power_defect(s, 100).defect - 10.3169) < 1e-4);
  for (double x : {1e3, 1e4, 1e5}) {
    const double r = prime_power_defect(s, x).defect / std::sqrt(x);
    CHECK(r >= 0.5);
    CHECK(r <= 2.5);
  }
  CHECK(prime_power_defect(s, 100).reference == doctest::Approx(std::sqrt(100.0)));
  CHECK(prime_power_defect(delta_table(), 1000).reference ==
        doctest::Approx(std::pow(1000.0, 0.8)));
}

TEST_CASE("b(n) weights") {
  const auto& s = zeta_table();
  const auto w1 = bn_weights(s, 1, 1e-2);
  REQUIRE(!w1.values.empty());
  CHECK(w1.values.front().first == 2);
  CHECK(w1.values.front().second == doctest::Approx(0.2450645).epsilon(1e-6));

  const double x = 1000;
  const auto w = bn_weights(s, x, 1e-2 * x * std::log(x));
  CHECK(w.truncation_bound > x);
  CHECK(w.s1 + w.tail_estimate > w.s1);
  const double r0 = w.s0 / std::log(x), r1 = w.s1 / (x * std::log(x));
  CHECK(r0 >= 0.8);
  CHECK(r0 <= 1.2);
  // S1 ~ (4/3) x log x + (8/9) x: the n <= x and n > x ranges give x log x / 3
  // - x / 9 and x (log x + 1).
  CHECK(r1 == doctest::Approx(4.0 / 3 + 8.0 / (9 * std::log(x))).epsilon(0.02));

  // Brute-force recomputation over prime powers up to M.
  double s0 = 0, s1 = 0;
  std::size_t k = 0;
  for (std::uint64_t n = 2; n <= w.truncation_bound; ++n) {
    const double L = oracle::von_mangoldt(n);
    if (L == 0) continue;
    const double nd = static_cast<double>(n);
    const double b = nd <= x ? L * std::sqrt(nd) / x : x * L * std::pow(nd, -1.5);
    REQUIRE(w.values[k].first == n);
    REQUIRE(w.values[k].second == doctest::Approx(b).epsilon(1e-13));
    ++k;
    s0 += b * b;
    s1 += nd * b * b;
  }
  CHECK(k == w.values.size());
  CHECK(w.s0 == doctest::Approx(s0).epsilon(1e-10));
  CHECK(w.s1 == doctest::Approx(s1).epsilon(1e-10));

  // The certified tail really bounds what lies beyond M.
  const auto M = w.truncation_bound;
  double beyond = 0;
  for (std::uint64_t n = M + 1; n <= s.limit(); ++n) {
    const double nd = static_cast<double>(n);
    const double b = x * s[n] * std::pow(nd, -1.5);
    beyond += nd * b * b;
  }
  CHECK(beyond <= w.tail_estimate);

  const CoefficientSeries small = sieve_von_mangoldt(500);
  CHECK_THROWS_AS(bn_weights(small, 1000, 1e-3), ResourceError);
}

TEST_CASE("coefficient cache round-trips and rejects corruption") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "shortlab_cache_test";
  fs::remove_all(dir);
  const auto built = load_or_build(dir, "zeta", 5000);
  const auto file = cache_path(dir, "zeta", 5000);
  REQUIRE(fs::exists(file));
  CHECK(file.filename() == "zeta-5000.bin");
  const auto again = read_cache(file, "zeta", 5000);
  REQUIRE(again.has_value());
  for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE((*again)[n] == built[n]);
  CHECK_FALSE(read_cache(file, "zeta", 4999).has_value());
  CHECK_FALSE(read_cache(file, "delta", 5000).has_value());

  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(200);
    f.put('\x7f');
  }
  CHECK_FALSE(read_cache(file, "zeta", 5000).has_value());
  const auto rebuilt = load_or_build(dir, "zeta", 5000);
  CHECK(rebuilt[4999] == built[4999]);
  CHECK(read_cache(file, "zeta", 5000).has_value());

  fs::resize_file(file, 100);
  CHECK_FALSE(read_cache(file, "zeta", 5000).has_value());
  fs::remove_all(dir);
}
