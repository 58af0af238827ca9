#include "shortlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"

namespace shortlab::arith {

CoefficientSeries::CoefficientSeries(std::string label, int degree, Normalization normalization,
                                     std::vector<double> values)
    : label_(std::move(label)),
      degree_(degree),
      normalization_(normalization),
      values_(std::move(values)) {
  if (degree_ < 1) throw ParameterError("series degree must be positive");
  if (label_ == "delta" && normalization_ != Normalization::analytic)
    throw ParameterError("delta coefficients are stored in analytic normalization only");
  if (!values_.empty() && values_[0] != 0.0)
    throw ParameterError("c(0) slot must be zero");
  if (values_.size() > 1 && values_[1] != 0.0) throw ParameterError("c(1) must be zero");
}

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

CoefficientSeries sieve_von_mangoldt(std::uint64_t N, const SieveOptions& options) {
  if (N < 1) throw ParameterError("sieve limit N must be at least 1");
  const std::size_t seg = std::max<std::size_t>(options.segment_length, 1024);
  const double table_bytes = 8.0 * (static_cast<double>(N) + 1);
  const double need = table_bytes + static_cast<double>(seg) * thread_limit();
  if (need > static_cast<double>(options.memory_budget_bytes)) {
    throw ResourceError("sieve to N=" + std::to_string(N) + " needs about " +
                        std::to_string(static_cast<long long>(need / 1048576.0)) +
                        " MiB (table plus segments of " + std::to_string(seg) +
                        " bytes); budget is " +
                        std::to_string(options.memory_budget_bytes / 1048576) + " MiB");
  }

  std::vector<double> c(N + 1, 0.0);
  const auto base = small_primes(isqrt(N));
  const std::uint64_t span = N - 1;  // sieve the range [2, N]

  // Each segment finds its primes p and writes log p at every power p^k.
  // The powers land outside the segment but at distinct indices, so segments
  // never write the same slot.
  parallel_chunks(span, seg, [&](std::size_t, std::size_t b, std::size_t e) {
    const std::uint64_t lo = 2 + b, hi = 2 + e - 1;  // inclusive
    std::vector<char> composite(hi - lo + 1, 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (composite[n - lo]) continue;
      const double lp = std::log(static_cast<double>(n));
      for (std::uint64_t q = n;; q *= n) {
        c[q] = lp;
        if (q > N / n) break;
      }
    }
  });
  return CoefficientSeries("zeta", 1, Normalization::arithmetic, std::move(c));
}

namespace {

[[noreturn]] void tau_overflow(std::uint64_t n) {
  throw ResourceError("integer overflow while expanding the eta product at q^" +
                      std::to_string(n));
}

}  // namespace

// prod (1 - q^m)^24 is computed as the eighth power of prod (1 - q^m)^3, whose
// Jacobi series sum_k (-1)^k (2k+1) q^{k(k+1)/2} is sparse. Each of the seven
// multiplications by the sparse cube costs O(N^{3/2}).
std::vector<int128> ramanujan_tau(std::uint64_t N) {
  if (N > kTauLimit)
    throw ParameterError("tau is computed exactly only up to N = " + std::to_string(kTauLimit));
  std::vector<int128> tau(N + 1, 0);
  if (N == 0) return tau;
  const std::uint64_t M = N;  // coefficients of q^0 .. q^{N-1}

  std::vector<std::pair<std::uint64_t, std::int64_t>> cube;
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t e = k * (k + 1) / 2;
    if (e >= M) break;
    cube.emplace_back(e, (k % 2 ? -1 : 1) * static_cast<std::int64_t>(2 * k + 1));
  }

  // Multipliers stay below 2^12 and at most 2^11 of them hit any n (for
  // N <= 2^20), so with |cur| < 2^100 each dot product stays below 2^123 and
  // the inner loop needs no per-term overflow checks.
  static_assert(kTauLimit <= (1u << 20));
  const int128 cap = int128{1} << 100;
  std::vector<int128> cur(M, 0), next(M);
  for (auto [e, v] : cube) cur[e] = v;
  for (int round = 1; round < 8; ++round) {
    for (std::uint64_t n = 0; n < M; ++n)
      if (cur[n] >= cap || cur[n] <= -cap) tau_overflow(n);
    parallel_chunks(M, 4096, [&](std::size_t, std::size_t b, std::size_t e_end) {
      for (std::uint64_t n = b; n < e_end; ++n) {
        int128 acc = 0;
        for (auto [e, v] : cube) {
          if (e > n) break;
          acc += cur[n - e] * v;
        }
        next[n] = acc;
      }
    });
    cur.swap(next);
  }
  for (std::uint64_t n = 1; n <= N; ++n) tau[n] = cur[n - 1];
  return tau;
}

CoefficientSeries delta_coefficients(std::uint64_t N) {
  if (N == 0) return CoefficientSeries("delta", 2, Normalization::analytic, {});
  const auto tau = ramanujan_tau(N);
  std::vector<double> c(N + 1, 0.0);
  std::vector<char> composite(N + 1, 0);
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t j = p * p; j <= N; j += p) composite[j] = 1;
    const long double a =
        static_cast<long double>(tau[p]) / std::pow(static_cast<long double>(p), 5.5L);
    if (std::fabs(a) > 2.0L + 1e-12L)
      throw std::logic_error("Deligne bound violated at p=" + std::to_string(p));
    const long double lp = std::log(static_cast<long double>(p));
    long double s_prev = 2.0L, s = a;  // power sums s_0, s_1
    for (std::uint64_t q = p;; q *= p) {
      c[q] = static_cast<double>(lp * s);
      const long double s_next = a * s - s_prev;
      s_prev = s;
      s = s_next;
      if (q > N / p) break;
    }
  }
  return CoefficientSeries("delta", 2, Normalization::analytic, std::move(c));
}

CoefficientSeries build_series(const std::string& label, std::uint64_t N) {
  if (label == "zeta") return sieve_von_mangoldt(N);
  if (label == "delta") return delta_coefficients(N);
  throw ParameterError("unknown series label '" + label + "' (expected zeta or delta)");
}

double chebyshev_psi(const CoefficientSeries& series, double x) {
  if (!(x <= static_cast<double>(series.limit())))
    throw RangeError("x = " + std::to_string(x) + " exceeds series limit " +
                     std::to_string(series.limit()));
  if (x < 2) return 0.0;
  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  return deterministic_reduce(
             n_max + 1, std::size_t{1} << 16, CompensatedSum{},
             [&](std::size_t b, std::size_t e) {
               CompensatedSum s;
               for (std::size_t n = b; n < e; ++n) s.add(series[n]);
               return s;
             },
             [](CompensatedSum a, const CompensatedSum& b) {
               a.merge(b);
               return a;
             })
      .value();
}

double short_interval_sum(const CoefficientSeries& series, double x, double H) {
  if (!(H > 0)) throw ParameterError("H must be positive");
  if (!(x + H <= static_cast<double>(series.limit())))
    throw RangeError("x + H exceeds series limit " + std::to_string(series.limit()));
  const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(x)));
  const auto hi = static_cast<std::uint64_t>(std::max(0.0, std::floor(x + H)));
  CompensatedSum s;
  for (std::uint64_t n = lo + 1; n <= hi; ++n) s.add(series[n]);
  return s.value();
}

PrefixTable::PrefixTable(const CoefficientSeries& series)
    : hi_(series.limit() + 1, 0.0), lo_(series.limit() + 1, 0.0) {
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= series.limit(); ++n) {
    s.add(series[n]);
    hi_[n] = s.high();
    lo_[n] = s.low();
  }
}

namespace {

struct Moments {
  CompensatedSum sum, sq;
  std::uint64_t count = 0;
};

}  // namespace

VarianceResult empirical_variance(const CoefficientSeries& series, double X, double H,
                                  double step) {
  if (!(step > 0)) throw ParameterError("step must be positive");
  if (!(H > 0)) throw ParameterError("H must be positive");
  if (!(X >= 1)) throw ParameterError("X must be at least 1");
  if (!(X + H <= static_cast<double>(series.limit())))
    throw RangeError("X + H exceeds series limit " + std::to_string(series.limit()));

  const PrefixTable prefix(series);
  const double centre = series.pole_order() == 1 ? H : 0.0;
  const auto samples = static_cast<std::uint64_t>(std::floor((X - 1) / step)) + 1;

  const Moments m = deterministic_reduce(
      samples, std::size_t{1} << 15, Moments{},
      [&](std::size_t b, std::size_t e) {
        Moments part;
        for (std::size_t k = b; k < e; ++k) {
          const double x = 1.0 + static_cast<double>(k) * step;
          const auto a = static_cast<std::uint64_t>(std::floor(x));
          const auto z = static_cast<std::uint64_t>(std::floor(x + H));
          const double w = prefix.between(a, z);
          part.sum.add(w);
          part.sq.add((w - centre) * (w - centre));
          ++part.count;
        }
        return part;
      },
      [](Moments acc, const Moments& p) {
        acc.sum.merge(p.sum);
        acc.sq.merge(p.sq);
        acc.count += p.count;
        return acc;
      });

  VarianceResult r;
  r.samples = m.count;
  r.step = step;
  r.mean = m.sum.value() / static_cast<double>(m.count);
  r.variance = m.sq.value() / static_cast<double>(m.count);
  return r;
}

double lambda_sq_window_average(const CoefficientSeries& series, double X, double H) {
  if (!(H > 0)) throw ParameterError("H must be positive");
  if (!(X >= 1)) throw ParameterError("X must be at least 1");
  if (!(X + H <= static_cast<double>(series.limit())))
    throw RangeError("X + H exceeds series limit " + std::to_string(series.limit()));
  // Integer x in [1, X] sees n exactly when n - H <= x <= n - 1.
  const auto x_hi = static_cast<std::int64_t>(std::floor(X));
  const auto n_hi = static_cast<std::uint64_t>(std::floor(static_cast<double>(x_hi) + H));
  CompensatedSum s;
  for (std::uint64_t n = 2; n <= n_hi; ++n) {
    const double c = series[n];
    if (c == 0.0) continue;
    const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                  std::ceil(static_cast<double>(n) - H)));
    const auto hi = std::min<std::int64_t>(x_hi, static_cast<std::int64_t>(n) - 1);
    if (hi >= lo) s.add(c * c * static_cast<double>(hi - lo + 1));
  }
  return s.value() / X;
}

DefectResult prime_power_defect(const CoefficientSeries& series, double x) {
  if (!(x <= static_cast<double>(series.limit())))
    throw RangeError("x exceeds series limit " + std::to_string(series.limit()));
  DefectResult r;
  const int d = series.degree();
  r.reference = std::pow(x, 1.0 - 1.0 / (d * d + 1.0));
  if (x < 4) return r;
  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  CompensatedSum s;
  for (std::uint64_t p = 2; p * p <= n_max; ++p) {
    // p is prime iff c(p) is nonzero for zeta; for delta use the zeta sieve
    // criterion directly so that a vanishing tau(p) would not hide p.
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p * p; q <= n_max; q *= p) {
      if (d == 1) {
        s.add(lp);
      } else {
        // |a(p^k)|^2 as the Rankin-Selberg surrogate; c(p^k) = log p * a(p^k).
        const double a = series[q] / lp;
        s.add(a * a * lp);
      }
      if (q > n_max / p) break;
    }
  }
  r.defect = s.value();
  return r;
}

namespace {

constexpr double kChebyshevConstant = 1.04;  // psi(t) < 1.03883 t for all t > 0

double s1_tail_bound(double x, int d, double M) {
  return x * x * d * d * kChebyshevConstant * (2 * std::log(M) + 1) / M;
}

double s0_tail_bound(double x, int d, double M) {
  const double L = std::log(M);
  return x * x * d * d * kChebyshevConstant * (L / (M * M) + (2 * L + 1) / (4 * M * M));
}

}  // namespace

std::uint64_t bn_truncation_bound(double x, int degree, double tail_epsilon) {
  if (!(tail_epsilon > 0)) throw ParameterError("tail_epsilon must be positive");
  if (!(x >= 1)) throw ParameterError("x must be at least 1");
  double lo = std::max(3.0, std::floor(x) + 1);
  if (s1_tail_bound(x, degree, lo) <= tail_epsilon) return static_cast<std::uint64_t>(lo);
  double hi = lo;
  while (s1_tail_bound(x, degree, hi) > tail_epsilon) {
    hi *= 2;
    if (hi > 1e18) throw ResourceError("b(n) tail cannot be certified below the requested epsilon");
  }
  while (hi - lo > 1) {
    const double mid = std::floor((lo + hi) / 2);
    (s1_tail_bound(x, degree, mid) <= tail_epsilon ? hi : lo) = mid;
  }
  return static_cast<std::uint64_t>(hi);
}

BnWeights bn_weights(const CoefficientSeries& series, double x, double tail_epsilon) {
  const int d = series.degree();
  const std::uint64_t M = bn_truncation_bound(x, d, tail_epsilon);
  if (M > series.limit())
    throw ResourceError("insufficient table: b(n) tail at x=" + std::to_string(x) +
                        " needs M = " + std::to_string(M) + " but series limit is " +
                        std::to_string(series.limit()));
  BnWeights w;
  w.x = x;
  w.degree = d;
  w.truncation_bound = M;
  CompensatedSum s0, s1;
  for (std::uint64_t n = 2; n <= M; ++n) {
    const double c = series[n];
    if (c == 0.0) continue;
    const double nd = static_cast<double>(n);
    const double b = nd <= x ? c * std::sqrt(nd) / x : x * c / (nd * std::sqrt(nd));
    w.values.emplace_back(n, b);
    s0.add(b * b);
    s1.add(nd * b * b);
  }
  w.s0 = s0.value();
  w.s1 = s1.value();
  w.s0_tail = s0_tail_bound(x, d, static_cast<double>(M));
  w.tail_estimate = s1_tail_bound(x, d, static_cast<double>(M));
  return w;
}

}  // namespace shortlab::arith
