#include "shortlab/wp_integrals.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"

namespace shortlab::wp {

IntervalFamily::IntervalFamily(double x, double H) : x_(x), H_(H) {
  if (!(x > 1)) throw ParameterError("x must exceed 1");
  if (!(H > 0)) throw ParameterError("H must be positive");
  if (!std::isfinite(x) || !std::isfinite(H)) throw ParameterError("x and H must be finite");
  A_ = std::log(x);
  width_ = std::log1p(H / x);
}

Interval IntervalFamily::interval(std::uint64_t n) const {
  if (n == 0) throw ParameterError("interval index starts at 1");
  const double nd = static_cast<double>(n);
  return {A_ / nd, B() / nd};
}

namespace {

// The integrals are written around the midpoint c and half-width h of [a, b],
// l = c + u with |u| <= h. Expanding cosh(c + u) and dropping odd parts gives
// sums of nonnegative terms built from these helpers.

// (sinh h - h) / h
double sinhc_m1(double h) {
  if (h >= 1) return (std::sinh(h) - h) / h;
  const double h2 = h * h;
  double term = h2 / 6, sum = 0;
  for (int k = 1; term > 1e-18 * sum || sum == 0; ++k) {
    sum += term;
    term *= h2 / ((2.0 * k + 2) * (2.0 * k + 3));
    if (k > 40) break;
  }
  return sum;
}

// h cosh h - sinh h = sum_{k>=1} 2k h^{2k+1} / (2k+1)!
double odd_moment(double h) {
  if (h >= 1) return h * std::cosh(h) - std::sinh(h);
  const double h2 = h * h;
  double power = h * h2 / 6;  // h^3 / 3!
  double sum = 0;
  for (int k = 1; k < 40; ++k) {
    const double term = 2.0 * k * power;
    sum += term;
    if (term <= 1e-18 * sum) break;
    power *= h2 / ((2.0 * k + 2) * (2.0 * k + 3));
  }
  return sum;
}

// Q(h) - 2h^3/3 where Q(h) = int_{-h}^{h} u^2 cosh u du,
// equal to 2 sum_{k>=1} h^{2k+3} / ((2k)! (2k+3)).
double even_moment_excess(double h) {
  if (h >= 2) return 2 * ((h * h + 2) * std::sinh(h) - 2 * h * std::cosh(h)) - 2 * h * h * h / 3;
  const double h2 = h * h;
  double power = h2 / 2;  // h^{2k} / (2k)! at k = 1
  double sum = 0;
  for (int k = 1; k < 60; ++k) {
    const double term = power * h * h2 / (2.0 * k + 3);
    sum += term;
    if (term <= 1e-18 * sum) break;
    power *= h2 / ((2.0 * k + 1) * (2.0 * k + 2));
  }
  return 2 * sum;
}

double sinh_half_sq(double c) {
  const double s = std::sinh(c / 2);
  return s * s;
}

double j0(double c, double h) {
  const double s1 = sinhc_m1(h);
  return 4 * h * (2 * sinh_half_sq(c) * (1 + s1) + s1);
}

double j1(double c, double h) { return c * j0(c, h) + 4 * std::sinh(c) * odd_moment(h); }

double j2(double c, double h) {
  const double qx = even_moment_excess(h);
  const double q = qx + 2 * h * h * h / 3;
  return c * c * j0(c, h) + 8 * c * std::sinh(c) * odd_moment(h) +
         4 * sinh_half_sq(c) * q + 2 * qx;
}

void check_interval(double a, double b) {
  if (!(a >= 0)) throw ParameterError("integration bounds must be nonnegative");
  if (!(b >= a)) throw ParameterError("integration bounds must satisfy a <= b");
}

// Midpoint and half-width of the shell I(n).
std::pair<double, double> shell(const IntervalFamily& f, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  return {(f.A() + f.width() / 2) / nd, f.width() / (2 * nd)};
}

double cube_gap(const IntervalFamily& f) {
  // B^3 - A^3 without subtracting nearly equal cubes.
  const double A = f.A(), B = f.B();
  return f.width() * (A * A + A * B + B * B);
}

double quartic_gap(const IntervalFamily& f) {
  const double A = f.A(), B = f.B();
  return f.width() * (A + B) * (A * A + B * B);
}

// For l <= 1, (2 sinh(l/2))^2 <= kShellConstant * l^2.
constexpr double kShellConstant = 1.0862;
constexpr std::uint64_t kMaxShells = 2'000'000'000ULL;

std::uint64_t expectation_cutoff(const IntervalFamily& f, double eps, double& bound) {
  const double gap = cube_gap(f);
  double n = std::max(std::ceil(f.B()), 10.0);
  if (gap / (2 * n * n) > eps) n = std::ceil(std::sqrt(gap / (2 * eps)));
  if (n > static_cast<double>(kMaxShells))
    throw ResourceError("expectation tail needs n_max = " + std::to_string(n) +
                        "; raise tail_epsilon");
  bound = gap / (2 * n * n);
  return static_cast<std::uint64_t>(n);
}

}  // namespace

double sinh_sq_integral(double a, double b) {
  check_interval(a, b);
  return j0((a + b) / 2, (b - a) / 2);
}

double sinh_sq_moment_integral(double a, double b) {
  check_interval(a, b);
  return j1((a + b) / 2, (b - a) / 2);
}

double sinh_sq_second_moment_integral(double a, double b) {
  check_interval(a, b);
  return j2((a + b) / 2, (b - a) / 2);
}

double moment_antiderivative(double l) {
  return (l - 1) * std::exp(l) - l * l - (l + 1) * std::exp(-l);
}

bool intervals_disjoint(const IntervalFamily& family, std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n <= m) throw ParameterError("intervals_disjoint requires 1 <= m < n");
  // B/n < A/m  <=>  m (B - A) < (n - m) A
  const long double lhs = static_cast<long double>(m) * family.width();
  const long double rhs = static_cast<long double>(n - m) * family.A();
  return lhs < rhs;
}

WPIntegralResult wp_expectation(double x, double H, double tail_epsilon) {
  if (!(tail_epsilon > 0)) throw ParameterError("tail_epsilon must be positive");
  const IntervalFamily f(x, H);
  WPIntegralResult r;
  r.n_max = expectation_cutoff(f, tail_epsilon, r.truncation_bound);
  r.breakdown.resize(r.n_max);
  parallel_chunks(r.n_max, 1 << 14, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto [c, h] = shell(f, i + 1);
      r.breakdown[i] = {i + 1, j0(c, h)};
    }
  });
  CompensatedSum tail;
  for (std::size_t i = 1; i < r.breakdown.size(); ++i) tail.add(r.breakdown[i].second);
  r.main_term = r.breakdown[0].second;
  r.tail = tail.value();
  CompensatedSum total(r.main_term);
  total.merge(tail);
  r.value = total.value();
  r.budget = r.truncation_bound + 32 * DBL_EPSILON * r.value;
  r.normalized = r.value / H;
  return r;
}

WPIntegralResult wp_diag_variance(double x, double H, double tail_epsilon) {
  if (!(tail_epsilon > 0)) throw ParameterError("tail_epsilon must be positive");
  const IntervalFamily f(x, H);
  const double A = f.A(), B = f.B(), delta = f.width();
  WPIntegralResult r;

  // Diagonal pairs (n, n). For n > N: l <= 1 on I(n), so
  // 2 J1(I(n)) <= 2 c (B^4 - A^4) / (4 n^4), summed: c (B^4 - A^4) / (6 N^3).
  const double q4 = quartic_gap(f);
  double N = std::max(std::ceil(B), 10.0);
  const double diag_target = tail_epsilon / 2;
  if (kShellConstant * q4 / (6 * N * N * N) > diag_target)
    N = std::ceil(std::cbrt(kShellConstant * q4 / (6 * diag_target)));
  if (N > static_cast<double>(kMaxShells))
    throw ResourceError("variance diagonal tail needs n_max = " + std::to_string(N) +
                        "; raise tail_epsilon");
  r.n_max = static_cast<std::uint64_t>(N);
  const double diag_bound = kShellConstant * q4 / (6 * N * N * N);

  r.breakdown.resize(r.n_max);
  parallel_chunks(r.n_max, 1 << 14, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto [c, h] = shell(f, i + 1);
      r.breakdown[i] = {i + 1, 2 * j1(c, h)};
    }
  });
  CompensatedSum diag_rest;
  for (std::size_t i = 1; i < r.breakdown.size(); ++i) diag_rest.add(r.breakdown[i].second);
  r.main_term = r.breakdown[0].second;

  // Adjacent shells cannot meet while m < x log x / H. Assert it rather than
  // assume it; the predicate is monotone in n, so n = m + 1 suffices.
  const double disjoint_range = x * A / H;
  constexpr std::uint64_t kDisjointCap = 50'000'000;
  const std::uint64_t disjoint_last =
      disjoint_range > static_cast<double>(kDisjointCap)
          ? kDisjointCap
          : static_cast<std::uint64_t>(std::ceil(disjoint_range)) - 1;
  for (std::uint64_t m = 1; m <= disjoint_last; ++m) {
    if (!intervals_disjoint(f, m, m + 1))
      throw std::logic_error("shells I(" + std::to_string(m) + ") and I(" +
                             std::to_string(m + 1) + ") intersect inside the disjointness range");
  }
  r.disjointness_checks = disjoint_last;

  // Off-diagonal pairs m < n meet iff m delta >= (n - m) A. The first m with
  // any partner is m0 = ceil(A / delta).
  double off_bound = 0;
  CompensatedSum off;
  const long double m0_real = std::ceil(static_cast<long double>(A) / delta);
  if (m0_real < 4.0e15L) {
    std::uint64_t m0 = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m0_real));
    while (m0 > 1 && !intervals_disjoint(f, m0 - 1, m0)) --m0;
    while (intervals_disjoint(f, m0, m0 + 1)) ++m0;

    // Pairs with m > M: at most m delta / A + 1 partners, each at most
    // c B^3 delta / m^4, counted twice (m < n and n < m) with the factor 2.
    auto off_tail = [&](double M) {
      return 4 * kShellConstant * B * B * B * delta *
             (delta / (2 * A * M * M) + 1 / (3 * M * M * M));
    };
    double M = std::max<double>(static_cast<double>(m0) + 64, std::ceil(B));
    while (off_tail(M) > tail_epsilon / 2) M *= 1.5;
    const auto m_last = static_cast<std::uint64_t>(std::ceil(M));
    off_bound = off_tail(static_cast<double>(m_last));

    struct Part {
      CompensatedSum sum;
      std::uint64_t pairs = 0;
    };
    const std::uint64_t count = m_last - m0 + 1;
    const Part p = deterministic_reduce(
        count, 4096, Part{},
        [&](std::size_t b, std::size_t e) {
          Part part;
          for (std::size_t i = b; i < e; ++i) {
            const std::uint64_t m = m0 + i;
            const long double md = static_cast<long double>(m);
            for (std::uint64_t n = m + 1; !intervals_disjoint(f, m, n); ++n) {
              const long double nd = static_cast<long double>(n);
              // [A/m, B/n], width (m delta - (n - m) A) / (m n)
              const long double lo = A / md;
              const long double w =
                  (md * delta - (nd - md) * static_cast<long double>(A)) / (md * nd);
              const double h = static_cast<double>(w / 2);
              const double c = static_cast<double>(lo + w / 2);
              part.sum.add(4 * j1(c, h));
              ++part.pairs;
            }
          }
          return part;
        },
        [](Part a, const Part& b) {
          a.sum.merge(b.sum);
          a.pairs += b.pairs;
          return a;
        });
    off = p.sum;
    r.intersecting_pairs = p.pairs;
  }

  r.diagonal = r.main_term + diag_rest.value();
  r.off_diagonal = off.value();
  CompensatedSum tail = diag_rest;
  tail.merge(off);
  r.tail = tail.value();
  CompensatedSum total(r.main_term);
  total.merge(tail);
  r.value = total.value();
  r.truncation_bound = diag_bound + off_bound;
  r.budget = r.truncation_bound + 32 * DBL_EPSILON * r.value;
  r.normalized = r.value / (2 * H * A);
  return r;
}

OffDiagIdentity wp_offdiag_identity(double x, double H) {
  const IntervalFamily f(x, H);
  double bound = 0;
  const std::uint64_t n_max = expectation_cutoff(f, kDefaultTailEpsilon, bound);

  // One factor of the g -> infinity limit of the off-diagonal term:
  // int N(l) (2 sinh(l/2))^2 dl, where N(l) counts shells containing l.
  // Evaluated piecewise between consecutive shell endpoints.
  // Endpoints in extended precision: in double their rounding error is
  // ulp(A)/n against shell widths log1p(H/x)/n, too coarse when H << x.
  const long double A = std::log(static_cast<long double>(x));
  const long double B = A + std::log1p(static_cast<long double>(H) / x);
  std::vector<long double> cuts;
  cuts.reserve(2 * n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    cuts.push_back(A / n);
    cuts.push_back(B / n);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  CompensatedSum factor;
  const long double last_n = static_cast<long double>(n_max);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double lo = cuts[i], hi = cuts[i + 1];
    const long double mid = (lo + hi) / 2;
    // n with A/n <= mid <= B/n
    const long double first = std::max(1.0L, std::ceil(A / mid));
    const long double last = std::min(last_n, std::floor(B / mid));
    const long double covering = last - first + 1;
    if (covering > 0)
      factor.add(static_cast<double>(covering) *
                 j0(static_cast<double>(mid), static_cast<double>((hi - lo) / 2)));
  }

  OffDiagIdentity r;
  const double I = factor.value();
  r.off_diag_limit = I * I;
  const double e = wp_expectation(x, H).value;
  r.expectation_squared = e * e;
  r.abs_diff = std::fabs(r.off_diag_limit - r.expectation_squared);
  return r;
}

GenusCorrection genus_corrected_expectation(double x, double H, double g, double c) {
  if (!(g > 2)) throw ParameterError("genus must exceed 2");
  if (!(c >= 0)) throw ParameterError("correction constant c must be nonnegative");
  const IntervalFamily f(x, H);
  double bound = 0;
  const std::uint64_t n_max = expectation_cutoff(f, kDefaultTailEpsilon, bound);
  CompensatedSum second;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto [mid, h] = shell(f, n);
    second.add(j2(mid, h));
  }
  GenusCorrection r;
  r.g = g;
  r.c = c;
  r.expectation = wp_expectation(x, H).value;
  r.excess = c / g * second.value();
  r.value = r.expectation + r.excess;
  return r;
}

}  // namespace shortlab::wp
