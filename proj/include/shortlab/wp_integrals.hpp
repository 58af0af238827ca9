#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace shortlab::wp {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// A = log x, B = log(x + H) and the shells I(n) = [A/n, B/n].
class IntervalFamily {
 public:
  IntervalFamily(double x, double H);

  double x() const { return x_; }
  double H() const { return H_; }
  double A() const { return A_; }
  double B() const { return A_ + width_; }
  // B - A = log1p(H/x), kept separately because B - A loses digits when H << x.
  double width() const { return width_; }

  Interval interval(std::uint64_t n) const;
  double length(std::uint64_t n) const { return width_ / static_cast<double>(n); }

 private:
  double x_, H_, A_, width_;
};

// Integrals of (2 sinh(l/2))^2 = e^l - 2 + e^-l against 1, l and l^2 over [a, b].
// Every term of the evaluation is nonnegative, so there is no cancellation for
// short intervals or small l.
double sinh_sq_integral(double a, double b);
double sinh_sq_moment_integral(double a, double b);
double sinh_sq_second_moment_integral(double a, double b);

// G(l) = (l - 1) e^l - l^2 - (l + 1) e^-l, an antiderivative of l (2 sinh(l/2))^2.
double moment_antiderivative(double l);

// True iff I(n) lies strictly left of I(m), i.e. B/n < A/m. Requires m < n.
bool intervals_disjoint(const IntervalFamily& family, std::uint64_t m, std::uint64_t n);

struct WPIntegralResult {
  double value = 0;
  double main_term = 0;
  double tail = 0;
  std::vector<std::pair<std::uint64_t, double>> breakdown;
  double budget = 0;

  double normalized = 0;     // value / H, or value / (2 H log x) for the variance
  std::uint64_t n_max = 0;   // last shell summed explicitly
  double truncation_bound = 0;
  // Variance only.
  double diagonal = 0;
  double off_diagonal = 0;
  std::uint64_t intersecting_pairs = 0;
  std::uint64_t disjointness_checks = 0;
};

constexpr double kDefaultTailEpsilon = 1e-12;

WPIntegralResult wp_expectation(double x, double H, double tail_epsilon = kDefaultTailEpsilon);
WPIntegralResult wp_diag_variance(double x, double H, double tail_epsilon = kDefaultTailEpsilon);

struct OffDiagIdentity {
  double off_diag_limit = 0;
  double expectation_squared = 0;
  double abs_diff = 0;
};

OffDiagIdentity wp_offdiag_identity(double x, double H);

struct GenusCorrection {
  double value = 0;
  double expectation = 0;
  double excess = 0;
  double g = 0;
  double c = 0;
};

GenusCorrection genus_corrected_expectation(double x, double H, double g, double c = 1.0);

}  // namespace shortlab::wp
