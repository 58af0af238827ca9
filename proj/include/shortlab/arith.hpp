#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace shortlab::arith {

__extension__ typedef __int128 int128;

enum class Normalization { arithmetic, analytic };

// Tabulated c(n) = Lambda(n) a(n) for 1 <= n <= limit. Immutable once built.
class CoefficientSeries {
 public:
  CoefficientSeries() = default;
  // values[0] is unused and must be 0; values[n] = c(n).
  CoefficientSeries(std::string label, int degree, Normalization normalization,
                    std::vector<double> values);

  const std::string& label() const { return label_; }
  int degree() const { return degree_; }
  Normalization normalization() const { return normalization_; }
  std::uint64_t limit() const { return values_.empty() ? 0 : values_.size() - 1; }
  // 1 for the Riemann zeta function (pole at s = 1), 0 otherwise.
  int pole_order() const { return label_ == "zeta" ? 1 : 0; }

  double operator[](std::uint64_t n) const { return values_[n]; }
  std::span<const double> values() const { return values_; }

 private:
  std::string label_;
  int degree_ = 1;
  Normalization normalization_ = Normalization::arithmetic;
  std::vector<double> values_;
};

struct SieveOptions {
  std::size_t segment_length = std::size_t{1} << 18;
  std::size_t memory_budget_bytes = std::size_t{4} << 30;
};

CoefficientSeries sieve_von_mangoldt(std::uint64_t N, const SieveOptions& options = {});

// Ramanujan tau(n), n = 1..N, exact. Index 0 is unused.
std::vector<int128> ramanujan_tau(std::uint64_t N);
constexpr std::uint64_t kTauLimit = 1'000'000;

// Coefficients of -L'/L(s, Delta) in analytic normalization.
CoefficientSeries delta_coefficients(std::uint64_t N);

// Builds the series named by label ("zeta" or "delta").
CoefficientSeries build_series(const std::string& label, std::uint64_t N);

// Disk cache, one file per (label, N): cache_dir/<label>-<N>.bin.
std::filesystem::path cache_path(const std::filesystem::path& cache_dir, const std::string& label,
                                 std::uint64_t N);
void write_cache(const std::filesystem::path& file, const CoefficientSeries& series);
// Returns nullopt when the file is missing, truncated, or fails its checksum.
std::optional<CoefficientSeries> read_cache(const std::filesystem::path& file,
                                            const std::string& label, std::uint64_t N);
CoefficientSeries load_or_build(const std::filesystem::path& cache_dir, const std::string& label,
                                std::uint64_t N);

double chebyshev_psi(const CoefficientSeries& series, double x);
double short_interval_sum(const CoefficientSeries& series, double x, double H);

// Prefix sums stored as unevaluated (high, low) pairs, so window differences
// keep about twice double precision.
class PrefixTable {
 public:
  explicit PrefixTable(const CoefficientSeries& series);
  std::uint64_t limit() const { return hi_.size() - 1; }
  double at(std::uint64_t n) const { return hi_[n] + lo_[n]; }
  // Sum of c(k) over a < k <= b.
  double between(std::uint64_t a, std::uint64_t b) const {
    return (hi_[b] - hi_[a]) + (lo_[b] - lo_[a]);
  }

 private:
  std::vector<double> hi_;
  std::vector<double> lo_;
};

struct VarianceResult {
  double mean = 0;      // average of psi(x; H)
  double variance = 0;  // average of (psi(x; H) - m H)^2
  std::uint64_t samples = 0;
  double step = 1;
};

// Riemann sum over x in {1, 1 + step, ...} not exceeding X.
VarianceResult empirical_variance(const CoefficientSeries& series, double X, double H,
                                  double step = 1.0);

double lambda_sq_window_average(const CoefficientSeries& series, double X, double H);

struct DefectResult {
  double defect = 0;
  double reference = 0;  // x^{1 - 1/(d^2 + 1)}
};

DefectResult prime_power_defect(const CoefficientSeries& series, double x);

struct BnWeights {
  double x = 0;
  int degree = 1;
  std::vector<std::pair<std::uint64_t, double>> values;  // (n, b(n)), increasing n
  std::uint64_t truncation_bound = 0;                    // M
  double s0 = 0;          // sum |b(n)|^2 over n <= M
  double s1 = 0;          // sum n |b(n)|^2 over n <= M
  double s0_tail = 0;     // bound on the omitted part of s0
  double tail_estimate = 0;  // bound on the omitted part of s1
};

// Smallest M >= x for which the certified tail of S1 is below tail_epsilon.
std::uint64_t bn_truncation_bound(double x, int degree, double tail_epsilon);
BnWeights bn_weights(const CoefficientSeries& series, double x, double tail_epsilon);

}  // namespace shortlab::arith
