// F(X, T) = int e^{-2|tau|} |S(log X + tau)|^2 d tau,  S(u) = sum_gamma e^{i gamma u}.
//
// The integral is replaced by the bi-infinite trapezoid sum with step h,
// truncated at |tau| <= span. By Poisson summation the untruncated sum equals
// the double sum with w replaced by its periodization sum_m w(u + 2 pi m / h),
// so the step only has to push the first alias beyond the ordinate spread.
//
// S on the grid log X + k h, |k| <= K, is a type-1 nonuniform FFT in the
// nodes gamma h (mod 2 pi), done by Gaussian gridding (Greengard and Lee).

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>

#include "shortlab/errors.hpp"
#include "shortlab/summation.hpp"
#include "shortlab/zeros.hpp"

namespace shortlab::zeros {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSpread = 12;            // half-width of the Gaussian in grid cells
constexpr double kOversample = 2.0;
constexpr double kNufftRelError = 1e-10;  // per |S|^2, relative to N^2

std::size_t fft_friendly(std::size_t n) {
  for (;; ++n) {
    std::size_t m = n;
    for (std::size_t p : {2, 3, 5})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

// f[k + K] = sum_j c_j e^{i k x_j}, |k| <= K.
std::vector<std::complex<double>> nufft_type1(const std::vector<std::complex<double>>& c,
                                              const std::vector<double>& x, std::size_t K) {
  const std::size_t modes = 2 * K + 1;
  const std::size_t grid = fft_friendly(static_cast<std::size_t>(kOversample * modes));
  const double md = static_cast<double>(modes);
  const double tau = kPi * kSpread / (md * md * kOversample * (kOversample - 0.5));
  const double dx = 2 * kPi / static_cast<double>(grid);

  std::unique_ptr<fftw_complex[], FftwFree> buf(fftw_alloc_complex(grid));
  std::fill_n(&buf[0][0], 2 * grid, 0.0);
  const auto gi = static_cast<long long>(grid);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto m0 = static_cast<long long>(std::floor(x[j] / dx));
    for (long long l = -kSpread + 1; l <= kSpread; ++l) {
      const long long m = m0 + l;
      const double d = static_cast<double>(m) * dx - x[j];
      const double g = std::exp(-d * d / (4 * tau));
      const long long idx = ((m % gi) + gi) % gi;
      buf[idx][0] += g * c[j].real();
      buf[idx][1] += g * c[j].imag();
    }
  }

  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(grid), buf.get(), buf.get(), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  if (!plan) throw ResourceError("FFTW could not plan a transform of size " + std::to_string(grid));
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  std::vector<std::complex<double>> f(modes);
  const double norm = std::sqrt(kPi / tau) / static_cast<double>(grid);
  for (std::size_t i = 0; i < modes; ++i) {
    const long long k = static_cast<long long>(i) - static_cast<long long>(K);
    const auto idx = static_cast<std::size_t>(((k % gi) + gi) % gi);
    const double kd = static_cast<double>(k);
    const double scale = norm * std::exp(kd * kd * tau);
    f[i] = {scale * buf[idx][0], scale * buf[idx][1]};
  }
  return f;
}

double alias_bound(double count, double spread, double h) {
  const double P = 2 * kPi / h;
  if (P <= spread) return std::numeric_limits<double>::infinity();
  return count * count * (8 / ((P - spread) * (P - spread)) + 8 / (P * (P - spread)));
}

double truncation_bound(double count, double h, double span) {
  const auto K = std::floor(span / h);
  // 2 h sum_{k > K} e^{-2 k h}
  return count * count * 2 * h * std::exp(-2 * (K + 1) * h) / (-std::expm1(-2 * h));
}

}  // namespace

double smoothed_step_for(std::span<const double> ordinates, double tolerance) {
  if (ordinates.empty()) throw ParameterError("no ordinates");
  if (!(tolerance > 0)) throw ParameterError("tolerance must be positive");
  const double n = static_cast<double>(ordinates.size());
  const double spread = ordinates.back() - ordinates.front();
  // 8/y^2 + 8/(y (y + D)) <= 16 / y^2 <= tolerance / n, y = P - D.
  // Half the tolerance goes to aliasing.
  const double y = 4 / std::sqrt(tolerance / (2 * n));
  return std::min(0.05, 2 * kPi / (spread + y));
}

double smoothed_span_for(std::size_t count, double tolerance) {
  const double n = static_cast<double>(count);
  return std::max(8.0, 0.5 * std::log(2 * n / tolerance) + 0.5);
}

SmoothedResult form_factor_smoothed(const ZeroSet& zeros, double X, double T, double grid_step,
                                    double span, double tolerance) {
  if (!(X > 1)) throw ParameterError("X must exceed 1");
  if (!(T <= zeros.complete_up_to))
    throw RangeError("T exceeds the completeness height of the zero set");
  if (!(tolerance > 0)) throw ParameterError("tolerance must be positive");
  const auto g = zeros.up_to(T);
  if (g.empty()) throw ParameterError("no zeros at or below T");
  const double n = static_cast<double>(g.size());
  const double spread = g.back() - g.front();

  if (grid_step <= 0) grid_step = smoothed_step_for(g, tolerance);
  if (grid_step > 0.05) throw ParameterError("grid_step must not exceed 0.05");
  if (span < 8) throw ParameterError("span must be at least 8");
  span = std::max(span, smoothed_span_for(g.size(), tolerance));

  SmoothedResult r;
  r.grid_step = grid_step;
  r.span = span;
  r.alias_bound = alias_bound(n, spread, grid_step);
  r.truncation_bound = truncation_bound(n, grid_step, span);
  const double budget = r.alias_bound + r.truncation_bound + kNufftRelError * n * n;
  if (!(budget <= tolerance * n)) {
    throw ParameterError("smoothed form factor budget " + std::to_string(budget) +
                         " exceeds tolerance * N = " + std::to_string(tolerance * n) +
                         "; use grid_step <= " + std::to_string(smoothed_step_for(g, tolerance)));
  }

  const auto K = static_cast<std::size_t>(std::floor(span / grid_step));
  const double L = std::log(X);
  std::vector<std::complex<double>> c(g.size());
  std::vector<double> nodes(g.size());
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const long double ph = std::fmod(static_cast<long double>(g[j]) * L, two_pi);
    c[j] = {static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))};
    long double node = std::fmod(static_cast<long double>(g[j]) * grid_step, two_pi);
    if (node < 0) node += two_pi;
    nodes[j] = static_cast<double>(node);
  }
  const auto S = nufft_type1(c, nodes, K);

  CompensatedSum total;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double k = static_cast<double>(i) - static_cast<double>(K);
    total.add(std::exp(-2 * std::fabs(k) * grid_step) * std::norm(S[i]));
  }
  r.value = grid_step * total.value();
  return r;
}

}  // namespace shortlab::zeros
