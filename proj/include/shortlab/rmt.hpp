#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shortlab/form_factor.hpp"

namespace shortlab::rmt {

enum class Ensemble { CUE, COE, GUE, GOE, Poisson };

std::string to_string(Ensemble kind);
Ensemble parse_ensemble(const std::string& name);

struct EnsembleSpec {
  Ensemble kind = Ensemble::CUE;
  std::size_t dimension = 2;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
};

struct SpectrumSample {
  std::vector<double> points;  // increasing, unit mean spacing on [0, n)
  std::size_t count() const { return points.size(); }
};

// Counter-based generator: draw i of stream s is a fixed function of
// (seed, s, i), so samples can be produced in any order or thread.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  double uniform();  // [0, 1)
  double normal();
  double gamma(double shape);
  double chi(double dof);

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0;
};

void validate(const EnsembleSpec& spec);

SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::uint64_t sample_index);

// Eigenphases in [0, 2 pi) of the CMV matrix with the given Verblunsky
// coefficients (|a_k| < 1 for k < n-1, |a_{n-1}| = 1), sorted.
std::vector<double> cmv_eigenphases(std::span<const std::complex<double>> verblunsky);

// Verblunsky coefficients of the circular beta ensemble (beta = 1 or 2).
std::vector<std::complex<double>> circular_verblunsky(std::size_t n, double beta,
                                                      CounterRng& rng);

// Semicircle cumulative distribution on [-1, 1].
double semicircle_cdf(double y);

constexpr double kDefaultDensityScale = 1000.0;

// Unfolded points are treated as ordinates with density rho = density_scale * n,
// so log X = 2 pi alpha rho and the pair weight is w(dx / rho). alpha is
// snapped to the nearest multiple of 1/n, the natural frequencies of the circle.
FormFactorCurve ensemble_form_factor(const EnsembleSpec& spec, std::span<const double> alphas,
                                     double density_scale = kDefaultDensityScale);

// Per-spectrum F / N at the given snapped alphas.
std::vector<double> spectrum_form_factor(std::span<const double> points, double length,
                                         std::span<const double> alphas, double density_scale);

double snap_alpha(double alpha, std::size_t n);

}  // namespace shortlab::rmt
