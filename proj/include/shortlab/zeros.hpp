#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shortlab/arith.hpp"
#include "shortlab/form_factor.hpp"

namespace shortlab::zeros {

// Positive ordinates of critical-line zeros, strictly increasing, complete
// (no zero missing) up to complete_up_to.
struct ZeroSet {
  std::string label;
  int degree = 1;
  std::vector<double> ordinates;
  double complete_up_to = 0;

  std::size_t size() const { return ordinates.size(); }
  // Leading ordinates not exceeding T.
  std::span<const double> up_to(double T) const;
};

ZeroSet make_zero_set(std::string label, int degree, std::vector<double> ordinates,
                      double completeness);
ZeroSet load_zeros(const std::filesystem::path& path, int degree, double completeness);

std::uint64_t counting_function(const ZeroSet& zeros, double T);
double rvm_density(int degree, double T);

// w(u) = 4 / (4 + u^2), the Fourier transform of e^{-2|tau|}.
inline double pair_weight(double u) { return 4.0 / (4.0 + u * u); }

double form_factor_direct(const ZeroSet& zeros, double X, double T);
// Same double sum over ordered pairs in complex arithmetic; the imaginary
// part measures the symmetry defect.
std::complex<double> form_factor_complex(const ZeroSet& zeros, double X, double T);

struct SmoothedResult {
  double value = 0;
  double grid_step = 0;
  double span = 0;
  double alias_bound = 0;       // periodization error of the trapezoid rule
  double truncation_bound = 0;  // dropped |tau| > span
};

constexpr double kDefaultSmoothedTolerance = 1e-4;

// Largest trapezoid step whose aliasing error is below tolerance * N.
double smoothed_step_for(std::span<const double> ordinates, double tolerance);
// Smallest span whose tail is below tolerance * N.
double smoothed_span_for(std::size_t count, double tolerance);

SmoothedResult form_factor_smoothed(const ZeroSet& zeros, double X, double T, double grid_step,
                                    double span,
                                    double tolerance = kDefaultSmoothedTolerance);

enum class KNormalization {
  counted,  // K = F / N(T)
  density,  // K = F / (d T log T / 2 pi)
};

FormFactorCurve form_factor_curve(const ZeroSet& zeros, std::span<const double> alphas, double T,
                                  KNormalization normalization = KNormalization::density);

struct ExplicitFormulaResult {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double gap_budget = 0;
  double zero_cutoff = 0;        // Gamma: zeros with |gamma - t| <= Gamma used
  double zero_tail_bound = 0;
  double dirichlet_tail_bound = 0;
  double o_term_budget = 0;      // O-term budget, constant 10
  std::complex<double> pole_term;
  bool assertable = false;       // degree >= 2
};

constexpr double kExplicitFormulaConstant = 10.0;

ExplicitFormulaResult explicit_formula_residual(const ZeroSet& zeros,
                                                const arith::CoefficientSeries& series, double x,
                                                double t, double sigma = 1.5);

// int_0^T |(2 sigma - 1) sum_gamma x^{i gamma} / ((sigma - 1/2)^2 + (t - gamma)^2)|^2 dt
// by the trapezoid rule; zeros of both signs within the completeness range.
double zero_side_mean_square(const ZeroSet& zeros, double x, double T, double sigma,
                             double step);

struct MeanValueCheck {
  double integral = 0;
  double main = 0;         // T * S0
  double error_bound = 0;  // 3 * S1
  double s0 = 0;
  double s1 = 0;
  double step = 0;
};

constexpr std::size_t kMeanValueSupportLimit = 2000;

double mv_step_limit(const arith::BnWeights& weights);
MeanValueCheck mv_meanvalue_check(const arith::BnWeights& weights, double T, double quad_step);

}  // namespace shortlab::zeros
