#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace shortlab {

struct FormFactorPoint {
  double alpha = 0;
  double log_X = 0;
  double F = 0;
  double K = 0;
  double stderr_K = 0;  // zero for a single spectrum
};

// Estimated K(alpha) on a grid, with the height and normalization used.
struct FormFactorCurve {
  std::string label;
  double T = 0;
  std::uint64_t N_T = 0;
  double normalizer = 0;  // the denominator actually used for K
  int degree = 1;
  std::uint64_t samples = 1;
  std::vector<FormFactorPoint> points;
};

// Least-squares slope through the origin over points with alpha <= alpha_max.
double early_slope(const FormFactorCurve& curve, double alpha_max);
double early_slope(std::span<const double> alphas, std::span<const double> values,
                   double alpha_max);

// The default alpha grid 0.05, 0.10, ..., 0.95.
std::vector<double> default_alpha_grid();

}  // namespace shortlab
