#include "shortlab/form_factor.hpp"

#include <cmath>

#include "shortlab/errors.hpp"

namespace shortlab {

double early_slope(std::span<const double> alphas, std::span<const double> values,
                   double alpha_max) {
  if (alphas.size() != values.size()) throw ParameterError("alpha and K grids differ in length");
  double sxy = 0, sxx = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0) || alphas[i] > alpha_max) continue;
    sxy += alphas[i] * values[i];
    sxx += alphas[i] * alphas[i];
    ++used;
  }
  if (used < 3)
    throw ParameterError("early_slope needs at least 3 grid points with alpha <= " +
                         std::to_string(alpha_max));
  return sxy / sxx;
}

double early_slope(const FormFactorCurve& curve, double alpha_max) {
  std::vector<double> a, k;
  for (const auto& p : curve.points) {
    a.push_back(p.alpha);
    k.push_back(p.K);
  }
  return early_slope(a, k, alpha_max);
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
  return grid;
}

}  // namespace shortlab
