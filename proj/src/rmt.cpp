#include "shortlab/rmt.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"

namespace shortlab::rmt {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Ensemble kind) {
  switch (kind) {
    case Ensemble::CUE: return "CUE";
    case Ensemble::COE: return "COE";
    case Ensemble::GUE: return "GUE";
    case Ensemble::GOE: return "GOE";
    case Ensemble::Poisson: return "Poisson";
  }
  return "?";
}

Ensemble parse_ensemble(const std::string& name) {
  std::string up;
  for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "CUE") return Ensemble::CUE;
  if (up == "COE") return Ensemble::COE;
  if (up == "GUE") return Ensemble::GUE;
  if (up == "GOE") return Ensemble::GOE;
  if (up == "POISSON") return Ensemble::Poisson;
  throw ParameterError("unknown ensemble '" + name + "' (expected CUE, COE, GUE, GOE, Poisson)");
}

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(mix(seed) ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2 * std::log(u1));
  spare_ = r * std::sin(2 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2 * kPi * u2);
}

// Marsaglia and Tsang; shapes below 1 are boosted by one and corrected.
double CounterRng::gamma(double shape) {
  if (!(shape > 0)) throw ParameterError("gamma shape must be positive");
  if (shape < 1) {
    const double u = 1.0 - uniform();
    return gamma(shape + 1) * std::pow(u, 1 / shape);
  }
  const double d = shape - 1.0 / 3, c = 1 / std::sqrt(9 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1 + c * x;
    } while (v <= 0);
    v = v * v * v;
    const double u = 1.0 - uniform();
    if (u < 1 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1 - v + std::log(v))) return d * v;
  }
}

double CounterRng::chi(double dof) { return std::sqrt(2 * gamma(dof / 2)); }

void validate(const EnsembleSpec& spec) {
  if (spec.dimension < 2) throw ParameterError("ensemble dimension must be at least 2");
  if (spec.samples < 1) throw ParameterError("ensemble needs at least one sample");
}

std::vector<std::complex<double>> circular_verblunsky(std::size_t n, double beta,
                                                      CounterRng& rng) {
  std::vector<std::complex<double>> a(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Theta_nu with nu = beta (n - k - 1) + 1: |a|^2 ~ Beta(1, (nu - 1) / 2),
    // argument uniform.
    const double b = beta * static_cast<double>(n - k - 1) / 2;
    const double r2 = -std::expm1(std::log1p(-rng.uniform()) / b);
    a[k] = std::polar(std::sqrt(r2), 2 * kPi * rng.uniform());
  }
  a[n - 1] = std::polar(1.0, 2 * kPi * rng.uniform());
  return a;
}

namespace {

// Total Pruefer phase Psi(theta) = arg B_{n-1}(e^{i theta}) of the Blaschke
// product z Phi_{n-1} / Phi*_{n-1}, continuous and increasing by 2 pi n per
// turn. Eigenphases solve Psi(theta) = arg(conj a_{n-1}) mod 2 pi.
struct PhaseValue {
  double psi, dpsi;
};

PhaseValue total_phase(std::span<const std::complex<double>> a, double theta) {
  const std::size_t n = a.size();
  double phi = 0, dphi = 0;
  // v = e^{-i psi_k} is carried as a rotation, updated by e^{-i theta} and
  // conj(f)^2 / |f|^2. Plain doubles: complex products would go through the
  // NaN-checking library multiply.
  const double cr = std::cos(theta), ci = -std::sin(theta);
  double vr = cr, vi = ci;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dpsi = 1.0 - static_cast<double>(k) + 2 * dphi;
    const double ar = a[k].real(), ai = -a[k].imag();
    const double zr = ar * vr - ai * vi, zi = ar * vi + ai * vr;
    const double fr = 1 - zr, fi = -zi;
    const double nf = fr * fr + fi * fi;
    phi += theta + std::atan2(fi, fr);
    dphi += 1 + dpsi * (zr * fr + zi * fi) / nf;
    const double hr = (fr * fr - fi * fi) / nf, hi = -2 * fr * fi / nf;
    const double gr = hr * cr - hi * ci, gi = hr * ci + hi * cr;
    const double next_r = vr * gr - vi * gi;
    vi = vr * gi + vi * gr;
    vr = next_r;
  }
  const double nd = static_cast<double>(n);
  return {2 * phi - (nd - 2) * theta, 2 * dphi - (nd - 2)};
}

struct PhasePoint {
  double theta, f;
};

// Root of the linear-fractional fit through three points in half-angle
// coordinates: tan(f/2) against tan((theta - ref)/2). Near a Blaschke zero
// close to the circle Psi is locally a Moebius map of e^{i theta}, where
// Newton overshoots and this fit is nearly exact. NaN when degenerate.
double moebius_root(const PhasePoint (&p)[3], double ref) {
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    const double x = std::tan(0.5 * (p[i].theta - ref));
    const double s = std::sin(p[i].f), c = 1 + std::cos(p[i].f);
    // s (r x + 1) = (u x + w) c, linear in (u, w, r)
    m[i][0] = x * c;
    m[i][1] = c;
    m[i][2] = -x * s;
    m[i][3] = s;
  }
  auto det = [&](int c0, int c1, int c2) {
    return m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]) -
           m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0]) +
           m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0]);
  };
  return ref + 2 * std::atan(-det(0, 3, 2) / det(3, 1, 2));
}

}  // namespace

std::vector<double> cmv_eigenphases(std::span<const std::complex<double>> a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(std::abs(a[k]) < 1)) throw ParameterError("Verblunsky coefficients must lie in the open disk");
  if (std::fabs(std::abs(a[n - 1]) - 1) > 1e-12)
    throw ParameterError("last Verblunsky coefficient must lie on the unit circle");
  const double target0 = std::arg(std::conj(a[n - 1]));
  const double two_pi = 2 * kPi;
  if (n == 1) return {std::fmod(target0 + two_pi, two_pi)};

  const std::size_t cells = 2 * n;
  std::vector<double> grid(cells + 1);
  for (std::size_t i = 0; i < cells; ++i)
    grid[i] = total_phase(a, two_pi * static_cast<double>(i) / static_cast<double>(cells)).psi;
  grid[cells] = grid[0] + two_pi * static_cast<double>(n);

  std::vector<double> roots;
  roots.reserve(n);
  double c = target0 + two_pi * std::ceil((grid[0] - target0) / two_pi);
  std::size_t cell = 0;
  for (std::size_t j = 0; j < n; ++j, c += two_pi) {
    while (cell + 1 < cells && grid[cell + 1] <= c) ++cell;
    double lo = two_pi * static_cast<double>(cell) / static_cast<double>(cells);
    double hi = two_pi * static_cast<double>(cell + 1) / static_cast<double>(cells);
    const double flo = grid[cell] - c, fhi = grid[cell + 1] - c;
    PhasePoint pts[3] = {{lo, flo}, {hi, fhi}, {0, 0}};
    int have = 2;
    double t = lo + (hi - lo) * (-flo) / (fhi - flo);
    for (int it = 0; it < 200; ++it) {
      const PhaseValue v = total_phase(a, t);
      const double f = v.psi - c;
      if (f < 0)
        lo = t;
      else
        hi = t;
      if (have == 3) {
        pts[0] = pts[1];
        pts[1] = pts[2];
        have = 2;
      }
      pts[have++] = {t, f};
      double next = moebius_root(pts, t);
      if (!(next > lo && next < hi)) next = t - f / v.dpsi;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      // The fit also vanishes at f = +-2 pi, so a small step alone does not
      // mean convergence. 1e-10 in theta is 1e-8 of a mean spacing at n = 512.
      const bool done = (std::fabs(next - t) <= 1e-10 && std::fabs(f) < kPi) || hi - lo <= 1e-10;
      t = next;
      if (done) break;
    }
    roots.push_back(t);
  }
  return roots;
}

double semicircle_cdf(double y) {
  y = std::clamp(y, -1.0, 1.0);
  return 0.5 + (y * std::sqrt(1 - y * y) + std::asin(y)) / kPi;
}

SpectrumSample sample_spectrum(const EnsembleSpec& spec, std::uint64_t sample_index) {
  validate(spec);
  CounterRng rng(spec.seed, sample_index);
  const std::size_t n = spec.dimension;
  const double nd = static_cast<double>(n);
  SpectrumSample s;
  switch (spec.kind) {
    case Ensemble::CUE:
    case Ensemble::COE: {
      const double beta = spec.kind == Ensemble::CUE ? 2 : 1;
      const auto a = circular_verblunsky(n, beta, rng);
      s.points = cmv_eigenphases(a);
      for (double& p : s.points) p *= nd / (2 * kPi);
      break;
    }
    case Ensemble::GUE:
    case Ensemble::GOE: {
      const double beta = spec.kind == Ensemble::GUE ? 2 : 1;
      Eigen::VectorXd diag(n), sub(n - 1);
      for (std::size_t i = 0; i < n; ++i) diag[static_cast<Eigen::Index>(i)] = rng.normal();
      for (std::size_t i = 1; i < n; ++i)
        sub[static_cast<Eigen::Index>(i - 1)] =
            rng.chi(beta * static_cast<double>(n - i)) / std::numbers::sqrt2;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
      const double radius = std::sqrt(2 * beta * nd);
      s.points.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        s.points[i] = nd * semicircle_cdf(es.eigenvalues()[static_cast<Eigen::Index>(i)] / radius);
      break;
    }
    case Ensemble::Poisson: {
      s.points.resize(n);
      for (auto& p : s.points) p = nd * rng.uniform();
      break;
    }
  }
  std::sort(s.points.begin(), s.points.end());
  return s;
}

double snap_alpha(double alpha, std::size_t n) {
  const double k = std::max(1.0, std::round(alpha * static_cast<double>(n)));
  return k / static_cast<double>(n);
}

std::vector<double> spectrum_form_factor(std::span<const double> points, double length,
                                         std::span<const double> alphas, double density_scale) {
  const std::size_t n = points.size();
  std::vector<double> out(alphas.size(), 1.0);
  if (n <= 1) return out;
  const double rho = density_scale * length;
  // Pair weights depend only on the sample, not on alpha.
  std::vector<double> w;
  w.reserve(n * (n - 1) / 2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j + 1; l < n; ++l) {
      const double u = (points[l] - points[j]) / rho;
      w.push_back(4.0 / (4.0 + u * u));
    }
  std::vector<double> cs(n), sn(n);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = 2 * kPi * alphas[i] * points[j];
      cs[j] = std::cos(ph);
      sn[j] = std::sin(ph);
    }
    CompensatedSum off;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double row = 0;
      for (std::size_t l = j + 1; l < n; ++l, ++idx) row += (cs[j] * cs[l] + sn[j] * sn[l]) * w[idx];
      off.add(row);
    }
    out[i] = (static_cast<double>(n) + 2 * off.value()) / static_cast<double>(n);
  }
  return out;
}

FormFactorCurve ensemble_form_factor(const EnsembleSpec& spec, std::span<const double> alphas,
                                     double density_scale) {
  validate(spec);
  if (!(density_scale > 0)) throw ParameterError("density_scale must be positive");
  std::vector<double> snapped;
  for (double a : alphas) {
    if (!(a > 0 && a < 1)) throw ParameterError("alpha must lie in (0, 1)");
    snapped.push_back(snap_alpha(a, spec.dimension));
  }
  const std::size_t S = spec.samples, A = snapped.size();
  std::vector<double> values(S * A);
  parallel_chunks(S, 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      const auto sample = sample_spectrum(spec, s);
      const auto k = spectrum_form_factor(sample.points, static_cast<double>(spec.dimension),
                                          snapped, density_scale);
      std::copy(k.begin(), k.end(), values.begin() + static_cast<std::ptrdiff_t>(s * A));
    }
  });

  FormFactorCurve curve;
  curve.label = to_string(spec.kind);
  curve.T = static_cast<double>(spec.dimension);
  curve.N_T = spec.dimension;
  curve.normalizer = static_cast<double>(spec.dimension);
  curve.degree = 1;
  curve.samples = S;
  const double rho = density_scale * static_cast<double>(spec.dimension);
  for (std::size_t i = 0; i < A; ++i) {
    CompensatedSum sum, sq;
    for (std::size_t s = 0; s < S; ++s) sum.add(values[s * A + i]);
    const double mean = sum.value() / static_cast<double>(S);
    for (std::size_t s = 0; s < S; ++s) {
      const double d = values[s * A + i] - mean;
      sq.add(d * d);
    }
    FormFactorPoint p;
    p.alpha = snapped[i];
    p.log_X = 2 * kPi * snapped[i] * rho;
    p.K = mean;
    p.F = mean * static_cast<double>(spec.dimension);
    p.stderr_K = S > 1 ? std::sqrt(sq.value() / static_cast<double>(S - 1) / static_cast<double>(S))
                       : 0.0;
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace shortlab::rmt
