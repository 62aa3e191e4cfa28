#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nullseries/builders.hpp"
#include "nullseries/grid.hpp"

namespace nullseries {
namespace {

double bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-1.0 / s - 1.0 / (1.0 - s));
}

double integrate(double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(bump, a, b, 5, 1e-14);
}

// k-th derivative of exp(-1/s - 1/(1-s)) via Taylor coefficients of the exponent
double bump_derivative(int k, double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double e0 = bump(t);
  if (e0 == 0.0) return 0.0;
  std::vector<double> phi(k + 1), e(k + 1);
  for (int j = 1; j <= k; ++j) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    phi[j] = -sgn / std::pow(t, j + 1) - 1.0 / std::pow(1.0 - t, j + 1);
  }
  e[0] = e0;
  for (int m = 1; m <= k; ++m) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) s += j * phi[j] * e[m - j];
    e[m] = s / m;
  }
  return std::tgamma(k + 1.0) * e[k];
}

}  // namespace

GevreyStep::GevreyStep() : Z_(2.0 * integrate(0.0, 0.5)) {}

double GevreyStep::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t <= 0.5) return integrate(0.0, t) / Z_;
  return 1.0 - integrate(t, 1.0) / Z_;
}

double GevreyStep::derivative(int k, double t) const {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  if (k == 0) return (*this)(t);
  return bump_derivative(k - 1, t) / Z_;
}

BumpProfile build_gevrey_step() {
  BumpProfile b{1, "Gevrey2", 0.0, {}, GevreyStep{}};
  const int grid = 1 << 14;
  double fact = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    double sup = 0.0;
    for (int i = 1; i < grid; ++i) sup = std::max(sup, std::abs(b.step.derivative(k, double(i) / grid)));
    b.derivative_sup.push_back(sup);
    b.C_psi = std::max(b.C_psi, sup / (fact * fact));
  }
  return b;
}

double Cutoff::value(double x) const {
  x -= std::floor(x);
  const double lo = a.get_d(), hi = b.get_d(), half = margin.get_d() / 2;
  if (x <= lo + half || x >= hi - half) return 0.0;
  const double mid = 0.5 * (lo + hi);
  if (x <= mid) return step((x - lo - half) / half);
  return step((hi - half - x) / half);
}

Cutoff build_smooth_cutoff(const Rational& a, const Rational& b, const Rational& margin,
                           std::int64_t s_scale) {
  if (a < 0 || b > 1 || !(a < b)) throw std::invalid_argument("cutoff interval must be inside [0,1]");
  if (margin <= 0) throw std::invalid_argument("cutoff margin must be positive");
  if (!(b - a > 2 * margin)) throw std::invalid_argument("interval too short for margin");
  Cutoff c;
  c.a = a;
  c.b = b;
  c.margin = margin;
  // at least ~128 samples across each transition
  std::int64_t M = 1 << 14;
  while (static_cast<double>(M) * margin.get_d() < 256.0) M <<= 1;
  c.sample_grid = M;
  std::vector<cplx> samples(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) samples[static_cast<std::size_t>(j)] = c.value(double(j) / M);
  const auto full = coefficients_from_samples(samples, M / 4, true);
  // keep coefficients above the noise floor
  const double floor = 1e-14 * std::abs(full[0]);
  std::int64_t D = 0;
  for (std::int64_t l = 1; l <= M / 4; ++l)
    if (std::abs(full[l]) > floor) D = l;
  if (s_scale > 0) D = std::min(D, s_scale);
  c.phi = full.truncated(D);

  // envelope: regress log of the running tail max on sqrt(l margin)
  const double mg = margin.get_d();
  std::vector<double> tailmax(static_cast<std::size_t>(D + 2), 0.0);
  for (std::int64_t l = D; l >= 1; --l)
    tailmax[l] = std::max(tailmax[l + 1], std::abs(c.phi[l]));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::int64_t l = 1; l <= D; ++l) {
    if (tailmax[l] <= 0) continue;
    const double x = std::sqrt(l * mg), y = std::log(tailmax[l]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  double slope = 0.0;
  if (cnt >= 2) slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  c.c = std::max(0.0, -slope);
  double C = std::abs(c.phi[0]);
  for (std::int64_t l = 1; l <= D; ++l)
    C = std::max(C, std::abs(c.phi[l]) * std::exp(c.c * std::sqrt(l * mg)));
  c.C = C * (1.0 + 1e-12);
  return c;
}

}  // namespace nullseries
