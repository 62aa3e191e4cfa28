#include "nullseries/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nullseries {

C2Spline::C2Spline(std::vector<Rational> knots, std::vector<std::array<double, 4>> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
  if (knots_.empty() || knots_.size() != pieces_.size())
    throw std::invalid_argument("spline needs one piece per knot");
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    auto& t = knots_[k];
    t.canonicalize();
    if (t < 0 || t >= 1) throw std::invalid_argument("knots must lie in [0,1)");
    if (k > 0 && !(knots_[k - 1] < t)) throw std::invalid_argument("knots must increase");
    if (!t.get_num().fits_slong_p() || !t.get_den().fits_slong_p())
      throw std::invalid_argument("knot does not fit 64-bit phase arithmetic");
    num_.push_back(t.get_num().get_si());
    den_.push_back(t.get_den().get_si());
    t_.push_back(t.get_d());
  }
  const auto K = knots_.size();
  for (std::size_t k = 0; k < K; ++k) {
    const auto& prev = pieces_[(k + K - 1) % K];
    const double j = 6.0 * (pieces_[k][3] - prev[3]);
    jump3_.push_back(j);
    jump_sum_ += std::abs(j);
  }
}

double C2Spline::piece_length(std::size_t k) const {
  const auto K = knots_.size();
  if (k + 1 < K) return Rational(knots_[k + 1] - knots_[k]).get_d();
  return Rational(knots_[0] + 1 - knots_[k]).get_d();
}

double C2Spline::value(double x) const {
  x -= std::floor(x);
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  std::size_t k;
  double s;
  if (it == t_.begin()) {
    k = t_.size() - 1;
    s = x + 1.0 - t_[k];
  } else {
    k = static_cast<std::size_t>(it - t_.begin()) - 1;
    s = x - t_[k];
  }
  const auto& p = pieces_[k];
  return ((p[3] * s + p[2]) * s + p[1]) * s + p[0];
}

double C2Spline::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double h = piece_length(k);
    const auto& p = pieces_[k];
    m += h * (p[0] + h * (p[1] / 2 + h * (p[2] / 3 + h * p[3] / 4)));
  }
  return m;
}

cplx C2Spline::coefficient(std::int64_t l) const {
  if (l == 0) return mean();
  cplx s{};
  for (std::size_t k = 0; k < jump3_.size(); ++k) {
    if (jump3_[k] == 0.0) continue;
    s += jump3_[k] * phase(l, num_[k], den_[k]);
  }
  const double w = std::pow(2.0 * std::numbers::pi * static_cast<double>(l), 4);
  return s / w;
}

CoeffSeq C2Spline::coefficients(std::int64_t L) const {
  CoeffSeq c(L, true);
  c[0] = mean();
  for (std::int64_t l = 1; l <= L; ++l) {
    c[l] = coefficient(l);
    c[-l] = std::conj(c[l]);
  }
  return c;
}

double C2Spline::tail_bound(std::int64_t L) const {
  if (L < 1) throw std::invalid_argument("tail bound needs L >= 1");
  const double Ld = static_cast<double>(L);
  // 2 sum_{l>=L} J/(2 pi l)^4 <= 2 J/(2 pi)^4 (L^-4 + L^-3/3)
  return 2.0 * jump_sum_ / std::pow(2.0 * std::numbers::pi, 4) *
         (1.0 / std::pow(Ld, 4) + 1.0 / (3.0 * std::pow(Ld, 3)));
}

std::int64_t C2Spline::degree_for_tail(double tol) const {
  if (tol <= 0) throw std::invalid_argument("tail tolerance must be positive");
  std::int64_t hi = 1;
  while (tail_bound(hi + 1) > tol) hi *= 2;
  std::int64_t lo = hi / 2;
  if (lo < 0) lo = 0;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (tail_bound(mid + 1) <= tol) hi = mid; else lo = mid + 1;
  }
  return lo;
}

C2Spline C2Spline::squeezed(std::int64_t a) const {
  if (a < 1) throw std::invalid_argument("squeeze factor must be >= 1");
  if (knots_.front() != 0) throw std::invalid_argument("squeeze needs a knot at 0");
  if (a == 1) return *this;
  std::vector<Rational> knots;
  std::vector<std::array<double, 4>> pieces;
  const double ad = static_cast<double>(a);
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    knots.push_back(knots_[k] / a);
    auto p = pieces_[k];
    p[1] *= ad;
    p[2] *= ad * ad;
    p[3] *= ad * ad * ad;
    pieces.push_back(p);
  }
  knots.emplace_back(1, a);
  pieces.push_back({0.0, 0.0, 0.0, 0.0});
  return C2Spline(std::move(knots), std::move(pieces));
}

double C2Spline::continuity_defect() const {
  const auto K = pieces_.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto& prev = pieces_[(k + K - 1) % K];
    const double h = piece_length((k + K - 1) % K);
    const double v0 = ((prev[3] * h + prev[2]) * h + prev[1]) * h + prev[0];
    const double v1 = (3 * prev[3] * h + 2 * prev[2]) * h + prev[1];
    const double v2 = 6 * prev[3] * h + 2 * prev[2];
    const auto& cur = pieces_[k];
    const double scale = 1.0 + std::abs(v0) + std::abs(v1) + std::abs(v2);
    worst = std::max({worst, std::abs(v0 - cur[0]) / scale, std::abs(v1 - cur[1]) / scale,
                      std::abs(v2 - 2 * cur[2]) / scale});
  }
  return worst;
}

}  // namespace nullseries
