#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nullseries/builders.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {

C2Spline plateau_spline(const Rational& edge) {
  if (edge <= 0 || edge > Rational(1, 2)) throw std::invalid_argument("plateau edge must be in (0,1/2]");
  const Rational w = edge;
  const double s = 3.0 / w.get_d();  // z = s * (x - t_k)
  auto piece = [s](double c0, double c1, double c2, double c3) {
    return std::array<double, 4>{c0, c1 * s, c2 * s * s, c3 * s * s * s};
  };
  std::vector<Rational> knots = {0, w / 3, 2 * w / 3, w, 1 - w, 1 - 2 * w / 3, 1 - w / 3};
  std::vector<std::array<double, 4>> pieces = {
      piece(0, 0, 0, 1.0 / 6),
      piece(1.0 / 6, 0.5, 0.5, -1.0 / 3),
      piece(5.0 / 6, 0.5, -0.5, 1.0 / 6),
      {1.0, 0.0, 0.0, 0.0},
      piece(1.0, 0, 0, -1.0 / 6),
      piece(5.0 / 6, -0.5, -0.5, 1.0 / 3),
      piece(1.0 / 6, -0.5, 0.5, -1.0 / 6),
  };
  if (w == Rational(1, 2)) {  // no flat top
    knots.erase(knots.begin() + 4);
    pieces.erase(pieces.begin() + 3);
  }
  return C2Spline(std::move(knots), std::move(pieces));
}

Plateau build_plateau(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("plateau eps must be in (0,1)");
  Plateau p{exact_rational(eps), exact_rational(eps) / 2, plateau_spline(exact_rational(eps) / 2),
            CoeffSeq{}, IntervalUnion::unit(), 0.0, 0.0, {}};
  const auto L = p.spline.degree_for_tail(eps / 10);
  p.u = p.spline.coefficients(L);
  p.tail = p.spline.tail_bound(L + 1);
  p.l1_defect = p.edge.get_d();  // 2 * int_0^w (1 - s) = w by symmetry of the edge
  double off = 0.0;
  for (std::int64_t l = 1; l <= L; ++l) off = std::max(off, std::abs(p.u[l]));
  const double mean = p.u[0].real();
  p.certificates.push_back(make_certificate("plateau_l1_defect", p.l1_defect, eps, false));
  p.certificates.push_back(make_certificate("plateau_tail", p.tail, eps / 10, false, {{"degree", L}}));
  p.certificates.push_back(make_certificate("plateau_coeff_sup", off, eps, false));
  p.certificates.push_back(make_certificate("plateau_mean_defect", 1.0 - mean, eps, false,
                                            {{"mean", mean}}));
  return p;
}

Window build_window(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 0) throw std::invalid_argument("window needs m >= 1, n >= 0");
  const Rational h(3, 32 * m), off(1, 16 * m);
  const double inv = 1.0 / h.get_d();
  auto piece = [inv](double c0, double c1, double c2, double c3) {
    return std::array<double, 4>{c0 * inv, c1 * inv * inv, c2 * inv * inv * inv,
                                 c3 * inv * inv * inv * inv};
  };
  std::vector<Rational> knots;
  for (int i = 0; i <= 4; ++i) knots.push_back(off + i * h);
  std::vector<std::array<double, 4>> pieces = {
      piece(0, 0, 0, 1.0 / 6),
      piece(1.0 / 6, 0.5, 0.5, -0.5),
      piece(4.0 / 6, 0, -1.0, 0.5),
      piece(1.0 / 6, -0.5, 0.5, -1.0 / 6),
      {0.0, 0.0, 0.0, 0.0},
  };
  Window w{m, n, off, 4 * h, C2Spline(std::move(knots), std::move(pieces)), CoeffSeq{}, 0.0, 0.0,
           IntervalUnion::single(off, off + 4 * h), {}};
  // q^(0) = 1, so a 1e-3 absolute tail is within 1e-3 of ||q^||_1
  const auto L = std::max(n, w.spline.degree_for_tail(1e-3));
  w.q = w.spline.coefficients(L);
  w.tail = w.spline.tail_bound(L + 1);
  double mn = std::numeric_limits<double>::infinity();
  for (std::int64_t k = -n; k <= n; ++k) mn = std::min(mn, std::abs(w.q[k]));
  const double u = std::numeric_limits<double>::epsilon();
  const double rounding = 16 * u * (w.spline.jump3_sum() / std::pow(2 * std::numbers::pi, 4) + 1.0);
  w.floor = mn - rounding;
  if (!(w.floor > 1e3 * u)) {
    throw NumericError("window coefficient floor " + std::to_string(w.floor) +
                       " below precision floor");
  }
  const double l1 = l1_coeff_norm(w.q);
  w.certificates.push_back(make_certificate("window_floor_positive", -w.floor, 0.0, true,
                                            {{"floor", w.floor}, {"n", n}}));
  w.certificates.push_back(make_certificate("window_tail", w.tail, 1e-3 * l1, false, {{"degree", L}}));
  w.certificates.push_back(boolean_certificate(
      "window_support_interior", w.support.pieces().back().second < Rational(1, 2 * m) &&
                                     w.support.pieces().front().first > 0));
  return w;
}

cplx window_coefficient_closed_form(std::int64_t m, std::int64_t k) {
  if (k == 0) return 1.0;
  const double x = std::numbers::pi * static_cast<double>(k) * 3.0 / (32.0 * static_cast<double>(m));
  const double s = std::sin(x) / x;
  return (s * s * s * s) * phase(k, 1, 4 * m);
}

}  // namespace nullseries
