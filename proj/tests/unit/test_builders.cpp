#include <gtest/gtest.h>

#include <cmath>

#include "nullseries/builders.hpp"
#include "nullseries/grid.hpp"

using namespace nullseries;

namespace {

// composite Simpson for int_0^1 f(x) e(-l x) dx
cplx quad_coeff(const std::function<double(double)>& f, std::int64_t l, int n = 200000) {
  cplx acc{};
  const double h = 1.0 / n;
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f(x) * std::polar(1.0, -2 * M_PI * static_cast<double>(l) * x);
  }
  return acc * h / 3.0;
}

bool all_hold(const std::vector<Certificate>& cs) {
  for (const auto& c : cs)
    if (!c.holds()) return false;
  return true;
}

}  // namespace

TEST(Spline, PlateauShape) {
  const auto s = plateau_spline(Rational(1, 20));
  EXPECT_DOUBLE_EQ(s.value(0.0), 0.0);
  EXPECT_DOUBLE_EQ(s.value(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s.value(0.05), 1.0);
  EXPECT_DOUBLE_EQ(s.value(0.95), 1.0);
  EXPECT_LT(s.continuity_defect(), 1e-9);
  for (int i = 0; i <= 1000; ++i) {
    const double v = s.value(i / 1000.0);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Spline, CoefficientsMatchQuadrature) {
  const auto s = plateau_spline(Rational(1, 20));
  for (std::int64_t l : {0, 1, 2, 5, 13, 40}) {
    const auto q = quad_coeff([&](double x) { return s.value(x); }, l);
    EXPECT_NEAR(std::abs(q - s.coefficient(l)), 0.0, 1e-9) << l;
  }
}

TEST(Spline, SqueezeKeepsShape) {
  const auto s = plateau_spline(Rational(1, 8));
  const auto t = s.squeezed(3);
  for (double x : {0.01, 0.1, 0.2, 0.3}) EXPECT_NEAR(t.value(x), s.value(3 * x), 1e-13);
  EXPECT_DOUBLE_EQ(t.value(0.5), 0.0);
  EXPECT_NEAR(t.mean(), s.mean() / 3, 1e-15);
}

TEST(Plateau, EpsTenthIsCertified) {
  const auto p = build_plateau(0.1);
  EXPECT_TRUE(all_hold(p.certificates));
  EXPECT_EQ(p.edge, exact_rational(0.1) / 2);
  EXPECT_LE(p.l1_defect, 0.1);
  EXPECT_EQ(p.u[0].imag(), 0.0);
  EXPECT_GE(p.u[0].real(), 0.9);
  EXPECT_LE(p.u[0].real(), 1.0);
  EXPECT_LE(p.tail, 0.01);
  for (std::int64_t l = 1; l <= p.u.degree(); ++l) EXPECT_LE(std::abs(p.u[l]), 0.1);
  // quadrature oracle on a few off-zero indices
  for (std::int64_t l : {1, 3, 10}) {
    const auto q = quad_coeff([&](double x) { return p.spline.value(x); }, l);
    EXPECT_NEAR(std::abs(q - p.u[l]), 0.0, 1e-9);
    EXPECT_LE(std::abs(q), 0.1);
  }
  EXPECT_EQ(p.support, IntervalUnion::unit());
  EXPECT_THROW(build_plateau(1.0), std::invalid_argument);
  EXPECT_THROW(build_plateau(0.0), std::invalid_argument);
}

TEST(Window, MatchesClosedFormAndFloor) {
  const auto w = build_window(3, 10);
  EXPECT_TRUE(all_hold(w.certificates));
  double floor = 1e300;
  for (std::int64_t k = -10; k <= 10; ++k) {
    // sinc^4 written out here rather than taken from the library
    const double x = M_PI * k * 3.0 / 96.0;
    const double s = k == 0 ? 1.0 : std::pow(std::sin(x) / x, 4);
    const cplx expect = s * std::polar(1.0, -2 * M_PI * k / 12.0);
    EXPECT_NEAR(std::abs(w.q[k] - expect), 0.0, 1e-12) << k;
    floor = std::min(floor, std::abs(expect));
    EXPECT_GT(std::abs(w.q[k]), 0.0);
    EXPECT_GE(std::abs(w.q[k]), w.floor);
  }
  // certified floor sits just under the true minimum
  EXPECT_LE(w.floor, floor);
  EXPECT_GE(w.floor, floor - 1e-10);
  const auto q = quad_coeff([&](double x) { return w.spline.value(x); }, 7);
  EXPECT_NEAR(std::abs(q - w.q[7]), 0.0, 1e-8);
}

TEST(Window, TrivialMean) {
  const auto w = build_window(1, 0);
  EXPECT_GT(w.q[0].real(), 0.0);
}

TEST(Window, SupportedInsideFirstCell) {
  const std::int64_t m = 2;
  const auto w = build_window(m, 4);
  const auto cell = IntervalUnion::single(0, Rational(1, 2 * m));
  EXPECT_TRUE(cell.contains(w.support));
  EXPECT_GT(w.support.pieces().front().first, 0);
  EXPECT_LT(w.support.pieces().back().second, Rational(1, 2 * m));
  // grid values outside the support are at most the truncation mass
  const auto M = grid_size_for(w.q.degree());
  const auto g = partial_sum_eval(w.q, w.q.degree(), M);
  double outside = 0.0;
  for (std::int64_t j = 0; j < M; ++j)
    if (!w.support.contains(Rational(j, M))) outside = std::max(outside, std::abs(g.values[j]));
  EXPECT_LE(outside, w.tail * l1_coeff_norm(w.q) + 1e-12);
}

TEST(Arc, ConstantWhenEpsAboveOne) {
  const auto P = build_arc_poly(1.5);
  EXPECT_EQ(P.n, 0);
  EXPECT_EQ(P.P[0], cplx(1.0, 0.0));
}

TEST(Arc, EpsTenth) {
  const auto P = build_arc_poly(0.1);
  EXPECT_LE(P.n, 40);
  EXPECT_EQ(P.P[0], cplx(1.0, 0.0));
  EXPECT_LE(P.sup_bound, 0.1);
  EXPECT_TRUE(all_hold(P.certificates));
  // independent spot check of the sup on the arc
  for (int i = 0; i <= 2000; ++i) EXPECT_LE(std::abs(eval_at(P.P, P.n, 0.5 * i / 2000)), P.sup_bound);
}

TEST(Arc, MinimaxBracketsAreConsistent) {
  for (std::int64_t n = 1; n <= 4; ++n) {
    const auto P = arc_minimax(n);
    EXPECT_LE(P.lower_bound, P.sup_bound);
    EXPECT_LE(P.sup_bound, P.lower_bound * 1.01 + 1e-6);
  }
}

TEST(Arc, CapacityProbe) {
  double prev = 1.0;
  for (std::int64_t n : {8, 16, 24}) {
    const auto q = arc_chebyshev(n);
    EXPECT_EQ(q.Q[n], cplx(1.0, 0.0));
    const double up = std::pow(q.upper, 1.0 / n), lo = std::pow(q.lower, 1.0 / n);
    EXPECT_LE(lo, up);
    EXPECT_LT(up, prev);
    prev = up;
    if (n == 24) {
      EXPECT_GE(lo, 0.68);
      EXPECT_LE(up, 0.74);
    }
  }
}

TEST(Gevrey, StepBasics) {
  const auto b = build_gevrey_step();
  EXPECT_EQ(b.step(0.0), 0.0);
  EXPECT_EQ(b.step(1.0), 1.0);
  EXPECT_EQ(b.step(-0.3), 0.0);
  EXPECT_EQ(b.step(1.7), 1.0);
  EXPECT_NEAR(b.step(0.5), 0.5, 1e-14);
  double prev = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double v = b.step(i / 4096.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  ASSERT_EQ(b.derivative_sup.size(), 9u);
  double fact = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k) fact *= k;
    EXPECT_LE(b.derivative_sup[k], b.C_psi * fact * fact * (1 + 1e-12));
  }
}

TEST(Gevrey, SecondDerivativeByFiniteDifferences) {
  const auto b = build_gevrey_step();
  const double h = 1e-4;
  double sup = 0.0;
  for (int i = 1; i < 10000; ++i) {
    const double t = i / 10000.0;
    const double fd = (b.step(t + h) - 2 * b.step(t) + b.step(t - h)) / (h * h);
    sup = std::max(sup, std::abs(fd));
    EXPECT_NEAR(fd, b.step.derivative(2, t), 1e-5 * (1 + std::abs(fd)));
  }
  EXPECT_LE(sup, 4 * b.C_psi);
}

TEST(Cutoff, UnitIntervalQuarterMargin) {
  const auto c = build_smooth_cutoff(0, 1, Rational(1, 4), 0);
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double v = c.value(x);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    if (x >= 0.25 && x <= 0.75) {
      EXPECT_EQ(v, 1.0);
    }
  }
  EXPECT_EQ(c.value(0.0), 0.0);
  EXPECT_EQ(c.value(1.0), 0.0);
  for (std::int64_t l = 1; l <= c.phi.degree(); ++l)
    EXPECT_LE(std::abs(c.phi[l]), c.C * std::exp(-c.c * std::sqrt(l * 0.25)) * (1 + 1e-12));
  EXPECT_THROW(build_smooth_cutoff(0, Rational(1, 4), Rational(1, 8), 0), std::invalid_argument);
}

TEST(Cutoff, GridValuesInUnitRange) {
  const auto c = build_smooth_cutoff(Rational(1, 8), Rational(5, 8), Rational(1, 16), 0);
  const auto M = grid_size_for(c.phi.degree());
  const auto g = partial_sum_eval(c.phi, c.phi.degree(), M);
  for (const auto& v : g.values) {
    EXPECT_GE(v.real(), -1e-9);
    EXPECT_LE(v.real(), 1 + 1e-9);
  }
}
