#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nullseries/analysis.hpp"
#include "nullseries/builders.hpp"
#include "nullseries/grid.hpp"

using namespace nullseries;

namespace {

std::vector<Rational> dyadic(int from, int to) {
  std::vector<Rational> s;
  for (int i = from; i <= to; ++i) s.emplace_back(1, mpz_class(1) << i);
  return s;
}

CoeffSeq gevrey_phi() { return build_smooth_cutoff(Rational(1, 4), Rational(3, 4), Rational(1, 8), 0).phi; }

}  // namespace

TEST(BoxDim, HalfInterval) {
  const auto d = box_dimension(IntervalUnion::single(0, Rational(1, 2)), dyadic(4, 10));
  EXPECT_NEAR(d.slope, 1.0, 0.01);
  EXPECT_EQ(d.counts.front(), 8);
  EXPECT_EQ(d.counts.back(), 512);
}

TEST(BoxDim, SinglePoint) {
  const auto d = box_dimension(IntervalUnion::single(0, 0), dyadic(4, 10));
  EXPECT_NEAR(d.slope, 0.0, 1e-12);
}

TEST(BoxDim, EmptySetIsFlagged) {
  const auto d = box_dimension(IntervalUnion(), dyadic(4, 10));
  EXPECT_TRUE(d.empty);
  EXPECT_EQ(d.slope, 0.0);
}

TEST(BoxDim, CantorLevelTen) {
  const auto K = cantor_prefab(10);
  EXPECT_EQ(K.size(), 1024u);
  std::vector<Rational> s;
  for (int i = 1; i <= 10; ++i) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, i);
    s.emplace_back(1, p);
  }
  const auto d = box_dimension(K, s);
  EXPECT_NEAR(d.slope, std::log(2.0) / std::log(3.0), 0.05);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(d.counts[i], std::int64_t{1} << (i + 1));
}

TEST(BoxDim, FiniteUnionCalibration) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> start(0, 15);
  // pieces and gaps of length >= 1/32, scales <= 2^-11
  std::vector<IntervalUnion::Piece> p;
  for (int i = 0; i < 16; ++i) {
    if (start(gen) % 2) continue;
    p.emplace_back(Rational(2 * i, 32), Rational(2 * i + 1, 32));
  }
  if (p.empty()) p.emplace_back(0, Rational(1, 32));
  const auto d = box_dimension(IntervalUnion(p), dyadic(11, 16));
  EXPECT_NEAR(d.slope, 1.0, 0.02);
}

TEST(BoxDim, CountsNonincreasingInScale) {
  const auto d = box_dimension(cantor_prefab(6), dyadic(2, 12));
  for (std::size_t i = 1; i < d.counts.size(); ++i) EXPECT_GE(d.counts[i], d.counts[i - 1]);
  EXPECT_THROW(box_dimension(cantor_prefab(2), dyadic(2, 4)), std::invalid_argument);
}

TEST(Growth, DeltaSeries) {
  const auto g = growth_check(CoeffSeq::delta(), IntervalUnion::single(0, Rational(1, 10)), 4, 50);
  EXPECT_DOUBLE_EQ(g.norm_r, 1.0);
  EXPECT_DOUBLE_EQ(g.norm_s, 1.0);
  EXPECT_DOUBLE_EQ(g.rho, 1.0);
  EXPECT_THROW(growth_check(CoeffSeq::delta(), IntervalUnion::unit(), 5, 5), std::invalid_argument);
}

TEST(Growth, ThresholdFlag) {
  const double r = 16, lr = std::log(r);
  EXPECT_EQ(s_exceeds_threshold(16, 2048), 2048 > std::pow(r, 1.5) * std::pow(lr, 4));
  EXPECT_FALSE(s_exceeds_threshold(16, 2048));
  EXPECT_TRUE(s_exceeds_threshold(16, 4000));
}

TEST(Growth, ScaleCovariance) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  CoeffSeq c(3000, false);
  for (std::int64_t l = -3000; l <= 3000; ++l) c[l] = {nd(gen), nd(gen)};
  const auto K = IntervalUnion::single(Rational(1, 5), Rational(2, 5));
  const auto g1 = growth_check(c, K, 20, 3000);
  auto c2 = c;
  c2.scale(2.0);
  const auto g2 = growth_check(c2, K, 20, 3000);
  EXPECT_NEAR(g2.lhs, 4 * g1.lhs, 1e-9 * g1.lhs);
  EXPECT_NEAR(g2.norm_s, 2 * g1.norm_s, 1e-12 * g1.norm_s);
  EXPECT_EQ(g2.inflation_measure, g1.inflation_measure);
  const double predicted = 4 * g1.lhs / (2 * g1.norm_s * (g1.term_measure + 2 * g1.term_degree));
  EXPECT_NEAR(g2.minimal_C, predicted, 1e-12 * predicted);
  EXPECT_NEAR(g2.rho, g1.rho / 2, 1e-12);
  EXPECT_LT(g1.inflation_measure, 1.0);
}

TEST(SupportDetect, ZeroSeriesIsEmpty) {
  const auto d = support_detect(CoeffSeq(10), {2, 4, 8, 10}, 256, {0.5, 0.5, 0.5, 0.5});
  EXPECT_TRUE(d.detected.empty());
  EXPECT_EQ(d.label, "proxy");
}

TEST(SupportDetect, FejerLikePeakIsLocalised) {
  // Dirichlet kernel of growing order peaks near 0 only
  CoeffSeq c(256, true);
  for (std::int64_t l = -256; l <= 256; ++l) c[l] = 1.0;
  std::vector<std::int64_t> ns = {16, 32, 64, 128, 256};
  std::vector<double> tau = {8, 16, 32, 64, 128};
  const auto d = support_detect(c, ns, 1024, tau);
  EXPECT_FALSE(d.detected.empty());
  EXPECT_TRUE(inflate(IntervalUnion({{0, Rational(1, 64)}, {Rational(63, 64), 1}}), Rational(2, 1024))
                  .contains(d.detected));
  // complement meets every interval of length 8/M
  for (int j = 0; j + 8 <= 1024; ++j) {
    const auto I = IntervalUnion::single(Rational(j, 1024), Rational(j + 8, 1024));
    EXPECT_FALSE(d.detected.contains(I));
  }
}

TEST(Thm3, ExponentValues) {
  EXPECT_DOUBLE_EQ(thm3_exponent(0.0), 1.0);
  EXPECT_DOUBLE_EQ(thm3_exponent(1.0), -0.5);
  EXPECT_THROW(thm3_exponent(1.5), std::invalid_argument);
}

TEST(Thm3, RootAndSweep) {
  const double root = thm3_root();
  EXPECT_NEAR(root, (std::sqrt(17.0) - 3) / 2, 1e-12);
  EXPECT_NEAR(root, thm3_root_closed_form(), 1e-12);
  EXPECT_NEAR(thm3_exponent(root), 0.0, 1e-12);
  EXPECT_NEAR(root * root + 3 * root - 2, 0.0, 1e-12);
  for (int i = 0; i < 1000; ++i) {
    const double d = i / 999.0;
    if (d < root) {
      EXPECT_GT(thm3_exponent(d), 0.0) << d;
    }
    if (d > root) {
      EXPECT_LT(thm3_exponent(d), 0.0) << d;
    }
  }
}

TEST(Thm2, ChainHead) {
  const auto c = thm2_rate(powers_of_two(40));
  ASSERT_GE(c.r.size(), 5u);
  EXPECT_EQ(c.r[0], 2);
  EXPECT_EQ(c.r[1], 4);
  EXPECT_EQ(c.r[2], 16);
  EXPECT_EQ(c.r[3], 256);
  EXPECT_NEAR(c.exponent, 1.2386, 1e-4);
  EXPECT_EQ(c.bounds.size(), c.r.size());
}

TEST(Thm2, ChainIsMinimalByScan) {
  const auto n = powers_of_two(300);
  const auto c = thm2_rate(n);
  for (std::size_t i = 0; i + 1 < c.r.size(); ++i) {
    // first n_k with n_k^4 > r_i^7
    mpz_class r7, first = 0;
    mpz_pow_ui(r7.get_mpz_t(), c.r[i].get_mpz_t(), 7);
    for (const auto& v : n) {
      mpz_class v4;
      mpz_pow_ui(v4.get_mpz_t(), v.get_mpz_t(), 4);
      if (v4 > r7) {
        first = v;
        break;
      }
    }
    EXPECT_EQ(c.r[i + 1], first);
  }
}

TEST(Thm2, DoublyExponentialFit) {
  const auto c = thm2_rate(powers_of_two(4096));
  EXPECT_NEAR(c.fitted_slope, std::log(1.75), 0.1 * std::log(1.75));
}

TEST(Thm2, InvalidInput) {
  EXPECT_THROW(thm2_rate({mpz_class(2)}), std::invalid_argument);
  EXPECT_THROW(thm2_rate({mpz_class(4), mpz_class(3)}), std::invalid_argument);
  EXPECT_THROW(thm2_rate({mpz_class(1), mpz_class(3)}), std::invalid_argument);
}

TEST(Localisation, DeltaSeriesIsCutoffTail) {
  // phi S_n(delta) - S_n(phi) = phi - S_n(phi)
  const auto phi = gevrey_phi();
  const std::int64_t n = 10;
  const auto r = localisation_error_spectrum(CoeffSeq::delta(), phi, n);
  for (std::int64_t j = -phi.degree(); j <= phi.degree(); ++j) {
    const cplx expect = std::llabs(j) > n ? phi[j] : cplx{};
    EXPECT_NEAR(std::abs(r.E.at(j) - expect), 0.0, 1e-15);
  }
  EXPECT_GE(r.worst_slack, 0.0);
}

TEST(Localisation, RandomBoundedSequences) {
  const auto phi = gevrey_phi();
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 100; ++t) {
    const std::int64_t n = 5 + t;
    const std::int64_t D = 2 * n + 40;
    CoeffSeq c(D);
    for (std::int64_t l = -D; l <= D; ++l) c[l] = std::polar(std::sqrt(u(gen)), 2 * M_PI * u(gen));
    const auto r = localisation_error_spectrum(c, phi, n);
    EXPECT_GE(r.worst_slack, 0.0);
    const auto d = localisation_error_direct(c, phi, n);
    const auto M = std::max(d.degree(), r.E.degree());
    for (std::int64_t j = -M; j <= M; ++j) EXPECT_NEAR(std::abs(d.at(j) - r.E.at(j)), 0.0, 1e-11);
  }
}

TEST(Rajchman, IdentityCutoffGivesZero) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> g;
  CoeffSeq c(50);
  for (std::int64_t l = -50; l <= 50; ++l) c[l] = {g(gen), g(gen)};
  for (std::int64_t n : {1, 10, 49}) EXPECT_EQ(rajchman_gap(c, CoeffSeq::delta(), n), 0.0);
}

TEST(Rajchman, DeltaSeriesDecaysWithCutoff) {
  const auto phi = gevrey_phi();
  double prev = INFINITY;
  for (std::int64_t n : {4, 8, 16, 32, 64}) {
    const double g = rajchman_gap(CoeffSeq::delta(), phi, n);
    EXPECT_LE(g, prev);
    EXPECT_GE(g, sup_coeff_norm(phi.truncated(std::min(phi.degree(), n + 1))) * 0.0);
    prev = g;
  }
  EXPECT_LT(rajchman_gap(CoeffSeq::delta(), phi, phi.degree()), 1e-12);
}
