#include <gtest/gtest.h>

#include <random>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/grid.hpp"

using namespace nullseries;

namespace {

const Certificate* find(const std::vector<Certificate>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Vandermonde, RecoversKnownWeights) {
  const std::int64_t m = 3, nodes = 2 * m + 1;
  std::mt19937_64 gen(1);
  std::normal_distribution<double> g;
  std::vector<cplx> a(nodes);
  for (auto& v : a) v = {g(gen), 0.0};
  std::vector<cplx> rhs;
  for (std::int64_t k = -m; k <= m; ++k) {
    cplx s{};
    for (std::int64_t j = 0; j < nodes; ++j) s += a[j] * phase(j * k, 1, 2 * nodes);
    rhs.push_back(s);
  }
  VandermondeReport rep;
  const auto x = solve_vandermonde(nodes, rhs, PrecisionContext{}, rep);
  for (std::int64_t j = 0; j < nodes; ++j) EXPECT_NEAR(std::abs(x[j] - a[j]), 0.0, 1e-12);
  EXPECT_LE(rep.residual, 1e-13);
  EXPECT_FALSE(rep.escalated);

  PrecisionContext hi;
  hi.bits = 160;
  VandermondeReport rep2;
  const auto y = solve_vandermonde(nodes, rhs, hi, rep2);
  EXPECT_TRUE(rep2.escalated);
  EXPECT_GE(rep2.precision_bits, 160);
  for (std::int64_t j = 0; j < nodes; ++j) EXPECT_NEAR(std::abs(y[j] - a[j]), 0.0, 1e-13);
}

TEST(HFunction, QuarterIsCertified) {
  const auto H = build_h(0.25);
  EXPECT_TRUE(H.certified());
  EXPECT_EQ(H.h[0], cplx(1.0, 0.0));
  EXPECT_TRUE(IntervalUnion::single(0, Rational(1, 2)).contains(H.support));
  EXPECT_LE(H.partial_sum.bound, 0.25);
  EXPECT_LE(H.solve.residual, 1e-9);
  // low band reproduces the arc polynomial
  for (std::int64_t k = -H.m; k <= H.m; ++k)
    EXPECT_NEAR(std::abs(H.h[k] - H.arc.P[k] / H.normalization), 0.0, 1e-12);
  // stored coefficients agree with the exact formula
  const auto ex = H.coefficients(50);
  for (std::int64_t k = -50; k <= 50; ++k) EXPECT_NEAR(std::abs(ex[k] - H.h.at(k)), 0.0, 1e-15);
}

TEST(HFunction, PartialSumSmallOnWholeHalf) {
  const auto H = build_h(0.25);
  for (int i = 0; i <= 4000; ++i) EXPECT_LE(std::abs(eval_at(H.h, H.m, 0.5 * i / 4000)), 0.25);
}

TEST(BlockLayout, SmallInstance) {
  const auto b = check_block_layout(3, 2, 8);
  EXPECT_EQ(b.n, 1152);
  EXPECT_EQ(b.max_lower, 1060);
  EXPECT_EQ(b.min_upper, 1532);
  EXPECT_TRUE(b.sandwich);
  EXPECT_TRUE(b.injective);
  EXPECT_EQ(b.collisions, 0);
}

TEST(BlockLayout, CollisionsDetected) {
  // r too small for the blocks to separate
  const auto b = check_block_layout(40, 1, 4);
  EXPECT_FALSE(b.injective && b.sandwich);
}

TEST(BlockLayout, ProjectedDegree) {
  EXPECT_EQ(projected_f_degree(3, 8), 3 * (1 + 512 + 16));
  EXPECT_EQ(projected_f_degree(1470, 1472), std::int64_t{735} * (1 + std::int64_t{1472} * 1472 * 1472 + 1469 * 1472));
}

TEST(BuildF, CanonicalHalfHitsDegreeCap) {
  try {
    build_f(0.5);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    const auto d = nlohmann::json::parse(e.detail());
    EXPECT_EQ(d["a"], 1470);
    EXPECT_EQ(d["r"], 1472);
    EXPECT_GT(d["projected_degree"].get<std::int64_t>(), kDefaultDegreeCap);
    EXPECT_TRUE(d["smallest_feasible_eps"].is_null());
  }
}

TEST(BuildF, OverrideLowBandAndLayout) {
  BuildFOptions o;
  o.a_override = 3;
  o.r_override = 8;
  const auto f = build_f(0.5, o);
  EXPECT_FALSE(f.canonical);
  EXPECT_EQ(f.f[0], cplx(1.0, 0.0));
  EXPECT_TRUE(find(f.certificates, "f_low_band")->holds());
  EXPECT_TRUE(find(f.certificates, "f_block_injective")->holds());
  EXPECT_TRUE(find(f.certificates, "f_n_sandwich")->holds());
  // |l| < r/2: only multiples of a survive
  for (std::int64_t l = -3; l <= 3; ++l)
    if (l % 3) {
      EXPECT_NEAR(std::abs(f.f[l]), 0.0, 1e-15);
    }
  EXPECT_EQ(f.n, f.params.m * (512 + 64));
  // support lies in the preimages of supp h, block by block
  EXPECT_LT(f.support.measure(), Rational(1));
}

TEST(BuildF, RejectsBadOverrides) {
  BuildFOptions o;
  o.a_override = 3;
  o.r_override = 7;
  EXPECT_THROW(build_f(0.5, o), std::invalid_argument);
  EXPECT_THROW(build_f(0.75), std::invalid_argument);
}

TEST(Reduce, DriftIdentity) {
  StageFunction f;
  f.f = CoeffSeq(4, true);
  f.f[0] = 1.0;
  f.f[1] = f.f[-1] = 0.3;
  f.f[3] = f.f[-3] = cplx(0.0, 0.1);
  f.f[-3] = std::conj(f.f[3]);
  f.n = 4;
  f.support = IntervalUnion::unit();
  ReduceOptions o;
  o.source = HSource::Vandermonde;
  const auto g = reduce_coeffs(f, 0.5, 5, o);
  EXPECT_FALSE(g.canonical);
  const auto r = g.params.r;
  EXPECT_GE(r * (2 * g.params.m + 1), 2 * 5 + 1);
  const auto H = build_h(g.params.extra["eps_h"].get<double>());
  // g - f = sum_{l != 0} h^(l) f^(k - l r)
  for (std::int64_t k = -30; k <= 30; ++k) {
    cplx s{};
    for (std::int64_t l = -H.h.degree(); l <= H.h.degree(); ++l)
      if (l) s += H.h[l] * f.f.at(k - l * r);
    EXPECT_NEAR(std::abs((g.f.at(k) - f.f.at(k)) - s), 0.0, 1e-12);
  }
  EXPECT_TRUE(f.support.contains(g.support));
  EXPECT_GT(g.n, 5);
}

TEST(Iterate, SingleStage) {
  const auto s = iterate_construction(1);
  EXPECT_EQ(s.status, "ok");
  ASSERT_EQ(s.stages.size(), 1u);
  EXPECT_EQ(s.stages[0].n, 2);
  EXPECT_EQ(s.stages[0].f.f.degree(), 0);
  EXPECT_EQ(s.stages[0].measure, Rational(1));
}

TEST(Iterate, SecondStageReportsCap) {
  const auto s = iterate_construction(2);
  EXPECT_EQ(s.status, "resource_cap");
  EXPECT_EQ(s.diagnostic["failed_stage"], 2);
  EXPECT_EQ(s.stages.size(), 1u);
  EXPECT_THROW(iterate_construction(0), std::invalid_argument);
}
