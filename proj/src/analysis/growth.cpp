#include <cmath>
#include <stdexcept>

#include "nullseries/analysis.hpp"
#include "nullseries/grid.hpp"

namespace nullseries {

nlohmann::json GrowthReport::to_json() const {
  return {{"r", r}, {"s", s}, {"norm_r", norm_r}, {"norm_s", norm_s}, {"rho", rho},
          {"lhs", lhs}, {"inflation_measure", inflation_measure},
          {"term_measure", term_measure}, {"term_degree", term_degree},
          {"minimal_C", minimal_C}, {"s_large", s_large}};
}

bool s_exceeds_threshold(std::int64_t r, std::int64_t s) {
  const double lr = std::log(static_cast<double>(r));
  return static_cast<double>(s) > std::pow(static_cast<double>(r), 1.5) * std::pow(lr, 4);
}

GrowthReport growth_check(const CoeffSeq& c, const IntervalUnion& K, std::int64_t r, std::int64_t s) {
  if (r < 1 || s <= r) throw std::invalid_argument("growth check needs 1 <= r < s");
  GrowthReport g;
  g.r = r;
  g.s = s;
  g.norm_r = l2_norm(c.truncated(std::min(r, c.degree())));
  g.norm_s = l2_norm(c.truncated(std::min(s, c.degree())));
  g.lhs = g.norm_r * g.norm_r;
  const double ls = std::log(static_cast<double>(s));
  const double delta = std::pow(ls, 3) / static_cast<double>(s);
  g.inflation_measure = inflate(K, rational_upper(std::min(delta, 1.0))).measure().get_d();
  g.term_measure = std::sqrt(g.inflation_measure);
  g.term_degree = g.norm_r * static_cast<double>(r) * std::pow(ls, 4) / static_cast<double>(s);
  const double rhs = g.norm_s * (g.term_measure + g.term_degree);
  g.minimal_C = rhs > 0 ? g.lhs / rhs : 0.0;
  g.rho = g.lhs > 0 ? g.norm_s / g.lhs : 0.0;
  g.s_large = s_exceeds_threshold(r, s);
  return g;
}

SupportDetection support_detect(const CoeffSeq& c, const std::vector<std::int64_t>& n_list,
                                std::int64_t M, const std::vector<double>& tau) {
  if (n_list.empty() || n_list.size() != tau.size())
    throw std::invalid_argument("n_list and tau must be nonempty and aligned");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must increase");
    if (tau[i] < tau[i - 1]) throw std::invalid_argument("tau must be nondecreasing");
  }
  SupportDetection out;
  out.M = M;
  const auto K = n_list.size();
  const std::size_t top = K - (K + 3) / 4;
  std::vector<char> keep(static_cast<std::size_t>(M), 1);
  for (std::size_t k = top; k < K; ++k) {
    const auto g = partial_sum_eval(c, n_list[k], M);
    for (std::int64_t j = 0; j < M; ++j)
      if (!(std::abs(g.values[static_cast<std::size_t>(j)]) > tau[k])) keep[static_cast<std::size_t>(j)] = 0;
  }
  std::vector<IntervalUnion::Piece> cells;
  for (std::int64_t j = 0; j < M; ++j) {
    if (!keep[static_cast<std::size_t>(j)]) continue;
    if (j == 0) {
      cells.emplace_back(0, Rational(1, 2 * M));
      cells.emplace_back(1 - Rational(1, 2 * M), 1);
    } else {
      cells.emplace_back(Rational(2 * j - 1, 2 * M), Rational(2 * j + 1, 2 * M));
    }
  }
  out.detected = IntervalUnion(std::move(cells));
  return out;
}

}  // namespace nullseries
