#include <cmath>
#include <stdexcept>

#include "nullseries/analysis.hpp"

namespace nullseries {

std::int64_t cover_count(const IntervalUnion& K, const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("scale must be positive");
  std::int64_t count = 0;
  mpz_class last = -1;  // highest cell index already counted
  for (const auto& [a, b] : K.pieces()) {
    const Rational qa = a / delta, qb = b / delta;
    mpz_class lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), qa.get_num_mpz_t(), qa.get_den_mpz_t());
    if (a == b) {
      hi = lo;
    } else {
      mpz_cdiv_q(hi.get_mpz_t(), qb.get_num_mpz_t(), qb.get_den_mpz_t());
      hi -= 1;
    }
    if (lo <= last) lo = last + 1;
    if (hi >= lo) {
      count += mpz_class(hi - lo + 1).get_si();
      last = hi;
    }
  }
  return count;
}

DimensionEstimate box_dimension(const IntervalUnion& K, const std::vector<Rational>& scales) {
  if (scales.size() < 4) throw std::invalid_argument("need at least 4 scales");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1])) throw std::invalid_argument("scales must strictly decrease");
  DimensionEstimate d;
  d.scales = scales;
  if (K.empty()) {
    d.empty = true;
    d.counts.assign(scales.size(), 0);
    return d;
  }
  std::vector<double> x, y;
  for (const auto& s : scales) {
    const auto n = cover_count(K, s);
    d.counts.push_back(n);
    x.push_back(-std::log(s.get_d()));
    y.push_back(std::log(static_cast<double>(n)));
  }
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  d.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - d.slope * sx) / m;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - icpt - d.slope * x[i], 2);
  d.residual = std::sqrt(ss / m);
  return d;
}

IntervalUnion cantor_prefab(int level) {
  if (level < 0 || level > 20) throw std::invalid_argument("cantor level out of range");
  std::vector<IntervalUnion::Piece> cur = {{0, 1}};
  for (int i = 0; i < level; ++i) {
    std::vector<IntervalUnion::Piece> next;
    for (const auto& [a, b] : cur) {
      const Rational t = (b - a) / 3;
      next.emplace_back(a, a + t);
      next.emplace_back(b - t, b);
    }
    cur = std::move(next);
  }
  return IntervalUnion(std::move(cur));
}

}  // namespace nullseries
