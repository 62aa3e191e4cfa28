#include <cmath>
#include <stdexcept>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {

CoeffSeq HFunction::coefficients(std::int64_t L) const {
  CoeffSeq out(L, true);
  for (std::int64_t k = 0; k <= L; ++k) {
    cplx s{};
    for (std::int64_t j = 0; j < nodes; ++j) {
      const double w = weights[static_cast<std::size_t>(j)];
      if (w != 0.0) s += w * phase(j * k, 1, 2 * nodes);
    }
    out[k] = window.spline.coefficient(k) * s;
    out[-k] = std::conj(out[k]);
  }
  out[0] = 1.0;
  return out;
}

double HFunction::tail_from(std::int64_t L) const {
  if (L < 1) throw std::invalid_argument("tail index must be >= 1");
  double s = 0.0;
  for (double w : weights) s += std::abs(w);
  return s * window.spline.tail_bound(L);
}

bool HFunction::certified() const {
  for (const auto& c : certificates)
    if (!c.holds()) return false;
  return true;
}

HFunction build_h(double eps, const PrecisionContext& ctx, double tail_tol) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_h eps must be positive");
  HFunction H;
  H.eps = eps;
  H.arc = build_arc_poly(eps);
  H.m = H.arc.n;
  H.nodes = 2 * H.m + 1;
  H.window = build_window(H.nodes, H.m);

  std::vector<cplx> rhs;
  for (std::int64_t k = -H.m; k <= H.m; ++k) rhs.push_back(H.arc.P[k] / H.window.q[k]);
  const auto a = solve_vandermonde(H.nodes, rhs, ctx, H.solve);
  double max_imag = 0.0;
  for (const auto& v : a) {
    H.weights.push_back(v.real());
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  // mean before normalization
  double mean = 0.0;
  for (double w : H.weights) mean += w;
  mean *= H.window.spline.mean();
  H.normalization = mean;
  for (auto& w : H.weights) w /= mean;

  std::int64_t L = H.m;
  while (H.tail_from(L + 1) > tail_tol) L = std::max<std::int64_t>(2 * L, 16);
  // shrink back to the smallest adequate degree
  std::int64_t lo = H.m, hi = L;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (H.tail_from(mid + 1) <= tail_tol) hi = mid; else lo = mid + 1;
  }
  L = lo;
  H.h = H.coefficients(L);
  H.tail = H.tail_from(L + 1);
  H.l1_function = 0.0;
  for (double w : H.weights) H.l1_function += std::abs(w);

  std::vector<IntervalUnion::Piece> pieces;
  for (std::int64_t j = 0; j < H.nodes; ++j) {
    if (H.weights[static_cast<std::size_t>(j)] == 0.0) continue;
    const Rational s(j, 2 * H.nodes);
    pieces.emplace_back(s + H.window.offset, s + H.window.offset + H.window.width);
  }
  H.support = IntervalUnion(std::move(pieces));

  const auto half = IntervalUnion::single(0, Rational(1, 2));
  H.partial_sum = certified_sup(H.h, H.m, half);
  double match = 0.0;
  for (std::int64_t k = -H.m; k <= H.m; ++k)
    match = std::max(match, std::abs(H.h[k] - H.arc.P[k] / mean));

  H.certificates.push_back(boolean_certificate("h_mean_one", H.h[0] == cplx(1.0, 0.0),
                                               {{"normalization", mean}}));
  H.certificates.push_back(boolean_certificate("h_support_in_half", half.contains(H.support)));
  H.certificates.push_back(make_certificate("h_partial_sum_sup", H.partial_sum.bound, eps, false,
                                            sup_detail(H.partial_sum)));
  H.certificates.push_back(make_certificate(
      "vandermonde_residual", H.solve.residual, 1e-9, false,
      {{"condition", H.solve.condition}, {"bits", H.solve.precision_bits},
       {"escalated", H.solve.escalated}, {"max_imag_weight", max_imag}}));
  H.certificates.push_back(make_certificate("h_low_band_matches_arc", match, 1e-9, false));
  H.certificates.push_back(make_certificate("h_tail", H.tail, tail_tol, false, {{"degree", L}}));
  for (const auto& c : H.window.certificates) H.certificates.push_back(c);
  for (const auto& c : H.arc.certificates) H.certificates.push_back(c);
  return H;
}

}  // namespace nullseries
