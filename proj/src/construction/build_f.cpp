#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {
namespace {

using i128 = __int128;

std::int64_t saturate(i128 v) {
  const i128 top = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(v > top ? top : v);
}

// smallest even r with r > a, r > m and r/2 - 1 >= m (so S_m(H) = S_m(h))
std::int64_t minimal_r(std::int64_t a, std::int64_t m) {
  std::int64_t r = std::max({a + 1, m + 1, 2 * m + 2, std::int64_t{2}});
  if (r % 2) ++r;
  return r;
}

std::int64_t choose_a(double l1_function, double eps) {
  return static_cast<std::int64_t>(std::floor(2.0 * l1_function / eps)) + 1;
}

struct Projection {
  std::int64_t a, m, r, degree, n;
};

Projection project(double eps, const PrecisionContext& ctx) {
  const auto H = build_h(eps / 4, ctx);
  Projection p{};
  p.a = choose_a(H.l1_function, eps);
  p.m = H.m;
  p.r = minimal_r(p.a, p.m);
  p.degree = projected_f_degree(p.a, p.r);
  const i128 r = p.r;
  p.n = saturate(i128(p.m) * (r * r * r + r * r));
  return p;
}

nlohmann::json smallest_feasible_eps(std::int64_t cap, const PrecisionContext& ctx, double eps) {
  // the projected degree at minimal r is a necessary condition only
  if (project(0.5, ctx).degree > cap) return nullptr;
  double lo = eps, hi = 0.5;  // infeasible at lo, feasible at hi
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (project(mid, ctx).degree > cap) lo = mid; else hi = mid;
  }
  return hi;
}

}  // namespace

std::int64_t projected_f_degree(std::int64_t a, std::int64_t r) {
  const i128 R = r / 2 - 1, rr = r;
  return saturate(R * (1 + rr * rr * rr + i128(a - 1) * rr));
}

BlockLayout check_block_layout(std::int64_t a, std::int64_t m, std::int64_t r) {
  if (a < 1 || m < 0 || r < 2) throw std::invalid_argument("block layout needs a >= 1, m >= 0, r >= 2");
  BlockLayout b;
  const i128 r3 = i128(r) * r * r;
  const i128 n = i128(m) * (r3 + i128(r) * r);
  b.n = saturate(n);
  i128 max_lower = std::numeric_limits<std::int64_t>::min(), min_upper = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t j = 0; j < a; ++j) {
    const i128 sp = r3 + i128(j) * r;
    // r/2 as a half-integer: compare 2n against 2(...) +- r
    const i128 lower2 = 2 * i128(m) * sp + r, upper2 = 2 * i128(m + 1) * sp - r;
    max_lower = std::max(max_lower, lower2);
    min_upper = std::min(min_upper, upper2);
  }
  b.sandwich = 2 * n > max_lower && 2 * n < min_upper;
  b.max_lower = saturate(max_lower / 2);  // exact when r is even
  b.min_upper = saturate(min_upper / 2);

  const std::int64_t R = (r - 1) / 2;  // |p|, |q| < r/2
  const long double work = static_cast<long double>(a) * (2 * R + 1) * (2 * R + 1);
  if (work > 5e7L) {
    b.injective = false;
    b.collisions = -1;  // not checked
    return b;
  }
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(work));
  for (std::int64_t j = 0; j < a; ++j) {
    const i128 sp = r3 + i128(j) * r;
    for (std::int64_t q = -R; q <= R; ++q) {
      if (q == 0) continue;
      for (std::int64_t p = -R; p <= R; ++p) {
        const i128 l = i128(p) + i128(q) * sp;
        if (2 * (l < 0 ? -l : l) < r) ++b.collisions;
        if (!seen.insert(static_cast<std::int64_t>(l)).second) ++b.collisions;
      }
    }
  }
  b.injective = b.collisions == 0;
  return b;
}

bool StageFunction::certified() const {
  for (const auto& c : certificates)
    if (!c.holds()) return false;
  return true;
}

nlohmann::json StageFunction::certificates_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& c : certificates) arr.push_back(c.to_json());
  return arr;
}

StageFunction build_f(double eps, const BuildFOptions& opt) {
  if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("build_f eps must be in (0, 1/2]");
  const bool canonical = !opt.a_override && !opt.r_override;
  const auto H = build_h(eps / 4, opt.ctx);
  const std::int64_t m = H.m;
  const std::int64_t a = opt.a_override ? *opt.a_override : choose_a(H.l1_function, eps);
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  std::int64_t r = minimal_r(a, m);
  if (opt.r_override) {
    r = *opt.r_override;
    if (r % 2 || r <= a || r <= m || r / 2 - 1 < m)
      throw std::invalid_argument("r must be even with r > a, r > m and r/2 - 1 >= m");
  }

  auto resource_fail = [&](std::int64_t rr) {
    nlohmann::json d = {{"stage", "build_f"}, {"eps", eps}, {"a", a}, {"m", m}, {"r", rr},
                        {"h_l1", H.l1_function},
                        {"projected_degree", projected_f_degree(a, rr)},
                        {"n", check_block_layout(1, m, rr).n}, {"cap", opt.degree_cap}};
    if (canonical) d["smallest_feasible_eps"] = smallest_feasible_eps(opt.degree_cap, opt.ctx, eps);
    throw ResourceError("build_f: projected degree " + std::to_string(projected_f_degree(a, rr)) +
                            " exceeds cap " + std::to_string(opt.degree_cap),
                        d.dump());
  };
  if (projected_f_degree(a, r) > opt.degree_cap) resource_fail(r);

  const auto v = plateau_spline(exact_rational(eps) / 4).squeezed(a);
  const double P1 = l1_coeff_norm(H.h.truncated(m));
  const double h1 = l1_coeff_norm(H.h) + H.tail;

  double f_tail = 0.0, e_bound = 0.0;
  CoeffSeq Vhat;
  for (;;) {
    if (projected_f_degree(a, r) > opt.degree_cap) resource_fail(r);
    const std::int64_t R = r / 2 - 1;
    const double tail_v = v.tail_bound(R + 1);
    Vhat = v.coefficients(R);
    f_tail = static_cast<double>(a) * (tail_v * h1 + l1_coeff_norm(Vhat) * H.tail_from(R + 1));
    e_bound = static_cast<double>(a) * P1 * tail_v;
    if (opt.r_override || (f_tail < eps / 2 && e_bound < eps / 4)) break;
    r *= 2;
  }

  const std::int64_t R = r / 2 - 1;
  const auto Hc = H.coefficients(R);
  const std::int64_t D = projected_f_degree(a, r);
  CoeffSeq F(D, true);
  const std::int64_t r3 = r * r * r;
  for (std::int64_t j = 0; j < a; ++j) {
    const std::int64_t sp = r3 + j * r;
    for (std::int64_t q = -R; q <= R; ++q) {
      for (std::int64_t p = -R; p <= R; ++p) {
        F[p + q * sp] += Vhat[p] * Hc[q] * phase(p * j, 1, a);
      }
    }
  }
  double low_band = 0.0;
  for (std::int64_t l = -R; l <= R; ++l) {
    const cplx expect = (l % a == 0) ? static_cast<double>(a) * Vhat[l] : cplx{};
    low_band = std::max(low_band, std::abs(F[l] - expect));
  }
  const double nu = F[0].real();
  F.scale(1.0 / nu);
  F[0] = 1.0;

  StageFunction out;
  out.canonical = canonical;
  out.f = std::move(F);
  out.tail = f_tail / nu;
  out.n = m * (r3 + r * r);
  out.params.a = a;
  out.params.r = r;
  out.params.m = m;
  for (std::int64_t j = 0; j < a; ++j) out.params.spacings.push_back(r3 + j * r);
  out.params.h_source = "vandermonde";

  std::vector<IntervalUnion::Piece> pieces;
  for (std::int64_t j = 0; j < a; ++j) {
    const auto block = IntervalUnion::single(Rational(j, a), Rational(j + 1, a));
    const auto pre = periodic_preimage(H.support, static_cast<long>(r3 + j * r));
    const auto part = intersect(block, pre);
    pieces.insert(pieces.end(), part.pieces().begin(), part.pieces().end());
  }
  out.support = IntervalUnion(std::move(pieces));

  double off = 0.0;
  for (std::int64_t k = 1; k <= out.f.degree(); ++k) off = std::max(off, std::abs(out.f[k]));
  const auto sup = certified_sup(out.f, out.n, out.support);
  const auto layout = check_block_layout(a, m, r);

  out.params.extra = {{"eps", eps}, {"normalization", nu}, {"h_l1_function", H.l1_function},
                      {"h_l1_coeff", h1}, {"arc_degree", m}, {"degree", D},
                      {"max_lower", layout.max_lower}, {"min_upper", layout.min_upper}};
  out.certificates.push_back(boolean_certificate("f_mean_one", out.f[0] == cplx(1.0, 0.0),
                                                 {{"normalization", nu}}));
  out.certificates.push_back(make_certificate("f_coeff_sup", off + out.tail, eps, true,
                                              {{"stored_max", off}, {"tail", out.tail}}));
  out.certificates.push_back(make_certificate("f_partial_sum_sup", sup.bound + out.tail, eps, true,
                                              sup_detail(sup)));
  out.certificates.push_back(make_certificate("f_truncation", f_tail, eps / 2, true));
  out.certificates.push_back(make_certificate("f_partial_sum_vs_v", e_bound, eps / 4, true));
  out.certificates.push_back(boolean_certificate("f_block_injective", layout.injective,
                                                 {{"collisions", layout.collisions}}));
  out.certificates.push_back(boolean_certificate(
      "f_n_sandwich", layout.sandwich,
      {{"n", layout.n}, {"max_lower", layout.max_lower}, {"min_upper", layout.min_upper}}));
  out.certificates.push_back(make_certificate("f_low_band", low_band, 1e-12, false));
  for (const auto& c : H.certificates) {
    auto cc = c;
    cc.name = "h." + c.name;
    out.certificates.push_back(cc);
  }
  return out;
}

}  // namespace nullseries
