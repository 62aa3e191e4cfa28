#include <cmath>
#include <stdexcept>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {
namespace {

struct Block {
  CoeffSeq coeffs;
  double tail = 0.0;
  IntervalUnion support;
  std::int64_t m = 0;
  bool canonical = true;
  bool certified = true;
  std::string source;
  nlohmann::json params = nlohmann::json::object();
};

Block make_block(double eps_h, const ReduceOptions& opt) {
  Block b;
  if (opt.source == HSource::Assembled) {
    auto fo = opt.f_options;
    fo.ctx = opt.ctx;
    auto sf = build_f(std::min(eps_h, 0.5), fo);
    b.coeffs = std::move(sf.f);
    b.tail = sf.tail;
    b.support = std::move(sf.support);
    b.m = sf.n;
    b.canonical = sf.canonical;
    b.certified = sf.certified();
    b.source = "assembled";
    b.params = {{"a", sf.params.a}, {"r", sf.params.r}, {"m", sf.params.m}};
  } else {
    auto H = build_h(eps_h, opt.ctx);
    b.coeffs = std::move(H.h);
    b.tail = H.tail;
    b.support = std::move(H.support);
    b.m = H.m;
    b.canonical = false;
    b.certified = H.certified();
    b.source = "vandermonde";
  }
  return b;
}

}  // namespace

StageFunction initial_stage() {
  StageFunction f;
  f.f = CoeffSeq::delta();
  f.n = 2;
  f.support = IntervalUnion::unit();
  f.params.h_source = "none";
  return f;
}

StageFunction reduce_coeffs(const StageFunction& f, double eps, std::int64_t N_min,
                            const ReduceOptions& opt) {
  if (!(eps > 0.0)) throw std::invalid_argument("reduce eps must be positive");
  if (N_min < 1) throw std::invalid_argument("N_min must be >= 1");
  const double f1 = f.l1_norm();
  const double eps_h = eps / (2.0 * f1);
  const auto h = make_block(eps_h, opt);
  const double h1 = l1_coeff_norm(h.coeffs) + h.tail;
  const double need = eps / (2.0 * h1);
  if (!(f.tail < need)) throw NumericError("stored tail of f too large for any r");

  // r(m + 1/2) > N_min  <=>  r (2m + 1) > 2 N_min
  std::int64_t r = 2 * N_min / (2 * h.m + 1) + 1;
  if (r % 2) ++r;
  if (r < 2) r = 2;
  while (l1_tail(f.f, r / 2) + f.tail >= need) r += 2;

  const std::int64_t deg = f.f.degree() + r * h.coeffs.degree();
  if (h.coeffs.degree() > 0 && (r > opt.degree_cap / h.coeffs.degree() || deg > opt.degree_cap)) {
    nlohmann::json d = {{"stage", "reduce_coeffs"}, {"eps", eps}, {"r", r},
                        {"projected_degree", deg}, {"cap", opt.degree_cap}};
    throw ResourceError("reduce_coeffs: degree exceeds cap", d.dump());
  }

  StageFunction g;
  g.canonical = f.canonical && h.canonical;
  g.f = coeff_convolve(f.f, dilate(h.coeffs, r, opt.degree_cap), opt.degree_cap);
  g.tail = f.tail * h1 + l1_coeff_norm(f.f) * h.tail;
  g.n = r * h.m + r / 2;
  g.support = intersect(f.support, periodic_preimage(h.support, static_cast<long>(r)));
  g.params.r = r;
  g.params.m = h.m;
  g.params.h_source = h.source;
  g.params.extra = {{"eps", eps}, {"eps_h", eps_h}, {"h_l1", h1}, {"f_l1", f1}, {"N_min", N_min},
                    {"h_params", h.params}, {"degree", g.f.degree()}};

  double drift = 0.0;
  for (std::int64_t k = -g.f.degree(); k <= g.f.degree(); ++k)
    drift = std::max(drift, std::abs(g.f[k] - f.f.at(k)));
  const auto sup = certified_sup(g.f, g.n, g.support);

  g.certificates.push_back(boolean_certificate("g_support_subset", f.support.contains(g.support)));
  g.certificates.push_back(make_certificate("g_drift", drift + g.tail + f.tail, eps, true,
                                            {{"stored_drift", drift}}));
  g.certificates.push_back(make_certificate("g_partial_sum_sup", sup.bound + g.tail, eps, true,
                                            sup_detail(sup)));
  g.certificates.push_back(boolean_certificate("g_n_exceeds_N", g.n > N_min, {{"n", g.n}}));
  g.certificates.push_back(boolean_certificate("g_h_block_certified", h.certified));
  return g;
}

}  // namespace nullseries
