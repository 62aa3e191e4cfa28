#include "nullseries/certify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nullseries/grid.hpp"

namespace nullseries {

std::int64_t certification_grid(std::int64_t n) {
  // 16x oversampling keeps the Taylor correction small; capped at 2^24 points
  const auto base = grid_size_for(n);
  return std::max(base, std::min<std::int64_t>(std::max<std::int64_t>(16 * base, 1 << 14), 1 << 24));
}

double derivative_weight(const CoeffSeq& c, std::int64_t n, int k) {
  const auto top = std::min(n, c.degree());
  double w = 0.0;
  for (std::int64_t l = -top; l <= top; ++l) {
    w += std::pow(2.0 * std::numbers::pi * static_cast<double>(std::llabs(l)), k) * std::abs(c[l]);
  }
  return w;
}

SupCertificate certified_sup(const CoeffSeq& c, std::int64_t n, const IntervalUnion& region,
                             int order, std::int64_t M) {
  if (order < 1) throw std::invalid_argument("certificate order must be >= 1");
  if (M == 0) M = certification_grid(n);
  SupCertificate cert;
  cert.grid = M;
  cert.order = order;
  if (region.empty()) return cert;

  // x_j within 1/(2M) of [a,b]  <=>  ceil(aM - 1/2) <= j <= floor(bM + 1/2)
  std::vector<char> sel(static_cast<std::size_t>(M), 0);
  const Rational half(1, 2);
  for (const auto& [a, b] : region.pieces()) {
    Rational lo = a * M - half, hi = b * M + half;
    mpz_class jl, jh;
    mpz_cdiv_q(jl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(jh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    for (long j = jl.get_si(); j <= jh.get_si(); ++j) {
      sel[static_cast<std::size_t>(((j % M) + M) % M)] = 1;
    }
  }

  const double rho = 0.5 / static_cast<double>(M);
  std::vector<double> acc(static_cast<std::size_t>(M), 0.0);
  double fft_err = 0.0;
  double fact = 1.0, rk = 1.0;
  for (int k = 0; k < order; ++k) {
    if (k > 0) {
      fact *= k;
      rk *= rho;
    }
    const auto g = partial_sum_derivative_eval(c, n, k, M);
    fft_err += g.error_bound * rk / fact;
    for (std::int64_t j = 0; j < M; ++j) {
      if (!sel[static_cast<std::size_t>(j)]) continue;
      const double v = std::abs(g.values[static_cast<std::size_t>(j)]);
      acc[static_cast<std::size_t>(j)] += v * rk / fact;
      if (k == 0) cert.grid_max = std::max(cert.grid_max, v);
    }
  }
  double best = 0.0;
  for (std::int64_t j = 0; j < M; ++j) {
    if (!sel[static_cast<std::size_t>(j)]) continue;
    ++cert.points;
    best = std::max(best, acc[static_cast<std::size_t>(j)]);
  }
  const double remainder =
      derivative_weight(c, n, order) * std::pow(rho, order) / (fact * order);
  cert.bound = best + remainder + fft_err;
  cert.correction = cert.bound - cert.grid_max;
  return cert;
}

}  // namespace nullseries

namespace nullseries {

nlohmann::json Certificate::to_json() const {
  return {{"name", name}, {"value", value}, {"limit", limit}, {"strict", strict},
          {"holds", holds()}, {"slack", slack()}, {"detail", detail}};
}

Certificate make_certificate(std::string name, double value, double limit, bool strict,
                             nlohmann::json detail) {
  Certificate c;
  c.name = std::move(name);
  c.value = value;
  c.limit = limit;
  c.strict = strict;
  c.detail = std::move(detail);
  return c;
}

Certificate boolean_certificate(std::string name, bool ok, nlohmann::json detail) {
  // encoded as 0 <= 0 (holds) or 1 <= 0 (fails)
  return make_certificate(std::move(name), ok ? 0.0 : 1.0, 0.0, false, std::move(detail));
}

nlohmann::json sup_detail(const SupCertificate& s) {
  return {{"grid_max", s.grid_max}, {"correction", s.correction}, {"grid", s.grid},
          {"order", s.order}, {"points", s.points}};
}

double grid_max_on(const CoeffSeq& c, std::int64_t n, const IntervalUnion& region, std::int64_t M) {
  if (region.empty()) return 0.0;
  const auto g = partial_sum_eval(c, n, M);
  double best = 0.0;
  for (const auto& [a, b] : region.pieces()) {
    Rational lo = a * M, hi = b * M;
    mpz_class jl, jh;
    mpz_cdiv_q(jl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(jh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    for (long j = jl.get_si(); j <= jh.get_si(); ++j) {
      best = std::max(best, std::abs(g.values[static_cast<std::size_t>(j % M)]));
    }
  }
  return best;
}

}  // namespace nullseries
