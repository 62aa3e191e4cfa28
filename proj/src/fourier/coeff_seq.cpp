#include "nullseries/coeff_seq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nullseries/errors.hpp"

namespace nullseries {

CoeffSeq::CoeffSeq(std::int64_t degree, bool real_valued) : real_(real_valued) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  c_.assign(static_cast<std::size_t>(2 * degree + 1), cplx{});
}

CoeffSeq CoeffSeq::delta() {
  CoeffSeq d(0, true);
  d[0] = 1.0;
  return d;
}

CoeffSeq CoeffSeq::from_entries(std::vector<cplx> entries, bool real_valued) {
  if (entries.size() % 2 != 1) throw std::invalid_argument("entry count must be odd");
  CoeffSeq c;
  c.c_ = std::move(entries);
  c.real_ = real_valued;
  return c;
}

CoeffSeq& CoeffSeq::trim() {
  auto n = degree();
  std::size_t drop = 0;
  while (n - static_cast<std::int64_t>(drop) > 0) {
    const auto k = static_cast<std::size_t>(n) - drop;
    const auto lo = c_[static_cast<std::size_t>(n) - k];
    const auto hi = c_[static_cast<std::size_t>(n) + k];
    if (lo != cplx{} || hi != cplx{}) break;
    ++drop;
  }
  if (drop > 0) {
    c_.erase(c_.end() - static_cast<std::ptrdiff_t>(drop), c_.end());
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  return *this;
}

CoeffSeq CoeffSeq::truncated(std::int64_t n) const {
  if (n < 0) throw std::invalid_argument("negative truncation degree");
  CoeffSeq out(n, real_);
  const auto m = std::min(n, degree());
  for (std::int64_t l = -m; l <= m; ++l) out[l] = (*this)[l];
  return out;
}

bool CoeffSeq::hermitian(double tol) const {
  const auto n = degree();
  for (std::int64_t l = 0; l <= n; ++l) {
    if (std::abs((*this)[l] - std::conj((*this)[-l])) > tol) return false;
  }
  return true;
}

CoeffSeq& CoeffSeq::scale(cplx s) {
  for (auto& v : c_) v *= s;
  if (s.imag() != 0.0) real_ = false;
  return *this;
}

CoeffSeq coeff_convolve(const CoeffSeq& c, const CoeffSeq& d, std::int64_t degree_cap) {
  const auto nc = c.degree(), nd = d.degree();
  if (nc + nd > degree_cap) {
    throw ResourceError("convolution degree exceeds cap",
                        "{\"degree\":" + std::to_string(nc + nd) +
                            ",\"cap\":" + std::to_string(degree_cap) + "}");
  }
  CoeffSeq out(nc + nd, c.real_valued() && d.real_valued());
  // sparse inputs (dilations) are common: skip exact zeros of d
  std::vector<std::int64_t> nz;
  for (std::int64_t l = -nd; l <= nd; ++l)
    if (d[l] != cplx{}) nz.push_back(l);
  for (std::int64_t k = -(nc + nd); k <= nc + nd; ++k) {
    cplx acc{};
    // l in [k - nc, k + nc], ascending
    auto it = std::lower_bound(nz.begin(), nz.end(), k - nc);
    for (; it != nz.end() && *it <= k + nc; ++it) acc += c[k - *it] * d[*it];
    out[k] = acc;
  }
  return out;
}

CoeffSeq dilate(const CoeffSeq& c, std::int64_t r, std::int64_t degree_cap) {
  if (r < 1) throw std::invalid_argument("dilation factor must be >= 1");
  const auto n = c.degree();
  if (n > 0 && r > degree_cap / n) {
    throw ResourceError("dilation degree exceeds cap",
                        "{\"degree\":" + std::to_string(r) + "*" + std::to_string(n) +
                            ",\"cap\":" + std::to_string(degree_cap) + "}");
  }
  CoeffSeq out(r * n, c.real_valued());
  for (std::int64_t l = -n; l <= n; ++l) out[r * l] = c[l];
  return out;
}

CoeffSeq subtract(const CoeffSeq& a, const CoeffSeq& b) {
  const auto n = std::max(a.degree(), b.degree());
  CoeffSeq out(n, a.real_valued() && b.real_valued());
  for (std::int64_t l = -n; l <= n; ++l) out[l] = a.at(l) - b.at(l);
  return out;
}

double l2_norm(const CoeffSeq& c) {
  double s = 0.0;
  for (const auto& v : c.entries()) s += std::norm(v);
  return std::sqrt(s);
}

double l1_coeff_norm(const CoeffSeq& c) {
  double s = 0.0;
  for (const auto& v : c.entries()) s += std::abs(v);
  return s;
}

double sup_coeff_norm(const CoeffSeq& c) {
  double s = 0.0;
  for (const auto& v : c.entries()) s = std::max(s, std::abs(v));
  return s;
}

double l1_tail(const CoeffSeq& c, std::int64_t from) {
  const auto n = c.degree();
  double s = 0.0;
  for (std::int64_t l = -n; l <= n; ++l)
    if (std::llabs(l) >= from) s += std::abs(c[l]);
  return s;
}

cplx phase(std::int64_t l, std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("phase denominator must be positive");
  __int128 t = static_cast<__int128>(l) * p;
  auto rem = static_cast<std::int64_t>(t % q);
  if (rem < 0) rem += q;
  // centre to keep the angle small
  if (2 * rem > q) rem -= q;
  const double ang = -2.0 * std::numbers::pi * (static_cast<double>(rem) / static_cast<double>(q));
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace nullseries
