#include "nullseries/interval_union.hpp"

#include <algorithm>
#include <stdexcept>

namespace nullseries {

IntervalUnion::IntervalUnion(std::vector<Piece> pieces) {
  for (const auto& [a, b] : pieces) {
    if (a < 0 || b > 1 || a > b) throw std::invalid_argument("interval outside [0,1] or reversed");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.first < y.first; });
  for (auto& p : pieces) {
    if (!pieces_.empty() && p.first <= pieces_.back().second) {
      if (p.second > pieces_.back().second) pieces_.back().second = p.second;
    } else {
      pieces_.push_back(std::move(p));
    }
  }
}

IntervalUnion IntervalUnion::unit() { return single(0, 1); }

IntervalUnion IntervalUnion::single(const Rational& a, const Rational& b) {
  return IntervalUnion({{a, b}});
}

Rational IntervalUnion::measure() const {
  Rational s = 0;
  for (const auto& [a, b] : pieces_) s += b - a;
  return s;
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const Piece& p) { return v < p.first; });
  if (it == pieces_.begin()) return false;
  --it;
  return x <= it->second;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  std::size_t i = 0;
  for (const auto& [a, b] : other.pieces_) {
    while (i < pieces_.size() && pieces_[i].second < a) ++i;
    if (i == pieces_.size()) return false;
    if (pieces_[i].first > a || pieces_[i].second < b) return false;
  }
  return true;
}

Rational IntervalUnion::max_component_length() const {
  Rational m = 0;
  for (const auto& [a, b] : pieces_) m = std::max(m, Rational(b - a));
  return m;
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<IntervalUnion::Piece> out;
  const auto& pa = a.pieces();
  const auto& pb = b.pieces();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Rational lo = std::max(pa[i].first, pb[j].first);
    const Rational hi = std::min(pa[i].second, pb[j].second);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (pa[i].second < pb[j].second) ++i; else ++j;
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  auto pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return IntervalUnion(std::move(pieces));
}

IntervalUnion inflate(const IntervalUnion& a, const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("negative inflation");
  std::vector<IntervalUnion::Piece> out;
  out.reserve(a.size());
  for (const auto& [lo, hi] : a.pieces()) {
    Rational l = lo - delta, h = hi + delta;
    if (l < 0) l = 0;
    if (h > 1) h = 1;
    out.emplace_back(l, h);
  }
  return IntervalUnion(std::move(out));
}

Rational measure(const IntervalUnion& a) { return a.measure(); }

IntervalUnion periodic_preimage(const IntervalUnion& a, long r) {
  if (r < 1) throw std::invalid_argument("preimage factor must be >= 1");
  std::vector<IntervalUnion::Piece> out;
  out.reserve(a.size() * static_cast<std::size_t>(r));
  const Rational inv(1, r);
  for (long t = 0; t < r; ++t) {
    for (const auto& [lo, hi] : a.pieces()) out.emplace_back((lo + t) * inv, (hi + t) * inv);
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion affine_image(const IntervalUnion& a, const Rational& scale, const Rational& shift) {
  std::vector<IntervalUnion::Piece> out;
  out.reserve(a.size());
  for (const auto& [lo, hi] : a.pieces()) out.emplace_back(scale * (lo + shift), scale * (hi + shift));
  return IntervalUnion(std::move(out));
}

Rational exact_rational(double x) {
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

Rational rational_upper(double x, int bits) {
  Rational q = exact_rational(x);
  mpz_class scale = 1;
  scale <<= bits;
  q *= scale;
  mpz_class num;
  mpz_cdiv_q(num.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational out(num, scale);
  out.canonicalize();
  return out;
}

}  // namespace nullseries
