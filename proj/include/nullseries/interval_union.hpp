#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace nullseries {

using Rational = mpq_class;

// Closed, sorted, pairwise disjoint subintervals of [0, 1].
class IntervalUnion {
 public:
  using Piece = std::pair<Rational, Rational>;

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Piece> pieces);  // normalizes

  static IntervalUnion unit();
  static IntervalUnion single(const Rational& a, const Rational& b);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }

  Rational measure() const;
  bool contains(const Rational& x) const;
  bool contains(const IntervalUnion& other) const;
  Rational max_component_length() const;

  bool operator==(const IntervalUnion& o) const { return pieces_ == o.pieces_; }

 private:
  std::vector<Piece> pieces_;
};

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
// A + [-delta, delta], clipped to [0, 1].
IntervalUnion inflate(const IntervalUnion& a, const Rational& delta);
Rational measure(const IntervalUnion& a);
// {x in [0,1] : r x mod 1 in A}, as r scaled copies.
IntervalUnion periodic_preimage(const IntervalUnion& a, long r);
// Translate by t and scale by s: s * (A + t), not clipped. Caller keeps it in [0,1].
IntervalUnion affine_image(const IntervalUnion& a, const Rational& scale, const Rational& shift);

// Exact rational from a double (binary expansion).
Rational exact_rational(double x);
// Smallest k / 2^bits >= x.
Rational rational_upper(double x, int bits = 60);

}  // namespace nullseries
