#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace nullseries {

using cplx = std::complex<double>;

inline constexpr std::int64_t kDefaultDegreeCap = std::int64_t{1} << 26;

// Fourier coefficients c_l for l = -N..N, stored at offset l + N.
class CoeffSeq {
 public:
  CoeffSeq() : c_(1, cplx{}) {}
  explicit CoeffSeq(std::int64_t degree, bool real_valued = false);

  static CoeffSeq delta();
  static CoeffSeq from_entries(std::vector<cplx> entries, bool real_valued);

  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size() / 2); }
  bool real_valued() const { return real_; }
  void set_real_valued(bool r) { real_ = r; }

  // Zero outside [-N, N].
  cplx at(std::int64_t l) const {
    const auto n = degree();
    return (l < -n || l > n) ? cplx{} : c_[static_cast<std::size_t>(l + n)];
  }
  cplx& operator[](std::int64_t l) { return c_[static_cast<std::size_t>(l + degree())]; }
  const cplx& operator[](std::int64_t l) const { return c_[static_cast<std::size_t>(l + degree())]; }

  const std::vector<cplx>& entries() const { return c_; }
  std::vector<cplx>& entries() { return c_; }

  // Drop trailing (c_N, c_-N) pairs that are exactly zero.
  CoeffSeq& trim();
  // Copy restricted to |l| <= n (n may exceed the degree: zero padding).
  CoeffSeq truncated(std::int64_t n) const;
  bool hermitian(double tol) const;
  CoeffSeq& scale(cplx s);

 private:
  std::vector<cplx> c_;
  bool real_ = false;
};

// Coefficients of the pointwise product. Direct sum, ascending index order.
CoeffSeq coeff_convolve(const CoeffSeq& c, const CoeffSeq& d,
                        std::int64_t degree_cap = kDefaultDegreeCap);

// Coefficients of x -> f(r x).
CoeffSeq dilate(const CoeffSeq& c, std::int64_t r,
                std::int64_t degree_cap = kDefaultDegreeCap);

CoeffSeq subtract(const CoeffSeq& a, const CoeffSeq& b);

double l2_norm(const CoeffSeq& c);
double l1_coeff_norm(const CoeffSeq& c);
double sup_coeff_norm(const CoeffSeq& c);

// sum_{|l| >= from} |c_l|
double l1_tail(const CoeffSeq& c, std::int64_t from);

// Exact phase e(-l p / q) = exp(-2 pi i l p / q) with integer argument reduction.
cplx phase(std::int64_t l, std::int64_t p, std::int64_t q);

}  // namespace nullseries
