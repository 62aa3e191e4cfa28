#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {
namespace {

template <typename T>
struct Cx {
  T re, im;
  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Cx operator/(const Cx& o) const {
    const T d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  T norm2() const { return re * re + im * im; }
};

// Square system V a = b with V_{k,j} = e(-j k / (2N)), k = -n..n, j = 0..2n.
template <typename T>
std::vector<Cx<T>> build_and_solve(std::int64_t N, const std::vector<cplx>& rhs, double& residual) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const auto dim = static_cast<std::size_t>(N);
  const std::int64_t n = (N - 1) / 2;
  const T two_pi = 2 * boost::math::constants::pi<T>();
  std::vector<std::vector<Cx<T>>> V(dim, std::vector<Cx<T>>(dim));
  std::vector<Cx<T>> b(dim);
  for (std::int64_t k = -n; k <= n; ++k) {
    const auto row = static_cast<std::size_t>(k + n);
    for (std::int64_t j = 0; j < N; ++j) {
      std::int64_t e = (j * k) % (2 * N);
      if (e < 0) e += 2 * N;
      const T ang = -two_pi * T(e) / T(2 * N);
      V[row][static_cast<std::size_t>(j)] = {cos(ang), sin(ang)};
    }
    b[row] = {T(rhs[row].real()), T(rhs[row].imag())};
  }
  auto A = V;
  auto x = b;
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < dim; ++r)
      if (A[r][c].norm2() > A[piv][c].norm2()) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(x[c], x[piv]);
    for (std::size_t r = c + 1; r < dim; ++r) {
      const Cx<T> f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < dim; ++k) A[r][k] = A[r][k] - f * A[c][k];
      x[r] = x[r] - f * x[c];
    }
  }
  for (std::size_t c = dim; c-- > 0;) {
    Cx<T> s = x[c];
    for (std::size_t k = c + 1; k < dim; ++k) s = s - A[c][k] * x[k];
    x[c] = s / A[c][c];
  }
  T rn = 0, bn = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    Cx<T> s{T(0), T(0)};
    for (std::size_t k = 0; k < dim; ++k) s = s + V[r][k] * x[k];
    rn += (s - b[r]).norm2();
    bn += b[r].norm2();
  }
  residual = bn > 0 ? static_cast<double>(sqrt(rn / bn)) : static_cast<double>(sqrt(rn));
  return x;
}

double condition_estimate(std::int64_t N) {
  const std::int64_t n = (N - 1) / 2;
  Eigen::MatrixXcd V(N, N);
  for (std::int64_t k = -n; k <= n; ++k)
    for (std::int64_t j = 0; j < N; ++j) V(k + n, j) = phase(j * k, 1, 2 * N);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

// residual of the returned (double) weights, accumulated in long double
double rounded_residual(std::int64_t N, const std::vector<cplx>& a, const std::vector<cplx>& rhs) {
  const std::int64_t n = (N - 1) / 2;
  long double rn = 0, bn = 0;
  for (std::int64_t k = -n; k <= n; ++k) {
    std::complex<long double> s{};
    for (std::int64_t j = 0; j < N; ++j) {
      const auto ph = phase(j * k, 1, 2 * N);
      s += std::complex<long double>(ph.real(), ph.imag()) *
           std::complex<long double>(a[static_cast<std::size_t>(j)].real(),
                                     a[static_cast<std::size_t>(j)].imag());
    }
    const auto& b = rhs[static_cast<std::size_t>(k + n)];
    rn += std::norm(s - std::complex<long double>(b.real(), b.imag()));
    bn += std::norm(std::complex<long double>(b.real(), b.imag()));
  }
  return static_cast<double>(std::sqrt(bn > 0 ? rn / bn : rn));
}

}  // namespace

std::vector<cplx> solve_vandermonde(std::int64_t nodes, const std::vector<cplx>& rhs,
                                    const PrecisionContext& ctx, VandermondeReport& report) {
  if (nodes < 1 || nodes % 2 == 0) throw std::invalid_argument("node count must be odd");
  if (static_cast<std::int64_t>(rhs.size()) != nodes) throw std::invalid_argument("rhs size mismatch");
  report.condition = condition_estimate(nodes);
  std::vector<cplx> out(static_cast<std::size_t>(nodes));
  if (report.condition > 1e8 || ctx.bits > 53) {
    using boost::multiprecision::mpfr_float;
    const int bits = std::max(128, ctx.bits);
    const auto old = mpfr_float::default_precision();
    mpfr_float::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    auto x = build_and_solve<mpfr_float>(nodes, rhs, report.residual);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = {static_cast<double>(x[i].re), static_cast<double>(x[i].im)};
    mpfr_float::default_precision(old);
    report.precision_bits = bits;
    report.escalated = true;
  } else {
    auto x = build_and_solve<double>(nodes, rhs, report.residual);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {x[i].re, x[i].im};
    report.precision_bits = 53;
  }
  report.residual = std::max(report.residual, rounded_residual(nodes, out, rhs));
  ctx.enforce("vandermonde", report.residual);
  return out;
}

}  // namespace nullseries
