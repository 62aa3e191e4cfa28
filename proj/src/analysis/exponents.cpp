#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include "nullseries/analysis.hpp"

namespace nullseries {

double thm3_exponent(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("d must lie in [0,1]");
  return -d / (d + 1.0) + (1.0 - d) / 2.0 * (d + 2.0) / (d + 1.0);
}

double thm3_root() {
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve([](double d) { return thm3_exponent(d); }, 0.0, 1.0,
                                             boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

double thm3_root_closed_form() {
  // (sqrt 17 - 3)/2 written without the cancellation
  return 4.0 / (std::sqrt(17.0) + 3.0);
}

std::vector<mpz_class> powers_of_two(int kmax) {
  std::vector<mpz_class> out;
  for (int k = 1; k <= kmax; ++k) {
    mpz_class v = 1;
    v <<= k;
    out.push_back(v);
  }
  return out;
}

namespace {
double log_mpz(const mpz_class& v) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}
}  // namespace

RateChain thm2_rate(const std::vector<mpz_class>& n_list) {
  if (n_list.size() < 2) throw std::invalid_argument("need at least two terms");
  if (n_list.front() < 2) throw std::invalid_argument("first term must be >= 2");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must strictly increase");
  RateChain c;
  c.exponent = std::log(2.0) / std::log(7.0 / 4.0);
  c.indices.push_back(0);
  c.r.push_back(n_list[0]);
  // r_{i+1}: first n_k with n_k^4 > r_i^7
  mpz_class r7;
  mpz_pow_ui(r7.get_mpz_t(), n_list[0].get_mpz_t(), 7);
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    mpz_class n4;
    mpz_pow_ui(n4.get_mpz_t(), n_list[k].get_mpz_t(), 4);
    if (n4 > r7) {
      c.indices.push_back(k);
      c.r.push_back(n_list[k]);
      mpz_pow_ui(r7.get_mpz_t(), n_list[k].get_mpz_t(), 7);
    }
  }
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    c.log_r.push_back(log_mpz(c.r[i]));
    c.bounds.push_back("||S_{r_" + std::to_string(i) + "}|| >= (lambda ||S_{r_i0}||)^(2^(" +
                       std::to_string(i) + " - i0))");
  }
  if (c.r.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(c.r.size());
    for (std::size_t i = 0; i < c.r.size(); ++i) {
      const double x = static_cast<double>(i), y = std::log(c.log_r[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    c.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return c;
}

}  // namespace nullseries
