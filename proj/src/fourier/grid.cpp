#include "nullseries/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nullseries/errors.hpp"

namespace nullseries {
namespace {

std::mutex plan_mutex;  // fftw planner is not thread safe

void fft_inplace(std::vector<cplx>& buf, int sign) {
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(buf.size()), p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace

bool is_power_of_two(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

std::int64_t grid_size_for(std::int64_t n) {
  std::int64_t m = 1;
  while (m < 4 * (2 * n + 1)) m <<= 1;
  return m;
}

GridSamples partial_sum_derivative_eval(const CoeffSeq& c, std::int64_t n, int k,
                                        std::int64_t M) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (!is_power_of_two(M)) throw std::invalid_argument("grid size must be a power of two");
  if (M < 2 * n + 1) {
    throw AliasingError("grid of " + std::to_string(M) + " points aliases degree " +
                        std::to_string(n));
  }
  const auto top = std::min(n, c.degree());
  std::vector<cplx> buf(static_cast<std::size_t>(M));
  double cmax = 0.0;
  for (std::int64_t l = -top; l <= top; ++l) {
    cplx v = c[l];
    if (k > 0) v *= std::pow(cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(l)), k);
    cmax = std::max(cmax, std::abs(v));
    buf[static_cast<std::size_t>(((l % M) + M) % M)] = v;
  }
  fft_inplace(buf, FFTW_BACKWARD);
  GridSamples g;
  g.M = M;
  g.values = std::move(buf);
  g.error_bound = static_cast<double>(2 * n + 1) * cmax * std::numeric_limits<double>::epsilon() / 2;
  return g;
}

GridSamples partial_sum_eval(const CoeffSeq& c, std::int64_t n, std::int64_t M) {
  return partial_sum_derivative_eval(c, n, 0, M);
}

CoeffSeq coefficients_from_samples(const std::vector<cplx>& samples, std::int64_t n,
                                   bool real_valued) {
  const auto M = static_cast<std::int64_t>(samples.size());
  if (M < 2 * n + 1) throw AliasingError("too few samples for requested degree");
  std::vector<cplx> buf = samples;
  fft_inplace(buf, FFTW_FORWARD);
  CoeffSeq out(n, real_valued);
  for (std::int64_t l = -n; l <= n; ++l)
    out[l] = buf[static_cast<std::size_t>(((l % M) + M) % M)] / static_cast<double>(M);
  if (real_valued) {
    for (std::int64_t l = 1; l <= n; ++l) {
      const cplx avg = 0.5 * (out[l] + std::conj(out[-l]));
      out[l] = avg;
      out[-l] = std::conj(avg);
    }
    out[0] = out[0].real();
  }
  return out;
}

cplx eval_at(const CoeffSeq& c, std::int64_t n, double x) {
  const auto top = std::min(n, c.degree());
  cplx s{};
  for (std::int64_t l = -top; l <= top; ++l) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(l) * x;
    s += c[l] * cplx(std::cos(ang), std::sin(ang));
  }
  return s;
}

}  // namespace nullseries
