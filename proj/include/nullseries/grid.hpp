#pragma once

#include <cstdint>
#include <vector>

#include "nullseries/coeff_seq.hpp"

namespace nullseries {

struct GridSamples {
  std::int64_t M = 0;
  std::vector<cplx> values;  // S(j / M)
  double error_bound = 0.0;
};

// Smallest power of two >= 4 (2n + 1).
std::int64_t grid_size_for(std::int64_t n);
bool is_power_of_two(std::int64_t m);

// S_n(c; j/M) for j < M via one inverse FFT.
GridSamples partial_sum_eval(const CoeffSeq& c, std::int64_t n, std::int64_t M);

// Same, for the k-th derivative: coefficients multiplied by (2 pi i l)^k.
GridSamples partial_sum_derivative_eval(const CoeffSeq& c, std::int64_t n, int k,
                                        std::int64_t M);

// c_l estimates from samples: (1/M) sum_j v_j e(-l j / M), |l| <= n.
CoeffSeq coefficients_from_samples(const std::vector<cplx>& samples, std::int64_t n,
                                   bool real_valued);

// Plain sum, for spot checks.
cplx eval_at(const CoeffSeq& c, std::int64_t n, double x);

}  // namespace nullseries
