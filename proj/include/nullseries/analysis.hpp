#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"
#include "json.hpp"

namespace nullseries {

struct DimensionEstimate {
  std::vector<Rational> scales;
  std::vector<std::int64_t> counts;
  double slope = 0.0;
  double residual = 0.0;  // rms of the fit
  bool empty = false;
};

// N(d) = number of cells [i d, (i+1) d) meeting K in positive length
// (point components count their cell).
std::int64_t cover_count(const IntervalUnion& K, const Rational& delta);
DimensionEstimate box_dimension(const IntervalUnion& K, const std::vector<Rational>& scales);
// middle-thirds Cantor set after `level` steps
IntervalUnion cantor_prefab(int level);

struct GrowthReport {
  std::int64_t r = 0, s = 0;
  double norm_r = 0.0, norm_s = 0.0;  // L^2 norms of S_r, S_s
  double rho = 0.0;                   // ||S_s|| / ||S_r||^2
  double lhs = 0.0;                   // ||S_r||^2
  double inflation_measure = 0.0;
  double term_measure = 0.0;          // sqrt(inflation measure)
  double term_degree = 0.0;           // ||S_r|| r log^4 s / s
  double minimal_C = 0.0;
  bool s_large = false;               // s > r^{3/2} log^4 r
  nlohmann::json to_json() const;
};
GrowthReport growth_check(const CoeffSeq& c, const IntervalUnion& K, std::int64_t r, std::int64_t s);
bool s_exceeds_threshold(std::int64_t r, std::int64_t s);

struct SupportDetection {
  IntervalUnion detected;
  std::int64_t M = 0;
  std::string label = "proxy";
};
// cell around j/M kept when |S_{n_k}(j/M)| > tau[k] for every k in the top quartile
SupportDetection support_detect(const CoeffSeq& c, const std::vector<std::int64_t>& n_list,
                                std::int64_t M, const std::vector<double>& tau);

double thm3_exponent(double d);
double thm3_root();  // bracketing root finder on [0, 1]
double thm3_root_closed_form();

struct RateChain {
  std::vector<std::size_t> indices;  // positions in n_list
  std::vector<mpz_class> r;
  std::vector<double> log_r;
  double exponent = 0.0;      // log 2 / log(7/4)
  double fitted_slope = 0.0;  // of log log r_i against i
  std::vector<std::string> bounds;  // ||S_{r_i}|| >= (lambda ||S_{r_i0}||)^{2^{i-i0}}
};
RateChain thm2_rate(const std::vector<mpz_class>& n_list);
std::vector<mpz_class> powers_of_two(int kmax);

struct LocalisationReport {
  CoeffSeq E;                 // E_n = phi S_n(c) - S_n(c * phi^)
  double worst_slack = 0.0;   // min over offsets of bound - |E_n(j)|
  std::int64_t offsets = 0;
  nlohmann::json to_json() const;
};
LocalisationReport localisation_error_spectrum(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n);
// same quantity via convolutions, for cross-checks
CoeffSeq localisation_error_direct(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n);

// sup |phi S_n(c) - S_n(c * phi^)| with a certified grid correction
double rajchman_gap(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n, std::int64_t M = 0);

}  // namespace nullseries
