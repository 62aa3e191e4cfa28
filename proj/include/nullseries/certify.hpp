#pragma once

#include <cstdint>
#include <string>

#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"

namespace nullseries {

// Rigorous bound on sup_{x in region} |S_n(c; x)| from a grid plus a Taylor remainder.
struct SupCertificate {
  std::string name;
  double grid_max = 0.0;     // max |S_n| over the selected grid points
  double correction = 0.0;   // bound - grid_max
  double bound = 0.0;        // certified upper bound
  std::int64_t grid = 0;
  int order = 1;             // 1 = first-order (Bernstein) correction
  std::int64_t points = 0;   // grid points whose neighbourhood meets the region
};

// order K: sum_{k<K} |S^(k)(x_j)| rho^k / k! + W_K rho^K / K!, rho = 1/(2M).
// M = 0 picks certification_grid(n).
SupCertificate certified_sup(const CoeffSeq& c, std::int64_t n, const IntervalUnion& region,
                             int order = 6, std::int64_t M = 0);

// max(grid_size_for(n), min(16 grid_size_for(n) or 2^14, 2^24))
std::int64_t certification_grid(std::int64_t n);

// W_k = sum_{|l|<=n} |2 pi l|^k |c_l|
double derivative_weight(const CoeffSeq& c, std::int64_t n, int k);

}  // namespace nullseries

#include "json.hpp"

namespace nullseries {

// Named inequality value (<|<=) limit, kept with its slack for re-verification.
struct Certificate {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool strict = true;
  nlohmann::json detail = nlohmann::json::object();

  bool holds() const { return strict ? value < limit : value <= limit; }
  double slack() const { return limit - value; }
  nlohmann::json to_json() const;
};

Certificate make_certificate(std::string name, double value, double limit, bool strict,
                             nlohmann::json detail = nlohmann::json::object());
Certificate boolean_certificate(std::string name, bool ok,
                                nlohmann::json detail = nlohmann::json::object());
nlohmann::json sup_detail(const SupCertificate& s);

// max |S_n(c; j/M)| over grid points lying in the region (no correction).
double grid_max_on(const CoeffSeq& c, std::int64_t n, const IntervalUnion& region, std::int64_t M);

}  // namespace nullseries
