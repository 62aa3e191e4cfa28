#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullseries/builders.hpp"
#include "nullseries/certify.hpp"
#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"
#include "nullseries/precision.hpp"
#include "json.hpp"

namespace nullseries {

struct VandermondeReport {
  double condition = 0.0;
  double residual = 0.0;  // ||V a - b|| / ||b||
  int precision_bits = 53;
  bool escalated = false;
};

// Solve sum_{j<2n+1} a_j e(-j k / (2 nodes)) = rhs_k, k = -n..n.
// Escalates to >= 128 bits when the condition estimate exceeds 1e8.
std::vector<cplx> solve_vandermonde(std::int64_t nodes, const std::vector<cplx>& rhs,
                                    const PrecisionContext& ctx, VandermondeReport& report);

// h = sum_j a_j q(x - j/(2 nodes)) with S_m(h) = P.
struct HFunction {
  double eps = 0.0;
  std::int64_t m = 0;      // arc degree
  std::int64_t nodes = 1;  // 2m + 1
  ArcPoly arc;
  Window window;
  std::vector<double> weights;  // a_j, already divided by the normalization
  double normalization = 1.0;   // h^(0) before division
  CoeffSeq h;                   // stored truncation, h^(0) = 1
  double tail = 0.0;            // ||h^ - stored||_1
  double l1_function = 0.0;     // ||h||_{L^1} (exact: disjoint unit-mass windows)
  IntervalUnion support;
  VandermondeReport solve;
  SupCertificate partial_sum;   // sup_{[0,1/2]} |S_m(h)|
  std::vector<Certificate> certificates;

  CoeffSeq coefficients(std::int64_t L) const;  // exact, any degree
  double tail_from(std::int64_t L) const;       // sum_{|k| >= L} |h^(k)|
  bool certified() const;
};

HFunction build_h(double eps, const PrecisionContext& ctx = PrecisionContext::from_env(),
                  double tail_tol = 1e-6);

struct StageParams {
  std::int64_t a = 0, r = 0, m = 0;
  std::vector<std::int64_t> spacings;  // r^3 + j r
  std::string h_source;
  nlohmann::json extra = nlohmann::json::object();
};

struct StageFunction {
  CoeffSeq f;          // stored truncation, f^(0) = 1 when normalized
  double tail = 0.0;   // ||f^ - stored||_1
  std::int64_t n = 0;
  IntervalUnion support;
  StageParams params;
  std::vector<Certificate> certificates;
  bool canonical = true;

  double l1_norm() const { return l1_coeff_norm(f) + tail; }
  bool certified() const;
  nlohmann::json certificates_json() const;
};

struct BuildFOptions {
  std::optional<std::int64_t> a_override;
  std::optional<std::int64_t> r_override;
  std::int64_t degree_cap = kDefaultDegreeCap;
  PrecisionContext ctx = PrecisionContext::from_env();
};

// Exact integer facts about the block layout l = p + q (r^3 + j r).
struct BlockLayout {
  std::int64_t n = 0, max_lower = 0, min_upper = 0;
  bool sandwich = false;
  bool injective = false;     // q != 0 indices distinct across j, none in (-r/2, r/2)
  std::int64_t collisions = 0;
};
BlockLayout check_block_layout(std::int64_t a, std::int64_t m, std::int64_t r);
// (r/2 - 1)(1 + r^3 + (a-1) r), saturating at INT64_MAX
std::int64_t projected_f_degree(std::int64_t a, std::int64_t r);

StageFunction build_f(double eps, const BuildFOptions& opt = {});

enum class HSource { Assembled, Vandermonde };

struct ReduceOptions {
  HSource source = HSource::Assembled;
  std::int64_t degree_cap = kDefaultDegreeCap;
  BuildFOptions f_options;
  PrecisionContext ctx = PrecisionContext::from_env();
};

StageFunction reduce_coeffs(const StageFunction& f, double eps, std::int64_t N_min,
                            const ReduceOptions& opt = {});

struct StageRecord {
  std::int64_t k = 1;
  std::int64_t n = 2;
  double eps = 0.0;  // eps used to build the next stage from this one
  StageFunction f;
  Rational measure;
  double drift_from_previous = 0.0;
};

struct ConstructionState {
  std::vector<StageRecord> stages;
  bool canonical = true;
  std::string status = "ok";  // ok | certificate_failed | resource_cap
  std::string failure;
  nlohmann::json diagnostic = nlohmann::json::object();
  // final_sup[k-1] = max over grid points of supp f_K of |S_{n_k}(f_K)|
  std::vector<double> final_sup;
  std::vector<Certificate> certificates;

  nlohmann::json ledger() const;
};

struct IterateOptions {
  std::optional<double> eps_override;
  ReduceOptions reduce;
};

ConstructionState iterate_construction(std::int64_t K, const IterateOptions& opt = {});

StageFunction initial_stage();

}  // namespace nullseries
