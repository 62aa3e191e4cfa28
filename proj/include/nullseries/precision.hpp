#pragma once

#include <map>
#include <string>

namespace nullseries {

// Working precision plus per-operation error budgets.
struct PrecisionContext {
  int bits = 53;
  std::map<std::string, double> budget = {
      {"grid_eval", 1e-9}, {"vandermonde", 1e-9}, {"window_floor", 0.0}};

  // Reads NULLSERIES_PRECISION_BITS, falls back to 53.
  static PrecisionContext from_env();

  double unit_roundoff() const;
  // Throws NumericError when `err` exceeds the budget of `op`.
  void enforce(const std::string& op, double err) const;
};

}  // namespace nullseries
