#include "nullseries/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "nullseries/errors.hpp"

namespace nullseries {

PrecisionContext PrecisionContext::from_env() {
  PrecisionContext ctx;
  if (const char* s = std::getenv("NULLSERIES_PRECISION_BITS")) {
    try {
      const int b = std::stoi(s);
      if (b >= 53) ctx.bits = b;
    } catch (const std::exception&) {
      // ignore junk, keep 53
    }
  }
  return ctx;
}

double PrecisionContext::unit_roundoff() const { return std::ldexp(1.0, -bits); }

void PrecisionContext::enforce(const std::string& op, double err) const {
  auto it = budget.find(op);
  if (it == budget.end()) return;
  if (!(err <= it->second) && it->second > 0.0) {
    throw NumericError(op + ": error " + std::to_string(err) + " exceeds budget " +
                       std::to_string(it->second));
  }
}

}  // namespace nullseries
