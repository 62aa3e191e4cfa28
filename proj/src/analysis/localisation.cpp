#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nullseries/analysis.hpp"
#include "nullseries/certify.hpp"
#include "nullseries/grid.hpp"

namespace nullseries {

nlohmann::json LocalisationReport::to_json() const {
  return {{"degree", E.degree()}, {"worst_slack", worst_slack}, {"offsets", offsets},
          {"l1", l1_coeff_norm(E)}};
}

LocalisationReport localisation_error_spectrum(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const auto Nc = c.degree(), Np = phi.degree();
  const auto D = std::min(n, Nc) + Np;
  LocalisationReport rep;
  rep.E = CoeffSeq(D, c.real_valued() && phi.real_valued());
  for (std::int64_t j = -D; j <= D; ++j) {
    cplx acc{};
    const bool outer = std::llabs(j) > n;
    for (std::int64_t l = -Np; l <= Np; ++l) {
      const auto i = j - l;
      if (i < -Nc || i > Nc) continue;
      const bool in_band = std::llabs(i) <= n;
      if (outer == in_band) acc += c[i] * phi[l];
    }
    rep.E[j] = outer ? acc : -acc;
  }
  // |E_n(+-n +- r)| <= ||c||_inf sum_{|s| >= r} |phi^(s)|
  std::vector<double> tail(static_cast<std::size_t>(Np + 2), 0.0);
  for (std::int64_t s = Np; s >= 0; --s) {
    tail[static_cast<std::size_t>(s)] =
        tail[static_cast<std::size_t>(s + 1)] + std::abs(phi[s]) + (s > 0 ? std::abs(phi[-s]) : 0.0);
  }
  const double cinf = sup_coeff_norm(c);
  const auto span = std::max(D, n);
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (std::int64_t j = -span; j <= span; ++j) {
    const auto off = std::llabs(std::llabs(j) - n);
    const double bound = off > Np ? 0.0 : cinf * tail[static_cast<std::size_t>(off)];
    rep.worst_slack = std::min(rep.worst_slack, bound - std::abs(rep.E.at(j)));
    ++rep.offsets;
  }
  return rep;
}

CoeffSeq localisation_error_direct(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n) {
  const auto Sn = c.truncated(std::min(n, c.degree()));
  const auto a = coeff_convolve(phi, Sn);
  const auto conv = coeff_convolve(c, phi);
  return subtract(a, conv.truncated(std::min(n, conv.degree())));
}

double rajchman_gap(const CoeffSeq& c, const CoeffSeq& phi, std::int64_t n, std::int64_t M) {
  const auto rep = localisation_error_spectrum(c, phi, n);
  const auto deg = rep.E.degree();
  if (M != 0 && (!is_power_of_two(M) || M < 2 * deg + 1)) M = 0;
  return certified_sup(rep.E, deg, IntervalUnion::unit(), 6, M).bound;
}

}  // namespace nullseries
