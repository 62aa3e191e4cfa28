#include <cmath>
#include <stdexcept>

#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/grid.hpp"
#include "nullseries/io.hpp"

namespace nullseries {

nlohmann::json ConstructionState::ledger() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) {
    st.push_back({{"k", s.k},
                  {"n", s.n},
                  {"eps", s.eps},
                  {"measure", rational_to_json(s.measure)},
                  {"measure_value", s.measure.get_d()},
                  {"components", s.f.support.size()},
                  {"degree", s.f.f.degree()},
                  {"tail", s.f.tail},
                  {"drift_from_previous", s.drift_from_previous},
                  {"canonical", s.f.canonical},
                  {"params", {{"a", s.f.params.a}, {"r", s.f.params.r}, {"m", s.f.params.m},
                              {"h_source", s.f.params.h_source}, {"extra", s.f.params.extra}}},
                  {"certificates", s.f.certificates_json()}});
  }
  auto certs = nlohmann::json::array();
  for (const auto& c : certificates) certs.push_back(c.to_json());
  return {{"stages", st}, {"canonical", canonical}, {"status", status}, {"failure", failure},
          {"diagnostic", diagnostic}, {"final_sup", final_sup}, {"certificates", certs}};
}

ConstructionState iterate_construction(std::int64_t K, const IterateOptions& opt) {
  if (K < 1) throw std::invalid_argument("stage count must be >= 1");
  ConstructionState state;
  state.canonical = !opt.eps_override && opt.reduce.source == HSource::Assembled &&
                    !opt.reduce.f_options.a_override && !opt.reduce.f_options.r_override;
  StageRecord first;
  first.f = initial_stage();
  first.measure = first.f.support.measure();
  state.stages.push_back(std::move(first));

  for (std::int64_t k = 1; k < K; ++k) {
    auto& cur = state.stages.back();
    const double eps = opt.eps_override ? *opt.eps_override
                                        : std::ldexp(1.0, static_cast<int>(-k)) / static_cast<double>(cur.n);
    cur.eps = eps;
    StageFunction g;
    try {
      g = reduce_coeffs(cur.f, eps, cur.n + 1, opt.reduce);
    } catch (const ResourceError& e) {
      state.status = "resource_cap";
      state.failure = e.what();
      state.diagnostic = nlohmann::json::parse(e.detail());
      state.diagnostic["failed_stage"] = k + 1;
      return state;
    } catch (const NumericError& e) {
      state.status = "certificate_failed";
      state.failure = e.what();
      state.diagnostic = {{"failed_stage", k + 1}};
      return state;
    }
    StageRecord next;
    next.k = k + 1;
    next.n = g.n;
    next.measure = g.support.measure();
    for (std::int64_t l = -g.f.degree(); l <= g.f.degree(); ++l)
      next.drift_from_previous = std::max(next.drift_from_previous, std::abs(g.f[l] - cur.f.f.at(l)));
    const bool nested = cur.f.support.contains(g.support) && next.measure < cur.measure;
    g.certificates.push_back(boolean_certificate(
        "support_strictly_nested", nested,
        {{"measure", next.measure.get_d()}, {"previous", cur.measure.get_d()}}));
    g.certificates.push_back(boolean_certificate("n_increasing", next.n > cur.n));
    next.f = std::move(g);
    const bool ok = next.f.certified();
    state.stages.push_back(std::move(next));
    if (!ok) {
      state.status = "certificate_failed";
      for (const auto& c : state.stages.back().f.certificates)
        if (!c.holds()) state.failure += (state.failure.empty() ? "" : ", ") + c.name;
      state.diagnostic = {{"failed_stage", k + 1}};
      return state;
    }
  }

  // final partial sums on the last support, and the telescoped per-step drift
  const auto& last = state.stages.back();
  std::int64_t nmax = 0;
  for (const auto& s : state.stages) nmax = std::max(nmax, s.n);
  const auto M = grid_size_for(std::max(nmax, last.f.f.degree()));
  std::vector<std::vector<double>> measured(state.stages.size());
  for (std::size_t j = 0; j < state.stages.size(); ++j) {
    for (std::size_t k = 0; k <= j; ++k) {
      measured[j].push_back(grid_max_on(state.stages[j].f.f, state.stages[k].n,
                                        state.stages[j].f.support, M));
    }
  }
  for (std::size_t k = 0; k < state.stages.size(); ++k) {
    const double v = measured.back()[k];
    state.final_sup.push_back(v);
    const double bound = 8.0 * std::ldexp(1.0, -static_cast<int>(k + 1));
    if (k >= 1) {
      state.certificates.push_back(make_certificate("final_sup_stage_" + std::to_string(k + 1), v,
                                                    bound, false, {{"n", state.stages[k].n}}));
    }
  }
  for (std::size_t j = 1; j < state.stages.size(); ++j) {
    for (std::size_t k = 1; k < j; ++k) {
      double allowance = 0.0;
      for (std::size_t i = k + 1; i <= j; ++i) allowance += 3.0 * std::ldexp(1.0, -static_cast<int>(i));
      state.certificates.push_back(make_certificate(
          "telescoped_" + std::to_string(k + 1) + "_" + std::to_string(j + 1), measured[j][k],
          measured[k][k] + allowance, false));
    }
  }
  for (const auto& c : state.certificates) {
    if (!c.holds()) {
      state.status = "certificate_failed";
      state.failure += (state.failure.empty() ? "" : ", ") + c.name;
    }
  }
  return state;
}

}  // namespace nullseries
