#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "app.hpp"
#include "nullseries/construction.hpp"
#include "nullseries/grid.hpp"
#include "nullseries/io.hpp"

namespace nullseries::cli {

int construct(Run& run) {
  const auto& cfg = run.config();
  const std::int64_t K = cfg.value("stages", std::int64_t{1});
  IterateOptions opt;
  if (cfg.contains("eps_override")) opt.eps_override = cfg["eps_override"].get<double>();
  if (cfg.value("h_source", std::string("assembled")) == "vandermonde") opt.reduce.source = HSource::Vandermonde;
  if (cfg.contains("degree_cap")) {
    opt.reduce.degree_cap = cfg["degree_cap"].get<std::int64_t>();
    opt.reduce.f_options.degree_cap = opt.reduce.degree_cap;
  }
  if (cfg.contains("precision_bits")) {
    opt.reduce.ctx.bits = cfg["precision_bits"].get<int>();
    opt.reduce.f_options.ctx.bits = opt.reduce.ctx.bits;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto state = iterate_construction(K, opt);
  run.time("iterate", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  std::int64_t nmax = 0;
  for (std::size_t i = 0; i < state.stages.size(); ++i) {
    const auto& s = state.stages[i];
    const std::string base = "stage_" + std::to_string(s.k);
    run.write_nusr(base + ".nusr", s.f.f);
    run.write_support(base + ".support.json", s.f.support);
    run.add_certificates(base, s.f.certificates);
    run.add_check({{"name", base + "_mean_one"}, {"kind", "mean_one"}, {"coeffs", base + ".nusr"}});
    nmax = std::max(nmax, s.n);
    if (i == 0) continue;
    const auto& prev = state.stages[i - 1];
    const std::string pb = "stage_" + std::to_string(prev.k);
    run.add_check({{"name", base + "_support_nested"}, {"kind", "support_nested"},
                   {"inner", base + ".support.json"}, {"outer", pb + ".support.json"}});
    run.add_check({{"name", base + "_drift"}, {"kind", "drift"}, {"coeffs", base + ".nusr"},
                   {"previous", pb + ".nusr"}, {"extra", s.f.tail + prev.f.tail}, {"limit", prev.eps},
                   {"strict", true}});
    run.add_check({{"name", base + "_partial_sum_sup"}, {"kind", "partial_sum_sup"}, {"coeffs", base + ".nusr"},
                   {"n", s.n}, {"region", base + ".support.json"}, {"extra", s.f.tail},
                   {"limit", prev.eps}, {"strict", true}});
  }
  if (state.status == "ok" && state.stages.size() > 1) {
    const auto& last = state.stages.back();
    const auto M = grid_size_for(std::max(nmax, last.f.f.degree()));
    const std::string lb = "stage_" + std::to_string(last.k);
    for (std::size_t k = 1; k < state.stages.size(); ++k) {
      run.add_check({{"name", "final_sup_stage_" + std::to_string(k + 1)}, {"kind", "grid_sup"},
                     {"coeffs", lb + ".nusr"}, {"n", state.stages[k].n}, {"region", lb + ".support.json"},
                     {"grid", M}, {"limit", 8.0 * std::ldexp(1.0, -static_cast<int>(k + 1))},
                     {"reported", state.final_sup[k]}});
    }
  }
  run.add_certificates("construction", state.certificates);
  const auto ledger = state.ledger();
  run.write_json("ledger.json", ledger);
  run.set("stages_built", state.stages.size());
  run.set("canonical", state.canonical);
  run.set("diagnostic", state.diagnostic);

  json summary = {{"status", state.status}, {"stages_requested", K}, {"stages_built", state.stages.size()},
                  {"canonical", state.canonical}, {"final_sup", state.final_sup}};
  json ns = json::array();
  for (const auto& s : state.stages) ns.push_back(s.n);
  summary["n"] = ns;
  std::cout << summary.dump(2) << "\n";
  if (state.status != "ok") {
    emit_error(state.status, state.failure, state.diagnostic);
  }
  return run.finish(state.status);
}

int report(Run& run) {
  const auto& cfg = run.config();
  if (!cfg.contains("dir")) throw UsageError("report needs --dir");
  const fs::path dir = cfg["dir"].get<std::string>();
  const auto ledger = json::parse(read_file(dir / "ledger.json"));
  std::ostringstream csv;
  csv.precision(17);
  csv << "k,bound,measured\n";
  const auto& fs_ = ledger["final_sup"];
  for (std::size_t k = 0; k < fs_.size(); ++k) {
    const double bound = 8.0 * std::ldexp(1.0, -static_cast<int>(k + 1));
    csv << (k + 1) << "," << bound << "," << fs_[k].get<double>() << "\n";
  }
  std::cout << csv.str();
  run.write_bytes("report.csv", csv.str());
  return run.finish("ok");
}

}  // namespace nullseries::cli
