#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "app.hpp"
#include "nullseries/analysis.hpp"
#include "nullseries/builders.hpp"
#include "nullseries/io.hpp"

namespace nullseries::cli {

namespace {

std::string csv_header(const std::string& h) { return h + "\n"; }

CoeffSeq load_coeffs(const json& cfg) {
  if (!cfg.contains("coeffs")) throw UsageError("--coeffs is required");
  return read_nusr(cfg["coeffs"].get<std::string>());
}

IntervalUnion load_support(const json& cfg) {
  if (!cfg.contains("support")) throw UsageError("--support is required");
  return read_support(cfg["support"].get<std::string>());
}

// --phi file, or a Gevrey cutoff on --interval with --margin
CoeffSeq load_phi(const json& cfg, json& info) {
  if (cfg.contains("phi")) {
    info["phi"] = cfg["phi"];
    return read_nusr(cfg["phi"].get<std::string>());
  }
  if (!cfg.contains("interval")) throw UsageError("need --phi or --interval");
  const auto a = parse_rational(cfg["interval"][0]), b = parse_rational(cfg["interval"][1]);
  const Rational margin = cfg.contains("margin") ? parse_rational(cfg["margin"]) : (b - a) / 4;
  const auto c = build_smooth_cutoff(a, b, margin, cfg.value("s_scale", std::int64_t{0}));
  info["phi"] = {{"interval", {rational_to_json(a), rational_to_json(b)}},
                 {"margin", rational_to_json(margin)}, {"degree", c.phi.degree()}};
  return c.phi;
}

std::vector<std::int64_t> n_list_of(const json& cfg) {
  if (!cfg.contains("n_list")) throw UsageError("--n-list is required");
  return cfg["n_list"].get<std::vector<std::int64_t>>();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

int analyze(Run& run) {
  const auto& cfg = run.config();
  const std::string what = cfg.at("analysis");
  json rep = {{"analysis", what}};
  std::string csv;

  if (what == "thm3-root") {
    const double root = thm3_root();
    rep["root"] = root;
    rep["closed_form"] = thm3_root_closed_form();
    rep["exponent_at_root"] = thm3_exponent(root);
    std::cout << std::fixed << std::setprecision(15) << root << "\n";
    run.write_json("report.json", rep);
    return run.finish("ok");
  }

  if (what == "thm3-exponent") {
    if (cfg.contains("d")) rep["value"] = thm3_exponent(cfg["d"].get<double>());
    const int pts = cfg.value("sweep", 1000);
    const double root = thm3_root();
    int sign_errors = 0;
    csv = csv_header("x,value");
    for (int i = 0; i < pts; ++i) {
      const double d = static_cast<double>(i) / (pts - 1);
      const double v = thm3_exponent(d);
      if ((d < root && !(v > 0)) || (d > root && !(v < 0))) ++sign_errors;
      csv += fmt(d) + "," + fmt(v) + "\n";
    }
    rep["sweep"] = pts;
    rep["root"] = root;
    rep["sign_errors"] = sign_errors;
  } else if (what == "thm2-rate") {
    const int kmax = cfg.value("kmax", 4096);
    const auto chain = thm2_rate(powers_of_two(kmax));
    json head = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(chain.r.size(), 8); ++i) head.push_back(chain.r[i].get_str());
    rep["r_head"] = head;
    rep["chain_length"] = chain.r.size();
    rep["fitted_slope"] = chain.fitted_slope;
    rep["log_7_4"] = std::log(7.0 / 4.0);
    rep["relative_error"] = chain.fitted_slope / std::log(7.0 / 4.0) - 1.0;
    rep["exponent"] = chain.exponent;
    rep["bounds"] = chain.bounds;
    csv = csv_header("x,value");
    for (std::size_t i = 0; i < chain.r.size(); ++i)
      csv += std::to_string(i) + "," + fmt(std::log(chain.log_r[i])) + "\n";
  } else if (what == "box-dim") {
    IntervalUnion K;
    std::vector<Rational> scales;
    if (cfg.contains("cantor_level")) {
      const int L = cfg["cantor_level"].get<int>();
      K = cantor_prefab(L);
      for (int i = 1; i <= std::max(L, 4); ++i) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(i));
        scales.emplace_back(1, p);
      }
      rep["set"] = {{"cantor_level", L}};
    } else {
      K = load_support(cfg);
      for (int i = 4; i <= 10; ++i) scales.emplace_back(1, mpz_class(1) << i);
      rep["set"] = {{"support", cfg["support"]}};
    }
    if (cfg.contains("scales")) {
      scales.clear();
      for (const auto& s : cfg["scales"]) scales.push_back(parse_rational(s));
    }
    const auto d = box_dimension(K, scales);
    rep["slope"] = d.slope;
    rep["residual"] = d.residual;
    rep["empty"] = d.empty;
    csv = csv_header("scale,count");
    json sc = json::array();
    for (std::size_t i = 0; i < d.scales.size(); ++i) {
      sc.push_back({rational_to_json(d.scales[i]), d.counts[i]});
      csv += d.scales[i].get_str() + "," + std::to_string(d.counts[i]) + "\n";
    }
    rep["counts"] = sc;
  } else if (what == "growth") {
    const auto c = load_coeffs(cfg);
    const auto K = load_support(cfg);
    if (!cfg.contains("r") || !cfg.contains("s")) throw UsageError("growth needs --r and --s");
    rep["report"] = growth_check(c, K, cfg["r"].get<std::int64_t>(), cfg["s"].get<std::int64_t>()).to_json();
  } else if (what == "support-detect") {
    const auto c = load_coeffs(cfg);
    const auto ns = n_list_of(cfg);
    std::vector<double> tau = cfg.contains("tau") ? cfg["tau"].get<std::vector<double>>()
                                                  : std::vector<double>(ns.size(), 1.0);
    const std::int64_t M = cfg.value("grid", std::int64_t{1} << 12);
    const auto d = support_detect(c, ns, M, tau);
    rep["label"] = d.label;
    rep["grid"] = d.M;
    rep["detected"] = support_to_json(d.detected);
    rep["measure"] = d.detected.measure().get_d();
  } else if (what == "rajchman") {
    const auto c = load_coeffs(cfg);
    const auto phi = load_phi(cfg, rep);
    const auto ns = n_list_of(cfg);
    csv = csv_header("x,value");
    json gaps = json::array();
    bool monotone = true;
    double prev = INFINITY;
    for (auto n : ns) {
      const double g = rajchman_gap(c, phi, n);
      monotone = monotone && g <= prev;
      prev = g;
      gaps.push_back({{"n", n}, {"gap", g}});
      csv += std::to_string(n) + "," + fmt(g) + "\n";
    }
    rep["gaps"] = gaps;
    rep["monotone_nonincreasing"] = monotone;
    rep["phi_degree"] = phi.degree();
  } else if (what == "localisation") {
    const auto phi = load_phi(cfg, rep);
    if (!cfg.contains("n")) throw UsageError("localisation needs --n");
    const std::int64_t n = cfg["n"].get<std::int64_t>();
    std::vector<CoeffSeq> cs;
    if (cfg.contains("random")) {
      std::mt19937_64 gen(cfg.value("seed", std::uint64_t{1}));
      std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2.0 * M_PI);
      const std::int64_t deg = 2 * n + phi.degree();
      for (int t = 0; t < cfg["random"].get<int>(); ++t) {
        CoeffSeq c(deg, false);
        for (std::int64_t l = -deg; l <= deg; ++l) c[l] = std::polar(std::sqrt(rad(gen)), ang(gen));
        cs.push_back(std::move(c));
      }
    } else {
      cs.push_back(load_coeffs(cfg));
    }
    double worst = INFINITY, consistency = 0.0;
    for (const auto& c : cs) {
      const auto r = localisation_error_spectrum(c, phi, n);
      worst = std::min(worst, r.worst_slack);
      const auto direct = localisation_error_direct(c, phi, n);
      const auto D = std::max(direct.degree(), r.E.degree());
      for (std::int64_t j = -D; j <= D; ++j)
        consistency = std::max(consistency, std::abs(direct.at(j) - r.E.at(j)));
      if (cs.size() == 1) {
        csv = csv_header("x,value");
        for (std::int64_t j = -r.E.degree(); j <= r.E.degree(); ++j)
          csv += std::to_string(j) + "," + fmt(std::abs(r.E[j])) + "\n";
      }
    }
    rep["sequences"] = cs.size();
    rep["worst_slack"] = worst;
    rep["banded_vs_direct"] = consistency;
  } else {
    throw UsageError("unknown analysis " + what);
  }
  std::cout << rep.dump(2) << "\n";
  run.write_json("report.json", rep);
  if (!csv.empty()) run.write_bytes("data.csv", csv);
  return run.finish("ok");
}

}  // namespace nullseries::cli
