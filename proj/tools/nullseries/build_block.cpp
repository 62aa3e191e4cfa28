#include <chrono>
#include <iostream>
#include <sstream>

#include "app.hpp"
#include "nullseries/builders.hpp"
#include "nullseries/construction.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/io.hpp"

namespace nullseries::cli {

namespace {

json interval_json(const Rational& a, const Rational& b) {
  return support_to_json(IntervalUnion::single(a, b));
}

json sup_check(const std::string& name, const std::string& file, std::int64_t n, const json& region,
               double extra, double limit, bool strict, double reported) {
  return {{"name", name}, {"kind", "partial_sum_sup"}, {"coeffs", file}, {"n", n}, {"region", region},
          {"extra", extra}, {"limit", limit}, {"strict", strict}, {"reported", reported}};
}

PrecisionContext context_from(const json& cfg) {
  auto ctx = PrecisionContext::from_env();
  if (cfg.contains("precision_bits")) ctx.bits = cfg["precision_bits"].get<int>();
  return ctx;
}

std::string status_of(const std::vector<Certificate>& certs) {
  return all_hold(certs) ? "ok" : "certificate_failed";
}

int finish_block(Run& run, const std::string& kind, json summary, const std::vector<Certificate>& certs) {
  summary["block"] = kind;
  summary["certificates"] = certificates_json(certs);
  run.add_certificates(kind, certs);
  run.write_json("block.json", summary);
  const auto status = status_of(certs);
  summary["status"] = status;
  std::cout << summary.dump(2) << "\n";
  if (status != "ok") {
    json failed = json::array();
    for (const auto& c : certs)
      if (!c.holds()) failed.push_back(c.to_json());
    emit_error("certificate_failed", kind + " certificates failed", {{"failed", failed}});
  }
  return run.finish(status);
}

}  // namespace

int build_block(Run& run) {
  const auto& cfg = run.config();
  const std::string kind = cfg.at("block");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const auto half = interval_json(0, Rational(1, 2));

  if (kind == "h") {
    const double eps = cfg.value("eps", 0.25);
    const auto H = build_h(eps, context_from(cfg));
    run.time("build_h", elapsed());
    run.write_nusr("h.nusr", H.h);
    run.write_nusr("arc.nusr", H.arc.P);
    run.write_support("h.support.json", H.support);
    run.add_check({{"name", "h_mean_one"}, {"kind", "mean_one"}, {"coeffs", "h.nusr"}});
    run.add_check({{"name", "arc_mean_one"}, {"kind", "mean_one"}, {"coeffs", "arc.nusr"}});
    run.add_check(sup_check("h_partial_sum_sup", "h.nusr", H.m, half, 0.0, eps, false, H.partial_sum.bound));
    run.add_check(sup_check("arc_sup", "arc.nusr", H.m, half, 0.0, eps, false, H.arc.sup_bound));
    run.add_check({{"name", "h_support_in_half"}, {"kind", "support_subset"}, {"inner", "h.support.json"},
                   {"outer", half}});
    run.add_check({{"name", "vandermonde_residual"}, {"kind", "vandermonde_residual"}, {"coeffs", "h.nusr"},
                   {"arc", "arc.nusr"}, {"m", H.m}, {"nodes", H.nodes}, {"weights", H.weights},
                   {"normalization", H.normalization}, {"limit", 1e-9}, {"reported", H.solve.residual}});
    json s = {{"eps", eps}, {"m", H.m}, {"nodes", H.nodes}, {"degree", H.h.degree()}, {"tail", H.tail},
              {"weights", H.weights}, {"normalization", H.normalization},
              {"l1_function", H.l1_function}, {"arc_method", H.arc.method},
              {"window", {{"nodes", H.nodes}, {"offset", rational_to_json(H.window.offset)},
                          {"width", rational_to_json(H.window.width)}, {"floor", H.window.floor}}},
              {"vandermonde", {{"condition", H.solve.condition}, {"residual", H.solve.residual},
                               {"precision_bits", H.solve.precision_bits}, {"escalated", H.solve.escalated}}},
              {"partial_sum_sup", H.partial_sum.bound},
              {"support", support_to_json(H.support)}};
    return finish_block(run, kind, s, H.certificates);
  }

  if (kind == "f") {
    const double eps = cfg.value("eps", 0.5);
    BuildFOptions o;
    o.ctx = context_from(cfg);
    if (cfg.contains("a")) o.a_override = cfg["a"].get<std::int64_t>();
    if (cfg.contains("r")) o.r_override = cfg["r"].get<std::int64_t>();
    if (cfg.contains("degree_cap")) o.degree_cap = cfg["degree_cap"].get<std::int64_t>();
    StageFunction f;
    try {
      f = build_f(eps, o);
    } catch (const ResourceError& e) {
      const auto d = json::parse(e.detail());
      emit_error("resource_cap", e.what(), d);
      run.set("diagnostic", d);
      run.time("build_f", elapsed());
      return run.finish("resource_cap");
    }
    run.time("build_f", elapsed());
    run.write_nusr("f.nusr", f.f);
    run.write_support("f.support.json", f.support);
    run.add_check({{"name", "f_mean_one"}, {"kind", "mean_one"}, {"coeffs", "f.nusr"}});
    run.add_check({{"name", "f_coeff_sup"}, {"kind", "coeff_sup"}, {"coeffs", "f.nusr"}, {"extra", f.tail},
                   {"limit", eps}, {"strict", true}});
    double reported = 0.0;
    for (const auto& c : f.certificates)
      if (c.name == "f_partial_sum_sup") reported = c.value;
    run.add_check(sup_check("f_partial_sum_sup", "f.nusr", f.n, "f.support.json", f.tail, eps, true, reported));
    run.add_check({{"name", "f_block_layout"}, {"kind", "block_layout"}, {"a", f.params.a},
                   {"m", f.params.m}, {"r", f.params.r}, {"n", f.n}});
    json s = {{"eps", eps}, {"n", f.n}, {"degree", f.f.degree()}, {"tail", f.tail},
              {"canonical", f.canonical}, {"a", f.params.a}, {"r", f.params.r}, {"m", f.params.m},
              {"extra", f.params.extra}, {"support_components", f.support.size()},
              {"support_measure", rational_to_json(f.support.measure())}};
    return finish_block(run, kind, s, f.certificates);
  }

  if (kind == "u") {
    const double eps = cfg.value("eps", 0.1);
    const auto p = build_plateau(eps);
    run.time("build_plateau", elapsed());
    run.write_nusr("u.nusr", p.u);
    run.write_support("u.support.json", p.support);
    run.add_check({{"name", "u_mean_range"}, {"kind", "mean_range"}, {"coeffs", "u.nusr"},
                   {"lo", 1.0 - eps}, {"hi", 1.0}});
    run.add_check({{"name", "u_coeff_offzero"}, {"kind", "coeff_sup"}, {"coeffs", "u.nusr"}, {"extra", 0.0},
                   {"limit", eps}, {"strict", false}});
    json s = {{"eps", eps}, {"degree", p.u.degree()}, {"l1_defect", p.l1_defect}, {"tail", p.tail},
              {"edge", rational_to_json(p.edge)}, {"mean", p.u[0].real()}};
    return finish_block(run, kind, s, p.certificates);
  }

  if (kind == "q") {
    const std::int64_t m = cfg.value("m", std::int64_t{1});
    const std::int64_t n = cfg.value("n", std::int64_t{0});
    const auto w = build_window(m, n);
    run.time("build_window", elapsed());
    run.write_nusr("q.nusr", w.q);
    run.write_support("q.support.json", w.support);
    run.add_check({{"name", "window_floor"}, {"kind", "window_floor"}, {"coeffs", "q.nusr"}, {"m", m},
                   {"n", n}, {"reported", w.floor}, {"tail", w.tail}});
    json s = {{"m", m}, {"n", n}, {"degree", w.q.degree()}, {"floor", w.floor}, {"tail", w.tail},
              {"offset", rational_to_json(w.offset)}, {"width", rational_to_json(w.width)}};
    return finish_block(run, kind, s, w.certificates);
  }

  if (kind == "arc") {
    ArcPoly P;
    const bool fixed = cfg.contains("n");
    if (fixed) P = arc_minimax(cfg["n"].get<std::int64_t>());
    else P = build_arc_poly(cfg.value("eps", 0.25));
    run.time("build_arc", elapsed());
    run.write_nusr("arc.nusr", P.P);
    run.add_check({{"name", "arc_mean_one"}, {"kind", "mean_one"}, {"coeffs", "arc.nusr"}});
    if (fixed) {
      run.add_check({{"name", "arc_sup_measured"}, {"kind", "measure_sup"}, {"coeffs", "arc.nusr"},
                     {"n", P.n}, {"region", half}, {"reported", P.sup_bound}});
    } else {
      run.add_check(sup_check("arc_sup", "arc.nusr", P.n, half, 0.0, cfg.value("eps", 0.25), false, P.sup_bound));
    }
    json s = {{"n", P.n}, {"sup_bound", P.sup_bound}, {"lower_bound", P.lower_bound},
              {"log_constant", P.log_constant}, {"method", P.method}, {"iterations", P.iterations}};
    if (P.n > 0) s["nth_root_sup"] = std::pow(P.sup_bound, 1.0 / static_cast<double>(P.n));
    return finish_block(run, kind, s, P.certificates);
  }

  if (kind == "psi") {
    const auto b = build_gevrey_step();
    run.time("build_gevrey_step", elapsed());
    std::ostringstream csv;
    csv.precision(17);
    csv << "x,value\n";
    const int pts = 1 << 12;
    std::vector<Certificate> certs;
    double prev = -1.0;
    bool monotone = true;
    for (int i = 0; i <= pts; ++i) {
      const double x = static_cast<double>(i) / pts;
      const double v = b.step(x);
      monotone = monotone && v >= prev;
      prev = v;
      csv << x << "," << v << "\n";
    }
    run.write_bytes("psi.csv", csv.str());
    certs.push_back(boolean_certificate("psi_endpoints", b.step(0.0) == 0.0 && b.step(1.0) == 1.0));
    certs.push_back(boolean_certificate("psi_monotone", monotone, {{"points", pts + 1}}));
    double worst = 0.0;
    double fact = 1.0;
    for (std::size_t k = 0; k < b.derivative_sup.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      worst = std::max(worst, b.derivative_sup[k] / (fact * fact));
    }
    certs.push_back(make_certificate("psi_gevrey_bound", worst, b.C_psi, false));
    run.add_check({{"name", "psi_profile"}, {"kind", "psi_profile"}, {"csv", "psi.csv"}});
    json s = {{"C_psi", b.C_psi}, {"derivative_sup", b.derivative_sup}, {"smoothness", b.smoothness},
              {"normalizer", b.step.normalizer()}};
    return finish_block(run, kind, s, certs);
  }

  if (kind == "cutoff") {
    Rational a(0), b(1), margin(1, 4);
    if (cfg.contains("interval")) {
      a = parse_rational(cfg["interval"][0]);
      b = parse_rational(cfg["interval"][1]);
    }
    if (cfg.contains("margin")) margin = parse_rational(cfg["margin"]);
    const auto c = build_smooth_cutoff(a, b, margin, cfg.value("s_scale", std::int64_t{0}));
    run.time("build_smooth_cutoff", elapsed());
    run.write_nusr("phi.nusr", c.phi);
    std::vector<Certificate> certs;
    double lo = 1.0, hi = 0.0, envelope = 0.0;
    const int pts = 1 << 12;
    for (int i = 0; i <= pts; ++i) {
      const double v = c.value(static_cast<double>(i) / pts);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mg = margin.get_d();
    for (std::int64_t l = 1; l <= c.phi.degree(); ++l)
      envelope = std::max(envelope, std::abs(c.phi[l]) / (c.C * std::exp(-c.c * std::sqrt(l * mg))));
    certs.push_back(make_certificate("cutoff_range", std::max(-lo, hi - 1.0), 0.0, false));
    certs.push_back(make_certificate("cutoff_envelope", envelope, 1.0, false,
                                     {{"C", c.C}, {"c", c.c}}));
    run.add_check({{"name", "cutoff_plateau"}, {"kind", "measure_cutoff"}, {"coeffs", "phi.nusr"},
                   {"inner", interval_json(a + margin, b - margin)}});
    json s = {{"interval", {rational_to_json(a), rational_to_json(b)}}, {"margin", rational_to_json(margin)},
              {"degree", c.phi.degree()}, {"C", c.C}, {"c", c.c}, {"sample_grid", c.sample_grid}};
    return finish_block(run, kind, s, certs);
  }
  throw UsageError("unknown block " + kind);
}

}  // namespace nullseries::cli
