// Re-checks a run directory. Norms, sup bounds and window coefficients are
// recomputed here by direct summation; nothing below calls the builders.
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "app.hpp"
#include "nullseries/io.hpp"

namespace nullseries::cli {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Outcome {
  double value = 0.0, limit = 0.0;
  bool strict = false;
  bool ok = false;
  bool informational = false;
  json detail = json::object();
};

IntervalUnion region_of(const fs::path& dir, const json& r) {
  if (r.is_string()) return read_support(dir / r.get<std::string>());
  return support_from_json(r);
}

std::int64_t pow2_at_least(std::int64_t v) {
  std::int64_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// grid indices j whose cell [(2j-1)/2M, (2j+1)/2M] may meet the region, plus one spare each side
std::set<std::int64_t> cells_near(const IntervalUnion& region, std::int64_t M) {
  std::set<std::int64_t> js;
  for (const auto& [a, b] : region.pieces()) {
    const auto lo = static_cast<std::int64_t>(std::floor(a.get_d() * M)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(b.get_d() * M)) + 1;
    for (auto j = lo; j <= hi; ++j) js.insert(((j % M) + M) % M);
  }
  return js;
}

// sup |S_n| over the region: order-4 Taylor bound around exact grid points
Outcome direct_sup(const CoeffSeq& c, std::int64_t n, const IntervalUnion& region, double extra) {
  Outcome o;
  const std::int64_t N = std::min(n, c.degree());
  const std::int64_t M = std::max<std::int64_t>(8192, pow2_at_least(32 * (2 * N + 1)));
  std::vector<cd> root(static_cast<std::size_t>(M));
  for (std::int64_t i = 0; i < M; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(M);
    root[static_cast<std::size_t>(i)] = {std::cos(t), std::sin(t)};
  }
  const double rho = 0.5 / static_cast<double>(M);
  double w4 = 0.0;
  for (std::int64_t l = -N; l <= N; ++l) w4 += std::pow(kTwoPi * std::abs(static_cast<double>(l)), 4) * std::abs(c.at(l));
  double best = 0.0, grid_max = 0.0;
  for (auto j : cells_near(region, M)) {
    cd s[4] = {};
    for (std::int64_t l = -N; l <= N; ++l) {
      const auto idx = static_cast<std::size_t>((((l * j) % M) + M) % M);
      const cd t = c.at(l) * root[idx];
      const cd f(0.0, kTwoPi * static_cast<double>(l));
      s[0] += t;
      s[1] += f * t;
      s[2] += f * f * t;
      s[3] += f * f * f * t;
    }
    const double b = std::abs(s[0]) + std::abs(s[1]) * rho + std::abs(s[2]) * rho * rho / 2 +
                     std::abs(s[3]) * rho * rho * rho / 6 + w4 * std::pow(rho, 4) / 24;
    best = std::max(best, b);
    grid_max = std::max(grid_max, std::abs(s[0]));
  }
  o.value = best + extra;
  o.detail = {{"grid", M}, {"grid_max", grid_max}, {"correction", best - grid_max}, {"extra", extra}};
  return o;
}

cd window_closed_form(std::int64_t m, std::int64_t k) {
  // cubic B-spline of width 4h, h = 3/(32m), starting at 1/(16m)
  if (k == 0) return 1.0;
  const double x = M_PI * static_cast<double>(k) * 3.0 / (32.0 * static_cast<double>(m));
  const double s = std::sin(x) / x;
  const double centre = 1.0 / (16.0 * m) + 2.0 * 3.0 / (32.0 * m);
  const double t = -kTwoPi * static_cast<double>(k) * centre;
  return std::pow(s, 4) * cd(std::cos(t), std::sin(t));
}

double simpson_bump(double t) {
  // int_0^t exp(-1/s - 1/(1-s)) ds, composite Simpson
  if (t <= 0) return 0.0;
  const int n = 20000;
  const double h = t / n;
  auto f = [](double s) { return (s <= 0 || s >= 1) ? 0.0 : std::exp(-1.0 / s - 1.0 / (1.0 - s)); };
  double acc = f(0) + f(t);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

Outcome run_check(const fs::path& dir, const json& ch) {
  const std::string kind = ch.at("kind");
  auto coeffs = [&](const char* key) { return read_nusr(dir / ch.at(key).get<std::string>()); };
  Outcome o;
  o.strict = ch.value("strict", false);
  o.limit = ch.value("limit", 0.0);

  if (kind == "mean_one") {
    const auto c = coeffs("coeffs");
    o.value = std::abs(c.at(0) - cd(1.0, 0.0));
    o.ok = o.value == 0.0;
    return o;
  }
  if (kind == "mean_range") {
    const auto c = coeffs("coeffs");
    const double m = c.at(0).real();
    o.value = m;
    o.ok = m >= ch.at("lo").get<double>() && m <= ch.at("hi").get<double>() && c.at(0).imag() == 0.0;
    o.detail = {{"lo", ch["lo"]}, {"hi", ch["hi"]}};
    return o;
  }
  if (kind == "coeff_sup") {
    const auto c = coeffs("coeffs");
    double mx = 0.0;
    for (std::int64_t l = 1; l <= c.degree(); ++l) mx = std::max({mx, std::abs(c.at(l)), std::abs(c.at(-l))});
    o.value = mx + ch.value("extra", 0.0);
  } else if (kind == "partial_sum_sup" || kind == "measure_sup") {
    const auto c = coeffs("coeffs");
    o = direct_sup(c, ch.at("n").get<std::int64_t>(), region_of(dir, ch.at("region")), ch.value("extra", 0.0));
    o.strict = ch.value("strict", false);
    o.limit = ch.value("limit", 0.0);
    if (kind == "measure_sup") {
      o.informational = true;
      o.ok = true;
      o.detail["reported"] = ch.value("reported", 0.0);
      return o;
    }
  } else if (kind == "support_subset" || kind == "support_nested") {
    const auto in = region_of(dir, ch.at("inner")), out = region_of(dir, ch.at("outer"));
    bool ok = out.contains(in);
    if (kind == "support_nested") ok = ok && in.measure() < out.measure();
    o.value = ok ? 0.0 : 1.0;
    o.limit = 0.0;
    o.detail = {{"inner_measure", in.measure().get_d()}, {"outer_measure", out.measure().get_d()}};
  } else if (kind == "vandermonde_residual") {
    const auto h = coeffs("coeffs");
    const auto P = coeffs("arc");
    const auto m = ch.at("m").get<std::int64_t>(), nodes = ch.at("nodes").get<std::int64_t>();
    const auto w = ch.at("weights").get<std::vector<double>>();
    const double norm = ch.at("normalization").get<double>();
    double res = 0.0, scale = 0.0, rep = 0.0;
    for (std::int64_t k = -m; k <= m; ++k) {
      cd s = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const double t = -kTwoPi * static_cast<double>(static_cast<std::int64_t>(j) * k) / (2.0 * nodes);
        s += w[j] * cd(std::cos(t), std::sin(t));
      }
      const cd model = window_closed_form(nodes, k) * s;
      res = std::max(res, std::abs(model - P.at(k) / norm));
      rep = std::max(rep, std::abs(model - h.at(k)));
      scale = std::max(scale, std::abs(P.at(k) / norm));
    }
    o.value = res / scale;
    o.detail = {{"stored_vs_model", rep}};
    o.ok = o.value <= o.limit && rep <= o.limit;
    return o;
  } else if (kind == "window_floor") {
    const auto q = coeffs("coeffs");
    const auto m = ch.at("m").get<std::int64_t>(), n = ch.at("n").get<std::int64_t>();
    double floor = INFINITY, mismatch = 0.0;
    for (std::int64_t k = -n; k <= n; ++k) {
      const cd v = window_closed_form(m, k);
      floor = std::min(floor, std::abs(v));
      if (std::llabs(k) <= q.degree()) mismatch = std::max(mismatch, std::abs(v - q.at(k)));
    }
    o.value = std::abs(floor - ch.at("reported").get<double>()) + mismatch;
    o.limit = 1e-9;
    o.detail = {{"floor", floor}, {"coefficient_mismatch", mismatch}};
    o.ok = floor > 0 && o.value <= o.limit;
    return o;
  } else if (kind == "block_layout") {
    using i128 = __int128;
    const auto a = ch.at("a").get<std::int64_t>(), m = ch.at("m").get<std::int64_t>(),
               r = ch.at("r").get<std::int64_t>(), n = ch.at("n").get<std::int64_t>();
    bool sandwich = true;
    for (std::int64_t j = 0; j < a; ++j) {
      const i128 sp = i128(r) * r * r + i128(j) * r;
      sandwich = sandwich && 2 * i128(n) > 2 * i128(m) * sp + r && 2 * i128(n) < 2 * i128(m + 1) * sp - r;
    }
    const std::int64_t R = (r - 1) / 2;
    const double work = static_cast<double>(a) * (2 * R + 1) * (2 * R + 1);
    bool injective = true;
    if (work <= 5e7) {
      std::set<long long> seen;
      for (std::int64_t j = 0; j < a && injective; ++j)
        for (std::int64_t q = -R; q <= R; ++q)
          for (std::int64_t p = -R; q != 0 && p <= R; ++p) {
            const long long l = p + q * (r * r * r + j * r);
            if (2 * std::llabs(l) < r || !seen.insert(l).second) injective = false;
          }
    }
    o.value = (sandwich && injective) ? 0.0 : 1.0;
    o.limit = 0.0;
    o.detail = {{"sandwich", sandwich}, {"injective", injective}, {"injectivity_checked", work <= 5e7}};
  } else if (kind == "drift") {
    const auto c = coeffs("coeffs"), p = coeffs("previous");
    const auto D = std::max(c.degree(), p.degree());
    double mx = 0.0;
    for (std::int64_t l = -D; l <= D; ++l) mx = std::max(mx, std::abs(c.at(l) - p.at(l)));
    o.value = mx + ch.value("extra", 0.0);
  } else if (kind == "grid_sup") {
    const auto c = coeffs("coeffs");
    const auto region = region_of(dir, ch.at("region"));
    const auto M = ch.at("grid").get<std::int64_t>();
    const auto n = std::min(ch.at("n").get<std::int64_t>(), c.degree());
    double mx = 0.0;
    for (auto j : cells_near(region, M)) {
      if (!region.contains(Rational(j, M))) continue;
      cd s = 0.0;
      for (std::int64_t l = -n; l <= n; ++l) {
        const double t = kTwoPi * static_cast<double>((l * j) % M) / static_cast<double>(M);
        s += c.at(l) * cd(std::cos(t), std::sin(t));
      }
      mx = std::max(mx, std::abs(s));
    }
    o.value = mx;
    o.detail = {{"reported", ch.value("reported", 0.0)}, {"grid", M}};
  } else if (kind == "psi_profile") {
    std::istringstream in(read_file(dir / ch.at("csv").get<std::string>()));
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<double, double>> pts;
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    const double Z = simpson_bump(1.0);
    double err = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) monotone = monotone && pts[i].second >= pts[i - 1].second;
      if (i % 256 == 0) err = std::max(err, std::abs(simpson_bump(pts[i].first) / Z - pts[i].second));
    }
    o.value = err;
    o.limit = 1e-8;
    o.ok = monotone && err <= o.limit && !pts.empty() && pts.front().second == 0.0 && pts.back().second == 1.0;
    o.detail = {{"monotone", monotone}, {"points", pts.size()}};
    return o;
  } else if (kind == "measure_cutoff") {
    const auto c = coeffs("coeffs");
    const auto inner = region_of(dir, ch.at("inner"));
    double dev = 0.0;
    const int pts = 512;
    const auto& [a, b] = inner.pieces().front();
    for (int i = 0; i <= pts; ++i) {
      const double x = a.get_d() + Rational(b - a).get_d() * i / pts;
      cd s = 0.0;
      for (std::int64_t l = -c.degree(); l <= c.degree(); ++l)
        s += c.at(l) * std::polar(1.0, kTwoPi * static_cast<double>(l) * x);
      dev = std::max(dev, std::abs(s - 1.0));
    }
    o.value = dev;
    o.informational = true;
    o.ok = true;
    return o;
  } else {
    throw UsageError("unknown check kind " + kind);
  }
  o.ok = o.strict ? o.value < o.limit : o.value <= o.limit;
  return o;
}

}  // namespace

int verify(const fs::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::parse_error& e) {
    emit_error("verify", "manifest is not valid JSON", {{"dir", dir.string()}});
    return kFailed;
  }
  json rep = {{"dir", dir.string()}, {"manifest_status", manifest.value("status", "")}};
  json hashes = json::array();
  std::set<std::string> listed = {"manifest.json", "run_log.json"};
  for (const auto& o : manifest.at("outputs")) {
    const std::string p = o.at("path");
    listed.insert(p);
    std::string actual = "missing";
    if (fs::exists(dir / p)) actual = sha256_hex(read_file(dir / p));
    if (actual != o.at("sha256")) hashes.push_back({{"path", p}, {"expected", o["sha256"]}, {"actual", actual}});
  }
  for (const auto& e : fs::directory_iterator(dir))
    if (!listed.count(e.path().filename().string()))
      hashes.push_back({{"path", e.path().filename().string()}, {"expected", "unlisted"}});
  rep["hash_mismatches"] = hashes;

  bool all_ok = hashes.empty();
  json checks = json::array();
  json min_slack = json::object();
  if (hashes.empty()) {
    for (const auto& ch : manifest.at("checks")) {
      Outcome o;
      try {
        o = run_check(dir, ch);
      } catch (const std::exception& e) {
        o.ok = false;
        o.detail = {{"error", e.what()}};
      }
      const double slack = o.limit - o.value;
      checks.push_back({{"name", ch.at("name")}, {"kind", ch.at("kind")}, {"value", o.value},
                        {"limit", o.limit}, {"slack", slack}, {"ok", o.ok},
                        {"informational", o.informational}, {"detail", o.detail}});
      all_ok = all_ok && o.ok;
      if (!o.informational) {
        const std::string group = ch.contains("coeffs") ? ch["coeffs"].get<std::string>() : ch["name"].get<std::string>();
        if (!min_slack.contains(group) || slack < min_slack[group].get<double>()) min_slack[group] = slack;
      }
    }
  }
  rep["checks"] = checks;
  rep["min_slack"] = min_slack;
  const bool status_ok = manifest.value("status", "") == "ok";
  all_ok = all_ok && status_ok;
  rep["verified"] = all_ok;
  std::cout << rep.dump(2) << "\n";
  if (!all_ok) {
    json diff = {{"hash_mismatches", hashes}, {"manifest_status", rep["manifest_status"]}};
    json failed = json::array();
    for (const auto& c : checks)
      if (!c["ok"].get<bool>()) failed.push_back(c);
    diff["failed_checks"] = failed;
    emit_error("verify_failed", "verification failed", diff);
    return kFailed;
  }
  return kOk;
}

}  // namespace nullseries::cli
