#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "app.hpp"
#include "nullseries/errors.hpp"

using namespace nullseries::cli;

namespace {

struct Flags {
  std::map<std::string, std::string> raw;  // config key -> flag text
  std::string config_file, out;
};

// flag text -> JSON value of the schema type for `key`
json convert(const std::string& key, const std::string& text) {
  static const json props = json::parse(kRunConfigSchema)["properties"];
  if (!props.contains(key)) throw UsageError("no such config key: " + key);
  const auto& p = props[key];
  const std::string type = p.value("type", "string");
  auto scalar = [&](const std::string& t, const std::string& s) -> json {
    try {
      std::size_t pos = 0;
      if (t == "integer") {
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      }
      if (t == "number") {
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      }
    } catch (const std::exception&) {
      throw UsageError("bad value for " + key + ": " + s, {{"key", key}, {"value", s}});
    }
    return s;
  };
  if (type == "array") {
    json arr = json::array();
    std::string item;
    std::stringstream ss(text);
    const std::string it = p.contains("items") ? p["items"].value("type", "string") : "string";
    while (std::getline(ss, item, ',')) arr.push_back(scalar(it, item));
    return arr;
  }
  return scalar(type, text);
}

void add(CLI::App* sub, Flags& f, const std::string& flag, const std::string& key, const std::string& help) {
  sub->add_option(flag, f.raw[key], help);
}

json assemble(CLI::App* sub, Flags& f, const std::string& command) {
  json cfg = json::object();
  if (!f.config_file.empty()) {
    try {
      cfg = json::parse(read_file(f.config_file));
    } catch (const json::parse_error& e) {
      throw UsageError("config is not valid JSON", {{"file", f.config_file}, {"parse_error", e.what()}});
    }
  }
  for (const auto& [key, text] : f.raw) {
    std::string flag = "--" + key;
    for (auto& ch : flag) if (ch == '_') ch = '-';
    const bool positional = key == "block" || key == "analysis";
    const bool given = positional ? sub->count(key) > 0 : sub->count(flag) > 0;
    if (given) cfg[key] = convert(key, text);
  }
  if (!cfg.contains("schema_version") && f.config_file.empty()) cfg["schema_version"] = 1;
  if (!cfg.contains("command")) cfg["command"] = command;
  if (cfg["command"] != command)
    throw UsageError("config command does not match subcommand", {{"config", cfg["command"]}, {"subcommand", command}});
  validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"null trigonometric series: building blocks, construction, analysis"};
  app.set_version_flag("--version", std::string(NULLSERIES_VERSION));
  app.require_subcommand(1);

  Flags fb, fc, fa, fr;
  std::string verify_dir;

  auto* bb = app.add_subcommand("build-block", "build one certified building block");
  bb->add_option("block", fb.raw["block"], "h | f | u | q | arc | psi | cutoff")->required();
  add(bb, fb, "--eps", "eps", "target epsilon");
  add(bb, fb, "--m", "m", "window scale (q)");
  add(bb, fb, "--n", "n", "degree (q: floor range, arc: fixed degree)");
  add(bb, fb, "--a", "a", "override block count a (f, non-canonical)");
  add(bb, fb, "--r", "r", "override dilation r (f, non-canonical)");
  add(bb, fb, "--degree-cap", "degree_cap", "coefficient cap");
  add(bb, fb, "--interval", "interval", "cutoff interval a,b (rationals)");
  add(bb, fb, "--margin", "margin", "cutoff margin (rational)");
  add(bb, fb, "--s-scale", "s_scale", "cutoff degree cap");
  add(bb, fb, "--precision-bits", "precision_bits", "working precision");
  bb->add_option("--out", fb.out, "output directory");
  bb->add_option("--config", fb.config_file, "RunConfig JSON");

  auto* co = app.add_subcommand("construct", "iterate the stage construction");
  add(co, fc, "--stages", "stages", "number of stages K");
  add(co, fc, "--eps-override", "eps_override", "fixed eps per stage (non-canonical)");
  add(co, fc, "--h-source", "h_source", "assembled | vandermonde");
  add(co, fc, "--degree-cap", "degree_cap", "coefficient cap");
  add(co, fc, "--precision-bits", "precision_bits", "working precision");
  co->add_option("--out", fc.out, "output directory");
  co->add_option("--config", fc.config_file, "RunConfig JSON");

  auto* an = app.add_subcommand("analyze", "measurements on coefficient data");
  an->add_option("analysis", fa.raw["analysis"],
                 "thm3-root | thm3-exponent | thm2-rate | box-dim | growth | support-detect | rajchman | localisation")
      ->required();
  add(an, fa, "--d", "d", "dimension value");
  add(an, fa, "--sweep", "sweep", "sweep points");
  add(an, fa, "--kmax", "kmax", "n_k = 2^k for k <= kmax");
  add(an, fa, "--coeffs", "coeffs", "NUSR file");
  add(an, fa, "--support", "support", "support JSON");
  add(an, fa, "--phi", "phi", "cutoff NUSR file");
  add(an, fa, "--interval", "interval", "cutoff interval a,b");
  add(an, fa, "--margin", "margin", "cutoff margin");
  add(an, fa, "--s-scale", "s_scale", "cutoff degree cap");
  add(an, fa, "--cantor-level", "cantor_level", "Cantor prefab level");
  add(an, fa, "--scales", "scales", "comma separated rationals, decreasing");
  add(an, fa, "--r", "r", "growth r");
  add(an, fa, "--s", "s", "growth s");
  add(an, fa, "--n", "n", "partial sum index");
  add(an, fa, "--n-list", "n_list", "comma separated indices");
  add(an, fa, "--grid", "grid", "grid size M");
  add(an, fa, "--tau", "tau", "thresholds");
  add(an, fa, "--random", "random", "random bounded sequences of this degree");
  add(an, fa, "--seed", "seed", "random seed");
  an->add_option("--out", fa.out, "output directory");
  an->add_option("--config", fa.config_file, "RunConfig JSON");

  auto* rp = app.add_subcommand("report", "k,bound,measured table of a construct run");
  add(rp, fr, "--dir", "dir", "construct output directory");
  rp->add_option("--out", fr.out, "output directory");
  rp->add_option("--config", fr.config_file, "RunConfig JSON");

  auto* ve = app.add_subcommand("verify", "re-check a run directory with independent oracles");
  ve->add_option("dir", verify_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error("usage", e.what());
    return kUsage;
  }

  auto out_of = [](const std::string& s) { return s.empty() ? std::optional<fs::path>{} : fs::path(s); };
  try {
    if (*ve) return verify(verify_dir);
    if (*bb) {
      Run run(assemble(bb, fb, "build-block"), out_of(fb.out));
      return build_block(run);
    }
    if (*co) {
      Run run(assemble(co, fc, "construct"), out_of(fc.out));
      return construct(run);
    }
    if (*an) {
      Run run(assemble(an, fa, "analyze"), out_of(fa.out));
      return analyze(run);
    }
    if (*rp) {
      Run run(assemble(rp, fr, "report"), out_of(fr.out));
      return report(run);
    }
  } catch (const UsageError& e) {
    emit_error("usage", e.what(), e.detail);
    return kUsage;
  } catch (const std::invalid_argument& e) {
    emit_error("usage", e.what());
    return kUsage;
  } catch (const nullseries::ResourceError& e) {
    emit_error("resource_cap", e.what(), json::parse(e.detail()));
    return kResource;
  } catch (const nullseries::NumericError& e) {
    emit_error("numeric", e.what());
    return kFailed;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kFailed;
  }
  return kUsage;
}
