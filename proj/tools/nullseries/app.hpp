#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullseries/certify.hpp"
#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"
#include "json.hpp"

namespace nullseries::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kFailed = 2, kResource = 3 };

// bad flags or config; carries a JSON diagnostic
struct UsageError : std::runtime_error {
  UsageError(const std::string& what, json d = json::object())
      : std::runtime_error(what), detail(std::move(d)) {}
  json detail;
};

extern const char* const kRunConfigSchema;

// list of violations, empty if the config is valid
std::vector<std::string> schema_violations(const json& schema, const json& value,
                                           const std::string& where = "$");
void validate_config(const json& cfg);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const fs::path& p);

// One invocation: validated config, output directory, the files written so far.
class Run {
 public:
  Run(json config, std::optional<fs::path> out);

  const json& config() const { return config_; }
  bool has_out() const { return out_.has_value(); }

  void write_bytes(const std::string& name, const std::string& bytes);
  void write_json(const std::string& name, const json& j);
  void write_nusr(const std::string& name, const CoeffSeq& c);
  void write_support(const std::string& name, const IntervalUnion& u);

  void add_check(json check) { checks_.push_back(std::move(check)); }
  void add_certificates(const std::string& group, const std::vector<Certificate>& certs);
  void set(const std::string& key, json value) { extra_[key] = std::move(value); }
  void time(const std::string& phase, double seconds) { timings_[phase] = seconds; }

  // writes manifest.json and run_log.json, returns the exit code for `status`
  int finish(const std::string& status);

 private:
  json config_;
  std::optional<fs::path> out_;
  std::vector<std::pair<std::string, std::string>> outputs_;  // name, sha256
  json checks_ = json::array();
  json certificates_ = json::object();
  json extra_ = json::object();
  json timings_ = json::object();
};

int exit_for_status(const std::string& status);
json certificates_json(const std::vector<Certificate>& certs);
bool all_hold(const std::vector<Certificate>& certs);
Rational parse_rational(const json& j);
void emit_error(const std::string& kind, const std::string& message, const json& detail = json::object());

int build_block(Run& run);
int construct(Run& run);
int analyze(Run& run);
int report(Run& run);
int verify(const fs::path& dir);

}  // namespace nullseries::cli
