#include <openssl/evp.h>

#include <algorithm>

#include <fstream>
#include <iostream>
#include <sstream>

#include "app.hpp"
#include "nullseries/io.hpp"

namespace nullseries::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run::Run(json config, std::optional<fs::path> out) : config_(std::move(config)), out_(std::move(out)) {
  if (out_) fs::create_directories(*out_);
}

void Run::write_bytes(const std::string& name, const std::string& bytes) {
  if (!out_) return;
  for (const auto& o : outputs_)
    if (o.first == name) throw std::logic_error("output written twice: " + name);
  std::ofstream f(*out_ / name, std::ios::binary | std::ios::trunc);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + name);
  outputs_.emplace_back(name, sha256_hex(bytes));
}

void Run::write_json(const std::string& name, const json& j) { write_bytes(name, j.dump(2) + "\n"); }
void Run::write_nusr(const std::string& name, const CoeffSeq& c) { write_bytes(name, encode_nusr(c)); }
void Run::write_support(const std::string& name, const IntervalUnion& u) {
  write_bytes(name, support_to_json(u).dump() + "\n");
}

void Run::add_certificates(const std::string& group, const std::vector<Certificate>& certs) {
  certificates_[group] = certificates_json(certs);
}

int Run::finish(const std::string& status) {
  if (!out_) return exit_for_status(status);
  auto files = json::array();
  auto sorted = outputs_;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [name, sha] : sorted) files.push_back({{"path", name}, {"sha256", sha}});
  json manifest = {{"tool", "nullseries"},
                   {"version", NULLSERIES_VERSION},
                   {"config", config_},
                   {"config_hash", sha256_hex(config_.dump())},
                   {"status", status},
                   {"outputs", files},
                   {"unhashed", json::array({"run_log.json"})},
                   {"checks", checks_},
                   {"certificates", certificates_}};
  for (const auto& [k, v] : extra_.items()) manifest[k] = v;
  std::ofstream(*out_ / "manifest.json", std::ios::trunc) << manifest.dump(2) << "\n";
  std::ofstream(*out_ / "run_log.json", std::ios::trunc)
      << json({{"timings_seconds", timings_}, {"status", status}}).dump(2) << "\n";
  return exit_for_status(status);
}

int exit_for_status(const std::string& status) {
  if (status == "ok") return kOk;
  if (status == "resource_cap") return kResource;
  return kFailed;
}

json certificates_json(const std::vector<Certificate>& certs) {
  auto a = json::array();
  for (const auto& c : certs) a.push_back(c.to_json());
  return a;
}

bool all_hold(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (!c.holds()) return false;
  return true;
}

void emit_error(const std::string& kind, const std::string& message, const json& detail) {
  std::cerr << json({{"error", kind}, {"message", message}, {"detail", detail}}).dump() << "\n";
}

}  // namespace nullseries::cli
