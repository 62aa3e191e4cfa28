#include "nullseries/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nullseries {
namespace {

template <typename T>
void put_le(std::string& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::runtime_error("NUSR: truncated file");
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spill(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

}  // namespace

std::string encode_nusr(const CoeffSeq& c) {
  std::string out = "NUSR";
  put_le<std::uint32_t>(out, 1);
  put_le<std::int64_t>(out, c.degree());
  out.reserve(out.size() + c.entries().size() * 16);
  for (const auto& v : c.entries()) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
  return out;
}

CoeffSeq decode_nusr(const std::string& bytes) {
  if (bytes.size() < 16 || bytes.compare(0, 4, "NUSR") != 0)
    throw std::runtime_error("NUSR: bad magic");
  std::size_t pos = 4;
  if (get_le<std::uint32_t>(bytes, pos) != 1) throw std::runtime_error("NUSR: unsupported version");
  const auto n = get_le<std::int64_t>(bytes, pos);
  if (n < 0) throw std::runtime_error("NUSR: negative degree");
  if (bytes.size() != 16 + static_cast<std::size_t>(2 * n + 1) * 16)
    throw std::runtime_error("NUSR: size does not match degree");
  std::vector<cplx> e(static_cast<std::size_t>(2 * n + 1));
  for (auto& v : e) {
    const double re = get_le<double>(bytes, pos);
    const double im = get_le<double>(bytes, pos);
    v = {re, im};
  }
  auto c = CoeffSeq::from_entries(std::move(e), false);
  c.set_real_valued(c.hermitian(0.0));
  return c;
}

void write_nusr(const std::filesystem::path& path, const CoeffSeq& c) { spill(path, encode_nusr(c)); }

CoeffSeq read_nusr(const std::filesystem::path& path) { return decode_nusr(slurp(path)); }

nlohmann::json rational_to_json(const Rational& q) {
  return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("rational must be [num, den]");
  Rational q(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
  if (q.get_den() == 0) throw std::runtime_error("zero denominator");
  q.canonicalize();
  return q;
}

nlohmann::json support_to_json(const IntervalUnion& u) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, b] : u.pieces())
    arr.push_back(nlohmann::json::array({rational_to_json(a), rational_to_json(b)}));
  return arr;
}

IntervalUnion support_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("support must be an array");
  std::vector<IntervalUnion::Piece> pieces;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::runtime_error("support entry must be a pair");
    pieces.emplace_back(rational_from_json(e[0]), rational_from_json(e[1]));
  }
  return IntervalUnion(std::move(pieces));
}

void write_support(const std::filesystem::path& path, const IntervalUnion& u) {
  spill(path, support_to_json(u).dump() + "\n");
}

IntervalUnion read_support(const std::filesystem::path& path) {
  return support_from_json(nlohmann::json::parse(slurp(path)));
}

}  // namespace nullseries
