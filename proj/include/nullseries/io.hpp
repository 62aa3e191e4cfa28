#pragma once

#include <filesystem>
#include <string>

#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"
#include "json.hpp"

namespace nullseries {

void write_nusr(const std::filesystem::path& path, const CoeffSeq& c);
CoeffSeq read_nusr(const std::filesystem::path& path);
std::string encode_nusr(const CoeffSeq& c);
CoeffSeq decode_nusr(const std::string& bytes);

// [[["a_num","a_den"],["b_num","b_den"]], ...]
nlohmann::json support_to_json(const IntervalUnion& u);
IntervalUnion support_from_json(const nlohmann::json& j);
void write_support(const std::filesystem::path& path, const IntervalUnion& u);
IntervalUnion read_support(const std::filesystem::path& path);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace nullseries
