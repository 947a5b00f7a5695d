#pragma once

// Serialization: JSON/JSONL records and the landscape CSV.

#include "terminal_fano/datagen.hpp"
#include "terminal_fano/fan.hpp"
#include "terminal_fano/terminality.hpp"
#include "terminal_fano/weights.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <variant>

namespace terminal_fano {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatHeader = "#terminal-fano v1";
inline constexpr std::string_view kLandscapeColumns = "a;b;prob_terminal;fano_index;A;B";

/// Shortest round-trip decimal form; "-inf" / "inf" / "nan" for non-finite values.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline Json matrix_json(const WeightMatrix& w) { return Json{{"a", w.row_a()}, {"b", w.row_b()}}; }

inline WeightMatrix matrix_from_json(const Json& j) {
  try {
    auto a = j.at("a").get<std::vector<std::int64_t>>();
    auto b = j.at("b").get<std::vector<std::int64_t>>();
    if (a.size() != b.size()) throw parse_error("rows have different lengths");
    if (a.size() < 4) throw parse_error("need at least 4 columns");
    return {std::move(a), std::move(b)};
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad weight-matrix JSON: ") + e.what());
  }
}

/// Accepts either the text form or a JSON object with "a" and "b" arrays.
inline WeightMatrix parse_matrix_line(std::string_view line) {
  auto first = line.find_first_not_of(" \t");
  if (first != std::string_view::npos && line[first] == '{') {
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("malformed JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  return parse_text(line);
}

inline Json rays_json(const RaySet& rays) { return Json{{"rays", rays.rays}}; }

inline Json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Prop1Witness>) {
          return Json{{"vertex", x.vertex + 1},
                      {"k", x.k},
                      {"l", x.l},
                      {"numerators", x.numerators},
                      {"denominator", x.denominator}};
        } else {
          Json cone = Json::array();
          for (auto c : x.cone) cone.push_back(c + 1);
          Json j{{"point", x.point}};
          if (!x.cone.empty()) j["cone"] = cone;
          return j;
        }
      },
      w);
}

/// `{"a":[...],"b":[...],"terminal":bool,"method":str,"witness":...}`;
/// column indices inside witnesses are 1-based.
inline Json verdict_json(const WeightMatrix& w, const TerminalityVerdict& v) {
  Json j = matrix_json(w);
  j["terminal"] = v.terminal;
  j["method"] = to_string(v.method);
  j["witness"] = v.witness ? witness_json(*v.witness) : Json(nullptr);
  return j;
}

inline Json labeled_json(const LabeledRecord& r) {
  Json j = matrix_json(r.matrix);
  j["terminal"] = r.terminal;
  j["key"] = r.key;
  return j;
}

inline std::string labeled_csv_row(const LabeledRecord& r) {
  std::string t = format_text(r.matrix);
  return t + ';' + (r.terminal ? "1" : "0");
}

inline std::string landscape_csv_row(const LandscapeRecord& r) {
  return format_text(r.matrix) + ';' + format_double(r.prob_terminal) + ';' + std::to_string(r.ell) + ';' +
         format_double(r.A) + ';' + format_double(r.B);
}

inline Json landscape_json(const LandscapeRecord& r) {
  Json j = matrix_json(r.matrix);
  j["prob_terminal"] = r.prob_terminal;
  j["fano_index"] = r.ell;
  j["A"] = r.A;
  j["B"] = std::isfinite(r.B) ? Json(r.B) : Json(nullptr);
  return j;
}

}  // namespace terminal_fano
