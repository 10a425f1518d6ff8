#include "jlip/coeffio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jlip/errors.hpp"

namespace jlip::coeffio {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw LoadError("coefficient file: field '" + field + "' " + why);
}

double number_at(const json& j, const std::string& field) {
  if (!j.contains(field)) fail(field, "is missing");
  if (!j[field].is_number()) fail(field, "must be a number");
  return j[field].get<double>();
}

}  // namespace

alphaharmonic::AlphaHarmonicMap load_coefficient_map(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("coefficient file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("coefficient file: root must be an object");

  const double alpha = number_at(doc, "alpha");
  if (!(alpha > -1.0)) fail("alpha", "must be > -1");

  if (!doc.contains("coeffs")) fail("coeffs", "is missing");
  if (!doc["coeffs"].is_array()) fail("coeffs", "must be an array");

  alphaharmonic::CoefficientSequence coeffs;
  std::size_t i = 0;
  for (const auto& entry : doc["coeffs"]) {
    std::ostringstream fieldbase;
    fieldbase << "coeffs[" << i << "]";
    if (!entry.is_object()) fail(fieldbase.str(), "must be an object");
    if (!entry.contains("k")) fail(fieldbase.str() + ".k", "is missing");
    if (!entry["k"].is_number_integer())
      fail(fieldbase.str() + ".k", "must be an integer");
    const long k = entry["k"].get<long>();
    if (k == 0) fail(fieldbase.str() + ".k", "must be nonzero");
    if (std::abs(k) > alphaharmonic::CoefficientSequence::kMaxIndex)
      fail(fieldbase.str() + ".k", "exceeds the supported index range");
    const double re = number_at(entry, "re");
    const double im = number_at(entry, "im");
    try {
      coeffs.set(static_cast<int>(k), {re, im});
    } catch (const DomainError&) {
      fail(fieldbase.str() + ".k", "duplicates an earlier index");
    }
    ++i;
  }
  return alphaharmonic::AlphaHarmonicMap(alpha, std::move(coeffs));
}

alphaharmonic::AlphaHarmonicMap load_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("coefficient file: cannot open '" + path + "'");
  return load_coefficient_map(in);
}

std::string to_json(const alphaharmonic::AlphaHarmonicMap& map) {
  nlohmann::ordered_json doc;
  doc["alpha"] = map.alpha();
  doc["coeffs"] = nlohmann::ordered_json::array();
  for (const auto& [k, c] : map.coeffs().entries())
    doc["coeffs"].push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return doc.dump(2);
}

}  // namespace jlip::coeffio
