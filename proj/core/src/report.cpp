#include "gpmap/report.hpp"

#include <cmath>

#include <json.hpp>

#include "gpmap/error.hpp"

namespace gpmap {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw Error(ErrorKind::InvalidArgument, "not a number: " + s);
}

json table(const std::map<std::string, double>& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[k] = number(v);
  return out;
}

std::map<std::string, double> read_table(const json& j) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = read_number(v);
  return out;
}

Verdict parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::Holds;
  if (s == "fails") return Verdict::Fails;
  if (s == "inapplicable") return Verdict::Inapplicable;
  throw Error(ErrorKind::InvalidArgument, "unknown verdict '" + s + "'");
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

void CertReport::fail(const std::string& witness, double value) {
  witnesses[witness] = value;
  violated.push_back(witness);
  if (verdict == Verdict::Holds) verdict = Verdict::Fails;
}

std::string CertReport::to_json(int indent) const {
  json j;
  j["theorem"] = theorem;
  j["verdict"] = std::string(to_string(verdict));
  j["zero_margin"] = zero_margin;
  j["witnesses"] = table(witnesses);
  j["tolerances"] = table(tolerances);
  j["sampling"] = table(sampling);
  j["violated"] = violated;
  j["notes"] = notes;
  return j.dump(indent);
}

CertReport CertReport::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    CertReport r;
    r.theorem = j.at("theorem").get<std::string>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.zero_margin = j.value("zero_margin", false);
    r.witnesses = read_table(j.at("witnesses"));
    r.tolerances = read_table(j.at("tolerances"));
    r.sampling = read_table(j.at("sampling"));
    r.violated = j.value("violated", std::vector<std::string>{});
    r.notes = j.value("notes", std::vector<std::string>{});
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace gpmap
