#ifndef GPMAP_REPORT_HPP
#define GPMAP_REPORT_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gpmap {

enum class Verdict { Holds, Fails, Inapplicable };

std::string_view to_string(Verdict v) noexcept;

/// Outcome of one numeric certificate.
///
/// JSON shape:
///   {"theorem": str, "verdict": "holds"|"fails"|"inapplicable",
///    "zero_margin": bool, "witnesses": {name: number},
///    "tolerances": {name: number}, "sampling": {name: number},
///    "violated": [witness name], "notes": [str]}
///
/// Non-finite witness values are written as strings ("inf", "-inf", "nan").
struct CertReport {
  std::string theorem;
  Verdict verdict = Verdict::Inapplicable;
  bool zero_margin = false;
  std::map<std::string, double> witnesses;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> sampling;
  std::vector<std::string> violated;  // names of witnesses that broke an inequality
  std::vector<std::string> notes;

  bool holds() const noexcept { return verdict == Verdict::Holds; }

  /// Records a failed inequality and downgrades a Holds verdict to Fails.
  void fail(const std::string& witness, double value);

  std::string to_json(int indent = 2) const;
  static CertReport from_json(std::string_view text);
};

}  // namespace gpmap

#endif
