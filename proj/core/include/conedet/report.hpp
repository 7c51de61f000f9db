#pragma once

#include <optional>
#include <string>
#include <vector>

namespace conedet {

// One verification check: expected vs computed under a tolerance.
struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> runtime_ms;  // populated only when timing is requested
};

// A named suite of checks; overall pass iff every check passes. Serializes
// losslessly to JSON and round-trips.
struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;

  bool overall_pass() const;
  void add(CheckRecord rec);

  std::string to_json(int indent = 2) const;
  static VerificationReport from_json(const std::string& text);
};

// FNV-1a of a canonical input string, hex encoded.
std::string digest(const std::string& canonical_inputs);

// Write text to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);

// Convenience assembly of a check record.
CheckRecord make_check(const std::string& name, const std::string& inputs,
                       double expected, double computed, double tolerance);

}  // namespace conedet
