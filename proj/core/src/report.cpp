#include "conedet/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "conedet/errors.hpp"

namespace conedet {

namespace {
using json = nlohmann::json;
}

bool VerificationReport::overall_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::add(CheckRecord rec) { checks.push_back(std::move(rec)); }

std::string VerificationReport::to_json(int indent) const {
  json j;
  j["suite"] = suite;
  j["overall_pass"] = overall_pass();
  j["checks"] = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["inputs_digest"] = c.inputs_digest;
    jc["expected"] = c.expected;
    jc["computed"] = c.computed;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (c.runtime_ms) jc["runtime_ms"] = *c.runtime_ms;
    j["checks"].push_back(jc);
  }
  return j.dump(indent);
}

VerificationReport VerificationReport::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidDocument, std::string("JSON parse error: ") + e.what());
  }
  VerificationReport rep;
  rep.suite = j.value("suite", "");
  for (const auto& jc : j["checks"]) {
    CheckRecord c;
    c.name = jc.value("name", "");
    c.inputs_digest = jc.value("inputs_digest", "");
    c.expected = jc.value("expected", 0.0);
    c.computed = jc.value("computed", 0.0);
    c.tolerance = jc.value("tolerance", 0.0);
    c.pass = jc.value("pass", false);
    if (jc.contains("runtime_ms")) c.runtime_ms = jc["runtime_ms"].get<double>();
    rep.checks.push_back(c);
  }
  return rep;
}

std::string digest(const std::string& canonical_inputs) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_inputs) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::InvalidArgument, "cannot open " + tmp);
    out << text;
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0, ErrorCode::InvalidArgument,
          "atomic rename to " + path + " failed");
}

CheckRecord make_check(const std::string& name, const std::string& inputs,
                       double expected, double computed, double tolerance) {
  CheckRecord c;
  c.name = name;
  c.inputs_digest = digest(inputs);
  c.expected = expected;
  c.computed = computed;
  c.tolerance = tolerance;
  c.pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance;
  return c;
}

}  // namespace conedet
