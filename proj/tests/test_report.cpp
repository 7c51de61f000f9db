#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "conedet/report.hpp"

using namespace conedet;

TEST_CASE("check record pass logic") {
  CheckRecord ok = make_check("x", "in", 1.0, 1.0005, 1e-3);
  CHECK(ok.pass);
  CheckRecord bad = make_check("x", "in", 1.0, 1.01, 1e-3);
  CHECK_FALSE(bad.pass);
  CheckRecord nan_check = make_check("x", "in", 1.0, std::nan(""), 1e3);
  CHECK_FALSE(nan_check.pass);
}

TEST_CASE("report JSON round trip") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.add(make_check("alpha", "a=1", 0.5, 0.5000001, 1e-5));
  rep.add(make_check("beta", "b=2", -1.0, -1.5, 1e-3));
  CHECK_FALSE(rep.overall_pass());

  const std::string text = rep.to_json();
  VerificationReport back = VerificationReport::from_json(text);
  CHECK(back.suite == rep.suite);
  REQUIRE(back.checks.size() == rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    CHECK(back.checks[i].name == rep.checks[i].name);
    CHECK(back.checks[i].expected == rep.checks[i].expected);
    CHECK(back.checks[i].computed == rep.checks[i].computed);
    CHECK(back.checks[i].tolerance == rep.checks[i].tolerance);
    CHECK(back.checks[i].pass == rep.checks[i].pass);
  }
  CHECK(back.to_json() == text);  // lossless
}

TEST_CASE("digest is input sensitive and stable") {
  CHECK(digest("abc") == digest("abc"));
  CHECK(digest("abc") != digest("abd"));
  CHECK(digest("").size() == 16);
}

TEST_CASE("atomic write leaves only the final file") {
  const std::string path = "conedet_report_test.json";
  write_file_atomic(path, "{\"k\":1}");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == "{\"k\":1}");
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path.c_str());
}
