#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pollardkit/cli.hpp"
#include "pollardkit/io.hpp"

using namespace pollard;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pollardkit_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("check example") {
  const auto r = run({"check", "--group", "Z9", "--a", "0,1,2", "--b", "0,1,2", "--t", "2", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["lhs"] == 8);
  CHECK(j["rhs_main"] == 8);
  CHECK(j["slack_main"] == 0);
  CHECK(j["violations"].empty());

  const auto text = run({"check", "--group", "Z9", "--a", "0,1,2", "--b", "0,1,2", "--t", "2"});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("rhs 8  slack 0") != std::string::npos);
}

TEST_CASE("spectrum example") {
  const auto r = run({"spectrum", "--group", "Z7", "--a", "0,1,2", "--b", "0,1,2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("r     = 1,2,3,2,1,0,0") != std::string::npos);
  CHECK(r.out.find("S_t   = 5,8,9") != std::string::npos);
  const auto j = run({"spectrum", "--group", "Z7", "--a", "[0,1,2]", "--b", "[0,1,2]", "--format", "json"});
  CHECK(Json::parse(j.out)["r"] == Json::parse("[1,2,3,2,1,0,0]"));
}

TEST_CASE("trivial group check") {
  const auto r = run({"check", "--group", "Z1", "--a", "0", "--b", "0", "--t", "1", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["lhs"] == 1);
  CHECK(j["rhs_main"] == 1);
  CHECK(j["mu"].is_null());
  CHECK(j["rhs_green_ruzsa"].is_null());
}

TEST_CASE("translated input differs only in the recorded shift") {
  const auto base = run({"check", "--group", "Z9", "--a", "0,1,2", "--b", "0,1,2", "--t", "2", "--format", "json"});
  const auto moved = run({"check", "--group", "Z9", "--a", "1,2,3", "--b", "0,1,2", "--t", "2", "--format", "json"});
  REQUIRE(moved.code == kExitOk);
  auto jb = Json::parse(base.out);
  auto jm = Json::parse(moved.out);
  CHECK(jm["normalization_shift"]["a"] == 1);
  CHECK(jb["normalization_shift"]["a"] == 0);
  jb.erase("normalization_shift");
  jm.erase("normalization_shift");
  CHECK(jb.dump() == jm.dump());
}

TEST_CASE("json output round trips through the report parser") {
  const auto r = run({"check", "--group", "Z2xZ4", "--a", "0,1,5,6", "--b", "2,3,4", "--t", "2", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto again = to_json(report_from_json(Json::parse(r.out))).dump(2) + "\n";
  CHECK(again == r.out);
}

TEST_CASE("csv and bound selection") {
  const auto r = run({"check", "--group", "Z7", "--a", "0,1,2", "--b", "0,1,2", "--t", "2",
                      "--format", "csv", "--bounds", "main,pollard"});
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.rfind("group,set_a,set_b,t,lhs", 0) == 0);
  CHECK(row.rfind(R"(Z7,"[0,1,2]","[0,1,2]",2,8,1,0,1,8,0,none,,,8,0,)", 0) == 0);
}

TEST_CASE("usage errors exit with status 1") {
  auto r = run({"check", "--group", "Z9x", "--a", "0", "--b", "0", "--t", "1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("''") != std::string::npos);

  r = run({"check", "--group", "Z9xQ2", "--a", "0", "--b", "0", "--t", "1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("q2") != std::string::npos);

  r = run({"check", "--group", "Z9", "--a", "0,12", "--b", "0", "--t", "1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("12") != std::string::npos);

  r = run({"check", "--group", "Z9", "--a", "0,1", "--b", "0,1", "--t", "3"});
  CHECK(r.code == kExitUsage);
  r = run({"check", "--group", "Z9", "--a", "0,1", "--b", "0,1", "--t", "0"});
  CHECK(r.code == kExitUsage);
  r = run({"check", "--group", "Z9", "--a", "[]", "--b", "0,1", "--t", "1"});
  CHECK(r.code == kExitUsage);
  r = run({"check", "--group", "Z9", "--a", "0", "--b", "0"});
  CHECK(r.code == kExitUsage);
  r = run({"check", "--group", "Z9", "--a", "0", "--b", "0", "--t", "1", "--bounds", "bogus"});
  CHECK(r.code == kExitUsage);
  r = run({"check", "--group", "Z9", "--a", "0", "--b", "0", "--t", "1", "--format", "xml"});
  CHECK(r.code == kExitUsage);
  r = run({});
  CHECK(r.code == kExitUsage);
  r = run({"frobnicate"});
  CHECK(r.code == kExitUsage);
  r = run({"spectrum", "check"});
  CHECK(r.code == kExitUsage);
  r = run({"certify", "--group", "Z9"});
  CHECK(r.code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("certify builds, verifies and re-verifies") {
  const auto path = scratch("cert.json");
  const auto r = run({"certify", "--group", "Z9", "--a", "3,4,5", "--b", "0,1,2", "--t", "2",
                      "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(slurp(path));
  CHECK(j["verified"] == true);
  CHECK(j["rhs_main"] == 8);
  CHECK(j["measured_lhs"] == 8);
  CHECK(j["certificate"]["claimed_bound"] == 8);
  CHECK(j["normalization_shift"]["a"] == 3);

  const auto ok = run({"certify", "--in", path.string()});
  CHECK(ok.code == kExitOk);
  CHECK(Json::parse(ok.out)["verified"] == true);

  auto tampered = j;
  tampered["certificate"]["claimed_bound"] = 9;
  const auto bad_path = scratch("cert_bad.json");
  std::ofstream(bad_path) << tampered.dump();
  const auto bad = run({"certify", "--in", bad_path.string()});
  CHECK(bad.code == kExitViolation);
  const auto verdict = Json::parse(bad.out);
  CHECK(verdict["verified"] == false);
  CHECK(verdict["path"] == "root");

  // A bare certificate (no wrapper) is accepted too.
  const auto bare_path = scratch("cert_bare.json");
  std::ofstream(bare_path) << j["certificate"].dump();
  CHECK(run({"certify", "--in", bare_path.string()}).code == kExitOk);

  const auto text = run({"certify", "--group", "Z6", "--a", "0,3", "--b", "0,3", "--t", "1", "--format", "text"});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("rhs_main 2 <= claimed 2 <= S_t 2") != std::string::npos);

  CHECK(run({"certify", "--in", scratch("missing.json").string()}).code == kExitUsage);
  const auto junk = scratch("junk.json");
  std::ofstream(junk) << "{not json";
  CHECK(run({"certify", "--in", junk.string()}).code == kExitUsage);
}

TEST_CASE("sweep with config file, env var and overrides") {
  const auto cfg = scratch("sweep.cfg");
  std::ofstream(cfg) << "groups = Z9\nsize_a = 3\nsize_b = 3\nt = 2\nmode = equality-hunt\n";
  const auto witnesses = scratch("witnesses.jsonl");
  const auto summary = scratch("summary.json");
  const auto r = run({"sweep", "--config", cfg.string(), "--out", witnesses.string(),
                      "--summary", summary.string()});
  REQUIRE(r.code == kExitOk);
  const auto s = Json::parse(slurp(summary));
  CHECK(s["violations"] == 0);
  CHECK(s["mode"] == "equality-hunt");
  const auto lines = slurp(witnesses);
  CHECK(lines.find(R"("set_a":[0,1,2],"set_b":[0,1,2],"t":2,"lhs":8)") != std::string::npos);

  const auto sharded = scratch("witnesses_sharded.jsonl");
  CHECK(run({"sweep", "--config", cfg.string(), "--shards", "3", "--out", sharded.string()}).code == kExitOk);
  CHECK(slurp(sharded) == lines);

  ::setenv(kConfigEnvVar, cfg.string().c_str(), 1);
  const auto via_env = run({"sweep", "--mode", "verify"});
  ::unsetenv(kConfigEnvVar);
  REQUIRE(via_env.code == kExitOk);
  const auto e = Json::parse(via_env.out);
  CHECK(e["mode"] == "verify");
  CHECK(e["groups"] == Json::parse(R"(["Z9"])"));
  CHECK(e["witnesses"] == 0);

  const auto broken = scratch("broken.cfg");
  std::ofstream(broken) << "groups = Z9\nspeed = 11\n";
  const auto b = run({"sweep", "--config", broken.string()});
  CHECK(b.code == kExitUsage);
  CHECK(b.err.find("speed") != std::string::npos);
  CHECK(run({"sweep", "--config", scratch("nope.cfg").string()}).code == kExitUsage);
  CHECK(run({"sweep", "--config", cfg.string(), "--mode", "turbo"}).code == kExitUsage);
}
