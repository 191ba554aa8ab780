#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<const char*>& args) {
  std::vector<const char*> argv{"bskernel"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = bskernel::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

using bskernel::cli::kExitDomain;
using bskernel::cli::kExitOk;
using bskernel::cli::kExitPropertyFails;
using bskernel::cli::kExitUsage;

TEST_CASE("eval") {
  const Result r = run({"eval", "--nu", "0.5", "--z", "1", "--method", "series", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "bskernel.eval/1");
  CHECK(j["value"]["re"].get<double>() == doctest::Approx(1.7182818285).epsilon(1e-10));
  CHECK(j["terms"].get<int>() > 0);
  CHECK(j["tail_bound"].get<double>() < 1e-15);

  const Result q = run({"eval", "--nu", "1", "--z", "0", "--method", "quadrature", "--format", "json"});
  REQUIRE(q.code == kExitOk);
  CHECK(nlohmann::json::parse(q.out)["value"]["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

  const Result neg = run({"eval", "--nu", "0", "--z", "-0.9+0.3i", "--method", "bessel-sum"});
  CHECK(neg.code == kExitOk);

  const Result bad = run({"eval", "--nu", "-0.6", "--z", "0.5"});
  CHECK(bad.code == kExitDomain);
  CHECK(bad.err.find("nu > -1/2") != std::string::npos);
  CHECK(run({"eval", "--nu", "1", "--z", "1+2j"}).code == kExitUsage);
  CHECK(run({"eval", "--nu", "1", "--z", "0.5", "--method", "simpson"}).code == kExitUsage);
  CHECK(run({"eval", "--z", "0.5"}).code == kExitUsage);
  CHECK(run({"eval", "--nu", "1", "--z", "1.5"}).code == kExitDomain);
}

TEST_CASE("certify") {
  CHECK(run({"certify", "--nu", "0.5", "--lemma", "acharya", "--n-max", "500"}).code == kExitOk);
  const Result below = run({"certify", "--nu", "19.61", "--lemma", "cc-odd", "--n-max", "100", "--format", "json"});
  CHECK(below.code == kExitPropertyFails);
  const auto j = nlohmann::json::parse(below.out);
  CHECK(j["passed"] == false);
  CHECK(j["first_violation"] == 1);
  CHECK(run({"certify", "--nu", "0.5", "--lemma", "cc-odd", "--n-max", "100"}).code == kExitPropertyFails);
  CHECK(run({"certify", "--nu", "19.63", "--lemma", "cc_odd"}).code == kExitOk);
  CHECK(run({"certify", "--nu", "1", "--lemma", "acharya", "--n-max", "3"}).code == kExitUsage);
  CHECK(run({"certify", "--nu", "1", "--lemma", "bieberbach"}).code == kExitUsage);
  CHECK(run({"certify", "--nu", "-0.7", "--lemma", "acharya"}).code == kExitDomain);
}

TEST_CASE("margin") {
  const Result star = run({"margin", "--nu", "0.5", "--property", "starlike", "--lambda", "0", "--subject", "zB"});
  CHECK(star.code == kExitOk);
  CHECK(star.out.find("numerical evidence on grid") != std::string::npos);

  const Result s1 = run({"margin", "--nu", "1", "--property", "s1", "--lambda", "0.5", "--subject", "zB",
                         "--format", "json"});
  REQUIRE((s1.code == kExitOk || s1.code == kExitPropertyFails));
  const auto j = nlohmann::json::parse(s1.out);
  CHECK(j["schema"] == "bskernel.margin/1");
  CHECK(j["threshold"].get<double>() == 0.5);

  const Result id = run({"margin", "--property", "starlike", "--fixture", "identity", "--lambda", "0.3",
                         "--format", "json"});
  REQUIRE(id.code == kExitOk);
  CHECK(nlohmann::json::parse(id.out)["extremal_margin"].get<double>() == doctest::Approx(0.7).epsilon(1e-15));

  CHECK(run({"margin", "--nu", "1", "--property", "starlike", "--lambda", "0.99"}).code == kExitPropertyFails);
  CHECK(run({"margin", "--nu", "1", "--property", "s1", "--lambda", "0.7"}).code == kExitDomain);
  CHECK(run({"margin", "--property", "starlike"}).code == kExitUsage);
  CHECK(run({"margin", "--nu", "1", "--property", "starlike", "--grid", "4by8"}).code == kExitUsage);
  CHECK(run({"margin", "--nu", "1", "--property", "convex", "--grid", "4x64", "--radius-max", "0.9"}).code ==
        kExitOk);
}

TEST_CASE("nu0") {
  const Result r = run({"nu0", "--tol", "1e-8", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["root"].get<double>() - 19.6203) <= 5e-4);
  CHECK(j["schema"] == "bskernel.nu0/1");
  const Result a = run({"nu0", "--tol", "1e-12", "--format", "json"});
  const Result b = run({"nu0", "--tol", "1e-12", "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(run({"nu0", "--tol", "0"}).code == kExitUsage);
  CHECK(run({"nu0", "--lo", "0", "--hi", "1"}).code == kExitUsage);
}

TEST_CASE("scan") {
  const Result r = run({"scan", "--nu-min", "0.5", "--nu-max", "1.5", "--step", "0.5", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "nu,acharya,ms_two_six,cc_odd,starlike_margin");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",true,") != std::string::npos);
  CHECK(rows[1].rfind("0.5,true,", 0) == 0);

  const Result flip = run({"scan", "--nu-min", "19.5", "--nu-max", "19.75", "--step", "0.05", "--format", "json"});
  REQUIRE(flip.code == kExitOk);
  const auto j = nlohmann::json::parse(flip.out);
  CHECK(j["schema"] == "bskernel.scan/1");
  CHECK(j["rows"].front()["cc_odd"] == false);
  CHECK(j["rows"].back()["cc_odd"] == true);

  CHECK(run({"scan", "--nu-min", "1", "--nu-max", "0", "--step", "0.1"}).code == kExitUsage);
  CHECK(run({"scan", "--nu-min", "0", "--nu-max", "1", "--step", "-0.1"}).code == kExitUsage);
  CHECK(run({"scan", "--nu-min", "-0.6", "--nu-max", "1", "--step", "0.1"}).code == kExitDomain);
}

TEST_CASE("json and csv output are byte-identical across runs and thread counts") {
  const std::vector<std::vector<const char*>> commands{
      {"eval", "--nu", "2", "--z", "0.3-0.4i", "--format", "json"},
      {"certify", "--nu", "3", "--lemma", "acharya", "--format", "csv"},
      {"margin", "--nu", "1", "--property", "convex", "--format", "json"},
      {"scan", "--nu-min", "0.5", "--nu-max", "2", "--step", "0.5", "--grid", "4x64", "--format", "csv"},
  };
  for (const auto& cmd : commands) {
    setenv("BS_THREADS", "1", 1);
    const Result a = run(cmd);
    setenv("BS_THREADS", "6", 1);
    const Result b = run(cmd);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  unsetenv("BS_THREADS");
}

TEST_CASE("help and unknown commands") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eval", "--nu", "1", "--z", "0.5", "--format", "xml"}).code == kExitUsage);
}
