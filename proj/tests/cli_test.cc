// Copyright 2026 The auclearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "auclearn/cli.h"

namespace auclearn {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Write(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "auclearn_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::size_t Lines(const std::string& s) {
  std::size_t k = 0;
  for (char c : s) k += c == '\n';
  return k;
}

const char kPair[] =
    R"({"H":1,"marginals":[{"atoms":[0,0.25,0.5,0.75,1],"weights":[1,1,1,1,1]},)"
    R"({"atoms":[0,0.5,1],"weights":[1,2,1]}],"costs":[0.1,0.2]})";

TEST_CASE("verify-bne on a single bidder") {
  const auto inst = Write(
      "one.json", R"({"H":1,"marginals":[{"atoms":[0.3,0.9],"weights":[1,1]}]})");
  const auto prof =
      Write("zero.json", R"([{"default_bid":0,"breakpoints":[]}])");
  const auto r = Call({"verify-bne", "--instance", inst, "--profile", prof});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["epsilon"].get<double>() == 0.0);
}

TEST_CASE("estimate rows") {
  const auto inst = Write("pair.json", kPair);
  const auto r = Call({"estimate", "--instance", inst, "--family", "shade",
                       "--m", "1000", "--seeds", "30"});
  REQUIRE(r.code == 0);
  CHECK(Lines(r.out) == 31);
  CHECK(r.out.rfind("estimator,m,seed,sup_error,argmax_bidder,argmax_value,"
                    "profile_id\n",
                    0) == 0);
}

TEST_CASE("errors") {
  const auto bad = Write("bad.json", R"({"H":1,"marginals":[)");
  const auto r = Call({"estimate", "--instance", bad});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("ERROR: parse", 0) == 0);

  const auto missing = Call({"estimate", "--instance", "/nonexistent.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("ERROR:", 0) == 0);

  const auto usage = Call({"frobnicate"});
  CHECK(usage.code == 2);
  CHECK(usage.err.rfind("ERROR:", 0) == 0);

  const auto high = Write(
      "high.json",
      R"({"H":1,"marginals":[{"atoms":[0,1],"weights":[1,1]}],"costs":[0.9]})");
  const auto cost = Call({"pandora", "--instance", high});
  CHECK(cost.code == 2);
  CHECK(cost.err.find("CostExceedsMean") != std::string::npos);

  CHECK(Call({"--help"}).code == 0);
}

TEST_CASE("every subcommand runs and repeats itself") {
  const auto inst = Write("pair.json", kPair);
  const std::vector<std::vector<std::string>> runs = {
      {"estimate", "--instance", inst, "--m", "200", "--seeds", "3",
       "--estimator", "emp"},
      {"solve-bne", "--instance", inst, "--grid-step", "0.05"},
      {"pandora", "--instance", inst, "--m", "500", "--seeds", "3"},
      {"da-experiment", "--instance", inst, "--m", "400", "--seeds", "2"},
      {"lowerbound", "--n", "4", "--eps", "0.02", "--m", "100", "--trials",
       "5"},
      {"pdim-check", "--n", "2", "--m", "3", "--seeds", "2"},
  };
  for (const auto& args : runs) {
    CAPTURE(args[0]);
    const auto a = Call(args);
    CHECK(a.code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == Call(args).out);
    auto seeded = args;
    seeded.insert(seeded.end(), {"--seed", "9"});
    CHECK(Call(seeded).out == Call(seeded).out);
  }
}

TEST_CASE("output file and json format") {
  const auto inst = Write("pair.json", kPair);
  const fs::path out =
      fs::temp_directory_path() / "auclearn_cli_test" / "pandora.json";
  const auto r = Call({"pandora", "--instance", inst, "--format", "json",
                       "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  const json j = json::parse(in);
  CHECK(!j.empty());
}

TEST_CASE("binary exit codes") {
  const char* bin = std::getenv("AUCLEARN_CLI");
  if (bin == nullptr) return;
  const auto bad = Write("bad.json", "{");
  const std::string cmd = std::string(bin) + " estimate --instance " + bad +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  const std::string ok =
      std::string(bin) + " pdim-check --n 2 --m 2 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
}

}  // namespace
}  // namespace auclearn
