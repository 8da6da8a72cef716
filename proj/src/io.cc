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

#include "auclearn/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "auclearn/error.h"

namespace auclearn {
namespace {

using nlohmann::json;

[[noreturn]] void ParseFail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

json ParseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    ParseFail(e.what());
  }
}

std::vector<double> Numbers(const json& j, const char* field) {
  if (!j.is_array()) ParseFail(std::string(field) + " must be an array");
  std::vector<double> out;
  for (const json& x : j) {
    if (!x.is_number()) ParseFail(std::string(field) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

InstanceFile ParseInstance(const std::string& text) {
  const json j = ParseJson(text);
  if (!j.is_object() || !j.contains("marginals")) {
    ParseFail("instance needs a \"marginals\" array");
  }
  double h = -1.0;
  if (j.contains("H")) {
    if (!j["H"].is_number()) ParseFail("H must be a number");
    h = j["H"].get<double>();
  }
  std::vector<DiscreteDistribution> marginals;
  if (!j["marginals"].is_array()) ParseFail("marginals must be an array");
  for (const json& m : j["marginals"]) {
    if (!m.is_object() || !m.contains("atoms") || !m.contains("weights")) {
      ParseFail("each marginal needs atoms and weights");
    }
    const std::vector<double> atoms = Numbers(m["atoms"], "atoms");
    const std::vector<double> weights = Numbers(m["weights"], "weights");
    marginals.push_back(DiscreteDistribution::Make(
        atoms, weights, h >= 0.0 ? h : kUnbounded));
  }
  InstanceFile out{ProductDistribution(std::move(marginals), h), std::nullopt};
  if (j.contains("costs")) out.costs = Numbers(j["costs"], "costs");
  return out;
}

json InstanceToJson(const ProductDistribution& dist,
                    const std::vector<double>* costs) {
  json j;
  j["H"] = dist.upper_bound();
  j["marginals"] = json::array();
  for (const auto& m : dist.marginals()) {
    j["marginals"].push_back({{"atoms", m.atoms()}, {"weights", m.weights()}});
  }
  if (costs != nullptr) j["costs"] = *costs;
  return j;
}

MonotoneStrategy StrategyFromJson(const json& j) {
  if (!j.is_object()) ParseFail("strategy must be an object");
  double default_bid = 0.0;
  if (j.contains("default_bid")) {
    if (!j["default_bid"].is_number()) ParseFail("default_bid must be a number");
    default_bid = j["default_bid"].get<double>();
  }
  std::vector<Breakpoint> bps;
  if (j.contains("breakpoints")) {
    if (!j["breakpoints"].is_array()) ParseFail("breakpoints must be an array");
    for (const json& b : j["breakpoints"]) {
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
          !b[1].is_number()) {
        ParseFail("breakpoint must be [value, bid]");
      }
      bps.push_back({b[0].get<double>(), b[1].get<double>()});
    }
  }
  return MonotoneStrategy::Make(std::move(bps), default_bid);
}

json StrategyToJson(const MonotoneStrategy& s) {
  json bps = json::array();
  for (const Breakpoint& b : s.breakpoints()) {
    bps.push_back({b.threshold, b.bid});
  }
  return {{"default_bid", s.default_bid()}, {"breakpoints", bps}};
}

StrategyProfile ParseProfile(const std::string& text) {
  json j = ParseJson(text);
  if (j.is_object() && j.contains("strategies")) j = j["strategies"];
  if (!j.is_array()) ParseFail("profile must be an array of strategies");
  StrategyProfile out;
  for (const json& s : j) out.push_back(StrategyFromJson(s));
  return out;
}

json ProfileToJson(const StrategyProfile& profile) {
  json j = json::array();
  for (const auto& s : profile) j.push_back(StrategyToJson(s));
  return j;
}

json CandidateToJson(const CandidateBid& b) {
  return {{"base", b.base}, {"limit_above", b.limit_above}};
}

json CertificateToJson(const BNECertificate& cert) {
  json gaps = json::array();
  for (std::size_t i = 0; i < cert.gaps.size(); ++i) {
    json row = json::array();
    for (const GapEntry& e : cert.gaps[i]) {
      row.push_back({{"value", e.value},
                     {"utility", e.utility},
                     {"best_utility", e.best_utility},
                     {"gap", e.gap},
                     {"deviation", CandidateToJson(e.deviation)}});
    }
    gaps.push_back(row);
  }
  return {{"epsilon", cert.epsilon},
          {"worst",
           {{"bidder", cert.worst_bidder},
            {"value", cert.worst_value},
            {"deviation", CandidateToJson(cert.worst_deviation)}}},
          {"gaps", gaps}};
}

json DAProfileToJson(const DAProfile& profile) {
  json j = json::array();
  for (const DAMixedStrategy& s : profile) {
    json comps = json::array();
    for (const DAComponent& c : s.components) {
      comps.push_back({{"weight", c.weight},
                       {"tau", c.strategy.tau},
                       {"beta", StrategyToJson(c.strategy.beta)}});
    }
    j.push_back({{"components", comps}});
  }
  return j;
}

json PipelineReportToJson(const PipelineReport& r) {
  return {{"sigma", r.sigma},
          {"sigma_hat", r.sigma_hat},
          {"costs", r.costs},
          {"costs_hat", r.costs_hat},
          {"max_cost_error", r.max_cost_error},
          {"eps_prime", r.eps_prime},
          {"utility_error", r.utility_error},
          {"gap_lower_bound", r.gap_lower_bound},
          {"gap_exact", r.gap_exact},
          {"welfare", r.welfare},
          {"opt_welfare", r.opt_welfare},
          {"poa_bound", r.poa_bound},
          {"fpa_profile", ProfileToJson(r.fpa_profile)},
          {"da_profile", DAProfileToJson(r.da_profile)}};
}

SampleMatrix ParseSampleCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::string field;
    std::size_t width = 0;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
      } catch (const std::exception&) {
        ParseFail("bad number \"" + field + "\" in sample CSV");
      }
      ++width;
    }
    if (rows == 0) cols = width;
    if (width != cols) ParseFail("ragged sample CSV");
    ++rows;
  }
  if (rows == 0) ParseFail("sample CSV is empty");
  return SampleMatrix(rows, cols, std::move(values));
}

std::string SampleCsv(const SampleMatrix& samples) {
  std::string out;
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    for (std::size_t c = 0; c < samples.cols(); ++c) {
      if (c > 0) out += ',';
      out += FormatDouble(samples(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace auclearn
