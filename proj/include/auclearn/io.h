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

#ifndef AUCLEARN_IO_H_
#define AUCLEARN_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "auclearn/da.h"
#include "auclearn/dist.h"
#include "auclearn/equilibrium.h"
#include "auclearn/estimate.h"
#include "auclearn/strategy.h"

namespace auclearn {

struct InstanceFile {
  ProductDistribution dist;
  std::optional<std::vector<double>> costs;
};

// {"H": r, "marginals": [{"atoms": [...], "weights": [...]}], "costs": [...]}
InstanceFile ParseInstance(const std::string& text);
nlohmann::json InstanceToJson(const ProductDistribution& dist,
                              const std::vector<double>* costs = nullptr);

// {"default_bid": r, "breakpoints": [[v, b], ...]}
MonotoneStrategy StrategyFromJson(const nlohmann::json& j);
nlohmann::json StrategyToJson(const MonotoneStrategy& s);

// Either an array of strategies or {"strategies": [...]}.
StrategyProfile ParseProfile(const std::string& text);
nlohmann::json ProfileToJson(const StrategyProfile& profile);

nlohmann::json CandidateToJson(const CandidateBid& b);
nlohmann::json CertificateToJson(const BNECertificate& cert);
nlohmann::json DAProfileToJson(const DAProfile& profile);
nlohmann::json PipelineReportToJson(const PipelineReport& report);

// One row per sample, comma-separated values.
SampleMatrix ParseSampleCsv(const std::string& text);
std::string SampleCsv(const SampleMatrix& samples);

// Shortest-exact printing used by every CSV writer.
std::string FormatDouble(double x);

std::string ReadFile(const std::string& path);

}  // namespace auclearn

#endif  // AUCLEARN_IO_H_
