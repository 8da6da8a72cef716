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

#ifndef AUCLEARN_PANDORA_H_
#define AUCLEARN_PANDORA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "auclearn/dist.h"

namespace auclearn {

class SearchInstance {
 public:
  // Throws DimensionMismatch, InvalidArgument (cost outside [0, H]) or
  // CostExceedsMean.
  SearchInstance(ProductDistribution boxes, std::vector<double> costs);

  const ProductDistribution& boxes() const { return boxes_; }
  const std::vector<double>& costs() const { return costs_; }
  std::size_t size() const { return costs_.size(); }
  double upper_bound() const { return boxes_.upper_bound(); }

 private:
  ProductDistribution boxes_;
  std::vector<double> costs_;
};

// Solution of E[max(v - sigma, 0)] = c; H when c = 0.
double WeitzmanIndex(const DiscreteDistribution& dist, double cost,
                     double upper_bound);

std::vector<double> WeitzmanIndices(const SearchInstance& inst);

struct IndexPolicy {
  std::vector<double> indices;
  std::vector<double> costs;
  std::optional<double> truncation_budget;

  // Boxes in opening order: descending index, ties by id.
  std::vector<std::size_t> Order() const;
};

IndexPolicy WeitzmanPolicy(const SearchInstance& inst,
                           std::optional<double> truncation_budget = {});

// 2 H ln(H / eps).
double TruncationBudget(double upper_bound, double eps);

double SimulatePolicy(const IndexPolicy& policy, std::span<const double> values);

// Exact expected payoff by a forward pass over the running maximum.
double PolicyPayoffExact(const SearchInstance& inst, const IndexPolicy& policy);

// Optimum over all adaptive policies by backward induction. Requires
// n <= 4 and at most 4 atoms per box.
double OptimalAdaptiveOracle(const SearchInstance& inst);

// E[max_i min(v_i, sigma_i)].
double OptWelfare(const SearchInstance& inst);

struct PandoraLearnResult {
  double learned_payoff = 0.0;
  double optimal_payoff = 0.0;
  double regret() const { return optimal_payoff - learned_payoff; }
};

PandoraLearnResult PandoraFromSamples(const SampleMatrix& samples,
                                      std::span<const double> costs,
                                      const ProductDistribution& truth,
                                      double trunc_eps);

}  // namespace auclearn

#endif  // AUCLEARN_PANDORA_H_
