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

#ifndef AUCLEARN_ESTIMATE_H_
#define AUCLEARN_ESTIMATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "auclearn/auction.h"
#include "auclearn/dist.h"
#include "auclearn/strategy.h"

namespace auclearn {

enum class Estimator { kEmp, kEmpp };

std::string_view EstimatorName(Estimator e);

using StrategyFamily = std::vector<StrategyProfile>;

// Shade profiles for every alpha in the list, all on the same value grid.
StrategyFamily ShadeFamily(std::size_t n, std::span<const double> grid,
                           std::span<const double> alphas);

// Average ex post utility over the joint sample rows.
double EmpEstimate(const SampleMatrix& samples, const AuctionRule& rule,
                   std::size_t i, double value, const StrategyProfile& profile);

// Exact interim utility on the product of empirical marginals.
double EmppEstimate(const SampleMatrix& samples, const AuctionRule& rule,
                    std::size_t i, double value,
                    const StrategyProfile& profile);

struct ErrorReport {
  double sup_error = 0.0;
  std::size_t argmax_profile = 0;
  std::size_t argmax_bidder = 0;
  double argmax_value = 0.0;
  // Worst error per profile.
  std::vector<double> per_profile;
};

// Max over profiles, bidders and probe values (atoms of F_i and breakpoints
// of the profile) of |estimate - exact interim utility on F|.
ErrorReport SupError(const SampleMatrix& samples, const AuctionRule& rule,
                     const StrategyFamily& family,
                     const ProductDistribution& truth, Estimator estimator);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Average of EMP over all independent permutations of the opponent
// columns, against EMPP. Requires m <= 5 and n <= 3.
IdentityCheck PermutationIdentityCheck(const SampleMatrix& samples,
                                       const AuctionRule& rule, std::size_t i,
                                       double value,
                                       const StrategyProfile& profile);

// Number of distinct sign vectors sgn(h(x_j) - r_j) across hypotheses, with
// sgn(0) = -1. Row h of `hypothesis_values` holds h(x_1), ..., h(x_m).
std::size_t LabelVectorCount(
    const std::vector<std::vector<double>>& hypothesis_values,
    std::span<const double> witnesses);

struct DenseFamilyParams {
  std::vector<double> values;
  std::vector<double> own_bids;
  std::vector<double> opponent_levels;
};

// Ex post utilities of bidder 0 on each opponent sample row, for every
// combination of value, own bid and opponent strategy that is monotone on
// the sampled coordinates with bids from `opponent_levels`. Row j of
// `opponent_samples` holds the n-1 opponent values of sample j.
std::vector<std::vector<double>> DenseUtilityFamily(
    const AuctionRule& rule, const SampleMatrix& opponent_samples,
    const DenseFamilyParams& params);

}  // namespace auclearn

#endif  // AUCLEARN_ESTIMATE_H_
