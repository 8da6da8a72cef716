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

#ifndef AUCLEARN_EQUILIBRIUM_H_
#define AUCLEARN_EQUILIBRIUM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "auclearn/auction.h"
#include "auclearn/dist.h"
#include "auclearn/strategy.h"

namespace auclearn {

struct GapEntry {
  double value = 0.0;
  double utility = 0.0;
  double best_utility = 0.0;
  double gap = 0.0;
  CandidateBid deviation;
};

struct BNECertificate {
  double epsilon = 0.0;
  // gaps[i][k] is the gain of bidder i at the k-th atom of F_i.
  std::vector<std::vector<GapEntry>> gaps;
  std::size_t worst_bidder = 0;
  double worst_value = 0.0;
  CandidateBid worst_deviation;
};

BNECertificate VerifyBne(const AuctionRule& rule,
                         const ProductDistribution& dist,
                         const StrategyProfile& profile);

struct SolveOptions {
  std::size_t max_iters = 500;
  // Probability of keeping the old bid at each value per iteration.
  double damping = 0.5;
  std::uint64_t seed = 0;
  // Optional starting profile; truthful bids projected onto the grid
  // otherwise.
  std::optional<StrategyProfile> initial;
};

struct SolveResult {
  StrategyProfile profile;
  BNECertificate certificate;
  std::size_t iterations = 0;
  std::size_t best_iteration = 0;
};

// Damped simultaneous best-response dynamics on the bid grid. Every
// iterate is certified exactly and the best one is returned.
SolveResult SolveBne(const AuctionRule& rule, const ProductDistribution& dist,
                     std::span<const double> bid_grid,
                     const SolveOptions& options = {});

// One bid grid per bidder.
SolveResult SolveBne(const AuctionRule& rule, const ProductDistribution& dist,
                     const std::vector<std::vector<double>>& bid_grids,
                     const SolveOptions& options = {});

// Uniform grid {0, step, 2 step, ...} up to H inclusive.
std::vector<double> UniformGrid(double upper_bound, double step);

// Grid i is {0} plus the uniform grid shifted by i step / n, so bids of
// different bidders meet only at 0.
std::vector<std::vector<double>> OffsetGrids(double upper_bound, double step,
                                             std::size_t n);

struct TransferResult {
  double eps_on_true = 0.0;
  double eps_on_empirical = 0.0;
};

TransferResult EquilibriumTransferCheck(const AuctionRule& rule,
                                        const ProductDistribution& truth,
                                        const SampleMatrix& samples,
                                        const StrategyProfile& profile);

}  // namespace auclearn

#endif  // AUCLEARN_EQUILIBRIUM_H_
