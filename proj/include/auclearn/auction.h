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

#ifndef AUCLEARN_AUCTION_H_
#define AUCLEARN_AUCTION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "auclearn/dist.h"
#include "auclearn/strategy.h"

namespace auclearn {

enum class Format { kFirstPrice, kAllPay };
enum class TieRule { kRandomAllocation, kNoAllocation };

struct AuctionRule {
  Format format = Format::kFirstPrice;
  TieRule tie = TieRule::kRandomAllocation;
};

// Distribution of an opponent's bid.
using BidDistribution = DiscreteDistribution;

// A bid that is either exactly `base` or the right limit just above it.
struct CandidateBid {
  double base = 0.0;
  bool limit_above = false;
};

bool operator==(const CandidateBid& a, const CandidateBid& b);
// Orders by base, then exact before limit.
bool operator<(const CandidateBid& a, const CandidateBid& b);

// Expected utility of bidder i for realized bids; random allocation is
// taken in expectation.
double ExPostUtility(const AuctionRule& rule, std::size_t i, double value,
                     std::span<const double> bids);

BidDistribution PushForward(const DiscreteDistribution& values,
                            const MonotoneStrategy& strategy);

// Bid distribution of a finite mixture of strategies on one value
// distribution.
struct WeightedStrategy {
  double weight;
  MonotoneStrategy strategy;
};
BidDistribution PushForwardMixture(const DiscreteDistribution& values,
                                   std::span<const WeightedStrategy> mixture);

// Allocation probability of a bid against independent opponents.
class BidLandscape {
 public:
  explicit BidLandscape(std::vector<BidDistribution> opponents);

  std::size_t num_opponents() const { return opponents_.size(); }
  const std::vector<BidDistribution>& opponents() const { return opponents_; }

  // Expected share of the item when bidding exactly b.
  double Allocation(TieRule tie, double b) const;
  // Right limit of the allocation at b: P(every opponent bids <= b).
  double LimitAllocation(double b) const;
  double Allocation(TieRule tie, const CandidateBid& b) const;

  // Sorted distinct opponent bid atoms.
  const std::vector<double>& atoms() const { return atoms_; }

  // Candidate set {0} ∪ atoms ∪ atoms⁺, sorted. Limits at or above
  // `upper_bound` are omitted.
  std::vector<CandidateBid> Candidates(double upper_bound = kUnbounded) const;

 private:
  std::vector<BidDistribution> opponents_;
  std::vector<double> atoms_;
};

double UtilityFromAllocation(Format format, double value, double bid,
                             double allocation);

double InterimUtility(const AuctionRule& rule, double value,
                      const CandidateBid& bid, const BidLandscape& landscape);

// Exact interim utility of bidding b with value v against independent
// opponent bid distributions.
double InterimUtilityExact(const AuctionRule& rule, double value, double bid,
                           std::span<const BidDistribution> opponents);

struct BestResponseResult {
  double sup_utility = 0.0;
  CandidateBid argmax;
};

BestResponseResult BestResponse(const AuctionRule& rule, double value,
                                const BidLandscape& landscape,
                                double upper_bound = kUnbounded);
BestResponseResult BestResponse(const AuctionRule& rule, double value,
                                std::span<const BidDistribution> opponents,
                                double upper_bound = kUnbounded);

// Half the smallest gap between consecutive candidate bases (and H), so
// a + eta stays strictly below the next candidate and H.
double LimitOffset(const BidLandscape& landscape, double upper_bound);
double RealizeBid(const CandidateBid& bid, double eta);

// Opponents' bid distributions for bidder i under a profile on F.
std::vector<BidDistribution> OpponentBids(const ProductDistribution& dist,
                                          const StrategyProfile& profile,
                                          std::size_t i);

// Pointwise best responses on `values`. With a nonempty grid the bid is the
// lowest maximizer over the grid; otherwise over candidate bids, with limit
// bids realized by LimitOffset. Bids that never win are set to 0. Throws
// NonMonotoneWitness if the resulting bids decrease.
MonotoneStrategy MonotoneBestResponseProfile(
    const AuctionRule& rule, std::span<const double> values,
    const BidLandscape& landscape, double upper_bound,
    std::span<const double> bid_grid = {});

}  // namespace auclearn

#endif  // AUCLEARN_AUCTION_H_
