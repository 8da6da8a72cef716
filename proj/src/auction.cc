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

#include "auclearn/auction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "auclearn/error.h"

namespace auclearn {
namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

bool operator==(const CandidateBid& a, const CandidateBid& b) {
  return a.base == b.base && a.limit_above == b.limit_above;
}

bool operator<(const CandidateBid& a, const CandidateBid& b) {
  if (a.base != b.base) return a.base < b.base;
  return !a.limit_above && b.limit_above;
}

double ExPostUtility(const AuctionRule& rule, std::size_t i, double value,
                     std::span<const double> bids) {
  if (i >= bids.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "bidder " + std::to_string(i) + " out of range");
  }
  const double own = bids[i];
  std::size_t tied = 0;
  bool beaten = false;
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (j == i) continue;
    if (bids[j] > own) beaten = true;
    if (bids[j] == own) ++tied;
  }
  double share = 0.0;
  if (!beaten) {
    if (tied == 0) {
      share = 1.0;
    } else if (rule.tie == TieRule::kRandomAllocation) {
      share = 1.0 / static_cast<double>(tied + 1);
    }
  }
  return UtilityFromAllocation(rule.format, value, own, share);
}

BidDistribution PushForward(const DiscreteDistribution& values,
                            const MonotoneStrategy& strategy) {
  std::vector<double> bids(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    bids[k] = strategy.Eval(values.atoms()[k]);
  }
  return DiscreteDistribution::Make(bids, values.weights());
}

BidDistribution PushForwardMixture(const DiscreteDistribution& values,
                                   std::span<const WeightedStrategy> mixture) {
  std::vector<double> bids;
  std::vector<double> weights;
  for (const WeightedStrategy& c : mixture) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      bids.push_back(c.strategy.Eval(values.atoms()[k]));
      weights.push_back(c.weight * values.weights()[k]);
    }
  }
  return DiscreteDistribution::Make(bids, weights);
}

BidLandscape::BidLandscape(std::vector<BidDistribution> opponents)
    : opponents_(std::move(opponents)) {
  for (const auto& d : opponents_) {
    atoms_.insert(atoms_.end(), d.atoms().begin(), d.atoms().end());
  }
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

double BidLandscape::Allocation(TieRule tie, double b) const {
  if (tie == TieRule::kNoAllocation) {
    double p = 1.0;
    for (const auto& d : opponents_) p *= d.CdfBelow(b);
    return p;
  }
  // poly[t] = P(no opponent above b and exactly t tied at b).
  std::vector<double> poly(opponents_.size() + 1, 0.0);
  poly[0] = 1.0;
  std::size_t degree = 0;
  for (const auto& d : opponents_) {
    const double below = d.CdfBelow(b);
    const double at = d.Mass(b);
    ++degree;
    for (std::size_t t = degree; t > 0; --t) {
      poly[t] = poly[t] * below + poly[t - 1] * at;
    }
    poly[0] *= below;
  }
  double share = 0.0;
  for (std::size_t t = 0; t <= degree; ++t) {
    share += poly[t] / static_cast<double>(t + 1);
  }
  return share;
}

double BidLandscape::LimitAllocation(double b) const {
  double p = 1.0;
  for (const auto& d : opponents_) p *= d.Cdf(b);
  return p;
}

double BidLandscape::Allocation(TieRule tie, const CandidateBid& b) const {
  return b.limit_above ? LimitAllocation(b.base) : Allocation(tie, b.base);
}

std::vector<CandidateBid> BidLandscape::Candidates(double upper_bound) const {
  std::vector<CandidateBid> out;
  out.push_back({0.0, false});
  for (double a : atoms_) {
    if (a > upper_bound) break;
    if (a != 0.0) out.push_back({a, false});
    if (a < upper_bound) out.push_back({a, true});
  }
  return out;
}

double UtilityFromAllocation(Format format, double value, double bid,
                             double allocation) {
  if (format == Format::kFirstPrice) return (value - bid) * allocation;
  return value * allocation - bid;
}

double InterimUtility(const AuctionRule& rule, double value,
                      const CandidateBid& bid, const BidLandscape& landscape) {
  return UtilityFromAllocation(rule.format, value, bid.base,
                               landscape.Allocation(rule.tie, bid));
}

double InterimUtilityExact(const AuctionRule& rule, double value, double bid,
                           std::span<const BidDistribution> opponents) {
  if (!(bid >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bid must be >= 0");
  }
  BidLandscape landscape({opponents.begin(), opponents.end()});
  return InterimUtility(rule, value, {bid, false}, landscape);
}

BestResponseResult BestResponse(const AuctionRule& rule, double value,
                                const BidLandscape& landscape,
                                double upper_bound) {
  const std::vector<CandidateBid> candidates =
      landscape.Candidates(upper_bound);
  std::vector<double> utilities(candidates.size());
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    utilities[k] = InterimUtility(rule, value, candidates[k], landscape);
    sup = std::max(sup, utilities[k]);
  }
  BestResponseResult result;
  result.sup_utility = sup;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (utilities[k] >= sup - kTieTolerance) {
      result.argmax = candidates[k];
      break;
    }
  }
  return result;
}

BestResponseResult BestResponse(const AuctionRule& rule, double value,
                                std::span<const BidDistribution> opponents,
                                double upper_bound) {
  BidLandscape landscape({opponents.begin(), opponents.end()});
  return BestResponse(rule, value, landscape, upper_bound);
}

double LimitOffset(const BidLandscape& landscape, double upper_bound) {
  std::vector<double> points = landscape.atoms();
  points.push_back(0.0);
  if (std::isfinite(upper_bound)) points.push_back(upper_bound);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < points.size(); ++k) {
    gap = std::min(gap, points[k] - points[k - 1]);
  }
  if (!std::isfinite(gap)) gap = 1.0;
  return gap / 2.0;
}

double RealizeBid(const CandidateBid& bid, double eta) {
  return bid.limit_above ? bid.base + eta : bid.base;
}

std::vector<BidDistribution> OpponentBids(const ProductDistribution& dist,
                                          const StrategyProfile& profile,
                                          std::size_t i) {
  if (profile.size() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profile has " + std::to_string(profile.size()) +
                    " strategies for " + std::to_string(dist.size()) +
                    " bidders");
  }
  if (i >= dist.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "bidder " + std::to_string(i) + " out of range");
  }
  std::vector<BidDistribution> out;
  out.reserve(dist.size() - 1);
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j != i) out.push_back(PushForward(dist[j], profile[j]));
  }
  return out;
}

MonotoneStrategy MonotoneBestResponseProfile(
    const AuctionRule& rule, std::span<const double> values,
    const BidLandscape& landscape, double upper_bound,
    std::span<const double> bid_grid) {
  std::vector<Breakpoint> bps;
  bps.reserve(values.size());
  const double eta = LimitOffset(landscape, upper_bound);
  for (double v : values) {
    double bid = 0.0;
    if (!bid_grid.empty()) {
      std::vector<double> utilities(bid_grid.size());
      double sup = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < bid_grid.size(); ++k) {
        utilities[k] = UtilityFromAllocation(
            rule.format, v, bid_grid[k],
            landscape.Allocation(rule.tie, bid_grid[k]));
        sup = std::max(sup, utilities[k]);
      }
      bid = bid_grid.back();
      for (std::size_t k = 0; k < bid_grid.size(); ++k) {
        if (utilities[k] >= sup - kTieTolerance) {
          bid = bid_grid[k];
          break;
        }
      }
    } else {
      bid = RealizeBid(BestResponse(rule, v, landscape, upper_bound).argmax,
                       eta);
    }
    if (landscape.Allocation(rule.tie, bid) == 0.0) bid = 0.0;
    bps.push_back({v, bid});
  }
  if (!CheckMonotone(bps)) {
    throw Error(ErrorCode::kNonMonotoneWitness,
                "pointwise best responses decrease in value");
  }
  return MonotoneStrategy::Make(std::move(bps));
}

}  // namespace auclearn
