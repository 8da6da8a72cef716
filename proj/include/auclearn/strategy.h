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

#ifndef AUCLEARN_STRATEGY_H_
#define AUCLEARN_STRATEGY_H_

#include <span>
#include <utility>
#include <vector>

namespace auclearn {

struct Breakpoint {
  double threshold;
  double bid;
};

// True iff bids are nondecreasing along the breakpoint list.
bool CheckMonotone(std::span<const Breakpoint> breakpoints);

// Right-continuous nondecreasing step function from values to bids.
class MonotoneStrategy {
 public:
  // Constant-zero strategy.
  MonotoneStrategy() = default;

  // Throws NonMonotoneWitness when bids decrease and InvalidArgument when
  // thresholds are not strictly increasing or a bid is negative.
  static MonotoneStrategy Make(std::vector<Breakpoint> breakpoints,
                               double default_bid = 0.0);
  static MonotoneStrategy Constant(double bid);
  // Breakpoints (g, alpha * g) for each grid point.
  static MonotoneStrategy Shade(std::span<const double> grid, double alpha);

  double Eval(double value) const;
  double operator()(double value) const { return Eval(value); }

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  double default_bid() const { return default_bid_; }
  double MaxBid() const;

  friend bool operator==(const MonotoneStrategy& a, const MonotoneStrategy& b);

 private:
  std::vector<Breakpoint> breakpoints_;
  double default_bid_ = 0.0;
};

bool operator==(const Breakpoint& a, const Breakpoint& b);

using StrategyProfile = std::vector<MonotoneStrategy>;

// Profile where every bidder plays the same shade factor on the same grid.
StrategyProfile ShadeProfile(std::size_t n, std::span<const double> grid,
                             double alpha);

}  // namespace auclearn

#endif  // AUCLEARN_STRATEGY_H_
