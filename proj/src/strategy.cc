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

#include "auclearn/strategy.h"

#include <algorithm>
#include <cmath>

#include "auclearn/error.h"

namespace auclearn {

bool CheckMonotone(std::span<const Breakpoint> breakpoints) {
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (breakpoints[k].bid < breakpoints[k - 1].bid) return false;
  }
  return true;
}

MonotoneStrategy MonotoneStrategy::Make(std::vector<Breakpoint> breakpoints,
                                        double default_bid) {
  if (!(default_bid >= 0.0) || !std::isfinite(default_bid)) {
    throw Error(ErrorCode::kInvalidArgument, "default bid must be >= 0");
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const Breakpoint& b = breakpoints[k];
    if (!std::isfinite(b.threshold) || !std::isfinite(b.bid) || b.bid < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "breakpoint must be finite");
    }
    if (k > 0 && !(b.threshold > breakpoints[k - 1].threshold)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "thresholds must be strictly increasing");
    }
  }
  if (!CheckMonotone(breakpoints) ||
      (!breakpoints.empty() && breakpoints.front().bid < default_bid)) {
    throw Error(ErrorCode::kNonMonotoneWitness, "bids are not nondecreasing");
  }
  MonotoneStrategy s;
  s.breakpoints_ = std::move(breakpoints);
  s.default_bid_ = default_bid;
  return s;
}

MonotoneStrategy MonotoneStrategy::Constant(double bid) {
  return Make({}, bid);
}

MonotoneStrategy MonotoneStrategy::Shade(std::span<const double> grid,
                                         double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "shade factor must be in [0, 1]");
  }
  std::vector<Breakpoint> bps;
  bps.reserve(grid.size());
  for (double g : grid) bps.push_back({g, alpha * g});
  return Make(std::move(bps));
}

double MonotoneStrategy::Eval(double value) const {
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), value,
      [](double v, const Breakpoint& b) { return v < b.threshold; });
  if (it == breakpoints_.begin()) return default_bid_;
  return std::prev(it)->bid;
}

double MonotoneStrategy::MaxBid() const {
  return breakpoints_.empty() ? default_bid_ : breakpoints_.back().bid;
}

bool operator==(const Breakpoint& a, const Breakpoint& b) {
  return a.threshold == b.threshold && a.bid == b.bid;
}

bool operator==(const MonotoneStrategy& a, const MonotoneStrategy& b) {
  return a.default_bid_ == b.default_bid_ && a.breakpoints_ == b.breakpoints_;
}

StrategyProfile ShadeProfile(std::size_t n, std::span<const double> grid,
                             double alpha) {
  return StrategyProfile(n, MonotoneStrategy::Shade(grid, alpha));
}

}  // namespace auclearn
