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

#include "auclearn/equilibrium.h"

#include <algorithm>
#include <cmath>

#include "auclearn/error.h"
#include "auclearn/random.h"

namespace auclearn {
namespace {

// Largest grid point <= v, or the smallest grid point.
double ProjectDown(std::span<const double> grid, double v) {
  auto it = std::upper_bound(grid.begin(), grid.end(), v);
  if (it == grid.begin()) return grid.front();
  return *std::prev(it);
}

}  // namespace

BNECertificate VerifyBne(const AuctionRule& rule,
                         const ProductDistribution& dist,
                         const StrategyProfile& profile) {
  if (profile.size() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profile size does not match the number of bidders");
  }
  BNECertificate cert;
  cert.gaps.resize(dist.size());
  bool first = true;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const BidLandscape landscape(OpponentBids(dist, profile, i));
    for (double v : dist[i].atoms()) {
      GapEntry e;
      e.value = v;
      e.utility = InterimUtility(rule, v, {profile[i].Eval(v), false},
                                 landscape);
      const BestResponseResult br =
          BestResponse(rule, v, landscape, dist.upper_bound());
      e.best_utility = br.sup_utility;
      e.deviation = br.argmax;
      e.gap = std::max(0.0, br.sup_utility - e.utility);
      if (first || e.gap > cert.epsilon) {
        cert.epsilon = e.gap;
        cert.worst_bidder = i;
        cert.worst_value = v;
        cert.worst_deviation = e.deviation;
        first = false;
      }
      cert.gaps[i].push_back(e);
    }
  }
  return cert;
}

std::vector<double> UniformGrid(double upper_bound, double step) {
  if (!(step > 0.0) || !(upper_bound >= 0.0) || !std::isfinite(upper_bound)) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  }
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(
      std::floor(upper_bound / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) {
    grid.push_back(std::min(upper_bound, static_cast<double>(k) * step));
  }
  if (upper_bound - grid.back() > 1e-12) grid.push_back(upper_bound);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<std::vector<double>> OffsetGrids(double upper_bound, double step,
                                             std::size_t n) {
  std::vector<std::vector<double>> grids{UniformGrid(upper_bound, step)};
  for (std::size_t i = 1; i < n; ++i) {
    const double offset = step * static_cast<double>(i) / static_cast<double>(n);
    std::vector<double> grid{0.0};
    for (double g : grids[0]) {
      if (g + offset <= upper_bound) grid.push_back(g + offset);
    }
    grids.push_back(std::move(grid));
  }
  return grids;
}

SolveResult SolveBne(const AuctionRule& rule, const ProductDistribution& dist,
                     std::span<const double> bid_grid,
                     const SolveOptions& options) {
  return SolveBne(rule, dist,
                  std::vector<std::vector<double>>(
                      dist.size(),
                      std::vector<double>(bid_grid.begin(), bid_grid.end())),
                  options);
}

SolveResult SolveBne(const AuctionRule& rule, const ProductDistribution& dist,
                     const std::vector<std::vector<double>>& bid_grids,
                     const SolveOptions& options) {
  if (bid_grids.size() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "need one bid grid per bidder");
  }
  std::vector<std::vector<double>> grids;
  for (const std::vector<double>& g : bid_grids) {
    if (g.empty()) throw Error(ErrorCode::kEmptyGrid, "bid grid is empty");
    std::vector<double> grid = g;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 0.0 || grid.back() > dist.upper_bound()) {
      throw Error(ErrorCode::kInvalidArgument, "bid grid must lie in [0, H]");
    }
    grids.push_back(std::move(grid));
  }
  const std::size_t n = dist.size();

  StrategyProfile current;
  if (options.initial) {
    current = *options.initial;
    if (current.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "initial profile has the wrong size");
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Breakpoint> bps;
      for (double v : dist[i].atoms()) {
        bps.push_back({v, ProjectDown(grids[i], v)});
      }
      current.push_back(MonotoneStrategy::Make(std::move(bps)));
    }
  }

  Rng rng(DeriveSeed(options.seed, "solve-bne"));
  SolveResult result;
  result.profile = current;
  result.certificate = VerifyBne(rule, dist, current);
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    if (result.certificate.epsilon == 0.0) break;
    // The first step leaves the starting profile outright.
    const double keep = it == 1 ? 0.0 : options.damping;
    StrategyProfile next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const BidLandscape landscape(OpponentBids(dist, current, i));
      const MonotoneStrategy br = MonotoneBestResponseProfile(
          rule, dist[i].atoms(), landscape, dist.upper_bound(), grids[i]);
      std::vector<Breakpoint> bps = br.breakpoints();
      double running = 0.0;
      for (Breakpoint& b : bps) {
        if (rng.Uniform01() < keep) b.bid = current[i].Eval(b.threshold);
        running = std::max(running, b.bid);
        b.bid = running;
      }
      next.push_back(MonotoneStrategy::Make(std::move(bps)));
    }
    current = std::move(next);
    result.iterations = it;
    BNECertificate cert = VerifyBne(rule, dist, current);
    if (cert.epsilon < result.certificate.epsilon) {
      result.certificate = std::move(cert);
      result.profile = current;
      result.best_iteration = it;
    }
  }
  return result;
}

TransferResult EquilibriumTransferCheck(const AuctionRule& rule,
                                        const ProductDistribution& truth,
                                        const SampleMatrix& samples,
                                        const StrategyProfile& profile) {
  TransferResult r;
  r.eps_on_true = VerifyBne(rule, truth, profile).epsilon;
  r.eps_on_empirical =
      VerifyBne(rule, EmpiricalMarginals(samples, truth.upper_bound()), profile)
          .epsilon;
  return r;
}

}  // namespace auclearn
