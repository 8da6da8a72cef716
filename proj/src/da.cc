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

#include "auclearn/da.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "auclearn/error.h"
#include "auclearn/random.h"

namespace auclearn {
namespace {

void CheckProfileSize(const SearchInstance& inst, std::size_t size) {
  if (size != inst.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profile has " + std::to_string(size) + " strategies for " +
                    std::to_string(inst.size()) + " bidders");
  }
}

// Breakpoints of s strictly below sigma followed by (sigma, top).
MonotoneStrategy CapAt(const MonotoneStrategy& s, double sigma, double top) {
  std::vector<Breakpoint> bps;
  for (const Breakpoint& b : s.breakpoints()) {
    if (b.threshold < sigma) bps.push_back(b);
  }
  bps.push_back({sigma, top});
  return MonotoneStrategy::Make(std::move(bps), s.default_bid());
}

FirstPriceMixture ClaimMixture(const DAMixedStrategy& s) {
  FirstPriceMixture out;
  for (const DAComponent& c : s.components) {
    out.push_back({c.weight, c.strategy.beta});
  }
  return out;
}

// Landscape of the opponents' claim prices.
BidLandscape ClaimLandscape(const SearchInstance& inst,
                            const DAProfile& profile, std::size_t i) {
  std::vector<BidDistribution> opp;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (j == i) continue;
    opp.push_back(
        PushForwardMixture(inst.boxes()[j], ClaimMixture(profile[j])));
  }
  return BidLandscape(std::move(opp));
}

double PureUtility(const SearchInstance& inst, const DAPureStrategy& s,
                   std::size_t i, const BidLandscape& landscape,
                   TieRule tie) {
  const DiscreteDistribution& dist = inst.boxes()[i];
  double u = -inst.costs()[i] * landscape.LimitAllocation(s.tau);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double v = dist.atoms()[k];
    const double b = s.beta.Eval(v);
    u += dist.weights()[k] * landscape.Allocation(tie, b) * (v - b);
  }
  return u;
}

class Accumulator {
 public:
  void Add(double x, double w = 1.0) {
    sum_ += w * x;
    sum_sq_ += w * x * x;
    weight_ += w;
    ++count_;
  }
  Estimate Exact() const { return {sum_ / weight_, 0.0}; }
  Estimate Sampled() const {
    const double mean = sum_ / weight_;
    const double var =
        count_ > 1 ? std::max(0.0, (sum_sq_ / weight_ - mean * mean)) *
                         static_cast<double>(count_) /
                         static_cast<double>(count_ - 1)
                   : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(count_))};
  }

 private:
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  double weight_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace

DAPureStrategy DAPureStrategy::Make(double tau, MonotoneStrategy beta) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold price must be >= 0");
  }
  if (beta.MaxBid() > tau) {
    throw Error(ErrorCode::kClaimAboveInspection,
                "claim price " + std::to_string(beta.MaxBid()) +
                    " exceeds inspection price " + std::to_string(tau));
  }
  return {tau, std::move(beta)};
}

DAMixedStrategy DAMixedStrategy::Pure(DAPureStrategy s) {
  return {{{1.0, std::move(s)}}};
}

DAOutcome SimulateDa(const SearchInstance& inst,
                     std::span<const DAPureStrategy> profile,
                     std::span<const double> values, TieRule tie) {
  const std::size_t n = inst.size();
  CheckProfileSize(inst, profile.size());
  if (values.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "need one value per bidder");
  }
  std::vector<double> claims(n);
  double price = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    claims[j] = profile[j].beta.Eval(values[j]);
    if (claims[j] > profile[j].tau) {
      throw Error(ErrorCode::kClaimAboveInspection,
                  "bidder " + std::to_string(j) + " claims above its threshold");
    }
    price = std::max(price, claims[j]);
  }
  DAOutcome out;
  out.price = price;
  out.allocation.assign(n, 0.0);
  out.utilities.assign(n, 0.0);
  out.inspected.assign(n, false);
  std::size_t claimers = 0;
  for (std::size_t j = 0; j < n; ++j) {
    // Inspections at a price happen before claims at that price.
    out.inspected[j] = profile[j].tau >= price;
    if (claims[j] == price) ++claimers;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (claims[j] != price) continue;
    if (claimers == 1) {
      out.allocation[j] = 1.0;
      out.winner = j;
    } else if (tie == TieRule::kRandomAllocation) {
      out.allocation[j] = 1.0 / static_cast<double>(claimers);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double cost = out.inspected[j] ? inst.costs()[j] : 0.0;
    out.utilities[j] = out.allocation[j] * (values[j] - price) - cost;
    out.welfare += out.allocation[j] * values[j] - cost;
  }
  return out;
}

DAExAnte ExAnteDa(const SearchInstance& inst, const DAProfile& profile,
                  TieRule tie, const MonteCarloParams& mc) {
  const std::size_t n = inst.size();
  CheckProfileSize(inst, profile.size());
  double joint = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (profile[j].components.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "mixture has no components");
    }
    joint *= static_cast<double>(inst.boxes()[j].size() *
                                 profile[j].components.size());
  }
  std::vector<Accumulator> utility(n);
  Accumulator welfare;
  std::vector<DAPureStrategy> pure(n);
  std::vector<double> values(n);
  DAExAnte result;
  if (joint <= static_cast<double>(mc.enumeration_limit)) {
    std::vector<std::size_t> value_idx(n, 0);
    std::vector<std::size_t> comp_idx(n, 0);
    while (true) {
      double w = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        const DAComponent& c = profile[j].components[comp_idx[j]];
        values[j] = inst.boxes()[j].atoms()[value_idx[j]];
        pure[j] = c.strategy;
        w *= c.weight * inst.boxes()[j].weights()[value_idx[j]];
      }
      const DAOutcome out = SimulateDa(inst, pure, values, tie);
      for (std::size_t j = 0; j < n; ++j) utility[j].Add(out.utilities[j], w);
      welfare.Add(out.welfare, w);
      std::size_t j = 0;
      for (; j < n; ++j) {
        if (++value_idx[j] < inst.boxes()[j].size()) break;
        value_idx[j] = 0;
        if (++comp_idx[j] < profile[j].components.size()) break;
        comp_idx[j] = 0;
      }
      if (j == n) break;
    }
    for (std::size_t j = 0; j < n; ++j) {
      result.utilities.push_back(utility[j].Exact());
    }
    result.welfare = welfare.Exact();
    result.exact = true;
    return result;
  }
  Rng rng(DeriveSeed(mc.seed, "da-monte-carlo"));
  for (std::size_t t = 0; t < mc.trials; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = inst.boxes()[j].Sample(rng);
      double u = rng.Uniform01();
      std::size_t k = 0;
      const auto& comps = profile[j].components;
      while (k + 1 < comps.size() && u >= comps[k].weight) {
        u -= comps[k].weight;
        ++k;
      }
      pure[j] = comps[k].strategy;
    }
    const DAOutcome out = SimulateDa(inst, pure, values, tie);
    for (std::size_t j = 0; j < n; ++j) utility[j].Add(out.utilities[j]);
    welfare.Add(out.welfare);
  }
  for (std::size_t j = 0; j < n; ++j) {
    result.utilities.push_back(utility[j].Sampled());
  }
  result.welfare = welfare.Sampled();
  return result;
}

Estimate ExAnteUtilityDa(const SearchInstance& inst, const DAProfile& profile,
                         std::size_t i, TieRule tie,
                         const MonteCarloParams& mc) {
  if (i >= inst.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "bidder out of range");
  }
  return ExAnteDa(inst, profile, tie, mc).utilities[i];
}

double ExAnteUtilityDaExact(const SearchInstance& inst,
                            const DAProfile& profile, std::size_t i,
                            TieRule tie) {
  CheckProfileSize(inst, profile.size());
  if (i >= inst.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "bidder out of range");
  }
  const BidLandscape landscape = ClaimLandscape(inst, profile, i);
  double u = 0.0;
  for (const DAComponent& c : profile[i].components) {
    u += c.weight * PureUtility(inst, c.strategy, i, landscape, tie);
  }
  return u;
}

double ExAnteWelfareDaExact(const SearchInstance& inst,
                            const DAProfile& profile, TieRule tie) {
  CheckProfileSize(inst, profile.size());
  double welfare = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const BidLandscape landscape = ClaimLandscape(inst, profile, i);
    const DiscreteDistribution& dist = inst.boxes()[i];
    for (const DAComponent& c : profile[i].components) {
      double w = -inst.costs()[i] * landscape.LimitAllocation(c.strategy.tau);
      for (std::size_t k = 0; k < dist.size(); ++k) {
        const double v = dist.atoms()[k];
        w += dist.weights()[k] *
             landscape.Allocation(tie, c.strategy.beta.Eval(v)) * v;
      }
      welfare += c.weight * w;
    }
  }
  return welfare;
}

double ExAnteUtilityFirstPrice(const AuctionRule& rule,
                               const ProductDistribution& dist,
                               const FirstPriceMixedProfile& profile,
                               std::size_t i) {
  if (profile.size() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile size mismatch");
  }
  if (i >= dist.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "bidder out of range");
  }
  std::vector<BidDistribution> opp;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j != i) opp.push_back(PushForwardMixture(dist[j], profile[j]));
  }
  const BidLandscape landscape(std::move(opp));
  double u = 0.0;
  for (const WeightedStrategy& c : profile[i]) {
    for (std::size_t k = 0; k < dist[i].size(); ++k) {
      const double v = dist[i].atoms()[k];
      u += c.weight * dist[i].weights()[k] *
           InterimUtility(rule, v, {c.strategy.Eval(v), false}, landscape);
    }
  }
  return u;
}

bool ClaimsAbove(const DAPureStrategy& d, const DiscreteDistribution& dist,
                 double sigma) {
  if (d.beta.Eval(sigma) != d.tau) return false;
  for (double v : dist.atoms()) {
    if (v >= sigma && d.beta.Eval(v) != d.tau) return false;
  }
  return true;
}

DAPureStrategy LambdaMap(const MonotoneStrategy& f, double sigma) {
  const double tau = f.Eval(sigma);
  return DAPureStrategy::Make(tau, CapAt(f, sigma, tau));
}

DAProfile LambdaMapProfile(const StrategyProfile& profile,
                           std::span<const double> sigma) {
  if (profile.size() != sigma.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "need one index per bidder");
  }
  DAProfile out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.push_back(DAMixedStrategy::Pure(LambdaMap(profile[i], sigma[i])));
  }
  return out;
}

FirstPriceMixture MuMap(const DAPureStrategy& d,
                        const DiscreteDistribution& dist, double sigma) {
  const double tail = 1.0 - dist.CdfBelow(sigma);
  FirstPriceMixture out;
  if (!(tail > 0.0)) {
    out.push_back({1.0, CapAt(d.beta, sigma, d.beta.Eval(sigma))});
    return out;
  }
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double a = dist.atoms()[k];
    if (a < sigma) continue;
    out.push_back({dist.weights()[k] / tail, CapAt(d.beta, sigma, d.beta.Eval(a))});
  }
  return out;
}

FirstPriceMixedProfile MuMapProfile(const DAProfile& profile,
                                    const ProductDistribution& dist,
                                    std::span<const double> sigma) {
  if (profile.size() != dist.size() || sigma.size() != dist.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile size mismatch");
  }
  FirstPriceMixedProfile out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    for (const DAComponent& c : profile[i].components) {
      for (WeightedStrategy& w : MuMap(c.strategy, dist[i], sigma[i])) {
        out[i].push_back({c.weight * w.weight, std::move(w.strategy)});
      }
    }
  }
  return out;
}

bool RoundtripCheck(const DAPureStrategy& d, const DiscreteDistribution& dist,
                    double sigma) {
  std::vector<double> points = dist.atoms();
  points.push_back(sigma);
  for (const WeightedStrategy& c : MuMap(d, dist, sigma)) {
    const DAPureStrategy back = LambdaMap(c.strategy, sigma);
    if (back.tau != d.tau) return false;
    for (double v : points) {
      if (back.beta.Eval(v) != d.beta.Eval(v)) return false;
    }
  }
  return true;
}

bool RoundtripCheck(const MonotoneStrategy& f,
                    const DiscreteDistribution& dist, double sigma) {
  std::vector<double> points;
  for (double v : dist.atoms()) {
    if (v <= sigma) points.push_back(v);
  }
  points.push_back(sigma);
  for (const WeightedStrategy& c : MuMap(LambdaMap(f, sigma), dist, sigma)) {
    for (double v : points) {
      if (c.strategy.Eval(v) != f.Eval(v)) return false;
    }
  }
  return true;
}

DAPureStrategy SmoothnessComponent(double sigma, double z,
                                   std::span<const double> values) {
  const double scale = 1.0 - z;
  std::vector<Breakpoint> bps;
  for (double v : values) {
    if (v < sigma && (bps.empty() || v > bps.back().threshold)) {
      bps.push_back({v, scale * v});
    }
  }
  bps.push_back({sigma, scale * sigma});
  return DAPureStrategy::Make(scale * sigma, MonotoneStrategy::Make(bps));
}

DAMixedStrategy SmoothnessDeviation(double sigma,
                                    std::span<const double> values,
                                    std::size_t quantiles) {
  if (quantiles == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one quantile");
  }
  if (!(sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "index must be >= 0");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  DAMixedStrategy out;
  const double w = 1.0 / static_cast<double>(quantiles);
  for (std::size_t k = 0; k < quantiles; ++k) {
    const double u = (static_cast<double>(k) + 0.5) * w;
    out.components.push_back(
        {w, SmoothnessComponent(sigma, std::exp(u - 1.0), sorted)});
  }
  return out;
}

PoaResult PoaCheck(const SearchInstance& inst, const DAProfile& profile,
                   double certified_eps, TieRule tie,
                   const MonteCarloParams& mc) {
  const DAExAnte ex = ExAnteDa(inst, profile, tie, mc);
  PoaResult r;
  r.welfare = ex.welfare.mean;
  r.stderr_ = ex.welfare.stderr_;
  r.bound = (1.0 - std::exp(-1.0)) * OptWelfare(inst) -
            static_cast<double>(inst.size()) * certified_eps;
  r.holds = r.welfare >= r.bound - 4.0 * r.stderr_;
  return r;
}

DABestResponse DaBestResponse(const SearchInstance& inst,
                              const DAProfile& profile, std::size_t i,
                              TieRule tie) {
  CheckProfileSize(inst, profile.size());
  if (i >= inst.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "bidder out of range");
  }
  const BidLandscape landscape = ClaimLandscape(inst, profile, i);
  const std::vector<CandidateBid> candidates =
      landscape.Candidates(inst.upper_bound());
  const DiscreteDistribution& dist = inst.boxes()[i];
  // best[k] = best claim utility at each value among bids allowed so far.
  std::vector<double> best(dist.size(),
                           -std::numeric_limits<double>::infinity());
  DABestResponse result;
  result.utility = -std::numeric_limits<double>::infinity();
  std::size_t next = 0;
  // A threshold at tau (or just above it) admits every candidate with base
  // <= tau and has inspection probability P(max claim <= tau).
  std::vector<double> taus{0.0};
  for (double a : landscape.atoms()) {
    if (a > 0.0 && a <= inst.upper_bound()) taus.push_back(a);
  }
  for (double tau : taus) {
    while (next < candidates.size() && candidates[next].base <= tau) {
      const double x = landscape.Allocation(tie, candidates[next]);
      for (std::size_t k = 0; k < dist.size(); ++k) {
        best[k] = std::max(best[k], x * (dist.atoms()[k] - candidates[next].base));
      }
      ++next;
    }
    double u = -inst.costs()[i] * landscape.LimitAllocation(tau);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      u += dist.weights()[k] * best[k];
    }
    if (u > result.utility) {
      result.utility = u;
      result.tau = tau;
      result.tau_limit = next > 0 && candidates[next - 1].limit_above &&
                         candidates[next - 1].base == tau;
    }
  }
  return result;
}

DAGap DaNashGap(const SearchInstance& inst, const DAProfile& profile,
                TieRule tie, std::span<const double> alphas,
                std::size_t quantiles) {
  CheckProfileSize(inst, profile.size());
  const std::vector<double> sigma = WeitzmanIndices(inst);
  DAGap gap;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const double current = ExAnteUtilityDaExact(inst, profile, i, tie);
    const DiscreteDistribution& dist = inst.boxes()[i];
    DAProfile deviated = profile;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> grid;
    for (double v : dist.atoms()) {
      if (v < sigma[i]) grid.push_back(v);
    }
    grid.push_back(sigma[i]);
    for (double alpha : alphas) {
      deviated[i] = DAMixedStrategy::Pure(
          LambdaMap(MonotoneStrategy::Shade(grid, alpha), sigma[i]));
      best = std::max(best, ExAnteUtilityDaExact(inst, deviated, i, tie));
    }
    deviated[i] = SmoothnessDeviation(sigma[i], dist.atoms(), quantiles);
    best = std::max(best, ExAnteUtilityDaExact(inst, deviated, i, tie));
    const double exact = DaBestResponse(inst, profile, i, tie).utility;
    gap.per_bidder_grid.push_back(std::max(0.0, best - current));
    gap.per_bidder_exact.push_back(std::max(0.0, exact - current));
    gap.grid_gap = std::max(gap.grid_gap, gap.per_bidder_grid.back());
    gap.exact_gap = std::max(gap.exact_gap, gap.per_bidder_exact.back());
  }
  return gap;
}

PipelineReport EmpiricalPipeline(const SampleMatrix& samples,
                                 std::span<const double> costs,
                                 const ProductDistribution& truth,
                                 const PipelineParams& params) {
  if (samples.rows() % 2 != 0) {
    throw Error(ErrorCode::kOddSampleCount,
                "sample count " + std::to_string(samples.rows()) + " is odd");
  }
  const std::size_t n = truth.size();
  if (costs.size() != n || samples.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "need one cost per bidder");
  }
  const double h = truth.upper_bound();
  const std::size_t half = samples.rows() / 2;
  const ProductDistribution first =
      EmpiricalMarginals(samples.Slice(0, half), h);
  const ProductDistribution second =
      EmpiricalMarginals(samples.Slice(half, samples.rows()), h);

  PipelineReport r;
  r.costs.assign(costs.begin(), costs.end());
  const SearchInstance inst(truth, r.costs);
  r.sigma = WeitzmanIndices(inst);
  std::vector<DiscreteDistribution> truncated_hat;
  std::vector<DiscreteDistribution> truncated_true;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = WeitzmanIndex(first[i], costs[i], h);
    r.sigma_hat.push_back(s);
    r.costs_hat.push_back(truth[i].ExpectedExcess(s));
    r.max_cost_error =
        std::max(r.max_cost_error, std::fabs(costs[i] - r.costs_hat.back()));
    truncated_hat.push_back(TruncateAt(second[i], s));
    truncated_true.push_back(TruncateAt(truth[i], s));
  }
  const ProductDistribution fpa_hat(truncated_hat, h);
  const ProductDistribution fpa_true(truncated_true, h);
  const SolveResult solved =
      params.offset_grids
          ? SolveBne(params.rule, fpa_hat,
                     OffsetGrids(h, params.grid_step, n), params.solver)
          : SolveBne(params.rule, fpa_hat, UniformGrid(h, params.grid_step),
                     params.solver);
  r.fpa_profile = solved.profile;
  r.eps_prime = solved.certificate.epsilon;

  // Utility error between the two truncated products, over the profile's
  // bids and every unilateral deviation candidate.
  for (std::size_t i = 0; i < n; ++i) {
    const BidLandscape on_hat(OpponentBids(fpa_hat, r.fpa_profile, i));
    const BidLandscape on_true(OpponentBids(fpa_true, r.fpa_profile, i));
    std::vector<CandidateBid> bids = on_hat.Candidates(h);
    const std::vector<CandidateBid> more = on_true.Candidates(h);
    bids.insert(bids.end(), more.begin(), more.end());
    std::vector<double> values = fpa_hat[i].atoms();
    values.insert(values.end(), fpa_true[i].atoms().begin(),
                  fpa_true[i].atoms().end());
    for (double v : values) {
      bids.push_back({r.fpa_profile[i].Eval(v), false});
    }
    for (double v : values) {
      for (const CandidateBid& b : bids) {
        const double err =
            std::fabs(InterimUtility(params.rule, v, b, on_hat) -
                      InterimUtility(params.rule, v, b, on_true));
        r.utility_error = std::max(r.utility_error, err);
      }
    }
  }

  r.da_profile = LambdaMapProfile(r.fpa_profile, r.sigma_hat);
  const DAGap gap = DaNashGap(inst, r.da_profile, params.rule.tie,
                              params.deviation_alphas, params.quantiles);
  r.gap_lower_bound = gap.grid_gap;
  r.gap_exact = gap.exact_gap;
  r.welfare = ExAnteWelfareDaExact(inst, r.da_profile, params.rule.tie);
  r.opt_welfare = OptWelfare(inst);
  r.poa_bound = (1.0 - std::exp(-1.0)) * r.opt_welfare -
                static_cast<double>(n) * r.gap_lower_bound;
  return r;
}

}  // namespace auclearn
