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

#ifndef AUCLEARN_DA_H_
#define AUCLEARN_DA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "auclearn/auction.h"
#include "auclearn/dist.h"
#include "auclearn/equilibrium.h"
#include "auclearn/pandora.h"
#include "auclearn/strategy.h"

namespace auclearn {

// Inspect when the clock reaches tau, then claim at beta(v).
struct DAPureStrategy {
  double tau = 0.0;
  MonotoneStrategy beta;

  // Throws ClaimAboveInspection when some claim price exceeds tau.
  static DAPureStrategy Make(double tau, MonotoneStrategy beta);
};

struct DAComponent {
  double weight;
  DAPureStrategy strategy;
};

struct DAMixedStrategy {
  std::vector<DAComponent> components;

  static DAMixedStrategy Pure(DAPureStrategy s);
};

using DAProfile = std::vector<DAMixedStrategy>;
using FirstPriceMixture = std::vector<WeightedStrategy>;
using FirstPriceMixedProfile = std::vector<FirstPriceMixture>;

struct DAOutcome {
  std::optional<std::size_t> winner;
  // Expected share of the item (fractional only under random ties).
  std::vector<double> allocation;
  std::vector<double> utilities;
  std::vector<bool> inspected;
  double price = 0.0;
  double welfare = 0.0;
};

DAOutcome SimulateDa(const SearchInstance& inst,
                     std::span<const DAPureStrategy> profile,
                     std::span<const double> values, TieRule tie);

struct MonteCarloParams {
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  // Joint outcome count at or below which exact enumeration is used.
  std::size_t enumeration_limit = 10000;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct DAExAnte {
  std::vector<Estimate> utilities;
  Estimate welfare;
  bool exact = false;
};

// Ex ante utilities and welfare by enumeration of values and mixture
// components when small enough, Monte Carlo otherwise.
DAExAnte ExAnteDa(const SearchInstance& inst, const DAProfile& profile,
                  TieRule tie, const MonteCarloParams& mc = {});

Estimate ExAnteUtilityDa(const SearchInstance& inst, const DAProfile& profile,
                         std::size_t i, TieRule tie,
                         const MonteCarloParams& mc = {});

// Exact ex ante utility of bidder i from the opponents' claim-price
// distribution.
double ExAnteUtilityDaExact(const SearchInstance& inst,
                            const DAProfile& profile, std::size_t i,
                            TieRule tie);

double ExAnteWelfareDaExact(const SearchInstance& inst,
                            const DAProfile& profile, TieRule tie);

// Exact ex ante utility in the first-price auction for mixed profiles.
double ExAnteUtilityFirstPrice(const AuctionRule& rule,
                               const ProductDistribution& dist,
                               const FirstPriceMixedProfile& profile,
                               std::size_t i);

bool ClaimsAbove(const DAPureStrategy& d, const DiscreteDistribution& dist,
                 double sigma);

DAPureStrategy LambdaMap(const MonotoneStrategy& f, double sigma);
DAProfile LambdaMapProfile(const StrategyProfile& profile,
                           std::span<const double> sigma);

FirstPriceMixture MuMap(const DAPureStrategy& d,
                        const DiscreteDistribution& dist, double sigma);
FirstPriceMixedProfile MuMapProfile(const DAProfile& profile,
                                    const ProductDistribution& dist,
                                    std::span<const double> sigma);

// d == lambda(mu(d)) pointwise on supp(F) and sigma.
bool RoundtripCheck(const DAPureStrategy& d, const DiscreteDistribution& dist,
                    double sigma);
// Every component of mu(lambda(f)) agrees with f on supp(F) ∩ [0, sigma]
// and at sigma.
bool RoundtripCheck(const MonotoneStrategy& f,
                    const DiscreteDistribution& dist, double sigma);

// Component for one draw z of the deviation: threshold (1 - z) sigma and
// claim price (1 - z) min(v, sigma), defined on the given values.
DAPureStrategy SmoothnessComponent(double sigma, double z,
                                   std::span<const double> values);

// Mixture over K equal-probability quantiles of the density 1/z on
// [1/e, 1].
DAMixedStrategy SmoothnessDeviation(double sigma,
                                    std::span<const double> values,
                                    std::size_t quantiles = 64);

struct PoaResult {
  double welfare = 0.0;
  double bound = 0.0;
  double stderr_ = 0.0;
  bool holds = false;
};

PoaResult PoaCheck(const SearchInstance& inst, const DAProfile& profile,
                   double certified_eps, TieRule tie,
                   const MonteCarloParams& mc = {});

struct DABestResponse {
  double utility = 0.0;
  double tau = 0.0;
  bool tau_limit = false;
};

// Exact best pure deviation of bidder i against the others' strategies.
DABestResponse DaBestResponse(const SearchInstance& inst,
                              const DAProfile& profile, std::size_t i,
                              TieRule tie);

struct DAGap {
  // Largest gain over the deviation grid (lower bound on the true gap).
  double grid_gap = 0.0;
  // Exact gain of the best pure deviation.
  double exact_gap = 0.0;
  std::vector<double> per_bidder_grid;
  std::vector<double> per_bidder_exact;
};

// Deviations: lambda images of shade strategies for each alpha, plus the
// smoothness deviation.
DAGap DaNashGap(const SearchInstance& inst, const DAProfile& profile,
                TieRule tie, std::span<const double> alphas,
                std::size_t quantiles = 64);

struct PipelineParams {
  AuctionRule rule;
  double grid_step = 0.05;
  // Per-bidder shifted grids keep top claims of different bidders apart.
  bool offset_grids = true;
  SolveOptions solver;
  std::vector<double> deviation_alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                          0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t quantiles = 64;
};

struct PipelineReport {
  std::vector<double> sigma;
  std::vector<double> sigma_hat;
  std::vector<double> costs;
  std::vector<double> costs_hat;
  double max_cost_error = 0.0;
  double eps_prime = 0.0;
  double utility_error = 0.0;
  double gap_lower_bound = 0.0;
  double gap_exact = 0.0;
  double welfare = 0.0;
  double opt_welfare = 0.0;
  double poa_bound = 0.0;
  StrategyProfile fpa_profile;
  DAProfile da_profile;
};

PipelineReport EmpiricalPipeline(const SampleMatrix& samples,
                                 std::span<const double> costs,
                                 const ProductDistribution& truth,
                                 const PipelineParams& params = {});

}  // namespace auclearn

#endif  // AUCLEARN_DA_H_
