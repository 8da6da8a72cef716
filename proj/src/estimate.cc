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

#include "auclearn/estimate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "auclearn/error.h"

namespace auclearn {
namespace {

void CheckProfile(const SampleMatrix& samples, const StrategyProfile& profile,
                  std::size_t i) {
  if (profile.size() != samples.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profile size does not match sample width");
  }
  if (i >= samples.cols()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "bidder " + std::to_string(i) + " out of range");
  }
}

// Probe values for bidder i: atoms of F_i plus the profile's thresholds.
std::vector<double> ProbeValues(const DiscreteDistribution& dist,
                                const MonotoneStrategy& strategy) {
  std::vector<double> probes = dist.atoms();
  for (const Breakpoint& b : strategy.breakpoints()) {
    if (b.threshold >= 0.0) probes.push_back(b.threshold);
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  return probes;
}

}  // namespace

std::string_view EstimatorName(Estimator e) {
  return e == Estimator::kEmp ? "EMP" : "EMPP";
}

StrategyFamily ShadeFamily(std::size_t n, std::span<const double> grid,
                           std::span<const double> alphas) {
  StrategyFamily family;
  family.reserve(alphas.size());
  for (double a : alphas) family.push_back(ShadeProfile(n, grid, a));
  return family;
}

double EmpEstimate(const SampleMatrix& samples, const AuctionRule& rule,
                   std::size_t i, double value,
                   const StrategyProfile& profile) {
  CheckProfile(samples, profile, i);
  const std::size_t n = samples.cols();
  std::vector<double> bids(n);
  double total = 0.0;
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      bids[j] = j == i ? profile[i].Eval(value) : profile[j].Eval(samples(r, j));
    }
    total += ExPostUtility(rule, i, value, bids);
  }
  return total / static_cast<double>(samples.rows());
}

double EmppEstimate(const SampleMatrix& samples, const AuctionRule& rule,
                    std::size_t i, double value,
                    const StrategyProfile& profile) {
  CheckProfile(samples, profile, i);
  const ProductDistribution empirical = EmpiricalMarginals(samples);
  const std::vector<BidDistribution> opp =
      OpponentBids(empirical, profile, i);
  return InterimUtilityExact(rule, value, profile[i].Eval(value), opp);
}

ErrorReport SupError(const SampleMatrix& samples, const AuctionRule& rule,
                     const StrategyFamily& family,
                     const ProductDistribution& truth, Estimator estimator) {
  if (samples.cols() != truth.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sample width does not match the distribution");
  }
  const std::size_t n = truth.size();
  ErrorReport report;
  report.per_profile.assign(family.size(), 0.0);
  const ProductDistribution empirical = EmpiricalMarginals(samples);
  bool first = true;
  for (std::size_t p = 0; p < family.size(); ++p) {
    const StrategyProfile& profile = family[p];
    if (profile.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "family profile has the wrong number of strategies");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const BidLandscape exact(OpponentBids(truth, profile, i));
      BidLandscape estimated({});
      if (estimator == Estimator::kEmpp) {
        estimated = BidLandscape(OpponentBids(empirical, profile, i));
      }
      for (double v : ProbeValues(truth[i], profile[i])) {
        const double b = profile[i].Eval(v);
        const double u = InterimUtility(rule, v, {b, false}, exact);
        const double est =
            estimator == Estimator::kEmpp
                ? InterimUtility(rule, v, {b, false}, estimated)
                : EmpEstimate(samples, rule, i, v, profile);
        const double err = std::fabs(est - u);
        report.per_profile[p] = std::max(report.per_profile[p], err);
        if (first || err > report.sup_error) {
          report.sup_error = err;
          report.argmax_profile = p;
          report.argmax_bidder = i;
          report.argmax_value = v;
          first = false;
        }
      }
    }
  }
  return report;
}

IdentityCheck PermutationIdentityCheck(const SampleMatrix& samples,
                                       const AuctionRule& rule, std::size_t i,
                                       double value,
                                       const StrategyProfile& profile) {
  CheckProfile(samples, profile, i);
  const std::size_t m = samples.rows();
  const std::size_t n = samples.cols();
  if (m > 5 || n > 3) {
    throw Error(ErrorCode::kTooLargeToEnumerate,
                "permutation check needs m <= 5 and n <= 3");
  }
  std::vector<std::size_t> opponents;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) opponents.push_back(j);
  }
  // One permutation per opponent column, advanced like an odometer.
  std::vector<std::vector<std::size_t>> perms(
      opponents.size(), std::vector<std::size_t>(m));
  for (auto& p : perms) std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<double> permuted(m * n);
  double sum = 0.0;
  std::size_t count = 0;
  while (true) {
    for (std::size_t r = 0; r < m; ++r) {
      permuted[r * n + i] = samples(r, i);
      for (std::size_t k = 0; k < opponents.size(); ++k) {
        const std::size_t j = opponents[k];
        permuted[r * n + j] = samples(perms[k][r], j);
      }
    }
    sum += EmpEstimate(SampleMatrix(m, n, permuted), rule, i, value, profile);
    ++count;
    std::size_t k = 0;
    while (k < perms.size() &&
           !std::next_permutation(perms[k].begin(), perms[k].end())) {
      ++k;
    }
    if (k == perms.size()) break;
  }
  IdentityCheck result;
  result.lhs = sum / static_cast<double>(count);
  result.rhs = EmppEstimate(samples, rule, i, value, profile);
  return result;
}

std::size_t LabelVectorCount(
    const std::vector<std::vector<double>>& hypothesis_values,
    std::span<const double> witnesses) {
  std::set<std::vector<bool>> labels;
  std::vector<bool> label(witnesses.size());
  for (const auto& h : hypothesis_values) {
    if (h.size() != witnesses.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "hypothesis row length differs from witness count");
    }
    for (std::size_t j = 0; j < h.size(); ++j) label[j] = h[j] > witnesses[j];
    labels.insert(label);
  }
  return labels.size();
}

std::vector<std::vector<double>> DenseUtilityFamily(
    const AuctionRule& rule, const SampleMatrix& opponent_samples,
    const DenseFamilyParams& params) {
  const std::size_t m = opponent_samples.rows();
  const std::size_t opp = opponent_samples.cols();
  const std::size_t levels = params.opponent_levels.size();
  if (levels == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one bid level");
  }
  // rank[j][r] = rank of sample r among the distinct values of column j.
  std::vector<std::vector<std::size_t>> rank(opp, std::vector<std::size_t>(m));
  // Every nondecreasing level sequence over the distinct values, per column.
  std::vector<std::vector<std::vector<std::size_t>>> monotone(opp);
  double total = static_cast<double>(params.values.size() *
                                     params.own_bids.size());
  for (std::size_t j = 0; j < opp; ++j) {
    std::vector<double> col = opponent_samples.Column(j);
    std::vector<double> distinct = col;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (std::size_t r = 0; r < m; ++r) {
      rank[j][r] = static_cast<std::size_t>(
          std::lower_bound(distinct.begin(), distinct.end(), col[r]) -
          distinct.begin());
    }
    std::vector<std::size_t> seq(distinct.size(), 0);
    while (true) {
      monotone[j].push_back(seq);
      std::size_t a = seq.size();
      while (a > 0 && seq[a - 1] == levels - 1) --a;
      if (a == 0) break;
      const std::size_t level = seq[a - 1] + 1;
      for (std::size_t b = a - 1; b < seq.size(); ++b) seq[b] = level;
    }
    total *= static_cast<double>(monotone[j].size());
  }
  if (total > 5e6) {
    throw Error(ErrorCode::kTooLargeToEnumerate,
                "dense family has more than 5e6 hypotheses");
  }
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> pick(opp, 0);
  std::vector<double> bids(opp + 1);
  std::vector<double> row(m);
  while (true) {
    for (double v : params.values) {
      for (double b : params.own_bids) {
        bids[0] = b;
        for (std::size_t r = 0; r < m; ++r) {
          for (std::size_t j = 0; j < opp; ++j) {
            bids[j + 1] =
                params.opponent_levels[monotone[j][pick[j]][rank[j][r]]];
          }
          row[r] = ExPostUtility(rule, 0, v, bids);
        }
        out.push_back(row);
      }
    }
    std::size_t j = 0;
    for (; j < opp; ++j) {
      if (++pick[j] < monotone[j].size()) break;
      pick[j] = 0;
    }
    if (j == opp) break;
  }
  return out;
}

}  // namespace auclearn
