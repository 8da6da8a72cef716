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

#include "auclearn/pandora.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "auclearn/error.h"

namespace auclearn {
namespace {

constexpr double kNone = -std::numeric_limits<double>::infinity();

// Opening is allowed while the cumulative cost stays within the budget.
std::size_t OpenableCount(const IndexPolicy& policy,
                          const std::vector<std::size_t>& order) {
  if (!policy.truncation_budget) return order.size();
  double paid = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    paid += policy.costs[order[k]];
    if (paid > *policy.truncation_budget) return k;
  }
  return order.size();
}

}  // namespace

SearchInstance::SearchInstance(ProductDistribution boxes,
                               std::vector<double> costs)
    : boxes_(std::move(boxes)), costs_(std::move(costs)) {
  if (costs_.size() != boxes_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need one cost per box");
  }
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    if (!(costs_[i] >= 0.0) || costs_[i] > boxes_.upper_bound()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cost of box " + std::to_string(i) + " outside [0, H]");
    }
    if (costs_[i] > boxes_[i].Mean()) {
      throw Error(ErrorCode::kCostExceedsMean,
                  "cost of box " + std::to_string(i) + " exceeds its mean");
    }
  }
}

double WeitzmanIndex(const DiscreteDistribution& dist, double cost,
                     double upper_bound) {
  if (!(cost >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cost must be >= 0");
  }
  if (cost > dist.Mean()) {
    throw Error(ErrorCode::kCostExceedsMean, "cost exceeds the mean value");
  }
  if (cost == 0.0) return upper_bound;
  // E[max(v - s, 0)] = A - W s on the segment below each atom, where W and
  // A are the tail mass and tail first moment above the segment.
  const auto& atoms = dist.atoms();
  const auto& weights = dist.weights();
  double tail_mass = 0.0;
  double tail_moment = 0.0;
  for (std::size_t k = atoms.size(); k-- > 0;) {
    tail_mass += weights[k];
    tail_moment += weights[k] * atoms[k];
    const double lower = k == 0 ? 0.0 : atoms[k - 1];
    const double sigma = (tail_moment - cost) / tail_mass;
    if (sigma >= lower || k == 0) return std::max(0.0, std::min(sigma, atoms[k]));
  }
  return 0.0;
}

std::vector<double> WeitzmanIndices(const SearchInstance& inst) {
  std::vector<double> out(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out[i] = WeitzmanIndex(inst.boxes()[i], inst.costs()[i], inst.upper_bound());
  }
  return out;
}

std::vector<std::size_t> IndexPolicy::Order() const {
  std::vector<std::size_t> order(indices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t a, std::size_t b) {
                     return indices[a] > indices[b];
                   });
  return order;
}

IndexPolicy WeitzmanPolicy(const SearchInstance& inst,
                           std::optional<double> truncation_budget) {
  IndexPolicy p;
  p.indices = WeitzmanIndices(inst);
  p.costs = inst.costs();
  p.truncation_budget = truncation_budget;
  return p;
}

double TruncationBudget(double upper_bound, double eps) {
  if (!(eps > 0.0) || !(eps < upper_bound)) {
    throw Error(ErrorCode::kInvalidArgument,
                "truncation eps must lie in (0, H)");
  }
  return 2.0 * upper_bound * std::log(upper_bound / eps);
}

double SimulatePolicy(const IndexPolicy& policy,
                      std::span<const double> values) {
  if (values.size() != policy.indices.size() ||
      policy.costs.size() != policy.indices.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "values, indices and costs must have equal length");
  }
  const std::vector<std::size_t> order = policy.Order();
  if (order.empty() || policy.indices[order[0]] < 0.0) return 0.0;
  const std::size_t openable = OpenableCount(policy, order);
  double best = kNone;
  double paid = 0.0;
  for (std::size_t k = 0; k < openable; ++k) {
    const std::size_t box = order[k];
    best = std::max(best, values[box]);
    paid += policy.costs[box];
    if (k + 1 == order.size() || best >= policy.indices[order[k + 1]]) break;
  }
  if (best == kNone) return 0.0;
  return best - paid;
}

double PolicyPayoffExact(const SearchInstance& inst,
                         const IndexPolicy& policy) {
  if (policy.indices.size() != inst.size() ||
      policy.costs.size() != inst.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "policy does not match the instance");
  }
  const std::vector<std::size_t> order = policy.Order();
  if (policy.indices[order[0]] < 0.0) return 0.0;
  const std::size_t openable = OpenableCount(policy, order);
  if (openable == 0) return 0.0;
  // Sub-distribution of the best value among paths still searching.
  std::map<double, double> searching;
  double payoff = 0.0;
  double paid = 0.0;
  for (std::size_t k = 0; k < openable; ++k) {
    const DiscreteDistribution& box = inst.boxes()[order[k]];
    paid += policy.costs[order[k]];
    std::map<double, double> after;
    if (k == 0) {
      for (std::size_t a = 0; a < box.size(); ++a) {
        after[box.atoms()[a]] += box.weights()[a];
      }
    } else {
      for (const auto& [best, mass] : searching) {
        for (std::size_t a = 0; a < box.size(); ++a) {
          after[std::max(best, box.atoms()[a])] += mass * box.weights()[a];
        }
      }
    }
    const bool last = k + 1 == openable;
    const double next_index =
        k + 1 < order.size() ? policy.indices[order[k + 1]] : kNone;
    searching.clear();
    for (const auto& [best, mass] : after) {
      if (last || best >= next_index) {
        payoff += mass * (best - paid);
      } else {
        searching[best] += mass;
      }
    }
  }
  return payoff;
}

double OptimalAdaptiveOracle(const SearchInstance& inst) {
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (n > 4 || inst.boxes()[i].size() > 4) {
      throw Error(ErrorCode::kTooLargeToEnumerate,
                  "oracle needs n <= 4 and at most 4 atoms per box");
    }
  }
  // Best-value states: index 0 is "nothing opened", then all atoms.
  std::vector<double> levels{kNone};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = inst.boxes()[i].atoms();
    levels.insert(levels.end(), a.begin(), a.end());
  }
  std::sort(levels.begin() + 1, levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto level_of = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(levels.begin() + 1, levels.end(), v) - levels.begin());
  };
  const std::size_t masks = std::size_t{1} << n;
  // value[mask][level] = best continuation payoff excluding sunk costs.
  std::vector<std::vector<double>> value(
      masks, std::vector<double>(levels.size(), 0.0));
  for (std::size_t mask = masks; mask-- > 0;) {
    for (std::size_t l = 0; l < levels.size(); ++l) {
      double best = l == 0 ? 0.0 : levels[l];
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        const DiscreteDistribution& box = inst.boxes()[j];
        double cont = -inst.costs()[j];
        for (std::size_t a = 0; a < box.size(); ++a) {
          const double v = box.atoms()[a];
          const std::size_t nl =
              l == 0 ? level_of(v) : std::max(l, level_of(v));
          cont += box.weights()[a] * value[mask | (std::size_t{1} << j)][nl];
        }
        best = std::max(best, cont);
      }
      value[mask][l] = best;
    }
  }
  return value[0][0];
}

double OptWelfare(const SearchInstance& inst) {
  const std::vector<double> sigma = WeitzmanIndices(inst);
  std::vector<DiscreteDistribution> capped;
  std::vector<double> points;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    capped.push_back(TruncateAt(inst.boxes()[i], sigma[i]));
    points.insert(points.end(), capped.back().atoms().begin(),
                  capped.back().atoms().end());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double total = 0.0;
  double prev = 0.0;
  for (double t : points) {
    double cdf = 1.0;
    for (const auto& d : capped) cdf *= d.Cdf(t);
    total += t * (cdf - prev);
    prev = cdf;
  }
  return total;
}

PandoraLearnResult PandoraFromSamples(const SampleMatrix& samples,
                                      std::span<const double> costs,
                                      const ProductDistribution& truth,
                                      double trunc_eps) {
  const std::vector<double> c(costs.begin(), costs.end());
  const SearchInstance empirical(
      EmpiricalMarginals(samples, truth.upper_bound()), c);
  const SearchInstance true_inst(truth, c);
  IndexPolicy policy = WeitzmanPolicy(
      empirical, TruncationBudget(truth.upper_bound(), trunc_eps));
  PandoraLearnResult r;
  r.learned_payoff = PolicyPayoffExact(true_inst, policy);
  r.optimal_payoff = OptWelfare(true_inst);
  return r;
}

}  // namespace auclearn
